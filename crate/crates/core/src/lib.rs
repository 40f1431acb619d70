//! Scholarly knowledge-graph model with date-windowed subsetting and
//! scientometric queries.
//!
//! The crate is `no_std` and needs only `alloc`. Reading dumps, persisting
//! stores and the command line live in the `oagraph` crate.
//!
//! ```
//! use oagraph_core::fixtures::fixture_a;
//! use oagraph_core::metrics::{co_participation_edges, CoParticipationMode};
//!
//! let store = fixture_a();
//! let edges = co_participation_edges(&store, CoParticipationMode::Distinct);
//! assert_eq!((edges[0].left.as_str(), edges[0].right.as_str(), edges[0].weight), ("FR", "IT", 1));
//! ```

#![no_std]

extern crate alloc;

pub mod date;
mod error;
pub mod export;
pub mod fixtures;
pub mod metrics;
pub mod model;
pub mod store;
pub mod subset;

pub use date::Date;
pub use error::{Error, ModelError};
pub use model::{
    classify_access, display_name, AccessClass, AccessRight, Community, Datasource, Entity, EntityId, EntityKind,
    NamedEntity, Organization, Pid, ProductKind, Project, RelName, Relation, ResearchProduct,
};
pub use store::{GraphStore, Inserted, Stats, StoreBuilder};
pub use subset::{DateWindow, SubsetManifest};
