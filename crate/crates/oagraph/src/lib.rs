//! Reading, persisting and querying OpenAIRE-style JSON-lines graph dumps.
//!
//! The graph model, subsetting and queries come from [`oagraph_core`]; this
//! crate adds the file formats around them and the `oagraph` command.

pub mod cli;
pub mod error;
pub mod ingest;
pub mod output;
pub mod persist;
pub mod record;

pub use error::{CliError, IngestError, StoreFileError};
pub use ingest::{build_store, DumpLayout, IngestOptions, IngestReport};
