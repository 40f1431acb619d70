//! Command-line front end: `ingest`, `stats`, `subset`, `query`, `export`.
//!
//! Every flag may also come from a TOML file passed with `--config`; flags on
//! the command line take precedence. The store path falls back to the
//! `OAGRAPH_STORE` environment variable. Data goes to stdout (or `--out`),
//! diagnostics to stderr.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use oagraph_core::export::{
    citation_table, country_table, edge_table, org_year_table, write_csv, write_edge_list, write_graphml, write_pajek,
    TableDocument,
};
use oagraph_core::metrics::{
    access_breakdown_by_country, citation_counts, co_participation_edges, focus_country, oa_breakdown_by_org_year,
    CoParticipationMode,
};
use oagraph_core::subset::extract_subset;
use oagraph_core::{Date, DateWindow, GraphStore};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::ingest::{build_store, DumpLayout, IngestOptions};
use crate::output::{write_layout, write_manifest, write_table_json, IoSink};
use crate::persist;

pub const STORE_ENV: &str = "OAGRAPH_STORE";

#[derive(Debug, Parser)]
#[command(name = "oagraph", version, about = "Ingest, subset, query and export scholarly graph dumps")]
pub struct Cli {
    /// TOML file supplying defaults for any flag.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Maximum worker threads for ingest.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct StoreArg {
    /// Persisted store file (default: $OAGRAPH_STORE).
    #[arg(long, value_name = "PATH")]
    pub store: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a dump directory and persist it as a store.
    Ingest {
        /// Dump root holding one directory per entity kind plus `relation`.
        #[arg(long, value_name = "DIR")]
        input: Option<PathBuf>,
        #[command(flatten)]
        store: StoreArg,
        /// Also write the ingest report to this file.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
    /// Print entity and relation counts.
    Stats {
        #[command(flatten)]
        store: StoreArg,
    },
    /// Extract the products published in a date window plus their context.
    Subset {
        #[command(flatten)]
        store: StoreArg,
        /// First publication date included.
        #[arg(long, value_name = "YYYY-MM-DD")]
        from: Option<String>,
        /// Last publication date included.
        #[arg(long, value_name = "YYYY-MM-DD")]
        to: Option<String>,
        /// Directory for the subset dump and `manifest.json`.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Run one of the indicator queries.
    Query {
        #[command(flatten)]
        store: StoreArg,
        /// Query to run.
        query: Option<QueryName>,
        /// Co-participation with literal self-join semantics.
        #[arg(long)]
        paper_compat: bool,
        /// Keep only co-participation edges touching this country.
        #[arg(long, value_name = "CC")]
        focus: Option<String>,
        /// Keep the first N rows after ordering.
        #[arg(long, value_name = "N")]
        limit: Option<usize>,
        /// Output format (default: csv).
        #[arg(long, value_enum)]
        format: Option<TableFormat>,
        /// Write here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Write the country co-participation network.
    Export {
        #[command(flatten)]
        store: StoreArg,
        #[arg(value_enum)]
        target: ExportTarget,
        /// Output format (required).
        #[arg(long, value_enum)]
        format: Option<NetworkFormat>,
        /// Scale weights by the maximum weight.
        #[arg(long)]
        normalize: bool,
        /// Keep only edges touching this country.
        #[arg(long, value_name = "CC")]
        focus: Option<String>,
        /// Weights with literal self-join semantics.
        #[arg(long)]
        paper_compat: bool,
        /// Write here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryName {
    CitationCounts,
    AccessByCountry,
    OaByOrgYear,
    CoParticipation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportTarget {
    Network,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetworkFormat {
    Pajek,
    Graphml,
    Edgelist,
}

/// Values read from `--config`. Keys match the long flag names.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub store: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub from: Option<String>,
    pub to: Option<String>,
    pub threads: Option<usize>,
    pub query: Option<QueryName>,
    pub format: Option<String>,
    pub paper_compat: Option<bool>,
    pub normalize: Option<bool>,
    pub focus: Option<String>,
    pub limit: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    fn format<T: ValueEnum>(&self) -> Result<Option<T>, CliError> {
        self.format
            .as_deref()
            .map(|f| T::from_str(f, false).map_err(|_| CliError::Usage(format!("config: unsupported format `{f}`"))))
            .transpose()
    }
}

fn resolve_store(flag: Option<PathBuf>, cfg: &FileConfig) -> Result<PathBuf, CliError> {
    flag.or_else(|| cfg.store.clone())
        .or_else(|| std::env::var_os(STORE_ENV).map(PathBuf::from))
        .ok_or_else(|| CliError::Usage(format!("no store given: pass --store, set `store` in the config, or set {STORE_ENV}")))
}

fn required<T>(v: Option<T>, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing required {what}")))
}

fn parse_date(s: &str, flag: &str) -> Result<Date, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("{flag} `{s}`: {e}")))
}

fn load_store(path: &Path) -> Result<GraphStore, CliError> {
    persist::load(path).map_err(|source| CliError::Store { context: format!("cannot load store {}", path.display()), source })
}

/// Runs `f` against `--out` or stdout.
fn with_output(out: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let file = fs::File::create(path).map_err(CliError::io(format!("cannot create {}", path.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w).and_then(|_| w.flush()).map_err(CliError::io(format!("cannot write {}", path.display())))
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w).and_then(|_| w.flush()).map_err(CliError::io("cannot write to stdout"))
        }
    }
}

fn write_json_value<T: Serialize>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    w.write_all(b"\n")
}

#[derive(Serialize)]
struct SubsetSummary<'a> {
    window: &'a DateWindow,
    counts: &'a oagraph_core::Stats,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let threads = cli.threads.or(cfg.threads);
    if threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }

    match cli.command {
        Command::Ingest { input, store, report } => {
            let input = required(input.or_else(|| cfg.input.clone()), "--input DIR")?;
            let store_path = resolve_store(store.store, &cfg)?;
            if !input.is_dir() {
                return Err(CliError::Usage(format!("input directory {} does not exist", input.display())));
            }
            let mut options = IngestOptions::default();
            if let Some(t) = threads {
                options.threads = t;
            }
            let (graph, rep) = build_store(&DumpLayout::new(&input), options)?;
            persist::save(&graph, &store_path)
                .map_err(CliError::io(format!("cannot write store {}", store_path.display())))?;
            if let Some(path) = report.or_else(|| cfg.report.clone()) {
                with_output(Some(&path), |w| write_json_value(w, &rep))?;
            }
            with_output(None, |w| write_json_value(w, &rep))
        }
        Command::Stats { store } => {
            let graph = load_store(&resolve_store(store.store, &cfg)?)?;
            with_output(None, |w| write_json_value(w, &graph.stats()))
        }
        Command::Subset { store, from, to, out } => {
            let from = parse_date(&required(from.or_else(|| cfg.from.clone()), "--from YYYY-MM-DD")?, "--from")?;
            let to = parse_date(&required(to.or_else(|| cfg.to.clone()), "--to YYYY-MM-DD")?, "--to")?;
            let window = DateWindow::new(from, to).map_err(|e| CliError::Usage(format!("{e}: {from} > {to}")))?;
            let out = required(out.or_else(|| cfg.out.clone()), "--out DIR")?;
            let graph = load_store(&resolve_store(store.store, &cfg)?)?;
            let (subset, manifest) = extract_subset(&graph, &window);
            write_layout(&subset, &out).map_err(CliError::io(format!("cannot write subset to {}", out.display())))?;
            write_manifest(&manifest, &out.join("manifest.json"))
                .map_err(CliError::io(format!("cannot write manifest in {}", out.display())))?;
            with_output(None, |w| write_json_value(w, &SubsetSummary { window: &manifest.window, counts: &manifest.counts }))
        }
        Command::Query { store, query, paper_compat, focus, limit, format, out } => {
            let query = query.or(cfg.query).ok_or_else(|| {
                CliError::Usage(
                    "missing query name (one of: citation-counts, access-by-country, oa-by-org-year, co-participation)"
                        .into(),
                )
            })?;
            let format = match format {
                Some(f) => f,
                None => cfg.format::<TableFormat>()?.unwrap_or(TableFormat::Csv),
            };
            let focus = focus.or_else(|| cfg.focus.clone());
            let limit = limit.or(cfg.limit);
            let mode = if paper_compat || cfg.paper_compat.unwrap_or(false) {
                CoParticipationMode::PaperCompat
            } else {
                CoParticipationMode::Distinct
            };
            let out = out.or_else(|| cfg.out.clone());
            let graph = load_store(&resolve_store(store.store, &cfg)?)?;
            let mut table: TableDocument = match query {
                QueryName::CitationCounts => citation_table(&citation_counts(&graph)),
                QueryName::AccessByCountry => country_table(&access_breakdown_by_country(&graph)),
                QueryName::OaByOrgYear => org_year_table(&oa_breakdown_by_org_year(&graph)),
                QueryName::CoParticipation => {
                    let mut edges = co_participation_edges(&graph, mode);
                    if let Some(c) = &focus {
                        edges = focus_country(&edges, c);
                    }
                    edge_table(&edges)
                }
            };
            if let Some(n) = limit {
                table.truncate(n);
            }
            with_output(out.as_deref(), |w| match format {
                TableFormat::Csv => IoSink::new(w).run(|s| write_csv(&table, s)).map(drop),
                TableFormat::Json => write_table_json(&table, w),
            })
        }
        Command::Export { store, target: ExportTarget::Network, format, normalize, focus, paper_compat, out } => {
            let format = match format {
                Some(f) => f,
                None => required(cfg.format::<NetworkFormat>()?, "--format pajek|graphml|edgelist")?,
            };
            let normalize = normalize || cfg.normalize.unwrap_or(false);
            let mode = if paper_compat || cfg.paper_compat.unwrap_or(false) {
                CoParticipationMode::PaperCompat
            } else {
                CoParticipationMode::Distinct
            };
            let focus = focus.or_else(|| cfg.focus.clone());
            let out = out.or_else(|| cfg.out.clone());
            let graph = load_store(&resolve_store(store.store, &cfg)?)?;
            let mut edges = co_participation_edges(&graph, mode);
            if let Some(c) = &focus {
                edges = focus_country(&edges, c);
            }
            with_output(out.as_deref(), |w| {
                let sink = IoSink::new(w);
                match format {
                    NetworkFormat::Pajek => sink.run(|s| write_pajek(&edges, normalize, s)),
                    NetworkFormat::Graphml => sink.run(|s| write_graphml(&edges, normalize, s)),
                    NetworkFormat::Edgelist => sink.run(|s| write_edge_list(&edges, normalize, s)),
                }
                .map(drop)
            })
        }
    }
}
