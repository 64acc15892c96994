//! Run configuration, report documents, the result cache and the command
//! line front end.
//!
//! Every command produces an [`Envelope`]: a schema tag, the command name,
//! its result and any warnings. JSON output is `serde_json` pretty-printed
//! with frozen field names (see `docs/report.schema.json`); markdown renders
//! the same data as tables, or as a single line for scalar results.

mod audit;
mod cache;
mod cli;
mod groupspec;
mod markdown;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use audit::{audit_paper, AuditCheck, AuditReport, AuditStatus};
pub use cache::{cache_key, ResultCache, CACHE_MAGIC};
pub use cli::run;
pub use groupspec::{load_catalogs, resolve_group, ResolvedGroup};

use crate::error::{Error, Result};
use crate::exclusivity::{EmbeddingResult, ExclusivityVerdict, GeometryProfile, TrichotomyOutcome};
use crate::perm::{AbsenceReason, DEFAULT_EMBEDDING_BUDGET};
use crate::rh::{ActionRecord, GroupRef, Signature, VerificationReport, DEFAULT_NODE_BUDGET};

pub const SCHEMA: &str = "surface-actions/report/v1";

pub const DEFAULT_COSET_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            _ => Err(Error::Precondition(format!("unknown output format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Backtracking nodes per generating-vector search.
    pub search_node_budget: u64,
    /// Maximum live cosets in an enumeration.
    pub coset_budget: usize,
    /// Nodes per monomorphism search.
    pub embedding_budget: u64,
    pub catalog_paths: Vec<PathBuf>,
    pub workers: usize,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    /// 10⁷ search nodes, 10⁵ cosets, one worker per available core, markdown.
    fn default() -> Self {
        RunConfig {
            search_node_budget: DEFAULT_NODE_BUDGET,
            coset_budget: DEFAULT_COSET_BUDGET,
            embedding_budget: DEFAULT_EMBEDDING_BUDGET,
            catalog_paths: Vec::new(),
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            output_format: OutputFormat::Markdown,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.search_node_budget == 0 || self.coset_budget == 0 || self.embedding_budget == 0 {
            return Err(Error::Precondition("budgets must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::Precondition("worker count must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub signature: Signature,
    /// Exact rational, e.g. `1/42`.
    pub measure: String,
    pub dropped_unit_periods: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureRow {
    pub signature: Signature,
    pub measure: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignaturesReport {
    pub genus: u64,
    #[serde(with = "crate::serde_u128")]
    pub order: u128,
    pub signatures: Vec<SignatureRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FindActionOutcome {
    Found { record: ActionRecord },
    Absent { signatures_searched: usize },
    Inconclusive { unresolved: Vec<Signature> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindActionReport {
    pub group: String,
    #[serde(with = "crate::serde_u128")]
    pub order: u128,
    pub genus: u64,
    pub node_budget: u64,
    pub result: FindActionOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorReport {
    pub group: String,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetReport {
    pub presentation: String,
    pub complete: bool,
    pub cosets: usize,
    pub defined: usize,
    pub max_cosets: usize,
    /// Generator actions on the cosets, present when complete.
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedReport {
    pub subgroup: GroupRef,
    pub group: GroupRef,
    pub result: EmbeddingResult,
    pub reason: Option<AbsenceReason>,
    /// Images of the subgroup's generators, when found.
    pub images: Vec<String>,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrichotomyReport {
    pub profile: GeometryProfile,
    pub outcome: TrichotomyOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "kebab-case")]
pub enum Report {
    Measure(MeasureReport),
    Signatures(SignaturesReport),
    FindAction(FindActionReport),
    VerifyVector(VectorReport),
    ToddCoxeter(CosetReport),
    Embed(EmbedReport),
    GenusReport(ExclusivityVerdict),
    Trichotomy(TrichotomyReport),
    AuditPaper(AuditReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    #[serde(flatten)]
    pub report: Report,
    pub warnings: Vec<String>,
}

impl Envelope {
    pub fn new(report: Report, warnings: Vec<String>) -> Self {
        Envelope {
            schema: SCHEMA.to_string(),
            report,
            warnings,
        }
    }
}

/// Report text in the chosen format, newline-terminated.
pub fn emit_report(env: &Envelope, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(env).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Markdown => markdown::render(env),
    }
}

pub fn parse_report(json: &str) -> Result<Envelope> {
    let env: Envelope = serde_json::from_str(json).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    if env.schema != SCHEMA {
        return Err(Error::Parse {
            line: 1,
            message: format!("unsupported schema '{}'", env.schema),
        });
    }
    Ok(env)
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditStatus::Pass => "PASS",
            AuditStatus::Fail => "FAIL",
            AuditStatus::Discrepancy => "DISCREPANCY(expected)",
        })
    }
}
