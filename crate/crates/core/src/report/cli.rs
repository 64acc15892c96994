use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::cache::{cache_key, ResultCache, OP_ACTION, OP_VERDICT};
use super::{
    audit_paper, emit_report, load_catalogs, resolve_group, CosetReport, EmbedReport, Envelope,
    FindActionOutcome, FindActionReport, MeasureReport, OutputFormat, Report, RunConfig,
    SignatureRow, SignaturesReport, TrichotomyReport, VectorReport,
};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exclusivity::{
    trichotomy_classify, weakly_exclusive_verdict, Context, EmbeddingResult, GeometryProfile,
    Outcome, Singular, VerdictOptions,
};
use crate::fp::{todd_coxeter, Presentation};
use crate::perm::{find_monomorphism_exhaustive, EmbeddingSearch, PermGroup, Permutation};
use crate::rh::{
    acts_on, enumerate_signatures, rh_measure, verify_vector, ActionSearch, GeneratingVector,
    GroupRef, Signature,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Finite group actions on closed oriented surfaces.
///
/// Exit status: 0 definitive success, 2 definitive negative, 3 inconclusive
/// (budget exhausted or conditional), 1 usage or input error.
#[derive(Debug, Parser)]
#[command(name = "surface-actions", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, default_value = "markdown", value_parser = ["json", "markdown", "md"])]
    format: String,
    /// Backtracking nodes per generating-vector search.
    #[arg(long, global = true, default_value_t = crate::rh::DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Maximum number of cosets in an enumeration.
    #[arg(long, global = true, default_value_t = super::DEFAULT_COSET_BUDGET)]
    coset_budget: usize,
    /// Nodes per monomorphism search.
    #[arg(long, global = true, default_value_t = crate::perm::DEFAULT_EMBEDDING_BUDGET)]
    embedding_budget: u64,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Result cache file.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Catalog file; repeatable. Defaults to $HF_CATALOG.
    #[arg(long, global = true)]
    catalog: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Riemann–Hurwitz measure 2ρ − 2 + Σ(1 − 1/mᵢ) of a signature such as "(0;2,3,7)".
    Measure { signature: String },
    /// Signatures with which a group of the given order could act on the genus.
    Signatures { genus: u64, order: u128 },
    /// Search for an action of a group on the surface of the given genus.
    FindAction { group: String, genus: u64 },
    /// Verify a generating vector stored as JSON.
    VerifyVector { file: PathBuf },
    /// Enumerate cosets of the trivial subgroup, e.g. "<x,y | x^2, y^3, (x*y)^5>".
    ToddCoxeter { presentation: String },
    /// Decide whether H embeds in G.
    Embed { subgroup: String, group: String },
    /// Certificate chain showing that no finite group contains every group acting on the genus.
    GenusReport {
        genus: u64,
        /// Skip the supplementary cyclic witness.
        #[arg(long)]
        no_supplementary: bool,
    },
    /// Classify maximal finite subgroups from the singular set of the isometry group.
    Trichotomy {
        #[arg(long)]
        dim: u32,
        /// empty, 0, positive, or a dimension d ≥ 1.
        #[arg(long)]
        singular: String,
        /// Some involution has fixed points.
        #[arg(long)]
        involution_fixes: bool,
        #[arg(long, default_value = "manifold", value_parser = ["manifold", "lattice"])]
        context: String,
    },
    /// Run the fixed reproducibility checks for low genus.
    AuditPaper,
}

struct Ran {
    envelope: Envelope,
    code: i32,
}

/// Runs the command line and returns the exit status. The report goes to
/// `out`; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let config = RunConfig {
        search_node_budget: cli.global.budget,
        coset_budget: cli.global.coset_budget,
        embedding_budget: cli.global.embedding_budget,
        catalog_paths: cli.global.catalog.clone(),
        workers: cli
            .global
            .workers
            .unwrap_or_else(|| RunConfig::default().workers),
        output_format: cli.global.format.parse().unwrap_or(OutputFormat::Markdown),
    };
    if let Err(e) = config.validate() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let mut cache = match cli.global.cache.as_ref().map(ResultCache::open).transpose() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = pool.install(|| execute(&cli.command, &config, cache.as_mut()));
    if let Some(c) = cache.as_mut() {
        for w in c.take_warnings() {
            let _ = writeln!(err, "warning: {w}");
        }
    }
    match result {
        Ok(o) => {
            let _ = out.write_all(emit_report(&o.envelope, config.output_format).as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn done(report: Report, warnings: Vec<String>, code: i32) -> Result<Ran> {
    Ok(Ran {
        envelope: Envelope::new(report, warnings),
        code,
    })
}

fn catalog(config: &RunConfig) -> Result<Option<Catalog>> {
    load_catalogs(&config.catalog_paths)
}

fn execute(cmd: &Command, config: &RunConfig, cache: Option<&mut ResultCache>) -> Result<Ran> {
    match cmd {
        Command::Measure { signature } => {
            let (s, dropped) = Signature::parse_normalized(signature)?;
            let warnings = unit_warning(dropped);
            let measure = rh_measure(&s).to_string();
            done(
                Report::Measure(MeasureReport {
                    signature: s,
                    measure,
                    dropped_unit_periods: dropped,
                }),
                warnings,
                EXIT_OK,
            )
        }
        Command::Signatures { genus, order } => {
            if *genus < 2 {
                return Err(Error::LowGenus(*genus as i64));
            }
            let signatures: Vec<SignatureRow> = enumerate_signatures(*genus, *order)
                .into_iter()
                .map(|s| SignatureRow {
                    measure: rh_measure(&s).to_string(),
                    signature: s,
                })
                .collect();
            let code = if signatures.is_empty() {
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            };
            done(
                Report::Signatures(SignaturesReport {
                    genus: *genus,
                    order: *order,
                    signatures,
                }),
                vec![],
                code,
            )
        }
        Command::FindAction { group, genus } => find_action(group, *genus, config, cache),
        Command::VerifyVector { file } => verify_file(file, config),
        Command::ToddCoxeter { presentation } => {
            let p: Presentation = presentation.parse()?;
            let t = todd_coxeter(&p, config.coset_budget);
            let complete = t.is_complete() && t.verify(&p);
            let generators = if complete {
                (0..p.generator_count())
                    .map(|g| t.generator_permutation(g).to_string())
                    .collect()
            } else {
                Vec::new()
            };
            let code = if complete { EXIT_OK } else { EXIT_INCONCLUSIVE };
            done(
                Report::ToddCoxeter(CosetReport {
                    presentation: p.to_string(),
                    complete,
                    cosets: t.cosets,
                    defined: t.defined,
                    max_cosets: config.coset_budget,
                    generators,
                }),
                vec![],
                code,
            )
        }
        Command::Embed { subgroup, group } => {
            let cat = catalog(config)?;
            let h = resolve_group(subgroup, cat.as_ref())?;
            let g = resolve_group(group, cat.as_ref())?;
            let r = find_monomorphism_exhaustive(&h.group, &g.group, config.embedding_budget)?;
            let (result, reason, images, code) = match &r {
                EmbeddingSearch::Found(m) => {
                    if !m.verify() {
                        return Err(Error::Precondition(
                            "embedding step: monomorphism failed verification".into(),
                        ));
                    }
                    let images = m.images.iter().map(Permutation::to_string).collect();
                    (EmbeddingResult::Found, None, images, EXIT_OK)
                }
                EmbeddingSearch::Absent(why) => {
                    (EmbeddingResult::Absent, Some(*why), vec![], EXIT_NEGATIVE)
                }
                EmbeddingSearch::Inconclusive { .. } => (
                    EmbeddingResult::Inconclusive,
                    None,
                    vec![],
                    EXIT_INCONCLUSIVE,
                ),
            };
            done(
                Report::Embed(EmbedReport {
                    subgroup: GroupRef::new(h.id, &h.group),
                    group: GroupRef::new(g.id, &g.group),
                    result,
                    reason,
                    images,
                    budget: config.embedding_budget,
                }),
                vec![],
                code,
            )
        }
        Command::GenusReport {
            genus,
            no_supplementary,
        } => genus_report(*genus, !no_supplementary, config, cache),
        Command::Trichotomy {
            dim,
            singular,
            involution_fixes,
            context,
        } => {
            let mut profile =
                GeometryProfile::new(*dim, singular.parse::<Singular>()?, *involution_fixes);
            profile.context = if context == "lattice" {
                Context::Lattice
            } else {
                Context::Manifold
            };
            let outcome = trichotomy_classify(&profile)?;
            done(
                Report::Trichotomy(TrichotomyReport { profile, outcome }),
                vec![],
                EXIT_OK,
            )
        }
        Command::AuditPaper => {
            let a = audit_paper(config);
            let code = if a.passed() { EXIT_OK } else { EXIT_NEGATIVE };
            done(Report::AuditPaper(a), vec![], code)
        }
    }
}

fn unit_warning(dropped: usize) -> Vec<String> {
    if dropped == 0 {
        vec![]
    } else {
        vec![format!("dropped {dropped} period(s) equal to 1")]
    }
}

fn group_fingerprint(g: &PermGroup) -> String {
    let gens: Vec<String> = g.generators().iter().map(Permutation::to_string).collect();
    format!("{}:{}", g.degree(), gens.join(";"))
}

fn find_action(
    spec: &str,
    genus: u64,
    config: &RunConfig,
    cache: Option<&mut ResultCache>,
) -> Result<Ran> {
    let cat = catalog(config)?;
    let g = resolve_group(spec, cat.as_ref())?;
    let key = cache_key(
        OP_ACTION,
        &[
            &g.id,
            &group_fingerprint(&g.group),
            &genus.to_string(),
            &config.search_node_budget.to_string(),
        ],
    );
    let mut cache = cache;
    let cached = cache.as_mut().and_then(|c| c.get_action(&key));
    let result = match cached {
        Some(record) => ActionSearch::Found(record),
        None => {
            let r = acts_on(&g.id, &g.group, genus, config.search_node_budget)?;
            if let (Some(c), ActionSearch::Found(rec)) = (cache.as_mut(), &r) {
                c.put_action(&key, rec)?;
            }
            r
        }
    };
    let (result, code) = match result {
        ActionSearch::Found(record) => (FindActionOutcome::Found { record }, EXIT_OK),
        ActionSearch::Absent { signatures } => (
            FindActionOutcome::Absent {
                signatures_searched: signatures,
            },
            EXIT_NEGATIVE,
        ),
        ActionSearch::Inconclusive { unresolved } => (
            FindActionOutcome::Inconclusive { unresolved },
            EXIT_INCONCLUSIVE,
        ),
    };
    done(
        Report::FindAction(FindActionReport {
            group: g.id,
            order: g.group.order(),
            genus,
            node_budget: config.search_node_budget,
            result,
        }),
        vec![],
        code,
    )
}

fn genus_report(
    genus: u64,
    supplementary: bool,
    config: &RunConfig,
    cache: Option<&mut ResultCache>,
) -> Result<Ran> {
    let cat = catalog(config)?;
    let cat_digest = hex::encode(Sha256::digest(
        cat.as_ref().map(Catalog::to_text).unwrap_or_default(),
    ));
    let key = cache_key(
        OP_VERDICT,
        &[
            &genus.to_string(),
            &supplementary.to_string(),
            &config.search_node_budget.to_string(),
            &config.embedding_budget.to_string(),
            &cat_digest,
        ],
    );
    let mut cache = cache;
    let verdict = match cache.as_mut().and_then(|c| c.get_verdict(&key)) {
        Some(v) => v,
        None => {
            let opts = VerdictOptions {
                catalog: cat.as_ref(),
                supplementary,
                node_budget: config.search_node_budget,
                embedding_budget: config.embedding_budget,
            };
            let v = weakly_exclusive_verdict(genus, &opts)?;
            v.verify().map_err(|e| {
                Error::Precondition(format!("certificate verification failed: {e}"))
            })?;
            if let Some(c) = cache.as_mut() {
                c.put_verdict(&key, &v)?;
            }
            v
        }
    };
    let code = match verdict.outcome {
        Outcome::Impossible => EXIT_OK,
        _ => EXIT_INCONCLUSIVE,
    };
    done(Report::GenusReport(verdict), vec![], code)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupField {
    Spec(String),
    Ref(GroupRef),
}

#[derive(Deserialize)]
struct VectorField {
    #[serde(default)]
    hyperbolic: Vec<[String; 2]>,
    #[serde(default)]
    elliptic: Vec<String>,
}

/// Either a serialized action record or `{group, signature, vector}` with
/// `group` a group spec string.
#[derive(Deserialize)]
struct VectorFile {
    group: GroupField,
    signature: String,
    vector: VectorField,
    #[serde(default)]
    genus: Option<u64>,
}

fn verify_file(path: &PathBuf, config: &RunConfig) -> Result<Ran> {
    let text = std::fs::read_to_string(path)?;
    let file: VectorFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let (id, g) = match file.group {
        GroupField::Spec(s) => {
            let cat = catalog(config)?;
            let r = resolve_group(&s, cat.as_ref())?;
            (r.id, r.group)
        }
        GroupField::Ref(r) => {
            let g = r.realize()?;
            (r.id, g)
        }
    };
    let perm = |s: &String| Permutation::parse_with_degree(s, Some(g.degree()));
    let hyperbolic = file
        .vector
        .hyperbolic
        .iter()
        .map(|[a, b]| Ok((perm(a)?, perm(b)?)))
        .collect::<Result<Vec<_>>>()?;
    let elliptic = file
        .vector
        .elliptic
        .iter()
        .map(perm)
        .collect::<Result<Vec<_>>>()?;
    let signature: Signature = file.signature.parse()?;
    let report = verify_vector(&g, &signature, &GeneratingVector::new(hyperbolic, elliptic))?;
    let mut warnings = Vec::new();
    if let Some(genus) = file.genus {
        if report.declared_genus != Some(genus) {
            warnings.push(format!(
                "file states genus {genus}, the Riemann–Hurwitz equation gives {}",
                report
                    .declared_genus
                    .map_or("none".to_string(), |g| g.to_string())
            ));
        }
    }
    let code = if report.is_valid() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    done(
        Report::VerifyVector(VectorReport { group: id, report }),
        warnings,
        code,
    )
}
