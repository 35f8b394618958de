//! Command-line front end. Every invocation prints one JSON document on
//! stdout and a short human summary on stderr.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 on argument, IO or input-format errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Modulus;
use crate::dybm::{self, Bijection, DynamicalMap, SigmaFile};
use crate::hopfcat::{self, PresentationFile};
use crate::quasigroup::{Quasigroup, QuasigroupError, QuasigroupFile};
use crate::report::Report;
use crate::search;
use crate::sset::{self, AffineSpec, FiniteSSet, SSetError, SSetFile, Word};
use crate::ternary::{self, TernaryFile, TernaryOp};

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "SSET_DYBM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "sset-dybm",
    version,
    about = "Dynamical Yang-Baxter maps from finite s-sets"
)]
pub struct Cli {
    /// Worker threads for exhaustive checks (default: $SSET_DYBM_THREADS or all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an input file.
    Verify {
        #[arg(value_enum)]
        what: VerifyTarget,
        file: PathBuf,
    },
    /// Build η_I or σ(λ).
    Build {
        #[arg(value_enum)]
        what: BuildTarget,
        #[command(flatten)]
        source: SigmaSource,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run one exhaustive check.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
        #[command(flatten)]
        source: SigmaSource,
        /// Precomputed ternary operation (for hps, displacement, mu, solvability).
        #[arg(long, conflicts_with_all = ["sset", "affine"])]
        eta: Option<PathBuf>,
        /// Precomputed σ table (for the σ checks).
        #[arg(long, conflicts_with_all = ["sset", "affine"])]
        sigma: Option<PathBuf>,
    },
    /// Parameter searches.
    Search {
        #[command(subcommand)]
        what: SearchTarget,
    },
    /// Emit the generators-and-relations presentation.
    Emit {
        #[arg(value_enum)]
        what: EmitTarget,
        #[command(flatten)]
        source: SigmaSource,
        #[arg(long, conflicts_with_all = ["sset", "affine"])]
        sigma: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VerifyTarget {
    Quasigroup,
    Sset,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BuildTarget {
    Eta,
    Sigma,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EmitTarget {
    Presentation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Hps,
    Displacement,
    Mu,
    Solvability,
    Dybe,
    Qdybe,
    Bijective,
    Morphism,
    FundamentalL,
}

#[derive(Debug, Subcommand)]
pub enum SearchTarget {
    /// Units r mod n with Phi_I(r) = 0.
    Roots {
        #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
        word: Word,
        #[arg(long)]
        modulus: u64,
    },
    /// Words I with Phi_k dividing Phi_I.
    Words {
        #[arg(long)]
        cyclotomic: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        max_exp: i64,
    },
}

/// Where η and σ come from when built on the fly.
#[derive(Debug, Args)]
pub struct SigmaSource {
    /// s-set file `{"n": N, "maps": [...]}`.
    #[arg(long, conflicts_with = "affine")]
    pub sset: Option<PathBuf>,
    /// Affine s-set `n,k,r` on (Z/nZ)^k.
    #[arg(long, value_parser = parse_affine)]
    pub affine: Option<AffineSpec>,
    /// Exponent word such as `2,1` or `[2,-1]`.
    #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
    pub word: Option<Word>,
    /// Quasigroup file; defaults to the additive group Z/NZ.
    #[arg(long)]
    pub quasigroup: Option<PathBuf>,
    /// Bijection Q -> S as a JSON array file, or `identity`.
    #[arg(long)]
    pub pi: Option<String>,
}

fn parse_word(s: &str) -> Result<Word, String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let exps = inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad exponent `{t}`: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Word::new(exps).map_err(|e| e.to_string())
}

fn parse_affine(s: &str) -> Result<AffineSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, k, r] = parts.as_slice() else {
        return Err("expected n,k,r".into());
    };
    Ok(AffineSpec {
        modulus: n.parse().map_err(|e| format!("bad modulus: {e}"))?,
        dim: k.parse().map_err(|e| format!("bad dimension: {e}"))?,
        r: r.parse().map_err(|e| format!("bad r: {e}"))?,
    })
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Serialize)]
struct Document {
    command: String,
    pass: bool,
    reports: Vec<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
}

impl Document {
    fn new(command: impl Into<String>, reports: Vec<Report>, result: Option<Value>) -> Self {
        let pass = reports.iter().all(|r| r.pass);
        Document {
            command: command.into(),
            pass,
            reports,
            result,
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let text = serde_json::to_string(value)?;
    fs::write(path, text + "\n").map_err(|e| CliError(format!("{}: {e}", path.display())))
}

impl SigmaSource {
    fn sset(&self) -> CliResult<FiniteSSet> {
        match (&self.sset, &self.affine) {
            (Some(path), None) => Ok(FiniteSSet::try_from(read_json::<SSetFile>(path)?)?),
            (None, Some(spec)) => Ok(spec.build()?.sset().clone()),
            _ => Err(CliError("one of --sset or --affine is required".into())),
        }
    }

    fn word(&self) -> CliResult<&Word> {
        self.word
            .as_ref()
            .ok_or_else(|| CliError("--word is required".into()))
    }

    /// η_I, in closed form when the s-set is affine.
    fn eta(&self) -> CliResult<TernaryOp> {
        let word = self.word()?;
        if let (None, Some(spec)) = (&self.sset, &self.affine) {
            let a = spec.build()?;
            return Ok(TernaryOp::Affine(sset::affine_eta(&a, word)?));
        }
        Ok(sset::eta_table(&self.sset()?, word))
    }

    fn quasigroup(&self, n: usize) -> CliResult<Quasigroup> {
        match &self.quasigroup {
            Some(path) => Ok(Quasigroup::try_from(read_json::<QuasigroupFile>(path)?)?),
            None => Ok(Quasigroup::cyclic(n)),
        }
    }

    fn pi(&self, n: usize) -> CliResult<Bijection> {
        match self.pi.as_deref() {
            None | Some("identity") => Ok(Bijection::identity(n)),
            Some(path) => Ok(read_json::<Bijection>(Path::new(path))?),
        }
    }

    fn sigma(&self) -> CliResult<DynamicalMap> {
        let eta = self.eta()?;
        let n = eta.size();
        Ok(dybm::build_sigma(&eta, &self.quasigroup(n)?, &self.pi(n)?)?)
    }
}

fn load_sigma(file: &Option<PathBuf>, source: &SigmaSource) -> CliResult<DynamicalMap> {
    match file {
        Some(path) => Ok(DynamicalMap::try_from(read_json::<SigmaFile>(path)?)?),
        None => source.sigma(),
    }
}

fn verify(what: VerifyTarget, file: &Path) -> CliResult<Document> {
    match what {
        VerifyTarget::Quasigroup => {
            let f: QuasigroupFile = read_json(file)?;
            match Quasigroup::try_from(f) {
                Ok(q) => {
                    let assoc = q.is_associative();
                    let info = json!({
                        "order": q.order(),
                        "associative": assoc.associative,
                        "associativity_witness": assoc.witness.map(|(t, (l, r))| vec![t[0], t[1], t[2], l, r]),
                    });
                    Ok(Document::new(
                        "verify quasigroup",
                        vec![Report::from_witness("latin", None)],
                        Some(info),
                    ))
                }
                Err(QuasigroupError::NotLatin { line, index, value }) => {
                    let code = match line {
                        crate::quasigroup::Line::Row => 0,
                        crate::quasigroup::Line::Column => 1,
                    };
                    let r = Report::from_witness("latin", Some(vec![code, index, value]));
                    Ok(Document::new("verify quasigroup", vec![r], None))
                }
                Err(e) => Err(e.into()),
            }
        }
        VerifyTarget::Sset => {
            let f: SSetFile = read_json(file)?;
            let witness = match FiniteSSet::try_from(f) {
                Ok(_) => None,
                Err(SSetError::NotBijective(x)) => Some(vec![x]),
                Err(SSetError::SymmetryFails { x, y, z }) => Some(vec![x, y, z]),
                Err(e) => return Err(e.into()),
            };
            Ok(Document::new(
                "verify sset",
                vec![Report::from_witness("sset", witness)],
                None,
            ))
        }
    }
}

fn deliver<T: Serialize>(artifact: &T, output: &Option<PathBuf>) -> CliResult<Value> {
    match output {
        Some(path) => {
            write_json(path, artifact)?;
            Ok(json!({ "output": path.display().to_string() }))
        }
        None => Ok(serde_json::to_value(artifact)?),
    }
}

fn check(
    which: CheckKind,
    source: &SigmaSource,
    eta: &Option<PathBuf>,
    sigma: &Option<PathBuf>,
) -> CliResult<Document> {
    let load_eta = || -> CliResult<TernaryOp> {
        match eta {
            Some(path) => Ok(TernaryOp::try_from(read_json::<TernaryFile>(path)?)?),
            None => source.eta(),
        }
    };
    let reports = match which {
        CheckKind::Hps => ternary::check_hps(&load_eta()?).into_reports(),
        CheckKind::Displacement => vec![ternary::check_displacement(&load_eta()?)],
        CheckKind::Mu => dybm::check_mu_identities(&dybm::mu_from_eta(&load_eta()?)),
        CheckKind::Solvability => dybm::check_unique_solvability(&dybm::mu_from_eta(&load_eta()?)),
        CheckKind::Dybe => vec![dybm::check_dybe(&load_sigma(sigma, source)?)],
        CheckKind::Qdybe => vec![dybm::check_qdybe(&dybm::to_r_form(&load_sigma(
            sigma, source,
        )?))],
        CheckKind::Bijective => vec![dybm::check_bijective(&load_sigma(sigma, source)?)],
        CheckKind::Morphism => {
            let s = load_sigma(sigma, source)?;
            vec![hopfcat::check_sigma_morphism(&s, s.quasigroup())]
        }
        CheckKind::FundamentalL => vec![hopfcat::check_fundamental_l(&load_sigma(sigma, source)?)],
    };
    let name = which
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Ok(Document::new(format!("check {name}"), reports, None))
}

fn execute(cli: &Cli) -> CliResult<Document> {
    match &cli.command {
        Command::Verify { what, file } => verify(*what, file),
        Command::Build {
            what: BuildTarget::Eta,
            source,
            output,
        } => {
            let eta = source.eta()?;
            let result = deliver(&TernaryFile::from(&eta), output)?;
            Ok(Document::new("build eta", vec![], Some(result)))
        }
        Command::Build {
            what: BuildTarget::Sigma,
            source,
            output,
        } => {
            let s = source.sigma()?;
            let result = deliver(&SigmaFile::from(&s), output)?;
            Ok(Document::new("build sigma", vec![], Some(result)))
        }
        Command::Check {
            which,
            source,
            eta,
            sigma,
        } => check(*which, source, eta, sigma),
        Command::Search {
            what: SearchTarget::Roots { word, modulus },
        } => {
            let roots = sset::search_roots(word, Modulus::new(*modulus)?)?;
            let values: Vec<u64> = roots.iter().map(|r| r.value()).collect();
            Ok(Document::new(
                "search roots",
                vec![],
                Some(json!({ "roots": values })),
            ))
        }
        Command::Search {
            what:
                SearchTarget::Words {
                    cyclotomic,
                    max_len,
                    max_exp,
                },
        } => {
            if *cyclotomic == 0 {
                return Err(CliError("--cyclotomic must be positive".into()));
            }
            let words = search::search_words(*cyclotomic, *max_len as usize, *max_exp);
            Ok(Document::new(
                "search words",
                vec![],
                Some(json!({ "words": words })),
            ))
        }
        Command::Emit {
            what: EmitTarget::Presentation,
            source,
            sigma,
            output,
        } => {
            let s = load_sigma(sigma, source)?;
            let p = hopfcat::emit_presentation(s.quasigroup(), &s)?;
            let result = deliver(&PresentationFile::from(&p), output)?;
            Ok(Document::new("emit presentation", vec![], Some(result)))
        }
    }
}

fn thread_count(cli: &Cli) -> Option<usize> {
    cli.threads
        .or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
        .filter(|&t| t > 0)
}

fn summarize(doc: &Document) -> String {
    let mut s = String::new();
    for r in &doc.reports {
        let verdict = if r.pass {
            "ok".to_string()
        } else {
            format!("FAILED, witness {:?}", r.witness)
        };
        s.push_str(&format!("{}: {}\n", r.check, verdict));
    }
    s.push_str(&format!(
        "{}: {}\n",
        doc.command,
        if doc.pass { "pass" } else { "fail" }
    ));
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                stdout: String::new(),
                stderr: e.to_string(),
            };
        }
    };
    let doc = match thread_count(&cli) {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError(e.to_string())),
        },
        None => execute(&cli),
    };
    match doc {
        Ok(doc) => {
            let stdout = serde_json::to_string(&doc).expect("report serializes") + "\n";
            Outcome {
                code: if doc.pass { 0 } else { 1 },
                stdout,
                stderr: summarize(&doc),
            }
        }
        Err(CliError(msg)) => {
            let stdout = json!({ "pass": false, "error": msg }).to_string() + "\n";
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
