//! `weyl`: batch front end for the weyl-groupoid library.
//!
//! Exit status is 0 when every check passes, 1 when a check fails (the
//! report is still written) and 2 on input errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use weyl_groupoid::bundle::{bundle_summary, named_system, SYSTEM_NAMES};
use weyl_groupoid::cosets::{coset_law_suite, is_unit_coset, enumerate_cosets, enumerate_filters, enumerate_filters_brute_force, maximal_proper};
use weyl_groupoid::error::Error;
use weyl_groupoid::io::{groupoid_dot, parse_matrix, parse_semigroup, to_json, GroupoidDoc, MatrixDoc, ReportDoc, SemigroupDoc};
use weyl_groupoid::models::{named_embedding, named_pair, symmetric_inverse_monoid_with_limit, MODEL_NAMES};
use weyl_groupoid::relations::relation_law_suite;
use weyl_groupoid::report::Report;
use weyl_groupoid::ring::laws::ring_law_suite;
use weyl_groupoid::ring::norm::{ceil_norm, fmt_eps, quasi_norm_sq, ExtNonneg, NormMode, RingBackend};
use weyl_groupoid::ring::rational::parse_q;
use weyl_groupoid::semigroup::{is_weyl_pair, validate_star_semigroup, StarSemigroup, WeylPair};
use weyl_groupoid::topology::{etale_report, hausdorff_units, weyl_groupoid, Carrier};

/// Largest pair checked against the brute-force filter oracle.
const BRUTE_FORCE_FILTER_LIMIT: usize = 12;

#[derive(Parser)]
#[command(name = "weyl", version, about = "Weyl groupoids of finite *-semigroups and exact *-ring law suites")]
struct Cli {
    /// Worker threads for parallel scans.
    #[arg(long, global = true, env = "WEYL_WORKERS")]
    workers: Option<usize>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Lift the size limits of the inverse monoids and the exhaustive suites.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a *-semigroup document and, when it names E, the Weyl axioms.
    Verify {
        file: PathBuf,
        /// Also run the relation and coset law suites.
        #[arg(long)]
        suites: bool,
    },
    /// Write a bundled model as a semigroup document.
    Model {
        /// Model name; `cyclic:<n>`, `inverse:<n>` and `pair:<n>` take a size.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
        /// List the model names.
        #[arg(long)]
        list: bool,
    },
    /// Build the Weyl groupoid of a pair and write it as JSON.
    Weyl {
        #[command(flatten)]
        input: PairInput,
        #[arg(long, default_value = "ultrafilters")]
        carrier: Carrier,
        /// Also write a DOT digraph.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Count cosets, filters and ultrafilters and run the coset law suite.
    Cosets {
        #[command(flatten)]
        input: PairInput,
        /// Also write the cosets, filters, ultrafilters and unit cosets as JSON.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Seeded ring-law suite, plus the exhaustive model laws with `--model`.
    Laws {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Matrix dimension of the sampled backend.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=6))]
        dim: u64,
        /// Sample over the integers instead of rational matrices.
        #[arg(long, conflicts_with = "dim")]
        integers: bool,
        /// Embedded model for the exhaustive laws; its relation laws run too.
        #[arg(long)]
        model: Option<String>,
    },
    /// `⌈a⌉` and `‖a‖²` of a matrix document.
    Norm {
        file: PathBuf,
        /// Compute exactly (the default).
        #[arg(long, value_enum, conflicts_with = "eps")]
        mode: Option<ExactMode>,
        /// Approximate within this rational tolerance instead of exactly.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Build the Weyl bundle of a bundled action system.
    Bundle {
        /// System name, or `--list`.
        #[arg(required_unless_present = "list")]
        system: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// Write a model's semigroup, Weyl groupoid, DOT graph and embedding.
    Export {
        name: String,
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExactMode {
    Exact,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PairInput {
    /// Semigroup document with an `e` field.
    file: Option<PathBuf>,
    /// Bundled model instead of a file.
    #[arg(long)]
    model: Option<String>,
}

impl PairInput {
    fn load(&self, allow_large: bool) -> Result<WeylPair, Error> {
        match (&self.file, &self.model) {
            (Some(path), _) => parse_semigroup(&read(path)?)?.pair(),
            (None, Some(name)) => load_model(name, allow_large),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(passed: bool) -> Self {
        if passed {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn load_model(name: &str, allow_large: bool) -> Result<WeylPair, Error> {
    match name.strip_prefix("inverse:").map(str::parse::<usize>) {
        Some(Ok(n)) if allow_large => symmetric_inverse_monoid_with_limit(n, usize::MAX),
        _ => named_pair(name),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_report(format: Format, command: &str, report: Report) -> Outcome {
    let passed = report.passed();
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => print!("{}", to_json(&ReportDoc::new(command, report))),
    }
    passed.into()
}

fn verify(file: &Path, suites: bool, allow_large: bool) -> Result<Report, Error> {
    let doc = parse_semigroup(&read(file)?)?;
    let mut report = validate_star_semigroup(&doc.mult, &doc.star, doc.zero)?;
    if !report.passed() {
        if doc.e.is_some() {
            report.check("weyl_pair", 1, Some("not a *-semigroup".into()));
        }
        return Ok(report);
    }
    let s = StarSemigroup::from_tables_unchecked(doc.mult.clone(), doc.star.clone(), doc.zero);
    if doc.e.is_none() {
        report.fact("weyl_pair", "not checked: the document has no E");
        return Ok(report);
    }
    let e = doc.e_set(s.n())?;
    let weyl = is_weyl_pair(&s, &e);
    let failed = weyl.failures().next().map(|c| c.name.clone());
    let n = weyl.checks.len() as u64;
    report.merge("", weyl);
    report.check("weyl_pair", n, failed);
    if suites && report.passed() {
        let pair = WeylPair::new_unchecked(s, e);
        report.merge("relations", relation_law_suite(&pair, allow_large)?);
        report.merge("cosets", coset_law_suite(&pair)?);
    }
    Ok(report)
}

fn weyl_report(pair: &WeylPair, carrier: Carrier) -> Result<(GroupoidDoc, String), Error> {
    let g = weyl_groupoid(pair, carrier)?;
    let mut report = g.checks.clone();
    report.merge("etale", etale_report(&g));
    report.fact("points", g.n());
    report.fact("exhaustive", g.exhaustive);
    report.fact("hausdorff_units", hausdorff_units(&g));
    let mut doc = GroupoidDoc::from_groupoid(&g);
    doc.report = Some(report);
    Ok((doc, groupoid_dot(&g)))
}

fn cosets(pair: &WeylPair, path: Option<&Path>) -> Result<Report, Error> {
    let mut report = Report::new();
    let cosets = enumerate_cosets(pair);
    let filters = enumerate_filters(pair);
    report.fact("elements", pair.n());
    report.fact("cosets", cosets.cosets.len());
    report.fact("cosets_exhaustive", cosets.exhaustive);
    report.fact("filters", filters.len());
    let ultrafilters = maximal_proper(&filters);
    report.fact("ultrafilters", ultrafilters.len());
    if let Some(path) = path {
        let units: Vec<_> = cosets.cosets.iter().filter(|c| is_unit_coset(pair, c)).collect();
        let doc = serde_json::json!({
            "cosets": cosets.cosets,
            "filters": filters,
            "ultrafilters": ultrafilters,
            "units": units,
        });
        write(path, &to_json(&doc))?;
    }
    if pair.n() <= BRUTE_FORCE_FILTER_LIMIT {
        let brute = enumerate_filters_brute_force(pair)?;
        let witness = (brute != filters).then(|| format!("{} principal vs {} brute force", filters.len(), brute.len()));
        report.check("filters_match_brute_force", 1u64 << pair.n(), witness);
    }
    report.merge("", coset_law_suite(pair)?);
    Ok(report)
}

fn norm(file: &Path, eps: Option<&str>) -> Result<Report, Error> {
    let a = parse_matrix(&read(file)?)?;
    let backend = RingBackend::RationalMatrices(a.dim());
    let mut report = Report::new();
    let (mode, suffix) = match eps {
        Some(text) => {
            let eps = parse_q(text)?;
            let suffix = format!(" (±{})", fmt_eps(&eps));
            (NormMode::Approx(eps), suffix)
        }
        None => (NormMode::Exact, String::new()),
    };
    let show = |v: ExtNonneg| format!("{v}{}", if v.is_finite() { suffix.as_str() } else { "" });
    report.fact("ceil_norm", show(ceil_norm(backend, &a, &mode)?));
    report.fact("quasi_norm_sq", show(quasi_norm_sq(backend, &a, &mode)?));
    Ok(report)
}

fn export(name: &str, dir: &Path) -> Result<Vec<PathBuf>, Error> {
    let pair = named_pair(name)?;
    fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    let mut put = |file: &str, text: String| -> Result<(), Error> {
        let path = dir.join(file);
        write(&path, &text)?;
        written.push(path);
        Ok(())
    };
    put("semigroup.json", to_json(&SemigroupDoc::from_pair(Some(name), &pair)))?;
    let (doc, dot) = weyl_report(&pair, Carrier::Ultrafilters)?;
    put("weyl.json", to_json(&doc))?;
    put("weyl.dot", dot)?;
    if let Ok(model) = named_embedding(name) {
        let images: Vec<MatrixDoc> = (0..pair.n()).map(|a| MatrixDoc::from_matrix(model.image(a))).collect();
        let doc = serde_json::json!({ "d": model.backend.dim(), "flags": model.flags, "images": images });
        put("embedding.json", to_json(&doc))?;
    }
    Ok(written)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let format = cli.format;
    let allow_large = cli.allow_large;
    match cli.command {
        Command::Verify { file, suites } => Ok(print_report(format, "verify", verify(&file, suites, allow_large)?)),
        Command::Model { list: true, .. } => {
            for name in MODEL_NAMES {
                println!("{name}");
            }
            Ok(Outcome::Pass)
        }
        Command::Model { name, emit: path, .. } => {
            let name = name.expect("clap requires a name");
            let pair = load_model(&name, allow_large)?;
            emit(path.as_deref(), &to_json(&SemigroupDoc::from_pair(Some(&name), &pair)))?;
            Ok(Outcome::Pass)
        }
        Command::Weyl { input, carrier, dot, emit: path } => {
            let (doc, dot_text) = weyl_report(&input.load(allow_large)?, carrier)?;
            if let Some(p) = dot {
                write(&p, &dot_text)?;
            }
            let passed = doc.report.as_ref().is_some_and(Report::passed);
            emit(path.as_deref(), &to_json(&doc))?;
            Ok(passed.into())
        }
        Command::Cosets { input, emit: path } => {
            Ok(print_report(format, "cosets", cosets(&input.load(allow_large)?, path.as_deref())?))
        }
        Command::Laws { seed, samples, dim, integers, model } => {
            let backend = if integers { RingBackend::Integers } else { RingBackend::RationalMatrices(dim as usize) };
            let embedded = model.as_deref().map(named_embedding).transpose()?;
            let mut report = ring_law_suite(backend, embedded.as_ref(), samples, seed)?;
            if let Some(name) = model.as_deref() {
                report.merge("relations", relation_law_suite(&load_model(name, allow_large)?, allow_large)?);
            }
            Ok(print_report(format, "laws", report))
        }
        Command::Norm { file, eps, .. } => Ok(print_report(format, "norm", norm(&file, eps.as_deref())?)),
        Command::Bundle { list: true, .. } => {
            for name in SYSTEM_NAMES {
                println!("{name}");
            }
            Ok(Outcome::Pass)
        }
        Command::Bundle { system, emit: path, .. } => {
            let summary = bundle_summary(&named_system(&system.expect("clap requires a system"))?)?;
            let passed = summary.report.passed();
            emit(path.as_deref(), &to_json(&summary))?;
            Ok(passed.into())
        }
        Command::Export { name, dir } => {
            for path in export(&name, &dir)? {
                println!("{}", path.display());
            }
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
