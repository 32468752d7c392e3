//! Command-line frontend.
//!
//! Exit codes: 0 on success, 1 on a domain error (the error's variant name is
//! printed), 2 on malformed input or arguments. Standard output carries a
//! human-readable report and is identical across runs on identical input; the
//! elapsed time goes to standard error only. With `--out FILE` the JSON artifact
//! is written to `FILE` and a run report to `FILE.report.json`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::complex::{boundary, l1_norm, SimplicialComplex};
use crate::homology::{betti_numbers, fundamental_cycle, homology_basis, HomologyClass};
use crate::json::{CertificateJson, ChainJson, ComplexJson, CoverJson, FormatError, SectionJson};
use crate::measure::{
    boundary_measure, duality_bound, include_chain, kronecker, measure_seminorm, total_variation, v2_extend,
};
use crate::rational::{self, Rational};
use crate::seminorm::{certificate_from, seminorm_program, solve_seminorm, verify_certificate};
use crate::{random, seminorm};

#[derive(Debug, Parser)]
#[command(name = "l1hom", version, about = "Exact l1-seminorms of simplicial homology classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print rational Betti numbers.
    Homology(Common),
    /// Compute the l1-seminorm of a class and an optimal representative.
    L1norm(ClassArgs),
    /// Compute a normalised dual cocycle certificate.
    Certificate(ClassArgs),
    /// Re-check a certificate file against a class without the LP solver.
    Verify {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Upper bounds for the simplicial volume under repeated subdivision.
    Volume {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        subdivide: usize,
    },
    /// Run the measure-chain property suite on a complex.
    MeasureSelftest(Common),
    /// Build and verify the canonical section of a covering map.
    CoverSection(Common),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassArgs {
    #[command(flatten)]
    common: Common,
    /// Degree of the class; defaults to the top dimension.
    #[arg(long)]
    degree: Option<usize>,
    /// Index into the homology basis; without it the fundamental class is used.
    #[arg(long)]
    class_index: Option<usize>,
    /// Write the seminorm program in plain text to this file.
    #[arg(long)]
    dump_lp: Option<PathBuf>,
}

/// Machine-readable summary written next to each `--out` artifact.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub outputs: BTreeMap<String, Value>,
    pub pivots: usize,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Failure of a command: malformed input (exit 2) or a named domain error (exit 1).
#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Domain { name: &'static str, message: String },
}

impl CliError {
    fn domain(name: &'static str, message: impl Into<String>) -> Self {
        CliError::Domain { name, message: message.into() }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Json(e) => CliError::Malformed(e.to_string()),
            FormatError::Rational(e) => CliError::Malformed(e.to_string()),
            FormatError::Complex(e) => CliError::domain(e.name(), e.to_string()),
            FormatError::Cover(e) => CliError::domain(e.name(), e.to_string()),
        }
    }
}

impl From<crate::complex::ComplexError> for CliError {
    fn from(e: crate::complex::ComplexError) -> Self {
        CliError::domain(e.name(), e.to_string())
    }
}

impl From<seminorm::SeminormError> for CliError {
    fn from(e: seminorm::SeminormError) -> Self {
        CliError::domain(e.name(), e.to_string())
    }
}

impl From<crate::measure::MeasureError> for CliError {
    fn from(e: crate::measure::MeasureError) -> Self {
        CliError::domain(e.name(), e.to_string())
    }
}

struct Output {
    lines: Vec<String>,
    report: RunReport,
    artifact: Option<String>,
}

impl Output {
    fn new(command: &str, digest: String) -> Self {
        Output {
            lines: Vec::new(),
            report: RunReport {
                command: command.to_string(),
                input_digest: digest,
                outputs: BTreeMap::new(),
                pivots: 0,
                elapsed_ms: 0,
            },
            artifact: None,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn record(&mut self, key: &str, v: Value) {
        self.report.outputs.insert(key.to_string(), v);
    }
}

fn q(v: &Rational) -> Value {
    Value::String(rational::to_string(v))
}

fn read_input(path: &Path) -> Result<(String, String), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok((text, digest))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<(SimplicialComplex, String), CliError> {
    let (text, digest) = read_input(path)?;
    let j: ComplexJson = parse_json(&text, path)?;
    Ok((SimplicialComplex::try_from(&j)?, digest))
}

fn select_class<'a>(x: &'a SimplicialComplex, args: &ClassArgs) -> Result<HomologyClass<'a>, CliError> {
    match args.class_index {
        Some(i) => {
            let k = args.degree.unwrap_or(x.dim());
            if k > x.dim() {
                return Err(CliError::domain("DegreeError", format!("degree {k} exceeds dimension {}", x.dim())));
            }
            let mut basis = homology_basis(x, k);
            if i >= basis.len() {
                return Err(CliError::domain(
                    "ClassIndexOutOfRange",
                    format!("class index {i} but H_{k} has rank {}", basis.len()),
                ));
            }
            Ok(basis.swap_remove(i))
        }
        None => {
            if let Some(k) = args.degree {
                if k != x.dim() {
                    return Err(CliError::domain(
                        "DegreeError",
                        format!("the fundamental class lives in degree {}; pass --class-index for degree {k}", x.dim()),
                    ));
                }
            }
            Ok(HomologyClass::new(x, fundamental_cycle(x)?)?)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Malformed(format!("cannot write {}: {e}", path.display())))
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn cmd_homology(args: &Common) -> Result<Output, CliError> {
    let (x, digest) = load_complex(&args.input)?;
    let mut out = Output::new("homology", digest);
    let betti = betti_numbers(&x);
    for (k, b) in betti.iter().enumerate() {
        out.line(format!("b{k}: {b}"));
    }
    out.record("betti", Value::Array(betti.iter().map(|b| q(&Rational::from_integer((*b).into()))).collect()));
    out.artifact = Some(to_pretty(&out.report.outputs));
    Ok(out)
}

fn cmd_l1norm(args: &ClassArgs, with_certificate: bool) -> Result<Output, CliError> {
    let (x, digest) = load_complex(&args.common.input)?;
    let class = select_class(&x, args)?;
    if let Some(path) = &args.dump_lp {
        write_file(path, &seminorm_program(&class).dump())?;
    }
    let sol = solve_seminorm(&class)?;
    let mut out = Output::new(if with_certificate { "certificate" } else { "l1norm" }, digest);
    out.report.pivots = sol.pivots;
    out.line(format!("degree: {}", class.degree()));
    out.line(format!("representative norm: {}", rational::to_string(&l1_norm(class.cycle()))));
    out.line(format!("seminorm: {}", rational::to_string(&sol.value)));
    out.record("degree", q(&Rational::from_integer(class.degree().into())));
    out.record("seminorm", q(&sol.value));
    out.record("dual_value", q(&sol.dual_value));
    if with_certificate {
        let cert = certificate_from(&sol)?
            .ok_or_else(|| CliError::domain("NoneExists", "the class has seminorm zero; no certificate exists"))?;
        out.line(format!("sup_norm: {}", rational::to_string(&cert.sup_norm)));
        out.line(format!("pairing: {}", rational::to_string(&cert.pairing)));
        out.line(format!("lower bound: {}", rational::to_string(&cert.bound())));
        out.record("sup_norm", q(&cert.sup_norm));
        out.artifact = Some(to_pretty(&CertificateJson::from(&cert)));
    } else {
        out.artifact = Some(to_pretty(&ChainJson::from(&sol.chain)));
    }
    Ok(out)
}

fn cmd_verify(args: &ClassArgs, certificate: &Path) -> Result<Output, CliError> {
    let (x, digest) = load_complex(&args.common.input)?;
    let class = select_class(&x, args)?;
    let (text, _) = read_input(certificate)?;
    let cert: CertificateJson = parse_json(&text, certificate)?;
    let phi = cert.cochain()?;
    let bound = verify_certificate(&phi, &class)?;
    let mut out = Output::new("verify", digest);
    out.line("certificate: valid");
    out.line(format!("lower bound: {}", rational::to_string(&bound)));
    out.record("lower_bound", q(&bound));
    Ok(out)
}

fn cmd_volume(args: &Common, rounds: usize) -> Result<Output, CliError> {
    let (x, digest) = load_complex(&args.input)?;
    let bounds = seminorm::volume_bounds(&x, rounds)?;
    let mut out = Output::new("volume", digest);
    for (i, b) in bounds.iter().enumerate() {
        out.line(format!("round {i}: facets {} upper bound {}", b.facets, rational::to_string(&b.value)));
        out.report.pivots += b.pivots;
    }
    out.record("upper_bounds", Value::Array(bounds.iter().map(|b| q(&b.value)).collect()));
    out.artifact = Some(to_pretty(&out.report.outputs));
    Ok(out)
}

/// Outcome of one property family in [`measure_selftest`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub cases: usize,
    pub passed: bool,
}

/// Measure-chain identities on random instances over `x`, from a fixed seed.
pub fn measure_selftest(x: &SimplicialComplex, seed: u64, cases: usize) -> Result<Vec<PropertyCheck>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = x.dim();
    let mut checks = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut(&mut ChaCha8Rng, usize) -> Result<bool, CliError>| {
        let mut passed = true;
        for i in 0..cases {
            passed &= f(&mut rng, i)?;
        }
        checks.push(PropertyCheck { name, cases, passed });
        Ok::<(), CliError>(())
    };

    run("total variation of i_X(c) equals |c|_1", &mut |rng, i| {
        let c = random::chain(rng, x, i % (dim + 1), 8);
        Ok(total_variation(&include_chain(&c)) == l1_norm(&c))
    })?;
    if dim >= 1 {
        run("boundary commutes with i_X", &mut |rng, i| {
            let c = random::chain(rng, x, 1 + i % dim, 8);
            Ok(boundary_measure(&include_chain(&c))? == include_chain(&boundary(&c)?))
        })?;
    }
    if dim >= 2 {
        run("boundary of boundary vanishes on measure chains", &mut |rng, i| {
            let mu = include_chain(&random::chain(rng, x, 2 + i % (dim - 1), 8));
            Ok(boundary_measure(&boundary_measure(&mu)?)?.is_zero())
        })?;
    }
    run("|<f, mu>| <= |f|_inf |mu|", &mut |rng, i| {
        let k = i % (dim + 1);
        let f = random::function(rng, x, k);
        let mu = include_chain(&random::chain(rng, x, k, 8));
        Ok(kronecker(&f, &mu)?.abs() <= f.sup_norm() * total_variation(&mu))
    })?;
    run("<v2(f), c> = <f, i_X(c)>", &mut |rng, i| {
        let k = i % (dim + 1);
        let f = random::function(rng, x, k);
        let c = random::chain(rng, x, k, 8);
        Ok(v2_extend(&f).evaluate(&c)? == kronecker(&f, &include_chain(&c))?)
    })?;
    if dim >= 1 {
        run("v2 commutes with coboundaries", &mut |rng, i| {
            let k = i % dim;
            let f = random::function(rng, x, k);
            let lhs = v2_extend(&f.coboundary(x)?);
            let rhs = v2_extend(&f).coboundary(x)?;
            Ok(lhs == rhs)
        })?;
    }
    let mut isometry_cases = 0;
    let mut isometry_ok = true;
    for k in 0..=dim {
        for class in homology_basis(x, k) {
            let lhs = measure_seminorm(&include_chain(class.cycle()), x)?.value;
            let rhs = solve_seminorm(&class)?.value;
            isometry_ok &= lhs == rhs;
            isometry_cases += 1;
        }
    }
    checks.push(PropertyCheck {
        name: "measure seminorm of i_X(z) equals l1 seminorm of [z]",
        cases: isometry_cases,
        passed: isometry_ok,
    });

    let mut duality_cases = 0;
    let mut duality_ok = true;
    for k in 0..=dim {
        if homology_basis(x, k).is_empty() {
            continue;
        }
        for _ in 0..cases {
            let class = random::cycle(&mut rng, x, k);
            let mu = include_chain(class.cycle());
            let f = random::cocycle(&mut rng, x, k);
            let pairing = kronecker(&f, &mu)?;
            if pairing.is_zero() {
                continue;
            }
            let f = f.scaled(&pairing.recip());
            let bound = duality_bound(&f, &mu, x)?;
            duality_ok &= measure_seminorm(&mu, x)?.value >= bound;
            duality_cases += 1;
        }
    }
    checks.push(PropertyCheck {
        name: "measure seminorm >= 1/|f|_inf for cocycles pairing to 1",
        cases: duality_cases,
        passed: duality_ok,
    });
    Ok(checks)
}

fn cmd_measure_selftest(args: &Common) -> Result<Output, CliError> {
    let (x, digest) = load_complex(&args.input)?;
    let checks = measure_selftest(&x, 0, 100)?;
    let mut out = Output::new("measure-selftest", digest);
    for c in &checks {
        out.line(format!("{} {} ({} cases)", if c.passed { "PASS" } else { "FAIL" }, c.name, c.cases));
        out.record(c.name, Value::Bool(c.passed));
    }
    out.artifact = Some(to_pretty(&out.report.outputs));
    if checks.iter().any(|c| !c.passed) {
        return Err(CliError::Domain { name: "PropertyFailed", message: out.lines.join("\n") });
    }
    Ok(out)
}

fn cmd_cover_section(args: &Common) -> Result<Output, CliError> {
    let (text, digest) = read_input(&args.input)?;
    let j: CoverJson = parse_json(&text, &args.input)?;
    let cover = j.to_cover()?;
    let section = cover.build_section();
    let verified = cover.verify_section(&section);
    let mut out = Output::new("cover-section", digest);
    let b0 = cover.base().vertices().next().expect("nonempty base");
    out.line(format!("sheets: {}", cover.sheets(b0)));
    out.line(format!("base simplices: {}", section.assignment().len()));
    out.line(format!("section verified: {verified}"));
    out.record("sheets", q(&Rational::from_integer(cover.sheets(b0).into())));
    out.record("verified", Value::Bool(verified));
    out.artifact = Some(to_pretty(&SectionJson::from(&section)));
    if !verified {
        return Err(CliError::domain("SectionInvalid", "built section failed P∘s = id"));
    }
    Ok(out)
}

fn report_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".report.json");
    PathBuf::from(name)
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let start = Instant::now();
    let (result, out_path) = match &cli.command {
        Command::Homology(c) => (cmd_homology(c), c.out.clone()),
        Command::L1norm(a) => (cmd_l1norm(a, false), a.common.out.clone()),
        Command::Certificate(a) => (cmd_l1norm(a, true), a.common.out.clone()),
        Command::Verify { class, certificate } => (cmd_verify(class, certificate), class.common.out.clone()),
        Command::Volume { common, subdivide } => (cmd_volume(common, *subdivide), common.out.clone()),
        Command::MeasureSelftest(c) => (cmd_measure_selftest(c), c.out.clone()),
        Command::CoverSection(c) => (cmd_cover_section(c), c.out.clone()),
    };
    let finish = |out: Output| -> Result<(), CliError> {
        let mut report = out.report;
        report.elapsed_ms = start.elapsed().as_millis();
        for l in &out.lines {
            let _ = writeln!(stdout, "{l}");
        }
        if let Some(path) = &out_path {
            write_file(path, out.artifact.as_deref().unwrap_or("{}\n"))?;
            write_file(&report_path(path), &to_pretty(&report))?;
        }
        let _ = writeln!(stderr, "elapsed: {} ms", report.elapsed_ms);
        Ok(())
    };
    match result.and_then(finish) {
        Ok(()) => 0,
        Err(CliError::Malformed(msg)) => {
            let _ = writeln!(stderr, "malformed input: {msg}");
            2
        }
        Err(CliError::Domain { name, message }) => {
            let _ = writeln!(stderr, "error: {name}: {message}");
            1
        }
    }
}
