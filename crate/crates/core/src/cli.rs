//! The `novikov` command-line front end.
//!
//! [`run`] takes the full argument list and returns the exit code together
//! with everything written to stdout and stderr, so the binary is a thin
//! wrapper and tests can drive it in-process.
//!
//! Exit codes: `0` computed (including a report with no obstruction), `2`
//! input error, `3` internal invariant violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{AlgebraError, LaurentPoly, NovikovSeries};
use crate::complexes::{convolve, ChainComplex, ComplexError, CwInput, PlainComplex};
use crate::fox::fox_derivative;
use crate::obstruction::{
    self, FreeProductInput, NontrivialityWitness, ObstructionError, ReportInput, Verdict,
};
use crate::presentation::{Presentation, PresentationError};
use crate::words::WeightVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "novikov",
    version,
    about = "Novikov homology and Lagrangian embedding obstructions"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fox derivatives of every relator.
    Fox {
        /// Presentation text such as "<a,b|[a,b]>", or a file.
        presentation: String,
        /// Only differentiate with respect to this generator.
        #[arg(long = "gen")]
        generator: Option<String>,
    },
    /// Novikov Betti numbers of a presentation complex or a CW complex.
    Betti {
        /// Presentation text, or a presentation / CW JSON file.
        input: String,
        #[arg(short = 'u', long = "weights", value_parser = parse_weights, allow_hyphen_values = true)]
        weights: WeightVector,
    },
    /// Run every obstruction rule and report the certificates found.
    Obstruct {
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
        /// CW JSON for L; supplies the Euler characteristic when --chi is absent.
        #[arg(long)]
        cw: Option<String>,
        /// Two factors as PRESENTATION:WITNESS, the witness being JSON or a file.
        #[arg(long = "free-product", num_args = 2, value_names = ["LEFT", "RIGHT"])]
        free_product: Option<Vec<String>>,
        /// Attach a weight scan as evidence.
        #[arg(long)]
        scan: bool,
        #[arg(short = 'B', long, default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Compare Betti numbers of C ⊗ D with the convolution of the factors.
    Kunneth {
        /// CW JSON over the group ring.
        first: String,
        /// CW JSON with constant entries.
        second: String,
        #[arg(short = 'u', long = "weights", value_parser = parse_weights, allow_hyphen_values = true)]
        weights: WeightVector,
    },
    /// Euler characteristic from cell counts, checked against Betti numbers.
    Euler {
        input: String,
        #[arg(short = 'u', long = "weights", value_parser = parse_weights, allow_hyphen_values = true)]
        weights: Option<WeightVector>,
    },
    /// Invert a unit of the Novikov ring up to a truncation level.
    Invert {
        series: String,
        #[arg(short = 'u', long = "weights", value_parser = parse_weights, allow_hyphen_values = true)]
        weights: WeightVector,
        #[arg(short = 'N', long = "truncation", default_value_t = 32)]
        truncation: i64,
    },
}

fn parse_weights(text: &str) -> Result<WeightVector, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| format!("`{s}` is not an integer"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(WeightVector::new)
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<ObstructionError> for Failure {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Complex(c) => c.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

struct Output {
    stdout: String,
    stderr: String,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }

    fn warn(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.stderr, "warning: {}", s.as_ref());
    }

    fn json<T: Serialize>(&mut self, value: &T) {
        self.line(serde_json::to_string_pretty(value).expect("output serializes"));
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut out = Output {
        stdout: String::new(),
        stderr: String::new(),
    };
    let code = match execute(&cli, &mut out) {
        Ok(()) => 0,
        Err(Failure::Input(m)) => {
            let _ = writeln!(out.stderr, "error: {m}");
            2
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(out.stderr, "internal error: {m}");
            3
        }
    };
    Outcome {
        code,
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

fn execute(cli: &Cli, out: &mut Output) -> Result<(), Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Fox {
            presentation,
            generator,
        } => cmd_fox(presentation, generator.as_deref(), format, out),
        Command::Betti { input, weights } => cmd_betti(input, weights, format, out),
        Command::Obstruct {
            presentation,
            chi,
            cw,
            free_product,
            scan,
            bound,
            degree,
        } => {
            let mut input = ReportInput {
                chi: *chi,
                ..Default::default()
            };
            if let Some(text) = presentation {
                input.presentation = Some(load_presentation(text)?);
            }
            if let (None, Some(path)) = (chi, cw) {
                let cw = CwInput::from_json(&read_source(path)?)?;
                input.chi = Some(alternating(&cw.dims));
            }
            if let Some(pair) = free_product {
                let (left, left_witness) = load_factor(&pair[0])?;
                let (right, right_witness) = load_factor(&pair[1])?;
                input.free_product = Some(FreeProductInput {
                    left,
                    left_witness,
                    right,
                    right_witness,
                });
            }
            if input.presentation.is_none() && input.free_product.is_none() {
                return Err(Failure::Input(
                    "obstruct needs --presentation or --free-product".into(),
                ));
            }
            if *scan {
                input.scan = Some((*bound, *degree));
            }
            cmd_obstruct(&input, format, out)
        }
        Command::Kunneth {
            first,
            second,
            weights,
        } => cmd_kunneth(first, second, weights, format, out),
        Command::Euler { input, weights } => cmd_euler(input, weights.as_ref(), format, out),
        Command::Invert {
            series,
            weights,
            truncation,
        } => cmd_invert(series, weights, *truncation, format, out),
    }
}

/// File contents when `source` names an existing file, else the text itself.
fn read_source(source: &str) -> Result<String, Failure> {
    let path = Path::new(source);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{source}: {e}")))
    } else {
        Ok(source.to_string())
    }
}

enum Loaded {
    Presentation(Presentation),
    Cw(CwInput),
}

fn load(source: &str) -> Result<Loaded, Failure> {
    let text = read_source(source)?;
    if !text.trim_start().starts_with('{') {
        return Ok(Loaded::Presentation(Presentation::parse(&text)?));
    }
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
    if value.get("variables").is_some() {
        Ok(Loaded::Cw(CwInput::from_json(&text)?))
    } else {
        Ok(Loaded::Presentation(Presentation::from_json(&text)?))
    }
}

fn load_presentation(source: &str) -> Result<Presentation, Failure> {
    match load(source)? {
        Loaded::Presentation(p) => Ok(p),
        Loaded::Cw(_) => Err(Failure::Input(format!(
            "{source}: expected a presentation, got a CW complex"
        ))),
    }
}

fn load_cw(source: &str) -> Result<CwInput, Failure> {
    match load(source)? {
        Loaded::Cw(cw) => Ok(cw),
        Loaded::Presentation(_) => Err(Failure::Input(format!("{source}: expected CW JSON"))),
    }
}

/// Splits `PRESENTATION:WITNESS`. An inline JSON witness starts at the first
/// `:{`; otherwise the last colon separates the two parts.
fn load_factor(arg: &str) -> Result<(Presentation, NontrivialityWitness), Failure> {
    let split = arg.find(":{").or_else(|| arg.rfind(':'));
    let Some(at) = split else {
        return Err(Failure::Input(format!(
            "`{arg}`: expected PRESENTATION:WITNESS"
        )));
    };
    let p = load_presentation(&arg[..at])?;
    let w = NontrivialityWitness::from_json(&read_source(&arg[at + 1..])?, &p)?;
    Ok((p, w))
}

fn alternating(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

fn list(values: &[usize]) -> String {
    let items: Vec<String> = values.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(","))
}

/// Builds the complex for a loaded input. A failing `d^2 = 0` check on a
/// presentation complex is an internal error; on user CW data it is bad input.
fn complex_for(loaded: &Loaded, u: &WeightVector) -> Result<ChainComplex, Failure> {
    match loaded {
        Loaded::Presentation(p) => ChainComplex::from_presentation(p, u).map_err(|e| match e {
            ComplexError::NotAComplex { .. } => Failure::Internal(e.to_string()),
            other => other.into(),
        }),
        Loaded::Cw(cw) => Ok(ChainComplex::from_cw(cw, u)?),
    }
}

#[derive(Serialize)]
struct FoxRow {
    relator: String,
    derivatives: Vec<FoxEntry>,
}

#[derive(Serialize)]
struct FoxEntry {
    generator: String,
    derivative: String,
}

fn cmd_fox(
    source: &str,
    generator: Option<&str>,
    format: Format,
    out: &mut Output,
) -> Result<(), Failure> {
    let p = load_presentation(source)?;
    let names = p.generators();
    let selected: Vec<usize> = match generator {
        Some(g) => vec![p
            .generator_index(g)
            .ok_or_else(|| Failure::Input(format!("unknown generator `{g}`")))?],
        None => (0..p.rank()).collect(),
    };
    let mut rows = Vec::new();
    for r in p.relators() {
        let derivatives = selected
            .iter()
            .map(|&i| {
                let d =
                    fox_derivative(r, i, p.rank()).map_err(|e| Failure::Internal(e.to_string()))?;
                Ok(FoxEntry {
                    generator: names[i].clone(),
                    derivative: d.display_with(names).to_string(),
                })
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        rows.push(FoxRow {
            relator: r.display_with(names).to_string(),
            derivatives,
        });
    }
    match format {
        Format::Json => out.json(&rows),
        Format::Text => {
            for row in &rows {
                let cells: Vec<&str> = row
                    .derivatives
                    .iter()
                    .map(|d| d.derivative.as_str())
                    .collect();
                out.line(cells.join("\t"));
            }
        }
    }
    Ok(())
}

fn cmd_betti(
    source: &str,
    u: &WeightVector,
    format: Format,
    out: &mut Output,
) -> Result<(), Failure> {
    let loaded = load(source)?;
    let complex = complex_for(&loaded, u)?;
    let (_, betti) = complex.checked_euler_characteristic()?;
    if u.is_trivial() {
        out.warn("trivial class u = 0: these are ordinary Z/2 Betti numbers");
    }
    match format {
        Format::Json => out.json(&betti.to_output()),
        Format::Text => out.line(list(&betti.betti)),
    }
    Ok(())
}

fn cmd_obstruct(input: &ReportInput, format: Format, out: &mut Output) -> Result<(), Failure> {
    let report = obstruction::report(input)?;
    match format {
        Format::Json => out.line(report.to_json()),
        Format::Text => {
            out.line(report.verdict.to_string());
            for c in &report.certificates {
                let witness = serde_json::to_string(&c.witness).expect("witness serializes");
                out.line(format!(
                    "certificate [{}] {}: {}",
                    c.citation,
                    rule_name(c),
                    witness
                ));
                out.line(format!("  scope: {}", c.scope));
                if let Some(caveat) = &c.caveat {
                    out.line(format!("  caveat: {caveat}"));
                }
            }
            if let Some(scan) = &report.evidence {
                out.line(format!(
                    "evidence ({}): {} classes in [-{b},{b}], b_{} nonzero for all: {}",
                    scan.kind,
                    scan.entries.len(),
                    scan.degree,
                    scan.nonvanishing_for_all,
                    b = scan.bound,
                ));
            }
            if report.verdict == Verdict::NoObstructionFound {
                out.line("no rule applies; this does not show that an embedding exists");
            }
        }
    }
    Ok(())
}

fn rule_name(c: &obstruction::Certificate) -> String {
    serde_json::to_value(c.rule)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

#[derive(Serialize)]
struct KunnethOutput {
    weight: Vec<i64>,
    first: Vec<usize>,
    second: Vec<usize>,
    tensor: Vec<usize>,
    convolution: Vec<usize>,
    #[serde(rename = "match")]
    matches: bool,
}

fn cmd_kunneth(
    first: &str,
    second: &str,
    u: &WeightVector,
    format: Format,
    out: &mut Output,
) -> Result<(), Failure> {
    let c = ChainComplex::from_cw(&load_cw(first)?, u)?;
    let d = PlainComplex::from_cw(&load_cw(second)?)?;
    let bc = c.betti()?.betti;
    let bd = d.betti();
    let tensor = c.tensor_product(&d).betti()?.betti;
    let convolution = convolve(&bc, &bd);
    let result = KunnethOutput {
        weight: u.as_slice().to_vec(),
        matches: tensor == convolution,
        first: bc,
        second: bd,
        tensor,
        convolution,
    };
    match format {
        Format::Json => out.json(&result),
        Format::Text => {
            out.line(format!("tensor {}", list(&result.tensor)));
            out.line(format!("convolution {}", list(&result.convolution)));
            out.line(format!("match {}", result.matches));
        }
    }
    if result.matches {
        Ok(())
    } else {
        Err(Failure::Internal(
            "Betti numbers of the tensor product differ from the convolution".into(),
        ))
    }
}

#[derive(Serialize)]
struct EulerOutput {
    euler: i64,
    betti: Vec<usize>,
    weight: Vec<i64>,
}

fn cmd_euler(
    source: &str,
    u: Option<&WeightVector>,
    format: Format,
    out: &mut Output,
) -> Result<(), Failure> {
    let loaded = load(source)?;
    let u = match (u, &loaded) {
        (Some(u), _) => u.clone(),
        (None, Loaded::Presentation(p)) => WeightVector::zero(p.rank()),
        (None, Loaded::Cw(cw)) => WeightVector::zero(cw.variables),
    };
    let (euler, betti) = complex_for(&loaded, &u)?.checked_euler_characteristic()?;
    match format {
        Format::Json => out.json(&EulerOutput {
            euler,
            betti: betti.betti,
            weight: u.as_slice().to_vec(),
        }),
        Format::Text => {
            out.line(euler.to_string());
            out.line(format!(
                "betti {} at u = {u}, alternating sum {}",
                list(&betti.betti),
                betti.euler()
            ));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct InvertOutput {
    weight: Vec<i64>,
    truncation: i64,
    inverse: String,
    terms: Vec<Vec<i64>>,
}

fn cmd_invert(
    text: &str,
    u: &WeightVector,
    n: i64,
    format: Format,
    out: &mut Output,
) -> Result<(), Failure> {
    if n < 1 {
        return Err(Failure::Input(format!(
            "truncation level must be at least 1, got {n}"
        )));
    }
    let x = LaurentPoly::parse(text, u.rank())?;
    let inverse = NovikovSeries::invert_polynomial(&x, u, n)?;
    match format {
        Format::Json => out.json(&InvertOutput {
            weight: u.as_slice().to_vec(),
            truncation: inverse.truncation(),
            inverse: inverse.to_string(),
            terms: inverse.sorted_terms().into_iter().cloned().collect(),
        }),
        Format::Text => out.line(inverse.to_string()),
    }
    Ok(())
}
