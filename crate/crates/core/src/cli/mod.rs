//! Batch interface behind the `quatrec` binary.
//!
//! Exit codes: 0 affirmative, 1 refusal with witness, 2 unknown,
//! 3 input error. With `--format json` one report document is written to
//! standard output; it is byte-identical across identical invocations.

pub mod enumerate;
pub mod file;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::Algebra;
use crate::analysis::{center_basis, check_h1, check_h2, FieldStatus, H1Verdict, H2Verdict, SamplingConfig};
use crate::builtins::Builtin;
use crate::error::Error;
use crate::localization::Localization;
use crate::recognition::{
    build_quaternion_structure, decompose, h1_partial_mode, h2_mode, quadratic_certificate, recognize_with,
    QuaternionStructure, RecognitionConfig, RecognitionError, Status, StructureSource,
};
use crate::scalar::BaseRing;
use crate::witness::Witness;
use file::{AlgebraFile, LoadError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "quatrec", version, about = "Recognize quaternion algebras in structure-constant presentations")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for every randomized scan.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Random pairs tried after the basis pairs.
    #[arg(long, default_value_t = 64, global = true)]
    pub samples: usize,
    /// Coordinate bound for random elements.
    #[arg(long, default_value_t = 10, global = true)]
    pub height: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test both commutator hypotheses.
    Check { file: PathBuf },
    /// Run the full recognition pipeline.
    Recognize { file: PathBuf },
    /// Write an element over 1, i, j, k with central coefficients.
    Decompose {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Compute the center and decide whether it is a field.
    Center { file: PathBuf },
    /// Produce a quadratic relation with central coefficients.
    Quadratic {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Classify every unital table of a small dimension over a small prime field.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        field: u64,
        /// Lift the dim ≤ 3, p ∈ {2, 3} guard.
        #[arg(long)]
        force: bool,
    },
    /// Export a builtin presentation as JSON.
    Examples {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Affirmative,
    Refused,
    Unknown,
    InputError,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Affirmative => EXIT_OK,
            Verdict::Refused => EXIT_REFUSED,
            Verdict::Unknown => EXIT_UNKNOWN,
            Verdict::InputError => EXIT_INPUT,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub seed: u64,
    pub samples: usize,
    pub height: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: Option<Input>,
    pub parameters: Parameters,
    pub exit_code: i32,
    pub verdict: Verdict,
    pub message: String,
    pub witnesses: Vec<Witness>,
    pub result: Value,
    #[serde(skip)]
    pub text: Vec<String>,
    /// The presentation the witnesses refer to.
    #[serde(skip)]
    pub algebra: Option<Algebra>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut out = format!("{}\nverdict: {:?} (exit {})\n{}\n", self.command, self.verdict, self.exit_code, self.message);
                for line in &self.text {
                    out.push_str(line);
                    out.push('\n');
                }
                for w in &self.witnesses {
                    out.push_str(&format!("witness: {}\n", serde_json::to_string(w).expect("witness serializes")));
                }
                out
            }
        }
    }
}

struct Outcome {
    verdict: Verdict,
    message: String,
    witnesses: Vec<Witness>,
    result: Value,
    text: Vec<String>,
}

impl Outcome {
    fn new(verdict: Verdict, message: impl Into<String>) -> Self {
        Outcome { verdict, message: message.into(), witnesses: Vec::new(), result: Value::Null, text: Vec::new() }
    }

    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome::new(Verdict::InputError, e.to_string())
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn command_echo(cmd: &Command) -> String {
    match cmd {
        Command::Check { file } => format!("check {}", file.display()),
        Command::Recognize { file } => format!("recognize {}", file.display()),
        Command::Decompose { file, element } => format!("decompose {} --element {element}", file.display()),
        Command::Center { file } => format!("center {}", file.display()),
        Command::Quadratic { file, element } => format!("quadratic {} --element {element}", file.display()),
        Command::Enumerate { dim, field, force } => {
            format!("enumerate --dim {dim} --field {field}{}", if *force { " --force" } else { "" })
        }
        Command::Examples { name, out } => format!("examples --name {name} --out {}", out.display()),
    }
}

fn config(cli: &Cli) -> RecognitionConfig {
    RecognitionConfig {
        sampling: SamplingConfig { samples: cli.samples, height: cli.height, seed: cli.seed },
        ..RecognitionConfig::default()
    }
}

/// Run one parsed command and build its report.
pub fn execute(cli: &Cli) -> Report {
    let cfg = config(cli);
    let mut input = None;
    let mut algebra = None;
    let file = match &cli.command {
        Command::Check { file }
        | Command::Recognize { file }
        | Command::Decompose { file, .. }
        | Command::Center { file }
        | Command::Quadratic { file, .. } => Some(file),
        _ => None,
    };
    let outcome = match file.map(|f| read_presentation(f)) {
        Some(Err(o)) => o,
        Some(Ok((alg, bytes))) => {
            input = Some(Input { path: file.expect("file given").display().to_string(), sha256: hex_digest(&bytes) });
            let o = match file::validated(alg.clone()) {
                Err(e) => validation_refusal(e),
                Ok(alg) => match &cli.command {
                    Command::Check { .. } => run_check(&alg, &cfg),
                    Command::Recognize { .. } => run_recognize(&alg, &cfg),
                    Command::Decompose { element, .. } => run_decompose(&alg, element, &cfg),
                    Command::Center { .. } => run_center(&alg),
                    Command::Quadratic { element, .. } => run_quadratic(&alg, element),
                    _ => unreachable!("file commands only"),
                },
            };
            algebra = Some(alg);
            o
        }
        None => match &cli.command {
            Command::Enumerate { dim, field, force } => run_enumerate(*dim, *field, *force),
            Command::Examples { name, out } => run_examples(name, out),
            _ => unreachable!("non-file commands only"),
        },
    };
    Report {
        tool: "quatrec",
        version: env!("CARGO_PKG_VERSION"),
        command: command_echo(&cli.command),
        input,
        parameters: Parameters { seed: cli.seed, samples: cli.samples, height: cli.height },
        exit_code: outcome.verdict.exit_code(),
        verdict: outcome.verdict,
        message: outcome.message,
        witnesses: outcome.witnesses,
        result: outcome.result,
        text: outcome.text,
        algebra,
    }
}

/// Parse arguments, run, print the report; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    let report = execute(&cli);
    print!("{}", report.render(cli.format));
    report.exit_code
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read_presentation(path: &Path) -> Result<(Algebra, Vec<u8>), Outcome> {
    let fail = |e: Error| Outcome::input_error(format!("{}: {e}", path.display()));
    let bytes = std::fs::read(path).map_err(|e| fail(e.into()))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| fail(Error::Parse("file is not UTF-8".into())))?;
    let alg = AlgebraFile::from_json(text).and_then(|f| f.to_algebra()).map_err(fail)?;
    Ok((alg, bytes))
}

fn validation_refusal(e: LoadError) -> Outcome {
    match e {
        LoadError::Input(e) => Outcome::input_error(e),
        LoadError::Invalid { report, witness } => {
            let mut o = Outcome::new(Verdict::Refused, "presentation fails validation");
            o.result = json!({ "validation": to_value(&report) });
            o.text.push(format!("validation: {report:?}"));
            o.witnesses.push(witness);
            o
        }
    }
}

fn h1_text(v: &H1Verdict) -> String {
    match v {
        H1Verdict::Fails { .. } => "h1: fails".into(),
        H1Verdict::HoldsExhaustive { subspaces_checked } => format!("h1: holds ({subspaces_checked} subspaces)"),
        H1Verdict::HoldsImpliedByDivision => "h1: holds (implied by division certificate)".into(),
        H1Verdict::NoViolationSampled { samples, height, seed } => {
            format!("h1: no violation sampled (samples {samples}, height {height}, seed {seed})")
        }
    }
}

fn h2_text(v: &H2Verdict) -> String {
    match v {
        H2Verdict::HoldsSymbolic => "h2: holds (symbolic)".into(),
        H2Verdict::HoldsExhaustive { subspaces_checked } => format!("h2: holds ({subspaces_checked} subspaces)"),
        H2Verdict::NoViolationSampled { samples, height, seed } => {
            format!("h2: no violation sampled (samples {samples}, height {height}, seed {seed})")
        }
        H2Verdict::Fails { .. } => "h2: fails".into(),
    }
}

/// Both hypotheses, with modes chosen by the base ring. A sampled H1 is
/// upgraded when recognition certifies a division algebra.
fn hypotheses(alg: &Algebra, cfg: &RecognitionConfig) -> Result<(H1Verdict, H2Verdict), Error> {
    let h2 = check_h2(alg, h2_mode(alg, cfg))?;
    let mut h1 = check_h1(alg, h1_partial_mode(alg, cfg))?;
    if matches!(h1, H1Verdict::NoViolationSampled { .. }) && !h2.fails() {
        let outcome = recognize_with(alg, cfg);
        if outcome.division_certified() {
            h1 = H1Verdict::HoldsImpliedByDivision;
        }
    }
    Ok((h1, h2))
}

fn run_check(alg: &Algebra, cfg: &RecognitionConfig) -> Outcome {
    let (h1, h2) = match hypotheses(alg, cfg) {
        Ok(v) => v,
        Err(e) => return Outcome::input_error(e),
    };
    let witnesses: Vec<Witness> = h2.witness().into_iter().chain(h1.witness()).cloned().collect();
    let (verdict, message) = if !witnesses.is_empty() {
        (Verdict::Refused, "a hypothesis fails")
    } else if h1.holds_conclusively() && h2.holds_conclusively() {
        (Verdict::Affirmative, "both hypotheses hold")
    } else {
        (Verdict::Unknown, "no violation found, but not every check is conclusive")
    };
    let mut o = Outcome::new(verdict, message);
    o.text = vec![h2_text(&h2), h1_text(&h1)];
    o.result = json!({ "h1": to_value(&h1), "h2": to_value(&h2) });
    o.witnesses = witnesses;
    o
}

fn structure_lines(alg: &Algebra, qs: &QuaternionStructure) -> Vec<String> {
    vec![
        format!("i = {}", alg.format(&qs.i)),
        format!("j = {}", alg.format(&qs.j)),
        format!("k = {}", alg.format(&qs.k)),
        format!("i² = {}, j² = {}", alg.format(&qs.a), alg.format(&qs.b)),
    ]
}

fn run_recognize(alg: &Algebra, cfg: &RecognitionConfig) -> Outcome {
    let outcome = recognize_with(alg, cfg);
    let lifted = alg.lift_to_field();
    let (verdict, message) = match &outcome.status {
        Status::Quaternion => (Verdict::Affirmative, "quaternion division algebra over the center".to_string()),
        Status::Refused { stage, reason, .. } => (Verdict::Refused, format!("refused at {stage:?}: {reason}")),
        Status::Inconclusive { stage, reason } => (Verdict::Unknown, format!("inconclusive at {stage:?}: {reason}")),
    };
    let mut o = Outcome::new(verdict, message);
    for s in &outcome.stages {
        o.text.push(format!("stage {:?}: {:?} ({})", s.stage, s.result, s.detail));
    }
    if let Some(qs) = outcome.working(&lifted) {
        o.text.extend(structure_lines(&lifted, &qs));
    }
    if let Some(d) = &outcome.division {
        let ev: Vec<String> = d.evidence.iter().map(|e| format!("({}, {})", e.place, e.symbol)).collect();
        o.text.push(format!("division: {:?} [{}] {}", d.status, ev.join(", "), d.note));
    }
    o.witnesses = outcome.witnesses().to_vec();
    o.result = to_value(&outcome);
    o
}

fn refusal(e: RecognitionError, context: &str) -> Outcome {
    match e {
        RecognitionError::Input(err) => Outcome::input_error(err),
        RecognitionError::CenterNotField { witness: None } => Outcome::new(Verdict::Unknown, format!("{context}: {e}")),
        e => {
            let mut o = Outcome::new(Verdict::Refused, format!("{context}: {e}"));
            o.witnesses.extend(e.witness().cloned());
            o
        }
    }
}

fn run_decompose(alg: &Algebra, element: &str, cfg: &RecognitionConfig) -> Outcome {
    let x = match alg.parse_element(element) {
        Ok(x) => x,
        Err(e) => return Outcome::input_error(format!("--element: {e}")),
    };
    let lifted = alg.lift_to_field();
    if alg.characteristic() == 2 {
        // The hypothesis checks still run; only the decomposition refuses.
        let mut o = Outcome::new(Verdict::Refused, "characteristic 2: the decomposition divides by 2");
        o.witnesses.push(Witness::CharacteristicTwo { unit: alg.unit().clone() });
        match hypotheses(alg, cfg) {
            Ok((h1, h2)) => {
                o.text = vec![h2_text(&h2), h1_text(&h1)];
                o.witnesses.extend(h2.witness().into_iter().chain(h1.witness()).cloned());
                o.result = json!({ "h1": to_value(&h1), "h2": to_value(&h2) });
            }
            Err(e) => o.text.push(format!("hypotheses: {e}")),
        }
        return o;
    }
    let center = center_basis(&lifted);
    match center.is_field {
        FieldStatus::Yes => {}
        FieldStatus::No => {
            let mut o = Outcome::new(Verdict::Refused, format!("center is not a field: {}", center.note));
            o.witnesses.extend(center.field_witness.clone());
            return o;
        }
        FieldStatus::Unknown => return Outcome::new(Verdict::Unknown, format!("center: {}", center.note)),
    }
    let (qs, source) = match QuaternionStructure::from_presentation_basis(&lifted, &center) {
        Some(qs) => (qs, StructureSource::PresentationBasis),
        None => match build_quaternion_structure(&lifted, &center) {
            Ok(qs) => (qs, StructureSource::CommutatorScan),
            Err(e) => return refusal(e, "structure"),
        },
    };
    let d = match decompose(&lifted, &qs, &x) {
        Ok(d) => d,
        Err(e) => return refusal(e, "decompose"),
    };
    assert_eq!(d.reconstruct(&lifted, &qs), x, "reconstruction");
    let coords = d.center_coordinates(&lifted, &center);
    let coord_strings: Vec<Vec<String>> = coords.iter().map(|c| c.iter().map(ToString::to_string).collect()).collect();
    let mut o = if d.m.is_zero() {
        Outcome::new(Verdict::Affirmative, "decomposed")
    } else {
        let mut o = Outcome::new(Verdict::Refused, "non-zero residual: the element lies outside C + Ci + Cj + Ck");
        o.witnesses.extend(d.residual_witness.clone());
        o
    };
    o.text.extend(structure_lines(&lifted, &qs));
    let flat: Vec<String> = if center.dim() == 1 {
        coord_strings.iter().map(|c| c[0].clone()).collect()
    } else {
        coord_strings.iter().map(|c| format!("[{}]", c.join(","))).collect()
    };
    o.text.push(format!("coordinates: ({})", flat.join(", ")));
    o.text.push(format!("residual: {}", lifted.format(&d.m)));
    let mut result = json!({
        "structure_source": to_value(&source),
        "structure": { "i": to_value(&qs.i), "j": to_value(&qs.j), "k": to_value(&qs.k), "a": to_value(&qs.a), "b": to_value(&qs.b) },
        "center": to_value(&center.elements),
        "coordinates": to_value(&coord_strings),
        "decomposition": to_value(&d),
    });
    if alg.base() == BaseRing::Integer {
        let loc = Localization::new(alg);
        let fractions: Vec<String> = d
            .coefficients()
            .iter()
            .map(|c| loc.from_field_element(c).map(|f| f.to_string()).unwrap_or_default())
            .collect();
        o.text.push(format!("fractions: {}", fractions.join("; ")));
        result["fractions"] = to_value(&fractions);
    }
    o.result = result;
    o
}

fn run_center(alg: &Algebra) -> Outcome {
    let lifted = alg.lift_to_field();
    let c = center_basis(&lifted);
    let verdict = match c.is_field {
        FieldStatus::Yes => Verdict::Affirmative,
        FieldStatus::No => Verdict::Refused,
        FieldStatus::Unknown => Verdict::Unknown,
    };
    let mut o = Outcome::new(verdict, format!("center of dimension {}: {}", c.dim(), c.note));
    for z in &c.elements {
        o.text.push(format!("  {}", lifted.format(z)));
    }
    o.witnesses.extend(c.field_witness.clone());
    o.result = to_value(&c);
    o
}

fn run_quadratic(alg: &Algebra, element: &str) -> Outcome {
    let x = match alg.parse_element(element) {
        Ok(x) => x,
        Err(e) => return Outcome::input_error(format!("--element: {e}")),
    };
    let lifted = alg.lift_to_field();
    match quadratic_certificate(&lifted, &x) {
        Ok(cert) => {
            let mut o = Outcome::new(Verdict::Affirmative, "a·x² + b·x + c = 0 with a, c central and non-zero");
            o.text = vec![
                format!("x = {}", lifted.format(&cert.x)),
                format!("v = (x, {}) = {}", lifted.format(&cert.y), lifted.format(&cert.v)),
                format!("a = {}", lifted.format(&cert.a)),
                format!("b = {}", lifted.format(&cert.b)),
                format!("c = {}", lifted.format(&cert.c)),
            ];
            o.result = to_value(&cert);
            o
        }
        Err(e) => refusal(e, "quadratic"),
    }
}

fn run_enumerate(dim: usize, field: u64, force: bool) -> Outcome {
    if let Err(e) = enumerate::check_guard(dim, field, force) {
        return Outcome::input_error(e);
    }
    let summary = match enumerate::enumerate(dim, field) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(e),
    };
    let mut o = if summary.consistent() {
        Outcome::new(Verdict::Affirmative, "no noncommutative table passes both hypotheses")
    } else {
        Outcome::new(Verdict::Unknown, "a noncommutative table passes both hypotheses; this contradicts finiteness and indicates a bug")
    };
    o.text = vec![
        format!("tables: {}", summary.tables),
        format!("associative: {}", summary.associative),
        format!("commutative: {}", summary.commutative),
        format!("fails h1: {}", summary.fails_h1),
        format!("fails h2: {}", summary.fails_h2),
        format!("passes both: {}", summary.passes_both),
    ];
    let samples: Vec<Value> = summary
        .samples
        .iter()
        .map(|s| {
            json!({
                "class": to_value(&s.class),
                "index": s.index,
                "table": to_value(&AlgebraFile::from_algebra(&s.algebra)),
                "witness": to_value(&s.witness),
            })
        })
        .collect();
    let mut result = to_value(&summary);
    result["samples"] = Value::Array(samples);
    o.result = result;
    o
}

fn run_examples(name: &str, out: &Path) -> Outcome {
    let alg = match Builtin::parse(name).and_then(|b| b.build()) {
        Ok(a) => a,
        Err(e) => return Outcome::input_error(e),
    };
    let file = AlgebraFile::from_algebra(&alg);
    if let Err(e) = std::fs::write(out, file.to_json() + "\n") {
        return Outcome::input_error(format!("{}: {e}", out.display()));
    }
    let mut o = Outcome::new(Verdict::Affirmative, format!("wrote {} ({} over {})", out.display(), alg.dim(), alg.base()));
    o.result = json!({ "name": name, "dim": alg.dim(), "base": alg.base().label(), "out": out.display().to_string() });
    o
}

