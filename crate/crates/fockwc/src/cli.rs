//! `fockwc <command> …`: one JSON document on stdout per invocation,
//! diagnostics on stderr.
//!
//! Exit codes: 0 for a positive verdict or a completed computation, 1 for a
//! negative, indeterminate or not-applicable verdict, 2 for bad input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fockwc_core::classify::{
    check_bounded_necessary, check_j_selfadjoint, check_normal_bounded, check_real_symmetric,
    check_skew_real_symmetric,
};
use fockwc_core::conjugation::{find_conjugation_normal, find_conjugation_real_symmetric};
use fockwc_core::oracle::{adjoint_defect, j_symmetry_defect};
use fockwc_core::semigroup::DEFAULT_EXPM_TOL;
use fockwc_core::{CheckReport, ConjugationParams, Error, SemigroupParams, WcSymbol, DEFAULT_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::json::{self, Complex, ConjugationJson, PolyJson, SemigroupJson, SymbolJson};
use crate::CliError;

/// Times at which `semigroup-check` tests `𝒥`-selfadjointness besides the
/// sampled ones.
const J_TIMES: [f64; 5] = [0.1, 0.5, 1.0, 1.5, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "true")]
    True,
    #[serde(rename = "false")]
    False,
    #[serde(rename = "indeterminate")]
    Indeterminate,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Verdict {
    /// `true` within `tol`, indeterminate within `10·tol`, else `false`.
    pub fn from_residual(residual: f64, tol: f64) -> Verdict {
        if residual <= tol {
            Verdict::True
        } else if residual <= 10.0 * tol {
            Verdict::Indeterminate
        } else {
            Verdict::False
        }
    }

    fn from_report(report: &CheckReport, tol: f64) -> Verdict {
        let v = Verdict::from_residual(worst(report.residuals.iter().map(|r| r.value)), tol);
        debug_assert_eq!(v == Verdict::True, report.holds);
        v
    }

    fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            (NotApplicable, x) | (x, NotApplicable) => x,
            (True, True) => True,
        }
    }
}

/// Largest value, with NaN dominating.
fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub verdict: Verdict,
    pub residuals: BTreeMap<String, f64>,
    pub payload: Option<Value>,
}

impl CommandResult {
    fn computed(payload: Value) -> Self {
        CommandResult {
            verdict: Verdict::NotApplicable,
            residuals: BTreeMap::new(),
            payload: Some(payload),
        }
    }

    fn record(&mut self, prefix: &str, report: &CheckReport) {
        for r in &report.residuals {
            self.residuals.insert(join(prefix, r.name), r.value);
        }
    }
}

fn join(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

#[derive(Parser, Debug)]
#[command(name = "fockwc", version, about = "Weighted composition operators on the Fock space")]
struct Cli {
    /// Decision tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the conditions on (A, b, c).
    ValidateConjugation {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Test a symbol against every symmetry class.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "with-conjugation")]
        conjugation: Option<PathBuf>,
    },
    /// Symbol of the adjoint operator.
    Adjoint {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Symbol of 𝒥C𝒥.
    Conjugate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "conj")]
        conjugation: PathBuf,
    },
    /// Build a conjugation making the operator 𝒥-selfadjoint.
    FindConjugation {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Symbol of C(t).
    SemigroupAt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "t")]
        time: f64,
    },
    /// Semigroup laws at random times, and 𝒥-selfadjointness if a conjugation is given.
    SemigroupCheck {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "conj")]
        conjugation: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply the generator to a polynomial.
    GeneratorApply {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        poly: PathBuf,
    },
    /// Adjoint and 𝒥-symmetry defects on a kernel span.
    OracleDefect {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "conj")]
        conjugation: Option<PathBuf>,
        #[arg(long)]
        points: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Real-symmetric construction, then the normal one.
    Auto,
    Real,
    Normal,
}

/// Runs one command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    if !cli.tol.is_finite() || cli.tol <= 0.0 {
        let _ = writeln!(err, "error: --tol must be positive and finite");
        return 2;
    }
    match dispatch(&cli.command, cli.tol) {
        Ok((result, code)) => match serde_json::to_string_pretty(&result) {
            Ok(text) => {
                if writeln!(out, "{text}").is_err() {
                    return 2;
                }
                code
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::True => 0,
        _ => 1,
    }
}

fn symbol(path: &Path) -> Result<WcSymbol, CliError> {
    json::read::<SymbolJson>(path)?.decode()
}

fn conjugation(path: &Path) -> Result<ConjugationParams, CliError> {
    json::read::<ConjugationJson>(path)?.decode()
}

fn semigroup(path: &Path) -> Result<SemigroupParams, CliError> {
    json::read::<SemigroupJson>(path)?.decode()
}

fn to_value<T: Serialize>(x: &T) -> Result<Value, CliError> {
    serde_json::to_value(x).map_err(|e| CliError::Format(e.to_string()))
}

fn dispatch(command: &Command, tol: f64) -> Result<(CommandResult, i32), CliError> {
    match command {
        Command::ValidateConjugation { input } => {
            let report = conjugation(input)?.validate(tol);
            decided("", &report, tol)
        }
        Command::Classify { input, conjugation: j } => {
            let s = symbol(input)?;
            let mut reports = vec![
                ("real_symmetric", check_real_symmetric(&s, tol)),
                ("skew_real_symmetric", check_skew_real_symmetric(&s, tol)),
            ];
            if let Some(path) = j {
                reports.push(("j_selfadjoint", check_j_selfadjoint(&s, &conjugation(path)?, tol)?));
            }
            reports.push(("normal_bounded", check_normal_bounded(&s, tol)));
            reports.push(("bounded_necessary", check_bounded_necessary(&s, tol)));
            let mut result = CommandResult::computed(Value::Null);
            let mut verdicts = serde_json::Map::new();
            for (name, report) in &reports {
                result.record(name, report);
                verdicts.insert(name.to_string(), to_value(&Verdict::from_report(report, tol))?);
            }
            result.payload = Some(Value::Object(verdicts));
            Ok((result, 0))
        }
        Command::Adjoint { input } => {
            let s = symbol(input)?;
            Ok((CommandResult::computed(to_value(&SymbolJson::from(&s.adjoint()))?), 0))
        }
        Command::Conjugate { input, conjugation: j } => {
            let s = symbol(input)?.conjugate_by(&conjugation(j)?)?;
            Ok((CommandResult::computed(to_value(&SymbolJson::from(&s))?), 0))
        }
        Command::FindConjugation { input, mode } => find(&symbol(input)?, *mode, tol),
        Command::SemigroupAt { input, time } => {
            let s = semigroup(input)?.symbol_at(*time, DEFAULT_EXPM_TOL)?;
            Ok((CommandResult::computed(to_value(&SymbolJson::from(&s))?), 0))
        }
        Command::SemigroupCheck {
            input,
            conjugation: j,
            samples,
            seed,
        } => {
            let p = semigroup(input)?;
            let j = j.as_deref().map(conjugation).transpose()?;
            semigroup_check(&p, j.as_ref(), *samples, *seed, tol)
        }
        Command::GeneratorApply { input, poly } => {
            let p = semigroup(input)?;
            let f = json::read::<PolyJson>(poly)?.decode()?;
            let g = p.generator_apply(&f)?;
            Ok((CommandResult::computed(to_value(&PolyJson::from(&g))?), 0))
        }
        Command::OracleDefect {
            input,
            conjugation: j,
            points,
        } => {
            let s = symbol(input)?;
            let raw: Vec<Vec<Complex>> = json::read(points)?;
            let pts = json::decode_points(&raw, s.dim())?;
            let mut residuals = BTreeMap::new();
            residuals.insert("adjoint_defect".to_string(), adjoint_defect(&s, &pts)?);
            if let Some(path) = j {
                residuals.insert("j_symmetry_defect".to_string(), j_symmetry_defect(&s, &conjugation(path)?, &pts)?);
            }
            let verdict = Verdict::from_residual(worst(residuals.values().copied()), tol);
            Ok((
                CommandResult {
                    verdict,
                    residuals,
                    payload: None,
                },
                exit_code(verdict),
            ))
        }
    }
}

fn decided(prefix: &str, report: &CheckReport, tol: f64) -> Result<(CommandResult, i32), CliError> {
    let verdict = Verdict::from_report(report, tol);
    let mut result = CommandResult {
        verdict,
        residuals: BTreeMap::new(),
        payload: None,
    };
    result.record(prefix, report);
    Ok((result, exit_code(verdict)))
}

fn find(s: &WcSymbol, mode: Mode, tol: f64) -> Result<(CommandResult, i32), CliError> {
    let attempt = match mode {
        Mode::Real => find_conjugation_real_symmetric(s, tol),
        Mode::Normal => find_conjugation_normal(s, tol),
        Mode::Auto => find_conjugation_real_symmetric(s, tol).or_else(|e| match e {
            Error::NotApplicable(_) => find_conjugation_normal(s, tol),
            other => Err(other),
        }),
    };
    let j = match attempt {
        Ok(j) => j,
        Err(Error::NotApplicable(reason)) => {
            let result = CommandResult {
                verdict: Verdict::NotApplicable,
                residuals: BTreeMap::new(),
                payload: Some(Value::String(reason)),
            };
            return Ok((result, 1));
        }
        Err(e) => return Err(e.into()),
    };
    let valid = j.validate(tol);
    let selfadjoint = check_j_selfadjoint(s, &j, tol)?;
    let verdict = Verdict::from_report(&valid, tol).and(Verdict::from_report(&selfadjoint, tol));
    let mut result = CommandResult {
        verdict,
        residuals: BTreeMap::new(),
        payload: Some(to_value(&ConjugationJson::from(&j))?),
    };
    result.record("validate", &valid);
    result.record("j_selfadjoint", &selfadjoint);
    Ok((result, exit_code(verdict)))
}

fn max_into(residuals: &mut BTreeMap<String, f64>, prefix: &str, report: &CheckReport) {
    for r in &report.residuals {
        let slot = residuals.entry(join(prefix, r.name)).or_insert(0.0);
        *slot = worst([*slot, r.value]);
    }
}

fn semigroup_check(
    p: &SemigroupParams,
    j: Option<&ConjugationParams>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<(CommandResult, i32), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<[f64; 2]> = (0..samples)
        .map(|_| {
            let t = rng.random_range(0.0..1.0);
            let s = rng.random_range(0.0..1.0);
            [t, s]
        })
        .collect();
    let mut residuals = BTreeMap::new();
    let mut verdict = Verdict::True;
    for &[t, s] in &pairs {
        let report = p.check_laws(t, s, tol)?;
        max_into(&mut residuals, "laws", &report);
    }
    let laws = worst(residuals.values().copied());
    verdict = verdict.and(Verdict::from_residual(laws, tol));

    let mut payload = serde_json::Map::new();
    payload.insert("seed".into(), seed.into());
    payload.insert("pairs".into(), to_value(&pairs)?);
    if let Some(j) = j {
        let conditions = p.validate_j_conditions(j, tol)?;
        max_into(&mut residuals, "j_conditions", &conditions);
        let mut times = J_TIMES.to_vec();
        times.extend(pairs.iter().map(|[t, s]| t + s));
        let mut selfadjoint = BTreeMap::new();
        for &t in &times {
            let report = check_j_selfadjoint(&p.symbol_at(t, DEFAULT_EXPM_TOL)?, j, tol)?;
            max_into(&mut selfadjoint, "j_selfadjoint", &report);
        }
        verdict = verdict.and(Verdict::from_residual(worst(selfadjoint.values().copied()), tol));
        residuals.extend(selfadjoint);
        payload.insert("times".into(), to_value(&times)?);
    }
    let result = CommandResult {
        verdict,
        residuals,
        payload: Some(Value::Object(payload)),
    };
    Ok((result, exit_code(verdict)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tri_state_boundaries() {
        assert_eq!(Verdict::from_residual(1e-9, 1e-9), Verdict::True);
        assert_eq!(Verdict::from_residual(5e-9, 1e-9), Verdict::Indeterminate);
        assert_eq!(Verdict::from_residual(1e-8, 1e-9), Verdict::Indeterminate);
        assert_eq!(Verdict::from_residual(2e-8, 1e-9), Verdict::False);
        assert_eq!(Verdict::from_residual(f64::NAN, 1e-9), Verdict::False);
    }

    #[test]
    fn verdicts_combine_pessimistically() {
        assert_eq!(Verdict::True.and(Verdict::Indeterminate), Verdict::Indeterminate);
        assert_eq!(Verdict::Indeterminate.and(Verdict::False), Verdict::False);
        assert_eq!(Verdict::NotApplicable.and(Verdict::True), Verdict::True);
    }

    #[test]
    fn nan_dominates() {
        assert!(worst([1.0, f64::NAN, 2.0]).is_nan());
        assert_eq!(worst([1.0, 3.0]), 3.0);
        assert_eq!(worst([]), 0.0);
    }

    #[test]
    fn usage_errors_exit_with_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["fockwc", "frobnicate"], &mut out, &mut err), 2);
        assert!(out.is_empty());
        assert_eq!(run(["fockwc", "--help"], &mut out, &mut err), 0);
        assert!(!out.is_empty());
    }
}
