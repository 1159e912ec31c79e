//! Named, seeded experiments with structured pass/fail reports.

mod experiments;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::linalg::PrimeField;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AppendixTable {
    Lg510,
    G26,
    Lg510Sq,
    G26Sq,
}

impl AppendixTable {
    pub fn name(self) -> &'static str {
        match self {
            AppendixTable::Lg510 => "lg510",
            AppendixTable::G26 => "g26",
            AppendixTable::Lg510Sq => "lg510-sq",
            AppendixTable::G26Sq => "g26-sq",
        }
    }

    /// The stored table, in [`crate::resolution::BettiTable::render`] layout.
    pub fn golden(self) -> &'static str {
        match self {
            AppendixTable::Lg510 => include_str!("../../golden/lg510.txt"),
            AppendixTable::G26 => include_str!("../../golden/g26.txt"),
            AppendixTable::Lg510Sq => include_str!("../../golden/lg510-sq.txt"),
            AppendixTable::G26Sq => include_str!("../../golden/g26-sq.txt"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CiCase {
    P2,
    P3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedIdeal {
    Lg510,
    G26,
    Lg510Sq,
    G26Sq,
    Gomega36,
    PfaffianSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Minimal resolution of one of the four stored Betti tables.
    Betti {
        #[arg(value_enum)]
        table: AppendixTable,
    },
    /// Rank test and quadric deficiency of apolar configurations in P^n.
    SaVerify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        seeds: usize,
    },
    /// Reconstruction of 12 points in P^5 as a section of LG(5,10).
    MukaiP5 {
        #[arg(long, default_value_t = 20)]
        seeds: usize,
    },
    /// The cubic singular at 14 self-associated points of P^6.
    CubicP6 {
        #[arg(long, default_value_t = 20)]
        seeds: usize,
    },
    /// 4x4 pfaffians of a random skew matrix of linear forms on P^6.
    PfaffianSection {
        #[arg(long, default_value_t = 20)]
        seeds: usize,
    },
    /// Dimension of the solutions of B ∧ A ∧ A = 0.
    TangentZ {
        #[arg(long, default_value_t = 20)]
        seeds: usize,
    },
    /// Sections of the kernel of a 2x7 matrix of linear forms on P^5.
    BuchsbaumRim {
        #[arg(long, default_value_t = 20)]
        seeds: usize,
    },
    Chern,
    ModuliCounts,
    /// Points on rational normal curves, n = 2..7.
    RncDemo,
    /// Complete intersections with all points rational.
    CiDemo {
        #[arg(value_enum)]
        case: CiCase,
    },
    /// Generators of a constructed ideal in the polynomial text format.
    DumpIdeal {
        #[arg(value_enum)]
        ideal: NamedIdeal,
    },
}

impl Experiment {
    pub fn name(&self) -> String {
        match self {
            Experiment::Betti { table } => format!("betti {}", table.name()),
            Experiment::SaVerify { n, .. } => format!("sa-verify n={n}"),
            Experiment::MukaiP5 { .. } => "mukai-p5".into(),
            Experiment::CubicP6 { .. } => "cubic-p6".into(),
            Experiment::PfaffianSection { .. } => "pfaffian-section".into(),
            Experiment::TangentZ { .. } => "tangent-z".into(),
            Experiment::BuchsbaumRim { .. } => "buchsbaum-rim".into(),
            Experiment::Chern => "chern".into(),
            Experiment::ModuliCounts => "moduli-counts".into(),
            Experiment::RncDemo => "rnc-demo".into(),
            Experiment::CiDemo { case } => format!("ci-demo {}", if *case == CiCase::P2 { "p2" } else { "p3" }),
            Experiment::DumpIdeal { ideal } => format!("dump-ideal {}", ideal.to_possible_value().unwrap().get_name()),
        }
    }

    pub fn default_prime(&self) -> u64 {
        match self {
            Experiment::CiDemo { .. } => crate::linalg::SMALL_PRIME,
            _ => crate::linalg::DEFAULT_PRIME,
        }
    }

    pub fn default_timeout_secs(&self) -> u64 {
        match self {
            Experiment::Betti { table: AppendixTable::G26Sq } => 2 * 3600,
            _ => 600,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub prime: Option<u64>,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub timeout_secs: Option<u64>,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            prime: None,
            seed: 0,
            format: Format::Text,
            out: None,
            threads: None,
            timeout_secs: None,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime.unwrap_or_else(|| self.experiment.default_prime())
    }

    pub fn timeout_secs(&self) -> u64 {
        self.timeout_secs.unwrap_or_else(|| self.experiment.default_timeout_secs())
    }
}

/// One assertion: what was compared, where, and the outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub module: String,
    pub operation: String,
    pub what: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub experiment: String,
    pub prime: u64,
    pub seed: u64,
    pub passed: bool,
    /// First failed check.
    pub failure: Option<Check>,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
    #[serde(skip)]
    pub display: String,
    pub timing_secs: f64,
}

impl Report {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// JSON without the timing field, for reproducibility comparisons.
    pub fn to_json_without_timing(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().unwrap().remove("timing_secs");
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# {} prime={} seed={}", self.experiment, self.prime, self.seed).unwrap();
        if !self.display.is_empty() {
            s.push_str(&self.display);
            if !self.display.ends_with('\n') {
                s.push('\n');
            }
        }
        for c in &self.checks {
            let ctx = c.context.as_deref().map(|x| format!(" [{x}]")).unwrap_or_default();
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(s, "{tag} {}::{} {}{ctx}: {}", c.module, c.operation, c.what, short(&c.actual)).unwrap();
            if !c.passed {
                writeln!(s, "     expected {}", short(&c.expected)).unwrap();
            }
        }
        let total = self.checks.len();
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(s, "{} ({} checks, {} failed, {:.2}s)", if self.passed { "ok" } else { "FAILED" }, total, failed, self.timing_secs).unwrap();
        s
    }
}

fn short(v: &Value) -> String {
    let s = match v {
        Value::String(x) if x.contains('\n') => format!("\n{x}"),
        other => other.to_string(),
    };
    if s.len() > 400 {
        format!("{}...", &s[..400])
    } else {
        s
    }
}

/// Checks and data collected while an experiment runs.
#[derive(Clone, Debug, Default)]
pub(crate) struct Run {
    checks: Vec<Check>,
    data: Map<String, Value>,
    display: String,
}

impl Run {
    pub(crate) fn verdict(
        &mut self,
        module: &str,
        operation: &str,
        what: &str,
        expected: impl Serialize,
        actual: impl Serialize,
        passed: bool,
    ) -> bool {
        self.checks.push(Check {
            module: module.into(),
            operation: operation.into(),
            what: what.into(),
            context: None,
            expected: serde_json::to_value(expected).expect("serializable"),
            actual: serde_json::to_value(actual).expect("serializable"),
            passed,
        });
        passed
    }

    /// Passes iff `expected` and `actual` serialize to the same JSON.
    pub(crate) fn check(&mut self, module: &str, operation: &str, what: &str, expected: impl Serialize, actual: impl Serialize) -> bool {
        let e = serde_json::to_value(expected).expect("serializable");
        let a = serde_json::to_value(actual).expect("serializable");
        let ok = e == a;
        self.verdict(module, operation, what, e, a, ok)
    }

    pub(crate) fn error(&mut self, module: &str, operation: &str, err: impl std::fmt::Display) {
        self.verdict(module, operation, "completes without error", "ok", err.to_string(), false);
    }

    pub(crate) fn data(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub(crate) fn display(&mut self, text: &str) {
        self.display.push_str(text);
    }

    /// Appends the checks of a sub-run under a context label; its data goes
    /// to `data[list]` as one entry.
    pub(crate) fn absorb(&mut self, context: &str, list: &str, mut other: Run) {
        for mut c in other.checks.drain(..) {
            c.context = Some(match c.context {
                Some(inner) => format!("{context}, {inner}"),
                None => context.to_string(),
            });
            self.checks.push(c);
        }
        let entry = self.data.entry(list.to_string()).or_insert_with(|| Value::Array(Vec::new()));
        let mut obj = other.data;
        obj.insert("context".into(), Value::String(context.into()));
        entry.as_array_mut().unwrap().push(Value::Object(obj));
    }

    pub(crate) fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Runs an experiment to completion in the current thread.
pub fn run(config: &ExperimentConfig) -> Report {
    let start = Instant::now();
    let prime = config.prime();
    let mut run = Run::default();
    match PrimeField::new(prime) {
        Ok(field) => experiments::dispatch(&config.experiment, field, config.seed, &mut run),
        Err(e) => run.error("linalg", "PrimeField::new", e),
    }
    let passed = run.passed();
    if run.checks.is_empty() {
        run.error("cli", "run", "experiment made no checks");
    }
    let failure = run.checks.iter().find(|c| !c.passed).cloned();
    Report {
        schema: SCHEMA,
        experiment: config.experiment.name(),
        prime,
        seed: config.seed,
        passed: passed && failure.is_none(),
        failure,
        checks: run.checks,
        data: run.data,
        display: run.display,
        timing_secs: start.elapsed().as_secs_f64(),
    }
}

/// Report for a run that did not finish in time.
pub fn timeout_report(config: &ExperimentConfig, secs: u64) -> Report {
    let check = Check {
        module: "cli".into(),
        operation: "run".into(),
        what: "finishes within the timeout".into(),
        context: None,
        expected: Value::from(format!("<= {secs}s")),
        actual: Value::from("timed out"),
        passed: false,
    };
    Report {
        schema: SCHEMA,
        experiment: config.experiment.name(),
        prime: config.prime(),
        seed: config.seed,
        passed: false,
        failure: Some(check.clone()),
        checks: vec![check],
        data: Map::new(),
        display: String::new(),
        timing_secs: secs as f64,
    }
}
