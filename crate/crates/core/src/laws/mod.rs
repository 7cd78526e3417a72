//! Every catalogued law as an executable property, with exhaustive and seeded
//! random runners and a serializable report.

mod catalogue;
mod chain;
mod gen;

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use catalogue::{catalogue, law, mutant_law, Mutant, LAW_IDS};
pub use chain::{congruence_chain, ChainReport};
pub use gen::{GenConfig, Instance, Shape, Sort, Ty, Var};

use crate::finrel::RelError;
use crate::inductive::FoldError;
use crate::metaphor::MetaphorError;
use gen::{frames, random_frame, signature, Frame, Plan, Universe};

/// Verdict of a law on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Holds,
    /// The inclusion holds but equality does not.
    Strict(String),
    Fails(String),
    /// A side condition is unmet.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct EvalError(String);

impl From<RelError> for EvalError {
    fn from(e: RelError) -> Self {
        EvalError(e.to_string())
    }
}

impl From<FoldError> for EvalError {
    fn from(e: FoldError) -> Self {
        EvalError(e.to_string())
    }
}

impl From<MetaphorError> for EvalError {
    fn from(e: MetaphorError) -> Self {
        EvalError(e.to_string())
    }
}

pub type Body = fn(&Instance) -> Result<Check, EvalError>;

#[derive(Clone)]
pub struct Law {
    pub id: &'static str,
    /// Verbatim statement of the law.
    pub anchor: &'static str,
    pub vars: Vec<Var>,
    /// A failing conclusion under a holding premise means a kernel bug.
    pub implication: bool,
    /// The law is an inclusion that is expected to be strict somewhere.
    pub strict: bool,
    /// Runs on an inductive frame even if no variable mentions one.
    pub functor: bool,
    pub note: Option<&'static str>,
    pub body: Body,
}

impl fmt::Debug for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Law").field("id", &self.id).field("anchor", &self.anchor).finish_non_exhaustive()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Random,
    ExhaustiveRandom,
    /// Neither phase produced an instance.
    Empty,
    /// Not run because an earlier law raised an alarm.
    Aborted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LawStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ALARM")]
    Alarm,
    /// No instance met the side conditions.
    #[serde(rename = "SKIP")]
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub id: String,
    pub anchor: String,
    pub status: LawStatus,
    pub mode: Mode,
    pub tried: u64,
    pub skipped: u64,
    pub failed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Instances where an inclusion law held strictly.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_witness: Option<String>,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    /// Passed, but some law never met its side conditions.
    #[serde(rename = "PASS-vacuous")]
    PassVacuous,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ALARM")]
    Alarm,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::PassVacuous => "PASS-vacuous",
            Status::Fail => "FAIL",
            Status::Alarm => "ALARM",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub config: GenConfig,
    pub laws: Vec<LawResult>,
    pub status: Status,
}

#[derive(Default)]
struct Tally {
    tried: u64,
    skipped: u64,
    failed: u64,
    strict: u64,
    witness: Option<String>,
    strict_witness: Option<String>,
    alarm: bool,
}

impl Tally {
    fn record(&mut self, law: &Law, inst: &Instance) {
        self.tried += 1;
        let check = (law.body)(inst).unwrap_or_else(|e| Check::Fails(format!("evaluation error: {e}")));
        match check {
            Check::Holds => {}
            Check::Skip => self.skipped += 1,
            Check::Strict(w) => {
                self.strict += 1;
                if self.strict_witness.is_none() {
                    self.strict_witness = Some(format!("{w}\n{}", inst.render()));
                }
            }
            Check::Fails(w) => {
                self.failed += 1;
                self.alarm |= law.implication;
                if self.witness.is_none() {
                    self.witness = Some(format!("{w}\n{}", inst.render()));
                }
            }
        }
    }
}

/// FNV-1a, so each law's random stream depends only on the seed and its id.
fn stream_seed(seed: u64, id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325 ^ seed, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Attempts per random sample before a filtered sort gives up.
const REJECT_LIMIT: usize = 100;

pub fn run_law(law: &Law, cfg: &GenConfig) -> LawResult {
    let start = Instant::now();
    let (n_bases, inductive) = signature(&law.vars, &[]);
    let inductive = inductive || law.functor;
    let mut uni = Universe::default();
    let mut tally = Tally::default();

    // cheapest frames first, so an oversized frame only costs itself
    let mut plans: Vec<Plan> = frames(n_bases, inductive, cfg.max_size, cfg.alphabet)
        .into_iter()
        .filter_map(|f| Plan::new(&law.vars, f, &mut uni, cfg.depth))
        .collect();
    plans.sort_by_key(Plan::count);
    let mut spent = 0u64;
    let mut oversized = 0;
    let mut exhaustive = false;
    'plans: for plan in &plans {
        if spent.saturating_add(plan.count()) > cfg.budget {
            oversized += 1;
            continue;
        }
        spent += plan.count();
        exhaustive = true;
        let mut digits = plan.first_digits();
        loop {
            if let Some(inst) = plan.instance(&law.vars, &digits, cfg.power_bound) {
                tally.record(law, &inst);
                if tally.alarm {
                    break 'plans;
                }
            }
            if !plan.advance(&mut digits) {
                break;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, law.id));
    let mut cache: HashMap<Frame, Option<Plan>> = HashMap::new();
    let mut sampled = 0;
    for _ in 0..cfg.samples {
        if tally.alarm {
            break;
        }
        for _ in 0..REJECT_LIMIT {
            let frame = random_frame(&mut rng, n_bases, inductive, cfg.random_max_size, cfg.alphabet);
            let plan = cache.entry(frame.clone()).or_insert_with(|| Plan::new(&law.vars, frame, &mut uni, cfg.depth));
            let Some(plan) = plan else { continue };
            let digits = plan.random_digits(&mut rng);
            if let Some(inst) = plan.instance(&law.vars, &digits, cfg.power_bound) {
                tally.record(law, &inst);
                sampled += 1;
                break;
            }
        }
    }

    let mode = match (exhaustive, sampled > 0) {
        (true, true) => Mode::ExhaustiveRandom,
        (true, false) => Mode::Exhaustive,
        (false, true) => Mode::Random,
        (false, false) => Mode::Empty,
    };
    let status = if tally.alarm {
        LawStatus::Alarm
    } else if tally.failed > 0 {
        LawStatus::Fail
    } else if tally.tried == tally.skipped {
        LawStatus::Skip
    } else {
        LawStatus::Pass
    };
    let mut note: Vec<String> = law.note.map(String::from).into_iter().collect();
    if oversized > 0 {
        note.push(format!(
            "{oversized} of {} small frames exceed the exhaustive budget and are only sampled",
            plans.len()
        ));
    }
    LawResult {
        id: law.id.to_string(),
        anchor: law.anchor.to_string(),
        status,
        mode,
        tried: tally.tried,
        skipped: tally.skipped,
        failed: tally.failed,
        witness: tally.witness,
        strict: law.strict.then_some(tally.strict),
        strict_witness: tally.strict_witness,
        millis: if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 },
        note: (!note.is_empty()).then(|| note.join("; ")),
    }
}

/// Runs `laws` in parallel; the report order is the order given. Laws after
/// the first alarm are reported as aborted.
pub fn run_laws(laws: &[Law], cfg: &GenConfig) -> Report {
    let mut results: Vec<LawResult> = laws.par_iter().map(|l| run_law(l, cfg)).collect();
    if let Some(first) = results.iter().position(|r| r.status == LawStatus::Alarm) {
        for r in &mut results[first + 1..] {
            *r = LawResult {
                id: r.id.clone(),
                anchor: r.anchor.clone(),
                status: LawStatus::Skip,
                mode: Mode::Aborted,
                tried: 0,
                skipped: 0,
                failed: 0,
                witness: None,
                strict: None,
                strict_witness: None,
                millis: 0,
                note: Some("not run after an alarm".into()),
            };
        }
    }
    let status = if results.iter().any(|r| r.status == LawStatus::Alarm) {
        Status::Alarm
    } else if results.iter().any(|r| r.status == LawStatus::Fail) {
        Status::Fail
    } else if results.iter().any(|r| r.status == LawStatus::Skip) {
        Status::PassVacuous
    } else {
        Status::Pass
    };
    Report { config: cfg.clone(), laws: results, status }
}

pub fn run_all(cfg: &GenConfig) -> Report {
    run_laws(catalogue(), cfg)
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<8} {:<6} {:<18} {:>8} {:>8} {:>6} {:>8}\n",
            "law", "status", "mode", "tried", "skipped", "failed", "millis"
        );
        for r in &self.laws {
            let status = match r.status {
                LawStatus::Pass => "PASS",
                LawStatus::Fail => "FAIL",
                LawStatus::Alarm => "ALARM",
                LawStatus::Skip => "SKIP",
            };
            let mode = serde_json::to_value(r.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            out += &format!(
                "{:<8} {:<6} {:<18} {:>8} {:>8} {:>6} {:>8}",
                r.id, status, mode, r.tried, r.skipped, r.failed, r.millis
            );
            if let Some(s) = r.strict {
                out += &format!("  strict in {s}");
            }
            out.push('\n');
            if let Some(w) = &r.witness {
                out += &indent(&format!("counterexample: {w}"));
            }
            if let Some(w) = &r.strict_witness {
                out += &indent(&format!("equality fails: {w}"));
            }
        }
        out += &format!("status: {}\n", self.status);
        out
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("    {l}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_run_is_vacuous() {
        let cfg = GenConfig { samples: 0, budget: 0, ..GenConfig::default() };
        let report = run_laws(&catalogue()[..3], &cfg);
        assert_eq!(report.status, Status::PassVacuous);
        assert!(report.laws.iter().all(|r| r.mode == Mode::Empty && r.status == LawStatus::Skip));
    }

    #[test]
    fn seeds_are_per_law() {
        assert_ne!(stream_seed(0, "eq-5"), stream_seed(0, "eq-6"));
        assert_ne!(stream_seed(0, "eq-5"), stream_seed(1, "eq-5"));
    }
}
