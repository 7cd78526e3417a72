use serde::Serialize;

use super::{Condition, MetaphorError};
use crate::finrel::{Fun, Predicate, Rel};
use crate::inductive::{cata, hylo, Mu};

/// The pieces of a divide-and-conquer derivation of `q?·(⟨k⟩/⟨k⟩)` through a
/// virtual structure `μG` with abstraction `⟨h⟩ : μF <- μG`.
pub struct ChecklistInput<'a> {
    /// `μF`, the type being sorted (or otherwise rearranged).
    pub mu_f: &'a Mu,
    /// `μG`, the virtual structure.
    pub mu_g: &'a Mu,
    /// `k : K <- F K`, its fold is the preserved attribute.
    pub k: &'a Rel,
    /// `h : μF <- G μF`.
    pub h: &'a Rel,
    /// Postcondition on `μF`.
    pub q: &'a Predicate,
    /// Divide-step guard on `G μF`.
    pub r: &'a Predicate,
    /// Invariant of the virtual structure, on `G μG`.
    pub w: &'a Predicate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChecklistReport {
    pub bound: String,
    /// `q?·h = h·r?·G q?`.
    pub guard_split: Condition,
    /// `G⟨h⟩·w? = r?·G⟨h⟩`.
    pub invariant_transfer: Condition,
    /// `⟨k⟩·h ≤ G⟨k⟩`, on the domain of `h`.
    pub congruence: Condition,
    /// `r ≤ G⟨k⟩`.
    pub guard_respects_attribute: Condition,
    /// The bound leaves nothing to decompose.
    pub vacuous: bool,
}

impl ChecklistReport {
    pub fn conditions(&self) -> [(&'static str, &Condition); 4] {
        [
            ("eq-78", &self.guard_split),
            ("eq-79", &self.invariant_transfer),
            ("eq-81", &self.congruence),
            ("eq-82", &self.guard_respects_attribute),
        ]
    }

    pub fn passed(&self) -> bool {
        self.conditions().iter().all(|(_, c)| c.holds)
    }
}

fn fold_fun(mu: &Mu, alg: &Rel, what: &str) -> Result<Fun, MetaphorError> {
    Fun::from_rel(&cata(mu, alg)?).map_err(|_| {
        MetaphorError::Precondition(format!("the fold of {what} is not a function on {}", mu.carrier().describe()))
    })
}

/// Evaluates the four provisos on the bounded carriers.
pub fn checklist(input: &ChecklistInput) -> Result<ChecklistReport, MetaphorError> {
    let ChecklistInput { mu_f, mu_g, k, h, q, r, w } = *input;
    let g = mu_g.base();
    let kfold = fold_fun(mu_f, k, "k")?;
    let hfold = fold_fun(mu_g, h, "h")?;

    let guard_split = {
        let lhs = Rel::coreflexive(q).compose(h)?;
        let rhs = h.compose(&Rel::coreflexive(r))?.compose(&g.map(&Rel::coreflexive(q)))?;
        Condition::equal("q?.h = h.r?.G q?", &lhs, &rhs)
    };

    // compared pointwise: the two sides are sub-graphs of the same function
    let invariant_transfer = {
        let gh = g.map_fun(&hfold);
        let bad = (0..gh.src().len()).find(|&x| w.holds(x) != r.holds(gh.apply(x)));
        let witness = bad
            .map(|x| format!("at {}: invariant {} but guard {}", gh.src().elem(x), w.holds(x), r.holds(gh.apply(x))));
        Condition::new("G<h>.w? = r?.G<h>", bad.is_none(), witness)
    };

    let gk = g.map_fun(&kfold).rel();
    let congruence = Condition::inj_leq("<k>.h <= G<k>", &kfold.rel().compose(h)?, &gk.compose(&h.domain())?)?;
    let guard_respects_attribute = Condition::inj_leq("r <= G<k>", &r.as_fun().rel(), &gk)?;

    let bound =
        format!("{} vehicles, {} virtual structures; congruence restricted to the domain of h", mu_f.len(), mu_g.len());
    Ok(ChecklistReport {
        bound,
        guard_split,
        invariant_transfer,
        congruence,
        guard_respects_attribute,
        vacuous: mu_f.len() <= 1,
    })
}

/// `Z = r?·(⟨k⟩/(⟨k⟩·h)) : G μF <- μF`.
pub fn divide_coalgebra(mu_f: &Mu, k: &Rel, h: &Rel, r: &Predicate) -> Result<Rel, MetaphorError> {
    let kfold = fold_fun(mu_f, k, "k")?.rel();
    let kh = kfold.compose(h)?;
    Ok(Rel::coreflexive(r).compose(&kh.converse())?.compose(&kfold)?)
}

/// Result of [`derive_z`].
#[derive(Clone, Debug)]
pub struct DerivedZ {
    pub z: Rel,
    pub report: ChecklistReport,
    /// `⟨h⟩·⦅Z⦆ = q?·(⟨k⟩/⟨k⟩)` through the bounded virtual structure.
    pub end_to_end: Condition,
}

/// Runs the checklist and, if it passes, derives the divide step and checks the
/// resulting hylomorphism against the specification.
pub fn derive_z(input: &ChecklistInput) -> Result<DerivedZ, MetaphorError> {
    let report = checklist(input)?;
    if !report.passed() {
        let failed: Vec<&str> = report.conditions().iter().filter(|(_, c)| !c.holds).map(|(n, _)| *n).collect();
        return Err(MetaphorError::Precondition(format!("checklist failed at {}", failed.join(", "))));
    }
    let z = divide_coalgebra(input.mu_f, input.k, input.h, input.r)?;
    let run = hylo(input.mu_g, input.h, &z)?;
    let kfold = fold_fun(input.mu_f, input.k, "k")?;
    let spec = Rel::coreflexive(input.q).compose(&Rel::kernel(&kfold))?;
    let mut end_to_end = Condition::equal("<h>.[(Z)] = q?.(<k>/<k>)", &run.rel, &spec);
    if !run.is_exact() && end_to_end.holds {
        end_to_end = Condition::new(
            end_to_end.name,
            false,
            Some(format!("{} inputs overflow the virtual structure", run.overflow.len())),
        );
    }
    Ok(DerivedZ { z, report, end_to_end })
}
