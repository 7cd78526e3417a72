use std::collections::BTreeSet;

use metakit::laws::*;

fn quick() -> GenConfig {
    GenConfig { samples: 60, ..GenConfig::default() }
}

fn pick(ids: &[&str]) -> Vec<Law> {
    ids.iter().map(|id| law(id).unwrap_or_else(|| panic!("{id} missing")).clone()).collect()
}

#[test]
fn catalogue_lists_every_id_once() {
    let ids: BTreeSet<_> = catalogue().iter().map(|l| l.id).collect();
    assert_eq!(ids.len(), catalogue().len());
    assert_eq!(ids, LAW_IDS.iter().copied().collect());
    for id in ["eq-5", "eq-28", "eq-30", "eq-56", "eq-60", "eq-61", "eq-63", "eq-67", "eq-70", "eq-A1", "eq-A5"] {
        assert!(law(id).is_some(), "{id}");
    }
    for id in ["eq-29", "eq-57", "eq-62", "eq-68", "eq-9999"] {
        assert!(law(id).is_none(), "{id}");
    }
    assert!(catalogue().iter().all(|l| !l.anchor.is_empty()));
}

/// Converse of a division and the equivalence characterisation, exhaustively up to three elements.
#[test]
fn converse_of_division_and_equivalence_characterisation_at_three() {
    let cfg = GenConfig { max_size: 3, samples: 100, ..GenConfig::default() };
    let r = run_laws(&pick(&["eq-16", "eq-20"]), &cfg);
    assert_eq!(r.status, Status::Pass, "{}", r.table());
    for l in &r.laws {
        assert_eq!(l.mode, Mode::ExhaustiveRandom, "{}", l.id);
        assert_eq!(l.failed, 0);
    }
}

#[test]
fn reports_are_deterministic_in_the_seed() {
    let laws = pick(&["eq-17", "eq-24", "eq-34"]);
    let a = run_laws(&laws, &quick()).to_json();
    let b = run_laws(&laws, &quick()).to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["laws"].as_array().unwrap().len(), 3);
    assert_eq!(v["laws"][0]["id"], "eq-17");
    assert!(v["laws"][0]["strict"].as_u64().unwrap() > 0);
    assert_eq!(v["config"]["seed"], 0);
    assert!(v["laws"].as_array().unwrap().iter().all(|l| l["millis"] == 0));
}

/// A law's stream depends on its id, not on what else is in the run.
#[test]
fn results_do_not_depend_on_run_composition() {
    let alone = run_laws(&pick(&["eq-34"]), &quick());
    let together = run_laws(&pick(&["eq-16", "eq-34"]), &quick());
    assert_eq!(alone.laws[0], together.laws[1]);
}

#[test]
fn mutants_are_caught_with_witnesses() {
    for m in [Mutant::WrongConverse, Mutant::ConverseOrder, Mutant::Associativity] {
        let law = mutant_law(m);
        let r = run_laws(std::slice::from_ref(&law), &quick());
        assert_eq!(r.status, Status::Fail, "{}", law.id);
        let res = &r.laws[0];
        assert!(res.failed > 0);
        let w = res.witness.as_deref().unwrap();
        assert!(w.contains("rel "), "witness should carry fixtures: {w}");
    }
}

fn always_fails(_: &Instance) -> Result<Check, EvalError> {
    Ok(Check::Fails("conclusion false".into()))
}

fn never_applies(_: &Instance) -> Result<Check, EvalError> {
    Ok(Check::Skip)
}

fn synthetic(id: &'static str, implication: bool, body: Body) -> Law {
    Law {
        id,
        anchor: id,
        vars: vec![Var { name: "R", sort: Sort::Rel(Ty::Base(0), Ty::Base(1)) }],
        implication,
        strict: false,
        functor: false,
        note: None,
        body,
    }
}

#[test]
fn failing_implication_raises_an_alarm_and_stops_the_run() {
    let laws = vec![pick(&["eq-16"])[0].clone(), synthetic("broken", true, always_fails), pick(&["eq-20"])[0].clone()];
    let r = run_laws(&laws, &quick());
    assert_eq!(r.status, Status::Alarm);
    assert_eq!(r.laws[0].status, LawStatus::Pass);
    assert_eq!(r.laws[1].status, LawStatus::Alarm);
    assert_eq!(r.laws[2].mode, Mode::Aborted);
}

#[test]
fn ordinary_failure_does_not_abort() {
    let laws = vec![synthetic("broken", false, always_fails), pick(&["eq-16"])[0].clone()];
    let r = run_laws(&laws, &quick());
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.laws[1].status, LawStatus::Pass);
}

#[test]
fn unmet_side_conditions_make_the_pass_vacuous() {
    let laws = vec![synthetic("never", false, never_applies), pick(&["eq-16"])[0].clone()];
    let r = run_laws(&laws, &quick());
    assert_eq!(r.laws[0].status, LawStatus::Skip);
    assert_eq!(r.status, Status::PassVacuous);
}

#[test]
fn small_budget_falls_back_to_sampling() {
    let cfg = GenConfig { budget: 10, ..quick() };
    let r = run_laws(&pick(&["eq-16"]), &cfg);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.laws[0].mode, Mode::ExhaustiveRandom);
    assert!(r.laws[0].note.as_deref().unwrap_or("").contains("exceed the exhaustive budget"), "{:?}", r.laws[0].note);
    let none = GenConfig { budget: 0, ..quick() };
    assert_eq!(run_laws(&pick(&["eq-16"]), &none).laws[0].mode, Mode::Random);
}

#[test]
fn congruence_chain_is_seeded() {
    let a = congruence_chain(200, 2, 3).unwrap();
    assert_eq!(a, congruence_chain(200, 2, 3).unwrap());
    assert_eq!(a.divergences, 0);
}
