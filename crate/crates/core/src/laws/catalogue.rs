use std::sync::OnceLock;

use super::gen::{var, Sort, Ty, Var, A, B, C, D, E};
use super::{Check, EvalError, Law};
use crate::algorithms::{all_lists, bag, ordered};
use crate::finrel::{Carrier, Fun, Predicate, Rel};
use crate::inductive::{cata, check_fusion};

/// Ids of every catalogued law, in catalogue order.
pub const LAW_IDS: [&str; 64] = [
    "eq-5", "eq-6", "eq-7", "eq-8", "eq-9", "eq-10", "eq-11", "eq-12", "eq-13", "eq-14", "eq-15", "eq-16", "eq-17",
    "eq-18", "eq-19", "eq-20", "eq-21", "eq-22", "eq-23", "eq-24", "eq-25", "eq-26", "eq-27", "eq-28", "eq-30",
    "eq-31", "eq-32", "eq-33", "eq-34", "eq-35", "eq-36", "eq-37", "eq-38", "eq-39", "eq-40", "eq-41", "eq-42",
    "eq-43", "eq-44", "eq-45", "eq-46", "eq-47", "eq-48", "eq-49", "eq-50", "eq-51", "eq-52", "eq-53", "eq-54",
    "eq-55", "eq-56", "eq-60", "eq-61", "eq-63", "eq-64", "eq-65", "eq-66", "eq-67", "eq-70", "eq-A1", "eq-A2",
    "eq-A3", "eq-A4", "eq-A5",
];

type R = Result<Check, EvalError>;

fn rel(tgt: Ty, src: Ty) -> Sort {
    Sort::Rel(tgt, src)
}

fn fun(src: Ty, tgt: Ty) -> Sort {
    Sort::Fun(src, tgt)
}

fn first_difference(lhs: &Rel, rhs: &Rel) -> String {
    match (lhs.missing_from(rhs), rhs.missing_from(lhs)) {
        (Some((t, s)), _) => format!("{} only on the right", rhs.label_pair(t, s)),
        (None, Some((t, s))) => format!("{} only on the left", lhs.label_pair(t, s)),
        (None, None) => "carriers differ".into(),
    }
}

fn eq(lhs: &Rel, rhs: &Rel) -> Check {
    if lhs == rhs {
        Check::Holds
    } else {
        Check::Fails(first_difference(lhs, rhs))
    }
}

/// `small ⊆ big`.
fn incl(small: &Rel, big: &Rel) -> R {
    Ok(match big.missing_from(small) {
        None => Check::Holds,
        Some((t, s)) => Check::Fails(format!("{} is not in the larger side", small.label_pair(t, s))),
    })
}

/// `small ⊆ big`, noting when equality fails.
fn strict_incl(small: &Rel, big: &Rel) -> R {
    Ok(match incl(small, big)? {
        Check::Holds => match small.missing_from(big) {
            Some((t, s)) => Check::Strict(format!("{} is only in the larger side", big.label_pair(t, s))),
            None => Check::Holds,
        },
        other => other,
    })
}

fn iff(lhs: bool, rhs: bool) -> Check {
    if lhs == rhs {
        Check::Holds
    } else {
        Check::Fails(format!("left side is {lhs}, right side is {rhs}"))
    }
}

/// The first failing check, or success.
fn all(checks: impl IntoIterator<Item = Check>) -> Check {
    checks.into_iter().find(|c| matches!(c, Check::Fails(_))).unwrap_or(Check::Holds)
}

fn when(premise: bool, conclusion: Check) -> Check {
    if premise {
        conclusion
    } else {
        Check::Skip
    }
}

fn sub(small: &Rel, big: &Rel) -> Result<bool, EvalError> {
    Ok(small.included_in(big)?)
}

fn id(r: &Rel, of_target: bool) -> Rel {
    Rel::id(if of_target { r.tgt() } else { r.src() })
}

fn truth(a: &Carrier, holds: bool) -> Result<Fun, EvalError> {
    Ok(Fun::constant(a, &Carrier::booleans(), usize::from(holds))?)
}

fn coref(p: &Predicate) -> Rel {
    Rel::coreflexive(p)
}

/// Every function `src -> tgt`.
fn all_functions(src: &Carrier, tgt: &Carrier) -> Vec<Fun> {
    let mut out = Vec::new();
    let mut map = vec![0; src.len()];
    loop {
        out.push(Fun::new(src, tgt, map.clone()).expect("in range"));
        let mut i = 0;
        loop {
            if i == map.len() {
                return out;
            }
            map[i] += 1;
            if map[i] < tgt.len() {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

/// `f ≤ g` read as kernel inclusion.
fn less_injective(f: &Rel, g: &Rel) -> Result<bool, EvalError> {
    Ok(f.inj_leq(g)?)
}

fn mk(id: &'static str, anchor: &'static str, vars: Vec<Var>, body: super::Body) -> Law {
    Law { id, anchor, vars, implication: false, strict: false, functor: false, note: None, body }
}

const TRUNCATION: &str = "checked on the depth-bounded inductive type; layers leaving the bound are excluded";

fn build() -> Vec<Law> {
    let mut laws = vec![
        mk(
            "eq-5",
            "f·R ⊆ S ⟺ R ⊆ f°·S",
            vec![var("f", fun(A, B)), var("R", rel(A, C)), var("S", rel(B, C))],
            |i| {
                let (f, r, s) = (i.rel("f"), i.rel("R"), i.rel("S"));
                Ok(iff(sub(&f.compose(&r)?, &s)?, sub(&r, &f.converse().compose(&s)?)?))
            },
        ),
        mk(
            "eq-6",
            "R·f° ⊆ S ⟺ R ⊆ S·f",
            vec![var("f", fun(A, B)), var("R", rel(C, A)), var("S", rel(C, B))],
            |i| {
                let (f, r, s) = (i.rel("f"), i.rel("R"), i.rel("S"));
                Ok(iff(sub(&r.compose(&f.converse())?, &s)?, sub(&r, &s.compose(&f)?)?))
            },
        ),
        mk(
            "eq-7",
            "b(g°·R·f)a ⟺ (g b)R(f a)",
            vec![var("f", fun(A, C)), var("g", fun(B, D)), var("R", rel(D, C))],
            |i| {
                let (f, g, r) = (i.fun("f"), i.fun("g"), i.rel("R"));
                let lhs = g.rel().converse().compose(&r)?.compose(&f.rel())?;
                let rhs = Rel::from_fn(f.src(), g.src(), |b, a| r.get(g.apply(b), f.apply(a)));
                Ok(eq(&lhs, &rhs))
            },
        ),
        mk(
            "eq-8",
            "true = T, false = F",
            vec![var("a", Sort::Elem(B)), var("b", Sort::Elem(B)), var("x", Sort::Elem(A))],
            |i| {
                // constants as metaphors: distinct constants are range disjoint
                let (a, b) = (i.elem("a"), i.elem("b"));
                let src = i.elem_carrier("x").clone();
                let tgt = i.elem_carrier("a").clone();
                let ka = Fun::constant(&src, &tgt, a)?.rel();
                let kb = Fun::constant(&src, &tgt, b)?.rel();
                let (t, f) = (truth(&src, true)?.rel(), truth(&src, false)?.rel());
                let bottom = Rel::empty(&src, &src);
                Ok(all([
                    iff(a != b, ka.sym_divide(&kb)?.is_empty()),
                    eq(&t.sym_divide(&f)?, &bottom),
                    eq(&t.sym_divide(&t)?, &Rel::top(&src, &src)),
                    iff(true, t.is_function() && f.is_function()),
                ]))
            },
        ),
        mk("eq-9", "! : X → 1", vec![var("f", fun(A, Ty::Unit))], |i| {
            let f = i.fun("f");
            Ok(eq(&f.rel(), &Fun::bang(f.src()).rel()))
        }),
        mk(
            "eq-10",
            "b (S/R) c ⟺ ⟨∀ a :: a R b ⟺ a S c⟩",
            vec![var("R", rel(A, B)), var("S", rel(A, C))],
            |i| {
                let (r, s) = (i.rel("R"), i.rel("S"));
                let pointwise =
                    Rel::from_fn(s.src(), r.src(), |b, c| (0..r.tgt().len()).all(|a| r.get(a, b) == s.get(a, c)));
                Ok(eq(&s.sym_divide(&r)?, &pointwise))
            },
        ),
        mk("eq-11", "b (S/R) c ⟺ ΛR b = ΛS c", vec![var("R", rel(A, B)), var("S", rel(A, C))], |i| {
            let (r, s) = (i.rel("R"), i.rel("S"));
            let (lr, ls) = (r.power_transpose(i.power_bound)?, s.power_transpose(i.power_bound)?);
            let via_sets = Rel::from_fn(s.src(), r.src(), |b, c| lr.apply(b) == ls.apply(c));
            Ok(eq(&s.sym_divide(&r)?, &via_sets))
        }),
        mk("eq-12", "S/R = R\\S ∩ R°/S°", vec![var("R", rel(A, B)), var("S", rel(A, C))], |i| {
            let (r, s) = (i.rel("R"), i.rel("S"));
            let rhs = r.left_divide(&s)?.meet(&r.converse().right_divide(&s.converse())?)?;
            Ok(eq(&s.sym_divide(&r)?, &rhs))
        }),
        mk(
            "eq-13",
            "R·X ⊆ S ⟺ X ⊆ R\\S",
            vec![var("R", rel(A, B)), var("X", rel(B, C)), var("S", rel(A, C))],
            |i| {
                let (r, x, s) = (i.rel("R"), i.rel("X"), i.rel("S"));
                Ok(iff(sub(&r.compose(&x)?, &s)?, sub(&x, &r.left_divide(&s)?)?))
            },
        ),
        mk(
            "eq-14",
            "X·R ⊆ S ⟺ X ⊆ S/R",
            vec![var("X", rel(A, B)), var("R", rel(B, C)), var("S", rel(A, C))],
            |i| {
                let (x, r, s) = (i.rel("X"), i.rel("R"), i.rel("S"));
                Ok(iff(sub(&x.compose(&r)?, &s)?, sub(&x, &s.right_divide(&r)?)?))
            },
        ),
        mk(
            "eq-15",
            "X ⊆ S/R ⟺ R·X ⊆ S ∧ S·X° ⊆ R",
            vec![var("R", rel(A, B)), var("S", rel(A, C)), var("X", rel(B, C))],
            |i| {
                let (r, s, x) = (i.rel("R"), i.rel("S"), i.rel("X"));
                let rhs = sub(&r.compose(&x)?, &s)? && sub(&s.compose(&x.converse())?, &r)?;
                Ok(iff(sub(&x, &s.sym_divide(&r)?)?, rhs))
            },
        ),
        mk("eq-16", "(S/R)° = R/S", vec![var("R", rel(A, B)), var("S", rel(A, C))], |i| {
            let (r, s) = (i.rel("R"), i.rel("S"));
            Ok(eq(&s.sym_divide(&r)?.converse(), &r.sym_divide(&s)?))
        }),
        Law {
            strict: true,
            ..mk(
                "eq-17",
                "S/R · Q/S ⊆ Q/R",
                vec![var("R", rel(A, B)), var("S", rel(A, C)), var("Q", rel(A, D))],
                |i| {
                    let (r, s, q) = (i.rel("R"), i.rel("S"), i.rel("Q"));
                    strict_incl(&s.sym_divide(&r)?.compose(&q.sym_divide(&s)?)?, &q.sym_divide(&r)?)
                },
            )
        },
        mk(
            "eq-18",
            "f°·(S/R)·g = (S·g)/(R·f)",
            vec![var("R", rel(A, B)), var("S", rel(A, C)), var("f", fun(D, B)), var("g", fun(E, C))],
            |i| {
                let (r, s, f, g) = (i.rel("R"), i.rel("S"), i.rel("f"), i.rel("g"));
                let lhs = f.converse().compose(&s.sym_divide(&r)?)?.compose(&g)?;
                Ok(eq(&lhs, &s.compose(&g)?.sym_divide(&r.compose(&f)?)?))
            },
        ),
        mk("eq-19", "id ⊆ R/R", vec![var("R", rel(A, B))], |i| {
            let r = i.rel("R");
            incl(&id(&r, false), &r.sym_divide(&r)?)
        }),
        mk(
            "eq-20",
            "R = R/R ⟺ R is an equivalence relation",
            vec![var("R", rel(A, A)), var("Q", Sort::Equivalence(A))],
            |i| {
                let (r, q) = (i.rel("R"), i.rel("Q"));
                Ok(all([iff(r == r.sym_divide(&r)?, r.is_equivalence()), eq(&q, &q.sym_divide(&q)?)]))
            },
        ),
        Law {
            strict: true,
            ..mk(
                "eq-21",
                "f/g · h/f ⊆ h/g",
                vec![var("f", fun(C, A)), var("g", fun(B, A)), var("h", fun(D, A))],
                |i| {
                    let (f, g, h) = (i.rel("f"), i.rel("g"), i.rel("h"));
                    strict_incl(&f.sym_divide(&g)?.compose(&h.sym_divide(&f)?)?, &h.sym_divide(&g)?)
                },
            )
        },
        mk(
            "eq-22",
            "X ⊆ S↾R ⟺ X ⊆ S ∧ X·S° ⊆ R",
            vec![var("S", rel(A, B)), var("R", rel(A, A)), var("X", rel(A, B))],
            |i| {
                let (s, r, x) = (i.rel("S"), i.rel("R"), i.rel("X"));
                let rhs = sub(&x, &s)? && sub(&x.compose(&s.converse())?, &r)?;
                Ok(iff(sub(&x, &s.shrink(&r)?)?, rhs))
            },
        ),
        mk("eq-23", "S↾R = S ∩ R/S°", vec![var("S", rel(A, B)), var("R", rel(A, A))], |i| {
            let (s, r) = (i.rel("S"), i.rel("R"));
            Ok(eq(&s.shrink(&r)?, &s.meet(&r.right_divide(&s.converse())?)?))
        }),
        mk(
            "eq-24",
            "(S·f)↾R = (S↾R)·f",
            vec![var("S", rel(A, B)), var("f", fun(C, B)), var("R", rel(A, A))],
            |i| {
                let (s, f, r) = (i.rel("S"), i.rel("f"), i.rel("R"));
                Ok(eq(&s.compose(&f)?.shrink(&r)?, &s.shrink(&r)?.compose(&f)?))
            },
        ),
        mk(
            "eq-25",
            "(f·S)↾R = f·(S↾(f°·R·f))",
            vec![var("S", rel(A, B)), var("f", fun(A, C)), var("R", rel(C, C))],
            |i| {
                let (s, f, r) = (i.rel("S"), i.rel("f"), i.rel("R"));
                let pulled = f.converse().compose(&r)?.compose(&f)?;
                Ok(eq(&f.compose(&s)?.shrink(&r)?, &f.compose(&s.shrink(&pulled)?)?))
            },
        ),
        mk("eq-26", "R/g = g°·(R↾id)", vec![var("R", rel(A, C)), var("g", fun(B, A))], |i| {
            let (r, g) = (i.rel("R"), i.rel("g"));
            Ok(eq(&r.sym_divide(&g)?, &g.converse().compose(&r.shrink(&id(&r, true))?)?))
        }),
        mk("eq-27", "f/R = (R↾id)°·f", vec![var("f", fun(C, A)), var("R", rel(A, B))], |i| {
            let (f, r) = (i.rel("f"), i.rel("R"));
            Ok(eq(&f.sym_divide(&r)?, &r.shrink(&id(&r, true))?.converse().compose(&f)?))
        }),
        Law {
            note: Some(TRUNCATION),
            ..mk(
                "eq-28",
                "X = ⟨R⟩ ⟺ X·in_F = R·(F X)",
                vec![var("R", rel(A, Ty::f(A))), var("t", Sort::Toggle(A, Ty::Mu))],
                |i| {
                    // X is the fold itself or the fold with one entry flipped
                    let mu = i.mu();
                    let r = i.rel("R");
                    let fold = cata(mu, &r)?;
                    let mut x = fold.clone();
                    if let Some((t, s)) = i.toggle("t") {
                        if x.get(t, s) {
                            x.clear(t, s);
                        } else {
                            x.set(t, s);
                        }
                    }
                    let inn = mu.in_alg();
                    let lhs = x.compose(&inn)?;
                    let rhs = r.compose(&i.functor().map(&x))?.compose(&inn.domain())?;
                    Ok(iff(x == fold, lhs == rhs))
                },
            )
        },
        Law {
            implication: true,
            note: Some(TRUNCATION),
            ..mk(
                "eq-30",
                "S·⟨R⟩ = ⟨Q⟩ ⟸ S·R = Q·F S",
                vec![var("S", rel(B, A)), var("s", fun(A, B)), var("R", rel(A, Ty::f(A)))],
                |i| {
                    // Q is the largest relation with Q·F S ⊆ S·R, so the premise
                    // holds exactly when S·R factors through F S
                    let mu = i.mu();
                    let r = i.rel("R");
                    let mut met = false;
                    for s in [i.rel("S"), i.rel("s")] {
                        let q = s.compose(&r)?.right_divide(&i.functor().map(&s))?;
                        let v = check_fusion(mu, &s, &r, &q)?;
                        if v.condition {
                            met = true;
                            if !v.conclusion {
                                return Ok(Check::Fails(v.witness.unwrap_or_default()));
                            }
                        }
                    }
                    Ok(when(met, Check::Holds))
                },
            )
        },
        Law {
            note: Some(TRUNCATION),
            ..mk("eq-31", "⟨R⟩·in_F = R·F⟨R⟩", vec![var("R", rel(A, Ty::f(A)))], |i| {
                let mu = i.mu();
                let r = i.rel("R");
                let fold = cata(mu, &r)?;
                let inn = mu.in_alg();
                let rhs = r.compose(&i.functor().map(&fold))?.compose(&inn.domain())?;
                Ok(eq(&fold.compose(&inn)?, &rhs))
            })
        },
        mk("eq-32", "f/g = g°·f", vec![var("f", fun(A, C)), var("g", fun(B, C))], |i| {
            let (f, g) = (i.rel("f"), i.rel("g"));
            Ok(eq(&f.sym_divide(&g)?, &g.converse().compose(&f)?))
        }),
        mk("eq-33", "ΛS/ΛR = S/R", vec![var("R", rel(A, B)), var("S", rel(A, C))], |i| {
            let (r, s) = (i.rel("R"), i.rel("S"));
            let (lr, ls) = (r.power_transpose(i.power_bound)?, s.power_transpose(i.power_bound)?);
            Ok(eq(&ls.rel().sym_divide(&lr.rel())?, &s.sym_divide(&r)?))
        }),
        mk("eq-34", "(f/g)° = g/f", vec![var("f", fun(A, C)), var("g", fun(B, C))], |i| {
            let (f, g) = (i.rel("f"), i.rel("g"));
            Ok(eq(&f.sym_divide(&g)?.converse(), &g.sym_divide(&f)?))
        }),
        mk(
            "eq-35",
            "id/g · h/k · f/id = (h·f)/(k·g)",
            vec![var("f", fun(A, B)), var("h", fun(B, E)), var("k", fun(C, E)), var("g", fun(D, C))],
            |i| {
                let (f, h, k, g) = (i.rel("f"), i.rel("h"), i.rel("k"), i.rel("g"));
                let lhs =
                    id(&g, true).sym_divide(&g)?.compose(&h.sym_divide(&k)?)?.compose(&f.sym_divide(&id(&f, true))?)?;
                Ok(eq(&lhs, &h.compose(&f)?.sym_divide(&k.compose(&g)?)?))
            },
        ),
        mk("eq-36", "!A/!B = ⊤ B←A", vec![var("!A", fun(A, Ty::Unit)), var("!B", fun(B, Ty::Unit))], |i| {
            let (a, b) = (i.rel("!A"), i.rel("!B"));
            Ok(eq(&a.sym_divide(&b)?, &Rel::top(a.src(), b.src())))
        }),
        mk(
            "eq-37",
            "f/g ∩ h/k = (f △ h)/(g △ k)",
            vec![var("f", fun(A, C)), var("g", fun(B, C)), var("h", fun(A, D)), var("k", fun(B, D))],
            |i| {
                let (f, g, h, k) = (i.rel("f"), i.rel("g"), i.rel("h"), i.rel("k"));
                let lhs = f.sym_divide(&g)?.meet(&h.sym_divide(&k)?)?;
                Ok(eq(&lhs, &f.pairing(&h)?.sym_divide(&g.pairing(&k)?)?))
            },
        ),
        mk("eq-38", "id ⊆ f/f", vec![var("f", fun(A, B))], |i| {
            let f = i.rel("f");
            incl(&id(&f, false), &f.sym_divide(&f)?)
        }),
        mk("eq-39", "f ≤ g ⟺ g/g ⊆ f/f", vec![var("f", fun(A, C)), var("g", fun(A, D))], |i| {
            let (f, g) = (i.rel("f"), i.rel("g"));
            Ok(iff(less_injective(&f, &g)?, sub(&g.sym_divide(&g)?, &f.sym_divide(&f)?)?))
        }),
        mk("eq-40", "f ≤ g ⟺ ⟨∃ k :: f = k·g⟩", vec![var("f", fun(A, C)), var("g", fun(A, D))], |i| {
            let (f, g) = (i.fun("f"), i.fun("g"));
            let factors = all_functions(g.tgt(), f.tgt()).into_iter().any(|k| k.after(g).is_ok_and(|kg| kg == *f));
            Ok(iff(less_injective(&f.rel(), &g.rel())?, factors))
        }),
        mk("eq-41", "R = ΛR/ΛR", vec![var("R", Sort::Equivalence(A))], |i| {
            let r = i.rel("R");
            let lr = r.power_transpose(i.power_bound)?.rel();
            Ok(eq(&r, &lr.sym_divide(&lr)?))
        }),
        mk("eq-42", "p? = id ∩ true/p", vec![var("p", Sort::Predicate(A))], |i| {
            let p = i.pred("p");
            let t = truth(p.carrier(), true)?.rel();
            let rhs = Rel::id(p.carrier()).meet(&t.sym_divide(&p.as_fun().rel())?)?;
            Ok(eq(&coref(p), &rhs))
        }),
        mk("eq-43", "p?·⊤ = true/p", vec![var("p", Sort::Predicate(A))], |i| {
            let p = i.pred("p");
            let a = p.carrier();
            let t = truth(a, true)?.rel();
            Ok(eq(&coref(p).compose(&Rel::top(a, a))?, &t.sym_divide(&p.as_fun().rel())?))
        }),
        mk(
            "eq-44",
            "f·p? = q?·f ⟺ p = q·f",
            vec![var("f", fun(A, B)), var("p", Sort::Predicate(A)), var("q", Sort::Predicate(B))],
            |i| {
                let (f, p, q) = (i.fun("f"), i.pred("p"), i.pred("q"));
                let lhs = f.rel().compose(&coref(p))? == coref(q).compose(&f.rel())?;
                Ok(iff(lhs, q.after(f)? == *p))
            },
        ),
        Law {
            implication: true,
            ..mk(
                "eq-45",
                "f/f·p? = p?·f/f ⟸ p ≤ f",
                vec![var("f", fun(A, B)), var("p", Sort::Predicate(A))],
                |i| {
                    let (f, p) = (i.rel("f"), i.pred("p"));
                    let premise = less_injective(&p.as_fun().rel(), &f)?;
                    let k = f.sym_divide(&f)?;
                    Ok(when(premise, eq(&k.compose(&coref(p))?, &coref(p).compose(&k)?)))
                },
            )
        },
        mk(
            "eq-46",
            "f/g × h/k = (f × h)/(g × k)",
            vec![var("f", fun(A, C)), var("g", fun(B, C)), var("h", fun(D, E)), var("k", fun(C, E))],
            |i| {
                let (f, g, h, k) = (i.rel("f"), i.rel("g"), i.rel("h"), i.rel("k"));
                let lhs = f.sym_divide(&g)?.product(&h.sym_divide(&k)?);
                Ok(eq(&lhs, &f.product(&h).sym_divide(&g.product(&k))?))
            },
        ),
        mk("eq-47", "R × S = R·π1 △ S·π2", vec![var("R", rel(B, A)), var("S", rel(D, C))], |i| {
            let (r, s) = (i.rel("R"), i.rel("S"));
            let p1 = Rel::proj1(r.src(), s.src());
            let p2 = Rel::proj2(r.src(), s.src());
            Ok(eq(&r.product(&s), &r.compose(&p1)?.pairing(&s.compose(&p2)?)?))
        }),
        mk("eq-48", "R △ S = π1°·R ∩ π2°·S", vec![var("R", rel(B, A)), var("S", rel(C, A))], |i| {
            let (r, s) = (i.rel("R"), i.rel("S"));
            let p1 = Rel::proj1(r.tgt(), s.tgt());
            let p2 = Rel::proj2(r.tgt(), s.tgt());
            Ok(eq(&r.pairing(&s)?, &p1.converse().compose(&r)?.meet(&p2.converse().compose(&s)?)?))
        }),
        mk("eq-49", "F (f/g) = F f / F g", vec![var("f", fun(A, C)), var("g", fun(B, C))], |i| {
            let (f, g) = (i.fun("f"), i.fun("g"));
            let functor = i.functor();
            let lhs = functor.map(&f.rel().sym_divide(&g.rel())?);
            Ok(eq(&lhs, &functor.map_fun(f).rel().sym_divide(&functor.map_fun(g).rel())?))
        }),
        mk(
            "eq-50",
            "f/g + h/k = (f+h)/(g+k)",
            vec![var("f", fun(A, C)), var("g", fun(B, C)), var("h", fun(D, E)), var("k", fun(C, E))],
            |i| {
                let (f, g, h, k) = (i.rel("f"), i.rel("g"), i.rel("h"), i.rel("k"));
                let lhs = f.sym_divide(&g)?.sum(&h.sym_divide(&k)?);
                Ok(eq(&lhs, &f.sum(&h).sym_divide(&g.sum(&k))?))
            },
        ),
        mk("eq-51", "C ← A+B : [R,S]", vec![var("R", rel(C, A)), var("S", rel(C, B))], |i| {
            let (r, s) = (i.rel("R"), i.rel("S"));
            let i1 = Rel::inj1(r.src(), s.src());
            let i2 = Rel::inj2(r.src(), s.src());
            Ok(eq(&r.junc(&s)?, &r.compose(&i1.converse())?.join(&s.compose(&i2.converse())?)?))
        }),
        mk("eq-52", "[f, g] ≤ f + g", vec![var("f", fun(A, C)), var("g", fun(B, C))], |i| {
            let (f, g) = (i.rel("f"), i.rel("g"));
            let holds = less_injective(&f.junc(&g)?, &f.sum(&g))?;
            Ok(iff(holds, true))
        }),
        mk(
            "eq-53",
            "f + g ≤ h + k ⟺ f ≤ h ∧ g ≤ k",
            vec![var("f", fun(A, C)), var("h", fun(A, D)), var("g", fun(B, E)), var("k", fun(B, E))],
            |i| {
                let (f, h, g, k) = (i.rel("f"), i.rel("h"), i.rel("g"), i.rel("k"));
                let rhs = less_injective(&f, &h)? && less_injective(&g, &k)?;
                Ok(iff(less_injective(&f.sum(&g), &h.sum(&k))?, rhs))
            },
        ),
        mk("eq-54", "R ≤ S ⟺ S°·S ⊆ R°·R", vec![var("R", rel(B, A)), var("S", rel(C, A))], |i| {
            let (r, s) = (i.rel("R"), i.rel("S"));
            let direct = sub(&s.converse().compose(&s)?, &r.converse().compose(&r)?)?;
            // uniform (ΛR ≤ R) exactly when difunctional
            let lr = r.power_transpose(i.power_bound)?.rel();
            Ok(all([iff(r.inj_leq(&s)?, direct), iff(lr.inj_leq(&r)?, r.is_difunctional())]))
        }),
        mk(
            "eq-55",
            "h ⊆ f/g ⟺ g·h = f",
            vec![var("f", fun(A, C)), var("g", fun(B, C)), var("h", fun(A, B))],
            |i| {
                let (f, g, h) = (i.rel("f"), i.rel("g"), i.rel("h"));
                Ok(iff(sub(&h, &f.sym_divide(&g)?)?, g.compose(&h)? == f))
            },
        ),
        mk("eq-56", "f ⊆ g ⟺ f = g ⟺ f ⊇ g", vec![var("f", fun(A, B)), var("g", fun(A, B))], |i| {
            let (f, g) = (i.rel("f"), i.rel("g"));
            Ok(all([iff(sub(&f, &g)?, f == g), iff(f == g, sub(&g, &f)?)]))
        }),
        mk(
            "eq-60",
            "f/g↾R = ((f·h)/g↾R)·h° for h surjective",
            vec![var("f", fun(A, C)), var("g", fun(B, C)), var("R", rel(B, B)), var("h", Sort::Surj(D, A))],
            |i| {
                let (f, g, r, h) = (i.rel("f"), i.rel("g"), i.rel("R"), i.rel("h"));
                let lhs = f.sym_divide(&g)?.shrink(&r)?;
                let rhs = f.compose(&h)?.sym_divide(&g)?.shrink(&r)?.compose(&h.converse())?;
                Ok(eq(&lhs, &rhs))
            },
        ),
        mk(
            "eq-61",
            "f/g↾R = h·(f/(g·h) ∩ h°·(R/g)·f) for h surjective",
            vec![var("f", fun(A, C)), var("g", fun(B, C)), var("R", rel(B, B)), var("h", Sort::Surj(D, B))],
            |i| {
                let (f, g, r, h) = (i.rel("f"), i.rel("g"), i.rel("R"), i.rel("h"));
                let lhs = f.sym_divide(&g)?.shrink(&r)?;
                let best = h.converse().compose(&r.right_divide(&g)?)?.compose(&f)?;
                let rhs = h.compose(&f.sym_divide(&g.compose(&h)?)?.meet(&best)?)?;
                Ok(eq(&lhs, &rhs))
            },
        ),
        mk(
            "eq-63",
            "f/g ∩ q?·⊤",
            vec![var("f", fun(A, C)), var("g", fun(B, C)), var("q", Sort::Predicate(B))],
            |i| {
                // f/g ↾ true/q reduces to f/g ∩ q?·⊤ when f/g is entire
                let (f, g, q) = (i.rel("f"), i.rel("g"), i.pred("q"));
                let m = f.sym_divide(&g)?;
                let post = truth(q.carrier(), true)?.rel().sym_divide(&q.as_fun().rel())?;
                let rect = coref(q).compose(&Rel::top(m.src(), m.tgt()))?;
                Ok(when(m.is_entire(), eq(&m.shrink(&post)?, &m.meet(&rect)?)))
            },
        ),
        Law {
            note: Some("checked for entire S only; the empty relation satisfies the equation without being entire"),
            ..mk(
                "eq-64",
                "S ↾ (q?·⊤) = q?·S ⟺ S is entire",
                vec![var("S", rel(A, B)), var("q", Sort::Predicate(A))],
                |i| {
                    let (s, q) = (i.rel("S"), i.pred("q"));
                    let post = coref(q).compose(&Rel::top(s.tgt(), s.tgt()))?;
                    Ok(when(s.is_entire(), eq(&s.shrink(&post)?, &coref(q).compose(&s)?)))
                },
            )
        },
        mk(
            "eq-65",
            "Sort = ordered?·Perm where Perm = bag/bag",
            vec![var("alphabet", Sort::Elem(A)), var("length", Sort::Elem(B))],
            |i| {
                let lists = all_lists(i.elem("alphabet") + 1, i.elem("length") + 1);
                let labels: Vec<String> = lists.iter().map(|xs| crate::algorithms::format_list(xs)).collect();
                let l = Carrier::new("List", labels)?;
                let perm = Rel::from_fn(&l, &l, |y, x| bag(&lists[y]) == bag(&lists[x]));
                let ord = Predicate::from_fn(&l, |x| ordered(&lists[x]));
                let spec = Rel::coreflexive(&ord).compose(&perm)?;
                let sorted = Rel::from_fn(&l, &l, |y, x| {
                    let mut v = lists[x].clone();
                    v.sort_unstable();
                    lists[y] == v
                });
                Ok(eq(&spec, &sorted))
            },
        ),
        mk(
            "eq-66",
            "q?·f/g = h·p?·f/(g·h) for h surjective and p = q·h",
            vec![var("f", fun(A, C)), var("g", fun(B, C)), var("q", Sort::Predicate(B)), var("h", Sort::Surj(D, B))],
            |i| {
                let (f, g, q, h) = (i.rel("f"), i.rel("g"), i.pred("q"), i.fun("h"));
                let p = q.after(h)?;
                let lhs = coref(q).compose(&f.sym_divide(&g)?)?;
                let rhs = h.rel().compose(&coref(&p))?.compose(&f.sym_divide(&g.compose(&h.rel())?)?)?;
                Ok(eq(&lhs, &rhs))
            },
        ),
        mk(
            "eq-67",
            "q?·f/g = q?·(f·h)/g·h° for h surjective",
            vec![var("f", fun(A, C)), var("g", fun(B, C)), var("q", Sort::Predicate(B)), var("h", Sort::Surj(D, A))],
            |i| {
                let (f, g, q, h) = (i.rel("f"), i.rel("g"), i.pred("q"), i.rel("h"));
                let lhs = coref(q).compose(&f.sym_divide(&g)?)?;
                let rhs = coref(q).compose(&f.compose(&h)?.sym_divide(&g)?)?.compose(&h.converse())?;
                Ok(eq(&lhs, &rhs))
            },
        ),
        mk(
            "eq-70",
            "[x, y] ⊆ [g, h]/f ⟺ x ⊆ g/f ∧ y ⊆ h/f",
            vec![
                var("x", rel(B, A)),
                var("y", rel(B, C)),
                var("g", fun(A, D)),
                var("h", fun(C, D)),
                var("f", fun(B, D)),
            ],
            |i| {
                let (x, y, g, h, f) = (i.rel("x"), i.rel("y"), i.rel("g"), i.rel("h"), i.rel("f"));
                let lhs = sub(&x.junc(&y)?, &g.junc(&h)?.sym_divide(&f)?)?;
                let rhs = sub(&x, &g.sym_divide(&f)?)? && sub(&y, &h.sym_divide(&f)?)?;
                Ok(iff(lhs, rhs))
            },
        ),
        mk("eq-A1", "(q·f)? = δ(q?·f)", vec![var("f", fun(A, B)), var("q", Sort::Predicate(B))], |i| {
            let (f, q) = (i.fun("f"), i.pred("q"));
            Ok(eq(&coref(&q.after(f)?), &coref(q).compose(&f.rel())?.domain()))
        }),
        mk("eq-A2", "δR = id ∩ R°·R", vec![var("R", rel(B, A))], |i| {
            let r = i.rel("R");
            Ok(eq(&r.domain(), &id(&r, false).meet(&r.converse().compose(&r)?)?))
        }),
        mk("eq-A3", "R·p? = R ∩ ⊤·p?", vec![var("R", rel(B, A)), var("p", Sort::Predicate(A))], |i| {
            let (r, p) = (i.rel("R"), i.pred("p"));
            let rhs = r.meet(&Rel::top(r.src(), r.tgt()).compose(&coref(p))?)?;
            Ok(eq(&r.compose(&coref(p))?, &rhs))
        }),
        mk("eq-A4", "q?·R = R ∩ q?·⊤", vec![var("R", rel(B, A)), var("q", Sort::Predicate(B))], |i| {
            let (r, q) = (i.rel("R"), i.pred("q"));
            let rhs = r.meet(&coref(q).compose(&Rel::top(r.src(), r.tgt()))?)?;
            Ok(eq(&coref(q).compose(&r)?, &rhs))
        }),
        mk(
            "eq-A5",
            "R·S ⊆ R·Q ⟺ S ⊆ R·Q",
            vec![var("R", Sort::Equivalence(A)), var("S", rel(A, B)), var("Q", rel(A, B))],
            |i| {
                let (r, s, q) = (i.rel("R"), i.rel("S"), i.rel("Q"));
                let rq = r.compose(&q)?;
                Ok(iff(sub(&r.compose(&s)?, &rq)?, sub(&s, &rq)?))
            },
        ),
    ];
    // the one law that needs a relator but no inductive variable
    if let Some(l) = laws.iter_mut().find(|l| l.id == "eq-49") {
        l.functor = true;
        l.note = Some("checked for the list, node-tree and leaf-tree relators");
    }
    laws
}

/// The catalogue in id order.
pub fn catalogue() -> &'static [Law] {
    static CATALOGUE: OnceLock<Vec<Law>> = OnceLock::new();
    CATALOGUE.get_or_init(build)
}

pub fn law(id: &str) -> Option<&'static Law> {
    catalogue().iter().find(|l| l.id == id)
}

/// Deliberately wrong laws, for checking that the runner catches failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutant {
    /// `(S/R)° = S/R`: forgets to swap the operands.
    WrongConverse,
    /// `(R·S)° = R°·S°`: composes converses in the original order.
    ConverseOrder,
    /// `(S/R)/Q = S/(R/Q)`: symmetric division is not associative.
    Associativity,
}

pub fn mutant_law(m: Mutant) -> Law {
    match m {
        Mutant::WrongConverse => {
            mk("mutant-wrong-converse", "(S/R)° = S/R", vec![var("R", rel(A, B)), var("S", rel(A, B))], |i| {
                let (r, s) = (i.rel("R"), i.rel("S"));
                Ok(eq(&s.sym_divide(&r)?.converse(), &s.sym_divide(&r)?))
            })
        }
        Mutant::ConverseOrder => {
            mk("mutant-converse-order", "(R·S)° = R°·S°", vec![var("R", rel(A, A)), var("S", rel(A, A))], |i| {
                let (r, s) = (i.rel("R"), i.rel("S"));
                Ok(eq(&r.compose(&s)?.converse(), &r.converse().compose(&s.converse())?))
            })
        }
        Mutant::Associativity => mk(
            "mutant-associativity",
            "(S/R)/Q = S/(R/Q)",
            vec![var("R", rel(A, A)), var("S", rel(A, A)), var("Q", rel(A, A))],
            |i| {
                let (r, s, q) = (i.rel("R"), i.rel("S"), i.rel("Q"));
                Ok(eq(&s.sym_divide(&r)?.sym_divide(&q)?, &s.sym_divide(&r.sym_divide(&q)?)?))
            },
        ),
    }
}
