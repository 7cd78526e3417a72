//! Metaphors `f/g = g°·f`, metaphorisms, weakest preconditions, congruences,
//! divide-and-conquer factorizations, and certifiers for the refinement results.

mod certify;
mod checklist;

pub use certify::{check_converse_of_function, check_greedy_shrink, check_rep_changer};
pub use checklist::{checklist, derive_z, divide_coalgebra, ChecklistInput, ChecklistReport, DerivedZ};

use serde::Serialize;

use crate::finrel::{check_same, Carrier, Fun, Predicate, Rel, RelError};
use crate::inductive::{FoldError, Functor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetaphorError {
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Fold(#[from] FoldError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// One named check inside a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Condition {
    pub fn new(name: impl Into<String>, holds: bool, witness: Option<String>) -> Self {
        Condition { name: name.into(), holds, witness: if holds { None } else { witness } }
    }

    /// `lhs = rhs`, with the first differing pair as witness.
    pub fn equal(name: impl Into<String>, lhs: &Rel, rhs: &Rel) -> Self {
        let witness = extra_pair(lhs, rhs, "left").or_else(|| extra_pair(rhs, lhs, "right"));
        Condition::new(name, witness.is_none(), witness)
    }

    /// `lhs ≤ rhs` in the injectivity order, with two inputs `rhs` identifies
    /// but `lhs` does not as witness.
    pub fn inj_leq(name: impl Into<String>, lhs: &Rel, rhs: &Rel) -> Result<Self, RelError> {
        let holds = lhs.inj_leq(rhs)?;
        let witness = if holds {
            None
        } else {
            let kl = lhs.converse().compose(lhs)?;
            let kr = rhs.converse().compose(rhs)?;
            kl.missing_from(&kr).map(|(x, y)| {
                let src = lhs.src();
                format!("{} and {} are identified on the right only", src.elem(x), src.elem(y))
            })
        };
        Ok(Condition::new(name, holds, witness))
    }

    /// `lhs ⊆ rhs`.
    pub fn included(name: impl Into<String>, lhs: &Rel, rhs: &Rel) -> Self {
        let witness = extra_pair(lhs, rhs, "left");
        Condition::new(name, witness.is_none(), witness)
    }
}

fn extra_pair(a: &Rel, b: &Rel, side: &str) -> Option<String> {
    b.missing_from(a).map(|(t, s)| format!("{} holds only on the {side}", a.label_pair(t, s)))
}

/// Side conditions plus conclusion of an implication-shaped result, evaluated
/// on one bounded instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub bound: String,
    pub conditions: Vec<Condition>,
    pub conclusion: Condition,
    /// Every condition held yet the conclusion failed.
    pub alarm: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(
        check: &str,
        bound: String,
        conditions: Vec<Condition>,
        conclusion: Condition,
        note: Option<String>,
    ) -> Self {
        let alarm = conditions.iter().all(|c| c.holds) && !conclusion.holds;
        Verdict { check: check.into(), bound, conditions, conclusion, alarm, note }
    }

    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.holds) && self.conclusion.holds
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// `f/g = g°·f : T <- V` for `f : A <- V`, `g : A <- T`.
pub fn metaphor(f: &Fun, g: &Fun) -> Result<Rel, RelError> {
    check_same("metaphor", f.tgt(), g.tgt())?;
    g.rel().converse().compose(&f.rel())
}

/// `wp(f, q) = q·f`, the unique `p` with `f·p? = q?·f`.
pub fn wp(f: &Fun, q: &Predicate) -> Result<Predicate, RelError> {
    q.after(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Plain,
    /// `(f/g)↾R` with `R` an endo on the tenor.
    Shrunk(Rel),
    /// `q?·(f/g)` with `q` on the tenor.
    Post(Predicate),
}

/// A metaphor between vehicle `V` (source of `f`) and tenor `T` (source of `g`),
/// optionally narrowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metaphorism {
    pub f: Fun,
    pub g: Fun,
    pub shape: Shape,
}

impl Metaphorism {
    pub fn plain(f: &Fun, g: &Fun) -> Result<Self, RelError> {
        check_same("metaphorism", f.tgt(), g.tgt())?;
        Ok(Metaphorism { f: f.clone(), g: g.clone(), shape: Shape::Plain })
    }

    pub fn shrunk(f: &Fun, g: &Fun, r: &Rel) -> Result<Self, RelError> {
        let m = Self::plain(f, g)?;
        check_same("metaphorism optimisation", r.src(), g.src())?;
        check_same("metaphorism optimisation", r.tgt(), g.src())?;
        Ok(Metaphorism { shape: Shape::Shrunk(r.clone()), ..m })
    }

    pub fn post(f: &Fun, g: &Fun, q: &Predicate) -> Result<Self, RelError> {
        let m = Self::plain(f, g)?;
        check_same("metaphorism postcondition", q.carrier(), g.src())?;
        Ok(Metaphorism { shape: Shape::Post(q.clone()), ..m })
    }

    pub fn vehicle(&self) -> &Carrier {
        self.f.src()
    }

    pub fn tenor(&self) -> &Carrier {
        self.g.src()
    }

    pub fn eval(&self) -> Result<Rel, RelError> {
        self.narrow(metaphor(&self.f, &self.g)?)
    }

    /// Applies the shape's narrowing to some `T <- X`.
    fn narrow(&self, m: Rel) -> Result<Rel, RelError> {
        match &self.shape {
            Shape::Plain => Ok(m),
            Shape::Shrunk(r) => m.shrink(r),
            Shape::Post(q) => Rel::coreflexive(q).compose(&m),
        }
    }
}

/// A metaphorism split as `left·right`, with the recombination checked.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub left: Rel,
    pub right: Rel,
    pub exact: Condition,
}

fn require_surjective(h: &Fun) -> Result<(), MetaphorError> {
    if h.is_surjective() {
        Ok(())
    } else {
        Err(MetaphorError::Precondition(format!("{} -> {} is not surjective", h.src().describe(), h.tgt().describe())))
    }
}

/// Conquer-side factorization through a surjection `h : V <- W`:
/// `(f/g)↾R = ((f·h)/g ↾ R)·h°`, and `q?·(f/g) = q?·((f·h)/g)·h°`.
pub fn factor_conquer(m: &Metaphorism, h: &Fun) -> Result<Factorization, MetaphorError> {
    require_surjective(h)?;
    check_same("conquer factor", h.tgt(), m.vehicle())?;
    let fh = m.f.after(h)?;
    let left = m.narrow(metaphor(&fh, &m.g)?)?;
    let right = h.rel().converse();
    let exact = Condition::equal("recombines", &left.compose(&right)?, &m.eval()?);
    Ok(Factorization { left, right, exact })
}

/// Divide-side factorization through a surjection `h : T <- W`:
/// `(f/g)↾R = h·(f/(g·h) ∩ h°·(R/g)·f)`, and `q?·(f/g) = h·p?·(f/(g·h))` with `p = q·h`.
pub fn factor_divide(m: &Metaphorism, h: &Fun) -> Result<Factorization, MetaphorError> {
    require_surjective(h)?;
    check_same("divide factor", h.tgt(), m.tenor())?;
    let base = metaphor(&m.f, &m.g.after(h)?)?;
    let right = match &m.shape {
        Shape::Plain => base,
        Shape::Shrunk(r) => {
            let chosen = h.rel().converse().compose(&r.right_divide(&m.g.rel())?)?.compose(&m.f.rel())?;
            base.meet(&chosen)?
        }
        Shape::Post(q) => Rel::coreflexive(&wp(h, q)?).compose(&base)?,
    };
    let left = h.rel();
    let exact = Condition::equal("recombines", &left.compose(&right)?, &m.eval()?);
    Ok(Factorization { left, right, exact })
}

/// The three equivalent congruence statements for an equivalence `R` and an
/// algebra `h : A <- F A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceVerdict {
    /// `h·F R ⊆ R·h`.
    pub absorbs: Condition,
    /// `R·h = R·h·F R`.
    pub stable: Condition,
    /// `f·h ≤ F f` on the domain of `h`, when `R` is the kernel of `f`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Condition>,
    /// The statements disagree although `h` is a function.
    pub alarm: bool,
}

impl CongruenceVerdict {
    pub fn holds(&self) -> bool {
        self.absorbs.holds
    }
}

pub fn check_congruence(
    r: &Rel,
    h: &Rel,
    base: &Functor,
    kernel_of: Option<&Fun>,
) -> Result<CongruenceVerdict, MetaphorError> {
    if !r.is_equivalence() {
        return Err(MetaphorError::Precondition(format!("relation on {} is not an equivalence", r.src().describe())));
    }
    check_same("congruence", h.tgt(), r.src())?;
    let fr = base.map(r);
    let rh = r.compose(h)?;
    let absorbs = Condition::included("h.F R <= R.h", &h.compose(&fr)?, &rh);
    let stable = Condition::equal("R.h = R.h.F R", &rh, &rh.compose(&fr)?);
    let kernel = match kernel_of {
        None => None,
        Some(f) => {
            if Rel::kernel(f) != *r {
                return Err(MetaphorError::Precondition("relation is not the kernel of the given function".into()));
            }
            let lhs = f.rel().compose(h)?;
            let rhs = base.map_fun(f).rel().compose(&h.domain())?;
            Some(Condition::inj_leq("f.h <= F f", &lhs, &rhs)?)
        }
    };
    let agree = absorbs.holds == stable.holds && kernel.as_ref().is_none_or(|k| k.holds == absorbs.holds);
    let alarm = !agree && h.is_function();
    Ok(CongruenceVerdict { absorbs, stable, kernel, alarm })
}

/// [`check_congruence`] for `R = f°·f` and a simple `h`, evaluated pointwise by
/// grouping `F A` on `F f`; scales to carriers where `F R` is too large to
/// hold as a matrix.
pub fn check_kernel_congruence(f: &Fun, h: &Rel, base: &Functor) -> Result<CongruenceVerdict, MetaphorError> {
    check_same("congruence", h.tgt(), f.src())?;
    if !h.is_simple() {
        return Err(MetaphorError::Precondition("algebra is not simple".into()));
    }
    let (n, m) = (f.src().len(), f.tgt().len());
    let fa = h.src();
    let hc = h.converse();
    // class of h x under f, when h x is defined
    let cls: Vec<Option<usize>> = (0..fa.len()).map(|x| hc.row_indices(x).next().map(|a| f.apply(a))).collect();
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..fa.len() {
        groups.entry(base.encode(m, &base.decode(n, x).map_recs(&|c| f.apply(c)))).or_default().push(x);
    }
    let mut absorbs = None;
    let mut stable = None;
    let mut kernel = None;
    for xs in groups.values() {
        let defined: Vec<usize> = xs.iter().copied().filter(|&x| cls[x].is_some()).collect();
        let classes: std::collections::BTreeSet<usize> = defined.iter().filter_map(|&x| cls[x]).collect();
        if absorbs.is_none() && !defined.is_empty() && (defined.len() < xs.len() || classes.len() > 1) {
            let x = xs.iter().copied().find(|&x| cls[x] != cls[defined[0]]).expect("group is not uniform");
            absorbs =
                Some(format!("{} and {} agree under F f but h does not respect that", fa.elem(defined[0]), fa.elem(x)));
        }
        if stable.is_none() {
            if let Some(&x) =
                xs.iter().find(|&&x| cls[x].map_or(!classes.is_empty(), |c| classes.len() > 1 || !classes.contains(&c)))
            {
                stable = Some(format!("R.h and R.h.F R differ at {}", fa.elem(x)));
            }
        }
        if kernel.is_none() && classes.len() > 1 {
            let x = defined[0];
            let y = defined.iter().copied().find(|&y| cls[y] != cls[x]).expect("two classes");
            kernel = Some(format!("{} and {} are identified on the right only", fa.elem(x), fa.elem(y)));
        }
    }
    let absorbs = Condition::new("h.F R <= R.h", absorbs.is_none(), absorbs);
    let stable = Condition::new("R.h = R.h.F R", stable.is_none(), stable);
    let kernel = Condition::new("f.h <= F f", kernel.is_none(), kernel);
    let agree = absorbs.holds == stable.holds && kernel.holds == absorbs.holds;
    let alarm = !agree && h.is_entire();
    Ok(CongruenceVerdict { absorbs, stable, kernel: Some(kernel), alarm })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(name: &str, n: usize) -> Carrier {
        Carrier::numbered(name, n)
    }

    #[test]
    fn metaphor_is_symmetric_division() {
        let a = c("A", 2);
        let v = c("V", 3);
        let t = c("T", 3);
        let f = Fun::new(&v, &a, vec![0, 1, 1]).unwrap();
        let g = Fun::new(&t, &a, vec![1, 1, 0]).unwrap();
        let m = metaphor(&f, &g).unwrap();
        assert_eq!(m, f.rel().sym_divide(&g.rel()).unwrap());
        assert_eq!(metaphor(&f, &Fun::id(&a)).unwrap(), f.rel());
    }

    #[test]
    fn wp_of_saturating_successor() {
        let n = Carrier::range("N", 4);
        let succ = Fun::from_fn(&n, &n, |x| (x + 1).min(3)).unwrap();
        let q = Predicate::from_fn(&n, |x| x <= 2);
        let p = wp(&succ, &q).unwrap();
        assert_eq!(p.truth(), [true, true, false, false]);
        let lhs = succ.rel().compose(&Rel::coreflexive(&p)).unwrap();
        let rhs = Rel::coreflexive(&q).compose(&succ.rel()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn top_optimisation_is_plain() {
        let a = c("A", 2);
        let v = c("V", 3);
        let f = Fun::new(&v, &a, vec![0, 1, 1]).unwrap();
        let g = Fun::new(&v, &a, vec![1, 0, 1]).unwrap();
        let plain = Metaphorism::plain(&f, &g).unwrap().eval().unwrap();
        let top = Metaphorism::shrunk(&f, &g, &Rel::top(&v, &v)).unwrap().eval().unwrap();
        assert_eq!(plain, top);
    }

    #[test]
    fn identity_factorizations() {
        let a = c("A", 2);
        let v = c("V", 3);
        let f = Fun::new(&v, &a, vec![0, 1, 1]).unwrap();
        let r = Rel::from_pairs(&v, &v, [(0, 0), (1, 1), (2, 2), (0, 1)]).unwrap();
        let m = Metaphorism::shrunk(&f, &f, &r).unwrap();
        let fc = factor_conquer(&m, &Fun::id(&v)).unwrap();
        assert!(fc.exact.holds);
        assert_eq!(fc.left, m.eval().unwrap());
        let fd = factor_divide(&m, &Fun::id(&v)).unwrap();
        assert!(fd.exact.holds);
        assert_eq!(fd.right, m.eval().unwrap());
    }

    #[test]
    fn factorization_needs_a_surjection() {
        let v = c("V", 2);
        let f = Fun::id(&v);
        let m = Metaphorism::plain(&f, &f).unwrap();
        let h = Fun::constant(&v, &v, 0).unwrap();
        assert!(matches!(factor_conquer(&m, &h), Err(MetaphorError::Precondition(_))));
    }

    #[test]
    fn identity_is_always_a_congruence() {
        let a = Carrier::range("A", 2);
        let x = c("X", 2);
        let base = Functor::list(&a);
        let h = Fun::from_fn(&base.apply(&x), &x, |i| i % 2).unwrap();
        let v = check_congruence(&Rel::id(&x), &h.rel(), &base, Some(&Fun::id(&x))).unwrap();
        assert!(v.absorbs.holds && v.stable.holds && v.kernel.unwrap().holds && !v.alarm);
    }

    #[test]
    fn non_equivalence_is_refused() {
        let x = c("X", 2);
        let base = Functor::list(&Carrier::range("A", 1));
        let h = Fun::constant(&base.apply(&x), &x, 0).unwrap();
        let r = Rel::from_pairs(&x, &x, [(0, 1)]).unwrap();
        assert!(check_congruence(&r, &h.rel(), &base, None).is_err());
    }
}
