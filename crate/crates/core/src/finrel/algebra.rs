use serde::Serialize;

use super::rel::check_same;
use super::{Carrier, Fun, Predicate, Rel, RelError};

/// The flags reported by [`Rel::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub entire: bool,
    pub simple: bool,
    pub surjective: bool,
    pub injective: bool,
    pub function: bool,
    pub difunctional: bool,
}

impl Rel {
    /// `R \ S`: the largest `X` with `R·X ⊆ S`. Here `self = R : A <- B`, `s : A <- C`.
    pub fn left_divide(&self, s: &Rel) -> Result<Rel, RelError> {
        check_same("left division", self.tgt(), s.tgt())?;
        Ok(self.converse().compose(&s.complement())?.complement())
    }

    /// `S / R`: the largest `X` with `X·R ⊆ S`. Here `self = S : C <- A`, `r : B <- A`.
    pub fn right_divide(&self, r: &Rel) -> Result<Rel, RelError> {
        check_same("right division", self.src(), r.src())?;
        Ok(self.complement().compose(&r.converse())?.complement())
    }

    /// Symmetric division `S / R : B <- C` for `self = S : A <- C`, `r : A <- B`:
    /// `b` and `c` are related when their image sets coincide.
    pub fn sym_divide(&self, r: &Rel) -> Result<Rel, RelError> {
        check_same("symmetric division", self.tgt(), r.tgt())?;
        let sc = self.converse();
        let rc = r.converse();
        Ok(Rel::from_fn(self.src(), r.src(), |b, c| rc.row(b) == sc.row(c)))
    }

    /// `S ↾ R = S ∩ R/S°` for `self = S : A <- B` and an endo `r` on `A`.
    pub fn shrink(&self, r: &Rel) -> Result<Rel, RelError> {
        check_same("shrink", r.src(), r.tgt())?;
        check_same("shrink", self.tgt(), r.src())?;
        self.meet(&r.right_divide(&self.converse())?)
    }

    /// `S ↓ R = ∈\S ∩ (∈°·R)/S°`, a relation into the powerset of `A`.
    pub fn thin(&self, r: &Rel, bound: usize) -> Result<Rel, RelError> {
        check_same("thin", r.src(), r.tgt())?;
        check_same("thin", self.tgt(), r.src())?;
        let mem = Rel::membership(self.tgt(), bound)?;
        let lower = mem.left_divide(self)?;
        let bounded = mem.converse().compose(r)?.right_divide(&self.converse())?;
        lower.meet(&bounded)
    }

    /// `p?`, the fragment of the identity where `p` holds.
    pub fn coreflexive(p: &Predicate) -> Rel {
        let a = p.carrier();
        let mut r = Rel::empty(a, a);
        for x in 0..a.len() {
            if p.holds(x) {
                r.set(x, x);
            }
        }
        r
    }

    /// Inverse of [`Rel::coreflexive`]; fails unless `self ⊆ id`.
    pub fn predicate_of(&self) -> Result<Predicate, RelError> {
        if !self.is_coreflexive() {
            return Err(RelError::NotCoreflexive(self.src().describe()));
        }
        Ok(Predicate::from_fn(self.src(), |x| self.get(x, x)))
    }

    /// `δR = id ∩ R°·R`.
    pub fn domain(&self) -> Rel {
        let a = self.src();
        let mut used = vec![0u64; a.len().div_ceil(64)];
        for t in 0..self.tgt().len() {
            for (u, &w) in used.iter_mut().zip(self.row(t)) {
                *u |= w;
            }
        }
        let mut r = Rel::empty(a, a);
        for x in (0..a.len()).filter(|&x| used[x / 64] >> (x % 64) & 1 == 1) {
            r.set(x, x);
        }
        r
    }

    /// `ρR = id ∩ R·R°`.
    pub fn range(&self) -> Rel {
        let b = self.tgt();
        Rel::from_fn(b, b, |x, y| x == y && !self.row_is_empty(x))
    }

    /// `ΛR`, mapping each source to its image set in the powerset of the target.
    pub fn power_transpose(&self, bound: usize) -> Result<Fun, RelError> {
        let pa = Carrier::power(self.tgt(), bound)?;
        let conv = self.converse();
        Fun::from_fn(self.src(), &pa, |x| conv.row_indices(x).map(|t| 1usize << t).sum())
    }

    /// `∈ : A <- PA`.
    pub fn membership(a: &Carrier, bound: usize) -> Result<Rel, RelError> {
        let pa = Carrier::power(a, bound)?;
        Ok(Rel::from_fn(&pa, a, |x, set| set >> x & 1 == 1))
    }

    pub fn is_entire(&self) -> bool {
        let mut covered = vec![false; self.src().len()];
        for (_, s) in self.pairs() {
            covered[s] = true;
        }
        covered.into_iter().all(|c| c)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = vec![false; self.src().len()];
        self.pairs().all(|(_, s)| !std::mem::replace(&mut seen[s], true))
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.tgt().len()).all(|t| !self.row_is_empty(t))
    }

    pub fn is_injective(&self) -> bool {
        (0..self.tgt().len()).all(|t| self.row_indices(t).nth(1).is_none())
    }

    pub fn is_function(&self) -> bool {
        self.is_entire() && self.is_simple()
    }

    /// `R·R°·R ⊆ R`.
    pub fn is_difunctional(&self) -> bool {
        let rrr = self.compose(&self.converse()).and_then(|x| x.compose(self)).expect("typed by construction");
        self.includes(&rrr).expect("same carriers")
    }

    pub fn classify(&self) -> Classification {
        Classification {
            entire: self.is_entire(),
            simple: self.is_simple(),
            surjective: self.is_surjective(),
            injective: self.is_injective(),
            function: self.is_function(),
            difunctional: self.is_difunctional(),
        }
    }

    pub fn is_endo(&self) -> bool {
        self.src() == self.tgt()
    }

    pub fn is_coreflexive(&self) -> bool {
        self.is_endo() && self.pairs().all(|(t, s)| t == s)
    }

    pub fn is_reflexive(&self) -> bool {
        self.is_endo() && (0..self.src().len()).all(|x| self.get(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_endo() && self.pairs().all(|(t, s)| self.get(s, t))
    }

    pub fn is_transitive(&self) -> bool {
        self.is_endo() && self.includes(&self.compose(self).expect("endo")).expect("endo")
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_preorder() && self.is_symmetric()
    }

    /// The injectivity preorder extended to relations: `R ≤ S ⟺ S°·S ⊆ R°·R`.
    pub fn inj_leq(&self, s: &Rel) -> Result<bool, RelError> {
        check_same("injectivity order", self.src(), s.src())?;
        let rr = self.converse().compose(self)?;
        let ss = s.converse().compose(s)?;
        rr.includes(&ss)
    }

    /// `f°·f`, the equivalence "same image".
    pub fn kernel(f: &Fun) -> Rel {
        Rel::from_fn(f.src(), f.src(), |x, y| f.apply(x) == f.apply(y))
    }

    pub fn bang(a: &Carrier) -> Rel {
        Fun::bang(a).rel()
    }

    pub fn const_fun(src: &Carrier, tgt: &Carrier, k: usize) -> Result<Rel, RelError> {
        Ok(Fun::constant(src, tgt, k)?.rel())
    }

    /// `π1 : A <- A×B`.
    pub fn proj1(a: &Carrier, b: &Carrier) -> Rel {
        let p = Carrier::product(a, b);
        Rel::from_fn(&p, a, |x, ab| ab / b.len() == x)
    }

    /// `π2 : B <- A×B`.
    pub fn proj2(a: &Carrier, b: &Carrier) -> Rel {
        let p = Carrier::product(a, b);
        Rel::from_fn(&p, b, |y, ab| ab % b.len() == y)
    }

    /// `R △ S : B×C <- A` for `self = R : B <- A` and `s : C <- A`.
    pub fn pairing(&self, s: &Rel) -> Result<Rel, RelError> {
        check_same("pairing", self.src(), s.src())?;
        let (b, c) = (self.tgt(), s.tgt());
        let p = Carrier::product(b, c);
        Ok(Rel::from_fn(self.src(), &p, |yz, x| self.get(yz / c.len(), x) && s.get(yz % c.len(), x)))
    }

    /// `R × S : B×D <- A×C`.
    pub fn product(&self, s: &Rel) -> Rel {
        let src = Carrier::product(self.src(), s.src());
        let tgt = Carrier::product(self.tgt(), s.tgt());
        let (nc, nd) = (s.src().len(), s.tgt().len());
        let mut out = Rel::empty(&src, &tgt);
        for (b, a) in self.pairs() {
            for (d, c) in s.pairs() {
                out.set(b * nd + d, a * nc + c);
            }
        }
        out
    }

    /// `i1 : A+B <- A`.
    pub fn inj1(a: &Carrier, b: &Carrier) -> Rel {
        let s = Carrier::sum(a, b);
        Rel::from_fn(a, &s, |t, x| t == x)
    }

    /// `i2 : A+B <- B`.
    pub fn inj2(a: &Carrier, b: &Carrier) -> Rel {
        let s = Carrier::sum(a, b);
        Rel::from_fn(b, &s, |t, y| t == a.len() + y)
    }

    /// `R + S : B+D <- A+C`.
    pub fn sum(&self, s: &Rel) -> Rel {
        let src = Carrier::sum(self.src(), s.src());
        let tgt = Carrier::sum(self.tgt(), s.tgt());
        let (na, nb) = (self.src().len(), self.tgt().len());
        let mut out = Rel::empty(&src, &tgt);
        for (t, x) in self.pairs() {
            out.set(t, x);
        }
        for (t, x) in s.pairs() {
            out.set(nb + t, na + x);
        }
        out
    }

    /// Junction `[R, S] : C <- A+B`.
    pub fn junc(&self, s: &Rel) -> Result<Rel, RelError> {
        check_same("junction", self.tgt(), s.tgt())?;
        let src = Carrier::sum(self.src(), s.src());
        let na = self.src().len();
        let mut out = Rel::empty(&src, self.tgt());
        for (t, x) in self.pairs() {
            out.set(t, x);
        }
        for (t, y) in s.pairs() {
            out.set(t, na + y);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::DEFAULT_POWER_BOUND;
    use super::*;

    fn rel(src: &Carrier, tgt: &Carrier, pairs: &[(usize, usize)]) -> Rel {
        Rel::from_pairs(src, tgt, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn identity_is_unit_of_divisions() {
        let a = Carrier::numbered("A", 2);
        let c = Carrier::numbered("C", 3);
        let s = rel(&c, &a, &[(0, 1), (1, 2)]);
        assert_eq!(Rel::id(&a).left_divide(&s).unwrap(), s);
        assert_eq!(s.right_divide(&Rel::id(&c)).unwrap(), s);
    }

    #[test]
    fn shrink_with_top_is_identity() {
        let a = Carrier::numbered("A", 2);
        let b = Carrier::numbered("B", 3);
        let s = rel(&b, &a, &[(0, 0), (1, 0), (1, 2)]);
        assert_eq!(s.shrink(&Rel::top(&a, &a)).unwrap(), s);
    }

    #[test]
    fn shrink_drops_incomparable_outputs() {
        let a = Carrier::numbered("A", 1);
        let b = Carrier::numbered("B", 2);
        let s = rel(&a, &b, &[(0, 0), (1, 0)]);
        assert!(s.shrink(&Rel::id(&b)).unwrap().is_empty());
    }

    #[test]
    fn coreflexive_round_trip() {
        let n = Carrier::range("N", 3);
        let even = Predicate::from_fn(&n, |x| x % 2 == 0);
        let c = Rel::coreflexive(&even);
        assert_eq!(c.pairs().collect::<Vec<_>>(), vec![(0, 0), (2, 2)]);
        assert_eq!(c.predicate_of().unwrap(), even);
        assert!(Rel::top(&n, &n).predicate_of().is_err());
    }

    #[test]
    fn functional_transpose_is_singleton() {
        let a = Carrier::numbered("A", 3);
        let b = Carrier::numbered("B", 2);
        let f = Fun::new(&a, &b, vec![1, 0, 1]).unwrap();
        let lf = f.rel().power_transpose(DEFAULT_POWER_BOUND).unwrap();
        assert_eq!(lf.map(), &[2, 1, 2]);
    }

    #[test]
    fn membership_cancels_transpose() {
        let a = Carrier::numbered("A", 3);
        let b = Carrier::numbered("B", 3);
        let r = rel(&a, &b, &[(0, 0), (2, 0), (1, 2)]);
        let lr = r.power_transpose(DEFAULT_POWER_BOUND).unwrap();
        let mem = Rel::membership(&b, DEFAULT_POWER_BOUND).unwrap();
        assert_eq!(mem.compose(&lr.rel()).unwrap(), r);
    }

    #[test]
    fn bang_is_onto_unit() {
        let a = Carrier::numbered("A", 4);
        let flags = Rel::bang(&a).classify();
        assert!(flags.entire && flags.simple && flags.surjective);
    }

    #[test]
    fn kernel_extremes() {
        let a = Carrier::numbered("A", 3);
        let k = Fun::constant(&a, &a, 0).unwrap();
        assert_eq!(Rel::kernel(&k), Rel::top(&a, &a));
        assert_eq!(Rel::kernel(&Fun::id(&a)), Rel::id(&a));
    }

    #[test]
    fn pairing_of_functions() {
        let a = Carrier::numbered("A", 2);
        let f = Fun::new(&a, &a, vec![1, 0]).unwrap();
        let g = Fun::id(&a);
        let fg = Fun::from_rel(&f.rel().pairing(&g.rel()).unwrap()).unwrap();
        // (f x, g x) at index (f x)*2 + g x
        assert_eq!(fg.map(), &[2, 1]);
    }

    #[test]
    fn junction_cancels_injections() {
        let a = Carrier::numbered("A", 2);
        let b = Carrier::numbered("B", 2);
        let c = Carrier::numbered("C", 2);
        let f = rel(&a, &c, &[(1, 0), (0, 1)]);
        let g = rel(&b, &c, &[(0, 0), (0, 1)]);
        let j = f.junc(&g).unwrap();
        assert_eq!(j.compose(&Rel::inj1(&a, &b)).unwrap(), f);
        assert_eq!(j.compose(&Rel::inj2(&a, &b)).unwrap(), g);
    }
}
