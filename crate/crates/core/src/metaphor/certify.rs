use super::{Condition, MetaphorError, Verdict};
use crate::finrel::{Fun, Rel};
use crate::inductive::{cata, cata_fun, Mu};

fn bound_of(mu: &Mu) -> String {
    format!("{} terms of {}", mu.len(), mu.carrier().name())
}

/// Representation changer `(k·⟨y⟩)/⟨y⟩` refined by `⟨x⟩`, given `z` with
/// `k·y = z·F k`.
///
/// `k : N <- N`, `y, z : N <- F N`, `x : μF <- F μF` (a relation, since
/// constructors are partial on a bounded carrier). The conclusion is checked
/// as `⟨x⟩ ⊆ ⟨y⟩°·k·⟨y⟩`, which says `⟨y⟩·⟨x⟩ = k·⟨y⟩` wherever `⟨x⟩` is defined.
pub fn check_rep_changer(mu: &Mu, k: &Fun, y: &Fun, z: &Fun, x: &Rel) -> Result<Verdict, MetaphorError> {
    let f = mu.base();
    let fusion = Condition::equal("k.y = z.F k", &k.rel().compose(&y.rel())?, &z.rel().compose(&f.map_fun(k).rel())?);
    let yf = cata_fun(mu, y)?;
    let yfold = yf.rel();
    let step = Condition::included(
        "x <= (z.F<y>)/<y>",
        x,
        &yfold.converse().compose(&z.rel())?.compose(&f.map_fun(&yf).rel())?,
    );
    let xfold = cata(mu, x)?;
    let spec = yfold.converse().compose(&k.rel())?.compose(&yfold)?;
    let conclusion = Condition::included("<x> <= (k.<y>)/<y>", &xfold, &spec);
    let undefined = (0..mu.len()).filter(|&t| xfold.converse().row_is_empty(t)).count();
    let note = (undefined > 0).then(|| format!("<x> leaves the bound on {undefined} terms, which are excluded"));
    Ok(Verdict::new("representation changer", bound_of(mu), vec![fusion, step], conclusion, note))
}

/// `f° = ⟨r⟩` for `f : T <- A` with `T = μF`, provided `r : A <- F A` is
/// surjective and `f·r ⊆ in·F f`.
pub fn check_converse_of_function(mu: &Mu, f: &Fun, r: &Rel) -> Result<Verdict, MetaphorError> {
    let unreached = (0..r.tgt().len()).find(|&a| r.row_is_empty(a));
    let surjective = Condition::new(
        "r surjective",
        unreached.is_none(),
        unreached.map(|a| format!("{} is not produced by r", r.tgt().elem(a))),
    );
    // pointwise, since in·F f is a partial function: every r-step must be
    // mirrored by a constructor applied to the f-images
    let base = mu.base();
    let n = r.tgt().len();
    let mismatch =
        r.pairs().find(|&(a, x)| mu.lookup(&base.decode(n, x).map_recs(&|c| f.apply(c))) != Some(f.apply(a)));
    let inclusion = Condition::new(
        "f.r <= in.F f",
        mismatch.is_none(),
        mismatch.map(|(a, x)| {
            format!(
                "r sends {} to {}, whose image is not built from the images of its parts",
                r.src().elem(x),
                r.tgt().elem(a)
            )
        }),
    );
    let conclusion = Condition::equal("f° = <r>", &f.rel().converse(), &cata(mu, r)?);
    Ok(Verdict::new("converse of a function", bound_of(mu), vec![surjective, inclusion], conclusion, None))
}

/// `⟨S↾R⟩ ⊆ ⟨S⟩↾R` for `s : A <- F A` and an endo `r` on `A`, provided `r` is
/// transitive and `S·F R° ⊆ R°·S`.
///
/// Monotonicity is only required of inputs in the domain of `s`: on a bounded
/// carrier `s` is undefined where its result would leave the bound.
pub fn check_greedy_shrink(mu: &Mu, s: &Rel, r: &Rel) -> Result<Verdict, MetaphorError> {
    let rr = r.compose(r)?;
    let transitive = Condition::included("R transitive", &rr, r);
    let rc = r.converse();
    let frc = mu.base().map(&rc);
    let lhs = s.compose(&frc)?.compose(&s.domain())?;
    let rhs = rc.compose(s)?;
    let mono_witness = rhs.missing_from(&lhs).map(|(b, x)| {
        let worse = (0..s.src().len()).find(|&w| s.get(b, w) && frc.get(w, x)).expect("pair comes from some input");
        let fa = s.src();
        format!(
            "{} is at least as good as {}, but nothing it produces is as good as {}",
            fa.elem(x),
            fa.elem(worse),
            s.tgt().elem(b)
        )
    });
    let monotonic = Condition::new("S.F R° <= R°.S", mono_witness.is_none(), mono_witness);
    let greedy = cata(mu, &s.shrink(r)?)?;
    let best = cata(mu, s)?.shrink(r)?;
    let conclusion = Condition::included("<S|R> <= <S>|R", &greedy, &best);
    Ok(Verdict::new(
        "greedy shrinking",
        bound_of(mu),
        vec![transitive, monotonic],
        conclusion,
        Some("monotonicity checked on the domain of S".into()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrel::Carrier;
    use crate::inductive::{Bound, Functor};

    fn lists() -> Mu {
        Mu::new(&Functor::list(&Carrier::range("A", 2)), Bound::depth(3)).unwrap()
    }

    #[test]
    fn identity_changer() {
        let mu = lists();
        let len = Carrier::range("N", 4);
        let fa = mu.base().apply(&len);
        let y = Fun::from_fn(&fa, &len, |i| match mu.base().decode(len.len(), i).recs().first() {
            Some(&l) => (l + 1).min(3),
            None => 0,
        })
        .unwrap();
        let v = check_rep_changer(&mu, &Fun::id(&len), &y, &y, &mu.in_alg()).unwrap();
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn in_is_its_own_converse_fold() {
        let mu = lists();
        let v = check_converse_of_function(&mu, &Fun::id(mu.carrier()), &mu.in_alg()).unwrap();
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn identity_order_is_greedy() {
        let mu = lists();
        let s = mu.in_alg();
        let v = check_greedy_shrink(&mu, &s, &Rel::id(mu.carrier())).unwrap();
        assert!(v.passed() && !v.alarm, "{v:?}");
    }
}
