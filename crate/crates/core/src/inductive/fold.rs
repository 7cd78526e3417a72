use serde::Serialize;

use super::{FoldError, Layer, Mu};
use crate::finrel::{check_same, Fun, Rel};

/// Visits every way of picking one element from each of `choices`.
fn for_each_combo(choices: &[&[usize]], f: &mut impl FnMut(&[usize])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut pos = vec![0usize; choices.len()];
    let mut pick: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&pick);
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            pos[k] += 1;
            if pos[k] < choices[k].len() {
                pick[k] = choices[k][pos[k]];
                break;
            }
            pos[k] = 0;
            pick[k] = choices[k][0];
        }
    }
}

/// `⟨R⟩ : A <- μ` for `alg = R : A <- F A`, by structural recursion: the image
/// of a term collects `R`'s images of every way of replacing its children by
/// their own images.
pub fn cata(mu: &Mu, alg: &Rel) -> Result<Rel, FoldError> {
    let a = alg.tgt().clone();
    let fa = mu.base().apply(&a);
    check_same("fold", alg.src(), &fa)?;
    let alg_conv = alg.converse();
    let n = a.len();
    let mut images: Vec<Vec<usize>> = Vec::with_capacity(mu.len());
    let mut out = Rel::empty(mu.carrier(), &a);
    let mut seen = vec![false; n];
    for t in 0..mu.len() {
        let layer = mu.layer(t);
        let kids = layer.recs();
        let choices: Vec<&[usize]> = kids.iter().map(|&c| images[c].as_slice()).collect();
        seen.iter_mut().for_each(|s| *s = false);
        for_each_combo(&choices, &mut |pick| {
            let col = mu.base().encode(n, &layer.with_recs(pick));
            for y in alg_conv.row_indices(col) {
                seen[y] = true;
            }
        });
        let img: Vec<usize> = (0..n).filter(|&y| seen[y]).collect();
        for &y in &img {
            out.set(y, t);
        }
        images.push(img);
    }
    Ok(out)
}

/// `⟨f⟩` for a total algebra, as a function.
pub fn cata_fun(mu: &Mu, alg: &Fun) -> Result<Fun, FoldError> {
    let a = alg.tgt().clone();
    let fa = mu.base().apply(&a);
    check_same("fold", alg.src(), &fa)?;
    let mut map: Vec<usize> = Vec::with_capacity(mu.len());
    for t in 0..mu.len() {
        let layer = mu.layer(t).map_recs(&|c| map[c]);
        map.push(alg.apply(mu.base().encode(a.len(), &layer)));
    }
    Ok(Fun::new(mu.carrier(), &a, map)?)
}

/// `⦅S⦆ = ⟨S°⟩°` for `coalg = S : F A <- A`.
pub fn ana_conv(mu: &Mu, coalg: &Rel) -> Result<Rel, FoldError> {
    Ok(cata(mu, &coalg.converse())?.converse())
}

/// Result of [`hylo`]: the relation plus the sources whose unfolding leaves
/// the bounded intermediate carrier (or never bottoms out).
#[derive(Clone, Debug)]
pub struct Hylo {
    pub rel: Rel,
    pub overflow: Vec<usize>,
}

impl Hylo {
    pub fn is_exact(&self) -> bool {
        self.overflow.is_empty()
    }
}

/// `⟨alg⟩·⦅coalg⦆` through the bounded carrier `mu`.
pub fn hylo(mu: &Mu, alg: &Rel, coalg: &Rel) -> Result<Hylo, FoldError> {
    let ana = ana_conv(mu, coalg)?;
    let rel = cata(mu, alg)?.compose(&ana)?;
    let a = coalg.src();
    let unfolds = ana.converse();
    let trees: Vec<Vec<usize>> = (0..a.len()).map(|x| unfolds.row_indices(x).collect()).collect();
    let coalg_conv = coalg.converse();
    let steps: Vec<Vec<Layer>> =
        (0..a.len()).map(|x| coalg_conv.row_indices(x).map(|y| mu.base().decode(a.len(), y)).collect()).collect();
    let mut leaks = vec![false; a.len()];
    for x in 0..a.len() {
        'steps: for layer in &steps[x] {
            let kids = layer.recs();
            if kids.iter().any(|&k| trees[k].is_empty()) {
                leaks[x] = true;
                break;
            }
            let choices: Vec<&[usize]> = kids.iter().map(|&k| trees[k].as_slice()).collect();
            let mut escaped = false;
            for_each_combo(&choices, &mut |pick| {
                escaped |= mu.lookup(&layer.with_recs(pick)).is_none();
            });
            if escaped {
                leaks[x] = true;
                break 'steps;
            }
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..a.len() {
            if !leaks[x] && steps[x].iter().any(|l| l.recs().iter().any(|&k| leaks[k])) {
                leaks[x] = true;
                changed = true;
            }
        }
    }
    let overflow = (0..a.len()).filter(|&x| leaks[x]).collect();
    Ok(Hylo { rel, overflow })
}

/// Outcome of checking `S·⟨R⟩ = ⟨Q⟩ ⟸ S·R = Q·F S` on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionVerdict {
    pub condition: bool,
    pub conclusion: bool,
    /// Condition held but conclusion failed: a kernel bug, never a valid outcome.
    pub alarm: bool,
    pub witness: Option<String>,
}

/// `s : B <- A`, `r : A <- F A`, `q : B <- F B`.
pub fn check_fusion(mu: &Mu, s: &Rel, r: &Rel, q: &Rel) -> Result<FusionVerdict, FoldError> {
    let lhs = s.compose(r)?;
    let rhs = q.compose(&mu.base().map(s))?;
    let condition = lhs == rhs;
    let folded = s.compose(&cata(mu, r)?)?;
    let direct = cata(mu, q)?;
    let conclusion = folded == direct;
    let witness = if conclusion {
        None
    } else {
        folded
            .missing_from(&direct)
            .or_else(|| direct.missing_from(&folded))
            .map(|(b, t)| format!("at term {}: {} differs", mu.label(t), s.tgt().elem(b)))
    };
    Ok(FusionVerdict { condition, conclusion, alarm: condition && !conclusion, witness })
}
