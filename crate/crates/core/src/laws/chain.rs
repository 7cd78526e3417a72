use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::finrel::{Carrier, Fun, Rel};
use crate::inductive::Functor;
use crate::metaphor::{check_congruence, MetaphorError};

/// Agreement of the three congruence statements over random instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub instances: usize,
    /// Instances where `R` is a congruence for `h`.
    pub congruent: usize,
    pub divergences: usize,
    pub first_divergence: Option<String>,
}

/// Draws `samples` pairs `f : A -> X`, `h : A <- F A` with carriers of size
/// `1..=max_size` over the list, node-tree and leaf-tree bases, and checks
/// that `h·F R ⊆ R·h`, `R·h = R·h·F R` and `f·h ≤ F f` agree for `R = f°·f`.
pub fn congruence_chain(samples: usize, max_size: usize, seed: u64) -> Result<ChainReport, MetaphorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ChainReport { instances: 0, congruent: 0, divergences: 0, first_divergence: None };
    for _ in 0..samples {
        let alphabet = Carrier::numbered("X", rng.gen_range(1..=max_size));
        let base = match rng.gen_range(0..3) {
            0 => Functor::list(&alphabet),
            1 => Functor::node_tree(&alphabet),
            _ => Functor::leaf_tree(&alphabet),
        };
        let a = Carrier::numbered("A", rng.gen_range(1..=max_size));
        let x = Carrier::numbered("B", rng.gen_range(1..=max_size));
        let fa = base.apply(&a);
        let f = Fun::new(&a, &x, (0..a.len()).map(|_| rng.gen_range(0..x.len())).collect())?;
        let h = Fun::new(&fa, &a, (0..fa.len()).map(|_| rng.gen_range(0..a.len())).collect())?;
        let v = check_congruence(&Rel::kernel(&f), &h.rel(), &base, Some(&f))?;
        report.instances += 1;
        let kernel = v.kernel.as_ref().is_some_and(|k| k.holds);
        if v.absorbs.holds {
            report.congruent += 1;
        }
        if v.absorbs.holds != v.stable.holds || v.absorbs.holds != kernel {
            report.divergences += 1;
            report.first_divergence.get_or_insert_with(|| format!("f = {:?}, h = {:?}: {v:?}", f.map(), h.map()));
        }
    }
    Ok(report)
}
