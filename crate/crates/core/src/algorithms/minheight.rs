use std::fmt;

use super::sorting::LTree;
use super::AlgoError;

/// Longest input [`brute_min_height`] will enumerate shapes for.
pub const BRUTE_MAX_LEN: usize = 8;

/// Leaves stand for subtrees of the given height.
pub fn height(t: &LTree) -> usize {
    match t {
        LTree::Leaf(a) => *a,
        LTree::Fork(l, r) => height(l).max(height(r)) + 1,
    }
}

/// A leaf tree seen along its left spine: the innermost leaf, then the right
/// children from the bottom up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spine {
    pub head: usize,
    pub trees: Vec<LTree>,
}

impl Spine {
    pub fn new(head: usize, trees: Vec<LTree>) -> Spine {
        Spine { head, trees }
    }

    pub fn leaves(&self) -> usize {
        1 + self.trees.iter().map(LTree::leaves).sum::<usize>()
    }
}

impl fmt::Display for Spine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<String> = self.trees.iter().map(|t| t.to_string()).collect();
        write!(f, "({}, [{}])", self.head, ts.join(", "))
    }
}

/// `roll(a, [t1..tn]) = fork(...fork(leaf a, t1)..., tn)`.
pub fn roll(s: &Spine) -> LTree {
    s.trees.iter().fold(LTree::Leaf(s.head), |acc, t| LTree::fork(acc, t.clone()))
}

pub fn unroll(t: &LTree) -> Spine {
    let mut trees = Vec::new();
    let mut cur = t;
    while let LTree::Fork(l, r) = cur {
        trees.push((**r).clone());
        cur = l;
    }
    let LTree::Leaf(head) = cur else { unreachable!() };
    trees.reverse();
    Spine { head: *head, trees }
}

/// Leaves of the rolled tree, left to right.
pub fn troll(s: &Spine) -> Vec<usize> {
    let mut out = vec![s.head];
    for t in &s.trees {
        out.extend(t.tips());
    }
    out
}

/// Greedily merges the front of a spine until the first tree is strictly
/// shallower than the next one (after accounting for the new leaf `a`).
pub fn minsplit(a: usize, x: LTree, xs: &[LTree]) -> Vec<LTree> {
    match xs.split_first() {
        None => vec![x],
        Some((y, rest)) => {
            if a.max(height(&x)) < height(y) {
                let mut out = vec![x];
                out.extend_from_slice(xs);
                out
            } else {
                minsplit(a, LTree::fork(x, y.clone()), rest)
            }
        }
    }
}

/// Adds leaf `a` in front of spine `s`, letting [`minsplit`] rebalance.
pub fn add_leaf(a: usize, s: &Spine) -> Spine {
    Spine { head: a, trees: minsplit(a, LTree::Leaf(s.head), &s.trees) }
}

/// The naive alternative: the old head just becomes the first tree.
pub fn add_leaf_naive(a: usize, s: &Spine) -> Spine {
    let mut trees = vec![LTree::Leaf(s.head)];
    trees.extend_from_slice(&s.trees);
    Spine { head: a, trees }
}

/// Height of the rolled spine for each prefix of its trees, longest prefix
/// first and down to the empty one.
pub fn lspinecosts(s: &Spine) -> Vec<usize> {
    let mut costs = Vec::with_capacity(s.trees.len() + 1);
    let mut h = s.head;
    costs.push(h);
    for t in &s.trees {
        h = h.max(height(t)) + 1;
        costs.push(h);
    }
    costs.reverse();
    costs
}

/// `[a1..am] ⊑ [b1..bn]`: `m <= n` and `ai <= bi` pointwise.
pub fn costs_leq(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Folds the list from the right through the spine representation.
pub fn build_min_height_spine(xs: &[usize]) -> Result<Spine, AlgoError> {
    let (&last, init) = xs.split_last().ok_or(AlgoError::EmptyInput("min-height tree"))?;
    Ok(init.iter().rev().fold(Spine::new(last, Vec::new()), |s, &a| add_leaf(a, &s)))
}

pub fn build_min_height(xs: &[usize]) -> Result<LTree, AlgoError> {
    Ok(roll(&build_min_height_spine(xs)?))
}

/// Heights of every tree shape with the given leaves, in enumeration order.
pub fn all_shape_heights(xs: &[usize]) -> Vec<usize> {
    if xs.len() == 1 {
        return vec![xs[0]];
    }
    let mut out = Vec::new();
    for k in 1..xs.len() {
        let left = all_shape_heights(&xs[..k]);
        let right = all_shape_heights(&xs[k..]);
        for &l in &left {
            for &r in &right {
                out.push(l.max(r) + 1);
            }
        }
    }
    out
}

/// Minimum height over all shapes, by enumeration.
pub fn brute_min_height(xs: &[usize]) -> Result<usize, AlgoError> {
    if xs.is_empty() {
        return Err(AlgoError::EmptyInput("min-height oracle"));
    }
    if xs.len() > BRUTE_MAX_LEN {
        return Err(AlgoError::TooLong { what: "min-height oracle", len: xs.len(), max: BRUTE_MAX_LEN });
    }
    Ok(all_shape_heights(xs).into_iter().min().expect("at least one shape"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(a: usize) -> LTree {
        LTree::Leaf(a)
    }

    #[test]
    fn heights() {
        assert_eq!(height(&leaf(5)), 5);
        assert_eq!(height(&LTree::fork(leaf(3), leaf(5))), 6);
    }

    #[test]
    fn roll_nests_leftwards() {
        let s = Spine::new(1, vec![leaf(2), leaf(4)]);
        let t = roll(&s);
        assert_eq!(t, LTree::fork(LTree::fork(leaf(1), leaf(2)), leaf(4)));
        assert_eq!(height(&t), 5);
        assert_eq!(unroll(&t), s);
        assert_eq!(lspinecosts(&s), [5, 3, 1]);
    }

    #[test]
    fn minsplit_traces() {
        assert_eq!(minsplit(2, leaf(3), &[leaf(9)]), [leaf(3), leaf(9)]);
        assert_eq!(minsplit(2, leaf(9), &[leaf(3)]), [LTree::fork(leaf(9), leaf(3))]);
    }

    #[test]
    fn brute_examples() {
        assert_eq!(brute_min_height(&[3, 9, 3]).unwrap(), 11);
        assert_eq!(brute_min_height(&[1, 1, 1, 1]).unwrap(), 3);
        assert_eq!(brute_min_height(&[4]).unwrap(), 4);
        assert_eq!(all_shape_heights(&[1, 1, 1, 1]).len(), 5);
        assert!(brute_min_height(&[]).is_err());
        assert!(brute_min_height(&[0; 9]).is_err());
    }

    #[test]
    fn greedy_matches_small_cases() {
        for xs in [vec![3, 9, 3], vec![1, 1, 1, 1], vec![0, 5, 0, 0, 2]] {
            let t = build_min_height(&xs).unwrap();
            assert_eq!(t.tips(), xs);
            assert_eq!(height(&t), brute_min_height(&xs).unwrap());
        }
    }

    #[test]
    fn cost_order() {
        assert!(costs_leq(&[14, 12, 6], &[15, 12, 11, 6]));
        assert!(!costs_leq(&[15, 12, 11, 6], &[14, 12, 6]));
    }
}
