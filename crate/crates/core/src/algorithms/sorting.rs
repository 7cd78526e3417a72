use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::AlgoError;

/// Multiset of list elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bag(BTreeMap<usize, usize>);

impl Bag {
    pub fn of(xs: &[usize]) -> Bag {
        let mut m = BTreeMap::new();
        for &x in xs {
            *m.entry(x).or_insert(0) += 1;
        }
        Bag(m)
    }

    pub fn union(&self, other: &Bag) -> Bag {
        let mut m = self.0.clone();
        for (&k, &n) in &other.0 {
            *m.entry(k).or_insert(0) += n;
        }
        Bag(m)
    }

    pub fn multiplicity(&self, x: usize) -> usize {
        self.0.get(&x).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.values().sum()
    }

    /// Elements in ascending order, repeated by multiplicity.
    pub fn elements(&self) -> Vec<usize> {
        self.0.iter().flat_map(|(&k, &n)| std::iter::repeat_n(k, n)).collect()
    }
}

impl fmt::Display for Bag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(|(k, n)| format!("{k}:{n}")).collect();
        write!(f, "{{{}}}", body.join(", "))
    }
}

pub fn bag(xs: &[usize]) -> Bag {
    Bag::of(xs)
}

/// Each element is at most the minimum of what follows it.
pub fn ordered(xs: &[usize]) -> bool {
    xs.windows(2).all(|w| w[0] <= w[1])
}

/// `s(a, (x, y))`: `a` bounds `x` from above and `y` from below.
pub fn s_pred(a: usize, x: &[usize], y: &[usize]) -> bool {
    x.iter().all(|&b| b <= a) && y.iter().all(|&b| a <= b)
}

/// Same, without the bound on `x`: the mutant used to exercise the checklist.
pub fn s_pred_without_left_bound(a: usize, _x: &[usize], y: &[usize]) -> bool {
    y.iter().all(|&b| a <= b)
}

pub fn format_list(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(","))
}

/// Every distinct rearrangement of `xs`.
pub fn permutations(xs: &[usize]) -> BTreeSet<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if rest.is_empty() {
            out.insert(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = BTreeSet::new();
    go(&mut xs.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// The ordered member of the permutation class of `xs`, found by enumeration;
/// fails unless there is exactly one.
pub fn oracle_sort(xs: &[usize]) -> Result<Vec<usize>, AlgoError> {
    let found: Vec<Vec<usize>> = permutations(xs).into_iter().filter(|p| ordered(p)).collect();
    match found.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(AlgoError::Oracle(format!("{} ordered permutations of {}", found.len(), format_list(xs)))),
    }
}

/// Binary trees with payload at the nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Empty,
    Node(usize, Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(a: usize, l: Tree, r: Tree) -> Tree {
        Tree::Node(a, Box::new(l), Box::new(r))
    }

    /// In-order traversal, the fold of `[nil, inord]`.
    pub fn flatten(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<usize>) {
        if let Tree::Node(a, l, r) = self {
            l.flatten_into(out);
            out.push(*a);
            r.flatten_into(out);
        }
    }

    /// Every node's payload bounds its left subtree from above and its right
    /// subtree from below.
    pub fn is_search_tree(&self) -> bool {
        match self {
            Tree::Empty => true,
            Tree::Node(a, l, r) => s_pred(*a, &l.flatten(), &r.flatten()) && l.is_search_tree() && r.is_search_tree(),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Empty => f.write_str("empty"),
            Tree::Node(a, l, r) => write!(f, "node({a}, {l}, {r})"),
        }
    }
}

/// A pivot with the parts below-or-equal and above it.
pub type PivotSplit = (usize, (Vec<usize>, Vec<usize>));

/// Head pivot: `(h, ([a | a <- t, a <= h], [a | a <- t, a > h]))`.
pub fn pivot_head_split(xs: &[usize]) -> Result<PivotSplit, AlgoError> {
    let (&h, t) = xs.split_first().ok_or(AlgoError::EmptyInput("pivot split"))?;
    let low = t.iter().copied().filter(|&a| a <= h).collect();
    let high = t.iter().copied().filter(|&a| a > h).collect();
    Ok((h, (low, high)))
}

/// The search tree quicksort unfolds.
pub fn quicksort_tree(xs: &[usize]) -> Tree {
    match pivot_head_split(xs) {
        Err(_) => Tree::Empty,
        Ok((a, (low, high))) => Tree::node(a, quicksort_tree(&low), quicksort_tree(&high)),
    }
}

pub fn quicksort(xs: &[usize]) -> Vec<usize> {
    quicksort_tree(xs).flatten()
}

/// Leaf trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LTree {
    Leaf(usize),
    Fork(Box<LTree>, Box<LTree>),
}

impl LTree {
    pub fn fork(l: LTree, r: LTree) -> LTree {
        LTree::Fork(Box::new(l), Box::new(r))
    }

    /// Leaves left to right.
    pub fn tips(&self) -> Vec<usize> {
        match self {
            LTree::Leaf(a) => vec![*a],
            LTree::Fork(l, r) => {
                let mut out = l.tips();
                out.extend(r.tips());
                out
            }
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            LTree::Leaf(_) => 1,
            LTree::Fork(l, r) => l.leaves() + r.leaves(),
        }
    }
}

impl fmt::Display for LTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LTree::Leaf(a) => write!(f, "leaf {a}"),
            LTree::Fork(l, r) => write!(f, "fork({l}, {r})"),
        }
    }
}

pub fn tips(t: &LTree) -> Vec<usize> {
    t.tips()
}

/// Merges two ordered lists; on equal heads the left one goes first.
pub fn merge(x: &[usize], y: &[usize]) -> Result<Vec<usize>, AlgoError> {
    for xs in [x, y] {
        if !ordered(xs) {
            return Err(AlgoError::Unordered(format_list(xs)));
        }
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if x[i] <= y[j] {
            out.push(x[i]);
            i += 1;
        } else {
            out.push(y[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    Ok(out)
}

/// Splits with the left part taking `⌈n/2⌉` elements.
pub fn split_halves(xs: &[usize]) -> Result<(Vec<usize>, Vec<usize>), AlgoError> {
    if xs.len() < 2 {
        return Err(AlgoError::TooShort { what: "split", len: xs.len(), min: 2 });
    }
    let (l, r) = xs.split_at(xs.len().div_ceil(2));
    Ok((l.to_vec(), r.to_vec()))
}

/// The balanced leaf tree mergesort unfolds from a non-empty list.
pub fn balanced_tree(xs: &[usize]) -> Result<LTree, AlgoError> {
    match xs {
        [] => Err(AlgoError::EmptyInput("balanced tree")),
        [a] => Ok(LTree::Leaf(*a)),
        _ => {
            let (l, r) = split_halves(xs)?;
            Ok(LTree::fork(balanced_tree(&l)?, balanced_tree(&r)?))
        }
    }
}

fn merge_fold(t: &LTree) -> Vec<usize> {
    match t {
        LTree::Leaf(a) => vec![*a],
        LTree::Fork(l, r) => merge(&merge_fold(l), &merge_fold(r)).expect("sub-results are ordered"),
    }
}

/// Mergesort with its virtual leaf tree (absent for the empty list).
pub fn mergesort_traced(xs: &[usize]) -> (Vec<usize>, Option<LTree>) {
    match balanced_tree(xs) {
        Err(_) => (Vec::new(), None),
        Ok(t) => (merge_fold(&t), Some(t)),
    }
}

pub fn mergesort(xs: &[usize]) -> Vec<usize> {
    mergesort_traced(xs).0
}

/// Every list over `0..alphabet` of length at most `max_len`, shortest first.
pub fn all_lists(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for xs in &layer {
            for a in 0..alphabet {
                let mut ys: Vec<usize> = xs.clone();
                ys.push(a);
                next.push(ys);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bag_counts() {
        let b = bag(&[2, 1, 2]);
        assert_eq!(b.multiplicity(1), 1);
        assert_eq!(b.multiplicity(2), 2);
        assert_eq!(b.to_string(), "{1:1, 2:2}");
        assert_eq!(bag(&[1, 2]), bag(&[2, 1]));
        assert_ne!(bag(&[1]), bag(&[1, 2]));
    }

    #[test]
    fn permutation_class_of_three_distinct() {
        assert_eq!(permutations(&[0, 1, 2]).len(), 6);
        assert_eq!(permutations(&[1, 1]).len(), 1);
    }

    #[test]
    fn s_reads_as_two_bounds() {
        assert!(s_pred(2, &[1, 2], &[3, 2]));
        assert!(!s_pred(2, &[3], &[1]));
    }

    #[test]
    fn ordered_split_at_any_element() {
        for xs in all_lists(3, 3) {
            for i in 0..=xs.len() {
                for a in 0..3 {
                    let (x, y) = xs.split_at(i);
                    let mut whole = x.to_vec();
                    whole.push(a);
                    whole.extend_from_slice(y);
                    assert_eq!(ordered(&whole), ordered(x) && ordered(y) && s_pred(a, x, y));
                }
            }
        }
    }

    #[test]
    fn head_pivot() {
        assert_eq!(pivot_head_split(&[2, 1, 3]).unwrap(), (2, (vec![1], vec![3])));
        assert!(pivot_head_split(&[]).is_err());
    }

    #[test]
    fn quicksort_small() {
        assert_eq!(quicksort(&[3, 1, 2]), [1, 2, 3]);
        assert_eq!(quicksort(&[]), Vec::<usize>::new());
        assert_eq!(quicksort_tree(&[3, 1, 2]).to_string(), "node(3, node(1, empty, node(2, empty, empty)), empty)");
    }

    #[test]
    fn merge_examples() {
        assert_eq!(merge(&[1, 3], &[2, 4]).unwrap(), [1, 2, 3, 4]);
        assert_eq!(merge(&[], &[1, 2]).unwrap(), [1, 2]);
        assert!(matches!(merge(&[2, 1], &[]), Err(AlgoError::Unordered(_))));
    }

    #[test]
    fn split_takes_ceiling_left() {
        assert_eq!(split_halves(&[1, 2, 3]).unwrap(), (vec![1, 2], vec![3]));
        assert!(split_halves(&[1]).is_err());
    }

    #[test]
    fn tips_reads_leaves_in_order() {
        let t = LTree::fork(LTree::Leaf(1), LTree::fork(LTree::Leaf(2), LTree::Leaf(3)));
        assert_eq!(tips(&t), [1, 2, 3]);
    }

    #[test]
    fn list_corpus_size() {
        assert_eq!(all_lists(4, 5).len(), 1365);
        assert_eq!(all_lists(2, 2).len(), 7);
    }

    #[test]
    fn oracle_agrees_on_small_inputs() {
        for xs in all_lists(3, 4) {
            let want = oracle_sort(&xs).unwrap();
            assert_eq!(quicksort(&xs), want);
            assert_eq!(mergesort(&xs), want);
        }
    }
}
