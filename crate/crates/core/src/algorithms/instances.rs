use std::collections::HashMap;

use super::minheight::{add_leaf, add_leaf_naive, costs_leq, height, lspinecosts, roll, troll, Spine};
use super::repchanger::sat_add;
use super::sorting::{balanced_tree, ordered, permutations, s_pred, s_pred_without_left_bound, LTree};
use super::AlgoError;
use crate::finrel::{Carrier, Fun, Predicate, Rel};
use crate::inductive::{Bound, Functor, Layer, Mu, Term};
use crate::metaphor::ChecklistInput;

fn split_sum(l: &Layer) -> Result<&Layer, &Layer> {
    match l {
        Layer::Inl(v) => Err(v),
        Layer::Inr(v) => Ok(v),
        _ => panic!("expected a sum layer, got {l:?}"),
    }
}

fn split_pair(l: &Layer) -> (&Layer, &Layer) {
    match l {
        Layer::Pair(u, v) => (u, v),
        _ => panic!("expected a pair layer, got {l:?}"),
    }
}

fn atom(l: &Layer) -> usize {
    match l {
        Layer::Atom(a) => *a,
        _ => panic!("expected an atom, got {l:?}"),
    }
}

fn rec(l: &Layer) -> usize {
    match l {
        Layer::Rec(x) => *x,
        _ => panic!("expected a recursive position, got {l:?}"),
    }
}

/// `(a, x)` for a cons layer of `1 + A × X` or `A + A × X`.
fn as_cons(l: &Layer) -> Option<(usize, usize)> {
    split_sum(l).ok().map(|p| {
        let (a, x) = split_pair(p);
        (atom(a), rec(x))
    })
}

/// `(a, l, r)` for a node layer of `1 + A × X²`.
fn as_node(l: &Layer) -> Option<(usize, usize, usize)> {
    split_sum(l).ok().map(|p| {
        let (a, kids) = split_pair(p);
        let (x, y) = split_pair(kids);
        (atom(a), rec(x), rec(y))
    })
}

/// `Ok((l, r))` for a fork, `Err(a)` for a leaf of `A + X²`, and likewise
/// `Err(a)` for the singleton of `A + A × X`.
fn as_fork(l: &Layer) -> Result<(usize, usize), usize> {
    match split_sum(l) {
        Err(a) => Err(atom(a)),
        Ok(p) => {
            let (x, y) = split_pair(p);
            Ok((rec(x), rec(y)))
        }
    }
}

fn node_layer(a: usize, l: usize, r: usize) -> Layer {
    let kids = Layer::Pair(Box::new(Layer::Rec(l)), Box::new(Layer::Rec(r)));
    Layer::Inr(Box::new(Layer::Pair(Box::new(Layer::Atom(a)), Box::new(kids))))
}

fn nil_layer() -> Layer {
    Layer::Inl(Box::new(Layer::Atom(0)))
}

fn cons_layer(a: usize, x: usize) -> Layer {
    Layer::Inr(Box::new(Layer::Pair(Box::new(Layer::Atom(a)), Box::new(Layer::Rec(x)))))
}

fn concat3(x: &[usize], a: usize, y: &[usize]) -> Vec<usize> {
    let mut v = x.to_vec();
    v.push(a);
    v.extend_from_slice(y);
    v
}

fn ltree_term(t: &LTree) -> Term {
    match t {
        LTree::Leaf(a) => Term::leaf(*a),
        LTree::Fork(l, r) => Term::fork(ltree_term(l), ltree_term(r)),
    }
}

/// The list contents of every term of a list carrier, with the reverse map.
fn list_table(mu: &Mu) -> (Vec<Vec<usize>>, HashMap<Vec<usize>, usize>) {
    let elems: Vec<Vec<usize>> = (0..mu.len()).map(|t| mu.as_list(t)).collect();
    let index = elems.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    (elems, index)
}

/// Bags of at most `max` elements over `0..alphabet`, as a carrier.
#[derive(Clone, Debug)]
pub struct BagCarrier {
    pub carrier: Carrier,
    bags: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl BagCarrier {
    pub fn new(alphabet: usize, max: usize) -> BagCarrier {
        let mut bags: Vec<Vec<usize>> = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max {
            let mut next = Vec::new();
            for b in &layer {
                let from = b.last().copied().unwrap_or(0);
                for a in from..alphabet {
                    let mut c: Vec<usize> = b.clone();
                    c.push(a);
                    next.push(c);
                }
            }
            bags.extend(next.iter().cloned());
            layer = next;
        }
        let labels = bags.iter().map(|b| {
            let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", items.join(","))
        });
        let carrier = Carrier::new("Bag", labels).expect("bag labels are distinct");
        let index = bags.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        BagCarrier { carrier, bags, index }
    }

    /// The bag holding the elements of `xs`, if within bounds.
    pub fn index_of(&self, xs: &[usize]) -> Option<usize> {
        let mut v = xs.to_vec();
        v.sort_unstable();
        self.index.get(&v).copied()
    }

    /// Elements of bag `i`, ascending.
    pub fn elements(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuicksortMutant {
    /// The divide guard forgets that the pivot bounds the left part.
    DropLeftBound,
}

/// Quicksort as a hylomorphism through search trees, with every piece the
/// divide-and-conquer checklist needs.
#[derive(Clone, Debug)]
pub struct QuicksortInstance {
    pub lists: Mu,
    pub trees: Mu,
    pub bags: BagCarrier,
    /// `bag : Bag <- List`, computed directly.
    pub bag: Fun,
    /// `[empty, insert] : Bag <- F Bag`, partial at the size bound.
    pub k: Rel,
    /// `[nil, inord] : List <- G List`, partial at the length bound.
    pub h: Rel,
    pub q: Predicate,
    pub r: Predicate,
    pub w: Predicate,
    pub mutant: Option<QuicksortMutant>,
    elems: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl QuicksortInstance {
    pub fn new(alphabet: usize, max_len: usize, mutant: Option<QuicksortMutant>) -> Result<Self, AlgoError> {
        let a = Carrier::range("A", alphabet);
        let lists = Mu::new(&Functor::list(&a), Bound::weight(max_len))?;
        let trees = Mu::new(&Functor::node_tree(&a), Bound::weight(max_len))?;
        let (elems, index) = list_table(&lists);
        let bags = BagCarrier::new(alphabet, max_len);
        let bag = Fun::from_fn(lists.carrier(), &bags.carrier, |t| bags.index_of(&elems[t]).expect("bag in range"))?;

        let f = lists.base();
        let fb = f.apply(&bags.carrier);
        let mut k = Rel::empty(&fb, &bags.carrier);
        for i in 0..fb.len() {
            match as_cons(&f.decode(bags.len(), i)) {
                None => k.set(0, i),
                Some((x, b)) => {
                    let mut e = bags.elements(b).to_vec();
                    e.push(x);
                    if let Some(j) = bags.index_of(&e) {
                        k.set(j, i);
                    }
                }
            }
        }

        let s: fn(usize, &[usize], &[usize]) -> bool = match mutant {
            None => s_pred,
            Some(QuicksortMutant::DropLeftBound) => s_pred_without_left_bound,
        };
        let g = trees.base();
        let gl = g.apply(lists.carrier());
        let nl = lists.len();
        let mut h = Rel::empty(&gl, lists.carrier());
        let mut r_truth = Vec::with_capacity(gl.len());
        for i in 0..gl.len() {
            match as_node(&g.decode(nl, i)) {
                None => {
                    h.set(index[&Vec::new()], i);
                    r_truth.push(true);
                }
                Some((x, l, rt)) => {
                    if let Some(&t) = index.get(&concat3(&elems[l], x, &elems[rt])) {
                        h.set(t, i);
                    }
                    r_truth.push(s(x, &elems[l], &elems[rt]));
                }
            }
        }
        let q = Predicate::from_fn(lists.carrier(), |t| ordered(&elems[t]));
        let r = Predicate::new(&gl, r_truth)?;

        let mut flat: Vec<Vec<usize>> = Vec::with_capacity(trees.len());
        for t in 0..trees.len() {
            let v = match as_node(trees.layer(t)) {
                None => Vec::new(),
                Some((x, l, rt)) => concat3(&flat[l], x, &flat[rt]),
            };
            flat.push(v);
        }
        let gt = g.apply(trees.carrier());
        let nt = trees.len();
        let w = Predicate::from_fn(&gt, |i| match as_node(&g.decode(nt, i)) {
            None => true,
            Some((x, l, rt)) => s(x, &flat[l], &flat[rt]),
        });
        Ok(QuicksortInstance { lists, trees, bags, bag, k, h, q, r, w, mutant, elems, index })
    }

    pub fn input(&self) -> ChecklistInput<'_> {
        ChecklistInput {
            mu_f: &self.lists,
            mu_g: &self.trees,
            k: &self.k,
            h: &self.h,
            q: &self.q,
            r: &self.r,
            w: &self.w,
        }
    }

    pub fn list(&self, t: usize) -> &[usize] {
        &self.elems[t]
    }

    pub fn list_index(&self, xs: &[usize]) -> Option<usize> {
        self.index.get(xs).copied()
    }

    /// `Perm = bag/bag`.
    pub fn perm(&self) -> Rel {
        Rel::kernel(&self.bag)
    }

    /// `ordered?·Perm`.
    pub fn sort_spec(&self) -> Rel {
        Rel::coreflexive(&self.q).compose(&self.perm()).expect("same carrier")
    }

    /// The divide step written out by hand: any pivot whose removal leaves a
    /// permutation split the pivot bounds on both sides.
    pub fn divide_z(&self) -> Rel {
        let g = self.trees.base();
        let nl = self.lists.len();
        let gl = g.apply(self.lists.carrier());
        let mut z = Rel::empty(self.lists.carrier(), &gl);
        for x in 0..nl {
            let xs = &self.elems[x];
            if xs.is_empty() {
                z.set(g.encode(nl, &nil_layer()), x);
                continue;
            }
            for p in permutations(xs) {
                for i in 0..p.len() {
                    let (y, rest) = p.split_at(i);
                    let (a, z_part) = (rest[0], &rest[1..]);
                    if s_pred(a, y, z_part) {
                        z.set(g.encode(nl, &node_layer(a, self.index[y], self.index[z_part])), x);
                    }
                }
            }
        }
        z
    }
}

/// Mergesort's pieces on non-empty lists and leaf trees.
#[derive(Clone, Debug)]
pub struct MergesortInstance {
    pub lists: Mu,
    pub trees: Mu,
    pub bags: BagCarrier,
    pub bag: Fun,
    /// `[singl, conc] : List1 <- K List1`.
    pub t: Rel,
    /// The part of `t` whose left operand takes the larger half.
    pub balanced_conc: Rel,
    /// Builds the balanced leaf tree of a list.
    pub mktree: Fun,
}

impl MergesortInstance {
    pub fn new(alphabet: usize, max_len: usize) -> Result<Self, AlgoError> {
        if max_len == 0 {
            return Err(AlgoError::TooShort { what: "non-empty list bound", len: 0, min: 1 });
        }
        let a = Carrier::range("A", alphabet);
        let lists = Mu::new(&Functor::list1(&a), Bound::weight(max_len - 1))?;
        let trees = Mu::new(&Functor::leaf_tree(&a), Bound::weight(max_len - 1))?;
        let (elems, index) = list_table(&lists);
        let bags = BagCarrier::new(alphabet, max_len);
        let bag = Fun::from_fn(lists.carrier(), &bags.carrier, |t| bags.index_of(&elems[t]).expect("bag in range"))?;
        let kb = trees.base();
        let kl = kb.apply(lists.carrier());
        let mut t = Rel::empty(&kl, lists.carrier());
        let mut balanced_conc = Rel::empty(&kl, lists.carrier());
        for i in 0..kl.len() {
            match as_fork(&kb.decode(lists.len(), i)) {
                Err(x) => {
                    let j = index[&vec![x]];
                    t.set(j, i);
                    balanced_conc.set(j, i);
                }
                Ok((l, r)) => {
                    let (x, y) = (&elems[l], &elems[r]);
                    let mut v = x.clone();
                    v.extend_from_slice(y);
                    if let Some(&j) = index.get(&v) {
                        t.set(j, i);
                        if x.len() == v.len().div_ceil(2) {
                            balanced_conc.set(j, i);
                        }
                    }
                }
            }
        }
        let mktree = Fun::from_fn(lists.carrier(), trees.carrier(), |l| {
            let tree = balanced_tree(&elems[l]).expect("non-empty");
            trees.intern(&ltree_term(&tree)).expect("balanced tree within bound")
        })?;
        Ok(MergesortInstance { lists, trees, bags, bag, t, balanced_conc, mktree })
    }
}

/// Left spines over bounded heights, with the non-empty lists they roll to.
#[derive(Clone, Debug)]
pub struct MinHeightInstance {
    pub lists: Mu,
    pub spines: Carrier,
    pub troll: Fun,
    data: Vec<Spine>,
    index: HashMap<Spine, usize>,
}

fn trees_with_leaves(k: usize, heights: usize) -> Vec<LTree> {
    if k == 1 {
        return (0..heights).map(LTree::Leaf).collect();
    }
    let mut out = Vec::new();
    for i in 1..k {
        for l in trees_with_leaves(i, heights) {
            for r in trees_with_leaves(k - i, heights) {
                out.push(LTree::fork(l.clone(), r));
            }
        }
    }
    out
}

fn tree_sequences(leaves: usize, heights: usize) -> Vec<Vec<LTree>> {
    if leaves == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 1..=leaves {
        for t in trees_with_leaves(k, heights) {
            for rest in tree_sequences(leaves - k, heights) {
                let mut v = vec![t.clone()];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

impl MinHeightInstance {
    /// Spines rolling to trees of at most `max_leaves` leaves with heights `0..=max_height`.
    pub fn new(max_height: usize, max_leaves: usize) -> Result<Self, AlgoError> {
        if max_leaves == 0 {
            return Err(AlgoError::TooShort { what: "leaf bound", len: 0, min: 1 });
        }
        let hs = Carrier::range("H", max_height + 1);
        let lists = Mu::new(&Functor::list1(&hs), Bound::weight(max_leaves - 1))?;
        let mut data = Vec::new();
        for extra in 0..max_leaves {
            for head in 0..=max_height {
                for ts in tree_sequences(extra, max_height + 1) {
                    data.push(Spine::new(head, ts));
                }
            }
        }
        let spines = Carrier::new("Spine", data.iter().map(|s| s.to_string()))?;
        let index = data.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let troll = Fun::from_fn(&spines, lists.carrier(), |i| {
            lists.intern(&Term::list1(&troll(&data[i]))).expect("leaf count within bound")
        })?;
        Ok(MinHeightInstance { lists, spines, troll, data, index })
    }

    pub fn spine(&self, i: usize) -> &Spine {
        &self.data[i]
    }

    /// `[one △ nil, Q] : Spine <- F Spine` for `Q` given pointwise.
    pub fn algebra(&self, step: impl Fn(usize, &Spine) -> Vec<Spine>) -> Rel {
        let f = self.lists.base();
        let fs = f.apply(&self.spines);
        let mut out = Rel::empty(&fs, &self.spines);
        for i in 0..fs.len() {
            match as_fork_or_cons(&f.decode(self.data.len(), i)) {
                Err(a) => out.set(self.index[&Spine::new(a, Vec::new())], i),
                Ok((a, x)) => {
                    for s in step(a, &self.data[x]) {
                        if let Some(&j) = self.index.get(&s) {
                            out.set(j, i);
                        }
                    }
                }
            }
        }
        out
    }

    /// Every spine whose leaves are `a` followed by those of the input.
    pub fn full_algebra(&self) -> Rel {
        let mut by_tips: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (i, s) in self.data.iter().enumerate() {
            by_tips.entry(troll(s)).or_default().push(i);
        }
        self.algebra(|a, s| {
            let mut key = vec![a];
            key.extend(troll(s));
            by_tips.get(&key).map(|v| v.iter().map(|&i| self.data[i].clone()).collect()).unwrap_or_default()
        })
    }

    /// Adds `a` as the new head and folds some prefix of the old spine into
    /// its first tree; [`add_leaf`] picks one of these.
    pub fn merge_algebra(&self) -> Rel {
        self.algebra(|a, s| {
            (0..=s.trees.len())
                .map(|j| {
                    let mut trees = vec![roll(&Spine::new(s.head, s.trees[..j].to_vec()))];
                    trees.extend_from_slice(&s.trees[j..]);
                    Spine::new(a, trees)
                })
                .collect()
        })
    }

    pub fn greedy_algebra(&self) -> Rel {
        self.algebra(|a, s| vec![add_leaf(a, s)])
    }

    pub fn naive_algebra(&self) -> Rel {
        self.algebra(|a, s| vec![add_leaf_naive(a, s)])
    }

    /// `b R b'` when both have the same leaves and `b` rolls to a tree no
    /// taller than `b'`.
    pub fn height_order(&self) -> Rel {
        let hs: Vec<usize> = self.data.iter().map(|s| height(&roll(s))).collect();
        let tips = self.troll.map();
        Rel::from_fn(&self.spines, &self.spines, |b, b2| tips[b] == tips[b2] && hs[b] <= hs[b2])
    }

    /// `b R b'` when both have the same leaves and `lspinecosts b ⊑ lspinecosts b'`.
    pub fn cost_order(&self) -> Rel {
        let cs: Vec<Vec<usize>> = self.data.iter().map(lspinecosts).collect();
        let tips = self.troll.map();
        Rel::from_fn(&self.spines, &self.spines, |b, b2| tips[b] == tips[b2] && costs_leq(&cs[b], &cs[b2]))
    }
}

/// `Err(a)` for the singleton, `Ok((a, x))` for the cons of `A + A × X`.
fn as_fork_or_cons(l: &Layer) -> Result<(usize, usize), usize> {
    match split_sum(l) {
        Err(a) => Err(atom(a)),
        Ok(p) => {
            let (a, x) = split_pair(p);
            Ok((atom(a), rec(x)))
        }
    }
}

/// The sum example: lists over `0..alphabet`, naturals saturating at `cap`.
#[derive(Clone, Debug)]
pub struct RepChangerInstance {
    pub lists: Mu,
    pub nat: Carrier,
    pub b: usize,
    /// `(b+)`.
    pub k: Fun,
    /// `[zero, add]`.
    pub y: Fun,
    /// `[b, add]`.
    pub z: Fun,
    /// `[const [b], cons]`, partial at the length bound.
    pub x: Rel,
}

impl RepChangerInstance {
    pub fn new(b: usize, alphabet: usize, max_len: usize, cap: usize) -> Result<Self, AlgoError> {
        if b >= alphabet || b > cap {
            return Err(AlgoError::Alphabet { elem: b, alphabet: alphabet.min(cap + 1) });
        }
        let a = Carrier::range("A", alphabet);
        let lists = Mu::new(&Functor::list(&a), Bound::weight(max_len))?;
        let nat = Carrier::range("N", cap + 1);
        let f = lists.base();
        let fnat = f.apply(&nat);
        let nn = nat.len();
        let alg = |base: usize| {
            Fun::from_fn(&fnat, &nat, move |i| match as_cons(&f.decode(nn, i)) {
                None => base,
                Some((x, n)) => sat_add(x, n, cap),
            })
        };
        let y = alg(0)?;
        let z = alg(b)?;
        let k = Fun::from_fn(&nat, &nat, |n| sat_add(b, n, cap))?;
        let fl = f.apply(lists.carrier());
        let single = lists.intern(&Term::list(&[b]));
        let mut x = Rel::empty(&fl, lists.carrier());
        for i in 0..fl.len() {
            let layer = f.decode(lists.len(), i);
            let target = match as_cons(&layer) {
                None => single,
                Some((h, t)) => lists.lookup(&cons_layer(h, t)),
            };
            if let Some(j) = target {
                x.set(j, i);
            }
        }
        Ok(RepChangerInstance { lists, nat, b, k, y, z, x })
    }
}
