use std::collections::HashMap;

use super::{FoldError, Functor, Layer};
use crate::finrel::{Carrier, Rel};

/// Cap on the number of terms (or candidate layers) a bounded carrier may hold.
pub const MAX_TERMS: usize = 2_000_000;

/// Which terms a [`Mu`] keeps.
///
/// `depth` counts nested recursive layers (a layer without recursive positions
/// has depth 0). `weight`, when set, caps the number of layers that have
/// recursive positions: list length, node count, or fork count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub depth: usize,
    pub weight: Option<usize>,
}

impl Bound {
    pub fn depth(depth: usize) -> Self {
        Bound { depth, weight: None }
    }

    pub fn weight(weight: usize) -> Self {
        Bound { depth: weight, weight: Some(weight) }
    }
}

/// The bases the tooling knows how to print and parse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    List,
    NodeTree,
    LeafTree,
    NonEmptyList,
    Other,
}

/// A materialised term: `layer`'s recursive position `i` stands for `kids[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub layer: Layer,
    pub kids: Vec<Term>,
}

impl Term {
    pub fn nil() -> Term {
        Term { layer: Layer::Inl(Box::new(Layer::Atom(0))), kids: vec![] }
    }

    pub fn cons(a: usize, tail: Term) -> Term {
        Term {
            layer: Layer::Inr(Box::new(Layer::Pair(Box::new(Layer::Atom(a)), Box::new(Layer::Rec(0))))),
            kids: vec![tail],
        }
    }

    pub fn list(xs: &[usize]) -> Term {
        xs.iter().rev().fold(Term::nil(), |t, &a| Term::cons(a, t))
    }

    pub fn empty() -> Term {
        Term::nil()
    }

    pub fn node(a: usize, l: Term, r: Term) -> Term {
        let kids = Layer::Pair(Box::new(Layer::Rec(0)), Box::new(Layer::Rec(1)));
        Term { layer: Layer::Inr(Box::new(Layer::Pair(Box::new(Layer::Atom(a)), Box::new(kids)))), kids: vec![l, r] }
    }

    pub fn leaf(a: usize) -> Term {
        Term { layer: Layer::Inl(Box::new(Layer::Atom(a))), kids: vec![] }
    }

    /// Non-empty list over `A + A × X`.
    pub fn list1(xs: &[usize]) -> Term {
        let (&last, init) = xs.split_last().expect("non-empty list");
        init.iter().rev().fold(Term::leaf(last), |t, &a| Term::cons(a, t))
    }

    pub fn fork(l: Term, r: Term) -> Term {
        Term {
            layer: Layer::Inr(Box::new(Layer::Pair(Box::new(Layer::Rec(0)), Box::new(Layer::Rec(1))))),
            kids: vec![l, r],
        }
    }
}

/// The terms of `μF` within a [`Bound`], in canonical order: by depth, then by
/// the index of their top layer in `F X` (constructor tag, then children).
#[derive(Clone, Debug)]
pub struct Mu {
    base: Functor,
    kind: TermKind,
    bound: Bound,
    layers: Vec<Layer>,
    depth: Vec<usize>,
    weight: Vec<usize>,
    index: HashMap<Layer, usize>,
    carrier: Carrier,
}

fn kind_of(base: &Functor) -> (TermKind, Option<Carrier>) {
    use Functor::*;
    match base {
        Sum(l, r) => match (&**l, &**r) {
            (Const(u), Prod(a, x)) if *u == Carrier::unit() => match (&**a, &**x) {
                (Const(a), Id) => (TermKind::List, Some(a.clone())),
                (Const(a), Prod(p, q)) if **p == Id && **q == Id => (TermKind::NodeTree, Some(a.clone())),
                _ => (TermKind::Other, None),
            },
            (Const(a), Prod(p, q)) if **p == Id && **q == Id => (TermKind::LeafTree, Some(a.clone())),
            (Const(a), Prod(b, x)) if **b == Const(a.clone()) && **x == Id => (TermKind::NonEmptyList, Some(a.clone())),
            _ => (TermKind::Other, None),
        },
        _ => (TermKind::Other, None),
    }
}

/// Generic rendering of one layer given its children's labels.
fn render_layer(f: &Functor, layer: &Layer, kids: &[String]) -> String {
    match (f, layer) {
        (Functor::Id, Layer::Rec(x)) => kids[*x].clone(),
        (Functor::Const(c), Layer::Atom(a)) => c.elem(*a).to_string(),
        (Functor::Sum(l, _), Layer::Inl(v)) => format!("i1:{}", render_layer(l, v, kids)),
        (Functor::Sum(_, r), Layer::Inr(v)) => format!("i2:{}", render_layer(r, v, kids)),
        (Functor::Prod(l, r), Layer::Pair(u, v)) => {
            format!("({},{})", render_layer(l, u, kids), render_layer(r, v, kids))
        }
        _ => unreachable!("layer does not fit functor"),
    }
}

fn atom_of(layer: &Layer) -> Option<usize> {
    match layer {
        Layer::Atom(a) => Some(*a),
        Layer::Inl(v) | Layer::Inr(v) => atom_of(v),
        Layer::Pair(u, v) => atom_of(u).or_else(|| atom_of(v)),
        Layer::Rec(_) => None,
    }
}

impl Mu {
    /// Enumerates every term within `bound`.
    pub fn new(base: &Functor, bound: Bound) -> Result<Mu, FoldError> {
        let (kind, param) = kind_of(base);
        let mut layers: Vec<Layer> = Vec::new();
        let mut depth = Vec::new();
        let mut weight = Vec::new();
        for d in 0..=bound.depth {
            let n = layers.len();
            if bound.weight.is_none() && base.size(n) > MAX_TERMS {
                return Err(FoldError::Sizing {
                    what: format!("{base:?} at depth {d}"),
                    count: base.size(n),
                    cap: MAX_TERMS,
                });
            }
            let budget = bound.weight.map_or(usize::MAX, |w| w.saturating_sub(1));
            let mut found = Vec::new();
            generate(base, &weight, budget, &mut |layer, w| {
                let recs = layer.recs();
                let level = if recs.is_empty() { 0 } else { 1 + recs.iter().map(|&c| depth[c]).max().unwrap() };
                if level == d {
                    found.push((layer, if recs.is_empty() { 0 } else { w + 1 }));
                }
                found.len() <= MAX_TERMS
            });
            if found.len() + layers.len() > MAX_TERMS {
                return Err(FoldError::Sizing {
                    what: format!("{base:?} within {bound:?}"),
                    count: found.len() + layers.len(),
                    cap: MAX_TERMS,
                });
            }
            for (layer, w) in found {
                if bound.weight.is_some_and(|cap| w > cap) {
                    continue;
                }
                layers.push(layer);
                depth.push(d);
                weight.push(w);
            }
            if d > 0 && layers.len() == n {
                break;
            }
        }
        let index = layers.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut labels: Vec<String> = Vec::with_capacity(layers.len());
        for layer in &layers {
            let kids: Vec<String> = layer.recs().iter().map(|&c| labels[c].clone()).collect();
            let label = match (kind, &param) {
                (TermKind::List, Some(a)) => match atom_of(layer) {
                    Some(x) if !kids.is_empty() => {
                        let tail = &kids[0];
                        if tail == "[]" {
                            format!("[{}]", a.elem(x))
                        } else {
                            format!("[{},{}", a.elem(x), &tail[1..])
                        }
                    }
                    _ => "[]".to_string(),
                },
                (TermKind::NodeTree, Some(a)) => match atom_of(layer) {
                    Some(x) if !kids.is_empty() => format!("node({}, {}, {})", a.elem(x), kids[0], kids[1]),
                    _ => "empty".to_string(),
                },
                (TermKind::LeafTree, Some(a)) => {
                    if kids.is_empty() {
                        format!("leaf {}", a.elem(atom_of(layer).unwrap()))
                    } else {
                        format!("fork({}, {})", kids[0], kids[1])
                    }
                }
                (TermKind::NonEmptyList, Some(a)) => {
                    let x = a.elem(atom_of(layer).unwrap());
                    match kids.first() {
                        Some(tail) => format!("[{x},{}", &tail[1..]),
                        None => format!("[{x}]"),
                    }
                }
                _ => format!("in({})", render_layer(base, layer, &kids)),
            };
            labels.push(label);
        }
        let name = match kind {
            TermKind::List => "List",
            TermKind::NodeTree => "Tree",
            TermKind::LeafTree => "LTree",
            TermKind::NonEmptyList => "List1",
            TermKind::Other => "Mu",
        };
        let carrier = Carrier::new(name, labels).map_err(FoldError::Rel)?;
        Ok(Mu { base: base.clone(), kind, bound, layers, depth, weight, index, carrier })
    }

    pub fn base(&self) -> &Functor {
        &self.base
    }

    pub fn kind(&self) -> TermKind {
        self.kind
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// `F μ` over this carrier.
    pub fn f_carrier(&self) -> Carrier {
        self.base.apply(&self.carrier)
    }

    /// Top layer of term `t`; its recursive positions are term indices.
    pub fn layer(&self, t: usize) -> &Layer {
        &self.layers[t]
    }

    pub fn depth_of(&self, t: usize) -> usize {
        self.depth[t]
    }

    pub fn weight_of(&self, t: usize) -> usize {
        self.weight[t]
    }

    pub fn label(&self, t: usize) -> &str {
        self.carrier.elem(t)
    }

    /// The term whose top layer is `layer`, if it is within the bound.
    pub fn lookup(&self, layer: &Layer) -> Option<usize> {
        self.index.get(layer).copied()
    }

    pub fn intern(&self, term: &Term) -> Option<usize> {
        let kids: Option<Vec<usize>> = term.kids.iter().map(|k| self.intern(k)).collect();
        self.lookup(&term.layer.with_recs(&kids?))
    }

    pub fn term(&self, t: usize) -> Term {
        let layer = &self.layers[t];
        let recs = layer.recs();
        let kids = recs.iter().map(|&c| self.term(c)).collect();
        Term { layer: layer.with_recs(&(0..recs.len()).collect::<Vec<_>>()), kids }
    }

    /// For list carriers (empty-able or not): the elements of term `t`.
    pub fn as_list(&self, mut t: usize) -> Vec<usize> {
        let mut out = Vec::new();
        loop {
            let layer = &self.layers[t];
            match layer.recs().first() {
                Some(&tail) => {
                    out.push(atom_of(layer).expect("cons carries a payload"));
                    t = tail;
                }
                None => {
                    out.extend(atom_of(layer).filter(|_| self.kind == TermKind::NonEmptyList));
                    return out;
                }
            }
        }
    }

    /// Index of the column of `F μ` holding `layer`.
    pub fn encode(&self, layer: &Layer) -> usize {
        self.base.encode(self.len(), layer)
    }

    /// `in : μ <- F μ`, undefined where the constructed term exceeds the bound.
    pub fn in_alg(&self) -> Rel {
        let fmu = self.f_carrier();
        let mut r = Rel::empty(&fmu, &self.carrier);
        for (t, layer) in self.layers.iter().enumerate() {
            r.set(t, self.encode(layer));
        }
        r
    }

    /// `out = in°`.
    pub fn out_alg(&self) -> Rel {
        self.in_alg().converse()
    }

    /// Columns of `F μ` on which `in` is defined.
    pub fn in_domain(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.layers.iter().map(|l| self.encode(l)).collect();
        cols.sort_unstable();
        cols
    }
}

/// Calls `emit(layer, weight_sum)` for every layer of `f` over the terms so far
/// whose children's weights add up to at most `budget`, in index order.
/// `emit` returns false to stop early.
fn generate(f: &Functor, weights: &[usize], budget: usize, emit: &mut dyn FnMut(Layer, usize) -> bool) -> bool {
    match f {
        Functor::Id => {
            for (x, &w) in weights.iter().enumerate() {
                if w < budget.saturating_add(1) && !emit(Layer::Rec(x), w) {
                    return false;
                }
            }
            true
        }
        Functor::Const(c) => (0..c.len()).all(|a| emit(Layer::Atom(a), 0)),
        Functor::Sum(l, r) => {
            generate(l, weights, budget, &mut |v, w| emit(Layer::Inl(Box::new(v)), w))
                && generate(r, weights, budget, &mut |v, w| emit(Layer::Inr(Box::new(v)), w))
        }
        Functor::Prod(l, r) => generate(l, weights, budget, &mut |u, wu| {
            let rest = budget.saturating_sub(wu);
            generate(r, weights, rest, &mut |v, wv| emit(Layer::Pair(Box::new(u.clone()), Box::new(v)), wu + wv))
        }),
    }
}
