use std::fmt;

use crate::finrel::{Carrier, Fun, Rel};

/// Polynomial functor expressions.
#[derive(Clone, PartialEq, Eq)]
pub enum Functor {
    Id,
    Const(Carrier),
    Sum(Box<Functor>, Box<Functor>),
    Prod(Box<Functor>, Box<Functor>),
}

/// One element of `F X`, with recursive positions holding indices into `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    Atom(usize),
    Rec(usize),
    Inl(Box<Layer>),
    Inr(Box<Layer>),
    Pair(Box<Layer>, Box<Layer>),
}

impl Layer {
    /// Recursive positions, left to right.
    pub fn recs(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_recs(&mut out);
        out
    }

    fn collect_recs(&self, out: &mut Vec<usize>) {
        match self {
            Layer::Atom(_) => {}
            Layer::Rec(x) => out.push(*x),
            Layer::Inl(l) | Layer::Inr(l) => l.collect_recs(out),
            Layer::Pair(l, r) => {
                l.collect_recs(out);
                r.collect_recs(out);
            }
        }
    }

    /// Same shape with the recursive positions replaced, left to right.
    pub fn with_recs(&self, xs: &[usize]) -> Layer {
        let mut it = xs.iter().copied();
        let out = self.replace(&mut it);
        debug_assert!(it.next().is_none());
        out
    }

    fn replace(&self, it: &mut impl Iterator<Item = usize>) -> Layer {
        match self {
            Layer::Atom(a) => Layer::Atom(*a),
            Layer::Rec(_) => Layer::Rec(it.next().expect("enough replacements")),
            Layer::Inl(l) => Layer::Inl(Box::new(l.replace(it))),
            Layer::Inr(l) => Layer::Inr(Box::new(l.replace(it))),
            Layer::Pair(l, r) => {
                let l = l.replace(it);
                Layer::Pair(Box::new(l), Box::new(r.replace(it)))
            }
        }
    }

    pub fn map_recs(&self, f: &impl Fn(usize) -> usize) -> Layer {
        match self {
            Layer::Atom(a) => Layer::Atom(*a),
            Layer::Rec(x) => Layer::Rec(f(*x)),
            Layer::Inl(l) => Layer::Inl(Box::new(l.map_recs(f))),
            Layer::Inr(l) => Layer::Inr(Box::new(l.map_recs(f))),
            Layer::Pair(l, r) => Layer::Pair(Box::new(l.map_recs(f)), Box::new(r.map_recs(f))),
        }
    }
}

impl Functor {
    fn sum(l: Functor, r: Functor) -> Functor {
        Functor::Sum(Box::new(l), Box::new(r))
    }

    fn prod(l: Functor, r: Functor) -> Functor {
        Functor::Prod(Box::new(l), Box::new(r))
    }

    /// `F X = 1 + A × X`.
    pub fn list(a: &Carrier) -> Functor {
        Self::sum(Functor::Const(Carrier::unit()), Self::prod(Functor::Const(a.clone()), Functor::Id))
    }

    /// `G X = 1 + A × X²`.
    pub fn node_tree(a: &Carrier) -> Functor {
        Self::sum(
            Functor::Const(Carrier::unit()),
            Self::prod(Functor::Const(a.clone()), Self::prod(Functor::Id, Functor::Id)),
        )
    }

    /// `F X = A + A × X`, non-empty lists.
    pub fn list1(a: &Carrier) -> Functor {
        Self::sum(Functor::Const(a.clone()), Self::prod(Functor::Const(a.clone()), Functor::Id))
    }

    /// `K X = A + X²`.
    pub fn leaf_tree(a: &Carrier) -> Functor {
        Self::sum(Functor::Const(a.clone()), Self::prod(Functor::Id, Functor::Id))
    }

    pub fn apply(&self, x: &Carrier) -> Carrier {
        match self {
            Functor::Id => x.clone(),
            Functor::Const(c) => c.clone(),
            Functor::Sum(l, r) => Carrier::sum(&l.apply(x), &r.apply(x)),
            Functor::Prod(l, r) => Carrier::product(&l.apply(x), &r.apply(x)),
        }
    }

    /// `F R : F B <- F A`.
    pub fn map(&self, r: &Rel) -> Rel {
        match self {
            Functor::Id => r.clone(),
            Functor::Const(c) => Rel::id(c),
            Functor::Sum(a, b) => a.map(r).sum(&b.map(r)),
            Functor::Prod(a, b) => a.map(r).product(&b.map(r)),
        }
    }

    /// `F f` computed on indices, without going through matrices.
    pub fn map_fun(&self, f: &Fun) -> Fun {
        let (n, m) = (f.src().len(), f.tgt().len());
        let src = self.apply(f.src());
        let tgt = self.apply(f.tgt());
        let map = (0..src.len()).map(|i| self.encode(m, &self.decode(n, i).map_recs(&|x| f.apply(x)))).collect();
        Fun::new(&src, &tgt, map).expect("functor preserves totality")
    }

    /// `|F X|` for `|X| = n`.
    pub fn size(&self, n: usize) -> usize {
        match self {
            Functor::Id => n,
            Functor::Const(c) => c.len(),
            Functor::Sum(l, r) => l.size(n) + r.size(n),
            Functor::Prod(l, r) => l.size(n) * r.size(n),
        }
    }

    /// Index in `apply(X)` of a layer over `|X| = n`.
    pub fn encode(&self, n: usize, layer: &Layer) -> usize {
        match (self, layer) {
            (Functor::Id, Layer::Rec(x)) => *x,
            (Functor::Const(_), Layer::Atom(a)) => *a,
            (Functor::Sum(l, _), Layer::Inl(v)) => l.encode(n, v),
            (Functor::Sum(l, r), Layer::Inr(v)) => l.size(n) + r.encode(n, v),
            (Functor::Prod(l, r), Layer::Pair(u, v)) => l.encode(n, u) * r.size(n) + r.encode(n, v),
            _ => panic!("layer {layer:?} does not fit functor {self:?}"),
        }
    }

    pub fn decode(&self, n: usize, idx: usize) -> Layer {
        match self {
            Functor::Id => Layer::Rec(idx),
            Functor::Const(_) => Layer::Atom(idx),
            Functor::Sum(l, r) => {
                let k = l.size(n);
                if idx < k {
                    Layer::Inl(Box::new(l.decode(n, idx)))
                } else {
                    Layer::Inr(Box::new(r.decode(n, idx - k)))
                }
            }
            Functor::Prod(l, r) => {
                let k = r.size(n);
                Layer::Pair(Box::new(l.decode(n, idx / k)), Box::new(r.decode(n, idx % k)))
            }
        }
    }

    /// Every layer over `|X| = n`, in index order.
    pub fn layers(&self, n: usize) -> Vec<Layer> {
        (0..self.size(n)).map(|i| self.decode(n, i)).collect()
    }

    /// Number of recursive positions in the layer at `idx`.
    pub fn arity_of(&self, n: usize, idx: usize) -> usize {
        self.decode(n, idx).recs().len()
    }
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functor::Id => f.write_str("X"),
            Functor::Const(c) => f.write_str(c.name()),
            Functor::Sum(l, r) => write!(f, "({l:?} + {r:?})"),
            Functor::Prod(l, r) => write!(f, "({l:?} * {r:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_base_shape() {
        let a = Carrier::range("A", 2);
        let x = Carrier::numbered("X", 1);
        let fx = Functor::list(&a).apply(&x);
        assert_eq!(fx.len(), 3);
        assert_eq!(fx.elems(), ["i1:()", "i2:(0,x1)", "i2:(1,x1)"]);
    }

    #[test]
    fn encode_inverts_decode() {
        let a = Carrier::range("A", 2);
        for f in [Functor::list(&a), Functor::node_tree(&a), Functor::leaf_tree(&a)] {
            for i in 0..f.size(3) {
                assert_eq!(f.encode(3, &f.decode(3, i)), i);
            }
        }
    }

    #[test]
    fn map_fun_agrees_with_map() {
        let a = Carrier::range("A", 2);
        let x = Carrier::numbered("X", 3);
        let y = Carrier::numbered("Y", 2);
        let h = Fun::new(&x, &y, vec![1, 0, 1]).unwrap();
        for f in [Functor::list(&a), Functor::node_tree(&a), Functor::leaf_tree(&a)] {
            assert_eq!(f.map_fun(&h).rel(), f.map(&h.rel()));
        }
    }

    #[test]
    fn relators_preserve_identity() {
        let a = Carrier::range("A", 2);
        let x = Carrier::numbered("X", 2);
        for f in [Functor::list(&a), Functor::node_tree(&a), Functor::leaf_tree(&a)] {
            assert_eq!(f.map(&Rel::id(&x)), Rel::id(&f.apply(&x)));
        }
    }
}
