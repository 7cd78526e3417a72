use std::fmt;

use super::{Carrier, RelError};

/// A relation `tgt <- src` stored as a dense bit matrix.
///
/// Row `t` holds the sources related to target `t`, so `b R a` is `get(b, a)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rel {
    src: Carrier,
    tgt: Carrier,
    stride: usize,
    bits: Vec<u64>,
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

pub(crate) fn check_same(op: &'static str, left: &Carrier, right: &Carrier) -> Result<(), RelError> {
    if left == right {
        Ok(())
    } else {
        Err(RelError::CarrierMismatch { op, left: left.describe(), right: right.describe() })
    }
}

impl Rel {
    /// The empty relation `⊥ : tgt <- src`.
    pub fn empty(src: &Carrier, tgt: &Carrier) -> Self {
        let stride = words_for(src.len());
        Rel { src: src.clone(), tgt: tgt.clone(), stride, bits: vec![0; stride * tgt.len()] }
    }

    pub fn top(src: &Carrier, tgt: &Carrier) -> Self {
        let mut r = Self::empty(src, tgt);
        for t in 0..tgt.len() {
            r.fill_row(t);
        }
        r
    }

    pub fn id(a: &Carrier) -> Self {
        let mut r = Self::empty(a, a);
        for i in 0..a.len() {
            r.set(i, i);
        }
        r
    }

    /// `pairs` are `(target, source)` indices.
    pub fn from_pairs(
        src: &Carrier,
        tgt: &Carrier,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, RelError> {
        let mut r = Self::empty(src, tgt);
        for (t, s) in pairs {
            if t >= tgt.len() || s >= src.len() {
                return Err(RelError::IndexOutOfRange { src: src.describe(), tgt: tgt.describe(), t, s });
            }
            r.set(t, s);
        }
        Ok(r)
    }

    /// Builds `tgt <- src` from a pointwise test `test(t, s)`.
    pub fn from_fn(src: &Carrier, tgt: &Carrier, mut test: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(src, tgt);
        for t in 0..tgt.len() {
            for s in 0..src.len() {
                if test(t, s) {
                    r.set(t, s);
                }
            }
        }
        r
    }

    /// Graph of a total map `s |-> map[s]`.
    pub fn graph(src: &Carrier, tgt: &Carrier, map: &[usize]) -> Self {
        debug_assert_eq!(map.len(), src.len());
        let mut r = Self::empty(src, tgt);
        for (s, &t) in map.iter().enumerate() {
            r.set(t, s);
        }
        r
    }

    /// Relation whose bits, read in row-major order, are the low bits of `mask`.
    pub fn from_mask(src: &Carrier, tgt: &Carrier, mask: u64) -> Self {
        let mut r = Self::empty(src, tgt);
        let n = src.len();
        for k in 0..(src.len() * tgt.len()).min(64) {
            if mask >> k & 1 == 1 {
                r.set(k / n, k % n);
            }
        }
        r
    }

    pub fn src(&self) -> &Carrier {
        &self.src
    }

    pub fn tgt(&self) -> &Carrier {
        &self.tgt
    }

    #[inline]
    pub fn get(&self, t: usize, s: usize) -> bool {
        self.bits[t * self.stride + s / 64] >> (s % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, t: usize, s: usize) {
        self.bits[t * self.stride + s / 64] |= 1 << (s % 64);
    }

    #[inline]
    pub fn clear(&mut self, t: usize, s: usize) {
        self.bits[t * self.stride + s / 64] &= !(1 << (s % 64));
    }

    pub(crate) fn row(&self, t: usize) -> &[u64] {
        &self.bits[t * self.stride..(t + 1) * self.stride]
    }

    fn row_mut(&mut self, t: usize) -> &mut [u64] {
        &mut self.bits[t * self.stride..(t + 1) * self.stride]
    }

    fn fill_row(&mut self, t: usize) {
        let n = self.src.len();
        let row = self.row_mut(t);
        for (w, word) in row.iter_mut().enumerate() {
            let lo = w * 64;
            let k = (n - lo).min(64);
            *word = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        }
    }

    /// Sources related to target `t`, ascending.
    pub fn row_indices(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(t).iter().enumerate().flat_map(|(w, &word)| BitIter(word).map(move |b| w * 64 + b))
    }

    /// Targets related to source `s`, ascending: the image set of `s`.
    pub fn image(&self, s: usize) -> Vec<usize> {
        (0..self.tgt.len()).filter(|&t| self.get(t, s)).collect()
    }

    /// All `(target, source)` pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.tgt.len()).flat_map(move |t| self.row_indices(t).map(move |s| (t, s)))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn row_is_empty(&self, t: usize) -> bool {
        self.row(t).iter().all(|&w| w == 0)
    }

    pub fn converse(&self) -> Rel {
        let mut r = Rel::empty(&self.tgt, &self.src);
        for (t, s) in self.pairs() {
            r.set(s, t);
        }
        r
    }

    /// `self · r`: first `r`, then `self`.
    pub fn compose(&self, r: &Rel) -> Result<Rel, RelError> {
        check_same("compose", &self.src, &r.tgt)?;
        let mut out = Rel::empty(&r.src, &self.tgt);
        for c in 0..self.tgt.len() {
            let start = c * out.stride;
            for b in self.row_indices(c) {
                let rb = r.row(b);
                for (o, &w) in out.bits[start..start + out.stride].iter_mut().zip(rb) {
                    *o |= w;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Rel, op: &'static str, f: impl Fn(u64, u64) -> u64) -> Result<Rel, RelError> {
        check_same(op, &self.src, &other.src)?;
        check_same(op, &self.tgt, &other.tgt)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect();
        Ok(Rel { src: self.src.clone(), tgt: self.tgt.clone(), stride: self.stride, bits })
    }

    pub fn meet(&self, other: &Rel) -> Result<Rel, RelError> {
        self.zip_with(other, "meet", |a, b| a & b)
    }

    pub fn join(&self, other: &Rel) -> Result<Rel, RelError> {
        self.zip_with(other, "join", |a, b| a | b)
    }

    /// Pairs of `self` not in `other`.
    pub fn minus(&self, other: &Rel) -> Result<Rel, RelError> {
        self.zip_with(other, "minus", |a, b| a & !b)
    }

    /// `other ⊆ self`.
    pub fn includes(&self, other: &Rel) -> Result<bool, RelError> {
        check_same("includes", &self.src, &other.src)?;
        check_same("includes", &self.tgt, &other.tgt)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| b & !a == 0))
    }

    /// `self ⊆ other`.
    pub fn included_in(&self, other: &Rel) -> Result<bool, RelError> {
        other.includes(self)
    }

    /// First pair of `other` missing from `self`, if any.
    pub fn missing_from(&self, other: &Rel) -> Option<(usize, usize)> {
        other.pairs().find(|&(t, s)| !self.get(t, s))
    }

    pub fn complement(&self) -> Rel {
        let mut r = Rel::top(&self.src, &self.tgt);
        for (o, &w) in r.bits.iter_mut().zip(&self.bits) {
            *o &= !w;
        }
        r
    }

    /// Human-readable pair `(target, source)` for witnesses.
    pub fn label_pair(&self, t: usize, s: usize) -> String {
        format!("{} <- {}", self.tgt.elem(t), self.src.elem(s))
    }

    /// Compact one-line rendering: `{t<-s, ...}` over `Src -> Tgt`.
    pub fn render(&self) -> String {
        let body: Vec<String> =
            self.pairs().map(|(t, s)| format!("{}<-{}", self.tgt.elem(t), self.src.elem(s))).collect();
        format!("{} -> {} {{{}}}", self.src.describe(), self.tgt.describe(), body.join(", "))
    }
}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> (Carrier, Carrier) {
        (Carrier::numbered("A", 2), Carrier::numbered("B", 3))
    }

    #[test]
    fn one_step_chain() {
        let a = Carrier::numbered("A", 1);
        let b = Carrier::numbered("B", 1);
        let c = Carrier::numbered("C", 1);
        let r = Rel::from_pairs(&a, &b, [(0, 0)]).unwrap();
        let s = Rel::from_pairs(&b, &c, [(0, 0)]).unwrap();
        assert_eq!(s.compose(&r).unwrap().pairs().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn compose_rejects_mismatch_naming_both_carriers() {
        let (a, b) = ab();
        let r = Rel::top(&a, &b);
        let err = r.compose(&r).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("A(2)") && msg.contains("B(3)"), "{msg}");
    }

    #[test]
    fn converse_swaps() {
        let (a, b) = ab();
        let r = Rel::from_pairs(&a, &b, [(0, 1)]).unwrap();
        assert_eq!(r.converse().pairs().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(r.converse().converse(), r);
    }

    #[test]
    fn lattice_units() {
        let (a, b) = ab();
        let r = Rel::from_pairs(&a, &b, [(0, 1), (2, 0)]).unwrap();
        assert_eq!(r.meet(&Rel::top(&a, &b)).unwrap(), r);
        assert_eq!(r.join(&Rel::empty(&a, &b)).unwrap(), r);
        assert_eq!(r.complement().complement(), r);
        assert_eq!(Rel::top(&a, &b).count(), 6);
    }

    #[test]
    fn wide_rows_compose() {
        let a = Carrier::range("N", 130);
        let id = Rel::id(&a);
        let top = Rel::top(&a, &a);
        assert_eq!(id.compose(&top).unwrap(), top);
        assert_eq!(top.count(), 130 * 130);
    }
}
