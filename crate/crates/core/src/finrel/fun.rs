use super::{Carrier, Rel, RelError};

/// A total function `tgt <- src`, kept as its map so that function-heavy code
/// does not have to scan matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fun {
    src: Carrier,
    tgt: Carrier,
    map: Vec<usize>,
}

impl Fun {
    pub fn new(src: &Carrier, tgt: &Carrier, map: Vec<usize>) -> Result<Self, RelError> {
        if map.len() != src.len() || map.iter().any(|&t| t >= tgt.len()) {
            return Err(RelError::NotFunction(format!("map does not fit {} -> {}", src.describe(), tgt.describe())));
        }
        Ok(Fun { src: src.clone(), tgt: tgt.clone(), map })
    }

    pub fn from_fn(src: &Carrier, tgt: &Carrier, f: impl Fn(usize) -> usize) -> Result<Self, RelError> {
        Self::new(src, tgt, (0..src.len()).map(f).collect())
    }

    /// Accepts `r` only if it is entire and simple.
    pub fn from_rel(r: &Rel) -> Result<Self, RelError> {
        let conv = r.converse();
        let mut map = Vec::with_capacity(r.src().len());
        for s in 0..r.src().len() {
            let mut img = conv.row_indices(s);
            match (img.next(), img.next()) {
                (Some(t), None) => map.push(t),
                (None, _) => {
                    return Err(RelError::NotFunction(format!("{} has no image", r.src().elem(s))));
                }
                (Some(_), Some(_)) => {
                    return Err(RelError::NotFunction(format!("{} has several images", r.src().elem(s))));
                }
            }
        }
        Ok(Fun { src: r.src().clone(), tgt: r.tgt().clone(), map })
    }

    pub fn id(a: &Carrier) -> Self {
        Fun { src: a.clone(), tgt: a.clone(), map: (0..a.len()).collect() }
    }

    /// The unique function into `1`.
    pub fn bang(a: &Carrier) -> Self {
        Fun { src: a.clone(), tgt: Carrier::unit(), map: vec![0; a.len()] }
    }

    /// The constant function yielding `k`.
    pub fn constant(src: &Carrier, tgt: &Carrier, k: usize) -> Result<Self, RelError> {
        if k >= tgt.len() {
            return Err(RelError::UnknownElement { carrier: tgt.describe(), elem: format!("#{k}") });
        }
        Ok(Fun { src: src.clone(), tgt: tgt.clone(), map: vec![k; src.len()] })
    }

    pub fn src(&self) -> &Carrier {
        &self.src
    }

    pub fn tgt(&self) -> &Carrier {
        &self.tgt
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }

    pub fn rel(&self) -> Rel {
        Rel::graph(&self.src, &self.tgt, &self.map)
    }

    /// `self · g`.
    pub fn after(&self, g: &Fun) -> Result<Fun, RelError> {
        super::rel::check_same("compose", &self.src, &g.tgt)?;
        Ok(Fun { src: g.src.clone(), tgt: self.tgt.clone(), map: g.map.iter().map(|&b| self.map[b]).collect() })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.tgt.len()];
        self.map.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.tgt.len()];
        for &t in &self.map {
            seen[t] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

/// A boolean test on a carrier; interconvertible with its coreflexive `p?`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    carrier: Carrier,
    truth: Vec<bool>,
}

impl Predicate {
    pub fn new(carrier: &Carrier, truth: Vec<bool>) -> Result<Self, RelError> {
        if truth.len() != carrier.len() {
            return Err(RelError::NotFunction(format!("predicate length does not match {}", carrier.describe())));
        }
        Ok(Predicate { carrier: carrier.clone(), truth })
    }

    pub fn from_fn(carrier: &Carrier, p: impl Fn(usize) -> bool) -> Self {
        Predicate { carrier: carrier.clone(), truth: (0..carrier.len()).map(p).collect() }
    }

    pub fn always(carrier: &Carrier) -> Self {
        Self::from_fn(carrier, |_| true)
    }

    pub fn never(carrier: &Carrier) -> Self {
        Self::from_fn(carrier, |_| false)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn truth(&self) -> &[bool] {
        &self.truth
    }

    #[inline]
    pub fn holds(&self, x: usize) -> bool {
        self.truth[x]
    }

    /// `self · f`, i.e. `x |-> self(f x)`.
    pub fn after(&self, f: &Fun) -> Result<Predicate, RelError> {
        super::rel::check_same("predicate after function", &self.carrier, f.tgt())?;
        Ok(Predicate { carrier: f.src().clone(), truth: f.map().iter().map(|&y| self.truth[y]).collect() })
    }

    /// The predicate as a function into `Bool`.
    pub fn as_fun(&self) -> Fun {
        Fun {
            src: self.carrier.clone(),
            tgt: Carrier::booleans(),
            map: self.truth.iter().map(|&b| b as usize).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rel_requires_entire_and_simple() {
        let a = Carrier::numbered("A", 2);
        assert!(Fun::from_rel(&Rel::id(&a)).is_ok());
        assert!(Fun::from_rel(&Rel::top(&a, &a)).is_err());
        assert!(Fun::from_rel(&Rel::empty(&a, &a)).is_err());
    }

    #[test]
    fn constant_absorbs_precomposition() {
        let a = Carrier::numbered("A", 3);
        let b = Carrier::numbered("B", 2);
        let k = Fun::constant(&b, &b, 1).unwrap();
        let f = Fun::new(&a, &b, vec![0, 1, 1]).unwrap();
        assert_eq!(k.after(&f).unwrap(), Fun::constant(&a, &b, 1).unwrap());
        assert!(Fun::constant(&a, &b, 2).is_err());
    }

    #[test]
    fn bang_is_surjective() {
        let a = Carrier::numbered("A", 3);
        assert!(Fun::bang(&a).is_surjective());
        assert!(!Fun::bang(&a).is_injective());
    }
}
