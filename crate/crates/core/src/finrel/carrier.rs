use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::RelError;

/// Default cap on `|A|` for powerset carriers (16 subsets).
pub const DEFAULT_POWER_BOUND: usize = 4;

/// How a carrier was built. Only used to recover projections, injections and
/// memberships; equality ignores it beyond what the name and labels already say.
#[derive(Clone, Debug)]
pub enum Shape {
    Plain,
    Product(Carrier, Carrier),
    Sum(Carrier, Carrier),
    Power(Carrier),
}

struct Inner {
    name: String,
    elems: Vec<String>,
    index: HashMap<String, usize>,
    shape: Shape,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    Product,
    Sum,
}

/// Entries kept before the memo table is flushed.
const MEMO_LIMIT: usize = 4096;

type MemoTable = HashMap<(Op, usize, usize), (Carrier, Carrier, Carrier)>;

/// Products and sums are rebuilt constantly by functor maps; sharing them
/// saves the label work and makes later carrier checks pointer comparisons.
/// Keys are operand addresses, kept valid by holding the operands.
fn memo(op: Op, a: &Carrier, b: &Carrier, build: impl FnOnce() -> Carrier) -> Carrier {
    static TABLE: OnceLock<Mutex<MemoTable>> = OnceLock::new();
    let key = (op, Arc::as_ptr(&a.0) as usize, Arc::as_ptr(&b.0) as usize);
    let table = TABLE.get_or_init(Default::default);
    if let Some((_, _, c)) = table.lock().expect("memo lock").get(&key) {
        return c.clone();
    }
    let c = build();
    let mut t = table.lock().expect("memo lock");
    if t.len() >= MEMO_LIMIT {
        t.clear();
    }
    t.insert(key, (a.clone(), b.clone(), c.clone()));
    c
}

/// A finite, ordered set of labelled elements.
///
/// Cloning is cheap. Two carriers are equal when their names and element lists
/// agree, however they were built.
#[derive(Clone)]
pub struct Carrier(Arc<Inner>);

impl Carrier {
    pub fn new<S: Into<String>>(name: impl Into<String>, elems: impl IntoIterator<Item = S>) -> Result<Self, RelError> {
        Self::with_shape(name.into(), elems.into_iter().map(Into::into).collect(), Shape::Plain)
    }

    fn with_shape(name: String, elems: Vec<String>, shape: Shape) -> Result<Self, RelError> {
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(RelError::DuplicateElement { carrier: name, elem: e.clone() });
            }
        }
        Ok(Carrier(Arc::new(Inner { name, elems, index, shape })))
    }

    /// `name` with elements `x1..xn`, where `x` is the lowercased name.
    pub fn numbered(name: &str, n: usize) -> Self {
        let stem = name.to_lowercase();
        let elems = (1..=n).map(|i| format!("{stem}{i}")).collect();
        Self::with_shape(name.to_string(), elems, Shape::Plain).expect("numbered labels are distinct")
    }

    /// `name` with elements `0..n`.
    pub fn range(name: &str, n: usize) -> Self {
        let elems = (0..n).map(|i| i.to_string()).collect();
        Self::with_shape(name.to_string(), elems, Shape::Plain).expect("numeric labels are distinct")
    }

    /// The singleton carrier `1`.
    pub fn unit() -> Self {
        Self::with_shape("1".into(), vec!["()".into()], Shape::Plain).unwrap()
    }

    pub fn booleans() -> Self {
        Self::with_shape("Bool".into(), vec!["F".into(), "T".into()], Shape::Plain).unwrap()
    }

    /// Pairs in left-major lexicographic order: `(i, j)` sits at `i * |b| + j`.
    pub fn product(a: &Carrier, b: &Carrier) -> Self {
        memo(Op::Product, a, b, || Self::build_product(a, b))
    }

    fn build_product(a: &Carrier, b: &Carrier) -> Self {
        let mut elems = Vec::with_capacity(a.len() * b.len());
        for x in a.elems() {
            for y in b.elems() {
                elems.push(format!("({x},{y})"));
            }
        }
        Self::with_shape(format!("({}*{})", a.name(), b.name()), elems, Shape::Product(a.clone(), b.clone()))
            .expect("pair labels are distinct")
    }

    /// Left summand first, then right; labels tagged `i1:` and `i2:`.
    pub fn sum(a: &Carrier, b: &Carrier) -> Self {
        memo(Op::Sum, a, b, || Self::build_sum(a, b))
    }

    fn build_sum(a: &Carrier, b: &Carrier) -> Self {
        let elems =
            a.elems().iter().map(|x| format!("i1:{x}")).chain(b.elems().iter().map(|y| format!("i2:{y}"))).collect();
        Self::with_shape(format!("({}+{})", a.name(), b.name()), elems, Shape::Sum(a.clone(), b.clone()))
            .expect("tagged labels are distinct")
    }

    /// All subsets of `a`, ordered by bitmask value.
    pub fn power(a: &Carrier, bound: usize) -> Result<Self, RelError> {
        if a.len() > bound {
            return Err(RelError::PowersetBound { carrier: a.describe(), size: a.len(), bound });
        }
        let elems = (0..1usize << a.len())
            .map(|mask| {
                let members: Vec<&str> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a.elem(i)).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        Self::with_shape(format!("P{}", a.name()), elems, Shape::Power(a.clone()))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn elems(&self) -> &[String] {
        &self.0.elems
    }

    pub fn elem(&self, i: usize) -> &str {
        &self.0.elems[i]
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn shape(&self) -> &Shape {
        &self.0.shape
    }

    pub fn index_of(&self, label: &str) -> Result<usize, RelError> {
        self.0
            .index
            .get(label)
            .copied()
            .ok_or_else(|| RelError::UnknownElement { carrier: self.describe(), elem: label.to_string() })
    }

    /// `Name(n)`, the form used in error messages and fixture headers.
    pub fn describe(&self) -> String {
        format!("{}({})", self.name(), self.len())
    }

    pub fn factors(&self) -> Option<(&Carrier, &Carrier)> {
        match &self.0.shape {
            Shape::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn summands(&self) -> Option<(&Carrier, &Carrier)> {
        match &self.0.shape {
            Shape::Sum(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn power_base(&self) -> Option<&Carrier> {
        match &self.0.shape {
            Shape::Power(a) => Some(a),
            _ => None,
        }
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.name == other.0.name && self.0.elems == other.0.elems)
    }
}

impl Eq for Carrier {}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_are_rejected() {
        assert!(matches!(Carrier::new("A", ["x", "x"]), Err(RelError::DuplicateElement { .. })));
    }

    #[test]
    fn unit_has_one_element() {
        assert_eq!(Carrier::unit().len(), 1);
        assert_eq!(Carrier::unit(), Carrier::unit());
    }

    #[test]
    fn product_order_is_left_major() {
        let a = Carrier::numbered("A", 2);
        let b = Carrier::numbered("B", 3);
        let p = Carrier::product(&a, &b);
        assert_eq!(p.len(), 6);
        assert_eq!(p.elem(4), "(a2,b2)");
        assert_eq!(p, Carrier::product(&a, &b));
    }

    #[test]
    fn sum_puts_left_first() {
        let s = Carrier::sum(&Carrier::numbered("A", 2), &Carrier::numbered("B", 1));
        assert_eq!(s.elems(), ["i1:a1", "i1:a2", "i2:b1"]);
    }

    #[test]
    fn powerset_is_bitmask_ordered_and_bounded() {
        let a = Carrier::numbered("A", 2);
        let p = Carrier::power(&a, DEFAULT_POWER_BOUND).unwrap();
        assert_eq!(p.elems(), ["{}", "{a1}", "{a2}", "{a1,a2}"]);
        let big = Carrier::numbered("A", 5);
        assert!(matches!(Carrier::power(&big, 4), Err(RelError::PowersetBound { size: 5, .. })));
    }
}
