use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::finrel::{write_fixture, Carrier, Fun, Predicate, Rel, DEFAULT_POWER_BOUND};
use crate::inductive::{Bound, Functor, Mu};

/// Knobs of the instance generators. The seed fully determines the random stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenConfig {
    /// Largest carrier enumerated exhaustively.
    pub max_size: usize,
    /// Largest carrier drawn in the random phase.
    pub random_max_size: usize,
    pub samples: usize,
    pub seed: u64,
    pub power_bound: usize,
    /// Depth bound of the inductive carriers used by fold laws.
    pub depth: usize,
    /// Largest alphabet of the inductive carriers.
    pub alphabet: usize,
    /// Exhaustive enumeration is used only when the instance count fits.
    pub budget: u64,
    /// Report wall time; off by default so reports are byte-stable.
    pub timing: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_size: 2,
            random_max_size: 4,
            samples: 500,
            seed: 0,
            power_bound: DEFAULT_POWER_BOUND,
            depth: 3,
            alphabet: 3,
            budget: 1_000_000,
            timing: false,
        }
    }
}

/// Carrier expressions. Base carriers are sized per instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    Base(usize),
    Bool,
    Unit,
    Prod(Box<Ty>, Box<Ty>),
    Sum(Box<Ty>, Box<Ty>),
    /// The base functor of the instance's inductive type, applied.
    F(Box<Ty>),
    /// The depth-bounded inductive type itself.
    Mu,
}

impl Ty {
    pub fn prod(a: Ty, b: Ty) -> Ty {
        Ty::Prod(Box::new(a), Box::new(b))
    }

    pub fn sum(a: Ty, b: Ty) -> Ty {
        Ty::Sum(Box::new(a), Box::new(b))
    }

    pub fn f(a: Ty) -> Ty {
        Ty::F(Box::new(a))
    }

    fn bases(&self, out: &mut Vec<usize>) {
        match self {
            Ty::Base(i) => out.push(*i),
            Ty::Prod(a, b) | Ty::Sum(a, b) => {
                a.bases(out);
                b.bases(out);
            }
            Ty::F(a) => a.bases(out),
            Ty::Bool | Ty::Unit | Ty::Mu => {}
        }
    }

    fn inductive(&self) -> bool {
        match self {
            Ty::F(_) | Ty::Mu => true,
            Ty::Prod(a, b) | Ty::Sum(a, b) => a.inductive() || b.inductive(),
            _ => false,
        }
    }
}

pub const A: Ty = Ty::Base(0);
pub const B: Ty = Ty::Base(1);
pub const C: Ty = Ty::Base(2);
pub const D: Ty = Ty::Base(3);
pub const E: Ty = Ty::Base(4);

/// What a law variable ranges over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sort {
    /// Any relation `tgt <- src`.
    Rel(Ty, Ty),
    /// Any function `src -> tgt`.
    Fun(Ty, Ty),
    /// Surjective functions `src -> tgt`.
    Surj(Ty, Ty),
    Coreflexive(Ty),
    Equivalence(Ty),
    Predicate(Ty),
    /// One element.
    Elem(Ty),
    /// Nothing, or one position of a `tgt <- src` matrix.
    Toggle(Ty, Ty),
    /// Sub-relations of the constructor algebra of the inductive type.
    SubIn,
}

impl Sort {
    fn tys(&self) -> Vec<&Ty> {
        match self {
            Sort::Rel(t, s) | Sort::Fun(s, t) | Sort::Surj(s, t) | Sort::Toggle(t, s) => vec![t, s],
            Sort::Coreflexive(a) | Sort::Equivalence(a) | Sort::Predicate(a) | Sort::Elem(a) => vec![a],
            Sort::SubIn => vec![],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Sort::Rel(..) | Sort::Toggle(..) => "relation",
            Sort::Fun(..) => "function",
            Sort::Surj(..) => "surjection",
            Sort::Coreflexive(_) => "coreflexive",
            Sort::Equivalence(_) => "equivalence",
            Sort::Predicate(_) | Sort::Elem(_) => "predicate",
            Sort::SubIn => "functor-instance",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Var {
    pub name: &'static str,
    pub sort: Sort,
}

pub fn var(name: &'static str, sort: Sort) -> Var {
    Var { name, sort }
}

/// Which inductive type a fold law runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    List,
    NodeTree,
    LeafTree,
}

const SHAPES: [Shape; 3] = [Shape::List, Shape::NodeTree, Shape::LeafTree];

#[derive(Clone, Debug)]
pub enum Value {
    Rel(Rel),
    Fun(Fun),
    Pred(Predicate),
    Elem(usize, Carrier),
    Toggle(Option<(usize, usize)>),
}

/// Carrier sizes and inductive type of one batch of instances.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub sizes: Vec<usize>,
    pub inductive: Option<(Shape, usize)>,
}

/// Caches carriers and inductive types across the frames of one law run.
#[derive(Default)]
pub struct Universe {
    mus: HashMap<(Shape, usize, usize), Arc<Mu>>,
    bases: HashMap<(usize, usize), Carrier>,
}

/// Largest `F Mu` a fold law is checked on.
const MAX_F_MU: usize = 4096;

const BASE_NAMES: [&str; 5] = ["A", "B", "C", "D", "E"];

impl Universe {
    fn base(&mut self, i: usize, n: usize) -> Carrier {
        self.bases.entry((i, n)).or_insert_with(|| Carrier::numbered(BASE_NAMES[i], n)).clone()
    }

    fn mu(&mut self, shape: Shape, alphabet: usize, depth: usize) -> Arc<Mu> {
        self.mus
            .entry((shape, alphabet, depth))
            .or_insert_with(|| {
                let a = Carrier::numbered("X", alphabet);
                let f = match shape {
                    Shape::List => Functor::list(&a),
                    Shape::NodeTree => Functor::node_tree(&a),
                    Shape::LeafTree => Functor::leaf_tree(&a),
                };
                // laws build dense relations on F Mu, so trees get shallower bounds
                let mut d = depth;
                loop {
                    let mu = Mu::new(&f, Bound::depth(d)).expect("small inductive carrier");
                    if d == 0 || f.size(mu.len()) <= MAX_F_MU {
                        break Arc::new(mu);
                    }
                    d -= 1;
                }
            })
            .clone()
    }
}

/// Bit counts above this are split across several digits.
const CHUNK: usize = 30;

fn bit_digits(bits: usize, out: &mut Vec<u64>) {
    let mut left = bits;
    while left > 0 {
        let k = left.min(CHUNK);
        out.push(1u64 << k);
        left -= k;
    }
}

/// Set partitions of `0..n` as restricted growth strings.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur.push(b);
            go(i + 1, n, cur, max.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Largest carrier an equivalence is generated on.
const MAX_PARTITIONED: usize = 8;

/// A frame with its carriers resolved and the radix of every digit.
pub struct Plan {
    pub frame: Frame,
    mu: Option<Arc<Mu>>,
    carriers: Vec<Vec<Carrier>>,
    radices: Vec<Vec<u64>>,
    partitions: HashMap<usize, Vec<Vec<usize>>>,
    in_pairs: Vec<(usize, usize)>,
}

impl Plan {
    pub fn new(vars: &[Var], frame: Frame, uni: &mut Universe, depth: usize) -> Option<Plan> {
        let mu = frame.inductive.map(|(s, alpha)| uni.mu(s, alpha, depth));
        let mut resolve = |ty: &Ty| -> Carrier { carrier_of(ty, &frame, mu.as_deref(), uni) };
        let carriers: Vec<Vec<Carrier>> =
            vars.iter().map(|v| v.sort.tys().into_iter().map(&mut resolve).collect()).collect();
        let in_pairs: Vec<(usize, usize)> = match &mu {
            Some(m) if vars.iter().any(|v| v.sort == Sort::SubIn) => m.in_alg().pairs().collect(),
            _ => Vec::new(),
        };
        let mut partitions_by_size = HashMap::new();
        let mut radices = Vec::with_capacity(vars.len());
        for (v, cs) in vars.iter().zip(&carriers) {
            let mut ds = Vec::new();
            match &v.sort {
                Sort::Rel(..) => bit_digits(cs[0].len() * cs[1].len(), &mut ds),
                Sort::Fun(..) | Sort::Surj(..) => {
                    // carriers are listed target first
                    if cs[0].is_empty() && !cs[1].is_empty() {
                        return None;
                    }
                    ds.extend(std::iter::repeat_n(cs[0].len() as u64, cs[1].len()))
                }
                Sort::Coreflexive(_) | Sort::Predicate(_) => bit_digits(cs[0].len(), &mut ds),
                Sort::Equivalence(_) => {
                    let n = cs[0].len();
                    if n > MAX_PARTITIONED {
                        return None;
                    }
                    let ps = partitions_by_size.entry(n).or_insert_with(|| partitions(n));
                    ds.push(ps.len() as u64);
                }
                Sort::Elem(_) => {
                    if cs[0].is_empty() {
                        return None;
                    }
                    ds.push(cs[0].len() as u64)
                }
                Sort::Toggle(..) => ds.push((cs[0].len() * cs[1].len()) as u64 + 1),
                Sort::SubIn => bit_digits(in_pairs.len(), &mut ds),
            }
            radices.push(ds);
        }
        Some(Plan { frame, mu, carriers, radices, partitions: partitions_by_size, in_pairs })
    }

    /// Number of digit assignments, saturating.
    pub fn count(&self) -> u64 {
        self.radices.iter().flatten().fold(1u64, |acc, &r| acc.saturating_mul(r))
    }

    fn digits(&self) -> usize {
        self.radices.iter().map(Vec::len).sum()
    }

    /// Builds the instance for one digit assignment, or `None` when a
    /// filtered sort (surjections) rejects it.
    pub fn instance(&self, vars: &[Var], digits: &[u64], power_bound: usize) -> Option<Instance> {
        let mut pos = 0;
        let mut vals = Vec::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            let ds = &digits[pos..pos + self.radices[i].len()];
            pos += ds.len();
            let cs = &self.carriers[i];
            let bits = |n: usize| -> Vec<bool> {
                let mut out = Vec::with_capacity(n);
                for (k, &d) in ds.iter().enumerate() {
                    let width = (n - k * CHUNK).min(CHUNK);
                    out.extend((0..width).map(|b| d >> b & 1 == 1));
                }
                out
            };
            let value = match &v.sort {
                Sort::Rel(..) => {
                    let (t, s) = (&cs[0], &cs[1]);
                    let bs = bits(t.len() * s.len());
                    Value::Rel(Rel::from_fn(s, t, |x, y| bs[x * s.len() + y]))
                }
                Sort::Fun(..) | Sort::Surj(..) => {
                    let map: Vec<usize> = ds.iter().map(|&d| d as usize).collect();
                    let f = Fun::new(&cs[1], &cs[0], map).expect("digits are in range");
                    if matches!(v.sort, Sort::Surj(..)) && !f.is_surjective() {
                        return None;
                    }
                    Value::Fun(f)
                }
                Sort::Coreflexive(_) => {
                    let p = Predicate::new(&cs[0], bits(cs[0].len())).expect("sized");
                    Value::Rel(Rel::coreflexive(&p))
                }
                Sort::Predicate(_) => Value::Pred(Predicate::new(&cs[0], bits(cs[0].len())).expect("sized")),
                Sort::Equivalence(_) => {
                    let blocks = &self.partitions[&cs[0].len()][ds[0] as usize];
                    Value::Rel(Rel::from_fn(&cs[0], &cs[0], |x, y| blocks[x] == blocks[y]))
                }
                Sort::Elem(_) => Value::Elem(ds[0] as usize, cs[0].clone()),
                Sort::Toggle(..) => {
                    let k = ds[0] as usize;
                    let w = cs[1].len();
                    Value::Toggle((k > 0).then(|| ((k - 1) / w, (k - 1) % w)))
                }
                Sort::SubIn => {
                    let mu = self.mu.as_ref().expect("inductive frame");
                    let bs = bits(self.in_pairs.len());
                    let mut r = Rel::empty(&mu.f_carrier(), mu.carrier());
                    for (&(t, s), keep) in self.in_pairs.iter().zip(bs) {
                        if keep {
                            r.set(t, s);
                        }
                    }
                    Value::Rel(r)
                }
            };
            vals.push((v.name, value));
        }
        Some(Instance { frame: self.frame.clone(), mu: self.mu.clone(), vals, power_bound })
    }

    pub fn random_digits(&self, rng: &mut ChaCha8Rng) -> Vec<u64> {
        self.radices.iter().flatten().map(|&r| rng.gen_range(0..r)).collect()
    }

    /// Steps `digits` to the next assignment; `false` after the last one.
    pub fn advance(&self, digits: &mut [u64]) -> bool {
        let radices: Vec<u64> = self.radices.iter().flatten().copied().collect();
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < radices[i] {
                return true;
            }
            digits[i] = 0;
        }
        false
    }

    pub fn first_digits(&self) -> Vec<u64> {
        vec![0; self.digits()]
    }
}

fn carrier_of(ty: &Ty, frame: &Frame, mu: Option<&Mu>, uni: &mut Universe) -> Carrier {
    match ty {
        Ty::Base(i) => uni.base(*i, frame.sizes[*i]),
        Ty::Bool => Carrier::booleans(),
        Ty::Unit => Carrier::unit(),
        Ty::Prod(a, b) => Carrier::product(&carrier_of(a, frame, mu, uni), &carrier_of(b, frame, mu, uni)),
        Ty::Sum(a, b) => Carrier::sum(&carrier_of(a, frame, mu, uni), &carrier_of(b, frame, mu, uni)),
        Ty::F(a) => mu.expect("inductive frame").base().apply(&carrier_of(a, frame, mu, uni)),
        Ty::Mu => mu.expect("inductive frame").carrier().clone(),
    }
}

/// Number of base carriers and whether an inductive type is needed.
pub fn signature(vars: &[Var], extra: &[Ty]) -> (usize, bool) {
    let mut bases = Vec::new();
    let mut inductive = false;
    for ty in vars.iter().flat_map(|v| v.sort.tys()).chain(extra) {
        ty.bases(&mut bases);
        inductive |= ty.inductive();
    }
    inductive |= vars.iter().any(|v| v.sort == Sort::SubIn);
    (bases.into_iter().max().map_or(0, |m| m + 1), inductive)
}

/// Every frame with carriers of size `1..=max` in canonical order.
pub fn frames(n_bases: usize, inductive: bool, max: usize, max_alphabet: usize) -> Vec<Frame> {
    let mut sizes = vec![vec![]];
    for _ in 0..n_bases {
        sizes =
            sizes.into_iter().flat_map(|s: Vec<usize>| (1..=max).map(move |k| [s.clone(), vec![k]].concat())).collect();
    }
    let inductives: Vec<Option<(Shape, usize)>> = if inductive {
        SHAPES.iter().flat_map(|&s| (1..=max.min(max_alphabet)).map(move |a| Some((s, a)))).collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for s in &sizes {
        for &i in &inductives {
            out.push(Frame { sizes: s.clone(), inductive: i });
        }
    }
    out
}

pub fn random_frame(rng: &mut ChaCha8Rng, n_bases: usize, inductive: bool, max: usize, max_alphabet: usize) -> Frame {
    let sizes = (0..n_bases).map(|_| rng.gen_range(1..=max)).collect();
    let inductive =
        inductive.then(|| (SHAPES[rng.gen_range(0..SHAPES.len())], rng.gen_range(1..=max.min(max_alphabet).max(1))));
    Frame { sizes, inductive }
}

/// One assignment of a law's variables.
#[derive(Clone, Debug)]
pub struct Instance {
    pub frame: Frame,
    mu: Option<Arc<Mu>>,
    vals: Vec<(&'static str, Value)>,
    pub power_bound: usize,
}

impl Instance {
    fn get(&self, name: &str) -> &Value {
        &self.vals.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no variable {name}")).1
    }

    pub fn rel(&self, name: &str) -> Rel {
        match self.get(name) {
            Value::Rel(r) => r.clone(),
            Value::Fun(f) => f.rel(),
            Value::Pred(p) => p.as_fun().rel(),
            other => panic!("{name} is not a relation: {other:?}"),
        }
    }

    pub fn fun(&self, name: &str) -> &Fun {
        match self.get(name) {
            Value::Fun(f) => f,
            other => panic!("{name} is not a function: {other:?}"),
        }
    }

    pub fn pred(&self, name: &str) -> &Predicate {
        match self.get(name) {
            Value::Pred(p) => p,
            other => panic!("{name} is not a predicate: {other:?}"),
        }
    }

    pub fn elem(&self, name: &str) -> usize {
        match self.get(name) {
            Value::Elem(e, _) => *e,
            other => panic!("{name} is not an element: {other:?}"),
        }
    }

    /// The carrier an element variable ranges over.
    pub fn elem_carrier(&self, name: &str) -> &Carrier {
        match self.get(name) {
            Value::Elem(_, c) => c,
            other => panic!("{name} is not an element: {other:?}"),
        }
    }

    pub fn toggle(&self, name: &str) -> Option<(usize, usize)> {
        match self.get(name) {
            Value::Toggle(t) => *t,
            other => panic!("{name} is not a toggle: {other:?}"),
        }
    }

    pub fn mu(&self) -> &Mu {
        self.mu.as_deref().expect("law runs on an inductive type")
    }

    pub fn functor(&self) -> &Functor {
        self.mu().base()
    }

    /// The variables in fixture format, for counterexamples.
    pub fn render(&self) -> String {
        let mut out = Vec::new();
        if let Some(mu) = &self.mu {
            out.push(format!("# inductive type {} ({} terms)", mu.carrier().name(), mu.len()));
        }
        for (name, v) in &self.vals {
            match v {
                Value::Rel(r) => out.push(write_fixture(Some(name), r).trim_end().to_string()),
                Value::Fun(f) => out.push(write_fixture(Some(name), &f.rel()).trim_end().to_string()),
                Value::Pred(p) => out.push(write_fixture(Some(name), &Rel::coreflexive(p)).trim_end().to_string()),
                Value::Elem(e, c) => out.push(format!("# {name} = {}", c.elem(*e))),
                Value::Toggle(t) => out.push(format!("# {name} = {t:?}")),
            }
        }
        out.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(vars: &[Var], sizes: Vec<usize>) -> u64 {
        let mut uni = Universe::default();
        Plan::new(vars, Frame { sizes, inductive: None }, &mut uni, 2).unwrap().count()
    }

    fn enumerate(vars: &[Var], sizes: Vec<usize>) -> Vec<Instance> {
        let mut uni = Universe::default();
        let plan = Plan::new(vars, Frame { sizes, inductive: None }, &mut uni, 2).unwrap();
        let mut d = plan.first_digits();
        let mut out = Vec::new();
        loop {
            out.extend(plan.instance(vars, &d, 4));
            if !plan.advance(&mut d) {
                return out;
            }
        }
    }

    #[test]
    fn relation_count() {
        assert_eq!(count(&[var("R", Sort::Rel(B, A))], vec![2, 2]), 16);
        assert_eq!(enumerate(&[var("R", Sort::Rel(B, A))], vec![2, 2]).len(), 16);
    }

    #[test]
    fn function_count() {
        assert_eq!(count(&[var("f", Sort::Fun(A, B))], vec![2, 3]), 9);
    }

    #[test]
    fn equivalences_are_bell_numbers() {
        assert_eq!(partitions(3).len(), 5);
        assert_eq!(partitions(4).len(), 15);
        let es = enumerate(&[var("E", Sort::Equivalence(A))], vec![3]);
        assert_eq!(es.len(), 5);
        assert!(es.iter().all(|i| i.rel("E").is_equivalence()));
    }

    #[test]
    fn surjections_are_filtered() {
        // 3-element onto 2-element: 8 functions, 6 onto
        let ss = enumerate(&[var("h", Sort::Surj(A, B))], vec![3, 2]);
        assert_eq!(ss.len(), 6);
    }

    #[test]
    fn wide_relations_span_digits() {
        let vars = [var("R", Sort::Rel(A, B))];
        let mut uni = Universe::default();
        let plan = Plan::new(&vars, Frame { sizes: vec![8, 5], inductive: None }, &mut uni, 2).unwrap();
        assert_eq!(plan.digits(), 2);
        let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        let i = plan.instance(&vars, &plan.random_digits(&mut rng), 4).unwrap();
        assert_eq!(i.rel("R").src().len(), 5);
    }

    #[test]
    fn frames_cover_sizes_and_shapes() {
        assert_eq!(frames(2, false, 2, 3).len(), 4);
        assert_eq!(frames(1, true, 2, 3).len(), 2 * 3 * 2);
    }
}
