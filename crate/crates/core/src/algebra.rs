//! Finite groups, Cayley mixed graphs and voltage lifts.
//!
//! Groups are built from a concrete element type and a product, then indexed
//! `0..order`. Up to [`TABLE_CAP`] elements the full multiplication table is
//! stored; larger groups keep the elements and multiply on demand. Products
//! of permutation-like elements read left to right: `a * b` applies `a`
//! first, then `b`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{GraphError, MixedGraph};

/// Groups up to this order get a stored multiplication table.
pub const TABLE_CAP: usize = 2048;

/// Associativity is checked on every triple up to this order, and on a
/// fixed pseudo-random sample of triples above it.
pub const EXHAUSTIVE_AXIOM_ORDER: usize = 200;

const AXIOM_SAMPLES: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{t}^{k} is not 1 mod {m}, or gcd({t}, {m}) != 1")]
    InvalidAction { m: u64, k: u64, t: u64 },
    #[error("unsupported field order {0} (need a prime q <= 31)")]
    UnsupportedField(u64),
    #[error("group axioms fail: {0}")]
    AxiomViolation(String),
    #[error("bad group string {0:?}")]
    BadGroup(String),
    #[error("no element labeled {0:?} in this group")]
    UnknownElement(String),
    #[error("S1 is not closed under inverses")]
    S1NotSymmetric,
    #[error("S2 meets its own inverses")]
    S2MeetsInverse,
    #[error("undirected loop at base vertex {vertex} carries a voltage that is not an involution")]
    NonInvolutoryLoopVoltage { vertex: usize },
    #[error("the group has no involution")]
    NoInvolution,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Compose = Arc<dyn Fn(usize, usize) -> usize + Send + Sync>;

/// A finite group on the indices `0..order`.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    identity: usize,
    inv: Vec<usize>,
    table: Option<Vec<u32>>,
    compose: Compose,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl FiniteGroup {
    /// Index the elements, tabulate when small, find identity and inverses
    /// and verify the axioms.
    pub fn from_elements<T>(
        name: impl Into<String>,
        elements: Vec<T>,
        op: impl Fn(&T, &T) -> T + Send + Sync + 'static,
        label: impl Fn(&T) -> String,
    ) -> Result<Self, AlgebraError>
    where
        T: Clone + Eq + Hash + Send + Sync + 'static,
    {
        let name = name.into();
        let n = elements.len();
        let labels: Vec<String> = elements.iter().map(label).collect();
        let index: HashMap<T, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != n {
            return Err(AlgebraError::AxiomViolation(format!("{name}: repeated elements")));
        }
        let lookup = {
            let name = name.clone();
            move |e: &T| -> Result<usize, AlgebraError> {
                index.get(e).copied().ok_or_else(|| AlgebraError::AxiomViolation(format!("{name}: not closed")))
            }
        };
        let elements = Arc::new(elements);
        let table = if n <= TABLE_CAP {
            let rows: Result<Vec<Vec<u32>>, AlgebraError> = (0..n)
                .into_par_iter()
                .map(|a| (0..n).map(|b| lookup(&op(&elements[a], &elements[b])).map(|x| x as u32)).collect())
                .collect();
            Some(rows?.concat())
        } else {
            None
        };
        let compose: Compose = match &table {
            Some(_) => Arc::new(|_, _| unreachable!("table lookups bypass compose")),
            None => {
                let elements = Arc::clone(&elements);
                Arc::new(move |a, b| lookup(&op(&elements[a], &elements[b])).expect("closed under the product"))
            }
        };
        let mut g = FiniteGroup { name, labels, identity: 0, inv: Vec::new(), table, compose };
        g.identity = (0..n)
            .find(|&e| g.mul(e, e) == e)
            .ok_or_else(|| AlgebraError::AxiomViolation(format!("{}: no identity", g.name)))?;
        g.inv = (0..n).map(|a| g.find_inverse(a)).collect::<Result<_, _>>()?;
        g.verify_axioms()?;
        Ok(g)
    }

    fn find_inverse(&self, a: usize) -> Result<usize, AlgebraError> {
        // Walk the powers of `a`; the one before the identity is the inverse.
        let mut prev = self.identity;
        let mut x = a;
        for _ in 0..self.order() {
            if x == self.identity {
                return Ok(prev);
            }
            prev = x;
            x = self.mul(x, a);
        }
        Err(AlgebraError::AxiomViolation(format!("{}: element {} has no inverse", self.name, self.labels[a])))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => (self.compose)(a, b),
        }
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_involution(&self, a: usize) -> bool {
        a != self.identity && self.inv[a] == a
    }

    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order()).filter(|&a| self.is_involution(a)).collect()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Element with the given label; whitespace is ignored.
    pub fn parse_element(&self, s: &str) -> Result<usize, AlgebraError> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        self.labels
            .iter()
            .position(|l| l.chars().filter(|c| !c.is_whitespace()).eq(key.chars()))
            .ok_or_else(|| AlgebraError::UnknownElement(s.to_string()))
    }

    /// Identity and inverse laws on every element; associativity on every
    /// triple for small orders and on a fixed sample otherwise.
    pub fn verify_axioms(&self) -> Result<(), AlgebraError> {
        let n = self.order();
        let fail = |what: String| Err(AlgebraError::AxiomViolation(format!("{}: {what}", self.name)));
        for a in 0..n {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return fail(format!("identity law at {}", self.labels[a]));
            }
            if self.mul(a, self.inv[a]) != self.identity || self.mul(self.inv[a], a) != self.identity {
                return fail(format!("inverse law at {}", self.labels[a]));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_AXIOM_ORDER {
            let ok = (0..n).into_par_iter().all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))));
            if !ok {
                return fail("associativity".into());
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..AXIOM_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return fail("associativity".into());
                }
            }
        }
        Ok(())
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::BadGroup("cyclic:0".into()));
    }
    FiniteGroup::from_elements(format!("Z{n}"), (0..n).collect(), move |a, b| (a + b) % n, |a| a.to_string())
}

/// Symmetry of the regular `m`-gon with vertices `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dihedral {
    /// `x -> x + k`.
    Rot(usize),
    /// Reflection through vertex `k`: `x -> 2k - x` (odd `m`); for even `m`
    /// the reflections are `x -> k - x`.
    Ref(usize),
}

fn dihedral_apply(m: usize, e: Dihedral, x: usize) -> usize {
    match e {
        Dihedral::Rot(k) => (x + k) % m,
        Dihedral::Ref(k) => {
            let c = if m % 2 == 1 { 2 * k } else { k };
            (c + m * 2 - x) % m
        }
    }
}

/// Dihedral group of the given even order (at least 6), elements `Rot(k)`
/// and `Ref(k)`.
pub fn dihedral(order: usize) -> Result<FiniteGroup, AlgebraError> {
    if order < 6 || order % 2 == 1 {
        return Err(AlgebraError::BadGroup(format!("dihedral:{order}")));
    }
    let m = order / 2;
    let elements: Vec<Dihedral> = (0..m).map(Dihedral::Rot).chain((0..m).map(Dihedral::Ref)).collect();
    let op = move |a: &Dihedral, b: &Dihedral| {
        // Identify `a` then `b` by the images of 0 and 1.
        let img = |x| dihedral_apply(m, *b, dihedral_apply(m, *a, x));
        let (i0, i1) = (img(0), img(1));
        if (i0 + 1) % m == i1 {
            Dihedral::Rot(i0)
        } else if m % 2 == 1 {
            Dihedral::Ref(i0 * (m + 1) / 2 % m)
        } else {
            Dihedral::Ref(i0)
        }
    };
    let label = |e: &Dihedral| match e {
        Dihedral::Rot(k) => format!("Rot({k})"),
        Dihedral::Ref(k) => format!("Ref({k})"),
    };
    FiniteGroup::from_elements(format!("D{order}"), elements, op, label)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(t: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1 % m, |acc, _| acc * t % m)
}

/// `Z_m : Z_k` with `(x1, y1)(x2, y2) = (x1 + t^y1 x2, y1 + y2)`.
pub fn semidirect_cyclic(m: u64, k: u64, t: u64) -> Result<FiniteGroup, AlgebraError> {
    if m == 0 || k == 0 || gcd(t % m, m) != 1 && m > 1 || pow_mod(t % m, k, m) != 1 % m {
        return Err(AlgebraError::InvalidAction { m, k, t });
    }
    let powers: Vec<u64> = (0..k).map(|y| pow_mod(t, y, m)).collect();
    let elements: Vec<(u64, u64)> = (0..m).flat_map(|x| (0..k).map(move |y| (x, y))).collect();
    let op = move |a: &(u64, u64), b: &(u64, u64)| ((a.0 + powers[a.1 as usize] * b.0) % m, (a.1 + b.1) % k);
    FiniteGroup::from_elements(format!("Z{m}:Z{k}"), elements, op, |&(x, y)| format!("({x},{y})"))
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, AlgebraError> {
    let (g2, h2) = (g.clone(), h.clone());
    let elements: Vec<(usize, usize)> = (0..g.order()).flat_map(|a| (0..h.order()).map(move |b| (a, b))).collect();
    let op = move |a: &(usize, usize), b: &(usize, usize)| (g2.mul(a.0, b.0), h2.mul(a.1, b.1));
    let label = |&(a, b): &(usize, usize)| format!("({},{})", g.label(a), h.label(b));
    FiniteGroup::from_elements(format!("{}x{}", g.name(), h.name()), elements, op, label)
}

fn cycle_label(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] as usize == s {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x.to_string());
            x = p[x] as usize;
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..n as u8).collect();
    fn rec(k: usize, p: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out.sort();
    out
}

fn is_even(p: &[u8]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

/// Alternating group on `{0,..,4}`, elements in cycle notation.
pub fn alternating5() -> Result<FiniteGroup, AlgebraError> {
    let elements: Vec<Vec<u8>> = permutations(5).into_iter().filter(|p| is_even(p)).collect();
    let op = |a: &Vec<u8>, b: &Vec<u8>| a.iter().map(|&x| b[x as usize]).collect::<Vec<u8>>();
    FiniteGroup::from_elements("A5", elements, op, |p| cycle_label(p))
}

/// Product in GF(8) = GF(2)[x]/(x^3 + x + 1), elements as 3-bit integers.
fn gf8_mul(a: u8, b: u8) -> u8 {
    let mut r = 0u8;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    for bit in (3..5).rev() {
        if r >> bit & 1 == 1 {
            r ^= 0b1011 << (bit - 3);
        }
    }
    r
}

/// Affine maps `x -> a x + b` of GF(8), labeled `[a,b]`.
pub fn agl1_8() -> Result<FiniteGroup, AlgebraError> {
    let elements: Vec<(u8, u8)> = (1..8u8).flat_map(|a| (0..8u8).map(move |b| (a, b))).collect();
    // Apply (a1,b1) then (a2,b2): x -> a2(a1 x + b1) + b2.
    let op = |p: &(u8, u8), q: &(u8, u8)| (gf8_mul(q.0, p.0), gf8_mul(q.0, p.1) ^ q.1);
    FiniteGroup::from_elements("AGL(1,8)", elements, op, |&(a, b)| format!("[{a},{b}]"))
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

type Mat2 = [u64; 4];

fn normalize(m: Mat2, q: u64) -> Mat2 {
    let lead = *m.iter().find(|&&x| x != 0).expect("invertible matrix");
    let inv = pow_mod(lead, q - 2, q);
    m.map(|x| x * inv % q)
}

fn projective_group(q: u64, special: bool) -> Result<FiniteGroup, AlgebraError> {
    if !is_prime(q) || q > 31 {
        return Err(AlgebraError::UnsupportedField(q));
    }
    let squares: BTreeSet<u64> = (1..q).map(|x| x * x % q).collect();
    let mut elements = BTreeSet::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let det = (a * d + q * q - b * c) % q;
                    if det != 0 && (!special || squares.contains(&det)) {
                        elements.insert(normalize([a, b, c, d], q));
                    }
                }
            }
        }
    }
    let op = move |x: &Mat2, y: &Mat2| {
        normalize(
            [
                (x[0] * y[0] + x[1] * y[2]) % q,
                (x[0] * y[1] + x[1] * y[3]) % q,
                (x[2] * y[0] + x[3] * y[2]) % q,
                (x[2] * y[1] + x[3] * y[3]) % q,
            ],
            q,
        )
    };
    let name = if special { format!("PSL(2,{q})") } else { format!("PGL(2,{q})") };
    FiniteGroup::from_elements(name, elements.into_iter().collect(), op, |m| {
        format!("[{} {};{} {}]", m[0], m[1], m[2], m[3])
    })
}

/// `PGL(2, q)` for a prime `q <= 31`; elements are normalized matrices.
pub fn pgl2(q: u64) -> Result<FiniteGroup, AlgebraError> {
    projective_group(q, false)
}

/// `PSL(2, q)` for a prime `q <= 31`.
pub fn psl2(q: u64) -> Result<FiniteGroup, AlgebraError> {
    projective_group(q, true)
}

/// Parse the group mini-language: `cyclic:n`, `dihedral:m` (order `m`),
/// `semidirect:m:k:t`, `product:<group>,<group>` (nested groups in
/// parentheses), `a5`, `agl1_8`, `pgl2:q`, `psl2:q`.
pub fn parse_group(s: &str) -> Result<FiniteGroup, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::BadGroup(s.to_string());
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    if let Some(rest) = s.strip_prefix("product:") {
        let (left, right) = split_product(rest).ok_or_else(bad)?;
        return direct_product(&parse_group(left)?, &parse_group(right)?);
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["cyclic", n] => cyclic(num(n)? as usize),
        ["dihedral", m] => dihedral(num(m)? as usize),
        ["semidirect", m, k, t] => semidirect_cyclic(num(m)?, num(k)?, num(t)?),
        ["a5"] => alternating5(),
        ["agl1_8"] => agl1_8(),
        ["pgl2", q] => pgl2(num(q)?),
        ["psl2", q] => psl2(num(q)?),
        _ => Err(bad()),
    }
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s)
}

fn split_product(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((strip_parens(&s[..i]), strip_parens(&s[i + 1..]))),
            _ => {}
        }
    }
    None
}

/// `Cay(G, S1 ∪ S2)`: edges `{w, ws}` for `s ∈ S1`, arcs `(w, ws)` for
/// `s ∈ S2`.
pub fn cayley_mixed(g: &FiniteGroup, s1: &[usize], s2: &[usize]) -> Result<MixedGraph, AlgebraError> {
    let s1set: BTreeSet<usize> = s1.iter().copied().collect();
    if s1.iter().any(|&s| !s1set.contains(&g.inverse(s))) {
        return Err(AlgebraError::S1NotSymmetric);
    }
    let s2set: BTreeSet<usize> = s2.iter().copied().collect();
    if s2.iter().any(|&s| s2set.contains(&g.inverse(s))) {
        return Err(AlgebraError::S2MeetsInverse);
    }
    let n = g.order();
    let mut edges = BTreeSet::new();
    for w in 0..n {
        for &s in &s1set {
            let v = g.mul(w, s);
            edges.insert((w.min(v), w.max(v)));
        }
    }
    let arcs = (0..n).flat_map(|w| s2set.iter().map(move |&s| (w, g.mul(w, s))));
    Ok(MixedGraph::build(n, edges, arcs)?)
}

/// A Cayley graph with one involution and one non-involutory generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyHit {
    pub involution: usize,
    pub generator: usize,
    pub diameter: u32,
    pub form: CanonicalForm,
}

/// Every `Cay(G, {s}, {a})` with `s` an involution and `a != a^-1` whose
/// diameter is at most `target_k`, one per isomorphism class (the pair with
/// the smallest indices represents its class), sorted by diameter and then
/// by representative pair.
pub fn cayley_search(g: &FiniteGroup, target_k: u32) -> Result<Vec<CayleyHit>, AlgebraError> {
    let involutions = g.involutions();
    if involutions.is_empty() {
        return Err(AlgebraError::NoInvolution);
    }
    let generators: Vec<usize> = (0..g.order()).filter(|&a| g.inverse(a) != a).collect();
    let pairs: Vec<(usize, usize)> = involutions.iter().flat_map(|&s| generators.iter().map(move |&a| (s, a))).collect();
    let hits: Vec<(usize, usize, u32, MixedGraph)> = pairs
        .par_iter()
        .filter_map(|&(s, a)| {
            let graph = cayley_mixed(g, &[s], &[a]).ok()?;
            let d = graph.diameter()?;
            (d <= target_k).then_some((s, a, d, graph))
        })
        .collect();
    let mut classes: BTreeMap<CanonicalForm, CayleyHit> = BTreeMap::new();
    for (s, a, d, graph) in hits {
        let form = canonical_form(&graph);
        classes.entry(form.clone()).or_insert(CayleyHit { involution: s, generator: a, diameter: d, form });
    }
    let mut out: Vec<CayleyHit> = classes.into_values().collect();
    out.sort_by_key(|h| (h.diameter, h.involution, h.generator));
    Ok(out)
}

/// Shape of a voltage base graph: edges, arcs (loops allowed) and
/// undirected loops. Parallel carriers are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VoltageShape {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub arcs: Vec<(usize, usize)>,
    pub uloops: Vec<usize>,
}

impl VoltageShape {
    fn carriers(&self) -> usize {
        self.edges.len() + self.arcs.len() + self.uloops.len()
    }
}

/// A base graph with one group element per edge, arc and undirected loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageBaseGraph {
    pub shape: VoltageShape,
    pub edge_voltages: Vec<usize>,
    pub arc_voltages: Vec<usize>,
    pub uloop_voltages: Vec<usize>,
}

impl VoltageBaseGraph {
    /// Parse `base <n>`, then `e u v <elt>`, `a u v <elt>`, `uloop u <elt>`
    /// and `dloop u <elt>` lines; `#` starts a comment.
    pub fn parse(src: &str, g: &FiniteGroup) -> Result<Self, AlgebraError> {
        let mut shape = VoltageShape::default();
        let mut vb: Option<VoltageBaseGraph> = None;
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| AlgebraError::Parse { line: i + 1, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let vertex = |t: &str, n: usize| match t.parse::<usize>() {
                Ok(v) if v < n => Ok(v),
                _ => Err(err(format!("bad vertex {t:?}"))),
            };
            let elt = |rest: &[&str]| g.parse_element(&rest.join(" ")).map_err(|e| err(e.to_string()));
            match (&mut vb, toks.as_slice()) {
                (None, ["base", n]) => {
                    shape.n = n.parse().map_err(|_| err(format!("bad order {n:?}")))?;
                    vb = Some(VoltageBaseGraph {
                        shape: shape.clone(),
                        edge_voltages: vec![],
                        arc_voltages: vec![],
                        uloop_voltages: vec![],
                    });
                }
                (None, _) => return Err(err("expected `base <n>` header".into())),
                (Some(b), ["e", u, v, rest @ ..]) if !rest.is_empty() => {
                    let (u, v) = (vertex(u, b.shape.n)?, vertex(v, b.shape.n)?);
                    if u == v {
                        return Err(err("use `uloop` for an undirected loop".into()));
                    }
                    b.shape.edges.push((u, v));
                    b.edge_voltages.push(elt(rest)?);
                }
                (Some(b), ["a", u, v, rest @ ..]) if !rest.is_empty() => {
                    let (u, v) = (vertex(u, b.shape.n)?, vertex(v, b.shape.n)?);
                    b.shape.arcs.push((u, v));
                    b.arc_voltages.push(elt(rest)?);
                }
                (Some(b), ["dloop", u, rest @ ..]) if !rest.is_empty() => {
                    let u = vertex(u, b.shape.n)?;
                    b.shape.arcs.push((u, u));
                    b.arc_voltages.push(elt(rest)?);
                }
                (Some(b), ["uloop", u, rest @ ..]) if !rest.is_empty() => {
                    let u = vertex(u, b.shape.n)?;
                    b.shape.uloops.push(u);
                    b.uloop_voltages.push(elt(rest)?);
                }
                (Some(_), _) => return Err(err(format!("unrecognized line {line:?}"))),
            }
        }
        vb.ok_or(AlgebraError::Parse { line: 0, msg: "empty input".into() })
    }

    pub fn write(&self, g: &FiniteGroup) -> String {
        let mut s = format!("base {}\n", self.shape.n);
        for (&(u, v), &x) in self.shape.edges.iter().zip(&self.edge_voltages) {
            s.push_str(&format!("e {u} {v} {}\n", g.label(x)));
        }
        for (&(u, v), &x) in self.shape.arcs.iter().zip(&self.arc_voltages) {
            if u == v {
                s.push_str(&format!("dloop {u} {}\n", g.label(x)));
            } else {
                s.push_str(&format!("a {u} {v} {}\n", g.label(x)));
            }
        }
        for (&u, &x) in self.shape.uloops.iter().zip(&self.uloop_voltages) {
            s.push_str(&format!("uloop {u} {}\n", g.label(x)));
        }
        s
    }
}

/// The lift: vertex `(u, x)` is `u * |G| + x`; an arc `u -> v` with voltage
/// `a` gives `(u, x) -> (v, xa)`, an edge gives `{(u, x), (v, xa)}` and an
/// undirected loop with involution `h` gives `{(u, x), (u, xh)}`.
pub fn lift(vb: &VoltageBaseGraph, g: &FiniteGroup) -> Result<MixedGraph, AlgebraError> {
    let order = g.order();
    let at = |u: usize, x: usize| u * order + x;
    for (&u, &h) in vb.shape.uloops.iter().zip(&vb.uloop_voltages) {
        if !g.is_involution(h) {
            return Err(AlgebraError::NonInvolutoryLoopVoltage { vertex: u });
        }
    }
    let mut edges = BTreeSet::new();
    let pairs = vb.shape.edges.iter().copied().zip(vb.edge_voltages.iter().copied());
    let loops = vb.shape.uloops.iter().map(|&u| (u, u)).zip(vb.uloop_voltages.iter().copied());
    for ((u, v), a) in pairs.chain(loops) {
        for x in 0..order {
            let (p, q) = (at(u, x), at(v, g.mul(x, a)));
            edges.insert((p.min(q), p.max(q)));
        }
    }
    let mut arcs = Vec::with_capacity(vb.shape.arcs.len() * order);
    for (&(u, v), &a) in vb.shape.arcs.iter().zip(&vb.arc_voltages) {
        for x in 0..order {
            arcs.push((at(u, x), at(v, g.mul(x, a))));
        }
    }
    Ok(MixedGraph::build(vb.shape.n * order, edges, arcs)?)
}

/// One voltage assignment and the diameter of its lift (`None`: not
/// strongly connected).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedAssignment {
    pub base: VoltageBaseGraph,
    pub diameter: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageSearchOutcome {
    /// Best assignments, smallest diameter first.
    pub best: Vec<RankedAssignment>,
    pub examined: u64,
    /// Size of the gauge-fixed assignment space.
    pub space: u128,
    /// `false` when the space exceeded the budget and was sampled instead.
    pub complete: bool,
    /// Whether some lift has diameter at most the requested `k`.
    pub target_reached: bool,
}

impl VoltageSearchOutcome {
    pub fn best_diameter(&self) -> Option<u32> {
        self.best.first().and_then(|r| r.diameter)
    }

    pub fn budget_exhausted(&self) -> bool {
        !self.complete
    }
}

/// Carriers forced to the identity: a spanning forest of the underlying
/// undirected graph of edges and non-loop arcs. Returned as (is_arc, index).
fn gauge_tree(shape: &VoltageShape) -> BTreeSet<(bool, usize)> {
    let mut parent: Vec<usize> = (0..shape.n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut fixed = BTreeSet::new();
    let carriers = shape.edges.iter().enumerate().map(|(i, &e)| (false, i, e)).chain(shape.arcs.iter().enumerate().map(|(i, &a)| (true, i, a)));
    for (is_arc, i, (u, v)) in carriers {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            fixed.insert((is_arc, i));
        }
    }
    fixed
}

/// Search voltage assignments on `shape` over `g` for small lift diameter.
///
/// Voltages on a spanning tree are fixed to the identity, which loses no
/// lift up to isomorphism. The free carriers range over all elements, the
/// undirected loops over the involutions. When the space has at most
/// `budget` points it is enumerated completely; otherwise `budget` points
/// are drawn with a ChaCha8 stream seeded by `seed`. The `keep` best
/// assignments are returned, ties broken by enumeration order.
pub fn voltage_search(
    shape: &VoltageShape,
    g: &FiniteGroup,
    target_k: u32,
    budget: u64,
    seed: u64,
    keep: usize,
) -> Result<VoltageSearchOutcome, AlgebraError> {
    let involutions = g.involutions();
    if !shape.uloops.is_empty() && involutions.is_empty() {
        return Err(AlgebraError::NoInvolution);
    }
    let fixed = gauge_tree(shape);
    // Free slots: (kind, index, choices); kind 0 edge, 1 arc, 2 undirected loop.
    let mut slots: Vec<(u8, usize, Vec<usize>)> = Vec::new();
    let all: Vec<usize> = (0..g.order()).collect();
    for i in 0..shape.edges.len() {
        if !fixed.contains(&(false, i)) {
            slots.push((0, i, all.clone()));
        }
    }
    for i in 0..shape.arcs.len() {
        if !fixed.contains(&(true, i)) {
            slots.push((1, i, all.clone()));
        }
    }
    for i in 0..shape.uloops.len() {
        slots.push((2, i, involutions.clone()));
    }
    debug_assert_eq!(shape.carriers(), slots.len() + fixed.len());
    let space: u128 = slots.iter().map(|s| s.2.len() as u128).product();
    let complete = space <= budget as u128;
    let indices: Vec<u128> = if complete {
        (0..space).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..budget).map(|_| rng.gen_range(0..space)).collect()
    };
    let decode = |mut idx: u128| {
        let mut vb = VoltageBaseGraph {
            shape: shape.clone(),
            edge_voltages: vec![g.identity(); shape.edges.len()],
            arc_voltages: vec![g.identity(); shape.arcs.len()],
            uloop_voltages: vec![g.identity(); shape.uloops.len()],
        };
        for (kind, i, choices) in &slots {
            let len = choices.len() as u128;
            let pick = choices[(idx % len) as usize];
            idx /= len;
            match kind {
                0 => vb.edge_voltages[*i] = pick,
                1 => vb.arc_voltages[*i] = pick,
                _ => vb.uloop_voltages[*i] = pick,
            }
        }
        vb
    };
    let mut scored: Vec<(Option<u32>, usize, VoltageBaseGraph)> = indices
        .par_iter()
        .enumerate()
        .map(|(pos, &idx)| {
            let vb = decode(idx);
            let d = lift(&vb, g).ok().and_then(|l| l.diameter());
            (d, pos, vb)
        })
        .collect();
    scored.sort_by_key(|(d, pos, _)| (d.unwrap_or(u32::MAX), *pos));
    let best = scored
        .into_iter()
        .take(keep.max(1))
        .map(|(diameter, _, base)| RankedAssignment { base, diameter })
        .collect();
    let best: Vec<RankedAssignment> = best;
    let target_reached = best.first().and_then(|r| r.diameter).is_some_and(|d| d <= target_k);
    Ok(VoltageSearchOutcome { best, examined: indices.len() as u64, space, complete, target_reached })
}

/// Four-vertex base `A, B, C, D` = `0..4` of the order-72 lift over the
/// dihedral group of order 18: edge `A-D`, undirected loops at `B` and `C`,
/// arcs `A -> B -> C -> D` and a directed loop at `D`.
///
/// Every vertex has one edge and one out-arc, but `D` receives two arcs and
/// `A` none, so the lift is out-regular without being in-regular.
pub fn order72_shape() -> VoltageShape {
    VoltageShape { n: 4, edges: vec![(0, 3)], arcs: vec![(0, 1), (1, 2), (2, 3), (3, 3)], uloops: vec![1, 2] }
}

/// [`order72_shape`] with its published voltages.
pub fn order72_base(d18: &FiniteGroup) -> Result<VoltageBaseGraph, AlgebraError> {
    let e = |s: &str| d18.parse_element(s);
    Ok(VoltageBaseGraph {
        shape: order72_shape(),
        edge_voltages: vec![e("Rot(3)")?],
        arc_voltages: vec![e("Rot(8)")?, e("Ref(2)")?, e("Ref(0)")?, e("Rot(4)")?],
        uloop_voltages: vec![e("Ref(1)")?, e("Ref(4)")?],
    })
}

/// Four-vertex base of the order-544 lift: the arc cycle
/// `0 -> 1 -> 2 -> 3 -> 0` with edges `0-1` and `2-3`.
pub fn order544_shape() -> VoltageShape {
    VoltageShape { n: 4, edges: vec![(0, 1), (2, 3)], arcs: vec![(0, 1), (1, 2), (2, 3), (3, 0)], uloops: vec![] }
}
