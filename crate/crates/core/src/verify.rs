//! Named check suites that rebuild the published tables and family claims
//! and compare them with the reference values.

use std::fmt::{self, Display};

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::algebra::{self, cayley_mixed, cayley_search, dihedral, order72_base, order72_shape, lift, semidirect_cyclic, voltage_search};
use crate::bounds::{fibonacci, lower_bound, moore_11, search_space_bound, upper_bound};
use crate::canon::{automorphism_count, canonical_form, is_isomorphic};
use crate::codec::{decode_digraph6, encode_digraph6};
use crate::families::*;
use crate::graph::MixedGraph;
use crate::reference::*;
use crate::search::{search_almost_moore, search_generic, search_order14_k4, search_order16_k4};
use crate::spectra::{classify, spectrum_classes};

pub const SUITES: [&str; 10] =
    ["table1", "table2", "table3", "table4", "families", "gplus", "search-k3", "search-k4", "cayley", "lift"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown suite {name:?}; known suites: {known}", name = .0, known = SUITES.join(", "))]
    UnknownSuite(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySuite {
    pub name: String,
    pub checks: Vec<Check>,
}

impl VerifySuite {
    fn new(name: &str) -> Self {
        VerifySuite { name: name.to_string(), checks: Vec::new() }
    }

    /// Passes when both sides print the same.
    fn eq(&mut self, description: impl Into<String>, expected: impl Display, observed: impl Display) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let pass = expected == observed;
        self.checks.push(Check { description: description.into(), expected, observed, pass });
    }

    fn holds(&mut self, description: impl Into<String>, ok: bool) {
        self.eq(description, true, ok);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl Display for VerifySuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {}: expected {}, observed {}", c.description, c.expected, c.observed)?;
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "suite {}: {verdict} ({passed}/{} checks)", self.name, self.checks.len())
    }
}

pub fn verify(name: &str) -> Result<VerifySuite, VerifyError> {
    let mut s = VerifySuite::new(name);
    match name {
        "table1" => table1(&mut s),
        "table2" => table2(&mut s),
        "table3" => table3(&mut s),
        "table4" => table4(&mut s),
        "families" => families(&mut s),
        "gplus" => gplus(&mut s),
        "search-k3" => search_k3(&mut s),
        "search-k4" => search_k4(&mut s),
        "cayley" => cayley(&mut s),
        "lift" => lift_suite(&mut s),
        _ => return Err(VerifyError::UnknownSuite(name.to_string())),
    }
    Ok(s)
}

fn opt<T: Display>(x: Option<T>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn table1(s: &mut VerifySuite) {
    for (k, n) in SEARCH_SPACE {
        s.eq(format!("N({k})"), n, search_space_bound(k));
    }
}

fn table2_graphs() -> Vec<MixedGraph> {
    ORDER14_K4_DIGRAPH6.iter().map(|t| decode_digraph6(t).expect("catalogue strings decode")).collect()
}

fn table2(s: &mut VerifySuite) {
    let mut forms = std::collections::BTreeSet::new();
    for (i, t) in ORDER14_K4_DIGRAPH6.iter().enumerate() {
        let g = match decode_digraph6(t) {
            Ok(g) => g,
            Err(e) => {
                s.eq(format!("#{i} decodes"), "ok", e);
                continue;
            }
        };
        s.eq(format!("#{i} order"), 14, g.order());
        s.eq(format!("#{i} diameter"), 4, opt(g.diameter()));
        s.holds(format!("#{i} totally (1,1)-regular"), g.is_totally_regular(1, 1));
        s.holds(format!("#{i} digon-free"), !g.has_digons());
        s.eq(format!("#{i} re-encodes"), t, encode_digraph6(&g, false).unwrap_or_else(|e| e.to_string()));
        forms.insert(canonical_form(&g));
    }
    s.eq("isomorphism classes", 27, forms.len());
}

fn table3(s: &mut VerifySuite) {
    let mut counts = vec![0usize; spectrum_classes().len()];
    let mut unclassified = 0;
    for g in table2_graphs() {
        match classify(&g) {
            Ok(Some(c)) => counts[c.id as usize - 1] += 1,
            _ => unclassified += 1,
        }
    }
    let sizes: Vec<String> = counts.iter().map(usize::to_string).collect();
    let expected: Vec<String> = SPECTRUM_CLASS_SIZES.iter().map(usize::to_string).collect();
    s.eq("class sizes", expected.join("/"), sizes.join("/"));
    s.eq("unclassified graphs", 0, unclassified);
}

fn table4(s: &mut VerifySuite) {
    for row in BOUNDS_TABLE {
        s.eq(format!("M(1,1,{})", row.k), row.moore, moore_11(row.k));
        s.eq(format!("upper bound k={}", row.k), row.upper, upper_bound(row.k));
        s.eq(format!("lower bound k={}", row.k), row.lower, lower_bound(row.k));
    }
}

fn moore(k: usize) -> usize {
    moore_11(k as u32).to_usize().expect("small")
}

fn families(s: &mut VerifySuite) {
    for n in 2..=6usize {
        let g = build_e(n).expect("n >= 2").graph;
        let even = fibonacci(n as u32) % 2u32 == 0u32.into();
        let (order, diam) = if even { (moore(n), 2 * n) } else { (moore(n) + 1, 2 * n + 1) };
        s.eq(format!("E({n}) order"), order, g.order());
        s.eq(format!("E({n}) diameter"), diam, opt(g.diameter()));
    }
    for n in 2..=8 {
        let g = build_f(n).expect("n >= 2").graph;
        s.eq(format!("F({n}) order"), 3 << n, g.order());
        s.eq(format!("F({n}) diameter"), 2 * n, opt(g.diameter()));
    }
    for n in 2..=6 {
        let same = canonical_form(&build_f(n).unwrap().graph) == canonical_form(&build_f_numeric(n).unwrap().graph);
        s.holds(format!("F({n}) isomorphic to F[{n}]"), same);
    }
    for n in 3..=5 {
        let g = build_fstar(n).unwrap().graph;
        s.holds(format!("F*({n}) totally regular"), g.is_totally_regular(1, 1));
        s.eq(format!("F*({n}) digons"), 3, g.digons_and_loops().0);
        s.eq(format!("F*({n}) automorphisms"), 6, opt(automorphism_count(&g).ok()));
    }
    let f2 = build_fprime(2).unwrap().graph;
    s.holds("F'(2) isomorphic to K(2,2)", is_isomorphic(&f2, &kautz(2, 2).to_mixed_digons_as_edges()));
    let f3 = build_fprime(3).unwrap().graph;
    s.eq("F'(3) diameter", 5, opt(f3.diameter()));
    let f4 = build_fprime(4).unwrap().graph;
    s.eq("F'(4) order", 42, f4.order());
    s.eq("F'(4) diameter", 7, opt(f4.diameter()));
    for n in 5..=6 {
        s.eq(format!("F'({n}) diameter"), 2 * n, opt(build_fprime(n).unwrap().graph.diameter()));
    }
    for n in 2..=10 {
        let g = build_g(n).unwrap().graph;
        s.eq(format!("G({n}) order"), (1 << (n + 1)) - 4, g.order());
        s.eq(format!("G({n}) diameter"), 2 * n - 1, opt(g.diameter()));
    }
    for n in 2..=8 {
        let g = build_gplus(n).unwrap();
        s.eq(format!("G+({n}) diameter"), 2 * n, opt(g.graph.diameter()));
        let ecc = |label: String| opt(g.index_of(&label).and_then(|v| g.graph.eccentricity(v)));
        let (zeros, ones) = ("0".repeat(n), "1".repeat(n));
        s.eq(format!("G+({n}) ecc 0|0..0"), 2 * n, ecc(format!("0|{zeros}")));
        s.eq(format!("G+({n}) ecc 0|1..1"), 2 * n, ecc(format!("0|{ones}")));
        s.eq(format!("G+({n}) ecc 1|0..0"), 2 * n - 1, ecc(format!("1|{zeros}")));
        s.eq(format!("G+({n}) ecc 1|1..1"), 2 * n - 1, ecc(format!("1|{ones}")));
        if n >= 5 {
            s.eq(format!("G+({n}) ecc 1|0..01"), 2 * n - 2, ecc(format!("1|{}1", &zeros[1..])));
            s.eq(format!("G+({n}) ecc 1|1..10"), 2 * n - 2, ecc(format!("1|{}0", &ones[1..])));
        }
    }
    let k3 = k3_colored();
    for n in 3..=5 {
        let h = build_h(n, &k3).unwrap().graph;
        s.eq(format!("H_{n}(K3) order"), 3 << (n - 1), h.order());
        s.eq(format!("H_{n}(K3) digons"), 0, h.digons_and_loops().0);
        let contracted = h.contract_edges().map(|c| c.to_mixed());
        let iso = contracted.is_ok_and(|c| is_isomorphic(&c, &kautz(2, n - 1).to_mixed()));
        s.holds(format!("H_{n}(K3) contracts to K(2,{})", n - 1), iso);
    }
    s.eq("H_3(K3) diameter", 5, opt(build_h(3, &k3).unwrap().graph.diameter()));
    s.eq("H_4(K3) diameter", 6, opt(build_h(4, &k3).unwrap().graph.diameter()));
}

fn matrix_power(a: &[Vec<u64>], e: usize) -> Vec<Vec<u64>> {
    let m = a.len();
    let mut p: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|j| u64::from(i == j)).collect()).collect();
    for _ in 0..e {
        p = (0..m).map(|i| (0..m).map(|j| (0..m).map(|l| p[i][l] * a[l][j]).sum()).collect()).collect();
    }
    p
}

fn gplus_matrix(n: usize, order: &[usize]) -> Vec<Vec<u64>> {
    let g = build_gplus(n).unwrap().graph;
    let a = g.adjacency_matrix();
    order.iter().map(|&i| order.iter().map(|&j| u64::from(a[i][j])).collect()).collect()
}

fn gplus(s: &mut VerifySuite) {
    let g2 = build_gplus(2).unwrap();
    let order: Vec<usize> = GPLUS2_LABELS.iter().map(|l| g2.index_of(l).expect("label exists")).collect();
    let a = gplus_matrix(2, &order);
    let printed: Vec<Vec<u64>> = GPLUS2_A.iter().map(|r| r.iter().map(|&x| u64::from(x)).collect()).collect();
    s.holds("G+(2) adjacency matrix", a == printed);
    let a4 = matrix_power(&a, 4);
    let printed4: Vec<Vec<u64>> = GPLUS2_A4.iter().map(|r| r.to_vec()).collect();
    s.holds("G+(2) fourth power", a4 == printed4);
    for n in 2..=6 {
        let m = build_gplus(n).unwrap().graph.order();
        let p = matrix_power(&gplus_matrix(n, &(0..m).collect::<Vec<_>>()), 2 * n);
        s.holds(format!("G+({n}) A^{} positive", 2 * n), p.iter().flatten().all(|&x| x > 0));
    }
    let mut commute = true;
    for n in 1..=4 {
        let size = 1usize << n;
        for mask in 0..size {
            for j in 0..2 {
                for x0 in 0..2 {
                    for bits in 0..size {
                        let (y0, yb) = gplus_psi(n, j, x0, bits);
                        commute &= gplus_psi(n, j, x0, bits ^ mask) == (y0, yb ^ gplus_phi_after(n, j, mask));
                    }
                }
            }
        }
    }
    s.holds("flips commute with steps for n <= 4", commute);
}

fn search_k3(s: &mut VerifySuite) {
    match (search_almost_moore(3), search_generic(10, 3, &[], None)) {
        (Ok(a), Ok(g)) => {
            s.holds("almost-Moore k=3 has survivors", !a.survivors.is_empty());
            s.eq("almost-Moore k=3 matchings", 9, a.matchings);
            s.holds("order-10 search agrees", a.forms() == g.forms());
        }
        (a, g) => s.eq("searches complete", "ok", format!("{:?} / {:?}", a.err(), g.err())),
    }
}

fn search_k4(s: &mut VerifySuite) {
    match search_almost_moore(4) {
        Ok(o) => {
            s.eq("almost-Moore k=4 survivors", 0, o.survivors.len());
            s.eq("almost-Moore k=4 matchings", 60, o.matchings);
        }
        Err(e) => s.eq("almost-Moore k=4 completes", "ok", e),
    }
    match search_order16_k4() {
        Ok(o) => s.eq("order 16 survivors", 0, o.survivors.len()),
        Err(e) => s.eq("order 16 completes", "ok", e),
    }
    match search_order14_k4() {
        Ok(o) => {
            s.eq("order 14 survivors", 27, o.survivors.len());
            let table: std::collections::BTreeSet<_> = table2_graphs().iter().map(canonical_form).collect();
            s.holds("order 14 survivors match the catalogue", o.forms() == table);
        }
        Err(e) => s.eq("order 14 completes", "ok", e),
    }
}

fn d7_cayley() -> Result<MixedGraph, algebra::AlgebraError> {
    let d = dihedral(14)?;
    cayley_mixed(&d, &[d.parse_element("Ref(0)")?], &[d.parse_element("Rot(1)")?])
}

fn cayley(s: &mut VerifySuite) {
    let c = d7_cayley().expect("valid generators");
    s.eq("Cay(D7) order", 14, c.order());
    s.eq("Cay(D7) diameter", 4, opt(c.diameter()));
    let first = decode_digraph6(ORDER14_K4_DIGRAPH6[0]).expect("decodes");
    s.holds("Cay(D7) is the first catalogue graph", is_isomorphic(&c, &first));
    let lc7 = line_digraph(&symmetric_cycle(7)).to_mixed_digons_as_edges();
    s.holds("Cay(D7) is the line digraph of C7", is_isomorphic(&c, &lc7));
    let cayley_count = table2_graphs().iter().filter(|g| is_isomorphic(g, &c)).count();
    s.eq("catalogue graphs isomorphic to Cay(D7)", 1, cayley_count);
    match semidirect_cyclic(9, 6, 2).and_then(|g| cayley_search(&g, 7)) {
        Ok(hits) => s.holds("Z9:Z6 has a diameter-7 Cayley graph", hits.iter().any(|h| h.diameter == 7)),
        Err(e) => s.eq("Z9:Z6 search", "ok", e),
    }
}

fn lift_suite(s: &mut VerifySuite) {
    let d18 = dihedral(18).expect("valid order");
    match order72_base(&d18).and_then(|b| lift(&b, &d18)) {
        Ok(l) => {
            s.eq("order-72 lift order", 72, l.order());
            s.holds("order-72 lift totally (1,1)-regular", l.is_totally_regular(1, 1));
            s.eq("order-72 lift diameter", 8, opt(l.diameter()));
        }
        Err(e) => s.eq("order-72 lift builds", "ok", e),
    }
    match voltage_search(&order72_shape(), &d18, 8, 1 << 20, 0, 1) {
        Ok(o) => {
            s.holds("voltage search is exhaustive", o.complete);
            s.eq("best lift diameter on the order-72 base", 8, opt(o.best_diameter()));
        }
        Err(e) => s.eq("voltage search runs", "ok", e),
    }
}
