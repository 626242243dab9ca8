//! Constructors for the infinite families of (1,1)-mixed graphs and for the
//! classical line digraphs.
//!
//! Every constructor returns a [`LabeledMixedGraph`]: the graph plus one
//! human-readable label per vertex in the alphabet of its definition
//! (`+1|0121`, `2|5`, `0|0110`, walk strings, Moore-tree words).

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{ArcColor, ColoredDigraph, MixedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter n = {n} is below the minimum {min} for this family")]
    ParameterTooSmall { n: usize, min: usize },
    #[error("base digraph is not 2-regular with a blue/red 1-factorization")]
    NotOneFactorized,
    #[error("base digraph is not strongly connected")]
    NotStronglyConnected,
}

fn require(n: usize, min: usize) -> Result<(), FamilyError> {
    if n < min {
        Err(FamilyError::ParameterTooSmall { n, min })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMixedGraph {
    pub graph: MixedGraph,
    pub labels: Vec<String>,
}

impl LabeledMixedGraph {
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Drop `removed` vertices, add `extra_edges` (given in old indices) and
    /// renumber the survivors in their original order.
    fn surgery(&self, removed: &[usize], extra_edges: &[(usize, usize)]) -> LabeledMixedGraph {
        let n = self.graph.order();
        let mut map = vec![usize::MAX; n];
        let mut labels = Vec::new();
        for v in 0..n {
            if !removed.contains(&v) {
                map[v] = labels.len();
                labels.push(self.labels[v].clone());
            }
        }
        let keep = |&(u, v): &(usize, usize)| map[u] != usize::MAX && map[v] != usize::MAX;
        let edges = self
            .graph
            .edges()
            .iter()
            .chain(extra_edges)
            .filter(|e| keep(e))
            .map(|&(u, v)| (map[u], map[v]));
        let arcs = self.graph.arcs().iter().filter(|a| keep(a)).map(|&(u, v)| (map[u], map[v]));
        LabeledMixedGraph {
            graph: MixedGraph::build(labels.len(), edges, arcs).expect("surgery keeps the graph valid"),
            labels,
        }
    }
}

fn assemble(labels: Vec<String>, edges: Vec<(usize, usize)>, arcs: Vec<(usize, usize)>) -> LabeledMixedGraph {
    let graph = MixedGraph::build(labels.len(), edges, arcs).expect("family construction is valid");
    LabeledMixedGraph { graph, labels }
}

/// Binary words of length at most `depth` without two consecutive zeros, in
/// order of length and then lexicographically.
pub(crate) fn moore_words(depth: usize) -> Vec<String> {
    let mut words = vec![String::new()];
    let mut level = vec![String::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &level {
            if !w.ends_with('0') {
                next.push(format!("{w}0"));
            }
            next.push(format!("{w}1"));
        }
        next.sort();
        words.extend(next.iter().cloned());
        level = next;
    }
    words
}

/// `E(n)`: a Moore tree of radius `n` closed up with a matching on the
/// arc-entered leaves and arcs from every leaf back to the root. When that
/// leaf set has odd size the unmatched leaf gets a new pendant partner that
/// points to the root instead.
///
/// For `n = 2` the graph is forced and its diameter is 3, one less than the
/// general `2n`.
pub fn build_e(n: usize) -> Result<LabeledMixedGraph, FamilyError> {
    require(n, 2)?;
    let words = moore_words(n);
    let index: HashMap<&str, usize> = words.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
    let mut labels: Vec<String> = words.iter().map(|w| if w.is_empty() { "ε".into() } else { w.clone() }).collect();
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if w.len() < n {
            if !w.ends_with('0') {
                edges.push((i, index[format!("{w}0").as_str()]));
            }
            arcs.push((i, index[format!("{w}1").as_str()]));
        } else {
            arcs.push((i, 0));
        }
    }
    let arc_leaves: Vec<usize> = (0..words.len()).filter(|&i| words[i].len() == n && words[i].ends_with('1')).collect();
    // With an odd count the first leaf is the one left out of the matching.
    let paired = if arc_leaves.len() % 2 == 1 {
        let extra = labels.len();
        labels.push("v2".into());
        edges.push((arc_leaves[0], extra));
        arcs.push((extra, 0));
        &arc_leaves[1..]
    } else {
        &arc_leaves[..]
    };
    edges.extend(paired.chunks(2).map(|p| (p[0], p[1])));
    Ok(assemble(labels, edges, arcs))
}

/// Sequences over Z_3 of length `n` with distinct consecutive digits.
fn ternary_words(n: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = (0..3).map(|x| vec![x]).collect();
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                (0..3u8).filter(move |&x| x != last).map(move |x| {
                    let mut w2 = w.clone();
                    w2.push(x);
                    w2
                })
            })
            .collect();
    }
    out
}

fn sign_label(a: i8) -> &'static str {
    if a > 0 {
        "+1"
    } else {
        "-1"
    }
}

fn digits(w: &[u8]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Shared vertex set of `F(n)` and `F*(n)`: labels `a|x_1..x_n`. Returns
/// the label list, the index map and the `(a, word)` per vertex.
type TernaryVertices = (Vec<String>, HashMap<(i8, Vec<u8>), usize>, Vec<(i8, Vec<u8>)>);

fn ternary_vertices(n: usize) -> TernaryVertices {
    let mut labels = Vec::new();
    let mut index = HashMap::new();
    let mut verts = Vec::new();
    for a in [1i8, -1] {
        for w in ternary_words(n) {
            index.insert((a, w.clone()), labels.len());
            labels.push(format!("{}|{}", sign_label(a), digits(&w)));
            verts.push((a, w));
        }
    }
    (labels, index, verts)
}

fn ternary_family(n: usize, next_digit: impl Fn(i8, &[u8]) -> u8) -> LabeledMixedGraph {
    let (labels, index, verts) = ternary_vertices(n);
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for (i, (a, w)) in verts.iter().enumerate() {
        if *a > 0 {
            edges.push((i, index[&(-1, w.clone())]));
        }
        let mut t = w[1..].to_vec();
        t.push(next_digit(*a, w));
        arcs.push((i, index[&(*a, t)]));
    }
    assemble(labels, edges, arcs)
}

fn add3(x: u8, d: i8) -> u8 {
    (x as i8 + d).rem_euclid(3) as u8
}

/// `F(n)`: `a|x ~ -a|x` and `a|x_1..x_n -> a|x_2..x_n (x_n + a)`.
pub fn build_f(n: usize) -> Result<LabeledMixedGraph, FamilyError> {
    require(n, 2)?;
    Ok(ternary_family(n, |a, w| add3(*w.last().unwrap(), a)))
}

/// `F[n]` on `α|i`, `α ∈ {1,2}`, `i ∈ Z_{3·2^(n-1)}`: `α|i ~ ᾱ|i` and
/// `α|i -> α|(-2i + α)`.
pub fn build_f_numeric(n: usize) -> Result<LabeledMixedGraph, FamilyError> {
    require(n, 1)?;
    let m = 3usize << (n - 1);
    let idx = |alpha: usize, i: usize| (alpha - 1) * m + i;
    let mut labels = Vec::with_capacity(2 * m);
    for alpha in 1..=2 {
        for i in 0..m {
            labels.push(format!("{alpha}|{i}"));
        }
    }
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for alpha in 1..=2usize {
        for i in 0..m {
            if alpha == 1 {
                edges.push((idx(1, i), idx(2, i)));
            }
            let target = ((alpha + 2 * m) - (2 * i) % m) % m;
            arcs.push((idx(alpha, i), idx(alpha, target)));
        }
    }
    Ok(assemble(labels, edges, arcs))
}

/// `F*(n)`: as `F(n)` but the appended digit is `x_n + a(x_2 - x_1)` with the
/// difference read as ±1.
pub fn build_fstar(n: usize) -> Result<LabeledMixedGraph, FamilyError> {
    require(n, 2)?;
    Ok(ternary_family(n, |a, w| {
        let d: i8 = if add3(w[1], -(w[0] as i8)) == 1 { 1 } else { -1 };
        add3(*w.last().unwrap(), a * d)
    }))
}

/// Vertex `a|b:a_1..a_{n-1}` of the difference presentation of `F*(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FstarAltVertex {
    pub a: i8,
    pub b: u8,
    pub steps: Vec<i8>,
}

impl FstarAltVertex {
    fn label(&self) -> String {
        let steps: String = self.steps.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
        format!("{}|{}:{}", sign_label(self.a), self.b, steps)
    }
}

fn fstar_alt_vertices(n: usize) -> Vec<FstarAltVertex> {
    let mut out = Vec::new();
    for a in [1i8, -1] {
        for b in 0..3u8 {
            for mask in 0..(1u32 << (n - 1)) {
                let steps = (0..n - 1).map(|i| if mask >> (n - 2 - i) & 1 == 0 { 1 } else { -1 }).collect();
                out.push(FstarAltVertex { a, b, steps });
            }
        }
    }
    out
}

/// `F*(n)` in the presentation `a|b:a_1..a_{n-1}` with
/// `a|b:a_1..a_{n-1} -> a|b+a_1:a_2..a_{n-1}(a a_1)`.
pub fn build_fstar_alt(n: usize) -> Result<LabeledMixedGraph, FamilyError> {
    require(n, 2)?;
    let verts = fstar_alt_vertices(n);
    let index: HashMap<&FstarAltVertex, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for (i, v) in verts.iter().enumerate() {
        if v.a > 0 {
            edges.push((i, index[&FstarAltVertex { a: -1, ..v.clone() }]));
        }
        let mut steps = v.steps[1..].to_vec();
        steps.push(v.a * v.steps[0]);
        let t = FstarAltVertex { a: v.a, b: add3(v.b, v.steps[0]), steps };
        arcs.push((i, index[&t]));
    }
    Ok(assemble(verts.iter().map(FstarAltVertex::label).collect(), edges, arcs))
}

fn fstar_alt_map(n: usize, f: impl Fn(&FstarAltVertex) -> FstarAltVertex) -> Vec<usize> {
    let verts = fstar_alt_vertices(n);
    let index: HashMap<&FstarAltVertex, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    verts.iter().map(|v| index[&f(v)]).collect()
}

/// `Φ: a|b:a_i -> a|φ(b):-a_i` with `φ` swapping 0 and 1, as a vertex
/// permutation of [`build_fstar_alt`].
pub fn fstar_alt_phi(n: usize) -> Vec<usize> {
    fstar_alt_map(n, |v| FstarAltVertex {
        a: v.a,
        b: [1, 0, 2][v.b as usize],
        steps: v.steps.iter().map(|s| -s).collect(),
    })
}

/// `Ψ: a|b:a_i -> a|b+1:a_i`, as a vertex permutation of [`build_fstar_alt`].
pub fn fstar_alt_psi(n: usize) -> Vec<usize> {
    fstar_alt_map(n, |v| FstarAltVertex { b: add3(v.b, 1), ..v.clone() })
}

/// Relabeling `b = x_1`, `a_i = x_{i+1} - x_i` from [`build_fstar`] to
/// [`build_fstar_alt`] vertex indices.
pub fn fstar_to_alt(n: usize) -> Vec<usize> {
    let (_, _, verts) = ternary_vertices(n);
    let alt = fstar_alt_vertices(n);
    let index: HashMap<&FstarAltVertex, usize> = alt.iter().enumerate().map(|(i, v)| (v, i)).collect();
    verts
        .iter()
        .map(|(a, w)| {
            let steps = w.windows(2).map(|p| if add3(p[1], -(p[0] as i8)) == 1 { 1 } else { -1 }).collect();
            index[&FstarAltVertex { a: *a, b: w[0], steps }]
        })
        .collect()
}

/// Vertices lying on a digon and vertices carrying a loop.
fn digon_pairs(g: &MixedGraph) -> Vec<(usize, usize)> {
    g.arcs().iter().filter(|&&(u, v)| u < v && g.has_arc(v, u)).copied().collect()
}

fn partner(g: &MixedGraph, v: usize) -> usize {
    g.edge_neighbors(v)[0]
}

/// `F'(n)`: `F*(n)` with the six digon vertices deleted and their edge
/// partners joined pairwise by three new edges.
pub fn build_fprime(n: usize) -> Result<LabeledMixedGraph, FamilyError> {
    let star = build_fstar(n)?;
    let g = &star.graph;
    let digons = digon_pairs(g);
    let removed: Vec<usize> = digons.iter().flat_map(|&(u, v)| [u, v]).collect();
    let extra: Vec<(usize, usize)> = digons.iter().map(|&(u, v)| (partner(g, u), partner(g, v))).collect();
    Ok(star.surgery(&removed, &extra))
}

fn binary_label(x0: usize, bits: usize, n: usize) -> String {
    let s: String = (0..n).map(|i| if bits >> (n - 1 - i) & 1 == 1 { '1' } else { '0' }).collect();
    format!("{x0}|{s}")
}

/// Vertex index of `x0|x_1..x_n` in [`build_gplus`]; `x_1` is the most
/// significant bit of `bits`.
pub fn gplus_index(n: usize, x0: usize, bits: usize) -> usize {
    (x0 << n) | bits
}

/// `G+(n)`: all `x_0|x_1..x_n` over Z_2 with `x_0|x ~ (x_0+1)|x` and
/// `x_0|x_1..x_n -> x_0|x_2..x_n(x_1 + x_0)`.
pub fn build_gplus(n: usize) -> Result<LabeledMixedGraph, FamilyError> {
    require(n, 1)?;
    let size = 1usize << n;
    let mut labels = Vec::with_capacity(2 * size);
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for x0 in 0..2 {
        for bits in 0..size {
            labels.push(binary_label(x0, bits, n));
            let u = gplus_index(n, x0, bits);
            if x0 == 0 {
                edges.push((u, gplus_index(n, 1, bits)));
            }
            arcs.push((u, gplus_index(n, x0, gplus_shift(n, x0, bits))));
        }
    }
    Ok(assemble(labels, edges, arcs))
}

/// Digit part of the arc image in `G+(n)`.
pub fn gplus_shift(n: usize, x0: usize, bits: usize) -> usize {
    let x1 = bits >> (n - 1) & 1;
    ((bits << 1) & ((1 << n) - 1)) | (x1 ^ x0)
}

/// `Ψ_0` (edge step, `j = 0`) or `Ψ_1` (arc step, `j = 1`) on a `G+(n)`
/// vertex given as `(x_0, digits)`.
pub fn gplus_psi(n: usize, j: usize, x0: usize, bits: usize) -> (usize, usize) {
    match j {
        0 => (x0 ^ 1, bits),
        _ => (x0, gplus_shift(n, x0, bits)),
    }
}

/// Digit flip `Φ` given by a mask over `x_1..x_n` (most significant bit is
/// `x_1`), with the mask carried along with the digits: after an arc step the
/// flip attached to `x_1` follows it to the last position.
pub fn gplus_phi_after(n: usize, j: usize, mask: usize) -> usize {
    match j {
        0 => mask,
        _ => ((mask << 1) & ((1 << n) - 1)) | (mask >> (n - 1) & 1),
    }
}

/// `G(n)`: `G+(n)` without its two looped vertices and its two digon
/// vertices; the edge partners of the looped pair are joined, and so are
/// those of the digon pair.
pub fn build_g(n: usize) -> Result<LabeledMixedGraph, FamilyError> {
    require(n, 2)?;
    let plus = build_gplus(n)?;
    let g = &plus.graph;
    let loops: Vec<usize> = g.arcs().iter().filter(|&&(u, v)| u == v).map(|&(u, _)| u).collect();
    let digons = digon_pairs(g);
    assert!(loops.len() == 2 && digons.len() == 1, "G+(n) has two loops and one digon");
    let (d0, d1) = digons[0];
    let removed = [loops[0], loops[1], d0, d1];
    let extra = [(partner(g, loops[0]), partner(g, loops[1])), (partner(g, d0), partner(g, d1))];
    Ok(plus.surgery(&removed, &extra))
}

/// `H_n(G)` for a 2-regular digraph with a blue/red 1-factorization.
///
/// Vertices are the walks `x_1..x_n` of the base, enumerated by start vertex
/// and then by color string (blue before red). The edge at a walk swaps
/// `x_1` for the other in-neighbor of `x_2`; the arc drops `x_1` and appends
/// a red step when the first and last steps share a color, a blue one
/// otherwise.
pub fn build_h(n: usize, base: &ColoredDigraph) -> Result<LabeledMixedGraph, FamilyError> {
    require(n, 3)?;
    let blue = base.color_permutation(ArcColor::Blue).ok_or(FamilyError::NotOneFactorized)?;
    let red = base.color_permutation(ArcColor::Red).ok_or(FamilyError::NotOneFactorized)?;
    if base.arcs().iter().any(|a| a.2.is_none()) {
        return Err(FamilyError::NotOneFactorized);
    }
    if !base.is_strongly_connected() {
        return Err(FamilyError::NotStronglyConnected);
    }
    let r = base.order();
    let inverse = |p: &[usize]| {
        let mut inv = vec![0; p.len()];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        inv
    };
    let (blue_inv, red_inv) = (inverse(&blue), inverse(&red));
    let steps = n - 1;
    let width = 1usize << steps;
    // Bit i of a color string (from the top) is the color of step i + 1; 1 = red.
    let color_of = |colors: usize, i: usize| colors >> (steps - 1 - i) & 1;
    let step = |x: usize, c: usize| if c == 0 { blue[x] } else { red[x] };
    let index = |start: usize, colors: usize| start * width + colors;

    let mut labels = Vec::with_capacity(r * width);
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    let sep = if r > 10 { "," } else { "" };
    for start in 0..r {
        for colors in 0..width {
            let mut walk = vec![start];
            for i in 0..steps {
                walk.push(step(*walk.last().unwrap(), color_of(colors, i)));
            }
            labels.push(walk.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep));
            let u = index(start, colors);

            let c1 = color_of(colors, 0);
            let x2 = walk[1];
            let alt_start = if c1 == 0 { red_inv[x2] } else { blue_inv[x2] };
            let v = index(alt_start, colors ^ (1 << (steps - 1)));
            if u < v {
                edges.push((u, v));
            }

            let last = color_of(colors, steps - 1);
            let new_color = usize::from(c1 == last);
            let shifted = ((colors << 1) & (width - 1)) | new_color;
            arcs.push((u, index(x2, shifted)));
        }
    }
    Ok(assemble(labels, edges, arcs))
}

/// `K_3` with blue arcs `i -> i+1` and red arcs `i -> i-1`.
pub fn k3_colored() -> ColoredDigraph {
    ColoredDigraph::new(
        3,
        (0..3).flat_map(|i| [(i, (i + 1) % 3, Some(ArcColor::Blue)), (i, (i + 2) % 3, Some(ArcColor::Red))]),
    )
}

/// Line digraph: one vertex per arc, `(u,v) -> (v,w)`. Colors are dropped.
pub fn line_digraph(d: &ColoredDigraph) -> ColoredDigraph {
    let arcs = d.arcs();
    let mut by_tail: Vec<Vec<usize>> = vec![Vec::new(); d.order()];
    for (i, &(u, _, _)) in arcs.iter().enumerate() {
        by_tail[u].push(i);
    }
    let mut out = Vec::new();
    for (i, &(_, v, _)) in arcs.iter().enumerate() {
        for &j in &by_tail[v] {
            out.push((i, j, None));
        }
    }
    ColoredDigraph::new(arcs.len(), out)
}

/// Complete symmetric digraph on `d` vertices, with loops when `loops`.
pub fn complete_digraph(d: usize, loops: bool) -> ColoredDigraph {
    let arcs = (0..d).flat_map(|u| (0..d).filter(move |&v| loops || u != v).map(move |v| (u, v, None)));
    ColoredDigraph::new(d, arcs)
}

/// Symmetric cycle `C_m` (each edge as a digon).
pub fn symmetric_cycle(m: usize) -> ColoredDigraph {
    ColoredDigraph::new(m, (0..m).flat_map(|i| [(i, (i + 1) % m, None), ((i + 1) % m, i, None)]))
}

fn iterate_line(mut g: ColoredDigraph, times: usize) -> ColoredDigraph {
    for _ in 0..times {
        g = line_digraph(&g);
    }
    g
}

/// De Bruijn digraph `B(d,k)` on `d^k` vertices: the `(k-1)`-fold line
/// digraph of the complete digraph with loops on `d` vertices.
pub fn de_bruijn(d: usize, k: usize) -> ColoredDigraph {
    assert!(d >= 1 && k >= 1, "De Bruijn digraph needs d, k >= 1");
    iterate_line(complete_digraph(d, true), k - 1)
}

/// Kautz digraph `K(d,k)` on `d^k + d^(k-1)` vertices: the `(k-1)`-fold
/// line digraph of the complete digraph on `d + 1` vertices.
pub fn kautz(d: usize, k: usize) -> ColoredDigraph {
    assert!(d >= 1 && k >= 1, "Kautz digraph needs d, k >= 1");
    iterate_line(complete_digraph(d + 1, false), k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    #[test]
    fn moore_words_depth_two() {
        assert_eq!(moore_words(2), ["", "0", "1", "01", "10", "11"]);
        assert_eq!(moore_words(4).len(), 19);
    }

    #[test]
    fn small_parameters_rejected() {
        assert_eq!(build_f(1).unwrap_err(), FamilyError::ParameterTooSmall { n: 1, min: 2 });
        assert!(build_h(2, &k3_colored()).is_err());
    }

    #[test]
    fn f_has_a_vertex_of_in_degree_two() {
        for n in 2..=6 {
            let f = build_f(n).unwrap().graph;
            assert_eq!(f.order(), 3 << n);
            assert!((0..f.order()).all(|u| f.out_degree(u) == 1 && f.undirected_degree(u) == 1));
            assert!((0..f.order()).any(|u| f.in_degree(u) == 2));
            assert!(!f.is_totally_regular(1, 1));
        }
    }

    #[test]
    fn f_numeric_labels() {
        let g = build_f_numeric(2).unwrap();
        assert_eq!(g.graph.order(), 12);
        // 1|2 -> 1|(-4 + 1) = 1|3 in Z_6.
        let u = g.index_of("1|2").unwrap();
        assert_eq!(g.graph.out_neighbors(u), &[g.index_of("1|3").unwrap()]);
    }

    #[test]
    fn fstar_relabeling_is_an_isomorphism() {
        for n in 2..=5 {
            let a = build_fstar(n).unwrap().graph;
            let b = build_fstar_alt(n).unwrap().graph;
            assert_eq!(a.relabel(&fstar_to_alt(n)), b, "n = {n}");
        }
    }

    #[test]
    fn non_factorized_base_rejected() {
        let base = ColoredDigraph::new(2, [(0, 1, Some(ArcColor::Blue)), (1, 0, Some(ArcColor::Blue))]);
        assert_eq!(build_h(3, &base).unwrap_err(), FamilyError::NotOneFactorized);
        let split = ColoredDigraph::new(
            2,
            [(0, 0, Some(ArcColor::Blue)), (1, 1, Some(ArcColor::Blue)), (0, 0, Some(ArcColor::Red)), (1, 1, Some(ArcColor::Red))],
        );
        assert_eq!(build_h(3, &split).unwrap_err(), FamilyError::NotStronglyConnected);
    }

    #[test]
    fn kautz_and_de_bruijn_orders() {
        assert_eq!(kautz(2, 2).order(), 6);
        assert_eq!(kautz(2, 3).order(), 12);
        assert_eq!(de_bruijn(2, 3).order(), 8);
        assert_eq!(de_bruijn(3, 2).order(), 9);
    }

    #[test]
    fn g_plus_arcs_follow_the_shift_rule() {
        let g = build_gplus(3).unwrap();
        let u = g.index_of("1|011").unwrap();
        assert_eq!(g.labels[g.graph.out_neighbors(u)[0]], "1|111");
        let u = g.index_of("0|101").unwrap();
        assert_eq!(g.labels[g.graph.out_neighbors(u)[0]], "0|011");
    }

    #[test]
    fn line_of_c7_matches_itself_under_relabeling() {
        let l = line_digraph(&symmetric_cycle(7)).to_mixed_digons_as_edges();
        assert_eq!(l.order(), 14);
        assert!(l.is_totally_regular(1, 1));
        let perm: Vec<usize> = (0..14).rev().collect();
        assert_eq!(canonical_form(&l), canonical_form(&l.relabel(&perm)));
    }
}
