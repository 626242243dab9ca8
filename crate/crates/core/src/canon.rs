//! Canonical labeling by partition refinement and backtracking.
//!
//! The engine works on a digraph whose arcs carry a small integer color and
//! whose vertices carry a loop flag. A mixed graph is fed to it in one of two
//! encodings:
//!
//! * [`CanonMode::Plain`]: arcs and edges share one color, an edge being a
//!   pair of opposite arcs. Faithful for digon-free graphs only.
//! * [`CanonMode::TwoColor`]: edges and arcs get distinct colors. Faithful
//!   for every mixed graph.
//!
//! At each node of the search tree the ordered partition is refined to an
//! equitable one; the first smallest non-singleton cell is then split by
//! individualizing each of its vertices in turn. Every discrete leaf yields a
//! relabeled arc list and the lexicographically least one is the canonical
//! form. Leaves reproducing the canonical arc list are in bijection with the
//! automorphisms, which gives [`automorphism_count`] for free.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::{GraphError, MixedGraph};

/// Default vertex cap for [`automorphism_count`].
pub const AUTOMORPHISM_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonMode {
    Plain,
    TwoColor,
}

impl CanonMode {
    /// `Plain` for digon-free graphs, `TwoColor` otherwise.
    pub fn auto(g: &MixedGraph) -> Self {
        if g.has_digons() {
            CanonMode::TwoColor
        } else {
            CanonMode::Plain
        }
    }
}

/// Bytes identifying an isomorphism class (edges to edges, arcs to arcs).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in self.0.iter().take(24) {
            write!(f, "{b:02x}")?;
        }
        if self.0.len() > 24 {
            write!(f, "..")?;
        }
        write!(f, ")")
    }
}

struct Colored {
    n: usize,
    loops: Vec<bool>,
    out: Vec<Vec<(usize, u8)>>,
    inc: Vec<Vec<(usize, u8)>>,
    mode: CanonMode,
}

impl Colored {
    fn new(g: &MixedGraph, mode: CanonMode) -> Self {
        let n = g.order();
        let mut loops = vec![false; n];
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let edge_color = match mode {
            CanonMode::Plain => 1,
            CanonMode::TwoColor => 2,
        };
        for &(u, v) in g.arcs() {
            if u == v {
                loops[u] = true;
            } else {
                out[u].push((v, 1));
                inc[v].push((u, 1));
            }
        }
        for &(u, v) in g.edges() {
            out[u].push((v, edge_color));
            inc[v].push((u, edge_color));
            out[v].push((u, edge_color));
            inc[u].push((v, edge_color));
        }
        Colored { n, loops, out, inc, mode }
    }

    /// Refine `colors` to the coarsest equitable partition below it. A color
    /// is the number of vertices in strictly earlier cells, so the partition
    /// is discrete exactly when the colors are a permutation of `0..n`.
    fn refine(&self, colors: &mut [usize]) {
        let n = self.n;
        let mut cells = count_cells(colors);
        let mut keyed: Vec<(usize, Vec<(u8, u8, usize)>, usize)> = Vec::with_capacity(n);
        loop {
            keyed.clear();
            for v in 0..n {
                let mut sig: Vec<(u8, u8, usize)> = self.out[v]
                    .iter()
                    .map(|&(w, c)| (0, c, colors[w]))
                    .chain(self.inc[v].iter().map(|&(w, c)| (1, c, colors[w])))
                    .collect();
                sig.sort_unstable();
                keyed.push((colors[v], sig, v));
            }
            keyed.sort_unstable();
            let mut start = 0;
            for i in 0..n {
                if i > 0 && (keyed[i].0 != keyed[i - 1].0 || keyed[i].1 != keyed[i - 1].1) {
                    start = i;
                }
                colors[keyed[i].2] = start;
            }
            let now = count_cells(colors);
            if now == cells {
                return;
            }
            cells = now;
        }
    }

    fn leaf_code(&self, labels: &[usize]) -> Vec<u32> {
        let mut code: Vec<u32> = Vec::new();
        for (v, _) in self.loops.iter().enumerate().filter(|(_, &l)| l) {
            code.push(labels[v] as u32);
        }
        code.sort_unstable();
        let mut arcs: Vec<(u32, u32, u32)> = Vec::new();
        for u in 0..self.n {
            for &(w, c) in &self.out[u] {
                arcs.push((labels[u] as u32, labels[w] as u32, c as u32));
            }
        }
        arcs.sort_unstable();
        code.push(u32::MAX);
        for (a, b, c) in arcs {
            code.extend([a, b, c]);
        }
        code
    }

    fn initial_colors(&self) -> Vec<usize> {
        // Looped vertices first.
        let looped = self.loops.iter().filter(|&&l| l).count();
        self.loops.iter().map(|&l| if l { 0 } else { looped }).collect()
    }
}

fn count_cells(colors: &[usize]) -> usize {
    let mut seen = vec![false; colors.len()];
    let mut c = 0;
    for &x in colors {
        if !seen[x] {
            seen[x] = true;
            c += 1;
        }
    }
    c
}

struct Search<'a> {
    graph: &'a Colored,
    best: Option<(Vec<u32>, Vec<usize>)>,
    best_hits: u64,
}

impl Search<'_> {
    fn run(&mut self, mut colors: Vec<usize>) {
        self.graph.refine(&mut colors);
        let n = self.graph.n;
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c] += 1;
        }
        let target = (0..n).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c));
        match target {
            None => {
                let code = self.graph.leaf_code(&colors);
                match self.best.as_ref().map(|(b, _)| code.cmp(b)) {
                    None | Some(Ordering::Less) => {
                        self.best = Some((code, colors));
                        self.best_hits = 1;
                    }
                    Some(Ordering::Equal) => self.best_hits += 1,
                    Some(Ordering::Greater) => {}
                }
            }
            Some(cell) => {
                let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
                for &v in &members {
                    let mut next = colors.clone();
                    for &w in &members {
                        if w != v {
                            next[w] = cell + 1;
                        }
                    }
                    self.run(next);
                }
            }
        }
    }
}

/// Canonical labeling: returns `perm` with `g.relabel(&perm)` canonical,
/// the canonical form, and the number of automorphisms (saturating at
/// `u64::MAX`).
///
/// Weakly connected components are labeled separately and laid out in
/// order of (size, code), so many isomorphic components do not blow up the
/// search tree. Within a component the search still visits one leaf per
/// automorphism, which is cheap for the low-symmetry graphs of interest
/// here (a strongly connected (1,1)-mixed graph has at most `n`).
pub fn canonical_labeling(g: &MixedGraph, mode: CanonMode) -> (Vec<usize>, CanonicalForm, u64) {
    let colored = Colored::new(g, mode);
    let comps = weak_components(g);
    let (perm, auts) = if comps.len() <= 1 {
        connected_labeling(&colored)
    } else {
        let mut parts = Vec::with_capacity(comps.len());
        for comp in &comps {
            let mut local = vec![usize::MAX; g.order()];
            for (i, &v) in comp.iter().enumerate() {
                local[v] = i;
            }
            let sub = MixedGraph::build(
                comp.len(),
                g.edges().iter().filter(|e| local[e.0] != usize::MAX).map(|&(u, v)| (local[u], local[v])),
                g.arcs().iter().filter(|a| local[a.0] != usize::MAX).map(|&(u, v)| (local[u], local[v])),
            )
            .expect("induced subgraph of a valid graph");
            let sub_colored = Colored::new(&sub, mode);
            let (sub_perm, auts) = connected_labeling(&sub_colored);
            let code = sub_colored.leaf_code(&sub_perm);
            parts.push((comp.len(), code, comp, sub_perm, auts));
        }
        parts.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut perm = vec![0; g.order()];
        let mut auts = 1u64;
        let mut offset = 0;
        let mut run = 0u64;
        for i in 0..parts.len() {
            let (size, code, comp, sub_perm, a) = &parts[i];
            for (j, &v) in comp.iter().enumerate() {
                perm[v] = offset + sub_perm[j];
            }
            offset += size;
            run = if i > 0 && parts[i - 1].0 == *size && parts[i - 1].1 == *code { run + 1 } else { 1 };
            auts = auts.saturating_mul(*a).saturating_mul(run);
        }
        (perm, auts)
    };
    let code = if colored.n > 0 { colored.leaf_code(&perm) } else { Vec::new() };
    let mut bytes = Vec::with_capacity(5 + 4 * code.len());
    bytes.push(match colored.mode {
        CanonMode::Plain => b'P',
        CanonMode::TwoColor => b'T',
    });
    bytes.extend((colored.n as u32).to_le_bytes());
    for x in code {
        bytes.extend(x.to_le_bytes());
    }
    (perm, CanonicalForm(bytes), auts)
}

fn connected_labeling(colored: &Colored) -> (Vec<usize>, u64) {
    let mut s = Search { graph: colored, best: None, best_hits: 0 };
    if colored.n > 0 {
        s.run(colored.initial_colors());
    }
    let (_, perm) = s.best.take().unwrap_or_default();
    (perm, s.best_hits.max(1))
}

/// Vertex sets of the components of the underlying undirected graph, each
/// sorted, ordered by smallest vertex.
fn weak_components(g: &MixedGraph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &w in g.edge_neighbors(u).iter().chain(g.out_neighbors(u)).chain(g.in_neighbors(u)) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Canonical form with the encoding chosen by [`CanonMode::auto`].
pub fn canonical_form(g: &MixedGraph) -> CanonicalForm {
    canonical_labeling(g, CanonMode::auto(g)).1
}

pub fn canonical_form_with(g: &MixedGraph, mode: CanonMode) -> CanonicalForm {
    canonical_labeling(g, mode).1
}

/// `g` relabeled into canonical vertex order.
pub fn canonical_graph(g: &MixedGraph) -> MixedGraph {
    let (perm, _, _) = canonical_labeling(g, CanonMode::auto(g));
    g.relabel(&perm)
}

pub fn is_isomorphic(a: &MixedGraph, b: &MixedGraph) -> bool {
    a.order() == b.order()
        && a.edges().len() == b.edges().len()
        && a.arcs().len() == b.arcs().len()
        && canonical_form_with(a, CanonMode::TwoColor) == canonical_form_with(b, CanonMode::TwoColor)
}

/// Order of the automorphism group (edges to edges, arcs to arcs).
pub fn automorphism_count(g: &MixedGraph) -> Result<u64, GraphError> {
    automorphism_count_capped(g, AUTOMORPHISM_CAP)
}

pub fn automorphism_count_capped(g: &MixedGraph, cap: usize) -> Result<u64, GraphError> {
    if g.order() > cap {
        return Err(GraphError::TooLarge { n: g.order(), cap });
    }
    Ok(canonical_labeling(g, CanonMode::TwoColor).2)
}
