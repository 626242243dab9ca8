//! The mixed-graph data model and its metric queries.
//!
//! A [`MixedGraph`] has vertices `0..n`, a set of undirected edges and a set
//! of directed arcs. Distances count every edge and every arc as one step;
//! an edge can be traversed both ways, an arc only forward.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate {kind} ({u}, {v})")]
    DuplicateElement { kind: &'static str, u: usize, v: usize },
    #[error("pair {{{u}, {v}}} is both an edge and a digon")]
    EdgeDigonClash { u: usize, v: usize },
    #[error("edge {{{0}, {0}}} is a loop; undirected loops are not mixed-graph edges")]
    EdgeLoop(usize),
    #[error("diameter exceeds {k}")]
    DiameterExceedsK { k: usize },
    #[error("edge set is not a perfect matching")]
    NotAPerfectMatching,
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// A mixed graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`; arcs as ordered pairs, loops
/// allowed. Neighbor lists are sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    arcs: Vec<(usize, usize)>,
    edge_adj: Vec<Vec<usize>>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl fmt::Debug for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MixedGraph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .field("arcs", &self.arcs)
            .finish()
    }
}

impl MixedGraph {
    pub fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(GraphError::IndexOutOfRange { index: i, n })
            }
        };
        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            check(u)?;
            check(v)?;
            if u == v {
                return Err(GraphError::EdgeLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !edge_set.insert(key) {
                return Err(GraphError::DuplicateElement { kind: "edge", u: key.0, v: key.1 });
            }
        }
        let mut arc_set = BTreeSet::new();
        for (u, v) in arcs {
            check(u)?;
            check(v)?;
            if !arc_set.insert((u, v)) {
                return Err(GraphError::DuplicateElement { kind: "arc", u, v });
            }
        }
        for &(u, v) in &edge_set {
            if arc_set.contains(&(u, v)) && arc_set.contains(&(v, u)) {
                return Err(GraphError::EdgeDigonClash { u, v });
            }
        }

        let mut edge_adj = vec![Vec::new(); n];
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &edge_set {
            edge_adj[u].push(v);
            edge_adj[v].push(u);
        }
        for &(u, v) in &arc_set {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in edge_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Ok(MixedGraph {
            n,
            edges: edge_set.into_iter().collect(),
            arcs: arc_set.into_iter().collect(),
            edge_adj,
            out_adj,
            in_adj,
        })
    }

    /// Reads a digraph as a mixed graph: every digon `u -> v -> u` with
    /// `u != v` becomes an edge, all other arcs stay arcs.
    pub fn from_digraph_digons_as_edges(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let set: BTreeSet<(usize, usize)> = arcs.into_iter().collect();
        let mut edges = Vec::new();
        let mut rest = Vec::new();
        for &(u, v) in &set {
            if u != v && set.contains(&(v, u)) {
                if u < v {
                    edges.push((u, v));
                }
            } else {
                rest.push((u, v));
            }
        }
        Self::build(n, edges, rest)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn edge_neighbors(&self, u: usize) -> &[usize] {
        &self.edge_adj[u]
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out_adj[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.in_adj[u]
    }

    /// Undirected degree `r(u)`.
    pub fn undirected_degree(&self, u: usize) -> usize {
        self.edge_adj[u].len()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].len()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_adj[u].contains(&v)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].contains(&v)
    }

    /// True iff every vertex has undirected degree `r` and in- and
    /// out-degree `z`.
    pub fn is_totally_regular(&self, r: usize, z: usize) -> bool {
        (0..self.n).all(|u| {
            self.undirected_degree(u) == r && self.out_degree(u) == z && self.in_degree(u) == z
        })
    }

    /// Number of digons (unordered pairs joined by two opposite arcs) and of
    /// arc self-loops.
    pub fn digons_and_loops(&self) -> (usize, usize) {
        let mut digons = 0;
        let mut loops = 0;
        for &(u, v) in &self.arcs {
            if u == v {
                loops += 1;
            } else if u < v && self.has_arc(v, u) {
                digons += 1;
            }
        }
        (digons, loops)
    }

    pub fn has_digons(&self) -> bool {
        self.digons_and_loops().0 > 0
    }

    /// Apply a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> MixedGraph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        MixedGraph::build(
            self.n,
            self.edges.iter().map(|&(u, v)| (perm[u], perm[v])),
            self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])),
        )
        .expect("relabeling preserves validity")
    }

    /// All distinct one-step successors: edge neighbors and out-neighbors.
    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.edge_adj[u].iter().chain(self.out_adj[u].iter()).copied()
    }

    /// Adjacency matrix: an edge contributes a 1 in both directions, an arc
    /// in one.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        for &(u, v) in &self.arcs {
            a[u][v] = 1;
        }
        a
    }

    pub fn bfs(&self, source: usize) -> DistanceTable {
        assert!(source < self.n, "source {source} out of range");
        let mut dist = vec![None; self.n];
        dist[source] = Some(0u32);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for w in self.successors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        DistanceTable { source, dist }
    }

    pub fn eccentricity(&self, source: usize) -> Option<u32> {
        self.bfs(source).eccentricity()
    }

    /// Largest finite distance over ordered pairs, or `None` when some
    /// vertex cannot reach another. One BFS per source, run in parallel.
    pub fn diameter(&self) -> Option<u32> {
        if self.n == 0 {
            return Some(0);
        }
        (0..self.n)
            .into_par_iter()
            .map(|s| self.eccentricity(s))
            .reduce(|| Some(0), |a, b| Some(a?.max(b?)))
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.diameter().is_some()
    }

    /// Weakly connected components (arcs taken as undirected).
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let next = p[x];
                p[x] = r;
                x = next;
            }
            r
        }
        for &(u, v) in self.edges.iter().chain(self.arcs.iter()) {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Distance matrices `A_0..A_k`: `(A_i)[u][v] = 1` iff `dist(u, v) = i`.
    pub fn distance_matrices(&self, k: usize) -> Result<Vec<Vec<Vec<u8>>>, GraphError> {
        let tables: Vec<DistanceTable> = (0..self.n).into_par_iter().map(|s| self.bfs(s)).collect();
        let mut mats = vec![vec![vec![0u8; self.n]; self.n]; k + 1];
        for t in &tables {
            for (v, d) in t.dist.iter().enumerate() {
                match d {
                    Some(d) if (*d as usize) <= k => mats[*d as usize][t.source][v] = 1,
                    _ => return Err(GraphError::DiameterExceedsK { k }),
                }
            }
        }
        Ok(mats)
    }

    /// Contract every edge to a single vertex. The edges must form a
    /// perfect matching; arcs are carried over and parallel copies merged.
    /// Contracted vertex `i` corresponds to `self.edges()[i]`.
    pub fn contract_edges(&self) -> Result<ColoredDigraph, GraphError> {
        let mut block = vec![usize::MAX; self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            block[u] = i;
            block[v] = i;
        }
        if block.contains(&usize::MAX)
            || (0..self.n).any(|u| self.undirected_degree(u) != 1)
        {
            return Err(GraphError::NotAPerfectMatching);
        }
        let arcs: BTreeSet<(usize, usize)> =
            self.arcs.iter().map(|&(u, v)| (block[u], block[v])).collect();
        Ok(ColoredDigraph::new(
            self.edges.len(),
            arcs.into_iter().map(|(u, v)| (u, v, None)),
        ))
    }
}

/// Shortest mixed-path distances from one source. `None` marks unreachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    pub source: usize,
    pub dist: Vec<Option<u32>>,
}

impl DistanceTable {
    pub fn eccentricity(&self) -> Option<u32> {
        self.dist.iter().try_fold(0, |m, d| d.map(|d| m.max(d)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcColor {
    Blue,
    Red,
}

impl ArcColor {
    pub fn other(self) -> Self {
        match self {
            ArcColor::Blue => ArcColor::Red,
            ArcColor::Red => ArcColor::Blue,
        }
    }
}

/// A digraph whose arcs optionally carry a blue/red color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    n: usize,
    arcs: Vec<(usize, usize, Option<ArcColor>)>,
}

impl ColoredDigraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize, Option<ArcColor>)>) -> Self {
        let arcs: Vec<_> = arcs.into_iter().collect();
        assert!(arcs.iter().all(|&(u, v, _)| u < n && v < n), "arc endpoint out of range");
        ColoredDigraph { n, arcs }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize, Option<ArcColor>)] {
        &self.arcs
    }

    /// The color class `c` as a successor map, if it is a permutation of the
    /// vertex set.
    pub fn color_permutation(&self, c: ArcColor) -> Option<Vec<usize>> {
        let mut succ = vec![usize::MAX; self.n];
        let mut hit = vec![false; self.n];
        for &(u, v, col) in &self.arcs {
            if col == Some(c) {
                if succ[u] != usize::MAX || hit[v] {
                    return None;
                }
                succ[u] = v;
                hit[v] = true;
            }
        }
        succ.iter().all(|&s| s != usize::MAX).then_some(succ)
    }

    /// Every arc colored and each color class a spanning 1-regular digraph.
    pub fn is_one_factorized(&self) -> bool {
        self.arcs.iter().all(|a| a.2.is_some())
            && self.color_permutation(ArcColor::Blue).is_some()
            && self.color_permutation(ArcColor::Red).is_some()
    }

    /// The same digraph with colors dropped, parallel arcs merged and
    /// digons kept as pairs of arcs.
    pub fn to_mixed(&self) -> MixedGraph {
        let set: BTreeSet<(usize, usize)> = self.arcs.iter().map(|&(u, v, _)| (u, v)).collect();
        MixedGraph::build(self.n, [], set).expect("plain digraph is a valid mixed graph")
    }

    pub fn to_mixed_digons_as_edges(&self) -> MixedGraph {
        MixedGraph::from_digraph_digons_as_edges(self.n, self.arcs.iter().map(|&(u, v, _)| (u, v)))
            .expect("digon conversion is valid")
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.to_mixed().is_strongly_connected()
    }

    pub fn diameter(&self) -> Option<u32> {
        self.to_mixed().diameter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = MixedGraph::build(2, [(0, 1)], []).unwrap();
        assert_eq!(g.undirected_degree(0), 1);
        assert_eq!(g.undirected_degree(1), 1);
        assert_eq!(g.diameter(), Some(1));
        let mats = g.distance_matrices(1).unwrap();
        assert_eq!(mats[0], vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(mats[1], vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn self_loop_arc_is_allowed() {
        let g = MixedGraph::build(1, [], [(0, 0)]).unwrap();
        assert_eq!(g.digons_and_loops(), (0, 1));
        assert_eq!(g.out_degree(0), 1);
        assert_eq!(g.in_degree(0), 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            MixedGraph::build(2, [(0, 1)], [(0, 1), (1, 0)]),
            Err(GraphError::EdgeDigonClash { u: 0, v: 1 })
        );
        assert!(matches!(
            MixedGraph::build(2, [(0, 1), (1, 0)], []),
            Err(GraphError::DuplicateElement { kind: "edge", .. })
        ));
        assert!(matches!(
            MixedGraph::build(2, [], [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateElement { kind: "arc", .. })
        ));
        assert_eq!(
            MixedGraph::build(2, [(0, 2)], []),
            Err(GraphError::IndexOutOfRange { index: 2, n: 2 })
        );
        assert_eq!(MixedGraph::build(2, [(1, 1)], []), Err(GraphError::EdgeLoop(1)));
        // An edge plus a single parallel arc is not a clash.
        assert!(MixedGraph::build(2, [(0, 1)], [(0, 1)]).is_ok());
    }

    #[test]
    fn arcs_are_one_way() {
        let g = MixedGraph::build(3, [(0, 1)], [(1, 2)]).unwrap();
        assert_eq!(g.bfs(0).dist, vec![Some(0), Some(1), Some(2)]);
        assert_eq!(g.bfs(2).dist, vec![None, None, Some(0)]);
        assert_eq!(g.diameter(), None);
        assert_eq!(g.distance_matrices(5), Err(GraphError::DiameterExceedsK { k: 5 }));
    }

    #[test]
    fn contract_two_looped_vertices() {
        let g = MixedGraph::build(2, [(0, 1)], [(0, 0), (1, 1)]).unwrap();
        let c = g.contract_edges().unwrap();
        assert_eq!(c.order(), 1);
        assert_eq!(c.arcs(), &[(0, 0, None)]);
    }

    #[test]
    fn contract_requires_perfect_matching() {
        let g = MixedGraph::build(3, [(0, 1)], [(0, 2)]).unwrap();
        assert_eq!(g.contract_edges(), Err(GraphError::NotAPerfectMatching));
    }

    #[test]
    fn digons_become_edges() {
        let g = MixedGraph::from_digraph_digons_as_edges(3, [(0, 1), (1, 0), (1, 2), (2, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.arcs(), &[(1, 2), (2, 2)]);
    }

    #[test]
    fn components() {
        let g = MixedGraph::build(5, [(0, 1)], [(2, 3)]).unwrap();
        assert_eq!(g.component_count(), 3);
    }
}
