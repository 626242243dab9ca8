//! Exhaustive searches for (1,1)-mixed graphs of given order and diameter.
//!
//! Every search ends in the same completion engine: a perfect matching is
//! fixed, some arcs are fixed, and the remaining arcs are chosen as a
//! bijection from the vertices lacking an out-arc onto those lacking an
//! in-arc. Arcs may not form loops, digons or run parallel to a matching
//! edge. Partial assignments are pruned by counting: the ball of radius `k`
//! around any vertex, forward or backward, must be able to reach every
//! vertex, and an unassigned arc can contribute at most one full Moore
//! subtree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::MixedGraph;

const NONE: usize = usize::MAX;

/// Searches work on bitsets of this many vertices.
pub const MAX_SEARCH_ORDER: usize = 64;

/// The engine splits its enumeration into at least this many independent
/// prefixes before handing them to worker threads.
const MIN_SHARDS: usize = 256;

/// Shards handed to the thread pool at a time.
const BATCH: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("order {0} is odd, so no perfect matching exists")]
    OddOrder(usize),
    #[error("order {0} exceeds the search limit of {MAX_SEARCH_ORDER}")]
    TooLarge(usize),
    #[error("k = {0} is out of range for this search; pass a budget to run it anyway")]
    UnsupportedK(u32),
    #[error("invalid seed arc {0:?}")]
    InvalidSeed((usize, usize)),
    #[error("budget exhausted after {} candidates; partial results attached", .0.examined)]
    BudgetExhausted(Box<SearchOutcome>),
}

/// Binary words of length at most `k` with no two consecutive zeros; the
/// word `w` has an edge to `w0` (when `w` does not end in 0) and an arc to
/// `w1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreTree {
    pub k: u32,
    pub words: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub arcs: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
}

pub fn moore_tree(k: u32) -> MooreTree {
    let words = crate::families::moore_words(k as usize);
    let index: HashMap<String, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if let Some(&j) = index.get(&format!("{w}0")) {
            edges.push((i, j));
        }
        if let Some(&j) = index.get(&format!("{w}1")) {
            arcs.push((i, j));
        }
    }
    MooreTree { k, words, edges, arcs, index }
}

impl MooreTree {
    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// `(a, b, c)`: words of length `l`, those ending in 0 (entered by an
    /// edge) and those ending in 1 or empty (entered by an arc, or the root).
    pub fn level_counts(&self, l: usize) -> (usize, usize, usize) {
        let level = self.words.iter().filter(|w| w.len() == l);
        let (a, b) = level.fold((0, 0), |(a, b), w| (a + 1, b + usize::from(w.ends_with('0'))));
        (a, b, a - b)
    }

    fn words_of_length(&self, l: usize) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.words[i].len() == l).collect()
    }
}

/// One isomorphism class found by a search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survivor {
    pub form: CanonicalForm,
    pub graph: MixedGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub order: usize,
    pub k: u32,
    /// Complete arc assignments whose diameter was computed.
    pub examined: u64,
    /// Perfect matchings of the unmatched vertices, over all removal cases.
    pub matchings: u64,
    /// Removal cases tried (tree-based searches only).
    pub cases: u64,
    /// Pairwise non-isomorphic, sorted by canonical form.
    pub survivors: Vec<Survivor>,
    /// `false` when a budget cut the enumeration short.
    pub complete: bool,
    pub elapsed: Duration,
}

impl SearchOutcome {
    pub fn forms(&self) -> BTreeSet<CanonicalForm> {
        self.survivors.iter().map(|s| s.form.clone()).collect()
    }
}

/// Arc-completion problem on a fixed perfect matching.
struct Engine<'a> {
    n: usize,
    k: u32,
    mate: &'a [usize],
    /// Vertices still lacking an out-arc, in assignment order.
    free: Vec<usize>,
    /// Size of a Moore subtree hanging from an arc with `h` levels left.
    subtree: Vec<u64>,
}

#[derive(Clone)]
struct State {
    succ: Vec<usize>,
    pred: Vec<usize>,
}

#[derive(Default)]
struct ShardResult {
    examined: u64,
    finished: bool,
    hits: Vec<(u64, Vec<usize>)>,
}

struct EngineRun {
    examined: u64,
    complete: bool,
    hits: Vec<Vec<usize>>,
}

impl<'a> Engine<'a> {
    fn new(k: u32, mate: &'a [usize], succ: &[usize]) -> Self {
        let n = mate.len();
        let free = (0..n).filter(|&v| succ[v] == NONE).collect();
        // by_arc[h] counts a node entered by an arc with h levels below it.
        let mut by_arc = vec![1u64; k as usize + 1];
        let mut by_edge = vec![1u64; k as usize + 1];
        for h in 1..=k as usize {
            by_arc[h] = 1u64.saturating_add(by_edge[h - 1]).saturating_add(by_arc[h - 1]);
            by_edge[h] = 1u64.saturating_add(by_arc[h - 1]);
        }
        Engine { n, k, mate, free, subtree: by_arc }
    }

    fn can_assign(&self, s: &State, v: usize, t: usize) -> bool {
        s.pred[t] == NONE && t != v && t != self.mate[v] && s.succ[t] != v
    }

    /// Upper bound on the ball of radius k around `u`, following `next`
    /// (successors or predecessors).
    fn ball_bound(&self, u: usize, next: &[usize]) -> u64 {
        let k = self.k;
        let mut known = 1u64 << u;
        let mut unknown = 0u64;
        let mut stack = vec![(u, 0u32, false)];
        while let Some((x, d, by_edge)) = stack.pop() {
            if d == k {
                continue;
            }
            if !by_edge {
                let y = self.mate[x];
                known |= 1 << y;
                stack.push((y, d + 1, true));
            }
            match next[x] {
                NONE => unknown = unknown.saturating_add(self.subtree[(k - d - 1) as usize]),
                y => {
                    known |= 1 << y;
                    stack.push((y, d + 1, false));
                }
            }
        }
        u64::from(known.count_ones()).saturating_add(unknown)
    }

    fn viable(&self, s: &State) -> bool {
        let n = self.n as u64;
        (0..self.n).all(|u| self.ball_bound(u, &s.succ) >= n && self.ball_bound(u, &s.pred) >= n)
    }

    /// Whether the completed graph has diameter exactly k.
    fn diameter_is_k(&self, succ: &[usize]) -> bool {
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut reached_k_only = false;
        for u in 0..self.n {
            let mut seen = 1u64 << u;
            let mut frontier = seen;
            let mut d = 0;
            while seen != all {
                if d == self.k {
                    return false;
                }
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let x = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= 1 << self.mate[x] | 1 << succ[x];
                }
                frontier = next & !seen;
                seen |= next;
                d += 1;
            }
            reached_k_only |= d == self.k;
        }
        reached_k_only
    }

    fn children(&self, s: &State, depth: usize) -> Vec<State> {
        let v = self.free[depth];
        (0..self.n)
            .filter(|&t| self.can_assign(s, v, t))
            .filter_map(|t| {
                let mut c = s.clone();
                c.succ[v] = t;
                c.pred[t] = v;
                self.viable(&c).then_some(c)
            })
            .collect()
    }

    fn dfs(&self, s: &mut State, depth: usize, cap: u64, out: &mut ShardResult) -> bool {
        if depth == self.free.len() {
            if self.diameter_is_k(&s.succ) {
                out.hits.push((out.examined, s.succ.clone()));
            }
            out.examined += 1;
            return out.examined < cap;
        }
        let v = self.free[depth];
        for t in 0..self.n {
            if !self.can_assign(s, v, t) {
                continue;
            }
            s.succ[v] = t;
            s.pred[t] = v;
            let go_on = !self.viable(s) || self.dfs(s, depth + 1, cap, out);
            s.succ[v] = NONE;
            s.pred[t] = NONE;
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Enumerate all completions in a fixed order, examining at most `cap`.
    /// Hits are reported in that order, independent of the thread count.
    fn run(&self, succ: &[usize], cap: u64) -> EngineRun {
        let mut pred = vec![NONE; self.n];
        for (v, &t) in succ.iter().enumerate() {
            if t != NONE {
                pred[t] = v;
            }
        }
        let root = State { succ: succ.to_vec(), pred };
        if !self.viable(&root) {
            return EngineRun { examined: 0, complete: true, hits: vec![] };
        }
        let mut prefixes = vec![root];
        let mut depth = 0;
        while prefixes.len() < MIN_SHARDS && depth < self.free.len() && !prefixes.is_empty() {
            prefixes = prefixes.iter().flat_map(|s| self.children(s, depth)).collect();
            depth += 1;
        }
        // Batches run in parallel; each shard is capped by what the budget
        // had left when its batch started, and the merge walks the shards in
        // order, so the result equals a sequential run cut at `cap`.
        let mut used = 0u64;
        let mut complete = true;
        let mut hits = Vec::new();
        'batches: for batch in prefixes.chunks(BATCH) {
            let batch_cap = cap - used;
            let shards: Vec<ShardResult> = batch
                .par_iter()
                .map(|s| {
                    let mut s = s.clone();
                    let mut out = ShardResult::default();
                    out.finished = self.dfs(&mut s, depth, batch_cap, &mut out);
                    out
                })
                .collect();
            for shard in shards {
                let remaining = cap - used;
                hits.extend(shard.hits.into_iter().filter(|&(i, _)| i < remaining).map(|(_, succ)| succ));
                if !shard.finished || shard.examined > remaining {
                    complete = false;
                    used += shard.examined.min(remaining);
                    break 'batches;
                }
                used += shard.examined;
            }
        }
        EngineRun { examined: used, complete, hits }
    }
}

fn assemble(mate: &[usize], succ: &[usize]) -> MixedGraph {
    let edges = (0..mate.len()).filter(|&v| v < mate[v]).map(|v| (v, mate[v]));
    let arcs = succ.iter().enumerate().map(|(v, &t)| (v, t));
    MixedGraph::build(mate.len(), edges, arcs).expect("completions are valid mixed graphs")
}

/// Accumulates survivors across engine runs, keeping the first graph found
/// in each isomorphism class.
struct Collector {
    order: usize,
    k: u32,
    budget: u64,
    examined: u64,
    matchings: u64,
    cases: u64,
    complete: bool,
    classes: BTreeMap<CanonicalForm, MixedGraph>,
    start: Instant,
}

impl Collector {
    fn new(order: usize, k: u32, budget: Option<u64>) -> Self {
        Collector {
            order,
            k,
            budget: budget.unwrap_or(u64::MAX),
            examined: 0,
            matchings: 0,
            cases: 0,
            complete: true,
            classes: BTreeMap::new(),
            start: Instant::now(),
        }
    }

    fn exhausted(&self) -> bool {
        !self.complete
    }

    fn run(&mut self, mate: &[usize], succ: &[usize]) {
        if self.exhausted() {
            return;
        }
        let engine = Engine::new(self.k, mate, succ);
        let run = engine.run(succ, self.budget - self.examined);
        self.examined += run.examined;
        self.complete &= run.complete;
        let found: Vec<(CanonicalForm, MixedGraph)> = run
            .hits
            .into_par_iter()
            .map(|s| {
                let g = assemble(mate, &s);
                (canonical_form(&g), g)
            })
            .collect();
        for (form, g) in found {
            self.classes.entry(form).or_insert(g);
        }
    }

    fn finish(self) -> Result<SearchOutcome, SearchError> {
        let outcome = SearchOutcome {
            order: self.order,
            k: self.k,
            examined: self.examined,
            matchings: self.matchings,
            cases: self.cases,
            survivors: self.classes.into_iter().map(|(form, graph)| Survivor { form, graph }).collect(),
            complete: self.complete,
            elapsed: self.start.elapsed(),
        };
        if outcome.complete {
            Ok(outcome)
        } else {
            Err(SearchError::BudgetExhausted(Box::new(outcome)))
        }
    }
}

/// All perfect matchings of `pool`, skipping pairs joined by an arc.
fn matchings(pool: &[usize], forbidden: &dyn Fn(usize, usize) -> bool, out: &mut Vec<Vec<(usize, usize)>>, acc: &mut Vec<(usize, usize)>) {
    let Some((&first, rest)) = pool.split_first() else {
        out.push(acc.clone());
        return;
    };
    for (i, &other) in rest.iter().enumerate() {
        if forbidden(first, other) {
            continue;
        }
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        acc.push((first, other));
        matchings(&remaining, forbidden, out, acc);
        acc.pop();
    }
}

/// Complete the Moore tree minus `removed` in every possible way.
fn complete_pruned_tree(tree: &MooreTree, removed: &BTreeSet<usize>, col: &mut Collector) {
    col.cases += 1;
    let keep: Vec<usize> = (0..tree.order()).filter(|v| !removed.contains(v)).collect();
    let mut new_index = vec![NONE; tree.order()];
    for (i, &v) in keep.iter().enumerate() {
        new_index[v] = i;
    }
    let n = keep.len();
    let mut mate = vec![NONE; n];
    let mut succ = vec![NONE; n];
    for &(u, v) in &tree.edges {
        if new_index[u] != NONE && new_index[v] != NONE {
            mate[new_index[u]] = new_index[v];
            mate[new_index[v]] = new_index[u];
        }
    }
    for &(u, v) in &tree.arcs {
        if new_index[u] != NONE && new_index[v] != NONE {
            succ[new_index[u]] = new_index[v];
        }
    }
    let pool: Vec<usize> = (0..n).filter(|&v| mate[v] == NONE).collect();
    if pool.len() % 2 == 1 {
        return;
    }
    col.matchings += crate::bounds::perfect_matchings(pool.len() as u32).try_into().unwrap_or(u64::MAX);
    let joined_by_arc = |a: usize, b: usize| succ[a] == b || succ[b] == a;
    let mut all = Vec::new();
    matchings(&pool, &joined_by_arc, &mut all, &mut Vec::new());
    for m in all {
        let mut mate = mate.clone();
        for (a, b) in m {
            mate[a] = b;
            mate[b] = a;
        }
        col.run(&mate, &succ);
        if col.exhausted() {
            return;
        }
    }
}

/// Mixed graphs of order `M(1,1,k) - 1` and diameter `k`: a Moore tree with
/// one leaf removed, completed in every way. Runs for `k` in 3..=4; pass a
/// budget to [`search_almost_moore_with_budget`] for larger `k`.
pub fn search_almost_moore(k: u32) -> Result<SearchOutcome, SearchError> {
    if !(3..=4).contains(&k) {
        return Err(SearchError::UnsupportedK(k));
    }
    search_almost_moore_with_budget(k, None)
}

pub fn search_almost_moore_with_budget(k: u32, budget: Option<u64>) -> Result<SearchOutcome, SearchError> {
    if k < 1 {
        return Err(SearchError::UnsupportedK(k));
    }
    let tree = moore_tree(k);
    if tree.order() - 1 > MAX_SEARCH_ORDER {
        return Err(SearchError::TooLarge(tree.order() - 1));
    }
    let mut col = Collector::new(tree.order() - 1, k, budget);
    for leaf in tree.words_of_length(k as usize) {
        complete_pruned_tree(&tree, &BTreeSet::from([leaf]), &mut col);
    }
    col.finish()
}

/// The vertex sets removed from the depth-4 Moore tree to leave 16
/// vertices: three leaves, or a word of length 3 with its children
/// (topped up with one more leaf when it has a single child).
pub fn order16_removals() -> Vec<BTreeSet<usize>> {
    let tree = moore_tree(4);
    let leaves = tree.words_of_length(4);
    let mut out = Vec::new();
    for (i, &a) in leaves.iter().enumerate() {
        for (j, &b) in leaves.iter().enumerate().skip(i + 1) {
            for &c in &leaves[j + 1..] {
                out.push(BTreeSet::from([a, b, c]));
            }
        }
    }
    for w in tree.words_of_length(3) {
        let word = &tree.words[w];
        let one = tree.index_of(&format!("{word}1")).expect("arc child exists");
        if word.ends_with('0') {
            for &other in leaves.iter().filter(|&&x| x != one) {
                out.push(BTreeSet::from([w, one, other]));
            }
        } else {
            let zero = tree.index_of(&format!("{word}0")).expect("edge child exists");
            out.push(BTreeSet::from([w, zero, one]));
        }
    }
    out
}

/// Mixed graphs of order 16 and diameter 4 obtained from the depth-4 Moore
/// tree by the removals in [`order16_removals`].
pub fn search_order16_k4() -> Result<SearchOutcome, SearchError> {
    let tree = moore_tree(4);
    let mut col = Collector::new(16, 4, None);
    for removed in order16_removals() {
        complete_pruned_tree(&tree, &removed, &mut col);
    }
    col.finish()
}

/// Seed arcs used for the order-14 search.
pub const ORDER14_SEEDS: [(usize, usize); 3] = [(0, 2), (1, 5), (5, 7)];

/// All order-14 mixed graphs of diameter 4, with matching `i ~ i+1` for
/// even `i` and the arcs of [`ORDER14_SEEDS`].
pub fn search_order14_k4() -> Result<SearchOutcome, SearchError> {
    search_generic(14, 4, &ORDER14_SEEDS, None)
}

/// Mixed graphs of the given even order and diameter `k`, with matching
/// `i ~ i+1` for even `i` and the given arcs fixed.
pub fn search_generic(order: usize, k: u32, seeds: &[(usize, usize)], budget: Option<u64>) -> Result<SearchOutcome, SearchError> {
    if order % 2 == 1 {
        return Err(SearchError::OddOrder(order));
    }
    if order > MAX_SEARCH_ORDER {
        return Err(SearchError::TooLarge(order));
    }
    let mate: Vec<usize> = (0..order).map(|v| v ^ 1).collect();
    let mut succ = vec![NONE; order];
    let mut pred = vec![NONE; order];
    for &(u, v) in seeds {
        let bad = u >= order || v >= order || u == v || mate[u] == v || succ[u] != NONE || pred[v] != NONE || succ[v] == u;
        if bad {
            return Err(SearchError::InvalidSeed((u, v)));
        }
        succ[u] = v;
        pred[v] = u;
    }
    let mut col = Collector::new(order, k, budget);
    col.matchings = 1;
    col.run(&mate, &succ);
    col.finish()
}
