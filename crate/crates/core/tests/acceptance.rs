//! Acceptance run: one line per criterion, non-zero exit if any fails.
//! Built with `harness = false` so the report is always printed.

use std::collections::BTreeSet;
use std::time::Instant;

use mixgraph::algebra::{cayley_mixed, cayley_search, dihedral, order72_base, lift, semidirect_cyclic};
use mixgraph::bounds::{fibonacci, moore_11, search_space_bound, upper_bound};
use mixgraph::canon::{automorphism_count, canonical_form, is_isomorphic};
use mixgraph::codec::{decode_digraph6, encode_digraph6};
use mixgraph::families::*;
use mixgraph::graph::MixedGraph;
use mixgraph::reference::{GPLUS2_A, GPLUS2_A4, GPLUS2_LABELS, ORDER14_K4_DIGRAPH6};
use mixgraph::search::{search_almost_moore, search_generic, search_order14_k4, search_order16_k4};
use mixgraph::spectra::{char_poly, char_poly_by_interpolation, spectrum_classes};
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Failed sub-checks of one criterion.
#[derive(Default)]
struct Report {
    failures: Vec<String>,
    checks: usize,
}

impl Report {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, expected: T, observed: T) {
        let ok = expected == observed;
        self.check(ok, || format!("{what}: expected {expected:?}, observed {observed:?}"));
    }
}

fn catalogue() -> Vec<MixedGraph> {
    ORDER14_K4_DIGRAPH6.iter().map(|s| decode_digraph6(s).unwrap()).collect()
}

fn d7_cayley() -> MixedGraph {
    let d = dihedral(14).unwrap();
    let (r, s) = (d.parse_element("Rot(1)").unwrap(), d.parse_element("Ref(0)").unwrap());
    cayley_mixed(&d, &[s], &[r]).unwrap()
}

fn moore_bounds(r: &mut Report) {
    let expected = [6u64, 11, 19, 32, 53, 87, 142, 231, 375, 608, 985, 1595, 2582, 4179, 6763];
    let observed: Vec<u64> = (2..=16).map(|k| moore_11(k).to_u64().unwrap()).collect();
    r.eq("M(1,1,k), k=2..16", expected.to_vec(), observed);
}

fn upper_bounds(r: &mut Report) {
    let expected = [48u64, 78, 126, 206, 336, 544, 882, 1428, 2312, 3744, 6058];
    let observed: Vec<u64> = (6..=16).map(|k| upper_bound(k).to_u64().unwrap()).collect();
    r.eq("upper bound, k=6..16", expected.to_vec(), observed);
}

fn table1(r: &mut Report) {
    let observed: Vec<u64> = (3..=5).map(|k| search_space_bound(k).to_u64().unwrap()).collect();
    r.eq("N(3), N(4), N(5)", vec![396, 889_980, 0], observed);
}

fn table2(r: &mut Report) {
    let mut forms = BTreeSet::new();
    for (i, s) in ORDER14_K4_DIGRAPH6.iter().enumerate() {
        let g = match decode_digraph6(s) {
            Ok(g) => g,
            Err(e) => {
                r.check(false, || format!("#{i} does not decode: {e}"));
                continue;
            }
        };
        r.eq(&format!("#{i} order"), 14, g.order());
        r.eq(&format!("#{i} diameter"), Some(4), g.diameter());
        r.check(g.is_totally_regular(1, 1), || format!("#{i} not totally (1,1)-regular"));
        r.check(!g.has_digons(), || format!("#{i} has a digon"));
        r.eq(&format!("#{i} round trip"), s.to_string(), encode_digraph6(&g, false).unwrap());
        forms.insert(canonical_form(&g));
    }
    r.eq("pairwise non-isomorphic", 27, forms.len());
}

fn table3(r: &mut Report) {
    let classes = spectrum_classes();
    let mut sizes = vec![0usize; classes.len()];
    for (i, g) in catalogue().iter().enumerate() {
        let p = char_poly(g).unwrap();
        // Independent route: determinants at integer points, interpolated.
        r.eq(&format!("#{i} two characteristic polynomial routes agree"), &p, &char_poly_by_interpolation(g).unwrap());
        match classes.iter().position(|c| c.product() == p) {
            Some(c) => sizes[c] += 1,
            None => r.check(false, || format!("#{i} matches no class: {p}")),
        }
    }
    r.eq("class sizes", vec![9, 6, 5, 4, 2, 1], sizes);
}

fn search_k4(r: &mut Report) {
    let out = search_order14_k4().unwrap();
    r.eq("survivors", 27, out.survivors.len());
    let table: BTreeSet<_> = catalogue().iter().map(canonical_form).collect();
    r.check(out.forms() == table, || "survivor set differs from the catalogue".into());
    let cay = d7_cayley();
    let lc7 = line_digraph(&symmetric_cycle(7)).to_mixed_digons_as_edges();
    let cayley_like = out.survivors.iter().filter(|s| is_isomorphic(&s.graph, &cay)).count();
    let line_like = out.survivors.iter().filter(|s| is_isomorphic(&s.graph, &lc7)).count();
    r.eq("survivors isomorphic to Cay(D7)", 1, cayley_like);
    r.eq("survivors isomorphic to L(C7)", 1, line_like);
    let vertex_transitive = out.survivors.iter().filter(|s| automorphism_count(&s.graph).unwrap() >= 14).count();
    r.eq("survivors with at least 14 automorphisms", 1, vertex_transitive);
}

fn nonexistence(r: &mut Report) {
    let am = search_almost_moore(4).unwrap();
    r.eq("almost Moore k=4 survivors", 0, am.survivors.len());
    r.check(am.examined <= 889_980, || format!("examined {} exceeds N(4)", am.examined));
    r.eq("order 16 survivors", 0, search_order16_k4().unwrap().survivors.len());
}

fn families(r: &mut Report) {
    for n in 2..=6usize {
        let g = build_e(n).unwrap().graph;
        let m = moore_11(n as u32).to_usize().unwrap();
        let even = fibonacci(n as u32).to_u64().unwrap() % 2 == 0;
        let (order, diam) = if even { (m, 2 * n as u32) } else { (m + 1, 2 * n as u32 + 1) };
        r.eq(&format!("E({n}) order"), order, g.order());
        r.eq(&format!("E({n}) diameter"), Some(diam), g.diameter());
    }
    for n in 2..=8 {
        let g = build_f(n).unwrap().graph;
        r.eq(&format!("F({n}) order"), 3 << n, g.order());
        r.eq(&format!("F({n}) diameter"), Some(2 * n as u32), g.diameter());
    }
    for n in 2..=6 {
        let iso = is_isomorphic(&build_f(n).unwrap().graph, &build_f_numeric(n).unwrap().graph);
        r.check(iso, || format!("F({n}) not isomorphic to F[{n}]"));
    }
    for n in 3..=5 {
        let g = build_fstar(n).unwrap().graph;
        r.check(g.is_totally_regular(1, 1), || format!("F*({n}) not totally regular"));
        r.eq(&format!("F*({n}) digons"), 3, g.digons_and_loops().0);
        r.eq(&format!("F*({n}) automorphisms"), 6, automorphism_count(&g).unwrap());
    }
    let k22 = kautz(2, 2).to_mixed_digons_as_edges();
    r.check(is_isomorphic(&build_fprime(2).unwrap().graph, &k22), || "F'(2) not isomorphic to K(2,2)".into());
    r.eq("F'(3) diameter", Some(5), build_fprime(3).unwrap().graph.diameter());
    let f4 = build_fprime(4).unwrap().graph;
    r.eq("F'(4) order", 42, f4.order());
    r.eq("F'(4) diameter", Some(7), f4.diameter());
    for n in 5..=6 {
        r.eq(&format!("F'({n}) diameter"), Some(2 * n as u32), build_fprime(n).unwrap().graph.diameter());
    }
    for n in 2..=10 {
        let g = build_g(n).unwrap().graph;
        r.eq(&format!("G({n}) order"), (1 << (n + 1)) - 4, g.order());
        r.eq(&format!("G({n}) diameter"), Some(2 * n as u32 - 1), g.diameter());
    }
    for n in 2..=8 {
        let g = build_gplus(n).unwrap();
        let n32 = n as u32;
        r.eq(&format!("G+({n}) diameter"), Some(2 * n32), g.graph.diameter());
        let ecc = |l: String| g.graph.eccentricity(g.index_of(&l).unwrap());
        let (zeros, ones) = ("0".repeat(n), "1".repeat(n));
        r.eq(&format!("G+({n}) ecc(0|0..0)"), Some(2 * n32), ecc(format!("0|{zeros}")));
        r.eq(&format!("G+({n}) ecc(0|1..1)"), Some(2 * n32), ecc(format!("0|{ones}")));
        r.eq(&format!("G+({n}) ecc(1|0..0)"), Some(2 * n32 - 1), ecc(format!("1|{zeros}")));
        r.eq(&format!("G+({n}) ecc(1|1..1)"), Some(2 * n32 - 1), ecc(format!("1|{ones}")));
        if n >= 5 {
            r.eq(&format!("G+({n}) ecc(1|0..01)"), Some(2 * n32 - 2), ecc(format!("1|{}1", &zeros[1..])));
            r.eq(&format!("G+({n}) ecc(1|1..10)"), Some(2 * n32 - 2), ecc(format!("1|{}0", &ones[1..])));
        }
    }
    let k3 = k3_colored();
    for n in 3..=5 {
        let h = build_h(n, &k3).unwrap().graph;
        r.eq(&format!("H_{n}(K3) order"), 3 << (n - 1), h.order());
        r.eq(&format!("H_{n}(K3) digons"), 0, h.digons_and_loops().0);
        let c = h.contract_edges().unwrap().to_mixed();
        r.check(is_isomorphic(&c, &kautz(2, n - 1).to_mixed()), || format!("H_{n}(K3) does not contract to K(2,{})", n - 1));
    }
    r.eq("H_3(K3) diameter", Some(5), build_h(3, &k3).unwrap().graph.diameter());
    r.eq("H_4(K3) diameter", Some(6), build_h(4, &k3).unwrap().graph.diameter());
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let m = a.len();
    (0..m).map(|i| (0..m).map(|j| (0..m).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

fn adjacency(g: &MixedGraph, order: &[usize]) -> Vec<Vec<u64>> {
    let a = g.adjacency_matrix();
    order.iter().map(|&i| order.iter().map(|&j| a[i][j] as u64).collect()).collect()
}

fn gplus2_matrices(r: &mut Report) {
    let g = build_gplus(2).unwrap();
    let order: Vec<usize> = GPLUS2_LABELS.iter().map(|l| g.index_of(l).unwrap()).collect();
    let a = adjacency(&g.graph, &order);
    let printed: Vec<Vec<u64>> = GPLUS2_A.iter().map(|row| row.iter().map(|&x| x as u64).collect()).collect();
    r.eq("A", printed, a.clone());
    let a2 = mat_mul(&a, &a);
    let a4 = mat_mul(&a2, &a2);
    r.eq("A^4", GPLUS2_A4.iter().map(|row| row.to_vec()).collect::<Vec<_>>(), a4);
}

fn algebra(r: &mut Report) {
    let c = d7_cayley();
    r.eq("Cay(D7) order", 14, c.order());
    r.eq("Cay(D7) diameter", Some(4), c.diameter());
    let d18 = dihedral(18).unwrap();
    let l = lift(&order72_base(&d18).unwrap(), &d18).unwrap();
    r.eq("order-72 lift order", 72, l.order());
    r.check(l.is_totally_regular(1, 1), || "order-72 lift not totally (1,1)-regular".into());
    r.eq("order-72 lift diameter", Some(8), l.diameter());
    let hits = cayley_search(&semidirect_cyclic(9, 6, 2).unwrap(), 7).unwrap();
    let found = hits.iter().any(|h| {
        let g = semidirect_cyclic(9, 6, 2).unwrap();
        let cay = cayley_mixed(&g, &[h.involution], &[h.generator]).unwrap();
        cay.order() == 54 && cay.is_totally_regular(1, 1) && cay.diameter() == Some(7)
    });
    r.check(found, || format!("no order-54 diameter-7 Cayley graph among {} hits", hits.len()));
}

/// Floyd-Warshall distances as an independent oracle for BFS.
fn floyd(g: &MixedGraph) -> Vec<Vec<Option<u32>>> {
    let n = g.order();
    let mut d: Vec<Vec<Option<u32>>> = (0..n).map(|i| (0..n).map(|j| (i == j).then_some(0)).collect()).collect();
    for u in 0..n {
        for v in g.successors(u) {
            if u != v {
                d[u][v] = Some(1);
            }
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][m], d[m][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().unwrap().install(f)
}

fn properties(r: &mut Report) {
    let samples = [
        build_f(3).unwrap().graph,
        build_fstar(3).unwrap().graph,
        build_g(4).unwrap().graph,
        build_gplus(3).unwrap().graph,
        build_e(3).unwrap().graph,
        d7_cayley(),
    ];
    for (i, g) in samples.iter().enumerate() {
        let oracle = floyd(g);
        let bfs: Vec<Vec<Option<u32>>> = (0..g.order()).map(|u| g.bfs(u).dist).collect();
        r.check(bfs == oracle, || format!("sample {i}: BFS disagrees with Floyd-Warshall"));
        let k = g.diameter().unwrap() as usize;
        let mats = g.distance_matrices(k).unwrap();
        let consistent = (0..g.order()).all(|u| {
            (0..g.order()).all(|v| {
                let ones: Vec<usize> = (0..=k).filter(|&d| mats[d][u][v] == 1).collect();
                ones == [oracle[u][v].unwrap() as usize]
            })
        });
        r.check(consistent, || format!("sample {i}: distance matrices disagree"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pool: Vec<MixedGraph> = catalogue().into_iter().chain(samples.iter().cloned()).collect();
    let mut invariant = 0;
    for t in 0..1000 {
        let g = &pool[t % pool.len()];
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rng);
        invariant += usize::from(canonical_form(&g.relabel(&perm)) == canonical_form(g));
    }
    r.eq("relabelings with unchanged canonical form", 1000, invariant);

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
    r.check(commute, || "flip/step commutation fails for some n <= 4".into());

    for n in 2..=6 {
        let g = build_gplus(n).unwrap().graph;
        let a = adjacency(&g, &(0..g.order()).collect::<Vec<_>>());
        let mut p = a.clone();
        for _ in 1..2 * n {
            p = mat_mul(&p, &a);
        }
        r.check(p.iter().flatten().all(|&x| x > 0), || format!("A^{} of G+({n}) has a zero entry", 2 * n));
    }

    let runs: Vec<_> = [1, 2, 4]
        .into_iter()
        .map(|j| {
            with_jobs(j, || {
                let a = search_generic(10, 3, &[], None).unwrap();
                let b = search_order16_k4().unwrap();
                let c = search_generic(12, 4, &[(0, 2)], Some(3_000));
                let partial = match c {
                    Err(mixgraph::search::SearchError::BudgetExhausted(p)) => *p,
                    Ok(o) => o,
                    Err(e) => panic!("{e}"),
                };
                (a.forms(), a.examined, b.examined, partial.forms(), partial.examined)
            })
        })
        .collect();
    r.check(runs.windows(2).all(|w| w[0] == w[1]), || "search results depend on the worker count".into());
}

fn main() {
    let criteria: [(&str, fn(&mut Report)); 11] = [
        ("Moore bounds k=2..16", moore_bounds),
        ("upper bounds k=6..16", upper_bounds),
        ("search-space counts", table1),
        ("order-14 catalogue decodes", table2),
        ("spectral classes", table3),
        ("order-14 search", search_k4),
        ("nonexistence searches", nonexistence),
        ("families", families),
        ("G+(2) matrices", gplus2_matrices),
        ("algebra", algebra),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut r = Report::default();
        run(&mut r);
        let verdict = if r.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {name} ({}/{} checks, {:.1}s)",
            i + 1,
            r.checks - r.failures.len(),
            r.checks,
            start.elapsed().as_secs_f64()
        );
        for f in &r.failures {
            println!("    {f}");
        }
        failed += usize::from(!r.failures.is_empty());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
