use std::collections::VecDeque;

use curvegraph::graphcore::{
    count_parallel_translates, delta_four_point, distance, electrify, nearest_point_projection, projection_diameter,
    quasiconvexity_constant, translation_growth, wpd_census, Graph, GraphDoc, GraphError, Quadruples, Reach, Space,
    SubsetFamily, VertexId, VertexMap,
};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn v(i: usize) -> VertexId {
    VertexId(i)
}

fn family(members: &[&[usize]]) -> SubsetFamily {
    let mut fam = SubsetFamily::new();
    for m in members {
        fam.push(None, m.iter().map(|&i| v(i)).collect()).unwrap();
    }
    fam
}

/// Unit-step BFS over the explicit subdivision: each graph edge becomes two
/// unit steps through a midpoint, each spoke one unit step.
fn subdivision_distances(n: usize, edges: &[(usize, usize)], fam: &[Vec<usize>], src: usize) -> Vec<Option<u32>> {
    let total = n + edges.len() + fam.len();
    let mut adj = vec![Vec::new(); total];
    for (k, &(a, b)) in edges.iter().enumerate() {
        let mid = n + k;
        adj[a].push(mid);
        adj[mid].push(a);
        adj[b].push(mid);
        adj[mid].push(b);
    }
    for (k, m) in fam.iter().enumerate() {
        let cone = n + edges.len() + k;
        for &y in m {
            adj[y].push(cone);
            adj[cone].push(y);
        }
    }
    let mut dist = vec![None; total];
    dist[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if dist[y].is_none() {
                dist[y] = Some(dist[x].unwrap() + 1);
                q.push_back(y);
            }
        }
    }
    dist.truncate(n);
    dist
}

#[allow(clippy::needless_range_loop)]
fn floyd(g: &impl Space) -> Vec<Vec<Option<u32>>> {
    let n = g.vertex_count();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for &(w, len) in g.arcs(v(i)) {
            d[i][w.0] = Some(d[i][w.0].map_or(len, |o: u32| o.min(len)));
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|o| a + b < o) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> (usize, Vec<(usize, usize)>) {
    let n = rng.gen_range(2..=max_n);
    let p: f64 = rng.gen_range(0.05..0.4);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    (n, edges)
}

/// A random graph with a Hamiltonian path added.
fn connected_graph(rng: &mut ChaCha8Rng, max_n: usize) -> (usize, Vec<(usize, usize)>) {
    let (n, mut edges) = random_graph(rng, max_n);
    for i in 1..n {
        if !edges.contains(&(i - 1, i)) {
            edges.push((i - 1, i));
        }
    }
    (n, edges)
}

fn random_family(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<usize>> {
    let k = rng.gen_range(0..=4);
    (0..k)
        .map(|_| {
            let size = rng.gen_range(1..=n.min(6));
            let mut m: Vec<usize> = (0..size).map(|_| rng.gen_range(0..n)).collect();
            m.sort();
            m.dedup();
            m
        })
        .collect()
}

fn reach(d: Option<u32>) -> Reach {
    match d {
        Some(x) => Reach::At(curvegraph::graphcore::HalfDistance(x)),
        None => Reach::Unreachable,
    }
}

#[test]
fn electrified_distances_match_subdivision_bfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let (n, edges) = random_graph(&mut rng, 25);
        let fam = random_family(&mut rng, n);
        let g = Graph::from_indices(n, &edges).unwrap();
        let refs: Vec<&[usize]> = fam.iter().map(Vec::as_slice).collect();
        let z = electrify(&g, &family(&refs)).unwrap();
        for src in 0..n {
            let want = subdivision_distances(n, &edges, &fam, src);
            for (dst, &w) in want.iter().enumerate() {
                assert_eq!(distance(&z, v(src), v(dst), None).unwrap(), reach(w));
            }
        }
    }
}

#[test]
fn path_fully_coned() {
    let g = Graph::path(5);
    assert_eq!(distance(&g, v(0), v(4), None).unwrap(), reach(Some(8)));
    let z = electrify(&g, &family(&[&[0, 1, 2, 3, 4]])).unwrap();
    assert_eq!(distance(&z, v(0), v(4), None).unwrap(), reach(Some(2)));
    assert_eq!(distance(&z, v(3), v(3), None).unwrap(), reach(Some(0)));
}

#[test]
fn cycle_with_two_members() {
    let g = Graph::cycle(8);
    let fam = vec![vec![0, 1, 2], vec![4, 5, 6]];
    let z = electrify(&g, &family(&[&fam[0], &fam[1]])).unwrap();
    assert_eq!(distance(&z, v(0), v(4), None).unwrap(), reach(Some(6)));
    let edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    assert_eq!(subdivision_distances(8, &edges, &fam, 0)[4], Some(6));
}

#[test]
fn empty_family_changes_nothing() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (n, edges) = random_graph(&mut rng, 20);
    let g = Graph::from_indices(n, &edges).unwrap();
    let z = electrify(&g, &SubsetFamily::new()).unwrap();
    assert_eq!(floyd(&g), floyd(&z));
}

#[test]
fn unknown_member_and_radius_cap() {
    let g = Graph::path(3);
    let mut fam = SubsetFamily::new();
    fam.push(None, vec![v(0), v(9)]).unwrap();
    assert!(matches!(electrify(&g, &fam), Err(GraphError::UnknownVertex(_))));
    assert_eq!(distance(&g, v(0), v(2), Some(2)).unwrap(), Reach::CapExceeded);
    let split = Graph::from_indices(3, &[(0, 1)]).unwrap();
    assert_eq!(distance(&split, v(0), v(2), None).unwrap(), Reach::Unreachable);
    assert!(distance(&g, v(0), v(5), None).is_err());
}

#[test]
fn cycle_four_point_by_brute_force() {
    for n in 4..=9 {
        let g = Graph::cycle(n);
        let d = floyd(&g);
        let mut best = 0u32;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        let dd = |x: usize, y: usize| d[x][y].unwrap();
                        let mut s = [dd(a, b) + dd(c, e), dd(a, c) + dd(b, e), dd(a, e) + dd(b, c)];
                        s.sort();
                        best = best.max(s[2] - s[1]);
                    }
                }
            }
        }
        let got = delta_four_point(&g, &Quadruples::all(&g)).unwrap();
        assert!(got.exhaustive);
        assert_eq!(got.half_units, Ratio::new(best, 2), "C_{n}");
    }
    let c4 = Graph::cycle(4);
    assert_eq!(
        delta_four_point(&c4, &Quadruples::all(&c4)).unwrap().half_units,
        Ratio::from_integer(2)
    );
}

#[test]
fn trees_are_zero_hyperbolic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let n = rng.gen_range(1..=30);
        let edges: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
        let g = Graph::from_indices(n, &edges).unwrap();
        assert_eq!(
            delta_four_point(&g, &Quadruples::all(&g)).unwrap().half_units,
            Ratio::from_integer(0)
        );
    }
}

#[test]
fn four_point_reports_disconnection() {
    let g = Graph::from_indices(4, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(
        delta_four_point(&g, &Quadruples::all(&g)),
        Err(GraphError::DisconnectedInput)
    );
}

#[test]
fn sampled_four_point_is_seeded() {
    let g = Graph::cycle(12);
    let q = Quadruples::Sampled {
        vertices: g.vertices().collect(),
        count: 200,
        seed: 5,
    };
    let a = delta_four_point(&g, &q).unwrap();
    assert_eq!(a, delta_four_point(&g, &q).unwrap());
    assert!(!a.exhaustive);
    assert!(a.half_units <= delta_four_point(&g, &Quadruples::all(&g)).unwrap().half_units);
}

/// Enumerates every geodesic explicitly and measures the farthest vertex.
fn quasiconvexity_oracle(g: &Graph, subset: &[usize]) -> u32 {
    let d = floyd(g);
    let to_subset = |w: usize| subset.iter().map(|&s| d[w][s].unwrap()).min().unwrap();
    let mut k = 0;
    for &a in subset {
        for &b in subset {
            let mut stack = vec![vec![a]];
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                if last == b {
                    for &w in &path {
                        k = k.max(to_subset(w));
                    }
                    continue;
                }
                for w in g.neighbors(v(last)) {
                    if d[w.0][b].unwrap() + 2 == d[last][b].unwrap() {
                        let mut p = path.clone();
                        p.push(w.0);
                        stack.push(p);
                    }
                }
            }
        }
    }
    k
}

#[test]
fn quasiconvexity_examples_and_oracle() {
    let p = Graph::path(7);
    assert_eq!(
        quasiconvexity_constant(&p, &[v(1), v(2), v(3), v(4)], 100).unwrap().0,
        0
    );
    let c8 = Graph::cycle(8);
    assert_eq!(quasiconvexity_constant(&c8, &[v(0), v(4)], 100).unwrap().0, 4);
    assert_eq!(quasiconvexity_oracle(&c8, &[0, 4]), 4);
    assert!(matches!(
        quasiconvexity_constant(&c8, &[v(0), v(4)], 4),
        Err(GraphError::CapExceeded(_))
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut checked = 0;
    while checked < 25 {
        let (n, edges) = connected_graph(&mut rng, 12);
        let g = Graph::from_indices(n, &edges).unwrap();
        let subset: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        if subset.is_empty() {
            continue;
        }
        let ids: Vec<_> = subset.iter().map(|&i| v(i)).collect();
        assert_eq!(
            quasiconvexity_constant(&g, &ids, 1000).unwrap().0,
            quasiconvexity_oracle(&g, &subset)
        );
        checked += 1;
    }
}

#[test]
fn projections() {
    let p5 = Graph::path(5);
    let all: Vec<_> = (0..5).map(v).collect();
    assert_eq!(nearest_point_projection(&p5, &all, &[v(3)]).unwrap(), vec![v(3)]);
    assert_eq!(
        nearest_point_projection(&p5, &all, &[v(1), v(2)]).unwrap(),
        vec![v(1), v(2)]
    );

    // v5 is four steps from v1 and three from v0 and v2
    let c8 = Graph::cycle(8);
    let got = nearest_point_projection(&c8, &[v(0), v(1), v(2)], &[v(5)]).unwrap();
    assert_eq!(got, vec![v(0), v(2)]);

    let axis: Vec<_> = (0..4).map(v).collect();
    assert_eq!(projection_diameter(&c8, &axis, &[v(6)]).unwrap().0, 0);
    assert_eq!(projection_diameter(&c8, &axis, &[v(5), v(6)]).unwrap().0, 6);
    assert_eq!(projection_diameter(&c8, &axis, &[v(3)]).unwrap().0, 0);

    let split = Graph::from_indices(3, &[(0, 1)]).unwrap();
    assert_eq!(
        nearest_point_projection(&split, &[v(0)], &[v(2)]),
        Err(GraphError::DisconnectedInput)
    );
}

#[test]
fn projection_matches_distance_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let (n, edges) = connected_graph(&mut rng, 15);
        let g = Graph::from_indices(n, &edges).unwrap();
        let d = floyd(&g);
        let target: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let source: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.2)).collect();
        if target.is_empty() || source.is_empty() {
            continue;
        }
        let mut want = Vec::new();
        for &s in &source {
            let m = target.iter().map(|&t| d[s][t].unwrap()).min().unwrap();
            want.extend(target.iter().filter(|&&t| d[s][t] == Some(m)).map(|&t| v(t)));
        }
        want.sort();
        want.dedup();
        let ids = |xs: &[usize]| xs.iter().map(|&i| v(i)).collect::<Vec<_>>();
        assert_eq!(
            nearest_point_projection(&g, &ids(&target), &ids(&source)).unwrap(),
            want
        );
    }
}

#[test]
fn parallel_translates() {
    let c8 = Graph::cycle(8);
    assert_eq!(
        count_parallel_translates(&c8, &SubsetFamily::new(), v(0), v(4), 10).unwrap(),
        0
    );
    let twice = family(&[&[0, 1], &[1, 0]]);
    assert_eq!(count_parallel_translates(&c8, &twice, v(0), v(1), 3).unwrap(), 1);
    let four = family(&[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]);
    assert_eq!(count_parallel_translates(&c8, &four, v(0), v(4), 2).unwrap(), 0);
    // within two steps of both ends: {v2,v3} and {v6,v7}
    assert_eq!(count_parallel_translates(&c8, &four, v(0), v(4), 5).unwrap(), 2);
}

fn rotation(n: usize, k: usize) -> VertexMap {
    VertexMap::total(format!("r{k}"), (0..n).map(|i| v((i + k) % n)).collect())
}

#[test]
fn wpd_and_growth_trivial_cases() {
    let c8 = Graph::cycle(8);
    let id = VertexMap::identity(8);
    let r = rotation(8, 1);
    for n in 1..=4 {
        assert_eq!(
            wpd_census(&c8, std::slice::from_ref(&id), &r, v(0), 2, n)
                .unwrap()
                .count,
            1
        );
        assert_eq!(
            wpd_census(&c8, std::slice::from_ref(&id), &r, v(0), 0, n)
                .unwrap()
                .count,
            0
        );
    }
    let bad = VertexMap::total("swap", vec![v(1), v(0), v(2), v(3), v(4), v(5), v(6), v(7)]);
    assert!(matches!(
        wpd_census(&c8, &[bad], &r, v(0), 2, 1),
        Err(GraphError::NotAutomorphism { .. })
    ));

    let g = translation_growth(&c8, &id, v(3), 5).unwrap();
    assert!(g.iter().all(|(_, d)| d.0 == 0));
    let g = translation_growth(&c8, &r, v(0), 20).unwrap();
    assert!(g.iter().all(|(_, d)| d.0 <= 8));
    assert_eq!(g[7].1 .0, 0);
}

#[test]
fn graph_documents_round_trip() {
    let text = r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]],
                   "families": [{"label": "Y", "members": ["a", "c"]}]}"#;
    let doc = GraphDoc::parse(text).unwrap();
    let (g, fam) = doc.build().unwrap();
    assert_eq!(GraphDoc::from_graph(&g, Some(&fam)), doc);
    let err = GraphDoc::parse("{\"vertices\": [],\n \"edgez\": []}").unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
    let missing = GraphDoc::parse(r#"{"vertices": ["a"], "edges": [["a", "z"]]}"#).unwrap();
    assert!(matches!(missing.build(), Err(GraphError::UnknownVertex(_))));
}

fn arb_instance() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<Vec<usize>>)> {
    (2usize..30).prop_flat_map(|n| {
        let edges = proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(|es| {
            let mut out: Vec<(usize, usize)> = es
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            out.sort();
            out.dedup();
            out
        });
        let fam = proptest::collection::vec(proptest::collection::vec(0..n, 1..6), 0..5);
        (Just(n), edges, fam)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn electrification_shortens_and_collapses((n, edges, fam) in arb_instance()) {
        let g = Graph::from_indices(n, &edges).unwrap();
        let refs: Vec<&[usize]> = fam.iter().map(Vec::as_slice).collect();
        let z = electrify(&g, &family(&refs)).unwrap();
        let dg = floyd(&g);
        let dz = floyd(&z);
        for a in 0..n {
            for b in 0..n {
                if let Some(x) = dg[a][b] {
                    prop_assert!(dz[a][b].unwrap() <= x);
                }
            }
        }
        for m in &fam {
            for &a in m {
                for &b in m {
                    prop_assert!(dz[a][b].unwrap() <= 2);
                }
            }
        }
    }

    #[test]
    fn cycle_rotations_are_isometries(n in 3usize..16, k in 0usize..16, chord in 0usize..16) {
        let g = Graph::cycle(n);
        let r = rotation(n, k % n);
        prop_assert!(r.validate(&g).is_ok());
        let fam = family(&[&(0..n).collect::<Vec<_>>()]);
        let z = electrify(&g, &fam).unwrap();
        let rz = z.extend_map(&r).unwrap();
        let d = floyd(&z);
        let a = chord % n;
        for b in 0..n {
            let (ra, rb) = (rz.image(v(a)).unwrap().0, rz.image(v(b)).unwrap().0);
            prop_assert_eq!(d[a][b], d[ra][rb]);
        }
    }
}
