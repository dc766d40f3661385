use std::collections::{HashMap, VecDeque};

use curvegraph::farey::{
    classify, classify_pair, complementary_regions, farey_adjacent, farey_ball, farey_distance, intersection_number,
    neighbors_within, Dynamics, FareyError, FareyMapClass, Generator, ModelSurface, Slope, Verdict,
};
use curvegraph::graphcore::{delta_four_point, translation_growth, Quadruples};
use curvegraph::traintrack::RegionShape;
use curvegraph::MapClass;
use num_integer::Integer;
use proptest::prelude::*;

fn s(x: &str) -> Slope {
    x.parse().unwrap()
}

/// Every slope of height at most `h`, listed by brute force.
fn all_slopes(h: i64) -> Vec<Slope> {
    let mut out = vec![Slope::INFINITY];
    for q in 1..=h {
        for p in -h..=h {
            if p.gcd(&q) == 1 {
                out.push(Slope::new(p, q).unwrap());
            }
        }
    }
    out
}

/// Breadth-first distances in the height-capped graph, with adjacency by
/// brute-force determinant tests.
fn bfs_oracle(center: Slope, h: i64) -> HashMap<Slope, u32> {
    let slopes = all_slopes(h);
    let mut dist = HashMap::from([(center, 0)]);
    let mut queue = VecDeque::from([center]);
    while let Some(a) = queue.pop_front() {
        for &b in &slopes {
            if (a.p() * b.q() - a.q() * b.p()).abs() == 1 && !dist.contains_key(&b) {
                dist.insert(b, dist[&a] + 1);
                queue.push_back(b);
            }
        }
    }
    dist
}

#[test]
fn neighbours_match_brute_force() {
    let slopes = all_slopes(9);
    for &a in &slopes {
        let mut want: Vec<Slope> = slopes.iter().copied().filter(|&b| farey_adjacent(a, b)).collect();
        want.sort();
        assert_eq!(neighbors_within(a, 9), want, "{a}");
    }
}

#[test]
fn balls_match_breadth_first_oracle() {
    for (center, h) in [(Slope::ZERO, 12), (s("2/5"), 12), (Slope::INFINITY, 10)] {
        let oracle = bfs_oracle(center, h);
        for radius in 0..=4 {
            let ball = farey_ball(center, radius, h).unwrap();
            let want = oracle.values().filter(|&&d| d <= radius).count();
            assert_eq!(ball.len(), want, "{center} r={radius}");
            for &x in ball.slopes() {
                assert_eq!(ball.depth(x), Some(oracle[&x]));
            }
        }
    }
}

#[test]
fn ball_sizes_around_zero() {
    let counts: Vec<usize> = (2..=4).map(|r| farey_ball(Slope::ZERO, r, 16).unwrap().len()).collect();
    let oracle = bfs_oracle(Slope::ZERO, 16);
    let want: Vec<usize> = (2..=4).map(|r| oracle.values().filter(|&&d| d <= r).count()).collect();
    assert_eq!(counts, want);
    assert!(counts.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn height_cap_is_convex() {
    // distances among low slopes do not change when the cap is doubled
    let h = 7;
    let low = all_slopes(h);
    for &a in low.iter().step_by(3) {
        let near = bfs_oracle(a, h);
        let far = bfs_oracle(a, 2 * h);
        for &b in &low {
            assert_eq!(near[&b], far[&b], "{a} {b}");
            assert_eq!(farey_distance(a, b), near[&b]);
        }
    }
}

#[test]
fn quoted_distances() {
    assert_eq!(farey_distance(s("0/1"), s("1/0")), 1);
    assert_eq!(farey_distance(s("0/1"), s("2/5")), 2);
    assert_eq!(farey_distance(s("0/1"), s("5/3")), 3);
    assert_eq!(intersection_number(s("0/1"), s("5/3"), ModelSurface::S11), 5);
}

#[test]
fn mapping_classes() {
    let t: MapClass = Generator::T.matrix();
    let sg: MapClass = Generator::S.matrix();
    assert_eq!(classify(&t), Dynamics::Reducible);
    assert_eq!(classify(&t.mul(&sg)), Dynamics::PseudoAnosov);
    assert_eq!(
        classify(&FareyMapClass::from_row_major([0, -1, 1, 0]).unwrap()),
        Dynamics::Elliptic
    );
    assert_eq!(
        classify(&FareyMapClass::from_row_major([-1, 0, 0, -1]).unwrap()),
        Dynamics::Reducible
    );
    assert!(matches!(
        FareyMapClass::from_row_major([2, 0, 0, 1]),
        Err(FareyError::BadDeterminant(_))
    ));
    let minus = FareyMapClass::from_row_major([-1, 0, 0, -1]).unwrap();
    assert_eq!(minus, FareyMapClass::identity());
    for x in all_slopes(5) {
        assert_eq!(minus.act(x).unwrap(), x);
    }

    let g = FareyMapClass::from_row_major([2, 1, 1, 1]).unwrap();
    let orbit: Vec<String> = (1..=6)
        .map(|n| g.pow(n).act(Slope::ZERO).unwrap().to_string())
        .collect();
    assert_eq!(orbit, ["1/1", "3/2", "8/5", "21/13", "55/34", "144/89"]);
    let big = g.pow(44);
    assert!(matches!(big.act(s("3/7")), Err(FareyError::Overflow(_))));
    assert_eq!(classify(&g.to_big().pow(60)), Dynamics::PseudoAnosov);
}

#[test]
fn orbit_of_anosov_grows() {
    let ball = farey_ball(Slope::ZERO, 8, 400).unwrap();
    let g = FareyMapClass::from_row_major([2, 1, 1, 1]).unwrap();
    let map = ball.vertex_map(&g, "g");
    let x = ball.id(Slope::ZERO).unwrap();
    let growth = translation_growth(ball.graph(), &map, x, 4).unwrap();
    let d: Vec<u32> = growth.iter().map(|(_, d)| d.0).collect();
    assert!(d.windows(2).all(|w| w[0] < w[1]), "{d:?}");
    for (n, h) in &growth {
        let y = g.pow(*n as u32).act(Slope::ZERO).unwrap();
        assert_eq!(h.0, 2 * farey_distance(Slope::ZERO, y));
    }
}

#[test]
fn sampled_delta_on_a_ball() {
    let ball = farey_ball(Slope::ZERO, 4, 12).unwrap();
    let q = Quadruples::Sampled {
        vertices: ball.graph().vertices().collect(),
        count: 20_000,
        seed: 1,
    };
    let d = delta_four_point(ball.graph(), &q).unwrap();
    assert_eq!(d, delta_four_point(ball.graph(), &q).unwrap());
    // the Farey graph is 1-hyperbolic in the four-point sense
    assert!(d.half_units <= num_rational::Ratio::from_integer(2));
}

/// Independent count for slopes with `|det| = D`: the torus is cut into `D`
/// squares, the sphere into `2D - 2` squares and four once-punctured bigons.
#[test]
fn region_counts_follow_the_determinant() {
    let slopes = all_slopes(6);
    for &a in &slopes {
        for &b in &slopes {
            if a == b {
                continue;
            }
            let d = a.det(b).unsigned_abs() as usize;
            let t = complementary_regions(a, b, ModelSurface::S11).unwrap();
            assert_eq!(t.cells, d);
            assert_eq!(t.count(RegionShape::Square, 1), 1);
            assert_eq!(t.euler(), 0);
            assert_eq!(t.verdict, Verdict::Filling);

            let p = complementary_regions(a, b, ModelSurface::S04).unwrap();
            assert_eq!(p.count(RegionShape::Bigon, 1), 4);
            assert_eq!(p.count(RegionShape::Square, 0), 2 * d - 2);
            assert_eq!(p.cells, 2 * d + 2);
            assert_eq!(p.vertices, intersection_number(a, b, ModelSurface::S04) as usize);
            assert_eq!(p.euler(), 2);
            assert_eq!(p.marked_points(), 4);
            assert_eq!(p.verdict, Verdict::MaximallyFilling);
        }
    }
}

#[test]
fn stratum_census_on_radius_three() {
    let ball = farey_ball(Slope::ZERO, 3, 16).unwrap();
    let slopes = ball.slopes();
    let mut pairs = 0;
    for (i, &a) in slopes.iter().enumerate() {
        for &b in &slopes[i + 1..] {
            assert_ne!(classify_pair(a, b, ModelSurface::S11), Verdict::MaximallyFilling);
            let v = classify_pair(a, b, ModelSurface::S04);
            assert!(v == Verdict::NotFilling || v == Verdict::MaximallyFilling);
            pairs += 1;
        }
    }
    assert!(pairs > 1000);
}

#[test]
fn mapping_classes_preserve_region_census() {
    let words = [
        vec![Generator::T],
        vec![Generator::S, Generator::TInv],
        vec![Generator::T, Generator::T, Generator::SInv],
    ];
    let slopes = all_slopes(4);
    for w in &words {
        let g: MapClass = Generator::word(w);
        for &a in &slopes {
            for &b in &slopes {
                if a == b {
                    continue;
                }
                let (ga, gb) = (g.act(a).unwrap(), g.act(b).unwrap());
                assert_eq!(farey_adjacent(a, b), farey_adjacent(ga, gb));
                for surface in [ModelSurface::S11, ModelSurface::S04] {
                    let before = complementary_regions(a, b, surface).unwrap();
                    let after = complementary_regions(ga, gb, surface).unwrap();
                    assert_eq!(before.regions, after.regions);
                }
            }
        }
    }
}

#[test]
fn quoted_region_examples() {
    for k in 1..=6i64 {
        let r = complementary_regions(Slope::ZERO, Slope::new(k, 1).unwrap(), ModelSurface::S11).unwrap();
        assert_eq!(r.cells, k as usize);
    }
    assert_eq!(
        complementary_regions(s("2/5"), s("2/5"), ModelSurface::S04),
        Err(FareyError::EqualSlopes)
    );
    assert_eq!("s04".parse::<ModelSurface>().unwrap(), ModelSurface::S04);
    assert!("s22".parse::<ModelSurface>().is_err());
}

proptest! {
    #[test]
    fn action_preserves_adjacency(word in proptest::collection::vec(0usize..4, 0..6), p in -30i64..30, q in 0i64..30, r in -30i64..30, t in 0i64..30) {
        prop_assume!(p.gcd(&q) == 1 && r.gcd(&t) == 1);
        let g: MapClass = Generator::word(&word.iter().map(|&i| Generator::ALL[i]).collect::<Vec<_>>());
        let (a, b) = (Slope::new(p, q).unwrap(), Slope::new(r, t).unwrap());
        let (ga, gb) = (g.act(a).unwrap(), g.act(b).unwrap());
        prop_assert_eq!(a.det(b).abs(), ga.det(gb).abs());
        prop_assert_eq!(g.inverse().act(ga).unwrap(), a);
    }

    #[test]
    fn distance_is_symmetric_and_small_for_adjacent(p in -40i64..40, q in 1i64..40) {
        prop_assume!(p.gcd(&q) == 1);
        let a = Slope::new(p, q).unwrap();
        prop_assert_eq!(farey_distance(a, Slope::ZERO), farey_distance(Slope::ZERO, a));
        for b in neighbors_within(a, 40) {
            prop_assert_eq!(farey_distance(a, b), 1);
        }
    }
}
