use maxspace::geom2d::predicates::{circumcenter, incircle};
use maxspace::geom2d::voronoi::nearest_sites;
use maxspace::geom2d::{convex_hull, delaunay, nearest_site, voronoi, ConvexPolygon, Point2};
use maxspace::sampling::SeededRng;
use proptest::prelude::*;
use rand::Rng;

fn cloud(seed: u64, n: usize) -> Vec<Point2> {
    let mut rng = SeededRng::new(seed, 0);
    (0..n).map(|_| Point2::new(rng.random(), rng.random())).collect()
}

fn lattice_cloud(seed: u64, n: usize) -> Vec<Point2> {
    // many exact ties: cocircular and collinear quadruples everywhere
    let mut rng = SeededRng::new(seed, 1);
    (0..n)
        .map(|_| Point2::new(rng.random_range(0..8) as f64, rng.random_range(0..8) as f64))
        .collect()
}

fn points_strategy(max: usize) -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 3..max)
        .prop_map(|v| v.into_iter().map(Point2::from).collect())
}

#[test]
fn delaunay_is_empty_circle_against_brute_force() {
    for seed in 0..40 {
        let n = 20 + 4 * seed as usize;
        let pts = if seed % 4 == 3 { lattice_cloud(seed, n) } else { cloud(seed, n) };
        let tri = delaunay(&pts).unwrap();
        let sites = tri.sites();
        for k in 0..tri.triangles().len() {
            let [a, b, c] = tri.triangle_points(k);
            for (j, &p) in sites.iter().enumerate() {
                if tri.triangles()[k].contains(&j) {
                    continue;
                }
                assert!(incircle(a, b, c, p) <= 0.0, "seed {seed}: site {j} inside triangle {k}");
            }
        }
        // Euler's relation for a triangulated point set
        let h = tri.hull_edges().len();
        assert_eq!(tri.triangles().len(), 2 * sites.len() - h - 2, "seed {seed}");
    }
}

#[test]
fn delaunay_covers_the_hull() {
    for seed in 0..10 {
        let pts = cloud(100 + seed, 150);
        let tri = delaunay(&pts).unwrap();
        let area: f64 = (0..tri.triangles().len())
            .map(|k| {
                let [a, b, c] = tri.triangle_points(k);
                0.5 * (b - a).cross(c - a)
            })
            .sum();
        let hull = convex_hull(&pts).unwrap().area();
        assert!((area - hull).abs() <= 1e-12 * hull);
    }
}

#[test]
fn voronoi_vertices_are_equidistant() {
    for seed in 0..20 {
        let pts = cloud(200 + seed, 120);
        let tri = delaunay(&pts).unwrap();
        let vd = voronoi(&tri);
        for (v, ids) in vd.vertices().iter().zip(vd.vertex_sites()) {
            let d: Vec<f64> = ids.iter().map(|&i| v.dist(vd.sites()[i])).collect();
            let spread = d.iter().fold(0.0f64, |m, &x| m.max((x - d[0]).abs()));
            assert!(spread <= 1e-9, "seed {seed}: spread {spread}");
            // no site is strictly closer than the defining three
            let near = vd.sites().iter().map(|s| s.dist(*v)).fold(f64::INFINITY, f64::min);
            assert!(near >= d[0] - 1e-9);
        }
    }
}

#[test]
fn nearest_site_matches_linear_scan() {
    let pts = cloud(7, 300);
    let tri = delaunay(&pts).unwrap();
    let vd = voronoi(&tri);
    let mut rng = SeededRng::new(7, 9);
    for _ in 0..2000 {
        let q = Point2::new(rng.random_range(-0.5..1.5), rng.random_range(-0.5..1.5));
        let best = vd
            .sites()
            .iter()
            .map(|s| s.dist(q))
            .fold(f64::INFINITY, f64::min);
        let got = nearest_site(&vd, q);
        assert!(!got.is_empty());
        for &i in &got {
            assert!((vd.sites()[i].dist(q) - best).abs() <= 1e-12);
        }
        assert_eq!(got, nearest_sites(vd.sites(), q));
    }
}

#[test]
fn circumcenter_of_right_triangle() {
    let c = circumcenter(Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), Point2::new(0.0, 2.0));
    assert!((c.x - 1.0).abs() < 1e-15 && (c.y - 1.0).abs() < 1e-15);
}

fn same_vertices(a: &ConvexPolygon, b: &[Point2], tol: f64) -> bool {
    a.len() == b.len()
        && b.iter()
            .all(|p| a.vertices().iter().any(|q| q.dist(*p) <= tol))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hull_is_idempotent(pts in points_strategy(60)) {
        prop_assume!(convex_hull(&pts).is_ok());
        let h = convex_hull(&pts).unwrap();
        let again = convex_hull(h.vertices()).unwrap();
        prop_assert_eq!(h.vertices(), again.vertices());
    }

    #[test]
    fn hull_is_similarity_equivariant(
        pts in points_strategy(60),
        theta in 0.0..std::f64::consts::TAU,
        scale in 0.01..100.0f64,
        tx in -50.0..50.0f64,
        ty in -50.0..50.0f64,
    ) {
        prop_assume!(convex_hull(&pts).is_ok());
        let t = |p: Point2| {
            let (s, c) = theta.sin_cos();
            Point2::new(c * p.x - s * p.y, s * p.x + c * p.y) * scale + Point2::new(tx, ty)
        };
        let h = convex_hull(&pts).unwrap();
        let moved: Vec<Point2> = pts.iter().map(|&p| t(p)).collect();
        let hm = convex_hull(&moved).unwrap();
        let expected: Vec<Point2> = h.vertices().iter().map(|&p| t(p)).collect();
        let tol = 1e-9 * (1.0 + scale * 20.0);
        prop_assert!(same_vertices(&hm, &expected, tol));
        prop_assert!((hm.area() - scale * scale * h.area()).abs() <= 1e-9 * hm.area());
    }

    #[test]
    fn hull_contains_every_point(pts in points_strategy(80)) {
        prop_assume!(convex_hull(&pts).is_ok());
        let h = convex_hull(&pts).unwrap();
        for p in &pts {
            prop_assert!(h.signed_boundary_distance(*p) >= -1e-12);
        }
    }

    #[test]
    fn boundary_distance_is_one_lipschitz(
        pts in points_strategy(30),
        p in (-15.0..15.0f64, -15.0..15.0f64),
        q in (-15.0..15.0f64, -15.0..15.0f64),
    ) {
        prop_assume!(convex_hull(&pts).is_ok());
        let h = convex_hull(&pts).unwrap();
        let (p, q) = (Point2::from(p), Point2::from(q));
        let (dp, _) = h.boundary_distance(p);
        let (dq, _) = h.boundary_distance(q);
        prop_assert!((dp - dq).abs() <= p.dist(q) + 1e-12);
        for v in h.vertices() {
            prop_assert!(h.boundary_distance(*v).0 <= 1e-12);
        }
    }
}
