use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use valuon::invariant::{
    delta_map, generators_g, generators_h, group_elements, image_dim_delta_rho, invariant_basis, p23,
    p23_brute_force, reynolds, rho_map, solve_pairing, GroupId,
};
use valuon::lattice::{is_unimodular_triangle, triangle_frame, unimodular_triangulate};
use valuon::{BivariatePolynomial, LatticePoint, LatticePolygon, UnimodularMap};

fn p(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

fn hull() -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((0i64..=5, 0i64..=5), 3..8).prop_filter_map("two-dimensional", |pts| {
        let pts: Vec<LatticePoint> = pts.into_iter().map(|(x, y)| p(x, y)).collect();
        let q = LatticePolygon::from_points(&pts);
        (q.dim() == 2).then_some(q)
    })
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Lattice points in the bounding box on the inner side of every edge.
fn brute_points(q: &LatticePolygon) -> BTreeSet<LatticePoint> {
    let vs = q.vertices();
    let (x0, x1) = (vs.iter().map(|v| v.x).min().unwrap(), vs.iter().map(|v| v.x).max().unwrap());
    let (y0, y1) = (vs.iter().map(|v| v.y).min().unwrap(), vs.iter().map(|v| v.y).max().unwrap());
    let sign = cross(vs[0], vs[1], vs[2]).signum();
    let mut out = BTreeSet::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            let z = p(x, y);
            if (0..vs.len()).all(|k| cross(vs[k], vs[(k + 1) % vs.len()], z) * sign >= 0) {
                out.insert(z);
            }
        }
    }
    out
}

fn triangle_set(t: &valuon::Triangulation) -> BTreeSet<BTreeSet<LatticePoint>> {
    t.triples().iter().map(|tri| tri.iter().copied().collect()).collect()
}

fn covered_points(t: &valuon::Triangulation) -> BTreeSet<LatticePoint> {
    t.triples().iter().flat_map(|tri| tri.iter().copied()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triangulations_are_unimodular_and_cover(q in hull()) {
        let t = unimodular_triangulate(&q).unwrap();
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(t.len() as i64, q.twice_area());
        for [a, b, c] in t.triples() {
            prop_assert!(is_unimodular_triangle(a, b, c));
        }
        prop_assert_eq!(covered_points(&t), brute_points(&q));
        prop_assert_eq!(unimodular_triangulate(&q).unwrap().triples(), t.triples());
    }

    #[test]
    fn flips_preserve_region(q in hull(), seed in any::<u64>(), steps in 1usize..20) {
        let t = unimodular_triangulate(&q).unwrap();
        let f = t.random_flips(&mut ChaCha8Rng::seed_from_u64(seed), steps);
        prop_assert!(f.validate().is_ok());
        prop_assert_eq!(f.len(), t.len());
        prop_assert_eq!(covered_points(&f), covered_points(&t));
        for e in f.interior_edges() {
            if let Ok(g) = f.apply_flip(e) {
                let back = g.apply_flip(e);
                prop_assert!(back.is_err() || g.validate().is_ok());
            }
        }
    }

    #[test]
    fn pick_and_counting(q in hull()) {
        let pts = brute_points(&q);
        prop_assert_eq!(q.lattice_point_count(), pts.len());
        // Pick: 2 #P = 2A + B + 2
        prop_assert_eq!(2 * pts.len() as i64, q.twice_area() + q.boundary_count() + 2);
    }

    #[test]
    fn ehrhart_count_from_quadratic_fit(q in hull()) {
        let c: Vec<i64> = (0..=2).map(|m| q.dilate(m).lattice_point_count() as i64).collect();
        // second differences are constant: c(m) = c0 + (c1 - c0) m + (c2 - 2 c1 + c0) m (m - 1) / 2
        for m in 3..=4i64 {
            let predicted = c[0] + (c[1] - c[0]) * m + (c[2] - 2 * c[1] + c[0]) * m * (m - 1) / 2;
            prop_assert_eq!(q.dilate(m).lattice_point_count() as i64, predicted);
        }
    }

    #[test]
    fn frames_map_the_standard_triangle(q in hull()) {
        let t = unimodular_triangulate(&q).unwrap();
        for tri in t.triples() {
            for anchor in 0..3 {
                let (phi, v) = triangle_frame(&tri, anchor).unwrap();
                let image: BTreeSet<LatticePoint> =
                    [p(0, 0), p(1, 0), p(0, 1)].iter().map(|&w| phi.apply(w) + v).collect();
                prop_assert_eq!(image, tri.iter().copied().collect::<BTreeSet<_>>());
            }
        }
    }
}

#[test]
fn lattice_geometry_examples() {
    let tri = LatticePolygon::standard_triangle();
    assert_eq!(LatticePolygon::from_points(&[p(0, 0)]).dim(), 0);
    let t2 = LatticePolygon::from_points(&[p(0, 0), p(2, 0), p(1, 1), p(0, 2)]);
    assert_eq!(t2.vertices().len(), 3);
    assert_eq!(t2, tri.dilate(2));
    assert_eq!(tri.lattice_point_count(), 3);
    assert_eq!(LatticePolygon::unit_square().lattice_point_count(), 4);
    assert_eq!(tri.dilate(2).lattice_point_count(), 6);
    assert_eq!(tri.apply_map(&UnimodularMap::SWAP), tri);
    assert_eq!(
        tri.translate(p(1, 1)),
        LatticePolygon::from_points(&[p(1, 1), p(2, 1), p(1, 2)])
    );
    assert!(is_unimodular_triangle(p(0, 0), p(1, 2), p(2, 3)));
    assert!(!is_unimodular_triangle(p(0, 0), p(2, 0), p(0, 1)));
    assert_eq!(unimodular_triangulate(&tri).unwrap().len(), 1);
    assert_eq!(unimodular_triangulate(&LatticePolygon::unit_square()).unwrap().len(), 2);
    assert_eq!(unimodular_triangulate(&tri.dilate(2)).unwrap().len(), 4);
    assert_eq!(
        triangle_frame(&[p(0, 0), p(1, 0), p(0, 1)], 0),
        Some((UnimodularMap::IDENTITY, p(0, 0)))
    );
    assert_eq!(
        triangle_frame(&[p(1, 1), p(2, 1), p(1, 2)], 0),
        Some((UnimodularMap::IDENTITY, p(1, 1)))
    );
}

#[test]
fn flip_of_the_square_diagonal() {
    let sq = LatticePolygon::unit_square();
    let t = unimodular_triangulate(&sq).unwrap();
    let e = t.interior_edges();
    assert_eq!(e.len(), 1);
    let f = t.apply_flip(e[0]).unwrap();
    let diagonal = f.interior_edges()[0];
    let ends: BTreeSet<_> = [diagonal.0, diagonal.1].into_iter().collect();
    let old: BTreeSet<_> = [e[0].0, e[0].1].into_iter().collect();
    assert_ne!(ends, old);
    assert_eq!(ends.union(&old).count(), 4);
    assert_eq!(triangle_set(&f.apply_flip(diagonal).unwrap()), triangle_set(&t));
    let one = unimodular_triangulate(&LatticePolygon::standard_triangle()).unwrap();
    assert!(one.apply_flip((p(0, 0), p(1, 0))).is_err());
}

fn monomials(r: u32) -> impl Iterator<Item = BivariatePolynomial> {
    (0..=r).map(move |a| BivariatePolynomial::monomial(a, r - a, valuon::algebra::int(1)))
}

#[test]
fn reynolds_is_an_idempotent_projection() {
    for id in [GroupId::G, GroupId::D, GroupId::H] {
        let g = group_elements(id);
        for r in 0..=14 {
            for m in monomials(r) {
                let once = reynolds(&m, id);
                assert_eq!(reynolds(&once, id), once);
                for phi in &g.elements {
                    assert_eq!(once.compose_linear(phi), once);
                }
            }
        }
    }
}

#[test]
fn invariant_dimensions_follow_partitions() {
    for r in 0..=20 {
        assert_eq!(invariant_basis(GroupId::G, r).len() as u32, p23(r), "degree {r}");
    }
    for r in 0..=200 {
        assert_eq!(p23(r), p23_brute_force(r));
    }
    assert_eq!([p23(1), p23(9), p23(12)], [0, 2, 3]);
}

#[test]
fn invariant_examples() {
    let (p2, p3) = generators_g();
    let (q, qt) = generators_h();
    assert_eq!(&qt - &q, p2);
    let one = valuon::algebra::int(1);
    assert_eq!(p3.eval(&one, &one), valuon::algebra::int(-1));
    assert!(reynolds(&BivariatePolynomial::x(), GroupId::G).is_zero());
    let r = reynolds(&BivariatePolynomial::monomial(2, 0, one.clone()), GroupId::G);
    assert_eq!(r.scale(&(p2.coeff(2, 0) / r.coeff(2, 0))), p2);
    assert_eq!(group_elements(GroupId::G).order(), 6);
    assert_eq!(group_elements(GroupId::D).order(), 8);
    assert_eq!(group_elements(GroupId::H).order(), 4);
    let y = BivariatePolynomial::y();
    assert!(delta_map(&(&BivariatePolynomial::x().pow(2) + &y.pow(2))).is_zero());
    assert_eq!(delta_map(&y), y);
    let xyq = &q * &qt;
    assert_eq!(delta_map(&xyq), xyq);
    // (x + y) p3 = (q~ + 2q)(2q~ - 5q) / 2
    let two = valuon::algebra::int(2);
    let expected = (&(&qt + &q.scale(&two)) * &(&qt.scale(&two) - &q.scale(&valuon::algebra::int(5))))
        .scale(&valuon::algebra::rat(1, 2));
    assert_eq!(rho_map(&p3, &BivariatePolynomial::zero()), expected);
    assert_eq!(rho_map(&BivariatePolynomial::zero(), &p2.pow(2)), p2.pow(2));
    assert_eq!([3, 9, 13].map(|r| image_dim_delta_rho(r).unwrap()), [1, 3, 4]);
}

#[test]
fn pairing_solutions_are_unique_and_verified() {
    let (_, p3) = generators_g();
    let h = solve_pairing(&p3, 3).unwrap().expect("a pairing exists for p3");
    assert!(delta_map(&rho_map(&p3, &h)).is_zero());
    assert_eq!(solve_pairing(&BivariatePolynomial::zero(), 3).unwrap(), Some(BivariatePolynomial::zero()));
    assert!(solve_pairing(&BivariatePolynomial::x().pow(3), 3).is_err());
}
