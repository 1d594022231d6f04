use std::collections::BTreeSet;

use proptest::prelude::*;

use valuon::algebra::{exp_series, factorial, int, rat, BivariatePolynomial, Rational, TruncatedSeries};
use valuon::cone::{
    balanced_decomposition, brion_lattice_gen, exp_integral, exp_integral_cone, hilbert_basis,
    hilbert_decomposition, primitive, vertex_cone, zeta0, zeta_p, ConeValuationInput, RationalCone,
};
use valuon::invariant::{p23, pairing_subspace};
use valuon::lattice::unimodular_triangulate;
use valuon::linalg;
use valuon::valuation::{probe_set, z_f, TwoHomogeneousLift, DEFAULT_PROBE_SEED};
use valuon::{LatticePoint, LatticePolygon, UnimodularMap};

fn p(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

fn cross(a: LatticePoint, b: LatticePoint) -> i64 {
    a.x * b.y - a.y * b.x
}

fn hull() -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((0i64..=4, 0i64..=4), 3..6).prop_filter_map("two-dimensional", |pts| {
        let pts: Vec<LatticePoint> = pts.into_iter().map(|(x, y)| p(x, y)).collect();
        let q = LatticePolygon::from_points(&pts);
        (q.dim() == 2).then_some(q)
    })
}

fn unimodular() -> impl Strategy<Value = UnimodularMap> {
    prop::collection::vec(0usize..5, 1..4).prop_map(|steps| {
        let gens = [[[1, 1], [0, 1]], [[1, 0], [-1, 1]], [[0, 1], [1, 0]], [[-1, 0], [0, 1]], [[0, -1], [1, 0]]];
        steps
            .into_iter()
            .fold(UnimodularMap::IDENTITY, |acc, k| acc.compose(&UnimodularMap::new(gens[k]).unwrap()))
    })
}

/// `(u, v)` with `det(u, v) > 0`.
fn pointed_rays() -> impl Strategy<Value = (LatticePoint, LatticePoint)> {
    ((-5i64..=5, -5i64..=5), (-5i64..=5, -5i64..=5)).prop_filter_map("independent", |((a, b), (c, d))| {
        let (u, v) = (p(a, b), p(c, d));
        match cross(u, v).signum() {
            1 => Some((u, v)),
            -1 => Some((v, u)),
            _ => None,
        }
    })
}

/// Nonzero lattice points of `pos{u, v}` not expressible as a sum of two such points.
fn irreducible(u: LatticePoint, v: LatticePoint) -> BTreeSet<LatticePoint> {
    let inside = |z: LatticePoint| cross(u, z) >= 0 && cross(z, v) >= 0;
    let bound = 10;
    let pts: Vec<LatticePoint> = (-bound..=bound)
        .flat_map(|x| (-bound..=bound).map(move |y| p(x, y)))
        .filter(|&z| z != p(0, 0) && inside(z))
        .collect();
    // every irreducible element lies in the half-open parallelogram spanned by u and v
    let in_parallelogram = |z: LatticePoint| cross(u, z) <= cross(u, v) && cross(z, v) <= cross(u, v);
    pts.iter()
        .copied()
        .filter(|&z| in_parallelogram(z))
        .filter(|&z| !pts.iter().any(|&w| w != z && inside(z - w) && z - w != p(0, 0)))
        .collect()
}

fn zeta_input(d: i32) -> ConeValuationInput {
    ConeValuationInput::from_generator(&pairing_subspace(d as u32 + 1).unwrap()[0], d).unwrap()
}

fn enumerate_exp(q: &LatticePolygon, n: usize) -> TruncatedSeries {
    q.lattice_points()
        .into_iter()
        .fold(TruncatedSeries::zero(n), |acc, v| acc.add(&exp_series((&int(v.x), &int(v.y)), n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hilbert_basis_is_the_set_of_irreducibles((u, v) in pointed_rays()) {
        let k = RationalCone::pointed(u, v).unwrap();
        let basis: BTreeSet<LatticePoint> = hilbert_basis(&k).unwrap().into_iter().collect();
        prop_assert_eq!(basis, irreducible(primitive(u).unwrap(), primitive(v).unwrap()));
    }

    #[test]
    fn hilbert_decomposition_is_a_unimodular_fan((u, v) in pointed_rays(), samples in prop::collection::vec((-30i64..=30, -30i64..=30), 40)) {
        let k = RationalCone::pointed(u, v).unwrap();
        let dec = hilbert_decomposition(&k).unwrap();
        prop_assert!(dec.iter().all(|c| c.det().map(i64::abs) == Some(1)));
        for w in dec.windows(2) {
            prop_assert_eq!(w[0].rays()[1], w[1].rays()[0]);
            prop_assert!(w[0].rays()[0] != w[1].rays()[1]);
        }
        for (x, y) in samples {
            let z = p(x, y);
            prop_assert_eq!(k.contains(z), dec.iter().any(|c| c.contains(z)));
        }
    }

    #[test]
    fn balanced_halves_cover((u, v) in pointed_rays(), samples in prop::collection::vec((-20i64..=20, -20i64..=20), 30)) {
        for c in hilbert_decomposition(&RationalCone::pointed(u, v).unwrap()).unwrap() {
            let (a, b) = balanced_decomposition(&c).unwrap();
            prop_assert!(a.is_unimodular() && b.is_unimodular());
            let mid = c.rays()[0] + c.rays()[1];
            prop_assert_eq!(a.rays(), &[c.rays()[0], mid][..]);
            prop_assert_eq!(b.rays(), &[mid, c.rays()[1]][..]);
            for &(x, y) in &samples {
                let z = p(x, y);
                prop_assert_eq!(c.contains(z), a.contains(z) || b.contains(z));
                prop_assert_eq!(a.contains(z) && b.contains(z), z != p(0, 0) && cross(mid, z) == 0 && c.contains(z) || z == p(0, 0));
            }
        }
    }

    #[test]
    fn brion_matches_enumeration(q in hull()) {
        prop_assert_eq!(brion_lattice_gen(&q, 5).unwrap(), enumerate_exp(&q, 5));
    }

    #[test]
    fn exp_integral_routes_agree(q in hull()) {
        let s = exp_integral(&q, 5);
        prop_assert_eq!(&exp_integral_cone(&q, 5).unwrap(), &s);
        prop_assert_eq!(s.layer(0), &BivariatePolynomial::constant(rat(q.twice_area(), 2)));
    }

    #[test]
    fn zeta_is_translatively_exponential(q in hull(), vx in -3i64..=3, vy in -3i64..=3) {
        let input = zeta_input(2);
        let base = zeta_p(&q, &input, 5).unwrap();
        let e = exp_series((&int(vx), &int(vy)), 5);
        prop_assert_eq!(zeta_p(&q.translate(p(vx, vy)), &input, 5).unwrap(), e.mul(&base));
    }

    #[test]
    fn zeta_is_equivariant(q in hull(), phi in unimodular()) {
        let input = zeta_input(2);
        let base = zeta_p(&q, &input, 5).unwrap();
        prop_assert_eq!(zeta_p(&q.apply_map(&phi), &input, 5).unwrap(), base.compose_linear(&phi));
    }

    #[test]
    fn zeta_is_dilative(q in hull(), m in 1i64..=3) {
        for d in [2, 4] {
            let input = zeta_input(d);
            let n = d as usize + 2;
            let base = zeta_p(&q, &input, n).unwrap();
            let expected = base.dilate_arguments(&int(m)).scale(&rat(1, m.pow(d as u32)));
            prop_assert_eq!(zeta_p(&q.dilate(m), &input, n).unwrap(), expected);
        }
    }

    #[test]
    fn zeta_sums_over_triangles(q in hull()) {
        let input = zeta_input(2);
        let t = unimodular_triangulate(&q).unwrap();
        let sum = t.triples().iter().fold(TruncatedSeries::zero(5), |acc, tri| {
            acc.add(&zeta_p(&LatticePolygon::from_points(tri), &input, 5).unwrap())
        });
        prop_assert_eq!(zeta_p(&q, &input, 5).unwrap(), sum);
    }

    #[test]
    fn zeta_layers_are_the_lift(q in hull()) {
        for d in [2, 4] {
            let f = &pairing_subspace(d as u32 + 1).unwrap()[0];
            let lift = TwoHomogeneousLift::new(f, d as u32 + 1).unwrap();
            let s = zeta_p(&q, &zeta_input(d), d as usize + 2).unwrap();
            prop_assert_eq!(s.layer(d as usize + 1), &z_f(&q, f, d as u32 + 1).unwrap());
            prop_assert_eq!(s.layer(d as usize + 2), &lift.eval(&q).unwrap());
            prop_assert!((0..=d as usize).all(|k| s.layer(k).is_zero()));
        }
    }
}

#[test]
fn functional_equations_by_clearing_denominators() {
    let (x, y) = (BivariatePolynomial::x(), BivariatePolynomial::y());
    let s = &x + &y;
    for d in [2, 4, 6] {
        for f in pairing_subspace(d as u32 + 1).unwrap() {
            let n = ConeValuationInput::from_generator(&f, d).unwrap().numerator().clone();
            // N/(xy) = N(x, x+y)/(x(x+y)) + N(x+y, y)/((x+y)y)
            let lhs = &s * &n;
            let rhs = &(&y * &n.substitute(&x, &s)) + &(&x * &n.substitute(&s, &y));
            assert_eq!(lhs, rhs, "refinement, d = {d}");
            // N(x, y)/(xy) + N(-x, y)/(-xy) = 0
            assert_eq!(n.substitute(&-&x, &y), n, "half-plane, d = {d}");
        }
    }
}

#[test]
fn vertex_cone_examples() {
    let tri = LatticePolygon::standard_triangle();
    let k = vertex_cone(&tri, p(1, 0)).unwrap();
    let phi1 = UnimodularMap::new([[-1, -1], [1, 0]]).unwrap();
    let image: BTreeSet<_> = [p(1, 0), p(0, 1)].map(|w| phi1.apply(w)).into_iter().collect();
    assert_eq!(k.rays().iter().copied().collect::<BTreeSet<_>>(), image);
    assert_eq!(vertex_cone(&tri, p(0, 0)).unwrap(), RationalCone::pointed(p(1, 0), p(0, 1)).unwrap());
    let sq = LatticePolygon::unit_square();
    assert_eq!(vertex_cone(&sq, p(1, 1)).unwrap(), RationalCone::pointed(p(-1, 0), p(0, -1)).unwrap());
    assert_eq!([p(2, 4), p(0, -3), p(3, 5)].map(|v| primitive(v).unwrap()), [p(1, 2), p(0, -1), p(3, 5)]);
    let k = RationalCone::pointed(p(1, 0), p(1, 2)).unwrap();
    let dec = hilbert_decomposition(&k).unwrap();
    assert_eq!(
        dec,
        vec![
            RationalCone::pointed(p(1, 0), p(1, 1)).unwrap(),
            RationalCone::pointed(p(1, 1), p(1, 2)).unwrap()
        ]
    );
    let k = RationalCone::pointed(p(1, 0), p(2, 3)).unwrap();
    assert_eq!(hilbert_basis(&k).unwrap(), vec![p(1, 0), p(1, 1), p(2, 3)]);
}

#[test]
fn zeta0_vanishes_on_cones_with_lines() {
    let input = zeta_input(2);
    for k in [
        RationalCone::half_plane(p(1, 2)).unwrap(),
        RationalCone::line(p(1, 0)).unwrap(),
        RationalCone::plane(),
        RationalCone::ray(p(0, 1)).unwrap(),
    ] {
        assert!(zeta0(&k, &input, 4).unwrap().is_empty(), "{k:?}");
    }
    let q = ConeValuationInput::new(BivariatePolynomial::x().pow(2), 0);
    assert!(matches!(q, Err(valuon::Error::AsymmetricR)));
}

#[test]
fn zeta_vanishes_on_points_and_segments() {
    let input = zeta_input(2);
    for q in [
        LatticePolygon::from_points(&[p(2, 1)]),
        LatticePolygon::from_points(&[p(0, 0), p(3, 1)]),
    ] {
        assert!(zeta_p(&q, &input, 6).unwrap().is_zero());
    }
}

#[test]
fn exponential_examples() {
    let tri = LatticePolygon::standard_triangle();
    let x = BivariatePolynomial::x();
    let y = BivariatePolynomial::y();
    let expected = &(&BivariatePolynomial::constant(int(3)) + &(&x + &y)) + &(&x.pow(2) + &y.pow(2)).scale(&rat(1, 2));
    assert_eq!(brion_lattice_gen(&tri, 2).unwrap(), TruncatedSeries::from_poly(&expected, 2));
    let sq = LatticePolygon::unit_square();
    let expected = &BivariatePolynomial::constant(int(4)) + &(&x + &y).scale(&int(2));
    assert_eq!(brion_lattice_gen(&sq, 1).unwrap(), TruncatedSeries::from_poly(&expected, 1));
    let n = 6u32;
    let square_integral = BivariatePolynomial::from_terms((0..=n).flat_map(|i| {
        (0..=n - i).map(move |j| ((i, j), Rational::new(1.into(), factorial(i + 1) * factorial(j + 1))))
    }));
    assert_eq!(exp_integral(&sq, n as usize), TruncatedSeries::from_poly(&square_integral, n as usize));
    assert_eq!(exp_integral(&tri, 3).layer(0), &BivariatePolynomial::constant(rat(1, 2)));
}

#[test]
fn zeta_layer_ranks() {
    // degree-(d+i) layers across probes span a space of dimension p23(d/2 + 1), i = 2, 3, 4
    let probes = probe_set(DEFAULT_PROBE_SEED);
    for d in [2i32, 4, 6] {
        let basis = pairing_subspace(d as u32 + 1).unwrap();
        let values: Vec<Vec<TruncatedSeries>> = basis
            .iter()
            .map(|f| {
                let input = ConeValuationInput::from_generator(f, d).unwrap();
                probes.iter().map(|q| zeta_p(q, &input, d as usize + 4).unwrap()).collect()
            })
            .collect();
        for i in 2..=4 {
            let r = (d + i) as u32;
            let rows: Vec<Vec<Rational>> = values
                .iter()
                .map(|per| per.iter().flat_map(|s| s.layer(r as usize).homogeneous_coeff_vector(r)).collect())
                .collect();
            assert_eq!(linalg::rank(&rows) as u32, p23(d as u32 / 2 + 1), "d = {d}, i = {i}");
        }
    }
}
