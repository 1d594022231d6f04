use num_bigint::BigInt;
use num_traits::One;

use super::{hilbert_basis, resolve, vertex_cone, zeta_p, ConeValuationInput, MeromorphicTerm};
use crate::algebra::{exp_series, factorial, todd_series, BivariatePolynomial, LinearForm, Rational, TruncatedSeries};
use crate::error::{Error, Result};
use crate::lattice::{unimodular_triangulate, LatticePoint, LatticePolygon};

fn form(p: LatticePoint) -> LinearForm {
    LinearForm::new(p.x, p.y)
}

fn rational_point(v: LatticePoint) -> (Rational, Rational) {
    (Rational::from_integer(v.x.into()), Rational::from_integer(v.y.into()))
}

/// `sum over P ∩ Z^2 of e^v` through vertex cones, truncated at degree `n`.
///
/// Each unimodular cone `pos{a, b}` contributes `B(a) B(b) / (a b)` where
/// `B(t) = t / (e^t - 1)`. Rays shared by consecutive cones of a decomposition
/// are counted twice, so each is corrected by `-1 / (1 - e^t) = B(t) / t`.
pub fn brion_lattice_gen(p: &LatticePolygon, n: usize) -> Result<TruncatedSeries> {
    if p.dim() < 2 {
        return Err(Error::NotFullDim);
    }
    let mut terms = Vec::new();
    for &v in p.vertices() {
        let vertex = rational_point(v);
        let basis = hilbert_basis(&vertex_cone(p, v)?)?;
        for w in basis.windows(2) {
            let (a, b) = (form(w[0]), form(w[1]));
            let num = todd_series(&a, n + 2).mul(&todd_series(&b, n + 2));
            terms.push(MeromorphicTerm::new(vertex.clone(), num, vec![a, b]));
        }
        for &u in &basis[1..basis.len() - 1] {
            let l = form(u);
            terms.push(MeromorphicTerm::new(vertex.clone(), todd_series(&l, n + 1), vec![l]));
        }
    }
    resolve(&terms, n)
}

/// `sum over P ∩ Z^2 of e^v` by direct enumeration.
pub fn lattice_exp_sum(p: &LatticePolygon, n: usize) -> TruncatedSeries {
    p.lattice_points().iter().fold(TruncatedSeries::zero(n), |acc, &v| {
        let (a, b) = rational_point(v);
        acc.add(&exp_series((&a, &b), n))
    })
}

/// `integral over the standard triangle of e^<w, (x, y)> dw`: the degree-`k`
/// layer is `sum_{i+j=k} x^i y^j / (k + 2)!`.
pub fn standard_triangle_integral(n: usize) -> TruncatedSeries {
    TruncatedSeries::from_layers(
        (0..=n as u32)
            .map(|k| {
                let c = Rational::new(BigInt::one(), factorial(k + 2));
                BivariatePolynomial::from_terms((0..=k).map(|i| ((i, k - i), c.clone())))
            })
            .collect(),
    )
}

/// `integral over P of e^<w, (x, y)> dw` by pulling back each triangle of a
/// unimodular triangulation to the standard triangle.
pub fn exp_integral(p: &LatticePolygon, n: usize) -> TruncatedSeries {
    if p.dim() < 2 {
        return TruncatedSeries::zero(n);
    }
    let base = standard_triangle_integral(n);
    let t = unimodular_triangulate(p).expect("two-dimensional polygon");
    t.triangles().iter().fold(TruncatedSeries::zero(n), |acc, tri| {
        let (a, b) = rational_point(tri.shift);
        acc.add(&exp_series((&a, &b), n).mul(&base.compose_linear(&tri.map)))
    })
}

/// The exponential integral through vertex cones with `R = 1 / (x y)`.
pub fn exp_integral_cone(p: &LatticePolygon, n: usize) -> Result<TruncatedSeries> {
    zeta_p(p, &ConeValuationInput::exponential_integral(), n)
}
