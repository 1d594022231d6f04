use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{binomial, factorial, int, BivariatePolynomial, Rational};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::linalg;

/// Power sums `S_k = sum a^k b^(r-k)` over the points, in `i128` while that is exact.
fn power_sums_i128(points: &[LatticePoint], r: u32) -> Option<Vec<i128>> {
    let n = r as usize;
    let mut sums = vec![0i128; n + 1];
    let mut apow = vec![1i128; n + 1];
    let mut bpow = vec![1i128; n + 1];
    for p in points {
        let (a, b) = (p.x as i128, p.y as i128);
        for k in 1..=n {
            apow[k] = apow[k - 1].checked_mul(a)?;
            bpow[k] = bpow[k - 1].checked_mul(b)?;
        }
        for k in 0..=n {
            let t = apow[k].checked_mul(bpow[n - k])?;
            sums[k] = sums[k].checked_add(t)?;
        }
    }
    Some(sums)
}

fn power_sums_big(points: &[LatticePoint], r: u32) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero(); r as usize + 1];
    for p in points {
        let (a, b) = (BigInt::from(p.x), BigInt::from(p.y));
        for (k, s) in sums.iter_mut().enumerate() {
            *s += num_traits::pow(a.clone(), k) * num_traits::pow(b.clone(), r as usize - k);
        }
    }
    sums
}

/// `L^r(P) = (1/r!) sum over P ∩ Z^2 of (v . (x, y))^r`.
pub fn discrete_moment(p: &LatticePolygon, r: u32) -> BivariatePolynomial {
    let points = p.lattice_points();
    let sums: Vec<BigInt> = match power_sums_i128(&points, r) {
        Some(s) => s.into_iter().map(BigInt::from).collect(),
        None => power_sums_big(&points, r),
    };
    let rf = factorial(r);
    BivariatePolynomial::from_terms(
        sums.into_iter()
            .enumerate()
            .map(|(k, s)| ((k as u32, r - k as u32), Rational::new(s * binomial(r, k as u32), rf.clone()))),
    )
}

/// The homogeneous decomposition `L^r = L_0^r + ... + L_(r+2)^r` on one polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartTensorTable {
    pub polygon: LatticePolygon,
    pub rank: u32,
    pub coeffs: Vec<BivariatePolynomial>,
}

impl EhrhartTensorTable {
    /// `L_i^r(P)`, zero for `i > r + 2`.
    pub fn coeff(&self, i: u32) -> BivariatePolynomial {
        self.coeffs.get(i as usize).cloned().unwrap_or_else(BivariatePolynomial::zero)
    }
}

type Matrix = Arc<Vec<Vec<Rational>>>;

/// Inverse of the Vandermonde matrix `(m^i)` at nodes `m = start..start+n`, cached.
fn vandermonde_inverse(start: i64, n: usize) -> Matrix {
    static CACHE: OnceLock<Mutex<HashMap<(i64, usize), Matrix>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(inv) = cache.lock().unwrap().get(&(start, n)) {
        return inv.clone();
    }
    let aug: Vec<Vec<Rational>> = (0..n)
        .map(|m| {
            let node = int(start + m as i64);
            (0..n)
                .map(|i| num_traits::pow(node.clone(), i))
                .chain((0..n).map(|k| if k == m { Rational::one() } else { Rational::zero() }))
                .collect()
        })
        .collect();
    let (r, _) = linalg::rref(&aug);
    let inv = Arc::new(r.into_iter().map(|row| row[n..].to_vec()).collect::<Vec<_>>());
    cache.lock().unwrap().insert((start, n), inv.clone());
    inv
}

/// Coefficients `c_i` of the polynomial `sum_i c_i m^i` of degree below `n` taking
/// the given `n` values at `m = start, start + 1, ...`.
pub fn interpolate_polys(start: i64, values: &[BivariatePolynomial]) -> Vec<BivariatePolynomial> {
    let inv = vandermonde_inverse(start, values.len());
    inv.iter()
        .map(|row| row.iter().zip(values).map(|(c, v)| v.scale(c)).sum())
        .collect()
}

/// `L_0^r(P), ..., L_(r+2)^r(P)` by interpolating `m -> L^r(mP)` at `m = 0..r+2`.
pub fn ehrhart_tensor_coeffs(p: &LatticePolygon, r: u32) -> EhrhartTensorTable {
    let values: Vec<BivariatePolynomial> = (0..=r as i64 + 2).map(|m| discrete_moment(&p.dilate(m), r)).collect();
    EhrhartTensorTable {
        polygon: p.clone(),
        rank: r,
        coeffs: interpolate_polys(0, &values),
    }
}
