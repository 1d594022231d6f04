use std::fmt;

use num_traits::{One, Zero};

use super::{factorial, BivariatePolynomial, LinearForm, Rational};
use crate::error::{Error, Result};
use crate::lattice::UnimodularMap;

/// Bivariate power series truncated after total degree `truncation`.
///
/// Stored as homogeneous layers: `layers[d]` is the degree-`d` summand.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    layers: Vec<BivariatePolynomial>,
}

impl TruncatedSeries {
    pub fn zero(truncation: usize) -> Self {
        Self {
            layers: vec![BivariatePolynomial::zero(); truncation + 1],
        }
    }

    /// Cuts a polynomial into homogeneous layers, dropping degrees above `truncation`.
    pub fn from_poly(p: &BivariatePolynomial, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        for (&(i, j), c) in p.terms() {
            let d = (i + j) as usize;
            if d <= truncation {
                s.layers[d].add_term((i, j), c.clone());
            }
        }
        s
    }

    /// Builds a series from layers; panics if a layer is not homogeneous of its index.
    pub fn from_layers(layers: Vec<BivariatePolynomial>) -> Self {
        assert!(!layers.is_empty(), "a truncated series has at least the constant layer");
        for (d, l) in layers.iter().enumerate() {
            assert!(l.is_homogeneous_of(d as u32), "layer {d} is not homogeneous");
        }
        Self { layers }
    }

    pub fn truncation(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, d: usize) -> &BivariatePolynomial {
        &self.layers[d]
    }

    pub fn layers(&self) -> &[BivariatePolynomial] {
        &self.layers
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(|l| l.is_zero())
    }

    pub fn to_poly(&self) -> BivariatePolynomial {
        self.layers.iter().cloned().sum()
    }

    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.truncation(), "cannot extend a truncated series");
        Self {
            layers: self.layers[..=n].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        Self {
            layers: (0..=n).map(|d| &self.layers[d] + &other.layers[d]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        Self {
            layers: (0..=n).map(|d| &self.layers[d] - &other.layers[d]).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            layers: self.layers.iter().map(|l| l.scale(c)).collect(),
        }
    }

    /// Truncated product; the result carries the smaller truncation.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        let mut out = Self::zero(n);
        for (a, la) in self.layers.iter().enumerate().take(n + 1) {
            if la.is_zero() {
                continue;
            }
            for (b, lb) in other.layers.iter().enumerate().take(n + 1 - a) {
                if lb.is_zero() {
                    continue;
                }
                out.layers[a + b] += &(la * lb);
            }
        }
        out
    }

    /// Multiplies by a homogeneous polynomial of degree `deg`, keeping the truncation.
    pub fn mul_homogeneous(&self, p: &BivariatePolynomial, deg: usize) -> Self {
        let n = self.truncation();
        let mut out = Self::zero(n);
        if deg > n {
            return out;
        }
        for a in 0..=(n - deg) {
            out.layers[a + deg] = &self.layers[a] * p;
        }
        out
    }

    pub fn compose_linear(&self, phi: &UnimodularMap) -> Self {
        Self {
            layers: self.layers.iter().map(|l| l.compose_linear(phi)).collect(),
        }
    }

    /// `S(m x, m y)`.
    pub fn dilate_arguments(&self, m: &Rational) -> Self {
        Self {
            layers: self
                .layers
                .iter()
                .enumerate()
                .map(|(d, l)| l.scale(&num_traits::pow(m.clone(), d)))
                .collect(),
        }
    }

    /// Substitutes the linear form `l` into the univariate series `sum c_k t^k`.
    pub fn univariate_in_form(coeffs: &[Rational], l: &LinearForm, truncation: usize) -> Self {
        let base = l.to_poly();
        let mut out = Self::zero(truncation);
        let mut power = BivariatePolynomial::one();
        for k in 0..=truncation {
            if let Some(c) = coeffs.get(k) {
                out.layers[k] = power.scale(c);
            }
            power = &power * &base;
        }
        out
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {})", self.to_poly(), self.truncation() + 1)
    }
}

/// `e^{<v,(x,y)>}` truncated at total degree `n`, for a rational point `v`.
pub fn exp_series(v: (&Rational, &Rational), n: usize) -> TruncatedSeries {
    let base = BivariatePolynomial::linear(v.0.clone(), v.1.clone());
    let mut layers = Vec::with_capacity(n + 1);
    let mut power = BivariatePolynomial::one();
    for k in 0..=n {
        let inv = Rational::new(One::one(), factorial(k as u32));
        layers.push(power.scale(&inv));
        power = &power * &base;
    }
    TruncatedSeries { layers }
}

/// Divides a truncated series by the product of linear forms.
///
/// Because the denominator `D` is homogeneous of degree `k = denoms.len()`, the
/// quotient layer `S_m` is determined by the single equation `S_m * D = N_{m+k}`,
/// a triangular system in the coefficients of `S_m`. Layers of the numerator below
/// degree `k` must vanish. The quotient has truncation `numerator.truncation() - k`.
pub fn graded_divide(numerator: &TruncatedSeries, denoms: &[LinearForm]) -> Result<TruncatedSeries> {
    let k = denoms.len();
    let n = numerator.truncation();
    assert!(n >= k, "numerator truncation {n} is below the denominator degree {k}");
    let mut d = BivariatePolynomial::one();
    for l in denoms {
        assert!(!l.is_zero(), "zero linear form in denominator");
        d = &d * &l.to_poly();
    }
    for m in 0..k {
        if !numerator.layers[m].is_zero() {
            return Err(Error::NotDivisible { degree: m });
        }
    }
    let dvec = d.homogeneous_coeff_vector(k as u32);
    let layers = (0..=(n - k))
        .map(|m| {
            divide_homogeneous(&numerator.layers[m + k], m + k, &dvec)
                .map(|q| BivariatePolynomial::from_homogeneous_coeff_vector(m as u32, &q))
                .ok_or(Error::NotDivisible { degree: m + k })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries { layers })
}

/// Exact quotient of a homogeneous polynomial of degree `deg` by a homogeneous
/// divisor given as its coefficient vector (decreasing powers of `x`).
fn divide_homogeneous(num: &BivariatePolynomial, deg: usize, dvec: &[Rational]) -> Option<Vec<Rational>> {
    let k = dvec.len() - 1;
    let a = num.homogeneous_coeff_vector(deg as u32);
    let qlen = deg - k + 1;
    let t = dvec.iter().position(|c| !c.is_zero()).expect("nonzero divisor");
    let lead = &dvec[t];
    let mut q = vec![Rational::zero(); qlen];
    for j in 0..qlen {
        let mut acc = a[j + t].clone();
        for (i, qi) in q.iter().enumerate().take(j) {
            let idx = j + t - i;
            if idx <= k {
                acc -= qi * &dvec[idx];
            }
        }
        q[j] = acc / lead;
    }
    // the triangular solve used only part of the equations; check the remainder
    let mut prod = vec![Rational::zero(); deg + 1];
    for (i, qi) in q.iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        for (l, dl) in dvec.iter().enumerate() {
            prod[i + l] += qi * dl;
        }
    }
    (prod == a).then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn x() -> BivariatePolynomial {
        BivariatePolynomial::x()
    }
    fn y() -> BivariatePolynomial {
        BivariatePolynomial::y()
    }

    #[test]
    fn divide_xy_by_x_and_y() {
        let num = TruncatedSeries::from_poly(&(&x() * &y()), 2);
        let q = graded_divide(&num, &[LinearForm::X, LinearForm::Y]).unwrap();
        assert_eq!(q.truncation(), 0);
        assert_eq!(q.to_poly(), BivariatePolynomial::one());
    }

    #[test]
    fn divide_exp_minus_one_by_x() {
        let e = exp_series((&int(1), &int(0)), 6);
        let num = e.sub(&TruncatedSeries::from_poly(&BivariatePolynomial::one(), 6));
        let q = graded_divide(&num, &[LinearForm::X]).unwrap();
        assert_eq!(q.truncation(), 5);
        for m in 0..=5u32 {
            let expected = BivariatePolynomial::monomial(m, 0, Rational::new(1.into(), factorial(m + 1)));
            assert_eq!(q.layer(m as usize), &expected);
        }
    }

    #[test]
    fn non_divisible_numerator_is_rejected() {
        let num = TruncatedSeries::from_poly(&(&x() + &y()), 3);
        assert_eq!(graded_divide(&num, &[LinearForm::X]), Err(Error::NotDivisible { degree: 1 }));
        let num = TruncatedSeries::from_poly(&BivariatePolynomial::one(), 3);
        assert_eq!(graded_divide(&num, &[LinearForm::X]), Err(Error::NotDivisible { degree: 0 }));
    }

    #[test]
    fn repeated_and_degenerate_forms() {
        // (x - y)^2 * y * (1 + x) / {x - y, x - y, y}
        let s = TruncatedSeries::from_poly(&(&BivariatePolynomial::one() + &x()), 4);
        let l = LinearForm::new(1, -1);
        let d = &(&l.to_poly() * &l.to_poly()) * &y();
        let num = s.mul_homogeneous(&d, 3);
        let q = graded_divide(&num, &[l, l, LinearForm::Y]).unwrap();
        assert_eq!(q, s.truncate(1));
    }

    #[test]
    fn exp_series_small_cases() {
        let e = exp_series((&int(1), &int(1)), 2);
        let s = &x() + &y();
        let expected = &(&BivariatePolynomial::one() + &s) + &s.pow(2).scale(&rat(1, 2));
        assert_eq!(e.to_poly(), expected);
        assert_eq!(exp_series((&int(0), &int(0)), 5).to_poly(), BivariatePolynomial::one());
    }
}
