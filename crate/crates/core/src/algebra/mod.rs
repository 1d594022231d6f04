//! Exact scalars, bivariate polynomials, truncated power series and the
//! graded division that resolves pole-bearing vertex terms.

mod bernoulli;
mod linear_form;
mod poly;
mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub use bernoulli::{bernoulli, bernoulli_sequence, todd_series};
pub use linear_form::LinearForm;
pub use poly::BivariatePolynomial;
pub use series::{exp_series, graded_divide, TruncatedSeries};

/// Exact rational scalar. Always reduced with a positive denominator.
pub type Rational = BigRational;

/// Exponent pair `(i, j)` of `x^i y^j`.
pub type Monomial = (u32, u32);

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(a x + b y)^r` for the lattice point `v = (a, b)`.
pub fn linear_form_power(v: (i64, i64), r: u32) -> BivariatePolynomial {
    BivariatePolynomial::linear(int(v.0), int(v.1)).pow(r)
}
