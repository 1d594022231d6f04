use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, factorial, LinearForm, Rational, TruncatedSeries};

static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// Bernoulli number `B_l` with `B_1 = -1/2`, the coefficients of `t / (e^t - 1)`.
///
/// Values are memoized in a process-wide table; concurrent extension is idempotent.
pub fn bernoulli(l: usize) -> Rational {
    let table = TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]));
    if let Some(v) = table.read().expect("bernoulli table poisoned").get(l) {
        return v.clone();
    }
    let mut values = table.write().expect("bernoulli table poisoned");
    while values.len() <= l {
        let n = values.len();
        // sum_{j <= n} C(n+1, j) B_j = 0
        let acc = values
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, b)| {
                acc + b * Rational::from_integer(binomial(n as u32 + 1, j as u32))
            });
        values.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
    values[l].clone()
}

pub fn bernoulli_sequence(n: usize) -> Vec<Rational> {
    (0..=n).map(bernoulli).collect()
}

/// `l / (e^l - 1)` for the linear form `l`, truncated at degree `n`.
pub fn todd_series(l: &LinearForm, n: usize) -> TruncatedSeries {
    let coeffs: Vec<Rational> = (0..=n)
        .map(|k| bernoulli(k) / Rational::from_integer(factorial(k as u32)))
        .collect();
    TruncatedSeries::univariate_in_form(&coeffs, l, n)
}
