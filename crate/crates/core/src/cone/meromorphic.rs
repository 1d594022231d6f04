use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{exp_series, graded_divide, BivariatePolynomial, LinearForm, Rational, TruncatedSeries};
use crate::error::Result;

/// `e^vertex * numerator / prod(denominators)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeromorphicTerm {
    pub vertex: (Rational, Rational),
    pub numerator: TruncatedSeries,
    pub denominators: Vec<LinearForm>,
}

impl MeromorphicTerm {
    pub fn new(vertex: (Rational, Rational), numerator: TruncatedSeries, denominators: Vec<LinearForm>) -> Self {
        Self {
            vertex,
            numerator,
            denominators,
        }
    }

    pub fn translate(mut self, v: &(Rational, Rational)) -> Self {
        self.vertex = (&self.vertex.0 + &v.0, &self.vertex.1 + &v.1);
        self
    }
}

/// Sums the terms as an analytic series truncated at degree `n`.
///
/// Denominators are normalized and merged into one product `D` where each form
/// carries its largest multiplicity over the terms. Each term contributes
/// `e^v * S * (D / d)`, and a single [`graded_divide`] by `D` certifies that
/// the poles cancel. A term with `k` denominators needs its numerator to
/// degree `n + k`.
pub fn resolve(terms: &[MeromorphicTerm], n: usize) -> Result<TruncatedSeries> {
    let mut common: BTreeMap<LinearForm, usize> = BTreeMap::new();
    let mut prepared = Vec::with_capacity(terms.len());
    for t in terms {
        let mut scale = Rational::one();
        let mut counts: BTreeMap<LinearForm, usize> = BTreeMap::new();
        for l in &t.denominators {
            let (c, form) = l.normalize();
            scale *= c;
            *counts.entry(form).or_default() += 1;
        }
        for (form, &k) in &counts {
            let e = common.entry(*form).or_default();
            *e = (*e).max(k);
        }
        prepared.push((t, Rational::one() / scale, counts));
    }
    let total: usize = common.values().sum();
    let mut layers = vec![BivariatePolynomial::zero(); n + total + 1];
    for (t, inv_scale, counts) in prepared {
        let k = t.denominators.len();
        assert!(
            t.numerator.truncation() >= n + k,
            "term numerator truncated at {} but {} is needed",
            t.numerator.truncation(),
            n + k
        );
        let mut multiplier = BivariatePolynomial::one();
        for (form, &m) in &common {
            let missing = m - counts.get(form).copied().unwrap_or(0);
            if missing > 0 {
                multiplier = &multiplier * &form.to_poly().pow(missing as u32);
            }
        }
        let body = exp_series((&t.vertex.0, &t.vertex.1), n + k)
            .mul(&t.numerator.truncate(n + k))
            .scale(&inv_scale);
        let shift = total - k;
        for (g, layer) in body.layers().iter().enumerate() {
            if !layer.is_zero() {
                layers[g + shift] += &(&multiplier * layer);
            }
        }
    }
    let denoms: Vec<LinearForm> = common
        .iter()
        .flat_map(|(form, &m)| std::iter::repeat_n(*form, m))
        .collect();
    graded_divide(&TruncatedSeries::from_layers(layers), &denoms)
}
