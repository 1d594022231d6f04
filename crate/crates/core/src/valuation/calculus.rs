use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{discrete_moment, ehrhart_tensor_coeffs, interpolate_polys, z_f, TwoHomogeneousLift};
use crate::algebra::{factorial, int, linear_form_power, BivariatePolynomial, Rational, TruncatedSeries};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::linalg;

pub type Evaluator = Arc<dyn Fn(&LatticePolygon) -> Result<BivariatePolynomial> + Send + Sync>;

/// Series-valued evaluator `(P, n) -> Z̄(P)` truncated at degree `n`.
pub type SeriesEvaluator<'a> = &'a (dyn Fn(&LatticePolygon, usize) -> Result<TruncatedSeries> + Sync);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ValuationTags {
    pub simple: bool,
    pub translation_invariant: bool,
    pub odd: bool,
}

/// A valuation of rank `r`, known only through evaluation.
#[derive(Clone)]
pub struct ValuationHandle {
    name: String,
    evaluator: Evaluator,
    rank: u32,
    homogeneity: Option<u32>,
    tags: ValuationTags,
}

impl fmt::Debug for ValuationHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValuationHandle")
            .field("name", &self.name)
            .field("rank", &self.rank)
            .field("homogeneity", &self.homogeneity)
            .field("tags", &self.tags)
            .finish()
    }
}

impl ValuationHandle {
    pub fn new<F>(name: impl Into<String>, rank: u32, evaluator: F) -> Self
    where
        F: Fn(&LatticePolygon) -> Result<BivariatePolynomial> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            evaluator: Arc::new(evaluator),
            rank,
            homogeneity: None,
            tags: ValuationTags::default(),
        }
    }

    pub fn with_homogeneity(mut self, i: u32) -> Self {
        self.homogeneity = Some(i);
        self
    }

    pub fn with_tags(mut self, tags: ValuationTags) -> Self {
        self.tags = tags;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn homogeneity(&self) -> Option<u32> {
        self.homogeneity
    }

    pub fn tags(&self) -> ValuationTags {
        self.tags
    }

    pub fn eval(&self, p: &LatticePolygon) -> Result<BivariatePolynomial> {
        (self.evaluator)(p)
    }

    /// The discrete moment `L^r`.
    pub fn moment(r: u32) -> Self {
        Self::new(format!("L^{r}"), r, move |p| Ok(discrete_moment(p, r)))
    }

    /// The Ehrhart tensor coefficient `L_i^r`.
    pub fn ehrhart(i: u32, r: u32) -> Self {
        Self::new(format!("L_{i}^{r}"), r, move |p| Ok(ehrhart_tensor_coeffs(p, r).coeff(i)))
            .with_homogeneity(i)
            .with_tags(ValuationTags {
                odd: r % 2 == 1,
                ..Default::default()
            })
    }

    /// `Z_f` for a `G`-invariant `f` of odd degree `r > 1`.
    pub fn z_f(f: BivariatePolynomial, r: u32) -> Self {
        Self::new(format!("Z_f^{r}"), r, move |p| z_f(p, &f, r))
            .with_homogeneity(1)
            .with_tags(ValuationTags {
                simple: true,
                translation_invariant: true,
                odd: true,
            })
    }

    /// The two-homogeneous lift of `Z_f`, of rank `r + 1`.
    pub fn z2(lift: TwoHomogeneousLift) -> Self {
        let rank = lift.rank();
        Self::new(format!("Z_2^{rank}"), rank, move |p| lift.eval(p))
            .with_homogeneity(2)
            .with_tags(ValuationTags {
                simple: true,
                ..Default::default()
            })
    }
}

fn point_form(v: LatticePoint, j: u32) -> BivariatePolynomial {
    linear_form_power((v.x, v.y), j)
}

/// `Z^(r-j)(P)` for `j = 0..=r`, from `Z(P + v) = sum_j Z^(r-j)(P) (v . ξ)^j / j!`
/// sampled at `v` in `{0..r}^2`.
pub fn associated_valuations(z: &ValuationHandle, p: &LatticePolygon) -> Result<Vec<BivariatePolynomial>> {
    let r = z.rank();
    // unknowns: coefficients of Z^(r-j), monomial x^a y^(r-j-a)
    let unknowns: Vec<(u32, u32)> = (0..=r).flat_map(|j| (0..=r - j).map(move |a| (j, a))).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for vx in 0..=r as i64 {
        for vy in 0..=r as i64 {
            let v = LatticePoint::new(vx, vy);
            let value = z.eval(&p.translate(v))?;
            if !value.is_zero() && !value.is_homogeneous_of(r) {
                return Err(Error::Inconsistent(format!("{} is not homogeneous of degree {r}", z.name())));
            }
            let products: Vec<BivariatePolynomial> = unknowns
                .iter()
                .map(|&(j, a)| {
                    let c = Rational::new(BigInt::from(1), factorial(j));
                    &BivariatePolynomial::monomial(a, r - j - a, c) * &point_form(v, j)
                })
                .collect();
            for a in 0..=r {
                rows.push(products.iter().map(|q| q.coeff(a, r - a)).collect::<Vec<_>>());
                rhs.push(value.coeff(a, r - a));
            }
        }
    }
    let (sol, _) = linalg::solve(&rows, &rhs, unknowns.len());
    let sol = sol.ok_or_else(|| {
        Error::Inconsistent(format!("{} is not translatively polynomial of degree {r}", z.name()))
    })?;
    let mut out = vec![BivariatePolynomial::zero(); r as usize + 1];
    for (&(j, a), c) in unknowns.iter().zip(sol) {
        out[j as usize].add_term((a, r - j - a), c);
    }
    Ok(out)
}

/// `Z_i(P)` for `i = 0..=r+2`, interpolating `m -> Z(mP)` at `m = 0..=r+2` and
/// checking the fit at `m = r + 3`.
pub fn homogeneous_components(z: &ValuationHandle, p: &LatticePolygon) -> Result<Vec<BivariatePolynomial>> {
    let n = z.rank() as usize + 3;
    let values = (0..=n as i64).map(|m| z.eval(&p.dilate(m))).collect::<Result<Vec<_>>>()?;
    let coeffs = interpolate_polys(0, &values[..n]);
    if eval_in_m(&coeffs, n as i64) != values[n] {
        return Err(Error::Inconsistent(format!(
            "{} is not polynomial of degree {} under dilation",
            z.name(),
            n - 1
        )));
    }
    Ok(coeffs)
}

fn eval_in_m(coeffs: &[BivariatePolynomial], m: i64) -> BivariatePolynomial {
    let m = int(m);
    let mut acc = BivariatePolynomial::zero();
    for c in coeffs.iter().rev() {
        acc = &acc.scale(&m) + c;
    }
    acc
}

/// Applies `f` to every item on a few scoped threads, keeping the order.
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<U>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Rank of the matrix whose rows are the coefficient vectors of each valuation on
/// all probes, concatenated. A lower bound for the dimension of the span.
pub fn rank_of_family(family: &[ValuationHandle], probes: &[LatticePolygon]) -> Result<usize> {
    let Some(first) = family.first() else {
        return Ok(0);
    };
    let r = first.rank();
    assert!(family.iter().all(|z| z.rank() == r), "family members must share their rank");
    let rows = family
        .iter()
        .map(|z| {
            par_map(probes, |p| z.eval(p).map(|v| v.homogeneous_coeff_vector(r)))
                .into_iter()
                .collect::<Result<Vec<_>>>()
                .map(|parts| parts.concat())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::rank(&rows))
}

/// The `d`-dilative parts of a translatively exponential valuation on `P`, to degree `n`.
///
/// The degree-`r` layer of `Z̄(mP)` is a polynomial in `m` of degree at most
/// `r + 2`; its `m^i` coefficient is the degree-`r` layer of the part with
/// `d = r - i`. Values at `m = 1..=n+3` are used, the surplus ones as a check.
/// Only nonzero parts are returned.
pub fn dilative_components(
    zbar: SeriesEvaluator<'_>,
    p: &LatticePolygon,
    n: usize,
) -> Result<BTreeMap<i32, TruncatedSeries>> {
    let samples: Vec<TruncatedSeries> = (1..=n as i64 + 3)
        .map(|m| zbar(&p.dilate(m), n))
        .collect::<Result<_>>()?;
    let mut parts: BTreeMap<i32, Vec<BivariatePolynomial>> = BTreeMap::new();
    for r in 0..=n {
        let values: Vec<BivariatePolynomial> = samples.iter().map(|s| s.layer(r).clone()).collect();
        let coeffs = interpolate_polys(1, &values[..r + 3]);
        for (k, v) in values.iter().enumerate().skip(r + 3) {
            if &eval_in_m(&coeffs, k as i64 + 1) != v {
                return Err(Error::Inconsistent(format!(
                    "degree-{r} layer is not polynomial of degree {} in the dilation factor",
                    r + 2
                )));
            }
        }
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                let layers = parts
                    .entry(r as i32 - i as i32)
                    .or_insert_with(|| vec![BivariatePolynomial::zero(); n + 1]);
                layers[r] = c;
            }
        }
    }
    Ok(parts
        .into_iter()
        .map(|(d, layers)| (d, TruncatedSeries::from_layers(layers)))
        .collect())
}
