use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{hilbert_decomposition, resolve, vertex_cone, MeromorphicTerm, RationalCone};
use crate::algebra::{BivariatePolynomial, LinearForm, Rational, TruncatedSeries};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::valuation;

/// The rational function `R = numerator / (x y)`, homogeneous of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeValuationInput {
    numerator: BivariatePolynomial,
    d: i32,
}

impl ConeValuationInput {
    /// Checks that the numerator is homogeneous of degree `d + 2` and symmetric in `x, y`.
    pub fn new(numerator: BivariatePolynomial, d: i32) -> Result<Self> {
        if d < -2 || !numerator.is_homogeneous_of((d + 2) as u32) {
            return Err(Error::Inconsistent(format!(
                "numerator of R must be homogeneous of degree d + 2 = {}",
                d + 2
            )));
        }
        if numerator.swap_variables() != numerator {
            return Err(Error::AsymmetricR);
        }
        Ok(Self { numerator, d })
    }

    /// `R = 1 / (x y)`, whose vertex-cone sum is the exponential integral.
    pub fn exponential_integral() -> Self {
        Self {
            numerator: BivariatePolynomial::one(),
            d: -2,
        }
    }

    /// `R` built from the value on the unit square of the two-homogeneous
    /// valuation lifting `Z_f`, for `f` of odd degree `d + 1`.
    pub fn from_generator(f: &BivariatePolynomial, d: i32) -> Result<Self> {
        if d < 2 || d % 2 != 0 {
            return Err(Error::BadDegree((d + 1).max(0) as u32));
        }
        let lift = valuation::TwoHomogeneousLift::new(f, (d + 1) as u32)?;
        Self::new(lift.square_value(), d)
    }

    pub fn numerator(&self) -> &BivariatePolynomial {
        &self.numerator
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    /// `(x + y) N(x, y) - y N(x, x + y) - x N(x + y, y)`, zero exactly when
    /// `R(x, y) = R(x, x + y) + R(x + y, y)`.
    pub fn refinement_defect(&self) -> BivariatePolynomial {
        let (x, y) = (BivariatePolynomial::x(), BivariatePolynomial::y());
        let s = &x + &y;
        let n = &self.numerator;
        &(&(&s * n) - &(&y * &n.substitute(&x, &s))) - &(&x * &n.substitute(&s, &y))
    }

    /// `N(x, y) - N(-x, y)`, zero exactly when `R(x, y) + R(-x, y) = 0`.
    pub fn halfplane_defect(&self) -> BivariatePolynomial {
        &self.numerator - &self.numerator.reflect_x()
    }
}

fn form(p: LatticePoint) -> LinearForm {
    LinearForm::new(p.x, p.y)
}

/// `sum over can(K) of R o phi_C^T`, as terms at the origin with numerators to
/// degree `n + 2`. Cones that are not pointed and two-dimensional give no terms.
pub fn zeta0(k: &RationalCone, input: &ConeValuationInput, n: usize) -> Result<Vec<MeromorphicTerm>> {
    if input.numerator.swap_variables() != input.numerator {
        return Err(Error::AsymmetricR);
    }
    if !k.is_pointed_2d() {
        return Ok(vec![]);
    }
    let origin = (Rational::zero(), Rational::zero());
    Ok(hilbert_decomposition(k)?
        .iter()
        .map(|c| {
            let (a, b) = (form(c.rays()[0]), form(c.rays()[1]));
            let num = input.numerator.substitute(&a.to_poly(), &b.to_poly());
            MeromorphicTerm::new(origin.clone(), TruncatedSeries::from_poly(&num, n + 2), vec![a, b])
        })
        .collect())
}

/// `zeta(P) = sum_v e^v zeta0(fcone(v; P))`, truncated at degree `n`.
pub fn zeta_p(p: &LatticePolygon, input: &ConeValuationInput, n: usize) -> Result<TruncatedSeries> {
    if p.dim() < 2 {
        return Ok(TruncatedSeries::zero(n));
    }
    let mut terms = Vec::new();
    for &v in p.vertices() {
        let vertex = (Rational::from_integer(v.x.into()), Rational::from_integer(v.y.into()));
        for t in zeta0(&vertex_cone(p, v)?, input, n)? {
            terms.push(t.translate(&vertex));
        }
    }
    resolve(&terms, n)
}

/// Convex polygon with rational vertices, stored as `scaled / denominator`
/// with `scaled` a lattice polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolygon {
    scaled: LatticePolygon,
    denominator: i64,
}

impl RationalPolygon {
    /// Convex hull of the given rational points.
    pub fn from_points(points: &[(Rational, Rational)]) -> Self {
        assert!(!points.is_empty(), "convex hull of an empty set");
        let l = points.iter().fold(BigInt::one(), |acc, (a, b)| {
            acc.lcm(a.denom()).lcm(b.denom())
        });
        let lr = Rational::from_integer(l.clone());
        let scaled: Vec<LatticePoint> = points
            .iter()
            .map(|(a, b)| {
                let c = |q: &Rational| i64::try_from((q * &lr).to_integer()).expect("coordinate fits in i64");
                LatticePoint::new(c(a), c(b))
            })
            .collect();
        Self {
            scaled: LatticePolygon::from_points(&scaled),
            denominator: i64::try_from(l).expect("denominator fits in i64"),
        }
    }

    pub fn vertices(&self) -> Vec<(Rational, Rational)> {
        let d = Rational::from_integer(self.denominator.into());
        self.scaled
            .vertices()
            .iter()
            .map(|v| (Rational::from_integer(v.x.into()) / &d, Rational::from_integer(v.y.into()) / &d))
            .collect()
    }
}

impl From<&LatticePolygon> for RationalPolygon {
    fn from(p: &LatticePolygon) -> Self {
        Self {
            scaled: p.clone(),
            denominator: 1,
        }
    }
}

/// [`zeta_p`] for a polygon with rational vertices. The vertex cones are those
/// of the scaled lattice polygon. The sum need not be analytic, in which case
/// the division reports [`Error::NotDivisible`].
pub fn zeta_p_rational(p: &RationalPolygon, input: &ConeValuationInput, n: usize) -> Result<TruncatedSeries> {
    if p.scaled.dim() < 2 {
        return Ok(TruncatedSeries::zero(n));
    }
    let mut terms = Vec::new();
    for (&w, vertex) in p.scaled.vertices().iter().zip(p.vertices()) {
        for t in zeta0(&vertex_cone(&p.scaled, w)?, input, n)? {
            terms.push(t.translate(&vertex));
        }
    }
    resolve(&terms, n)
}
