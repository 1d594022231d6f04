use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational};
use crate::lattice::UnimodularMap;

/// Exact bivariate polynomial over the rationals, stored sparsely.
///
/// Keys are exponent pairs `(i, j)` for the monomial `x^i y^j`. Zero coefficients
/// are never stored, so structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<Monomial, Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    /// Builds `a x + b y` with rational coefficients.
    pub fn linear(a: Rational, b: Rational) -> Self {
        let mut p = Self::monomial(1, 0, a);
        p.add_term((0, 1), b);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * x^i y^j` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.coeffs.remove(&m);
                }
            }
            None => {
                self.coeffs.insert(m, c);
            }
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(i, j)| i + j).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.coeffs.keys().all(|&(i, j)| i + j == d)
    }

    /// The sum of all monomials of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&m, v)| (m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes `x -> sx`, `y -> sy`.
    pub fn substitute(&self, sx: &Self, sy: &Self) -> Self {
        let max_i = self.coeffs.keys().map(|m| m.0).max().unwrap_or(0);
        let max_j = self.coeffs.keys().map(|m| m.1).max().unwrap_or(0);
        let xs = powers(sx, max_i);
        let ys = powers(sy, max_j);
        let mut out = Self::zero();
        for (&(i, j), c) in &self.coeffs {
            let term = &xs[i as usize] * &ys[j as usize];
            out += &term.scale(c);
        }
        out
    }

    /// The action `phi f = f o phi^T` of a unimodular map.
    ///
    /// `(phi^T (x, y))` has components `a00 x + a10 y` and `a01 x + a11 y`.
    pub fn compose_linear(&self, phi: &UnimodularMap) -> Self {
        let [[a, b], [c, d]] = phi.entries();
        let sx = Self::linear(Rational::from_integer(a.into()), Rational::from_integer(c.into()));
        let sy = Self::linear(Rational::from_integer(b.into()), Rational::from_integer(d.into()));
        self.substitute(&sx, &sy)
    }

    /// `f(m x, m y)`.
    pub fn dilate_arguments(&self, m: &Rational) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| ((i, j), c * num_traits::pow(m.clone(), (i + j) as usize)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// `f(x, -y)`.
    pub fn reflect_y(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| ((i, j), if j % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// `f(-x, y)`.
    pub fn reflect_x(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| ((i, j), if i % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// `f(y, x)`.
    pub fn swap_variables(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, (&(i, j), c)| {
            acc + c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize)
        })
    }

    /// Terms in graded-lex order: higher total degree first, then higher power of `x`.
    pub fn graded_lex_terms(&self) -> Vec<(Monomial, Rational)> {
        let mut terms: Vec<_> = self.coeffs.iter().map(|(&m, c)| (m, c.clone())).collect();
        terms.sort_by(|a, b| {
            let (da, db) = (a.0 .0 + a.0 .1, b.0 .0 + b.0 .1);
            db.cmp(&da).then(b.0 .0.cmp(&a.0 .0))
        });
        terms
    }

    /// Coefficient vector over the monomials of degree `d`, ordered by decreasing
    /// power of `x`.
    pub fn homogeneous_coeff_vector(&self, d: u32) -> Vec<Rational> {
        (0..=d).map(|j| self.coeff(d - j, j)).collect()
    }

    pub fn from_homogeneous_coeff_vector(d: u32, v: &[Rational]) -> Self {
        Self::from_terms(v.iter().enumerate().map(|(j, c)| ((d - j as u32, j as u32), c.clone())))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

fn powers(p: &BivariatePolynomial, n: u32) -> Vec<BivariatePolynomial> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BivariatePolynomial::one());
    for k in 1..=n as usize {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.graded_lex_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            if !unit || (i == 0 && j == 0) {
                if abs.is_integer() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
                if i > 0 || j > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            if i > 0 && j > 0 {
                write!(f, "*")?;
            }
            match j {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{j}")?,
            }
        }
        Ok(())
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(mut self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&BivariatePolynomial> for BivariatePolynomial {
    fn add_assign(&mut self, rhs: &BivariatePolynomial) {
        for (&m, c) in &rhs.coeffs {
            self.add_term(m, c.clone());
        }
    }
}

impl SubAssign<&BivariatePolynomial> for BivariatePolynomial {
    fn sub_assign(&mut self, rhs: &BivariatePolynomial) {
        for (&m, c) in &rhs.coeffs {
            self.add_term(m, -c.clone());
        }
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(mut self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            coeffs: self.coeffs.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        -&self
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &rhs.coeffs {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for BivariatePolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn arithmetic_cancels_to_zero() {
        let p = &BivariatePolynomial::x() + &BivariatePolynomial::y();
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q.degree(), None);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let p = &BivariatePolynomial::x() - &BivariatePolynomial::y().scale(&rat(2, 1));
        let mut expected = BivariatePolynomial::one();
        for _ in 0..5 {
            expected = &expected * &p;
        }
        assert_eq!(p.pow(5), expected);
    }

    #[test]
    fn compose_with_swap_exchanges_variables() {
        let f = BivariatePolynomial::x().pow(2);
        let swap = UnimodularMap::new([[0, 1], [1, 0]]).unwrap();
        assert_eq!(f.compose_linear(&swap), BivariatePolynomial::y().pow(2));
    }

    #[test]
    fn compose_linear_by_hand() {
        let phi = UnimodularMap::new([[-1, -1], [0, 1]]).unwrap();
        assert_eq!(BivariatePolynomial::x().compose_linear(&phi), -BivariatePolynomial::x());
        // y -> a01 x + a11 y = -x + y
        assert_eq!(
            BivariatePolynomial::y().compose_linear(&phi),
            &BivariatePolynomial::y() - &BivariatePolynomial::x()
        );
    }

    #[test]
    fn display_is_graded_lex() {
        let p = BivariatePolynomial::from_terms([((0, 0), rat(3, 1)), ((2, 0), rat(1, 2)), ((1, 1), rat(-1, 1))]);
        assert_eq!(p.to_string(), "(1/2)*x^2 - x*y + 3");
    }
}
