use std::sync::OnceLock;

use super::ehrhart_tensor_coeffs;
use crate::algebra::{rat, BivariatePolynomial, Rational};
use crate::error::{Error, Result};
use crate::invariant::{group_elements, solve_pairing, GroupId};
use crate::lattice::{unimodular_triangulate, LatticePoint, LatticePolygon, Triangulation, UnimodularMap};

fn check_odd_rank(r: u32) -> Result<()> {
    if r % 2 == 1 && r > 1 {
        Ok(())
    } else {
        Err(Error::BadDegree(r))
    }
}

fn check_generator(f: &BivariatePolynomial, r: u32) -> Result<()> {
    check_odd_rank(r)?;
    if !f.is_homogeneous_of(r) || !group_elements(GroupId::G).is_invariant(f) {
        return Err(Error::NotInvariant("G".into()));
    }
    Ok(())
}

/// `Z_f(P) = sum over the triangles phi Δ + v of f o phi^T`.
pub fn z_f(p: &LatticePolygon, f: &BivariatePolynomial, r: u32) -> Result<BivariatePolynomial> {
    check_generator(f, r)?;
    if p.dim() < 2 {
        return Ok(BivariatePolynomial::zero());
    }
    Ok(z_f_on(&unimodular_triangulate(p)?, f))
}

/// [`z_f`] over a given triangulation, without the invariance check.
pub fn z_f_on(t: &Triangulation, f: &BivariatePolynomial) -> BivariatePolynomial {
    t.triangles().iter().map(|tri| f.compose_linear(&tri.map)).sum()
}

/// `L_1^2(Δ)` and `L_1^3(Δ)`.
pub fn triangle_generators() -> &'static (BivariatePolynomial, BivariatePolynomial) {
    static GENS: OnceLock<(BivariatePolynomial, BivariatePolynomial)> = OnceLock::new();
    GENS.get_or_init(|| {
        let t = LatticePolygon::standard_triangle();
        (ehrhart_tensor_coeffs(&t, 2).coeff(1), ehrhart_tensor_coeffs(&t, 3).coeff(1))
    })
}

/// `L_1^2(Δ)^k L_1^3(Δ)^l`.
pub fn basis_generator(k: u32, l: u32) -> BivariatePolynomial {
    let (a, b) = triangle_generators();
    &a.pow(k) * &b.pow(l)
}

/// `L_1^{2k,3l}(P)`: [`z_f`] with `f = L_1^2(Δ)^k L_1^3(Δ)^l`.
pub fn basis_valuation(p: &LatticePolygon, k: u32, l: u32) -> Result<BivariatePolynomial> {
    let r = 2 * k + 3 * l;
    check_odd_rank(r)?;
    z_f(p, &basis_generator(k, l), r)
}

fn x_plus_y_over_3() -> BivariatePolynomial {
    BivariatePolynomial::linear(rat(1, 3), rat(1, 3))
}

/// The simple, two-homogeneous valuation of rank `r + 1` whose associated
/// rank-`r` valuation is `Z_f`.
///
/// On a triangle `phi Δ + v` it takes the value `f2 o phi^T + (v . ξ)(f o phi^T)`
/// with `f2 = (x + y) f / 3 + h`, where `h` is the invariant of degree `r + 1`
/// that makes the value on the unit square independent of its triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoHomogeneousLift {
    f: BivariatePolynomial,
    h: BivariatePolynomial,
    r: u32,
}

impl TwoHomogeneousLift {
    pub fn new(f: &BivariatePolynomial, r: u32) -> Result<Self> {
        let h = solve_pairing(f, r)?.ok_or(Error::NoPairing)?;
        Ok(Self {
            f: f.clone(),
            h: h.scale(&rat(-1, 6)),
            r,
        })
    }

    pub fn f(&self) -> &BivariatePolynomial {
        &self.f
    }

    pub fn h(&self) -> &BivariatePolynomial {
        &self.h
    }

    /// Rank of the lifted valuation, `r + 1`.
    pub fn rank(&self) -> u32 {
        self.r + 1
    }

    /// The value on `Δ`.
    pub fn f2(&self) -> BivariatePolynomial {
        &(&x_plus_y_over_3() * &self.f) + &self.h
    }

    /// The value on `[0, 1]^2`, `2h - (x + y) f / 3`.
    pub fn square_value(&self) -> BivariatePolynomial {
        &self.h.scale(&Rational::from_integer(2.into())) - &(&x_plus_y_over_3() * &self.f)
    }

    /// The value on `phi Δ + v`.
    pub fn triangle_value(&self, phi: &UnimodularMap, v: LatticePoint) -> BivariatePolynomial {
        let shift = BivariatePolynomial::linear(Rational::from_integer(v.x.into()), Rational::from_integer(v.y.into()));
        &self.f2().compose_linear(phi) + &(&shift * &self.f.compose_linear(phi))
    }

    pub fn eval(&self, p: &LatticePolygon) -> Result<BivariatePolynomial> {
        if p.dim() < 2 {
            return Ok(BivariatePolynomial::zero());
        }
        Ok(self.eval_on(&unimodular_triangulate(p)?))
    }

    pub fn eval_on(&self, t: &Triangulation) -> BivariatePolynomial {
        t.triangles().iter().map(|tri| self.triangle_value(&tri.map, tri.shift)).sum()
    }
}

/// `Z_2^(r+1)(P)` for the lift of `Z_f`.
pub fn z2_from_f(p: &LatticePolygon, f: &BivariatePolynomial, r: u32) -> Result<BivariatePolynomial> {
    TwoHomogeneousLift::new(f, r)?.eval(p)
}
