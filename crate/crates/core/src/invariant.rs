//! Finite matrix groups, Reynolds projections and invariant spaces.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{int, rat, BivariatePolynomial, Rational};
use crate::error::{Error, Result};
use crate::lattice::UnimodularMap;
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupId {
    /// Stabilizer of the standard triangle up to translation, order 6.
    G,
    /// Symmetries of the square, order 8.
    D,
    /// `{±I, ±swap}`, order 4.
    H,
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupId::G => "G",
            GroupId::D => "D",
            GroupId::H => "H",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" => Ok(GroupId::G),
            "D" => Ok(GroupId::D),
            "H" => Ok(GroupId::H),
            other => Err(Error::Parse(format!("unknown group {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroup {
    pub id: GroupId,
    pub elements: Vec<UnimodularMap>,
}

fn generators(id: GroupId) -> Vec<UnimodularMap> {
    let m = |e| UnimodularMap::new(e).unwrap();
    match id {
        GroupId::G => vec![UnimodularMap::SWAP, m([[-1, -1], [0, 1]])],
        GroupId::D => vec![UnimodularMap::SWAP, m([[1, 0], [0, -1]])],
        GroupId::H => vec![UnimodularMap::SWAP, UnimodularMap::NEG],
    }
}

/// All elements of the group, generated by closure under products.
pub fn group_elements(id: GroupId) -> MatrixGroup {
    let gens = generators(id);
    let mut elements = vec![UnimodularMap::IDENTITY];
    let mut i = 0;
    while i < elements.len() {
        for g in &gens {
            let p = elements[i].compose(g);
            if !elements.contains(&p) {
                elements.push(p);
            }
        }
        i += 1;
    }
    MatrixGroup { id, elements }
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_invariant(&self, f: &BivariatePolynomial) -> bool {
        self.elements.iter().all(|phi| &f.compose_linear(phi) == f)
    }

    /// Group average of `f`.
    pub fn reynolds(&self, f: &BivariatePolynomial) -> BivariatePolynomial {
        let sum: BivariatePolynomial = self.elements.iter().map(|phi| f.compose_linear(phi)).sum();
        sum.scale(&rat(1, self.order() as i64))
    }

    /// Basis of the degree-`r` invariants: Reynolds images of the monomials
    /// `x^r, x^(r-1) y, ..., y^r`, reduced to row echelon form.
    pub fn invariant_basis(&self, r: u32) -> Vec<BivariatePolynomial> {
        let rows: Vec<Vec<Rational>> = (0..=r)
            .map(|j| {
                self.reynolds(&BivariatePolynomial::monomial(r - j, j, Rational::one()))
                    .homogeneous_coeff_vector(r)
            })
            .collect();
        let (reduced, _) = linalg::rref(&rows);
        reduced
            .iter()
            .map(|row| BivariatePolynomial::from_homogeneous_coeff_vector(r, row))
            .collect()
    }
}

pub fn reynolds(f: &BivariatePolynomial, id: GroupId) -> BivariatePolynomial {
    group_elements(id).reynolds(f)
}

pub fn invariant_basis(id: GroupId, r: u32) -> Vec<BivariatePolynomial> {
    group_elements(id).invariant_basis(r)
}

/// `p2 = x^2 - xy + y^2` and `p3 = x^3 - (3/2)(x^2 y + x y^2) + y^3`.
pub fn generators_g() -> (BivariatePolynomial, BivariatePolynomial) {
    let p2 = BivariatePolynomial::from_terms([((2, 0), int(1)), ((1, 1), int(-1)), ((0, 2), int(1))]);
    let p3 = BivariatePolynomial::from_terms([
        ((3, 0), int(1)),
        ((2, 1), rat(-3, 2)),
        ((1, 2), rat(-3, 2)),
        ((0, 3), int(1)),
    ]);
    (p2, p3)
}

/// `q = xy` and `q~ = x^2 + y^2`.
pub fn generators_h() -> (BivariatePolynomial, BivariatePolynomial) {
    let q = BivariatePolynomial::monomial(1, 1, int(1));
    let qt = BivariatePolynomial::from_terms([((2, 0), int(1)), ((0, 2), int(1))]);
    (q, qt)
}

/// Number of partitions of `r` into parts 2 and 3.
pub fn p23(r: u32) -> u32 {
    (r + 2) / 2 - (r + 2) / 3
}

pub fn p23_brute_force(r: u32) -> u32 {
    (0..=r / 3).filter(|l| (r - 3 * l) % 2 == 0).count() as u32
}

/// The odd-in-`y` part `(g(x,y) - g(x,-y)) / 2`.
pub fn delta_map(g: &BivariatePolynomial) -> BivariatePolynomial {
    BivariatePolynomial::from_terms(g.terms().filter(|((_, j), _)| j % 2 == 1).map(|(&m, c)| (m, c.clone())))
}

/// `h + (x + y) f`.
pub fn rho_map(f: &BivariatePolynomial, h: &BivariatePolynomial) -> BivariatePolynomial {
    h + &(&x_plus_y() * f)
}

fn x_plus_y() -> BivariatePolynomial {
    BivariatePolynomial::linear(int(1), int(1))
}

fn check_odd_rank(r: u32) -> Result<()> {
    if r % 2 == 1 && r > 1 {
        Ok(())
    } else {
        Err(Error::BadDegree(r))
    }
}

/// Columns of `delta o rho` on the product basis: first the `f` part, then the `h` part.
fn delta_rho_columns(r: u32) -> (Vec<BivariatePolynomial>, Vec<BivariatePolynomial>, Vec<Vec<Rational>>) {
    let g = group_elements(GroupId::G);
    let bf = g.invariant_basis(r);
    let bh = g.invariant_basis(r + 1);
    let zero = BivariatePolynomial::zero();
    let cols: Vec<Vec<Rational>> = bf
        .iter()
        .map(|f| delta_map(&rho_map(f, &zero)).homogeneous_coeff_vector(r + 1))
        .chain(bh.iter().map(|h| delta_map(h).homogeneous_coeff_vector(r + 1)))
        .collect();
    (bf, bh, cols)
}

fn transpose(cols: &[Vec<Rational>], nrows: usize) -> Vec<Vec<Rational>> {
    (0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Rank of `delta o rho` on `R[x,y]_r^G x R[x,y]_(r+1)^G`.
pub fn image_dim_delta_rho(r: u32) -> Result<usize> {
    check_odd_rank(r)?;
    let (_, _, cols) = delta_rho_columns(r);
    Ok(linalg::rank(&cols))
}

/// The `h` in `R[x,y]_(r+1)^G` with `h + (x+y) f` even in `y`, if it exists.
pub fn solve_pairing(f: &BivariatePolynomial, r: u32) -> Result<Option<BivariatePolynomial>> {
    check_odd_rank(r)?;
    let g = group_elements(GroupId::G);
    if !f.is_homogeneous_of(r) || !g.is_invariant(f) {
        return Err(Error::NotInvariant("G".into()));
    }
    let bh = g.invariant_basis(r + 1);
    let cols: Vec<Vec<Rational>> = bh.iter().map(|h| delta_map(h).homogeneous_coeff_vector(r + 1)).collect();
    let a = transpose(&cols, r as usize + 2);
    let b: Vec<Rational> = (-delta_map(&(&x_plus_y() * f))).homogeneous_coeff_vector(r + 1);
    let (sol, nullity) = linalg::solve(&a, &b, bh.len());
    if nullity > 0 {
        return Err(Error::PairingNotUnique(nullity));
    }
    Ok(sol.map(|c| bh.iter().zip(&c).map(|(h, ci)| h.scale(ci)).sum()))
}

/// Basis of the `f in R[x,y]_r^G` for which [`solve_pairing`] succeeds:
/// the projection of `ker(delta o rho)` onto the first factor.
pub fn pairing_subspace(r: u32) -> Result<Vec<BivariatePolynomial>> {
    check_odd_rank(r)?;
    let (bf, _, cols) = delta_rho_columns(r);
    let a = transpose(&cols, r as usize + 2);
    let kernel = linalg::nullspace(&a, cols.len());
    let projected: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|v| {
            let f: BivariatePolynomial = bf.iter().zip(v).map(|(b, c)| b.scale(c)).sum();
            f.homogeneous_coeff_vector(r)
        })
        .collect();
    let (reduced, _) = linalg::rref(&projected);
    Ok(reduced
        .iter()
        .map(|row| BivariatePolynomial::from_homogeneous_coeff_vector(r, row))
        .collect())
}

/// Coordinates of a `G`-invariant `f` in the products `p2^k p3^l` with `2k + 3l = r`,
/// listed as `((k, l), c)`. `None` if `f` is not of that form.
pub fn in_generators_g(f: &BivariatePolynomial, r: u32) -> Option<Vec<((u32, u32), Rational)>> {
    if !f.is_homogeneous_of(r) {
        return None;
    }
    let (p2, p3) = generators_g();
    let pairs: Vec<(u32, u32)> = (0..=r / 3)
        .filter(|l| (r - 3 * l) % 2 == 0)
        .map(|l| ((r - 3 * l) / 2, l))
        .collect();
    let cols: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(k, l)| (&p2.pow(k) * &p3.pow(l)).homogeneous_coeff_vector(r))
        .collect();
    let a = transpose(&cols, r as usize + 1);
    let (sol, _) = linalg::solve(&a, &f.homogeneous_coeff_vector(r), pairs.len());
    sol.map(|c| pairs.into_iter().zip(c).filter(|(_, c)| !c.is_zero()).collect())
}
