//! Exact dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Rank by fraction-free (Bareiss) elimination after clearing row denominators.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| integer_row(r))
        .collect();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in (rank + 1)..m.len() {
            for j in (col + 1)..ncols {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn integer_row(r: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    r.iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    if m.is_empty() {
        return (m, vec![]);
    }
    let ncols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][col];
        for c in m[r].iter_mut() {
            *c *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..ncols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of the right null space `{x : A x = 0}` for an `nrows x ncols` matrix.
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Matrix {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solution of `A x = b`, if one exists, together with the nullity of `A`.
///
/// When the solution is not unique the free variables are set to zero.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> (Option<Vec<Rational>>, usize) {
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    let nullity = ncols - pivots.iter().filter(|&&p| p < ncols).count();
    if pivots.contains(&ncols) {
        return (None, nullity);
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    (Some(x), nullity)
}

/// Solves the square Vandermonde system `sum_i c_i m^i = values[m]` at nodes `m`.
pub fn interpolate(nodes: &[Rational], values: &[Rational]) -> Vec<Rational> {
    let n = nodes.len();
    let a: Matrix = nodes
        .iter()
        .map(|m| (0..n).map(|i| num_traits::pow(m.clone(), i)).collect())
        .collect();
    let (sol, nullity) = solve(&a, values, n);
    assert_eq!(nullity, 0, "interpolation nodes must be distinct");
    sol.expect("square Vandermonde system is solvable")
}
