use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::calculus::par_map;
use super::{ehrhart_tensor_coeffs, rank_of_family, EhrhartTensorTable, ValuationHandle};
use crate::algebra::{Rational, TruncatedSeries};
use crate::cone::{zeta_p, ConeValuationInput};
use crate::error::Result;
use crate::invariant::{invariant_basis, p23, pairing_subspace, GroupId};
use crate::lattice::LatticePolygon;
use crate::linalg;

/// `dim Val_i^r` as stated by the dimension theorem.
pub fn predicted_tensor_dim(i: u32, r: u32) -> u32 {
    if (1 <= i && i < r && (r - i) % 2 == 1) || (r <= i && i <= r + 2) {
        1
    } else if i == 1 && r > 1 {
        p23(r)
    } else if 1 < i && i < r {
        p23((r - i) / 2 + 1)
    } else {
        0
    }
}

/// `dim Val̄_d` as stated by the dimension theorem.
pub fn predicted_dilative_dim(d: i32) -> u32 {
    if (-2..=0).contains(&d) || (d > 0 && d % 2 == 1) {
        1
    } else if d > 0 {
        p23(d as u32 / 2 + 1)
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimsRow {
    pub i: u32,
    pub r: u32,
    pub predicted: u32,
    pub observed: usize,
    pub family: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilativeRow {
    pub d: i32,
    pub predicted: u32,
    pub observed: usize,
    pub family: String,
}

type ZetaValues = Arc<Vec<Vec<TruncatedSeries>>>;

/// Observed ranks of spanning families on a fixed probe set. Ehrhart tables and
/// ζ series are computed once per probe and shared between rows.
pub struct DimensionProbe {
    probes: Vec<LatticePolygon>,
    tables: Mutex<HashMap<u32, Arc<Vec<EhrhartTensorTable>>>>,
    zetas: Mutex<HashMap<i32, (usize, ZetaValues)>>,
}

impl DimensionProbe {
    pub fn new(probes: Vec<LatticePolygon>) -> Self {
        Self {
            probes,
            tables: Mutex::new(HashMap::new()),
            zetas: Mutex::new(HashMap::new()),
        }
    }

    pub fn probes(&self) -> &[LatticePolygon] {
        &self.probes
    }

    fn tables(&self, r: u32) -> Arc<Vec<EhrhartTensorTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(&r) {
            return t.clone();
        }
        let t = Arc::new(par_map(&self.probes, |p| ehrhart_tensor_coeffs(p, r)));
        self.tables.lock().unwrap().insert(r, t.clone());
        t
    }

    /// `ζ(P)` to degree at least `n` for every `f` in the pairing subspace of
    /// degree `d + 1` and every probe.
    fn zetas(&self, d: i32, n: usize) -> Result<ZetaValues> {
        if let Some((m, z)) = self.zetas.lock().unwrap().get(&d) {
            if *m >= n {
                return Ok(z.clone());
            }
        }
        let mut per_f = Vec::new();
        for f in pairing_subspace(d as u32 + 1)? {
            let input = ConeValuationInput::from_generator(&f, d)?;
            let values = par_map(&self.probes, |p| zeta_p(p, &input, n));
            per_f.push(values.into_iter().collect::<Result<Vec<_>>>()?);
        }
        let z = Arc::new(per_f);
        self.zetas.lock().unwrap().insert(d, (n, z.clone()));
        Ok(z)
    }

    /// Observed rank for `Val_i^r`, with `zeta_trunc` the truncation used for
    /// ζ series (at least `r`; larger values let rows share one computation).
    pub fn tensor_row(&self, i: u32, r: u32, zeta_trunc: usize) -> Result<DimsRow> {
        let (family, observed) = if i == 1 && r > 1 && r % 2 == 1 {
            let fam: Vec<ValuationHandle> = invariant_basis(GroupId::G, r)
                .into_iter()
                .map(|f| ValuationHandle::z_f(f, r))
                .collect();
            ("Z_f, f in R[x,y]_r^G".to_string(), rank_of_family(&fam, &self.probes)?)
        } else if 1 < i && i < r && (r - i) % 2 == 0 {
            let d = (r - i) as i32;
            let zetas = self.zetas(d, zeta_trunc.max(r as usize))?;
            let rows: Vec<Vec<Rational>> = zetas
                .iter()
                .map(|per_probe| {
                    per_probe
                        .iter()
                        .flat_map(|s| s.layer(r as usize).homogeneous_coeff_vector(r))
                        .collect()
                })
                .collect();
            (format!("degree-{r} layers of zeta, d = {d}"), linalg::rank(&rows))
        } else {
            let tables = self.tables(r);
            let row: Vec<Rational> = tables
                .iter()
                .flat_map(|t| t.coeff(i).homogeneous_coeff_vector(r))
                .collect();
            (format!("L_{i}^{r}"), linalg::rank(&[row]))
        };
        Ok(DimsRow {
            i,
            r,
            predicted: predicted_tensor_dim(i, r),
            observed,
            family,
        })
    }

    /// Observed rank for `Val̄_d`, comparing all layers up to degree `max(d, 0) + 2`.
    pub fn dilative_row(&self, d: i32) -> Result<DilativeRow> {
        let top = d.max(0) as u32 + 2;
        let (family, observed) = if d > 0 && d % 2 == 0 {
            let zetas = self.zetas(d, top as usize)?;
            let rows: Vec<Vec<Rational>> = zetas
                .iter()
                .map(|per_probe| {
                    per_probe
                        .iter()
                        .flat_map(|s| (0..=top).flat_map(move |r| s.layer(r as usize).homogeneous_coeff_vector(r)))
                        .collect()
                })
                .collect();
            (format!("zeta, f in pairing subspace of degree {}", d + 1), linalg::rank(&rows))
        } else {
            let mut row = Vec::new();
            for r in 0..=top {
                let tables = self.tables(r);
                let i = r as i64 - d as i64;
                for t in tables.iter() {
                    let layer = if i >= 0 { t.coeff(i as u32) } else { Default::default() };
                    row.extend(layer.homogeneous_coeff_vector(r));
                }
            }
            (format!("dilative part of the lattice exponential sum, d = {d}"), linalg::rank(&[row]))
        };
        Ok(DilativeRow {
            d,
            predicted: predicted_dilative_dim(d),
            observed,
            family,
        })
    }

    /// Rows for `r = 0..=max_r` and `i = 0..=r+3`.
    pub fn tensor_table(&self, max_r: u32) -> Result<Vec<DimsRow>> {
        let mut rows = Vec::new();
        for r in 0..=max_r {
            for i in 0..=r + 3 {
                rows.push(self.tensor_row(i, r, max_r as usize)?);
            }
        }
        Ok(rows)
    }

    /// Rows for `d = -3..=max_d`.
    pub fn dilative_table(&self, max_d: i32) -> Result<Vec<DilativeRow>> {
        (-3..=max_d).map(|d| self.dilative_row(d)).collect()
    }
}
