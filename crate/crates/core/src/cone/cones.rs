use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive(v: LatticePoint) -> Result<LatticePoint> {
    if v == LatticePoint::ORIGIN {
        return Err(Error::ZeroVector);
    }
    let g = v.gcd();
    Ok(LatticePoint::new(v.x / g, v.y / g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeKind {
    Origin,
    Ray,
    Pointed2D,
    Line,
    HalfPlane,
    Plane,
}

/// A rational cone in the plane.
///
/// Stored rays by kind:
/// * `Ray`: the primitive generator.
/// * `Pointed2D`: primitive `u, v` with `det(u, v) > 0`; the cone is swept
///   counterclockwise from `u` to `v`.
/// * `Line`: one primitive direction `d`; the cone is `R d`.
/// * `HalfPlane`: one primitive direction `d`; the cone is `{p : det(d, p) >= 0}`.
/// * `Origin`, `Plane`: none.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalCone {
    kind: ConeKind,
    rays: Vec<LatticePoint>,
}

impl RationalCone {
    pub fn origin() -> Self {
        Self {
            kind: ConeKind::Origin,
            rays: vec![],
        }
    }

    pub fn plane() -> Self {
        Self {
            kind: ConeKind::Plane,
            rays: vec![],
        }
    }

    pub fn ray(u: LatticePoint) -> Result<Self> {
        Ok(Self {
            kind: ConeKind::Ray,
            rays: vec![primitive(u)?],
        })
    }

    pub fn line(d: LatticePoint) -> Result<Self> {
        let d = primitive(d)?;
        let d = if d < LatticePoint::ORIGIN { -d } else { d };
        Ok(Self {
            kind: ConeKind::Line,
            rays: vec![d],
        })
    }

    /// The closed half-plane to the left of `d`.
    pub fn half_plane(d: LatticePoint) -> Result<Self> {
        Ok(Self {
            kind: ConeKind::HalfPlane,
            rays: vec![primitive(d)?],
        })
    }

    /// `pos{u, v}` for linearly independent `u, v`, in either order.
    pub fn pointed(u: LatticePoint, v: LatticePoint) -> Result<Self> {
        let (u, v) = (primitive(u)?, primitive(v)?);
        match u.cross(v).signum() {
            1 => Ok(Self {
                kind: ConeKind::Pointed2D,
                rays: vec![u, v],
            }),
            -1 => Ok(Self {
                kind: ConeKind::Pointed2D,
                rays: vec![v, u],
            }),
            _ => Err(Error::NotPointed),
        }
    }

    /// Positive hull of finitely many integer vectors; zero vectors are ignored.
    pub fn from_rays(rays: &[LatticePoint]) -> Result<Self> {
        let mut dirs: Vec<LatticePoint> = rays
            .iter()
            .filter(|&&r| r != LatticePoint::ORIGIN)
            .map(|&r| primitive(r).unwrap())
            .collect();
        dirs.sort();
        dirs.dedup();
        let Some(&first) = dirs.first() else {
            return Ok(Self::origin());
        };
        if dirs.iter().all(|d| first.cross(*d) == 0) {
            return if dirs.len() == 1 {
                Self::ray(first)
            } else {
                Self::line(first)
            };
        }
        sort_by_angle(&mut dirs);
        let n = dirs.len();
        // the widest counterclockwise gap between consecutive directions decides the kind
        let mut widest: Option<(usize, i8)> = None;
        for i in 0..n {
            let (a, b) = (dirs[i], dirs[(i + 1) % n]);
            let c = a.cross(b);
            let class = if c < 0 {
                2
            } else if c == 0 {
                1
            } else {
                0
            };
            if widest.is_none_or(|(_, w)| class > w) {
                widest = Some((i, class));
            }
        }
        let (i, class) = widest.unwrap();
        let (a, b) = (dirs[i], dirs[(i + 1) % n]);
        match class {
            2 => Self::pointed(b, a),
            1 => Self::half_plane(b),
            _ => Ok(Self::plane()),
        }
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn is_pointed_2d(&self) -> bool {
        self.kind == ConeKind::Pointed2D
    }

    pub fn det(&self) -> Option<i64> {
        self.is_pointed_2d().then(|| self.rays[0].cross(self.rays[1]))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det() == Some(1)
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.kind {
            ConeKind::Origin => p == LatticePoint::ORIGIN,
            ConeKind::Ray => {
                let u = self.rays[0];
                u.cross(p) == 0 && u.x * p.x + u.y * p.y >= 0
            }
            ConeKind::Line => self.rays[0].cross(p) == 0,
            ConeKind::HalfPlane => self.rays[0].cross(p) >= 0,
            ConeKind::Plane => true,
            ConeKind::Pointed2D => self.rays[0].cross(p) >= 0 && p.cross(self.rays[1]) >= 0,
        }
    }
}

impl fmt::Display for RationalCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{{", self.kind)?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// Sorts nonzero vectors by angle in `[0, 2 pi)`.
fn sort_by_angle(v: &mut [LatticePoint]) {
    let half = |p: &LatticePoint| if p.y > 0 || (p.y == 0 && p.x > 0) { 0 } else { 1 };
    v.sort_by(|a, b| half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(*b))));
}

/// The feasible cone `pos(P - v)` at a vertex `v`.
pub fn vertex_cone(p: &LatticePolygon, v: LatticePoint) -> Result<RationalCone> {
    let verts = p.vertices();
    let i = verts
        .iter()
        .position(|&w| w == v)
        .ok_or_else(|| Error::NotAVertex(v.to_string()))?;
    match p.dim() {
        0 => Ok(RationalCone::origin()),
        1 => RationalCone::ray(verts[1 - i] - v),
        _ => {
            let n = verts.len();
            let next = verts[(i + 1) % n] - v;
            let prev = verts[(i + n - 1) % n] - v;
            RationalCone::pointed(next, prev)
        }
    }
}

/// Unimodular cones `pos{u_(i-1), u_i}` between consecutive primitive points on
/// the boundary of `conv(K ∩ Z^2 \ {0})`, listed from the first ray to the second.
pub fn hilbert_decomposition(k: &RationalCone) -> Result<Vec<RationalCone>> {
    let chain = hilbert_basis(k)?;
    Ok(chain
        .windows(2)
        .map(|w| RationalCone {
            kind: ConeKind::Pointed2D,
            rays: vec![w[0], w[1]],
        })
        .collect())
}

/// The primitive boundary points `u = u_0, ..., u_m = v` of the decomposition.
pub fn hilbert_basis(k: &RationalCone) -> Result<Vec<LatticePoint>> {
    if !k.is_pointed_2d() {
        return Err(Error::NotPointed);
    }
    let (u, v) = (k.rays[0], k.rays[1]);
    // the relevant boundary lies in the triangle conv{0, u, v}
    let tri = LatticePolygon::from_points(&[LatticePoint::ORIGIN, u, v]);
    let mut pts: Vec<LatticePoint> = tri
        .lattice_points()
        .into_iter()
        .filter(|&p| p != LatticePoint::ORIGIN && p.gcd() == 1)
        .collect();
    pts.sort_by(|a, b| 0.cmp(&a.cross(*b)));
    let mut chain: Vec<LatticePoint> = Vec::with_capacity(pts.len());
    for p in pts {
        while chain.len() >= 2 && crate::lattice::orient(chain[chain.len() - 2], chain[chain.len() - 1], p) > 0 {
            chain.pop();
        }
        chain.push(p);
    }
    debug_assert_eq!(chain.first(), Some(&u));
    debug_assert_eq!(chain.last(), Some(&v));
    Ok(chain)
}

/// `{pos{u, u+v}, pos{u+v, v}}` for a unimodular `pos{u, v}`.
pub fn balanced_decomposition(c: &RationalCone) -> Result<(RationalCone, RationalCone)> {
    if !c.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let (u, v) = (c.rays[0], c.rays[1]);
    let w = u + v;
    Ok((
        RationalCone {
            kind: ConeKind::Pointed2D,
            rays: vec![u, w],
        },
        RationalCone {
            kind: ConeKind::Pointed2D,
            rays: vec![w, v],
        },
    ))
}
