use std::fmt;

use super::{orient, LatticePoint, UnimodularMap};

/// Convex lattice polygon of dimension 0, 1 or 2.
///
/// Vertices are exactly the extreme points, counterclockwise, starting from the
/// lexicographically least one. A segment stores its two endpoints in lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

/// Convex hull of a nonempty point set, canonicalized.
pub fn convex_hull(points: &[LatticePoint]) -> LatticePolygon {
    assert!(!points.is_empty(), "convex hull of an empty set");
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return LatticePolygon { vertices: pts };
    }
    let first = pts[0];
    let last = *pts.last().unwrap();
    if pts.iter().all(|&p| orient(first, last, p) == 0) {
        return LatticePolygon {
            vertices: vec![first, last],
        };
    }
    // monotone chain, dropping collinear points
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    LatticePolygon { vertices: lower }
}

/// `|det(b - a, c - a)| = 1`.
pub fn is_unimodular_triangle(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> bool {
    orient(a, b, c).abs() == 1
}

impl LatticePolygon {
    pub fn from_points(points: &[LatticePoint]) -> Self {
        convex_hull(points)
    }

    pub fn point(p: LatticePoint) -> Self {
        Self { vertices: vec![p] }
    }

    /// The standard triangle `conv{0, e1, e2}`.
    pub fn standard_triangle() -> Self {
        Self::from_points(&[LatticePoint::new(0, 0), LatticePoint::new(1, 0), LatticePoint::new(0, 1)])
    }

    pub fn unit_square() -> Self {
        Self::from_points(&[
            LatticePoint::new(0, 0),
            LatticePoint::new(1, 0),
            LatticePoint::new(0, 1),
            LatticePoint::new(1, 1),
        ])
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    pub fn is_vertex(&self, p: LatticePoint) -> bool {
        self.vertices.contains(&p)
    }

    /// Edges `(v_i, v_{i+1})`; a segment has one edge, a point none.
    pub fn edges(&self) -> Vec<(LatticePoint, LatticePoint)> {
        let n = self.vertices.len();
        match n {
            1 => vec![],
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => (0..n).map(|i| (self.vertices[i], self.vertices[(i + 1) % n])).collect(),
        }
    }

    pub fn twice_area(&self) -> i64 {
        if self.dim() < 2 {
            return 0;
        }
        let o = self.vertices[0];
        self.vertices
            .windows(2)
            .map(|w| orient(o, w[0], w[1]))
            .sum()
    }

    /// Number of lattice points on the relative boundary.
    pub fn boundary_count(&self) -> i64 {
        match self.dim() {
            0 => 1,
            1 => (self.vertices[1] - self.vertices[0]).gcd() + 1,
            _ => self.edges().iter().map(|&(a, b)| (b - a).gcd()).sum(),
        }
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.dim() {
            0 => self.vertices[0] == p,
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                orient(a, b, p) == 0 && (p - a).x * (b - a).x + (p - a).y * (b - a).y >= 0 && {
                    let ab = b - a;
                    let ap = p - a;
                    ap.x * ab.x + ap.y * ab.y <= ab.x * ab.x + ab.y * ab.y
                }
            }
            _ => self.edges().iter().all(|&(a, b)| orient(a, b, p) >= 0),
        }
    }

    /// All points of `P ∩ Z^2`, sorted by row (`y`) and then by `x`.
    ///
    /// Rows are scanned between the exact rational intersections with the edges,
    /// rounded inward.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        match self.dim() {
            0 => self.vertices.clone(),
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let g = (b - a).gcd();
                let step = LatticePoint::new((b.x - a.x) / g, (b.y - a.y) / g);
                let mut pts: Vec<_> = (0..=g).map(|k| a + k * step).collect();
                pts.sort_by_key(|p| (p.y, p.x));
                pts
            }
            _ => {
                let ymin = self.vertices.iter().map(|v| v.y).min().unwrap();
                let ymax = self.vertices.iter().map(|v| v.y).max().unwrap();
                let edges = self.edges();
                let mut pts = Vec::new();
                for y in ymin..=ymax {
                    let (lo, hi) = row_span(&edges, y);
                    pts.extend((lo..=hi).map(|x| LatticePoint::new(x, y)));
                }
                pts
            }
        }
    }

    pub fn lattice_point_count(&self) -> usize {
        match self.dim() {
            2 => {
                // Pick: A = I + B/2 - 1  =>  |P ∩ Z^2| = I + B = (2A + B + 2) / 2
                ((self.twice_area() + self.boundary_count() + 2) / 2) as usize
            }
            _ => self.boundary_count() as usize,
        }
    }

    pub fn dilate(&self, m: i64) -> Self {
        assert!(m >= 0, "dilation factor must be nonnegative");
        if m == 0 {
            return Self::point(LatticePoint::ORIGIN);
        }
        Self {
            vertices: self.vertices.iter().map(|&v| m * v).collect(),
        }
    }

    pub fn translate(&self, v: LatticePoint) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p + v).collect(),
        }
    }

    pub fn apply_map(&self, phi: &UnimodularMap) -> Self {
        let pts: Vec<_> = self.vertices.iter().map(|&p| phi.apply(p)).collect();
        convex_hull(&pts)
    }

    /// `-P`.
    pub fn reflect(&self) -> Self {
        self.apply_map(&UnimodularMap::NEG)
    }
}

/// Inclusive integer range of `x` on row `y` inside the polygon with the given CCW edges.
fn row_span(edges: &[(LatticePoint, LatticePoint)], y: i64) -> (i64, i64) {
    // Interval endpoints as rationals num/den; compare via i128 cross-multiplication.
    let mut lo: Option<(i128, i128)> = None;
    let mut hi: Option<(i128, i128)> = None;
    let mut update = |num: i128, den: i128| {
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        if lo.is_none_or(|(n, d)| num * d < n * den) {
            lo = Some((num, den));
        }
        if hi.is_none_or(|(n, d)| num * d > n * den) {
            hi = Some((num, den));
        }
    };
    for &(a, b) in edges {
        let (ylo, yhi) = (a.y.min(b.y), a.y.max(b.y));
        if y < ylo || y > yhi {
            continue;
        }
        if a.y == b.y {
            update(a.x as i128, 1);
            update(b.x as i128, 1);
        } else {
            let dy = (b.y - a.y) as i128;
            let num = a.x as i128 * dy + (y - a.y) as i128 * (b.x - a.x) as i128;
            update(num, dy);
        }
    }
    let (ln, ld) = lo.expect("row intersects polygon");
    let (hn, hd) = hi.expect("row intersects polygon");
    let ceil = ln.div_euclid(ld) + i128::from(ln.rem_euclid(ld) != 0);
    let floor = hn.div_euclid(hd);
    (ceil as i64, floor as i64)
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
