use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{orient, LatticePoint, LatticePolygon, UnimodularMap};
use crate::error::{Error, Result};

/// A unimodular triangle `phi * Δ + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularTriangle {
    pub map: UnimodularMap,
    pub shift: LatticePoint,
    pub vertices: [LatticePoint; 3],
}

impl UnimodularTriangle {
    /// `None` unless the triangle has twice-area 1.
    pub fn new(vertices: [LatticePoint; 3]) -> Option<Self> {
        let (map, shift) = triangle_frame(&vertices, canonical_anchor(&vertices))?;
        Some(Self { map, shift, vertices })
    }

    /// The frame anchored at vertex `anchor`, with the other two vertices in stored order.
    pub fn frame(&self, anchor: usize) -> (UnimodularMap, LatticePoint) {
        triangle_frame(&self.vertices, anchor).expect("unimodular triangle")
    }

    /// All six frames `(phi, v)` with `phi Δ + v` equal to this triangle.
    pub fn all_frames(&self) -> Vec<(UnimodularMap, LatticePoint)> {
        let v = self.vertices;
        let mut out = Vec::with_capacity(6);
        for a in 0..3 {
            let (b, c) = ((a + 1) % 3, (a + 2) % 3);
            for (p, q) in [(b, c), (c, b)] {
                let map = UnimodularMap::from_columns(v[p] - v[a], v[q] - v[a]).expect("unimodular");
                out.push((map, v[a]));
            }
        }
        out
    }

    fn key(&self) -> [LatticePoint; 3] {
        let mut k = self.vertices;
        k.sort();
        k
    }
}

fn canonical_anchor(v: &[LatticePoint; 3]) -> usize {
    (0..3).min_by_key(|&i| v[i]).unwrap()
}

/// A frame `(phi, v)` with `phi Δ + v` equal to the triangle, anchored at the given
/// vertex. The remaining two vertices become the images of `e1` and `e2` in
/// counterclockwise order, so the map has determinant +1. `None` if the
/// triangle is not unimodular.
pub fn triangle_frame(vertices: &[LatticePoint; 3], anchor: usize) -> Option<(UnimodularMap, LatticePoint)> {
    let a = vertices[anchor];
    let mut rest: Vec<LatticePoint> = (0..3).filter(|&i| i != anchor).map(|i| vertices[i]).collect();
    if orient(a, rest[0], rest[1]) < 0 {
        rest.swap(0, 1);
    }
    let map = UnimodularMap::from_columns(rest[0] - a, rest[1] - a)?;
    Some((map, a))
}

/// A unimodular triangulation of a two-dimensional lattice polygon.
#[derive(Clone, Debug)]
pub struct Triangulation {
    triangles: Vec<UnimodularTriangle>,
    parent: LatticePolygon,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.key_set() == other.key_set()
    }
}

impl Triangulation {
    pub fn triangles(&self) -> &[UnimodularTriangle] {
        &self.triangles
    }

    pub fn parent(&self) -> &LatticePolygon {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    fn key_set(&self) -> BTreeSet<[LatticePoint; 3]> {
        self.triangles.iter().map(|t| t.key()).collect()
    }

    /// Builds a triangulation from vertex triples, checking it with [`Triangulation::validate`].
    pub fn from_triples(parent: LatticePolygon, triples: &[[LatticePoint; 3]]) -> Result<Self> {
        let triangles = triples
            .iter()
            .map(|t| {
                UnimodularTriangle::new(*t)
                    .ok_or_else(|| Error::Parse(format!("triangle {:?} is not unimodular", t)))
            })
            .collect::<Result<Vec<_>>>()?;
        let t = Self { triangles, parent };
        t.validate().map_err(Error::Parse)?;
        Ok(t)
    }

    pub fn triples(&self) -> Vec<[LatticePoint; 3]> {
        self.triangles.iter().map(|t| t.vertices).collect()
    }

    /// Checks the covering and intersection conditions.
    ///
    /// Triangles must be unimodular, lie in the parent, have pairwise disjoint
    /// interiors, and have total area equal to the parent's. Unimodular triangles
    /// contain no lattice points besides their vertices, so disjoint interiors
    /// already force every pairwise intersection to be a common face.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.parent.dim() < 2 {
            return Err("parent polygon is not two-dimensional".into());
        }
        let mut total = 0;
        for t in &self.triangles {
            let [a, b, c] = t.vertices;
            let area = orient(a, b, c).abs();
            if area != 1 {
                return Err(format!("triangle {:?} has twice-area {area}", t.vertices));
            }
            if !t.vertices.iter().all(|&v| self.parent.contains(v)) {
                return Err(format!("triangle {:?} leaves the polygon", t.vertices));
            }
            let (phi, v) = (t.map, t.shift);
            let image = [v, v + phi.column(0), v + phi.column(1)];
            let mut k1 = image;
            k1.sort();
            if k1 != t.key() {
                return Err(format!("frame of triangle {:?} is inconsistent", t.vertices));
            }
            total += area;
        }
        if total != self.parent.twice_area() {
            return Err(format!(
                "triangles cover twice-area {total}, polygon has {}",
                self.parent.twice_area()
            ));
        }
        for (i, s) in self.triangles.iter().enumerate() {
            for t in &self.triangles[i + 1..] {
                if interiors_overlap(&s.vertices, &t.vertices) {
                    return Err(format!("triangles {:?} and {:?} overlap", s.vertices, t.vertices));
                }
            }
        }
        Ok(())
    }

    /// Edges shared by exactly two triangles.
    pub fn interior_edges(&self) -> Vec<(LatticePoint, LatticePoint)> {
        let mut counts: HashMap<(LatticePoint, LatticePoint), usize> = HashMap::new();
        for t in &self.triangles {
            for e in triangle_edges(&t.vertices) {
                *counts.entry(e).or_default() += 1;
            }
        }
        let mut edges: Vec<_> = counts.into_iter().filter(|&(_, c)| c == 2).map(|(e, _)| e).collect();
        edges.sort();
        edges
    }

    /// Exchanges the diagonal of the quadrilateral formed by the two triangles
    /// sharing `edge`.
    pub fn apply_flip(&self, edge: (LatticePoint, LatticePoint)) -> Result<Self> {
        let (a, b) = edge;
        let not_flippable = || Error::NotFlippable(format!("{a}-{b}"));
        let owners: Vec<usize> = self
            .triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| t.vertices.contains(&a) && t.vertices.contains(&b))
            .map(|(i, _)| i)
            .collect();
        if owners.len() != 2 || a == b {
            return Err(not_flippable());
        }
        let third = |i: usize| {
            *self.triangles[i]
                .vertices
                .iter()
                .find(|&&v| v != a && v != b)
                .unwrap()
        };
        let (c, d) = (third(owners[0]), third(owners[1]));
        // strictly convex quadrilateral: each diagonal separates the other pair
        let sep = |p, q, r, s| (orient(p, q, r) as i128) * (orient(p, q, s) as i128) < 0;
        if !sep(a, b, c, d) || !sep(c, d, a, b) {
            return Err(not_flippable());
        }
        let mut triangles = self.triangles.clone();
        triangles[owners[0]] = UnimodularTriangle::new([c, d, a]).ok_or_else(not_flippable)?;
        triangles[owners[1]] = UnimodularTriangle::new([c, d, b]).ok_or_else(not_flippable)?;
        Ok(Self {
            triangles,
            parent: self.parent.clone(),
        })
    }

    /// Applies up to `count` random flips; non-flippable candidates are skipped.
    pub fn random_flips<R: Rng>(&self, rng: &mut R, count: usize) -> Self {
        let mut t = self.clone();
        for _ in 0..count {
            let mut edges = t.interior_edges();
            edges.shuffle(rng);
            if let Some(next) = edges.into_iter().find_map(|e| t.apply_flip(e).ok()) {
                t = next;
            }
        }
        t
    }
}

fn triangle_edges(v: &[LatticePoint; 3]) -> [(LatticePoint, LatticePoint); 3] {
    let e = |p: LatticePoint, q: LatticePoint| if p < q { (p, q) } else { (q, p) };
    [e(v[0], v[1]), e(v[1], v[2]), e(v[0], v[2])]
}

/// Separating-axis test on the edge normals; touching triangles do not overlap.
fn interiors_overlap(s: &[LatticePoint; 3], t: &[LatticePoint; 3]) -> bool {
    let separated_by = |tri: &[LatticePoint; 3], other: &[LatticePoint; 3]| {
        (0..3).any(|i| {
            let (p, q, r) = (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);
            let inside = orient(p, q, r).signum();
            other.iter().all(|&x| orient(p, q, x).signum() * inside <= 0)
        })
    };
    !(separated_by(s, t) || separated_by(t, s))
}

/// Placing triangulation: lattice points are inserted in lexicographic order and
/// each new point is coned over the boundary edges visible from it. Every lattice
/// point of `P` becomes a vertex, so every triangle is empty and hence unimodular.
pub fn unimodular_triangulate(p: &LatticePolygon) -> Result<Triangulation> {
    if p.dim() < 2 {
        return Err(Error::NotFullDim);
    }
    let mut points = p.lattice_points();
    points.sort();
    let mut chain: Vec<LatticePoint> = Vec::new();
    let mut tris: Vec<[LatticePoint; 3]> = Vec::new();
    for q in points {
        if tris.is_empty() {
            if chain.len() < 2 || orient(chain[0], chain[1], q) == 0 {
                chain.push(q);
            } else {
                for w in chain.windows(2) {
                    tris.push(ccw([w[0], w[1], q]));
                }
            }
            continue;
        }
        // edge -> (opposite vertex, number of incident triangles)
        let mut incident: HashMap<(LatticePoint, LatticePoint), (LatticePoint, usize)> = HashMap::new();
        for t in &tris {
            for i in 0..3 {
                let (u, v, w) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
                let key = if u < v { (u, v) } else { (v, u) };
                incident.entry(key).or_insert((w, 0)).1 += 1;
            }
        }
        let mut boundary: Vec<_> = incident
            .into_iter()
            .filter(|&(_, (_, c))| c == 1)
            .map(|(e, (w, _))| (e, w))
            .collect();
        boundary.sort();
        for ((u, v), w) in boundary {
            let inner = orient(u, v, w).signum();
            let outer = orient(u, v, q).signum();
            if inner * outer < 0 {
                tris.push(ccw([u, v, q]));
            }
        }
    }
    let triangles = tris
        .into_iter()
        .map(|t| UnimodularTriangle::new(t).expect("placing triangulation of all lattice points is unimodular"))
        .collect();
    Ok(Triangulation {
        triangles,
        parent: p.clone(),
    })
}

fn ccw(t: [LatticePoint; 3]) -> [LatticePoint; 3] {
    if orient(t[0], t[1], t[2]) < 0 {
        [t[0], t[2], t[1]]
    } else {
        t
    }
}
