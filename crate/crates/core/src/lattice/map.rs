use std::fmt;

use super::LatticePoint;

/// A 2x2 integer matrix with determinant +1 or -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    m: [[i64; 2]; 2],
}

impl UnimodularMap {
    pub const IDENTITY: UnimodularMap = UnimodularMap { m: [[1, 0], [0, 1]] };
    pub const SWAP: UnimodularMap = UnimodularMap { m: [[0, 1], [1, 0]] };
    pub const NEG: UnimodularMap = UnimodularMap { m: [[-1, 0], [0, -1]] };

    /// Row-major entries; `None` unless the determinant is +1 or -1.
    pub fn new(m: [[i64; 2]; 2]) -> Option<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        (det == 1 || det == -1).then_some(Self { m })
    }

    /// The map sending `e1 -> c1` and `e2 -> c2`.
    pub fn from_columns(c1: LatticePoint, c2: LatticePoint) -> Option<Self> {
        Self::new([[c1.x, c2.x], [c1.y, c2.y]])
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.m
    }

    pub fn column(&self, j: usize) -> LatticePoint {
        LatticePoint::new(self.m[0][j], self.m[1][j])
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(
            self.m[0][0] * p.x + self.m[0][1] * p.y,
            self.m[1][0] * p.x + self.m[1][1] * p.y,
        )
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        let a = self.m;
        let b = other.m;
        let mut m = [[0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { m }
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let [[a, b], [c, e]] = self.m;
        Self {
            m: [[e * d, -b * d], [-c * d, a * d]],
        }
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Self { m: [[a, c], [b, d]] }
    }
}

impl fmt::Display for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}
