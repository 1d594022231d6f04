use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{LatticePoint, LatticePolygon, UnimodularMap};

/// Seed of the probe set used by the dimension checks.
pub const DEFAULT_PROBE_SEED: u64 = 20240917;

fn hull(points: &[(i64, i64)]) -> LatticePolygon {
    let pts: Vec<LatticePoint> = points.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect();
    LatticePolygon::from_points(&pts)
}

/// `Δ`, `[0,1]^2`, `2Δ`, `conv{0, 2e1, e2}`, `conv{0, e1, 3e2}`, `conv{0, 2e1, 2e2, e1 + 2e2}`.
pub fn fixed_probes() -> Vec<LatticePolygon> {
    vec![
        LatticePolygon::standard_triangle(),
        LatticePolygon::unit_square(),
        LatticePolygon::standard_triangle().dilate(2),
        hull(&[(0, 0), (2, 0), (0, 1)]),
        hull(&[(0, 0), (1, 0), (0, 3)]),
        hull(&[(0, 0), (2, 0), (0, 2), (1, 2)]),
    ]
}

/// A two-dimensional hull of at most 7 random points in `[0, 6]^2`.
pub fn random_hull<R: Rng>(rng: &mut R) -> LatticePolygon {
    loop {
        let n = rng.gen_range(3..=7);
        let pts: Vec<LatticePoint> = (0..n)
            .map(|_| LatticePoint::new(rng.gen_range(0..=6), rng.gen_range(0..=6)))
            .collect();
        let p = LatticePolygon::from_points(&pts);
        if p.dim() == 2 {
            return p;
        }
    }
}

/// A product of two or three elementary unimodular maps.
pub fn random_unimodular_map<R: Rng>(rng: &mut R) -> UnimodularMap {
    let elementary = [
        [[1, 1], [0, 1]],
        [[1, -1], [0, 1]],
        [[1, 0], [1, 1]],
        [[1, 0], [-1, 1]],
        [[0, 1], [1, 0]],
        [[-1, 0], [0, 1]],
        [[1, 0], [0, -1]],
    ];
    let steps = rng.gen_range(2..=3);
    (0..steps).fold(UnimodularMap::IDENTITY, |acc, _| {
        let e = elementary[rng.gen_range(0..elementary.len())];
        acc.compose(&UnimodularMap::new(e).unwrap())
    })
}

pub fn random_translation<R: Rng>(rng: &mut R) -> LatticePoint {
    LatticePoint::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3))
}

/// The fixed probes and 10 random hulls, each followed by a random translate
/// and a random unimodular image.
pub fn probe_set(seed: u64) -> Vec<LatticePolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base = fixed_probes();
    for _ in 0..10 {
        base.push(random_hull(&mut rng));
    }
    let mut out = Vec::with_capacity(3 * base.len());
    for p in base {
        let v = random_translation(&mut rng);
        let phi = random_unimodular_map(&mut rng);
        out.push(p.translate(v));
        out.push(p.apply_map(&phi));
        out.push(p);
    }
    out
}
