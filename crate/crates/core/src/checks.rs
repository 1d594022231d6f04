//! Named property checks over seeded random inputs, grouped by module.
//!
//! Each check returns `Err` with a short description of the first violation.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    bernoulli, exp_series, graded_divide, int, linear_form_power, rat, BivariatePolynomial, LinearForm, Rational,
    TruncatedSeries,
};
use crate::cone::{
    balanced_decomposition, brion_lattice_gen, exp_integral, exp_integral_cone, hilbert_basis, hilbert_decomposition,
    lattice_exp_sum, primitive, zeta_p, ConeValuationInput, RationalCone,
};
use crate::invariant::{
    generators_g, generators_h, group_elements, image_dim_delta_rho, invariant_basis, p23, p23_brute_force,
    pairing_subspace, GroupId,
};
use crate::lattice::{orient, unimodular_triangulate, LatticePoint, LatticePolygon};
use crate::linalg;
use crate::valuation::{
    basis_generator, discrete_moment, ehrhart_tensor_coeffs, probe_set, random_hull, random_translation,
    random_unimodular_map, z_f, z_f_on, TwoHomogeneousLift,
};

pub type CheckResult = std::result::Result<(), String>;

/// Shared inputs: the seed and the probe polygons derived from it.
pub struct CheckContext {
    pub seed: u64,
    pub probes: Vec<LatticePolygon>,
}

impl CheckContext {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            probes: probe_set(seed),
        }
    }

    /// A generator seeded from the context seed and the check name, so checks
    /// are replayable one at a time.
    pub fn rng(&self, salt: &str) -> ChaCha8Rng {
        // FNV-1a, stable across toolchains
        let h = salt
            .bytes()
            .fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }
}

pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub run: fn(&CheckContext) -> CheckResult,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub module: &'static str,
    pub name: &'static str,
    pub result: CheckResult,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn p(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

fn random_poly<R: Rng>(rng: &mut R, max_deg: u32) -> BivariatePolynomial {
    let mut f = BivariatePolynomial::zero();
    for _ in 0..rng.gen_range(1..=6) {
        let d = rng.gen_range(0..=max_deg);
        let i = rng.gen_range(0..=d);
        f.add_term((i, d - i), rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
    }
    f
}

fn random_form<R: Rng>(rng: &mut R) -> LinearForm {
    loop {
        let l = LinearForm::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        if !l.is_zero() {
            return l;
        }
    }
}

fn to_rational(v: LatticePoint) -> (Rational, Rational) {
    (int(v.x), int(v.y))
}

// ---------------------------------------------------------------------------
// Valuations under test

/// A valuation with values in truncated series; polynomial-valued ones use their rank.
pub struct NamedValuation {
    pub name: String,
    pub simple: bool,
    eval: Box<dyn Fn(&LatticePolygon) -> crate::Result<TruncatedSeries> + Send + Sync>,
}

impl NamedValuation {
    fn poly<F>(name: &str, rank: u32, simple: bool, f: F) -> Self
    where
        F: Fn(&LatticePolygon) -> crate::Result<BivariatePolynomial> + Send + Sync + 'static,
    {
        Self {
            name: name.to_string(),
            simple,
            eval: Box::new(move |p| f(p).map(|v| TruncatedSeries::from_poly(&v, rank as usize))),
        }
    }

    fn series<F>(name: &str, simple: bool, f: F) -> Self
    where
        F: Fn(&LatticePolygon) -> crate::Result<TruncatedSeries> + Send + Sync + 'static,
    {
        Self {
            name: name.to_string(),
            simple,
            eval: Box::new(f),
        }
    }

    pub fn eval(&self, p: &LatticePolygon) -> std::result::Result<TruncatedSeries, String> {
        lift((self.eval)(p)).map_err(|e| format!("{}: {e}", self.name))
    }
}

fn zeta_input(d: i32) -> ConeValuationInput {
    let f = pairing_subspace(d as u32 + 1).expect("odd degree")[0].clone();
    ConeValuationInput::from_generator(&f, d).expect("pairing subspace element")
}

/// Every implemented valuation, at small ranks and truncations.
pub fn valuations_under_test() -> Vec<NamedValuation> {
    let f3 = basis_generator(0, 1);
    let f5 = basis_generator(1, 1);
    let lift3 = TwoHomogeneousLift::new(&f3, 3).expect("degree-3 generator lifts");
    let lift5 = TwoHomogeneousLift::new(&f5, 5).expect("degree-5 generator lifts");
    let (z2, z4) = (zeta_input(2), zeta_input(4));
    let (g31, g03) = (basis_generator(3, 1), basis_generator(0, 3));
    vec![
        NamedValuation::poly("L^2", 2, false, |p| Ok(discrete_moment(p, 2))),
        NamedValuation::poly("L^3", 3, false, |p| Ok(discrete_moment(p, 3))),
        NamedValuation::poly("L_1^3", 3, false, |p| Ok(ehrhart_tensor_coeffs(p, 3).coeff(1))),
        NamedValuation::poly("L_2^4", 4, false, |p| Ok(ehrhart_tensor_coeffs(p, 4).coeff(2))),
        NamedValuation::poly("Z_f^3", 3, true, move |p| z_f(p, &f3, 3)),
        NamedValuation::poly("L_1^{6,3}", 9, true, move |p| z_f(p, &g31, 9)),
        NamedValuation::poly("L_1^{0,9}", 9, true, move |p| z_f(p, &g03, 9)),
        NamedValuation::poly("Z_2^4", 4, true, move |p| lift3.eval(p)),
        NamedValuation::poly("Z_2^6", 6, true, move |p| lift5.eval(p)),
        NamedValuation::series("zeta d=2", true, move |p| zeta_p(p, &z2, 5)),
        NamedValuation::series("zeta d=4", true, move |p| zeta_p(p, &z4, 7)),
        NamedValuation::series("lattice exp sum", false, |p| Ok(lattice_exp_sum(p, 4))),
        NamedValuation::series("exp integral", false, |p| Ok(exp_integral(p, 4))),
    ]
}

// ---------------------------------------------------------------------------
// exact-algebra

fn compose_law(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("compose_law");
    for _ in 0..40 {
        let f = random_poly(&mut rng, 6);
        let (phi, psi) = (random_unimodular_map(&mut rng), random_unimodular_map(&mut rng));
        ensure(
            f.compose_linear(&phi).compose_linear(&psi) == f.compose_linear(&psi.compose(&phi)),
            || format!("action law fails for f = {f}, phi = {phi}, psi = {psi}"),
        )?;
    }
    Ok(())
}

fn graded_divide_round_trip(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("graded_divide_round_trip");
    for _ in 0..30 {
        let n = rng.gen_range(2..=6);
        let s = TruncatedSeries::from_poly(&random_poly(&mut rng, n as u32), n);
        let denoms: Vec<LinearForm> = (0..rng.gen_range(1..=3)).map(|_| random_form(&mut rng)).collect();
        let k = denoms.len();
        let d = denoms.iter().fold(BivariatePolynomial::one(), |acc, l| &acc * &l.to_poly());
        let num = TruncatedSeries::from_poly(&(&s.to_poly() * &d), n + k);
        let q = lift(graded_divide(&num, &denoms))?;
        ensure(q == s, || format!("S D / D != S for S = {s}"))?;
    }
    Ok(())
}

fn exp_additivity(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("exp_additivity");
    for _ in 0..20 {
        let n = rng.gen_range(0..=8);
        let v = (rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)), int(rng.gen_range(-5..=5)));
        let w = (int(rng.gen_range(-5..=5)), rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        let sum = (&v.0 + &w.0, &v.1 + &w.1);
        let lhs = exp_series((&sum.0, &sum.1), n);
        let rhs = exp_series((&v.0, &v.1), n).mul(&exp_series((&w.0, &w.1), n));
        ensure(lhs == rhs, || format!("exp(v + w) != exp(v) exp(w) at truncation {n}"))?;
    }
    Ok(())
}

fn linear_form_powers(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("linear_form_powers");
    for _ in 0..20 {
        let v = (rng.gen_range(-6..=6), rng.gen_range(-6..=6));
        let (r, s) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        ensure(
            &linear_form_power(v, r) * &linear_form_power(v, s) == linear_form_power(v, r + s),
            || format!("power law fails for v = {v:?}, r = {r}, s = {s}"),
        )?;
    }
    Ok(())
}

fn odd_bernoulli_vanish(_: &CheckContext) -> CheckResult {
    for l in (3..=19).step_by(2) {
        ensure(bernoulli(l).is_zero(), || format!("B_{l} != 0"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// lattice-geometry

fn triangulations_valid(ctx: &CheckContext) -> CheckResult {
    for p in &ctx.probes {
        let t = lift(unimodular_triangulate(p))?;
        t.validate().map_err(|e| format!("triangulation of {p}: {e}"))?;
        ensure(t.len() as i64 == p.twice_area(), || format!("triangle count of {p}"))?;
    }
    Ok(())
}

fn flips_preserve_region(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("flips_preserve_region");
    for p in &ctx.probes {
        let t = lift(unimodular_triangulate(p))?;
        let mut edges = t.interior_edges();
        edges.shuffle(&mut rng);
        for e in edges.into_iter().take(5) {
            if let Ok(f) = t.apply_flip(e) {
                ensure(f.len() == t.len(), || format!("flip changed the triangle count on {p}"))?;
                f.validate().map_err(|err| format!("flipped triangulation of {p}: {err}"))?;
            }
        }
    }
    Ok(())
}

fn ehrhart_count_fit(ctx: &CheckContext) -> CheckResult {
    for p in &ctx.probes {
        let c: Vec<i64> = (0..=4).map(|m| p.dilate(m).lattice_points().len() as i64).collect();
        // second differences of a quadratic are constant
        let d2 = c[2] - 2 * c[1] + c[0];
        ensure(
            c[3] - 2 * c[2] + c[1] == d2 && c[4] - 2 * c[3] + c[2] == d2,
            || format!("lattice point counts of dilates of {p} are not quadratic: {c:?}"),
        )?;
    }
    Ok(())
}

fn boundary_linear(ctx: &CheckContext) -> CheckResult {
    for p in &ctx.probes {
        let b: Vec<i64> = (1..=5).map(|m| p.dilate(m).boundary_count()).collect();
        ensure(b.windows(2).all(|w| w[1] - w[0] == b[0]), || {
            format!("boundary counts of dilates of {p} are not linear: {b:?}")
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// invariant-theory

fn reynolds_projection(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("reynolds_projection");
    for id in [GroupId::G, GroupId::D, GroupId::H] {
        let g = group_elements(id);
        for _ in 0..8 {
            let d = rng.gen_range(0..=14);
            let f = random_poly(&mut rng, d).homogeneous_part(d);
            let r = g.reynolds(&f);
            ensure(g.reynolds(&r) == r, || format!("Reynolds for {id} is not idempotent on {f}"))?;
            ensure(g.is_invariant(&r), || format!("Reynolds image of {f} is not {id}-invariant"))?;
        }
    }
    Ok(())
}

fn invariant_dimensions(_: &CheckContext) -> CheckResult {
    for r in 0..=20 {
        let n = invariant_basis(GroupId::G, r).len() as u32;
        ensure(n == p23(r), || format!("dim R[x,y]_{r}^G = {n}, expected {}", p23(r)))?;
    }
    Ok(())
}

fn p23_closed_form(_: &CheckContext) -> CheckResult {
    for r in 0..=200 {
        ensure(p23(r) == p23_brute_force(r), || format!("p23({r})"))?;
    }
    Ok(())
}

fn delta_rho_rank(_: &CheckContext) -> CheckResult {
    for r in (3..=31).step_by(2) {
        let k = lift(image_dim_delta_rho(r))?;
        ensure(k == (r as usize + 3) / 4, || format!("rank of delta o rho at r = {r} is {k}"))?;
    }
    Ok(())
}

fn pairing_dimensions(_: &CheckContext) -> CheckResult {
    for r in (3..=15).step_by(2) {
        let n = lift(pairing_subspace(r))?.len() as u32;
        let via_rank = p23(r) + p23(r + 1) - (r + 3) / 4;
        ensure(n == p23((r + 1) / 2) && n == via_rank, || {
            format!("pairing subspace at r = {r} has dimension {n}")
        })?;
    }
    Ok(())
}

fn generator_identities(_: &CheckContext) -> CheckResult {
    let (p2, p3) = generators_g();
    let (q, qt) = generators_h();
    ensure(&qt - &q == p2, || "q~ - q != p2".into())?;
    let a = &qt + &q.scale(&int(2));
    let b = &qt.scale(&int(2)) - &q.scale(&int(5));
    ensure(p3.pow(2).scale(&int(4)) == &a * &b.pow(2), || {
        "4 p3^2 != (q~ + 2q)(2q~ - 5q)^2".into()
    })
}

// ---------------------------------------------------------------------------
// valuation-engine

/// Pairs `(P, Q)` with convex union: axis-split rectangles and polygons cut
/// along a chord between boundary lattice points.
pub fn split_pairs<R: Rng>(rng: &mut R, count: usize) -> Vec<(LatticePolygon, LatticePolygon)> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count / 2 {
        let (a, b) = (rng.gen_range(2..=4), rng.gen_range(1..=3));
        let s = rng.gen_range(1..a);
        let v = random_translation(rng);
        let rect = |x0, x1, y0, y1| LatticePolygon::from_points(&[p(x0, y0), p(x1, y0), p(x0, y1), p(x1, y1)]);
        let (l, r) = if rng.gen_bool(0.5) {
            (rect(0, s, 0, b), rect(s, a, 0, b))
        } else {
            (rect(0, b, 0, s), rect(0, b, s, a))
        };
        out.push((l.translate(v), r.translate(v)));
    }
    while out.len() < count {
        let poly = random_hull(rng);
        let boundary: Vec<LatticePoint> = poly
            .lattice_points()
            .into_iter()
            .filter(|&q| poly.edges().iter().any(|&(a, b)| orient(a, b, q) == 0))
            .collect();
        let (u, w) = (*boundary.choose(rng).unwrap(), *boundary.choose(rng).unwrap());
        if u == w {
            continue;
        }
        let side: Vec<i64> = poly.vertices().iter().map(|&v| orient(u, w, v)).collect();
        if side.iter().all(|&o| o >= 0) || side.iter().all(|&o| o <= 0) {
            continue;
        }
        let half = |sign: i64| {
            let mut pts: Vec<LatticePoint> = poly
                .vertices()
                .iter()
                .zip(&side)
                .filter(|(_, &o)| o * sign >= 0)
                .map(|(&v, _)| v)
                .collect();
            pts.extend([u, w]);
            LatticePolygon::from_points(&pts)
        };
        out.push((half(1), half(-1)));
    }
    out
}

/// Union and intersection of a pair from [`split_pairs`].
fn union_and_meet(a: &LatticePolygon, b: &LatticePolygon) -> (LatticePolygon, LatticePolygon) {
    let all: Vec<LatticePoint> = a.vertices().iter().chain(b.vertices()).copied().collect();
    let common: Vec<LatticePoint> = a.lattice_points().into_iter().filter(|&q| b.contains(q)).collect();
    (LatticePolygon::from_points(&all), LatticePolygon::from_points(&common))
}

fn valuation_law(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("valuation_law");
    let pairs = split_pairs(&mut rng, 60);
    for z in valuations_under_test() {
        for (a, b) in &pairs {
            let (u, m) = union_and_meet(a, b);
            let lhs = z.eval(&u)?.add(&z.eval(&m)?);
            let rhs = z.eval(a)?.add(&z.eval(b)?);
            ensure(lhs == rhs, || format!("{}: valuation law fails for {a} and {b}", z.name))?;
        }
    }
    Ok(())
}

fn gl2z_equivariance(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("gl2z_equivariance");
    for z in valuations_under_test() {
        for k in 0..20 {
            let p = &ctx.probes[k % ctx.probes.len()];
            let phi = random_unimodular_map(&mut rng);
            ensure(z.eval(&p.apply_map(&phi))? == z.eval(p)?.compose_linear(&phi), || {
                format!("{}: Z(phi P) != Z(P) o phi^T for P = {p}, phi = {phi}", z.name)
            })?;
        }
    }
    Ok(())
}

fn triangulation_independence(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("triangulation_independence");
    let f3 = basis_generator(0, 1);
    let g31 = basis_generator(3, 1);
    let lift3 = lift(TwoHomogeneousLift::new(&f3, 3))?;
    for p in &ctx.probes {
        let t = lift(unimodular_triangulate(p))?;
        let base = (z_f_on(&t, &f3), z_f_on(&t, &g31), lift3.eval_on(&t));
        for _ in 0..10 {
            let steps = rng.gen_range(1..=12);
            let v = t.random_flips(&mut rng, steps);
            ensure((z_f_on(&v, &f3), z_f_on(&v, &g31), lift3.eval_on(&v)) == base, || {
                format!("values on {p} depend on the triangulation")
            })?;
        }
        // every frame of every triangle
        for tri in t.triangles() {
            for (phi, _) in tri.all_frames() {
                ensure(f3.compose_linear(&phi) == f3.compose_linear(&tri.map), || {
                    format!("Z_f depends on the frame of {:?}", tri.vertices)
                })?;
            }
        }
    }
    Ok(())
}

fn simple_valuations_vanish(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("simple_valuations_vanish");
    let mut low = vec![LatticePolygon::point(p(0, 0))];
    for _ in 0..6 {
        let a = p(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        let b = p(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        low.push(LatticePolygon::from_points(&[a, b]));
    }
    for z in valuations_under_test().into_iter().filter(|z| z.simple) {
        for q in &low {
            ensure(z.eval(q)?.is_zero(), || format!("{} does not vanish on {q}", z.name))?;
        }
    }
    Ok(())
}

fn translation_behavior(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("translation_behavior");
    for (f, r) in [(basis_generator(0, 1), 3), (basis_generator(1, 1), 5)] {
        let lift2 = lift(TwoHomogeneousLift::new(&f, r))?;
        for _ in 0..15 {
            let q = random_hull(&mut rng);
            let v = random_translation(&mut rng);
            let z1 = lift(z_f(&q, &f, r))?;
            ensure(lift(z_f(&q.translate(v), &f, r))? == z1, || format!("Z_f^{r} is not translation invariant"))?;
            let shift = BivariatePolynomial::linear(int(v.x), int(v.y));
            ensure(
                lift(lift2.eval(&q.translate(v)))? == &lift(lift2.eval(&q))? + &(&z1 * &shift),
                || format!("Z_2^{}(P + v) != Z_2(P) + Z_1(P) v for P = {q}, v = {v}", r + 1),
            )?;
        }
    }
    Ok(())
}

fn oddness(ctx: &CheckContext) -> CheckResult {
    for (f, r) in [(basis_generator(0, 1), 3), (basis_generator(3, 1), 9), (basis_generator(0, 3), 9)] {
        for q in &ctx.probes {
            ensure(lift(z_f(&q.reflect(), &f, r))? == -lift(z_f(q, &f, r))?, || {
                format!("Z_f^{r}(-P) != -Z_f^{r}(P) for P = {q}")
            })?;
        }
    }
    Ok(())
}

fn ehrhart_decomposition(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("ehrhart_decomposition");
    for q in ctx.probes.iter().take(16) {
        for r in 0..=4 {
            let table = ehrhart_tensor_coeffs(q, r);
            let sum: BivariatePolynomial = table.coeffs.iter().cloned().sum();
            ensure(sum == discrete_moment(q, r), || format!("sum of L_i^{r}({q}) != L^{r}"))?;
            if r >= 1 {
                ensure(table.coeff(0).is_zero(), || format!("L_0^{r}({q}) != 0"))?;
            }
            let v = random_translation(&mut rng);
            let expanded: BivariatePolynomial = (0..=r)
                .map(|j| {
                    let c = Rational::new(One::one(), crate::algebra::factorial(j));
                    (&discrete_moment(q, r - j) * &linear_form_power((v.x, v.y), j)).scale(&c)
                })
                .sum();
            ensure(discrete_moment(&q.translate(v), r) == expanded, || {
                format!("L^{r}({q} + {v}) does not expand through the lower moments")
            })?;
        }
    }
    Ok(())
}

fn pick_consistency(ctx: &CheckContext) -> CheckResult {
    for q in &ctx.probes {
        let t = ehrhart_tensor_coeffs(q, 0);
        let c = |i| t.coeff(i).coeff(0, 0);
        ensure(c(2) == rat(q.twice_area(), 2), || format!("L_2^0({q}) != area"))?;
        ensure(c(1) == rat(q.boundary_count(), 2), || format!("L_1^0({q}) != boundary / 2"))?;
        ensure(c(0) == int(1), || format!("L_0^0({q}) != 1"))?;
    }
    Ok(())
}

fn faulhaber_nonvanishing(_: &CheckContext) -> CheckResult {
    let seg = LatticePolygon::from_points(&[p(0, 0), p(1, 0)]);
    for r in 0..=8u32 {
        let t = ehrhart_tensor_coeffs(&seg, r);
        for i in (1..=r + 1).filter(|i| (r + 2 - i) % 2 == 1) {
            ensure(!t.coeff(i).is_zero(), || format!("L_{i}^{r}([0, e1]) = 0"))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// cone-engine

fn random_pointed_cone<R: Rng>(rng: &mut R) -> RationalCone {
    loop {
        let u = p(rng.gen_range(-12..=12), rng.gen_range(-12..=12));
        let v = p(rng.gen_range(-12..=12), rng.gen_range(-12..=12));
        if u.cross(v) == 0 {
            continue;
        }
        if let (Ok(u), Ok(v)) = (primitive(u), primitive(v)) {
            return RationalCone::pointed(u, v).expect("independent rays");
        }
    }
}

/// Irreducible elements of the semigroup `K ∩ Z^2`, found by enumerating the
/// fundamental parallelogram of the two rays.
pub fn irreducible_elements(k: &RationalCone) -> BTreeSet<LatticePoint> {
    let (u, v) = (k.rays()[0], k.rays()[1]);
    let det = u.cross(v);
    let xs = [0, u.x, v.x, u.x + v.x];
    let ys = [0, u.y, v.y, u.y + v.y];
    let mut pts = Vec::new();
    for x in *xs.iter().min().unwrap()..=*xs.iter().max().unwrap() {
        for y in *ys.iter().min().unwrap()..=*ys.iter().max().unwrap() {
            let w = p(x, y);
            // w = s u + t v with s = det(w, v) / det, t = det(u, w) / det
            let (s, t) = (w.cross(v) * det.signum(), u.cross(w) * det.signum());
            if (x, y) != (0, 0) && (0..=det.abs()).contains(&s) && (0..=det.abs()).contains(&t) {
                pts.push(w);
            }
        }
    }
    let set: BTreeSet<LatticePoint> = pts.iter().copied().collect();
    pts.iter()
        .copied()
        .filter(|&w| !pts.iter().any(|&a| a != w && set.contains(&(w - a))))
        .collect()
}

fn hilbert_decomposition_valid(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("hilbert_decomposition_valid");
    for _ in 0..25 {
        let k = random_pointed_cone(&mut rng);
        let dec = lift(hilbert_decomposition(&k))?;
        ensure(dec.iter().all(|c| c.det().map(i64::abs) == Some(1)), || format!("non-unimodular piece in can({k})"))?;
        for w in dec.windows(2) {
            let a: BTreeSet<_> = w[0].rays().iter().collect();
            let b: BTreeSet<_> = w[1].rays().iter().collect();
            ensure(a.intersection(&b).count() == 1, || format!("consecutive cones of can({k}) share != 1 ray"))?;
        }
        for _ in 0..60 {
            let q = p(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
            ensure(k.contains(q) == dec.iter().any(|c| c.contains(q)), || {
                format!("can({k}) and K disagree at {q}")
            })?;
        }
        let basis: BTreeSet<LatticePoint> = lift(hilbert_basis(&k))?.into_iter().collect();
        ensure(basis == irreducible_elements(&k), || format!("Hilbert basis of {k} differs from brute force"))?;
    }
    Ok(())
}

fn refinement_law(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("refinement_law");
    for d in [2, 4, 6] {
        let input = zeta_input(d);
        let n = input.numerator();
        for _ in 0..10 {
            let k = random_pointed_cone(&mut rng);
            for c in lift(hilbert_decomposition(&k))? {
                let (c1, c2) = lift(balanced_decomposition(&c))?;
                let form = |q: LatticePoint| BivariatePolynomial::linear(int(q.x), int(q.y));
                let (a, b) = (form(c.rays()[0]), form(c.rays()[1]));
                let m = form(c1.rays()[1]);
                // N(a,b)/(ab) = N(a,m)/(am) + N(m,b)/(mb), cleared by a b m
                let lhs = &m * &n.substitute(&a, &b);
                let rhs = &(&b * &n.substitute(&a, &m)) + &(&a * &n.substitute(&m, &b));
                ensure(c2.rays()[0] == c1.rays()[1] && lhs == rhs, || {
                    format!("refinement of {c} changes the sum for d = {d}")
                })?;
            }
        }
        ensure(input.refinement_defect().is_zero(), || format!("functional equation fails for d = {d}"))?;
    }
    Ok(())
}

fn halfplane_split(_: &CheckContext) -> CheckResult {
    for d in [2, 4, 6] {
        ensure(zeta_input(d).halfplane_defect().is_zero(), || format!("R(x,y) + R(-x,y) != 0 for d = {d}"))?;
    }
    Ok(())
}

fn zeta_dilativity(ctx: &CheckContext) -> CheckResult {
    for d in [2, 4] {
        let input = zeta_input(d);
        let n = d as usize + 3;
        for q in ctx.probes.iter() {
            let base = lift(zeta_p(q, &input, n))?;
            for m in 1..=4i64 {
                let expected = base.dilate_arguments(&int(m)).scale(&rat(1, m.pow(d as u32)));
                ensure(lift(zeta_p(&q.dilate(m), &input, n))? == expected, || {
                    format!("zeta(mP) is not d-dilative for d = {d}, m = {m}, P = {q}")
                })?;
            }
        }
    }
    Ok(())
}

fn zeta_translation(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("zeta_translation");
    let input = zeta_input(2);
    for q in ctx.probes.iter() {
        let v = random_translation(&mut rng);
        let (a, b) = to_rational(v);
        let expected = exp_series((&a, &b), 6).mul(&lift(zeta_p(q, &input, 6))?);
        ensure(lift(zeta_p(&q.translate(v), &input, 6))? == expected, || {
            format!("zeta({q} + {v}) != e^v zeta(P)")
        })?;
    }
    Ok(())
}

fn zeta_equivariance(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("zeta_equivariance");
    let input = zeta_input(4);
    for q in ctx.probes.iter() {
        let phi = random_unimodular_map(&mut rng);
        let expected = lift(zeta_p(q, &input, 7))?.compose_linear(&phi);
        ensure(lift(zeta_p(&q.apply_map(&phi), &input, 7))? == expected, || {
            format!("zeta(phi P) != zeta(P) o phi^T for P = {q}, phi = {phi}")
        })?;
    }
    Ok(())
}

fn zeta_simplicity(ctx: &CheckContext) -> CheckResult {
    let mut rng = ctx.rng("zeta_simplicity");
    let input = zeta_input(2);
    for _ in 0..8 {
        let a = p(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        let b = p(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        for q in [LatticePolygon::point(a), LatticePolygon::from_points(&[a, b])] {
            ensure(lift(zeta_p(&q, &input, 6))?.is_zero(), || format!("zeta({q}) != 0"))?;
        }
    }
    Ok(())
}

fn zeta_triangle_sum(ctx: &CheckContext) -> CheckResult {
    let input = zeta_input(2);
    for q in &ctx.probes {
        let total = lift(zeta_p(q, &input, 5))?;
        let t = lift(unimodular_triangulate(q))?;
        let mut sum = TruncatedSeries::zero(5);
        for tri in t.triangles() {
            sum = sum.add(&lift(zeta_p(&LatticePolygon::from_points(&tri.vertices), &input, 5))?);
        }
        ensure(sum == total, || format!("zeta({q}) != sum over its triangles"))?;
    }
    Ok(())
}

fn lambda_consistency(ctx: &CheckContext) -> CheckResult {
    for d in [2, 4, 6] {
        let fs = lift(pairing_subspace(d as u32 + 1))?;
        let inputs: Vec<ConeValuationInput> = fs
            .iter()
            .map(|f| lift(ConeValuationInput::from_generator(f, d)))
            .collect::<Result<_, _>>()?;
        let n = d as usize + 4;
        let values: Vec<Vec<TruncatedSeries>> = inputs
            .iter()
            .map(|input| ctx.probes.iter().map(|q| lift(zeta_p(q, input, n))).collect())
            .collect::<Result<_, _>>()?;
        for i in 2..=4usize {
            let deg = d as usize + i;
            let rows: Vec<Vec<Rational>> = values
                .iter()
                .map(|per| per.iter().flat_map(|s| s.layer(deg).homogeneous_coeff_vector(deg as u32)).collect())
                .collect();
            let k = linalg::rank(&rows) as u32;
            let want = p23(d as u32 / 2 + 1);
            ensure(k == want, || format!("degree-{deg} layers for d = {d} have rank {k}, expected {want}"))?;
        }
    }
    Ok(())
}

fn brion_matches_enumeration(ctx: &CheckContext) -> CheckResult {
    for q in &ctx.probes {
        ensure(lift(brion_lattice_gen(q, 6))? == lattice_exp_sum(q, 6), || format!("Brion sum differs on {q}"))?;
    }
    Ok(())
}

fn exp_integral_routes(ctx: &CheckContext) -> CheckResult {
    for q in &ctx.probes {
        ensure(lift(exp_integral_cone(q, 6))? == exp_integral(q, 6), || {
            format!("exponential integral routes differ on {q}")
        })?;
    }
    Ok(())
}

/// All checks in a fixed order.
pub fn all_checks() -> Vec<Check> {
    macro_rules! c {
        ($m:literal, $f:ident) => {
            Check {
                module: $m,
                name: stringify!($f),
                run: $f,
            }
        };
    }
    vec![
        c!("exact-algebra", compose_law),
        c!("exact-algebra", graded_divide_round_trip),
        c!("exact-algebra", exp_additivity),
        c!("exact-algebra", linear_form_powers),
        c!("exact-algebra", odd_bernoulli_vanish),
        c!("lattice-geometry", triangulations_valid),
        c!("lattice-geometry", flips_preserve_region),
        c!("lattice-geometry", ehrhart_count_fit),
        c!("lattice-geometry", boundary_linear),
        c!("invariant-theory", reynolds_projection),
        c!("invariant-theory", invariant_dimensions),
        c!("invariant-theory", p23_closed_form),
        c!("invariant-theory", delta_rho_rank),
        c!("invariant-theory", pairing_dimensions),
        c!("invariant-theory", generator_identities),
        c!("valuation-engine", valuation_law),
        c!("valuation-engine", gl2z_equivariance),
        c!("valuation-engine", triangulation_independence),
        c!("valuation-engine", simple_valuations_vanish),
        c!("valuation-engine", translation_behavior),
        c!("valuation-engine", oddness),
        c!("valuation-engine", ehrhart_decomposition),
        c!("valuation-engine", pick_consistency),
        c!("valuation-engine", faulhaber_nonvanishing),
        c!("cone-engine", hilbert_decomposition_valid),
        c!("cone-engine", refinement_law),
        c!("cone-engine", halfplane_split),
        c!("cone-engine", zeta_dilativity),
        c!("cone-engine", zeta_translation),
        c!("cone-engine", zeta_equivariance),
        c!("cone-engine", zeta_simplicity),
        c!("cone-engine", zeta_triangle_sum),
        c!("cone-engine", lambda_consistency),
        c!("cone-engine", brion_matches_enumeration),
        c!("cone-engine", exp_integral_routes),
    ]
}

/// Runs the checks whose name contains `filter` (all when `None`).
pub fn run_checks(seed: u64, filter: Option<&str>) -> Vec<CheckOutcome> {
    let ctx = CheckContext::new(seed);
    all_checks()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
        .map(|c| CheckOutcome {
            module: c.module,
            name: c.name,
            result: (c.run)(&ctx),
        })
        .collect()
}
