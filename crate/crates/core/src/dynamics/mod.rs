//! Exact-integer polynomial self-maps of affine g-space: etale
//! certification over the residue field, orbit and period computation over
//! the finite rings `(Z/p^k)^g`, residue-disk linearization, certified exact
//! periods, and subvariety orbits under invertible maps.

pub mod elliptic;

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::bounds::{self, BoundInput};
use crate::error::{Error, Result};
use crate::modmath::{det_mod_p, is_prime};
use crate::poly::IntPoly;
use crate::ring::RingParams;
use crate::series::{ScaledSeriesTuple, SeriesTuple};

/// Exhaustive point enumerations stop past this many states.
const ENUMERATION_BUDGET: u64 = 4_000_000;

/// A self-map of affine g-space given by g integer polynomials, together
/// with the modulus `p^k` used when reducing, and an optional exact inverse
/// for automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySelfMap {
    vars: usize,
    polynomials: Vec<IntPoly>,
    inverse: Option<Vec<IntPoly>>,
    p: u64,
    k: u32,
}

impl PolySelfMap {
    pub fn new(
        p: u64,
        k: u32,
        polynomials: Vec<IntPoly>,
        inverse: Option<Vec<IntPoly>>,
    ) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must be an odd prime >= 3"
            )));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be >= 1".into()));
        }
        let vars = polynomials.len();
        if vars == 0 {
            return Err(Error::InvalidParameter(
                "a self-map needs at least one polynomial".into(),
            ));
        }
        modulus(p, k)?;
        for poly in polynomials.iter().chain(inverse.iter().flatten()) {
            if poly.vars() != vars {
                return Err(Error::Mismatch(format!(
                    "polynomial in {} variables in a {vars}-variable map",
                    poly.vars()
                )));
            }
        }
        if let Some(inv) = &inverse {
            if inv.len() != vars {
                return Err(Error::Mismatch("inverse component count differs".into()));
            }
        }
        let map = PolySelfMap {
            vars,
            polynomials,
            inverse,
            p,
            k,
        };
        map.check_inverse_on_samples()?;
        Ok(map)
    }

    /// Spot-checks that the declared inverse composes to the identity mod
    /// `p^k`, over all residue points when feasible and a fixed grid
    /// otherwise.
    fn check_inverse_on_samples(&self) -> Result<()> {
        let Some(inverse) = &self.inverse else {
            return Ok(());
        };
        let m = modulus(self.p, self.k)?;
        let points: Vec<Vec<u64>> = if self.p.pow(self.vars as u32) <= 2048 {
            all_points(self.p, self.vars)
        } else {
            (0..64u64)
                .map(|s| {
                    (0..self.vars)
                        .map(|j| (s * 31 + j as u64 * 17) % m)
                        .collect()
                })
                .collect()
        };
        for point in points {
            let image = self.eval_mod(&point, m);
            let back: Vec<u64> = inverse.iter().map(|f| f.eval_mod(&image, m)).collect();
            if back != point {
                return Err(Error::Domain(format!(
                    "declared inverse fails at {point:?} mod {}^{}",
                    self.p, self.k
                )));
            }
        }
        Ok(())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn polynomials(&self) -> &[IntPoly] {
        &self.polynomials
    }

    pub fn inverse(&self) -> Option<&[IntPoly]> {
        self.inverse.as_deref()
    }

    pub fn eval_exact(&self, point: &[BigInt]) -> Vec<BigInt> {
        self.polynomials
            .iter()
            .map(|f| f.eval_bigint(point))
            .collect()
    }

    pub fn eval_mod(&self, point: &[u64], m: u64) -> Vec<u64> {
        self.polynomials
            .iter()
            .map(|f| f.eval_mod(point, m))
            .collect()
    }

    /// Matrix of partial derivatives.
    pub fn jacobian(&self) -> Vec<Vec<IntPoly>> {
        self.polynomials
            .iter()
            .map(|f| (0..self.vars).map(|j| f.derivative(j)).collect())
            .collect()
    }
}

fn modulus(p: u64, k: u32) -> Result<u64> {
    let mut m: u64 = 1;
    for _ in 0..k {
        m = m.checked_mul(p).filter(|v| *v < (1 << 62)).ok_or_else(|| {
            Error::Resource(format!("modulus {p}^{k} exceeds the supported range"))
        })?;
    }
    Ok(m)
}

fn all_points(p: u64, vars: usize) -> Vec<Vec<u64>> {
    let count = p.pow(vars as u32);
    (0..count)
        .map(|mut i| {
            (0..vars)
                .map(|_| {
                    let c = i % p;
                    i /= p;
                    c
                })
                .collect()
        })
        .collect()
}

/// Outcome of the etale certification over `F_p`: either the Jacobian
/// determinant is a unit at every residue point, or a witness point where it
/// vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EtaleCheck {
    Certified,
    Failed { witness: Vec<u64> },
}

impl EtaleCheck {
    pub fn is_certified(&self) -> bool {
        matches!(self, EtaleCheck::Certified)
    }
}

/// Certifies that the Jacobian determinant is nonzero mod `p` at every point
/// of `F_p^g`, at the map's own prime.
pub fn check_etale(map: &PolySelfMap) -> Result<EtaleCheck> {
    check_etale_at(map, map.p)
}

/// The same certification at an arbitrary odd prime.
pub fn check_etale_at(map: &PolySelfMap, p: u64) -> Result<EtaleCheck> {
    if !is_prime(p) || p < 3 {
        return Err(Error::InvalidParameter(format!(
            "p = {p} must be an odd prime >= 3"
        )));
    }
    p.checked_pow(map.vars as u32)
        .filter(|&c| c <= ENUMERATION_BUDGET)
        .ok_or_else(|| Error::Resource(format!("cannot enumerate F_{p}^{}", map.vars)))?;
    let jacobian = map.jacobian();
    for point in all_points(p, map.vars) {
        let numeric: Vec<Vec<u64>> = jacobian
            .iter()
            .map(|row| row.iter().map(|f| f.eval_mod(&point, p)).collect())
            .collect();
        if det_mod_p(&numeric, p) == 0 {
            return Ok(EtaleCheck::Failed { witness: point });
        }
    }
    Ok(EtaleCheck::Certified)
}

/// Number of common zeros of `generators` in `F_p^g`; an empty list means
/// all of affine space, `p^g` points.
pub fn count_special_fiber_points(generators: &[IntPoly], vars: usize, p: u64) -> Result<u64> {
    if !is_prime(p) || p < 3 {
        return Err(Error::InvalidParameter(format!(
            "p = {p} must be an odd prime >= 3"
        )));
    }
    for g in generators {
        if g.vars() != vars {
            return Err(Error::Mismatch("generator arity mismatch".into()));
        }
    }
    p.checked_pow(vars as u32)
        .filter(|&c| c <= ENUMERATION_BUDGET)
        .ok_or_else(|| Error::Resource(format!("cannot enumerate F_{p}^{vars}")))?;
    let mut count = 0;
    for point in all_points(p, vars) {
        if generators.iter().all(|g| g.eval_mod(&point, p) == 0) {
            count += 1;
        }
    }
    Ok(count)
}

/// Minimal tail and cycle of a point's orbit over `(Z/p^k)^g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub tail: u64,
    pub cycle: u64,
    pub start: Vec<u64>,
    pub p: u64,
    pub k: u32,
}

/// Iterates the reduced map from `start` until a state repeats; the
/// first-seen table makes both the tail and the cycle minimal.
pub fn orbit_of_point(map: &PolySelfMap, start: &[i64], k: u32) -> Result<OrbitReport> {
    if start.len() != map.vars {
        return Err(Error::Mismatch("start point arity mismatch".into()));
    }
    let m = modulus(map.p, k)?;
    let reduced: Vec<u64> = start
        .iter()
        .map(|&c| c.rem_euclid(m as i64) as u64)
        .collect();
    let mut seen: HashMap<Vec<u64>, u64> = HashMap::new();
    let mut state = reduced.clone();
    let mut step: u64 = 0;
    loop {
        if let Some(&first) = seen.get(&state) {
            return Ok(OrbitReport {
                tail: first,
                cycle: step - first,
                start: reduced,
                p: map.p,
                k,
            });
        }
        if step > ENUMERATION_BUDGET {
            return Err(Error::Resource("orbit enumeration budget exceeded".into()));
        }
        seen.insert(state.clone(), step);
        state = map.eval_mod(&state, m);
        step += 1;
    }
}

/// Orbit over the residue field (`k = 1`). The visited-state count
/// `tail + cycle` can never exceed the number of residue points.
pub fn residue_cycle(map: &PolySelfMap, start: &[i64]) -> Result<OrbitReport> {
    let report = orbit_of_point(map, start, 1)?;
    let total = map.p.pow(map.vars as u32);
    if report.tail + report.cycle > total {
        return Err(Error::Internal(format!(
            "residue orbit visits {} states out of {total}",
            report.tail + report.cycle
        )));
    }
    Ok(report)
}

/// Expands the map around a residue-fixed integer point `a` into the disk
/// coordinate `z`: `G(z) = (map(a + p z) - a) / p`, a tuple over `Z_p` at
/// precision `N` with `G = C + Lz` mod `p` and `L` the Jacobian at `a`.
///
/// The rescaling gives every degree-d coefficient p-valuation >= d - 1, so
/// the result carries the scaling invariant by construction.
pub fn disk_linearization(
    map: &PolySelfMap,
    center: &[i64],
    precision: u32,
) -> Result<ScaledSeriesTuple> {
    if center.len() != map.vars {
        return Err(Error::Mismatch("center arity mismatch".into()));
    }
    let params = RingParams::new(map.p, 1, precision)?;
    let center_big: Vec<BigInt> = center.iter().map(|&c| BigInt::from(c)).collect();
    let image = map.eval_exact(&center_big);
    let p_big = BigInt::from(map.p);
    for (a, fa) in center_big.iter().zip(&image) {
        if ((fa - a) % &p_big) != BigInt::zero() {
            return Err(Error::Domain(format!(
                "residue of {center:?} is not fixed: map moves it mod {}",
                map.p
            )));
        }
    }
    match check_etale(map)? {
        EtaleCheck::Certified => {}
        EtaleCheck::Failed { witness } => {
            return Err(Error::Domain(format!(
                "map is not etale mod {}: Jacobian vanishes at {witness:?}",
                map.p
            )));
        }
    }

    // x_j = a_j + p z_j, expanded exactly over Z.
    let substitution: Vec<IntPoly> = (0..map.vars)
        .map(|j| {
            IntPoly::variable(map.vars, j)
                .scale(map.p as i64)
                .add(&IntPoly::constant(map.vars, center[j]))
        })
        .collect();
    let mut scaled = Vec::with_capacity(map.vars);
    let mut max_degree = 1;
    for (i, f) in map.polynomials.iter().enumerate() {
        let shifted = f
            .substitute(&substitution)
            .sub(&IntPoly::constant(map.vars, center[i]));
        let mut quotient = IntPoly::zero(map.vars);
        for (exps, c) in shifted.terms() {
            let (q, rem) = num_integer::Integer::div_rem(c, &p_big);
            if !rem.is_zero() {
                return Err(Error::Internal(
                    "disk rescaling produced a coefficient not divisible by p".into(),
                ));
            }
            quotient.add_term(exps, q);
        }
        max_degree = max_degree.max(quotient.total_degree());
        scaled.push(quotient);
    }
    let cap = max_degree.max(params.valuation_cap());
    ScaledSeriesTuple::new(SeriesTuple::from_int_polys(params, cap, &scaled)?)
}

/// True iff `map^n(start) = start` in exact integer arithmetic and no
/// smaller positive iterate returns.
pub fn certify_exact_period(map: &PolySelfMap, start: &[i64], n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidParameter("period must be >= 1".into()));
    }
    if start.len() != map.vars {
        return Err(Error::Mismatch("start point arity mismatch".into()));
    }
    let start: Vec<BigInt> = start.iter().map(|&c| BigInt::from(c)).collect();
    let mut state = start.clone();
    for step in 1..=n {
        state = map.eval_exact(&state);
        if state == start {
            return Ok(step == n);
        }
    }
    Ok(false)
}

/// A certified exact period against its closed-form bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodBoundCheck {
    pub period: u64,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub bound: BigUint,
    pub pass: bool,
}

/// Checks a certified exact period `n` against the orbit-length bound at an
/// odd prime of good (etale) reduction, with `e = 1`, `q = p`, and the full
/// affine space `p^g` as the residue point count.
pub fn verify_period_bound(
    map: &PolySelfMap,
    start: &[i64],
    n: u64,
    p: u64,
) -> Result<PeriodBoundCheck> {
    if !certify_exact_period(map, start, n)? {
        return Err(Error::Domain(format!(
            "{n} is not the exact period of {start:?}"
        )));
    }
    match check_etale_at(map, p)? {
        EtaleCheck::Certified => {}
        EtaleCheck::Failed { witness } => {
            return Err(Error::Domain(format!(
                "map is not etale mod {p}: Jacobian vanishes at {witness:?}"
            )));
        }
    }
    let n_points = p
        .checked_pow(map.vars as u32)
        .ok_or_else(|| Error::Resource("residue point count overflows".into()))?;
    let input = BoundInput::new(p, 1, map.vars as u32, p, n_points)?;
    let bound = bounds::orbit_length_bound(&input);
    let pass = BigUint::from(n) <= bound;
    Ok(PeriodBoundCheck {
        period: n,
        bound,
        pass,
    })
}

/// A subvariety model: integer generators plus a sample integer point on
/// which all of them vanish exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubvarietyModel {
    generators: Vec<IntPoly>,
    sample_point: Vec<i64>,
}

impl SubvarietyModel {
    pub fn new(generators: Vec<IntPoly>, sample_point: Vec<i64>) -> Result<Self> {
        let vars = sample_point.len();
        if vars == 0 {
            return Err(Error::InvalidParameter(
                "sample point must have at least one coordinate".into(),
            ));
        }
        let point: Vec<BigInt> = sample_point.iter().map(|&c| BigInt::from(c)).collect();
        for g in &generators {
            if g.vars() != vars {
                return Err(Error::Mismatch("generator arity mismatch".into()));
            }
            if !g.eval_bigint(&point).is_zero() {
                return Err(Error::Domain(
                    "a generator does not vanish at the sample point".into(),
                ));
            }
        }
        Ok(SubvarietyModel {
            generators,
            sample_point,
        })
    }

    pub fn generators(&self) -> &[IntPoly] {
        &self.generators
    }

    pub fn sample_point(&self) -> &[i64] {
        &self.sample_point
    }
}

/// Tail/cycle structure of the zero-set sequence `Z_n`, or the admission
/// that no repeat showed up within the search window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SubvarietyOrbit {
    Detected {
        tail: u64,
        cycle: u64,
        p: u64,
        k: u32,
    },
    NoPeriodWithin {
        n_max: u64,
    },
}

/// Tracks the forward images of the subvariety's zero set mod `p^k`:
/// `Z_n = { x : every generator vanishes at inverse^n(x) }`, detecting the
/// minimal tail and cycle of the set sequence by equality, up to `n_max`.
pub fn subvariety_orbit(
    map: &PolySelfMap,
    model: &SubvarietyModel,
    k: u32,
    n_max: u64,
) -> Result<SubvarietyOrbit> {
    let Some(inverse) = map.inverse() else {
        return Err(Error::InvalidParameter(
            "subvariety orbits need a map with a declared inverse".into(),
        ));
    };
    if model.sample_point.len() != map.vars {
        return Err(Error::Mismatch("subvariety and map arity differ".into()));
    }
    let m = modulus(map.p, k)?;
    let total = (m as u128).pow(map.vars as u32);
    if total > ENUMERATION_BUDGET as u128 {
        return Err(Error::Resource(format!(
            "zero-set tracking over {total} points exceeds the budget"
        )));
    }

    let points: Vec<Vec<u64>> = (0..total as u64)
        .map(|mut i| {
            (0..map.vars)
                .map(|_| {
                    let c = i % m;
                    i /= m;
                    c
                })
                .collect()
        })
        .collect();
    // preimages[i] = inverse^n applied to points[i], updated in place.
    let mut preimages = points.clone();
    let mut seen: HashMap<Vec<u64>, u64> = HashMap::new();
    for n in 0..=n_max {
        let zero_set: Vec<u64> = (0..points.len() as u64)
            .filter(|&i| {
                model
                    .generators
                    .iter()
                    .all(|g| g.eval_mod(&preimages[i as usize], m) == 0)
            })
            .collect();
        if let Some(&first) = seen.get(&zero_set) {
            return Ok(SubvarietyOrbit::Detected {
                tail: first,
                cycle: n - first,
                p: map.p,
                k,
            });
        }
        seen.insert(zero_set, n);
        for pre in &mut preimages {
            let next: Vec<u64> = inverse.iter().map(|f| f.eval_mod(pre, m)).collect();
            *pre = next;
        }
    }
    Ok(SubvarietyOrbit::NoPeriodWithin { n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PadicScalar;

    fn translation_map(p: u64, k: u32) -> PolySelfMap {
        // x -> x + 1
        let f = IntPoly::from_terms(1, &[(1, &[1]), (1, &[0])]);
        PolySelfMap::new(p, k, vec![f], None).unwrap()
    }

    fn henon_map(p: u64, k: u32, c: i64) -> PolySelfMap {
        // (x, y) -> (y, x + y^2 + c)
        let f0 = IntPoly::from_terms(2, &[(1, &[0, 1])]);
        let f1 = IntPoly::from_terms(2, &[(1, &[1, 0]), (1, &[0, 2]), (c, &[0, 0])]);
        PolySelfMap::new(p, k, vec![f0, f1], None).unwrap()
    }

    #[test]
    fn etale_outcomes() {
        // Affine map with unit determinant.
        let f0 = IntPoly::from_terms(2, &[(1, &[1, 0]), (2, &[0, 1]), (1, &[0, 0])]);
        let f1 = IntPoly::from_terms(2, &[(1, &[0, 1])]);
        let affine = PolySelfMap::new(5, 1, vec![f0, f1], None).unwrap();
        assert!(check_etale(&affine).unwrap().is_certified());

        // x -> x^3 at p = 3: derivative 3x^2 vanishes identically.
        let cube =
            PolySelfMap::new(3, 1, vec![IntPoly::from_terms(1, &[(1, &[3])])], None).unwrap();
        assert!(matches!(
            check_etale(&cube).unwrap(),
            EtaleCheck::Failed { .. }
        ));

        // Henon map: Jacobian determinant is -1 everywhere.
        assert!(check_etale(&henon_map(5, 1, 1)).unwrap().is_certified());
    }

    #[test]
    fn special_fiber_counts() {
        assert_eq!(count_special_fiber_points(&[], 2, 3).unwrap(), 9);
        let x = IntPoly::variable(2, 0);
        assert_eq!(count_special_fiber_points(&[x], 2, 3).unwrap(), 3);
        // Affine points of y^2 = x^3 + 1 over F_5, by exhaustive count.
        let curve = IntPoly::from_terms(2, &[(1, &[0, 2]), (-1, &[3, 0]), (-1, &[0, 0])]);
        let mut expected = 0;
        for x in 0..5i64 {
            for y in 0..5i64 {
                if (y * y - x * x * x - 1).rem_euclid(5) == 0 {
                    expected += 1;
                }
            }
        }
        assert_eq!(
            count_special_fiber_points(&[curve], 2, 5).unwrap(),
            expected
        );
    }

    #[test]
    fn orbit_translation() {
        let report = orbit_of_point(&translation_map(3, 2), &[0], 2).unwrap();
        assert_eq!((report.tail, report.cycle), (0, 9));
    }

    #[test]
    fn orbit_involution() {
        let neg =
            PolySelfMap::new(5, 3, vec![IntPoly::from_terms(1, &[(-1, &[1])])], None).unwrap();
        let report = orbit_of_point(&neg, &[1], 3).unwrap();
        assert_eq!((report.tail, report.cycle), (0, 2));
    }

    #[test]
    fn orbit_accepts_negative_start() {
        let report = orbit_of_point(&translation_map(3, 2), &[-1], 2).unwrap();
        assert_eq!(report.start, vec![8]);
        assert_eq!((report.tail, report.cycle), (0, 9));
    }

    /// Brute-force minimal (tail, cycle): scan all pairs on the explicit
    /// trajectory, smallest cycle first.
    fn naive_orbit(map: &PolySelfMap, start: &[i64], k: u32) -> (u64, u64) {
        let m = modulus(map.p, k).unwrap();
        let mut traj: Vec<Vec<u64>> = vec![start
            .iter()
            .map(|&c| c.rem_euclid(m as i64) as u64)
            .collect()];
        loop {
            let next = map.eval_mod(traj.last().unwrap(), m);
            if traj.contains(&next) {
                traj.push(next);
                break;
            }
            traj.push(next);
        }
        let len = traj.len();
        for cycle in 1..len {
            for tail in 0..len - cycle {
                if traj[tail] == traj[tail + cycle]
                    && (tail..len - cycle).all(|i| traj[i] == traj[i + cycle])
                {
                    return (tail as u64, cycle as u64);
                }
            }
        }
        unreachable!("a repeat must exist");
    }

    #[test]
    fn henon_orbit_matches_naive_rescan() {
        let map = henon_map(5, 2, 1);
        let report = orbit_of_point(&map, &[0, 0], 2).unwrap();
        let (tail, cycle) = naive_orbit(&map, &[0, 0], 2);
        assert_eq!((report.tail, report.cycle), (tail, cycle));

        let map3 = henon_map(3, 1, 1);
        let report = residue_cycle(&map3, &[0, 0]).unwrap();
        let (tail, cycle) = naive_orbit(&map3, &[0, 0], 1);
        assert_eq!((report.tail, report.cycle), (tail, cycle));
        assert!(report.tail + report.cycle <= 9);
        // First step from (0,0) is (0, 1).
        assert_eq!(map3.eval_mod(&[0, 0], 3), vec![0, 1]);
    }

    #[test]
    fn residue_cycle_translation() {
        let report = residue_cycle(&translation_map(5, 1), &[0]).unwrap();
        assert_eq!((report.tail, report.cycle), (0, 5));
        let id = PolySelfMap::new(5, 1, vec![IntPoly::variable(1, 0)], None).unwrap();
        let report = residue_cycle(&id, &[3]).unwrap();
        assert_eq!((report.tail, report.cycle), (0, 1));
    }

    #[test]
    fn cycle_mod_pk_divides_cycle_mod_pk1() {
        for (map, start) in [
            (henon_map(3, 3, 1), [0i64, 0]),
            (henon_map(5, 3, 2), [1, 2]),
        ] {
            let c1 = orbit_of_point(&map, &start, 1).unwrap().cycle;
            let c2 = orbit_of_point(&map, &start, 2).unwrap().cycle;
            let c3 = orbit_of_point(&map, &start, 3).unwrap().cycle;
            assert_eq!(c2 % c1, 0);
            assert_eq!(c3 % c2, 0);
        }
    }

    #[test]
    fn disk_linearization_examples() {
        let params = RingParams::new(5, 1, 4).unwrap();
        // F(x) = x + 5 centered at 0: G(z) = z + 1.
        let f = PolySelfMap::new(
            5,
            1,
            vec![IntPoly::from_terms(1, &[(1, &[1]), (5, &[0])])],
            None,
        )
        .unwrap();
        let g = disk_linearization(&f, &[0], 4).unwrap();
        let expected =
            SeriesTuple::from_integer_terms(params, 1, 4, &[&[(1, &[0]), (1, &[1])]]).unwrap();
        assert_eq!(g.as_series(), &expected);

        // F(x) = 2x: G(z) = 2z.
        let f = PolySelfMap::new(5, 1, vec![IntPoly::from_terms(1, &[(2, &[1])])], None).unwrap();
        let g = disk_linearization(&f, &[0], 4).unwrap();
        let expected = SeriesTuple::from_integer_terms(params, 1, 4, &[&[(2, &[1])]]).unwrap();
        assert_eq!(g.as_series(), &expected);

        // F(x) = x + 5 x^2: G(z) = z + 25 z^2.
        let f = PolySelfMap::new(
            5,
            1,
            vec![IntPoly::from_terms(1, &[(1, &[1]), (5, &[2])])],
            None,
        )
        .unwrap();
        let g = disk_linearization(&f, &[0], 4).unwrap();
        let expected =
            SeriesTuple::from_integer_terms(params, 1, 4, &[&[(1, &[1]), (25, &[2])]]).unwrap();
        assert_eq!(g.as_series(), &expected);
    }

    #[test]
    fn disk_linearization_rejects_moved_residue() {
        let f = PolySelfMap::new(
            5,
            1,
            vec![IntPoly::from_terms(1, &[(1, &[1]), (1, &[0])])],
            None,
        )
        .unwrap();
        assert!(matches!(
            disk_linearization(&f, &[0], 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn disk_correspondence() {
        // F^n(a + p z0) = a + p G^n(z0) mod p^N for a nonlinear etale map.
        let p = 3i64;
        let n_prec = 5u32;
        let f = PolySelfMap::new(
            3,
            1,
            vec![IntPoly::from_terms(1, &[(4, &[1]), (3, &[2]), (6, &[0])])],
            None,
        )
        .unwrap();
        let center = [0i64];
        let g = disk_linearization(&f, &center, n_prec).unwrap();
        let params = g.params();

        let z0 = 7i64;
        let mut exact = vec![BigInt::from(center[0] + p * z0)];
        let mut disk = vec![PadicScalar::from_integer(z0, params)];
        for _ in 0..20 {
            exact = f.eval_exact(&exact);
            disk = g.evaluate(&disk).unwrap();
            let lhs = PadicScalar::from_bigint(&exact[0], params);
            let rhs = PadicScalar::from_integer(center[0], params)
                .add(&PadicScalar::from_integer(p, params).mul(&disk[0]));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exact_periods() {
        let id = PolySelfMap::new(5, 1, vec![IntPoly::variable(1, 0)], None).unwrap();
        assert!(certify_exact_period(&id, &[4], 1).unwrap());

        // x -> -x + 1 has period 2 from 0.
        let f = PolySelfMap::new(
            5,
            1,
            vec![IntPoly::from_terms(1, &[(-1, &[1]), (1, &[0])])],
            None,
        )
        .unwrap();
        assert!(certify_exact_period(&f, &[0], 2).unwrap());
        assert!(!certify_exact_period(&f, &[0], 1).unwrap());
        assert!(!certify_exact_period(&f, &[0], 4).unwrap());

        // Order-6 matrix [[0,-1],[1,1]].
        let a0 = IntPoly::from_terms(2, &[(-1, &[0, 1])]);
        let a1 = IntPoly::from_terms(2, &[(1, &[1, 0]), (1, &[0, 1])]);
        let f = PolySelfMap::new(5, 1, vec![a0, a1], None).unwrap();
        assert!(certify_exact_period(&f, &[1, 0], 6).unwrap());
    }

    #[test]
    fn period_bounds() {
        let a0 = IntPoly::from_terms(2, &[(-1, &[0, 1])]);
        let a1 = IntPoly::from_terms(2, &[(1, &[1, 0]), (1, &[0, 1])]);
        let f = PolySelfMap::new(5, 1, vec![a0, a1], None).unwrap();
        let check = verify_period_bound(&f, &[1, 0], 6, 5).unwrap();
        assert_eq!(check.bound, BigUint::from(60000u32));
        assert!(check.pass);
        let check = verify_period_bound(&f, &[1, 0], 6, 3).unwrap();
        assert_eq!(check.bound, BigUint::from(1296u32));
        assert!(check.pass);

        let neg = PolySelfMap::new(
            3,
            1,
            vec![IntPoly::from_terms(1, &[(-1, &[1]), (1, &[0])])],
            None,
        )
        .unwrap();
        let check = verify_period_bound(&neg, &[0], 2, 3).unwrap();
        assert_eq!(check.bound, BigUint::from(18u32));
        assert!(check.pass);

        assert!(matches!(
            verify_period_bound(&neg, &[0], 3, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn subvariety_swap_line() {
        // (x, y) -> (y, x), self-inverse; the line x = 0 swaps with y = 0.
        let swap = PolySelfMap::new(
            3,
            2,
            vec![IntPoly::variable(2, 1), IntPoly::variable(2, 0)],
            Some(vec![IntPoly::variable(2, 1), IntPoly::variable(2, 0)]),
        )
        .unwrap();
        let line = SubvarietyModel::new(vec![IntPoly::variable(2, 0)], vec![0, 1]).unwrap();
        let orbit = subvariety_orbit(&swap, &line, 2, 10).unwrap();
        assert_eq!(
            orbit,
            SubvarietyOrbit::Detected {
                tail: 0,
                cycle: 2,
                p: 3,
                k: 2
            }
        );

        // Identity fixes everything.
        let id = PolySelfMap::new(
            3,
            2,
            vec![IntPoly::variable(2, 0), IntPoly::variable(2, 1)],
            Some(vec![IntPoly::variable(2, 0), IntPoly::variable(2, 1)]),
        )
        .unwrap();
        let orbit = subvariety_orbit(&id, &line, 2, 10).unwrap();
        assert_eq!(
            orbit,
            SubvarietyOrbit::Detected {
                tail: 0,
                cycle: 1,
                p: 3,
                k: 2
            }
        );
    }

    #[test]
    fn subvariety_requires_inverse() {
        let map = translation_map(3, 2);
        let model = SubvarietyModel::new(vec![], vec![0]).unwrap();
        assert!(matches!(
            subvariety_orbit(&map, &model, 2, 5),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn subvariety_model_validation() {
        let x = IntPoly::variable(2, 0);
        assert!(SubvarietyModel::new(vec![x.clone()], vec![1, 0]).is_err());
        assert!(SubvarietyModel::new(vec![x], vec![0, 7]).is_ok());
    }

    #[test]
    fn inverse_validation() {
        // Declared inverse that is wrong mod p^k is rejected.
        let f = IntPoly::from_terms(1, &[(1, &[1]), (1, &[0])]);
        let not_inverse = IntPoly::from_terms(1, &[(1, &[1])]);
        assert!(matches!(
            PolySelfMap::new(3, 2, vec![f.clone()], Some(vec![not_inverse])),
            Err(Error::Domain(_))
        ));
        let inverse = IntPoly::from_terms(1, &[(1, &[1]), (-1, &[0])]);
        assert!(PolySelfMap::new(3, 2, vec![f], Some(vec![inverse])).is_ok());
    }
}
