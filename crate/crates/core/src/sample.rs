//! Seeded random instances for verification campaigns and property tests.
//!
//! Instance generation deliberately sits on the hypothesis boundary: every
//! nonlinear coefficient of a sampled tuple has pi-valuation exactly
//! `max(1, d - 1)` in degree `d` (a unit times that power of pi), and linear
//! parts are uniform lifts of invertible residue matrices.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::PolySelfMap;
use crate::modmath::det_mod_p;
use crate::poly::IntPoly;
use crate::ring::{PadicScalar, RingParams};
use crate::series::{ScaledSeriesTuple, SeriesTuple};

/// Independent generator for case `index` of a campaign seeded by `seed`.
/// Cases can then run in any order (or in parallel) with identical results.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    // splitmix64 step decorrelates consecutive indices.
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Uniform element of the working ring.
pub fn random_scalar(params: RingParams, rng: &mut impl Rng) -> PadicScalar {
    let coeffs: Vec<u64> = (0..params.ramification())
        .map(|_| rng.random_range(0..params.modulus()))
        .collect();
    PadicScalar::from_coeffs(&coeffs, params).expect("arity matches params")
}

/// Uniform unit (valuation 0), by rejection.
pub fn random_unit(params: RingParams, rng: &mut impl Rng) -> PadicScalar {
    loop {
        let x = random_scalar(params, rng);
        if x.valuation() == 0 {
            return x;
        }
    }
}

/// Uniform lift of a matrix in `GL_g(F_p)`: entries uniform in the ring,
/// resampled until the residue matrix is invertible.
pub fn random_gl_lift(
    params: RingParams,
    vars: usize,
    rng: &mut impl Rng,
) -> Vec<Vec<PadicScalar>> {
    loop {
        let matrix: Vec<Vec<PadicScalar>> = (0..vars)
            .map(|_| (0..vars).map(|_| random_scalar(params, rng)).collect())
            .collect();
        let residue: Vec<Vec<u64>> = matrix
            .iter()
            .map(|row| row.iter().map(|c| c.residue()).collect())
            .collect();
        if det_mod_p(&residue, params.p()) != 0 {
            return matrix;
        }
    }
}

/// Shape of a sampled scaled tuple.
#[derive(Debug, Clone, Copy)]
pub struct ScaledTupleSpec {
    pub params: RingParams,
    pub vars: usize,
    pub cap: u32,
    /// Force the residue of the tuple to be the identity map (`C = 0` and
    /// `L = I` mod pi) instead of a general invertible affine map.
    pub identity_residue: bool,
}

/// Samples a scaled tuple: constant terms of valuation exactly 1, linear
/// part a GL lift (or `I + pi * (...)`), and every degree-d monomial carrying
/// a coefficient of valuation exactly `d - 1`.
pub fn random_scaled_tuple(spec: &ScaledTupleSpec, rng: &mut impl Rng) -> ScaledSeriesTuple {
    let params = spec.params;
    let pi = PadicScalar::uniformizer(params);
    let linear = if spec.identity_residue {
        (0..spec.vars)
            .map(|i| {
                (0..spec.vars)
                    .map(|j| {
                        let noise = pi.mul(&random_scalar(params, rng));
                        if i == j {
                            PadicScalar::one(params).add(&noise)
                        } else {
                            noise
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    } else {
        random_gl_lift(params, spec.vars, rng)
    };

    let monomials = monomials_by_degree(spec.vars, spec.cap);
    let mut components = Vec::with_capacity(spec.vars);
    for linear_row in &linear {
        let mut terms: Vec<(Vec<u32>, PadicScalar)> = Vec::new();
        // Degree 0: valuation exactly 1.
        terms.push((vec![0; spec.vars], pi.mul(&random_unit(params, rng))));
        for (j, entry) in linear_row.iter().enumerate() {
            let mut exps = vec![0u32; spec.vars];
            exps[j] = 1;
            terms.push((exps, entry.clone()));
        }
        for exps in &monomials {
            let degree: u32 = exps.iter().sum();
            if degree < 2 || degree > params.valuation_cap() {
                continue;
            }
            let coeff =
                PadicScalar::uniformizer_pow(params, degree - 1).mul(&random_unit(params, rng));
            terms.push((exps.clone(), coeff));
        }
        components.push(terms);
    }
    let series = SeriesTuple::new(params, spec.vars, spec.cap, components)
        .expect("sampled terms satisfy the shape");
    ScaledSeriesTuple::new(series).expect("sampled coefficients satisfy the scaling invariant")
}

fn monomials_by_degree(vars: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; vars];
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, budget: u32) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for k in 0..=budget {
            current[pos] = k;
            rec(out, current, pos + 1, budget - k);
        }
        current[pos] = 0;
    }
    rec(&mut out, &mut current, 0, cap);
    out
}

/// Samples an integer self-map whose disk model at the origin is congruent
/// to the identity mod p: `x -> x + p^2 c + p^2 M x + p * (degree 2..3)`.
/// The Jacobian is `I` mod p everywhere, so the map is etale, and the origin
/// residue is fixed.
pub fn random_disk_model_map(p: u64, vars: usize, rng: &mut impl Rng) -> PolySelfMap {
    let p_i64 = p as i64;
    let monomials = monomials_by_degree(vars, 3);
    let polynomials = (0..vars)
        .map(|i| {
            let mut poly = IntPoly::variable(vars, i);
            let constant = rng.random_range(-3..=3i64) * p_i64 * p_i64;
            poly = poly.add(&IntPoly::constant(vars, constant));
            for j in 0..vars {
                let c = rng.random_range(-2..=2i64) * p_i64 * p_i64;
                poly = poly.add(&IntPoly::variable(vars, j).scale(c));
            }
            for exps in &monomials {
                let degree: u32 = exps.iter().sum();
                if degree < 2 || rng.random_range(0..2u8) == 0 {
                    continue;
                }
                let c = rng.random_range(-2..=2i64) * p_i64;
                let refs: &[(i64, &[u32])] = &[(c, exps.as_slice())];
                poly = poly.add(&IntPoly::from_terms(vars, refs));
            }
            poly
        })
        .collect();
    PolySelfMap::new(p, 1, polynomials, None).expect("sampled map is valid")
}
