//! Interpolation of orbits in the Mahler (binomial) basis, effective zero
//! counting for one-variable series, and vanishing propagation along an
//! interpolated orbit.
//!
//! For a tuple `G` congruent to the identity mod `pi^t` with `t/e > 1/(p-1)`,
//! the orbit `n -> G^n(beta)` extends to an analytic function of `n`; its
//! Mahler coefficients are the finite differences of the orbit and their
//! valuations grow without bound. At working precision the expansion becomes
//! finite: the arc records where the coefficients hit zero and refuses to
//! exist if they never do within the requested window.

use num_bigint::BigUint;
use num_integer::binomial;

use crate::bounds::congruence_threshold;
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::ring::{PadicScalar, RingParams};
use crate::series::SeriesTuple;

/// A truncated Mahler expansion of an orbit: `evaluate(n)` reproduces
/// `G^(stride * n)(base)` at working precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MahlerArc {
    params: RingParams,
    vars: usize,
    base: Vec<PadicScalar>,
    coefficients: Vec<Vec<PadicScalar>>,
    stride: u64,
    vanish_from: usize,
}

/// Default number of Mahler coefficients: `(p - 1) * N + 8`. The decay of
/// the coefficients is observed, not assumed, so the constructor checks that
/// the window was wide enough and reports the observed vanishing index.
pub fn default_terms(params: RingParams) -> usize {
    ((params.p() - 1) as usize) * params.precision() as usize + 8
}

/// Finite differences of the orbit of `base` under `G` (applied `stride`
/// times per step): coefficient `j` is the j-th difference of the sampled
/// orbit at 0.
///
/// Requires `G` congruent to the identity mod `pi^t` at the threshold
/// exponent, the hypothesis under which the orbit interpolates analytically.
pub fn mahler_coefficients(
    g: &SeriesTuple,
    base: &[PadicScalar],
    terms: usize,
    stride: u64,
) -> Result<MahlerArc> {
    let params = g.params();
    if stride == 0 {
        return Err(Error::InvalidParameter("stride must be >= 1".into()));
    }
    if terms == 0 {
        return Err(Error::InvalidParameter(
            "need at least one Mahler coefficient".into(),
        ));
    }
    if base.len() != g.vars() || base.iter().any(|c| c.params() != params) {
        return Err(Error::Mismatch(
            "base point does not match the tuple".into(),
        ));
    }
    let t = congruence_threshold(params.p(), params.ramification());
    let identity = SeriesTuple::identity(params, g.vars(), g.cap());
    if !g.congruent_mod(&identity, t)? {
        return Err(Error::Domain(format!(
            "tuple is not congruent to the identity mod pi^{t}; the orbit need not be analytic"
        )));
    }

    let effective = if stride == 1 {
        g.clone()
    } else {
        g.iterate(stride)?
    };
    let mut orbit = Vec::with_capacity(terms + 1);
    orbit.push(base.to_vec());
    for _ in 0..terms {
        let next = effective.evaluate(orbit.last().unwrap())?;
        orbit.push(next);
    }
    let coefficients = finite_differences(&orbit);

    let vanish_from = coefficients
        .iter()
        .rposition(|c| c.iter().any(|x| !x.is_zero()))
        .map_or(0, |last_nonzero| last_nonzero + 1);
    if vanish_from > terms {
        return Err(Error::Domain(format!(
            "Mahler coefficients have not vanished by index {terms}; widen the window \
             (observed valuations: {:?})",
            coefficients
                .last()
                .map(|c| c.iter().map(|x| x.valuation()).collect::<Vec<_>>())
        )));
    }
    Ok(MahlerArc {
        params,
        vars: g.vars(),
        base: base.to_vec(),
        coefficients,
        stride,
        vanish_from,
    })
}

impl MahlerArc {
    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn base(&self) -> &[PadicScalar] {
        &self.base
    }

    pub fn stride(&self) -> u64 {
        self.stride
    }

    /// Index past which every stored coefficient is zero at precision.
    pub fn vanish_from(&self) -> usize {
        self.vanish_from
    }

    pub fn coefficient(&self, j: usize) -> &[PadicScalar] {
        &self.coefficients[j]
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `sum_j a_j * C(n, j)`, the interpolated orbit point at index `n`.
    pub fn evaluate(&self, n: u64) -> Vec<PadicScalar> {
        let mut acc = vec![PadicScalar::zero(self.params); self.vars];
        for (j, coeff) in self.coefficients.iter().enumerate() {
            if coeff.iter().all(|c| c.is_zero()) {
                continue;
            }
            let weight = binomial_scalar(n, j as u64, self.params);
            for (slot, c) in acc.iter_mut().zip(coeff) {
                slot.add_mul_assign(c, &weight);
            }
        }
        acc
    }

    /// Compares the interpolation against direct iteration of `g` for all
    /// `0 <= n <= up_to`.
    pub fn matches_direct_iteration(&self, g: &SeriesTuple, up_to: u64) -> Result<bool> {
        let effective = if self.stride == 1 {
            g.clone()
        } else {
            g.iterate(self.stride)?
        };
        let mut state = self.base.clone();
        for n in 0..=up_to {
            if self.evaluate(n) != state {
                return Ok(false);
            }
            state = effective.evaluate(&state)?;
        }
        Ok(true)
    }
}

/// One-variable effective zero count: the largest index at which the minimal
/// pi-valuation among the coefficients is attained. A series with these
/// coefficients has at most that many zeros in the ring of integers.
pub fn strassmann_bound(coefficients: &[PadicScalar]) -> Result<usize> {
    let min = coefficients
        .iter()
        .map(|c| c.valuation())
        .min()
        .ok_or_else(|| Error::InvalidParameter("empty coefficient list".into()))?;
    let cap = coefficients[0].params().valuation_cap();
    if min >= cap {
        return Err(Error::Domain(
            "all coefficients vanish at working precision".into(),
        ));
    }
    Ok(coefficients
        .iter()
        .rposition(|c| c.valuation() == min)
        .expect("minimum is attained"))
}

/// Whether the scalar sequence `n -> H(arc(n))` vanishes identically at
/// working precision, decided through its own Mahler coefficients rather
/// than sampling: every finite difference up to the arc's window must be
/// zero mod `p^N`.
pub fn vanishing_propagation(h: &IntPoly, arc: &MahlerArc) -> Result<bool> {
    if h.vars() != arc.vars {
        return Err(Error::Mismatch(
            "polynomial arity does not match the arc".into(),
        ));
    }
    let samples: Vec<Vec<PadicScalar>> = (0..arc.len() as u64)
        .map(|n| vec![h.eval_scalar(&arc.evaluate(n), arc.params)])
        .collect();
    let diffs = finite_differences(&samples);
    Ok(diffs.iter().all(|row| row[0].is_zero()))
}

fn finite_differences(values: &[Vec<PadicScalar>]) -> Vec<Vec<PadicScalar>> {
    let mut out = Vec::with_capacity(values.len());
    let mut row: Vec<Vec<PadicScalar>> = values.to_vec();
    out.push(row[0].clone());
    while row.len() > 1 {
        row = row
            .windows(2)
            .map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| a.sub(b)).collect())
            .collect();
        out.push(row[0].clone());
    }
    out
}

fn binomial_scalar(n: u64, j: u64, params: RingParams) -> PadicScalar {
    if j > n {
        return PadicScalar::zero(params);
    }
    let value = binomial(BigUint::from(n), BigUint::from(j)) % BigUint::from(params.modulus());
    PadicScalar::from_integer(
        u64::try_from(value).expect("reduced binomial fits") as i64,
        params,
    )
}
