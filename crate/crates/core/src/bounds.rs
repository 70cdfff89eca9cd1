//! Closed-form bound calculators.
//!
//! All arithmetic here is exact: the torsion bound overflows fixed-width
//! integers even for small inputs, so everything is `BigUint`.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::is_prime;

/// Smallest `r >= 0` with `2^r * (p - 1) > e`.
///
/// This is the integer form of "least nonnegative integer larger than
/// log2(e / (p-1))"; using the inequality directly avoids floating-point
/// boundary errors at e = 2^j (p-1).
pub fn r_exponent(p: u64, e: u32) -> u32 {
    let e = e as u64;
    let mut r = 0u32;
    let mut scaled = p - 1;
    while scaled <= e {
        r += 1;
        scaled *= 2;
    }
    r
}

/// `#GL_g(F_q) = prod_{i=0}^{g-1} (q^g - q^i)`.
pub fn gl_order(g: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qg = q.pow(g);
    let mut acc = BigUint::one();
    let mut qi = BigUint::one();
    for _ in 0..g {
        acc *= &qg - &qi;
        qi *= &q;
    }
    acc
}

/// Least `t` with `t/e > 1/(p-1)`, i.e. `floor(e/(p-1)) + 1`. A congruence
/// mod `pi^t` is then strictly stronger than the `1/(p-1)` threshold.
pub fn congruence_threshold(p: u64, e: u32) -> u32 {
    (e as u64 / (p - 1) + 1) as u32
}

/// `p^(1+r) * #GL_g(F_q)`: the iterate count forcing congruence to the
/// identity.
pub fn iterate_order(p: u64, e: u32, g: u32, q: u64) -> BigUint {
    BigUint::from(p).pow(1 + r_exponent(p, e)) * gl_order(g, q)
}

/// Validated input for the bound formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundInput {
    pub p: u64,
    pub e: u32,
    pub g: u32,
    pub q: u64,
    pub n_points: u64,
}

impl BoundInput {
    pub fn new(p: u64, e: u32, g: u32, q: u64, n_points: u64) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must be an odd prime >= 3"
            )));
        }
        if e == 0 || g == 0 || n_points == 0 {
            return Err(Error::InvalidParameter(
                "e, g, and the point count must be >= 1".into(),
            ));
        }
        let mut m = q;
        while m > 1 && m.is_multiple_of(p) {
            m /= p;
        }
        if q < 2 || m != 1 {
            return Err(Error::InvalidParameter(format!(
                "q = {q} is not a positive power of p = {p}"
            )));
        }
        Ok(BoundInput {
            p,
            e,
            g,
            q,
            n_points,
        })
    }
}

/// Orbit-length bound for a preperiodic subvariety with a suitable point:
/// `p^(1+r) * #GL_g(F_q) * n_points`.
pub fn orbit_length_bound(input: &BoundInput) -> BigUint {
    iterate_order(input.p, input.e, input.g, input.q) * BigUint::from(input.n_points)
}

/// Torsion-group order bound:
/// `q^(g(1+e) * C(g+e+1, g)) * #GL_g(F_q) * n_points`.
pub fn torsion_group_bound(input: &BoundInput) -> Result<BigUint> {
    let exponent = BigUint::from(input.g)
        * BigUint::from(1 + input.e)
        * num_integer::binomial(BigUint::from(input.g + input.e + 1), BigUint::from(input.g));
    let exponent: u32 = exponent
        .try_into()
        .map_err(|_| Error::Resource("torsion bound exponent does not fit u32".into()))?;
    if exponent > 1 << 24 {
        return Err(Error::Resource(format!(
            "torsion bound exponent {exponent} is too large to materialize"
        )));
    }
    Ok(BigUint::from(input.q).pow(exponent)
        * gl_order(input.g, input.q)
        * BigUint::from(input.n_points))
}

/// Every quantity the bound formulas produce for one input, with big values
/// serialized as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub r: u32,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub m: BigUint,
    pub t: u32,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub gl: BigUint,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub orbit_bound: BigUint,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub torsion_bound: BigUint,
}

pub fn bound_report(input: &BoundInput) -> Result<BoundReport> {
    Ok(BoundReport {
        r: r_exponent(input.p, input.e),
        m: iterate_order(input.p, input.e, input.g, input.q),
        t: congruence_threshold(input.p, input.e),
        gl: gl_order(input.g, input.q),
        orbit_bound: orbit_length_bound(input),
        torsion_bound: torsion_group_bound(input)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_exponent_values() {
        assert_eq!(r_exponent(5, 1), 0);
        // log difference exactly 0 still needs the strict inequality.
        assert_eq!(r_exponent(3, 2), 1);
        assert_eq!(r_exponent(3, 8), 3);
    }

    #[test]
    fn r_exponent_minimality() {
        for p in [3u64, 5, 7, 11] {
            for e in 1..=64u32 {
                let r = r_exponent(p, e);
                assert!((1u64 << r) * (p - 1) > e as u64);
                if r > 0 {
                    assert!((1u64 << (r - 1)) * (p - 1) <= e as u64);
                }
            }
        }
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1, 7), BigUint::from(6u32));
        assert_eq!(gl_order(2, 2), BigUint::from(6u32));
        assert_eq!(gl_order(2, 3), BigUint::from(48u32));
        assert_eq!(gl_order(2, 5), BigUint::from(480u32));
    }

    #[test]
    fn thresholds() {
        assert_eq!(congruence_threshold(5, 1), 1);
        assert_eq!(congruence_threshold(3, 2), 2);
        assert_eq!(congruence_threshold(3, 5), 3);
        for p in [3u64, 5, 7, 11] {
            for e in 1..=64u32 {
                let t = congruence_threshold(p, e) as u64;
                let e = e as u64;
                // t/e > 1/(p-1) >= (t-1)/e
                assert!(t * (p - 1) > e);
                assert!((t - 1) * (p - 1) <= e);
            }
        }
    }

    #[test]
    fn orbit_bounds() {
        let b = |p, e, g, q, n| orbit_length_bound(&BoundInput::new(p, e, g, q, n).unwrap());
        assert_eq!(b(3, 1, 1, 3, 1), BigUint::from(6u32));
        assert_eq!(b(5, 1, 1, 5, 5), BigUint::from(100u32));
        assert_eq!(b(3, 1, 2, 3, 9), BigUint::from(1296u32));
    }

    #[test]
    fn torsion_bounds() {
        let b =
            |p, e, g, q, n| torsion_group_bound(&BoundInput::new(p, e, g, q, n).unwrap()).unwrap();
        assert_eq!(b(3, 1, 1, 3, 3), BigUint::from(4374u32));
        assert_eq!(b(5, 1, 1, 5, 5), BigUint::from(312500u32));
        assert_eq!(b(3, 2, 1, 3, 1), BigUint::from(1062882u32));
    }

    #[test]
    fn monotone_in_point_count() {
        for n in 1..20u64 {
            let a = BoundInput::new(5, 2, 2, 5, n).unwrap();
            let b = BoundInput::new(5, 2, 2, 5, n + 1).unwrap();
            assert!(orbit_length_bound(&a) <= orbit_length_bound(&b));
            assert!(torsion_group_bound(&a).unwrap() <= torsion_group_bound(&b).unwrap());
        }
    }

    #[test]
    fn input_validation() {
        assert!(BoundInput::new(2, 1, 1, 2, 1).is_err());
        assert!(BoundInput::new(9, 1, 1, 9, 1).is_err());
        assert!(BoundInput::new(5, 1, 1, 10, 1).is_err());
        assert!(BoundInput::new(5, 1, 1, 3, 1).is_err());
        assert!(BoundInput::new(5, 0, 1, 5, 1).is_err());
        assert!(BoundInput::new(5, 1, 1, 25, 1).is_ok());
    }
}
