//! Finite-precision arithmetic in the totally ramified extension
//! `Z_p[pi] / (pi^e - p)`, with all base coefficients stored mod `p^N`.
//!
//! An element is `a_0 + a_1*pi + ... + a_{e-1}*pi^{e-1}` with each `a_i` in
//! `[0, p^N)`. Multiplication reduces `pi^e` to `p`, carrying into the next
//! precision level. With `e = 1` this is plain `Z/p^N` viewed as `Z_p` at
//! absolute precision `N`.

use crate::error::{Error, Result};
use crate::modmath::{inv_mod_prime, is_prime, mul_mod};

/// Parameters of the working ring: prime `p >= 3`, ramification index
/// `e >= 1`, absolute precision `N >= 1` (base coefficients live mod `p^N`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingParams {
    p: u64,
    e: u32,
    precision: u32,
    modulus: u64,
}

impl RingParams {
    pub fn new(p: u64, e: u32, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if p == 2 {
            return Err(Error::InvalidParameter(
                "p must be an odd prime >= 3".into(),
            ));
        }
        if e == 0 || precision == 0 {
            return Err(Error::InvalidParameter(
                "ramification index and precision must be >= 1".into(),
            ));
        }
        let mut modulus: u64 = 1;
        for _ in 0..precision {
            modulus = modulus
                .checked_mul(p)
                .filter(|m| *m < (1 << 62))
                .ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "p^N = {p}^{precision} exceeds the coefficient range"
                    ))
                })?;
        }
        Ok(RingParams {
            p,
            e,
            precision,
            modulus,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Ramification index `e`; `pi^e = p`.
    pub fn ramification(&self) -> u32 {
        self.e
    }

    /// Absolute precision `N` in powers of `p`.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^N`, the modulus of the stored base coefficients.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Largest representable pi-valuation: `e*N`. Used as the valuation of 0.
    pub fn valuation_cap(&self) -> u32 {
        self.e * self.precision
    }
}

/// An element of `Z_p[pi]/(pi^e - p)` at absolute precision `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    params: RingParams,
    coeffs: Vec<u64>,
}

impl PadicScalar {
    pub fn zero(params: RingParams) -> Self {
        PadicScalar {
            params,
            coeffs: vec![0; params.e as usize],
        }
    }

    pub fn one(params: RingParams) -> Self {
        Self::from_integer(1, params)
    }

    /// The uniformizer `pi` (equals `p` when `e = 1`).
    pub fn uniformizer(params: RingParams) -> Self {
        if params.e == 1 {
            return Self::from_integer(params.p as i64, params);
        }
        let mut coeffs = vec![0; params.e as usize];
        coeffs[1] = 1;
        PadicScalar { params, coeffs }
    }

    /// `pi^k`, reduced.
    pub fn uniformizer_pow(params: RingParams, k: u32) -> Self {
        let mut coeffs = vec![0u64; params.e as usize];
        let q = k / params.e;
        let r = (k % params.e) as usize;
        let mut c: u64 = 1;
        for _ in 0..q.min(params.precision) {
            c = mul_mod(c, params.p, params.modulus);
        }
        if q >= params.precision {
            c = 0;
        }
        coeffs[r] = c;
        PadicScalar { params, coeffs }
    }

    /// Image of an integer: `a_0 = n mod p^N`, higher coefficients zero.
    pub fn from_integer(n: i64, params: RingParams) -> Self {
        let mut coeffs = vec![0; params.e as usize];
        coeffs[0] = n.rem_euclid(params.modulus as i64) as u64;
        PadicScalar { params, coeffs }
    }

    pub fn from_bigint(n: &num_bigint::BigInt, params: RingParams) -> Self {
        use num_bigint::BigInt;
        use num_traits::ToPrimitive;
        let m = BigInt::from(params.modulus);
        let r = ((n % &m) + &m) % &m;
        Self::from_integer(r.to_i64().expect("reduced value fits i64"), params)
    }

    /// Builds an element from raw basis coefficients (reduced mod `p^N`).
    pub fn from_coeffs(coeffs: &[u64], params: RingParams) -> Result<Self> {
        if coeffs.len() != params.e as usize {
            return Err(Error::Mismatch(format!(
                "expected {} basis coefficients, got {}",
                params.e,
                coeffs.len()
            )));
        }
        Ok(PadicScalar {
            params,
            coeffs: coeffs.iter().map(|c| c % params.modulus).collect(),
        })
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_params(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::Mismatch("ring parameters differ".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.params, other.params);
        let m = self.params.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= m {
                    s - m
                } else {
                    s
                }
            })
            .collect();
        PadicScalar {
            params: self.params,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let m = self.params.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| if a == 0 { 0 } else { m - a })
            .collect();
        PadicScalar {
            params: self.params,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.params);
        out.add_mul_assign(self, other);
        out
    }

    /// `self += a * b`, without intermediate allocation. The workhorse of
    /// series arithmetic.
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        debug_assert_eq!(a.params, b.params);
        debug_assert_eq!(a.params, self.params);
        let e = self.params.e as usize;
        let m = self.params.modulus;
        let p = self.params.p;
        for i in 0..e {
            let ai = a.coeffs[i];
            if ai == 0 {
                continue;
            }
            for j in 0..e {
                let bj = b.coeffs[j];
                if bj == 0 {
                    continue;
                }
                // pi^(i+j) reduces to p * pi^(i+j-e) once i+j >= e.
                let mut prod = mul_mod(ai, bj, m);
                let t = i + j;
                let slot = if t >= e {
                    prod = mul_mod(prod, p, m);
                    t - e
                } else {
                    t
                };
                let s = self.coeffs[slot] + prod;
                self.coeffs[slot] = if s >= m { s - m } else { s };
            }
        }
    }

    /// Multiplies by an integer scalar.
    pub fn scale(&self, n: i64) -> Self {
        let f = Self::from_integer(n, self.params);
        self.mul(&f)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.params);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The pi-valuation: the largest `t <= e*N` with `self == 0 mod pi^t`.
    /// Zero returns the cap `e*N`.
    ///
    /// Since `v(a_i * pi^i) = e*v_p(a_i) + i` and these are pairwise distinct
    /// mod `e`, the minimum over the basis terms is exact.
    pub fn valuation(&self) -> u32 {
        let cap = self.params.valuation_cap();
        let mut best = cap;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let v = self.params.e * p_valuation(c, self.params.p, self.params.precision) + i as u32;
            best = best.min(v);
        }
        best.min(cap)
    }

    /// Reduction to the residue field `F_p`.
    pub fn residue(&self) -> u64 {
        self.coeffs[0] % self.params.p
    }

    /// Inverse of a unit (valuation 0), exact at precision `N`.
    pub fn invert(&self) -> Result<Self> {
        let v = self.valuation();
        if v > 0 {
            return Err(Error::NonUnit(v));
        }
        // Newton iteration x -> x(2 - ax) from the residue inverse; each step
        // doubles the pi-adic accuracy.
        let r = self.residue();
        let r_inv = inv_mod_prime(r, self.params.p);
        let mut x = Self::from_integer(r_inv as i64, self.params);
        let two = Self::from_integer(2, self.params);
        let mut accuracy: u64 = 1;
        while accuracy < self.params.valuation_cap() as u64 {
            let ax = self.mul(&x);
            x = x.mul(&two.sub(&ax));
            accuracy *= 2;
        }
        debug_assert!(self.mul(&x) == Self::one(self.params));
        Ok(x)
    }

    /// Canonical representative mod `pi^t`: basis coefficient `i` is reduced
    /// mod `p^ceil((t-i)/e)` (and dropped entirely once `i >= t`).
    pub fn reduce_mod_pi_pow(&self, t: u32) -> Self {
        let e = self.params.e;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let i = i as u32;
                if i >= t {
                    return 0;
                }
                let levels = (t - i).div_ceil(e).min(self.params.precision);
                let mut m: u64 = 1;
                for _ in 0..levels {
                    m *= self.params.p;
                }
                c % m
            })
            .collect();
        PadicScalar {
            params: self.params,
            coeffs,
        }
    }
}

/// p-adic valuation of `c` (known mod `p^cap`), capped at `cap`.
fn p_valuation(mut c: u64, p: u64, cap: u32) -> u32 {
    if c == 0 {
        return cap;
    }
    let mut v = 0;
    while c.is_multiple_of(p) && v < cap {
        c /= p;
        v += 1;
    }
    v
}
