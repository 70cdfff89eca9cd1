//! Sparse multivariate polynomials with exact integer coefficients.
//!
//! These model the defining data of self-maps and subvarieties: iteration,
//! Jacobians, and residue-disk rescaling all happen here, exactly over `Z`,
//! before anything is reduced to a finite ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::modmath::pow_mod;
use crate::ring::{PadicScalar, RingParams};

/// A polynomial in `vars` variables over `Z`, stored as a sparse map from
/// exponent vectors to coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(vars: usize) -> Self {
        IntPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: i64) -> Self {
        let mut poly = Self::zero(vars);
        poly.add_term(&vec![0; vars], BigInt::from(c));
        poly
    }

    /// The coordinate polynomial `x_j`.
    pub fn variable(vars: usize, j: usize) -> Self {
        assert!(j < vars);
        let mut exps = vec![0; vars];
        exps[j] = 1;
        let mut poly = Self::zero(vars);
        poly.add_term(&exps, BigInt::from(1));
        poly
    }

    /// Builds a polynomial from `(coefficient, exponent-vector)` pairs.
    pub fn from_terms(vars: usize, terms: &[(i64, &[u32])]) -> Self {
        let mut poly = Self::zero(vars);
        for (c, exps) in terms {
            assert_eq!(exps.len(), vars, "exponent vector arity mismatch");
            poly.add_term(&exps.to_vec(), BigInt::from(*c));
        }
        poly
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: &Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.vars);
        let entry = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(exps);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_big(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: i64) -> Self {
        self.scale_big(&BigInt::from(c))
    }

    pub fn scale_big(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        IntPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(&exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars, 1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `j`.
    pub fn derivative(&self, j: usize) -> Self {
        assert!(j < self.vars);
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[j] -= 1;
            out.add_term(&exps, c * BigInt::from(e[j]));
        }
        out
    }

    /// Substitutes `args[i]` for variable `i`. All arguments must share an
    /// arity, which becomes the arity of the result.
    pub fn substitute(&self, args: &[IntPoly]) -> Self {
        assert_eq!(args.len(), self.vars);
        let out_vars = args.first().map_or(self.vars, |a| a.vars);
        let mut out = Self::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(out_vars, 1);
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&args[j].pow(k));
                }
            }
            out = out.add(&term.scale_big(c));
        }
        out
    }

    pub fn eval_bigint(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.vars);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= point[j].pow(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluation over `Z/m` at a point with entries in `[0, m)`.
    pub fn eval_mod(&self, point: &[u64], m: u64) -> u64 {
        assert_eq!(point.len(), self.vars);
        let mut acc: u64 = 0;
        for (e, c) in &self.terms {
            let mut t = reduce_bigint(c, m);
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = ((t as u128 * pow_mod(point[j], k as u64, m) as u128) % m as u128) as u64;
                }
            }
            acc = ((acc as u128 + t as u128) % m as u128) as u64;
        }
        acc
    }

    /// Evaluation at a tuple of ring elements, mapping integer coefficients
    /// into the ring.
    pub fn eval_scalar(&self, point: &[PadicScalar], params: RingParams) -> PadicScalar {
        assert_eq!(point.len(), self.vars);
        let mut acc = PadicScalar::zero(params);
        for (e, c) in &self.terms {
            let mut t = PadicScalar::from_bigint(c, params);
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&point[j].pow(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

pub(crate) fn reduce_bigint(c: &BigInt, m: u64) -> u64 {
    use num_traits::ToPrimitive;
    let m_big = BigInt::from(m);
    let mut r = c % &m_big;
    if r.is_negative() {
        r += &m_big;
    }
    r.to_u64().expect("reduced coefficient fits u64")
}
