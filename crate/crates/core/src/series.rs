//! Truncated multivariate power-series tuples over the working ring.
//!
//! A `SeriesTuple` is a g-tuple of polynomials in g variables, truncated at
//! total degree `D`, with coefficients at absolute precision `N`. The module
//! provides composition, m-fold iteration, linear-part extraction, congruence
//! testing, the degree-`e+1` truncation fingerprint, and the closed-form
//! iterate-order congruence check.
//!
//! Truncation soundness: for tuples satisfying the scaling invariant (each
//! degree-d coefficient has pi-valuation >= d-1) and `D >= e*N`, every term
//! discarded by the degree cap has valuation >= e*N and composition is exact
//! at working precision. `ScaledSeriesTuple` is the checked carrier of that
//! invariant.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::modmath::det_mod_p;
use crate::poly::IntPoly;
use crate::ring::{PadicScalar, RingParams};

type Component = BTreeMap<Vec<u32>, PadicScalar>;

/// Composition would materialize more monomials than this.
const MAX_MONOMIALS: u128 = 500_000;

/// A g-tuple of truncated power series over the working ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTuple {
    params: RingParams,
    vars: usize,
    cap: u32,
    components: Vec<Component>,
}

/// Degree-0 and degree-1 data of a tuple: `F(z) = C + L z + (higher order)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearData {
    pub translation: Vec<PadicScalar>,
    pub matrix: Vec<Vec<PadicScalar>>,
}

impl LinearData {
    pub fn residue_translation(&self) -> Vec<u64> {
        self.translation.iter().map(|c| c.residue()).collect()
    }

    pub fn residue_matrix(&self) -> Vec<Vec<u64>> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|c| c.residue()).collect())
            .collect()
    }
}

impl SeriesTuple {
    pub fn new(
        params: RingParams,
        vars: usize,
        cap: u32,
        components: Vec<Vec<(Vec<u32>, PadicScalar)>>,
    ) -> Result<Self> {
        if vars == 0 || cap == 0 {
            return Err(Error::InvalidParameter(
                "need vars >= 1 and cap >= 1".into(),
            ));
        }
        if components.len() != vars {
            return Err(Error::Mismatch(format!(
                "expected {} components, got {}",
                vars,
                components.len()
            )));
        }
        let mut out = Vec::with_capacity(vars);
        for terms in components {
            let mut comp = Component::new();
            for (exps, c) in terms {
                if exps.len() != vars {
                    return Err(Error::Mismatch("exponent vector arity mismatch".into()));
                }
                if exps.iter().sum::<u32>() > cap {
                    return Err(Error::Mismatch("term exceeds the degree cap".into()));
                }
                if c.params() != params {
                    return Err(Error::Mismatch("coefficient ring parameters differ".into()));
                }
                if !c.is_zero() {
                    let slot = comp
                        .entry(exps)
                        .or_insert_with(|| PadicScalar::zero(params));
                    *slot = slot.add(&c);
                }
            }
            comp.retain(|_, c| !c.is_zero());
            out.push(comp);
        }
        Ok(SeriesTuple {
            params,
            vars,
            cap,
            components: out,
        })
    }

    /// The identity tuple `z = (z_1, ..., z_g)`.
    pub fn identity(params: RingParams, vars: usize, cap: u32) -> Self {
        let mut components = Vec::with_capacity(vars);
        for i in 0..vars {
            let mut exps = vec![0u32; vars];
            exps[i] = 1;
            let mut comp = Component::new();
            comp.insert(exps, PadicScalar::one(params));
            components.push(comp);
        }
        SeriesTuple {
            params,
            vars,
            cap,
            components,
        }
    }

    /// Converts integer polynomials into a tuple, reducing coefficients into
    /// the ring. Errors if a term exceeds the cap.
    pub fn from_int_polys(params: RingParams, cap: u32, polys: &[IntPoly]) -> Result<Self> {
        let vars = polys.len();
        let mut components = Vec::with_capacity(vars);
        for poly in polys {
            if poly.vars() != vars {
                return Err(Error::Mismatch("polynomial arity mismatch".into()));
            }
            let mut terms = Vec::new();
            for (exps, c) in poly.terms() {
                terms.push((exps.clone(), PadicScalar::from_bigint(c, params)));
            }
            components.push(terms);
        }
        Self::new(params, vars, cap, components)
    }

    /// Test-friendly constructor from integer coefficients.
    pub fn from_integer_terms(
        params: RingParams,
        vars: usize,
        cap: u32,
        components: &[&[(i64, &[u32])]],
    ) -> Result<Self> {
        let built = components
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|(c, exps)| (exps.to_vec(), PadicScalar::from_integer(*c, params)))
                    .collect()
            })
            .collect();
        Self::new(params, vars, cap, built)
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn component(&self, i: usize) -> impl Iterator<Item = (&Vec<u32>, &PadicScalar)> {
        self.components[i].iter()
    }

    pub fn coefficient(&self, i: usize, exps: &[u32]) -> PadicScalar {
        self.components[i]
            .get(exps)
            .cloned()
            .unwrap_or_else(|| PadicScalar::zero(self.params))
    }

    /// Returns the same tuple under a different degree cap, dropping terms
    /// when the cap shrinks.
    pub fn with_cap(&self, cap: u32) -> Self {
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= cap)
                    .map(|(e, c)| (e.clone(), c.clone()))
                    .collect()
            })
            .collect();
        SeriesTuple {
            params: self.params,
            vars: self.vars,
            cap,
            components,
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.params != other.params || self.vars != other.vars || self.cap != other.cap {
            return Err(Error::Mismatch(
                "series tuples differ in params, vars, or cap".into(),
            ));
        }
        Ok(())
    }

    /// `(C, L)` read off the degree-0 and degree-1 coefficients.
    pub fn linear_part(&self) -> LinearData {
        let zero_exps = vec![0u32; self.vars];
        let translation = (0..self.vars)
            .map(|i| self.coefficient(i, &zero_exps))
            .collect();
        let matrix = (0..self.vars)
            .map(|i| {
                (0..self.vars)
                    .map(|j| {
                        let mut exps = vec![0u32; self.vars];
                        exps[j] = 1;
                        self.coefficient(i, &exps)
                    })
                    .collect()
            })
            .collect();
        LinearData {
            translation,
            matrix,
        }
    }

    /// True iff every coefficient of `self - other` has pi-valuation >= `t`.
    pub fn congruent_mod(&self, other: &Self, t: u32) -> Result<bool> {
        self.check_shape(other)?;
        if t == 0 || t > self.params.valuation_cap() {
            return Err(Error::InvalidParameter(format!(
                "congruence exponent {t} outside 1..={}",
                self.params.valuation_cap()
            )));
        }
        for (a, b) in self.components.iter().zip(&other.components) {
            let keys: BTreeSet<&Vec<u32>> = a.keys().chain(b.keys()).collect();
            for exps in keys {
                let zero = PadicScalar::zero(self.params);
                let ca = a.get(exps).unwrap_or(&zero);
                let cb = b.get(exps).unwrap_or(&zero);
                if ca.sub(cb).valuation() < t {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `self(other)`: substitutes `other` into `self` componentwise,
    /// truncating at the shared degree cap.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let table = MonomialTable::build(self.vars, self.cap)?;
        let dense_inner: Vec<Vec<PadicScalar>> = other
            .components
            .iter()
            .map(|c| table.densify(c, self.params))
            .collect();

        // Every power product of the inner tuple that the outer support needs,
        // computed once. product(alpha) = product(alpha - e_j) * inner_j.
        let mut needed: BTreeSet<Vec<u32>> = BTreeSet::new();
        for comp in &self.components {
            needed.extend(comp.keys().cloned());
        }
        let mut products: HashMap<Vec<u32>, Vec<PadicScalar>> = HashMap::new();
        let mut one = vec![PadicScalar::zero(self.params); table.len()];
        one[table.index(&vec![0; self.vars]).expect("constant monomial")] =
            PadicScalar::one(self.params);
        products.insert(vec![0; self.vars], one);
        for alpha in &needed {
            self.fill_product(alpha, &dense_inner, &table, &mut products);
        }

        let mut components = Vec::with_capacity(self.vars);
        for comp in &self.components {
            let mut acc = vec![PadicScalar::zero(self.params); table.len()];
            for (alpha, c) in comp {
                let prod = &products[alpha];
                for (slot, val) in acc.iter_mut().zip(prod) {
                    if !val.is_zero() {
                        slot.add_mul_assign(c, val);
                    }
                }
            }
            components.push(table.sparsify(acc));
        }
        Ok(SeriesTuple {
            params: self.params,
            vars: self.vars,
            cap: self.cap,
            components,
        })
    }

    fn fill_product(
        &self,
        alpha: &Vec<u32>,
        dense_inner: &[Vec<PadicScalar>],
        table: &MonomialTable,
        products: &mut HashMap<Vec<u32>, Vec<PadicScalar>>,
    ) {
        if products.contains_key(alpha) {
            return;
        }
        let j = alpha
            .iter()
            .position(|&k| k > 0)
            .expect("nonconstant exponent");
        let mut prev = alpha.clone();
        prev[j] -= 1;
        self.fill_product(&prev, dense_inner, table, products);
        let base = &products[&prev];
        let result = table.mul(base, &dense_inner[j], self.params);
        products.insert(alpha.clone(), result);
    }

    /// The m-fold self-composition; `iterate(F, 0)` is the identity. Powers
    /// are combined by repeated squaring, which agrees with sequential
    /// composition wherever the truncated composition is exact (linear
    /// tuples, and scaled tuples with `cap >= e*N`).
    pub fn iterate(&self, m: u64) -> Result<Self> {
        let mut acc = Self::identity(self.params, self.vars, self.cap);
        let mut base = self.clone();
        let mut k = m;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates the tuple at a point of `o_v^g`.
    pub fn evaluate(&self, point: &[PadicScalar]) -> Result<Vec<PadicScalar>> {
        if point.len() != self.vars {
            return Err(Error::Mismatch("point arity mismatch".into()));
        }
        if point.iter().any(|c| c.params() != self.params) {
            return Err(Error::Mismatch("point ring parameters differ".into()));
        }
        let mut powers: Vec<Vec<PadicScalar>> = Vec::with_capacity(self.vars);
        for (j, coord) in point.iter().enumerate() {
            let max = self
                .components
                .iter()
                .flat_map(|c| c.keys())
                .map(|e| e[j])
                .max()
                .unwrap_or(0);
            let mut pows = Vec::with_capacity(max as usize + 1);
            pows.push(PadicScalar::one(self.params));
            for _ in 0..max {
                pows.push(pows.last().unwrap().mul(coord));
            }
            powers.push(pows);
        }
        let mut out = Vec::with_capacity(self.vars);
        for comp in &self.components {
            let mut acc = PadicScalar::zero(self.params);
            for (exps, c) in comp {
                let mut term = c.clone();
                for (j, &k) in exps.iter().enumerate() {
                    if k > 0 {
                        term = term.mul(&powers[j][k as usize]);
                    }
                }
                acc = acc.add(&term);
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Graded index of all monomials of total degree <= cap in `vars` variables.
struct MonomialTable {
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// Flat `len x len` product-index table; `usize::MAX` marks a product
    /// past the degree cap. Only built when small enough.
    pairs: Option<Vec<usize>>,
}

impl MonomialTable {
    fn build(vars: usize, cap: u32) -> Result<Self> {
        let mut count: u128 = 1;
        for i in 1..=vars as u128 {
            count = count * (cap as u128 + i) / i;
        }
        if count > MAX_MONOMIALS {
            return Err(Error::Resource(format!(
                "composition would index {count} monomials (vars = {vars}, cap = {cap})"
            )));
        }
        let mut exps = Vec::with_capacity(count as usize);
        let mut current = vec![0u32; vars];
        enumerate(&mut exps, &mut current, 0, cap);
        exps.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
        let index = exps
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut table = MonomialTable {
            exps,
            index,
            pairs: None,
        };
        if table.len() <= 1024 {
            let n = table.len();
            let mut pairs = vec![usize::MAX; n * n];
            for i in 0..n {
                for j in 0..n {
                    let sum: Vec<u32> = table.exps[i]
                        .iter()
                        .zip(&table.exps[j])
                        .map(|(a, b)| a + b)
                        .collect();
                    if sum.iter().sum::<u32>() <= cap {
                        pairs[i * n + j] = table.index[&sum];
                    }
                }
            }
            table.pairs = Some(pairs);
        }
        Ok(table)
    }

    fn len(&self) -> usize {
        self.exps.len()
    }

    fn index(&self, exps: &Vec<u32>) -> Option<usize> {
        self.index.get(exps).copied()
    }

    fn densify(&self, comp: &Component, params: RingParams) -> Vec<PadicScalar> {
        let mut out = vec![PadicScalar::zero(params); self.len()];
        for (exps, c) in comp {
            out[self.index[exps]] = c.clone();
        }
        out
    }

    fn sparsify(&self, dense: Vec<PadicScalar>) -> Component {
        dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exps[i].clone(), c))
            .collect()
    }

    fn mul(&self, a: &[PadicScalar], b: &[PadicScalar], params: RingParams) -> Vec<PadicScalar> {
        let n = self.len();
        let mut out = vec![PadicScalar::zero(params); n];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let slot = match &self.pairs {
                    Some(pairs) => pairs[i * n + j],
                    None => {
                        let sum: Vec<u32> = self.exps[i]
                            .iter()
                            .zip(&self.exps[j])
                            .map(|(x, y)| x + y)
                            .collect();
                        self.index.get(&sum).copied().unwrap_or(usize::MAX)
                    }
                };
                if slot != usize::MAX {
                    out[slot].add_mul_assign(ca, cb);
                }
            }
        }
        out
    }
}

fn enumerate(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, budget: u32) {
    if pos == current.len() {
        out.push(current.clone());
        return;
    }
    for k in 0..=budget {
        current[pos] = k;
        enumerate(out, current, pos + 1, budget - k);
    }
    current[pos] = 0;
}

/// A tuple satisfying the scaling invariant: the coefficient of every stored
/// term of total degree d has pi-valuation >= d - 1. Equivalently each
/// component is `(1/pi) H(pi z)` for an integral `H`. The class is closed
/// under composition, and with `cap >= e*N` its truncated composition is
/// exact at working precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledSeriesTuple(SeriesTuple);

impl ScaledSeriesTuple {
    pub fn new(series: SeriesTuple) -> Result<Self> {
        for i in 0..series.vars {
            for (exps, c) in series.component(i) {
                let degree: u32 = exps.iter().sum();
                if degree >= 2 && c.valuation() + 1 < degree {
                    return Err(Error::Domain(format!(
                        "degree-{degree} coefficient has pi-valuation {} < {}",
                        c.valuation(),
                        degree - 1
                    )));
                }
            }
        }
        Ok(ScaledSeriesTuple(series))
    }

    pub fn as_series(&self) -> &SeriesTuple {
        &self.0
    }

    pub fn into_series(self) -> SeriesTuple {
        self.0
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::new(self.0.compose(&other.0)?)
    }

    pub fn iterate(&self, m: u64) -> Result<Self> {
        Self::new(self.0.iterate(m)?)
    }
}

impl std::ops::Deref for ScaledSeriesTuple {
    type Target = SeriesTuple;

    fn deref(&self) -> &SeriesTuple {
        &self.0
    }
}

/// A tuple reduced mod `pi^(e+1)` and truncated past total degree `e+1`:
/// the finite invariant that separates elements congruent to the identity
/// mod `pi`. Composition of fingerprints matches fingerprints of compositions
/// on scaled tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    params: RingParams,
    vars: usize,
    components: Vec<Component>,
}

impl Fingerprint {
    fn reduce(series: &SeriesTuple) -> Self {
        let t = series.params.ramification() + 1;
        let components = series
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= t)
                    .map(|(e, c)| (e.clone(), c.reduce_mod_pi_pow(t)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Fingerprint {
            params: series.params,
            vars: series.vars,
            components,
        }
    }

    fn to_series(&self) -> SeriesTuple {
        SeriesTuple {
            params: self.params,
            vars: self.vars,
            cap: self.params.ramification() + 1,
            components: self.components.clone(),
        }
    }

    /// Composition in the truncated quotient ring.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.params != other.params || self.vars != other.vars {
            return Err(Error::Mismatch(
                "fingerprints differ in params or vars".into(),
            ));
        }
        Ok(Self::reduce(&self.to_series().compose(&other.to_series())?))
    }

    pub fn component(&self, i: usize) -> impl Iterator<Item = (&Vec<u32>, &PadicScalar)> {
        self.components[i].iter()
    }
}

/// Reduces a scaled tuple congruent to the identity mod `pi` to its
/// fingerprint: coefficients mod `pi^(e+1)`, degrees <= `e+1`.
pub fn fingerprint(f: &ScaledSeriesTuple) -> Result<Fingerprint> {
    let params = f.params();
    let lin = f.linear_part();
    let p = params.p();
    for (i, c) in lin.translation.iter().enumerate() {
        if c.residue() != 0 {
            return Err(Error::Domain(format!(
                "component {i} has constant term not divisible by pi"
            )));
        }
        for (j, entry) in lin.matrix[i].iter().enumerate() {
            let expected = u64::from(i == j);
            if entry.residue() % p != expected {
                return Err(Error::Domain(format!(
                    "linear part is not the identity mod pi at ({i}, {j})"
                )));
            }
        }
    }
    Ok(Fingerprint::reduce(f.as_series()))
}

/// Result of the iterate-order congruence check: with `m = p^(1+r) * #GL_g(F_p)`
/// and `t` the least integer exceeding `e/(p-1)`, the m-th iterate of an
/// admissible tuple must be congruent to the identity mod `pi^t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheckReport {
    pub r: u32,
    pub m: u64,
    pub t: u32,
    pub pass: bool,
}

/// Checks the closed-form order bound on an admissible tuple: `F = C + Lz`
/// mod `pi` with `L` invertible mod `pi`, all nonlinear coefficients in the
/// maximal ideal, and `cap >= e*N` so iteration is exact at precision.
pub fn verify_order_bound(f: &SeriesTuple) -> Result<BoundCheckReport> {
    Ok(verify_order_bound_with_iterate(f)?.0)
}

/// As [`verify_order_bound`], also returning the computed m-th iterate so
/// callers can reuse it (it is congruent to the identity when `pass` holds).
pub fn verify_order_bound_with_iterate(f: &SeriesTuple) -> Result<(BoundCheckReport, SeriesTuple)> {
    let params = f.params();
    let p = params.p();
    let e = params.ramification();
    if f.cap() < params.valuation_cap() {
        return Err(Error::InvalidParameter(format!(
            "degree cap {} below e*N = {}; truncated iteration is not exact",
            f.cap(),
            params.valuation_cap()
        )));
    }
    let lin = f.linear_part();
    if det_mod_p(&lin.residue_matrix(), p) == 0 {
        return Err(Error::Domain("linear part is not invertible mod pi".into()));
    }
    for i in 0..f.vars() {
        for (exps, c) in f.component(i) {
            if exps.iter().sum::<u32>() >= 2 && c.valuation() == 0 {
                return Err(Error::Domain(format!(
                    "component {i} has a unit coefficient in degree >= 2"
                )));
            }
        }
    }

    let r = bounds::r_exponent(p, e);
    let t = bounds::congruence_threshold(p, e);
    let m = bounds::iterate_order(p, e, f.vars() as u32, p)
        .try_into()
        .map_err(|_| Error::Resource("iterate order does not fit in u64".into()))?;
    let iterated = f.iterate(m)?;
    let identity = SeriesTuple::identity(params, f.vars(), f.cap());
    let pass = iterated.congruent_mod(&identity, t)?;
    Ok((BoundCheckReport { r, m, t, pass }, iterated))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, e: u32, n: u32) -> RingParams {
        RingParams::new(p, e, n).unwrap()
    }

    fn univariate(params: RingParams, cap: u32, terms: &[(i64, u32)]) -> SeriesTuple {
        let built: Vec<(i64, Vec<u32>)> = terms.iter().map(|&(c, k)| (c, vec![k])).collect();
        let refs: Vec<(i64, &[u32])> = built.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        SeriesTuple::from_integer_terms(params, 1, cap, &[&refs]).unwrap()
    }

    #[test]
    fn compose_with_identity() {
        let pr = params(5, 1, 3);
        let f = univariate(pr, 3, &[(2, 0), (1, 1), (3, 2)]);
        let id = SeriesTuple::identity(pr, 1, 3);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.compose(&f).unwrap(), f);
    }

    #[test]
    fn compose_linear_is_matrix_product() {
        let pr = params(7, 1, 2);
        // F = L z, G = M z with L = [[1,2],[3,4]], M = [[0,1],[1,1]].
        let f = SeriesTuple::from_integer_terms(
            pr,
            2,
            2,
            &[&[(1, &[1, 0]), (2, &[0, 1])], &[(3, &[1, 0]), (4, &[0, 1])]],
        )
        .unwrap();
        let g = SeriesTuple::from_integer_terms(
            pr,
            2,
            2,
            &[&[(1, &[0, 1])], &[(1, &[1, 0]), (1, &[0, 1])]],
        )
        .unwrap();
        let lm = SeriesTuple::from_integer_terms(
            pr,
            2,
            2,
            &[&[(2, &[1, 0]), (3, &[0, 1])], &[(4, &[1, 0]), (7, &[0, 1])]],
        )
        .unwrap();
        assert_eq!(f.compose(&g).unwrap(), lm);
    }

    #[test]
    fn compose_substitution() {
        let pr = params(5, 1, 3);
        // F = z + z^2, G = 2z  =>  F(G) = 2z + 4z^2.
        let f = univariate(pr, 2, &[(1, 1), (1, 2)]);
        let g = univariate(pr, 2, &[(2, 1)]);
        assert_eq!(f.compose(&g).unwrap(), univariate(pr, 2, &[(2, 1), (4, 2)]));
    }

    #[test]
    fn iterate_closed_forms() {
        let pr = params(5, 1, 3);
        let f = univariate(pr, 2, &[(1, 1), (1, 2)]);
        assert_eq!(f.iterate(0).unwrap(), SeriesTuple::identity(pr, 1, 2));
        assert_eq!(f.iterate(1).unwrap(), f);
        let double = univariate(pr, 2, &[(2, 1)]);
        assert_eq!(double.iterate(4).unwrap(), univariate(pr, 2, &[(16, 1)]));
    }

    #[test]
    fn iterate_matches_sequential_composition() {
        let pr = params(3, 1, 3);
        // Scaled tuple with cap >= e*N, so repeated squaring must agree with
        // one-at-a-time composition.
        let f = univariate(pr, 3, &[(3, 0), (4, 1), (3, 2), (9, 3)]);
        let mut seq = SeriesTuple::identity(pr, 1, 3);
        for m in 0..=6u64 {
            assert_eq!(f.iterate(m).unwrap(), seq, "m = {m}");
            seq = seq.compose(&f).unwrap();
        }
    }

    #[test]
    fn linear_part_extraction() {
        let pr = params(5, 1, 3);
        let f = univariate(pr, 2, &[(3, 0), (2, 1), (5, 2)]);
        let lin = f.linear_part();
        assert_eq!(lin.translation, vec![PadicScalar::from_integer(3, pr)]);
        assert_eq!(lin.matrix, vec![vec![PadicScalar::from_integer(2, pr)]]);

        let id = SeriesTuple::identity(pr, 2, 2);
        let lin = id.linear_part();
        assert!(lin.translation.iter().all(|c| c.is_zero()));
        assert_eq!(lin.residue_matrix(), vec![vec![1, 0], vec![0, 1]]);

        // (x, y) -> (y, x): antidiagonal permutation matrix.
        let swap =
            SeriesTuple::from_integer_terms(pr, 2, 2, &[&[(1, &[0, 1])], &[(1, &[1, 0])]]).unwrap();
        assert_eq!(
            swap.linear_part().residue_matrix(),
            vec![vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn congruences() {
        let un = params(5, 1, 3);
        let f = univariate(un, 2, &[(5, 0), (1, 1)]);
        let z = univariate(un, 2, &[(1, 1)]);
        assert!(f.congruent_mod(&f, 2).unwrap());
        assert!(f.congruent_mod(&z, 1).unwrap());
        assert!(!f.congruent_mod(&z, 2).unwrap());

        let ram = params(5, 2, 3);
        let f = univariate(ram, 2, &[(5, 0), (1, 1)]);
        let z = univariate(ram, 2, &[(1, 1)]);
        assert!(f.congruent_mod(&z, 2).unwrap());

        assert!(matches!(
            f.congruent_mod(&z, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            f.congruent_mod(&z, 99),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn scaled_invariant_enforced() {
        let pr = params(3, 1, 3);
        // 3 z^3 has valuation 1 < 2.
        let bad = univariate(pr, 3, &[(1, 1), (3, 3)]);
        assert!(matches!(ScaledSeriesTuple::new(bad), Err(Error::Domain(_))));
        let good = univariate(pr, 3, &[(1, 1), (9, 3)]);
        assert!(ScaledSeriesTuple::new(good).is_ok());
    }

    #[test]
    fn fingerprint_truncation_rule() {
        // At N = 1 the coefficient 3 of z^3 is already zero at precision, so
        // the tuple is scaled and reduces to z.
        let pr = params(3, 1, 1);
        let f = ScaledSeriesTuple::new(univariate(pr, 3, &[(1, 1), (3, 3)])).unwrap();
        let fp = fingerprint(&f).unwrap();
        let id =
            fingerprint(&ScaledSeriesTuple::new(SeriesTuple::identity(pr, 1, 3)).unwrap()).unwrap();
        assert_eq!(fp, id);

        // Proper truncation: degree 3 >= e + 2 = 3 is dropped, coefficients
        // reduced mod pi^2 = 9.
        let pr = params(3, 1, 3);
        let f = ScaledSeriesTuple::new(univariate(pr, 3, &[(1, 1), (3, 2), (9, 3)])).unwrap();
        let fp = fingerprint(&f).unwrap();
        let expected =
            fingerprint(&ScaledSeriesTuple::new(univariate(pr, 3, &[(1, 1), (3, 2)])).unwrap())
                .unwrap();
        assert_eq!(fp, expected);
    }

    #[test]
    fn fingerprint_requires_identity_mod_pi() {
        let pr = params(3, 1, 2);
        let f = ScaledSeriesTuple::new(univariate(pr, 2, &[(2, 1)])).unwrap();
        assert!(matches!(fingerprint(&f), Err(Error::Domain(_))));
    }

    #[test]
    fn order_bound_translation() {
        // F = z + p at p = 5, e = 1, N = 4: r = 0, m = 20, t = 1, and
        // F^20 = z + 20p = z mod 5.
        let pr = params(5, 1, 4);
        let f = univariate(pr, 4, &[(5, 0), (1, 1)]);
        let report = verify_order_bound(&f).unwrap();
        assert_eq!((report.r, report.m, report.t), (0, 20, 1));
        assert!(report.pass);
    }

    #[test]
    fn order_bound_scaling_and_unit_translation() {
        let pr = params(5, 1, 4);
        // F = 2z: 2^20 = 1 mod 5.
        let f = univariate(pr, 4, &[(2, 1)]);
        assert!(verify_order_bound(&f).unwrap().pass);
        // F = z + 1: F^20 = z + 20 = z mod 5.
        let f = univariate(pr, 4, &[(1, 0), (1, 1)]);
        assert!(verify_order_bound(&f).unwrap().pass);
    }

    #[test]
    fn order_bound_rejects_bad_hypotheses() {
        let pr = params(5, 1, 2);
        // Linear part 5z reduces to 0.
        let f = univariate(pr, 2, &[(5, 1)]);
        assert!(matches!(verify_order_bound(&f), Err(Error::Domain(_))));
        // Unit coefficient in degree 2.
        let f = univariate(pr, 2, &[(1, 1), (1, 2)]);
        assert!(matches!(verify_order_bound(&f), Err(Error::Domain(_))));
        // Cap below e*N.
        let f = univariate(pr, 1, &[(1, 1)]);
        assert!(matches!(
            verify_order_bound(&f),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn evaluate_tuple() {
        let pr = params(5, 1, 3);
        let f = SeriesTuple::from_integer_terms(
            pr,
            2,
            3,
            &[&[(1, &[1, 0]), (1, &[1, 1])], &[(2, &[0, 1]), (1, &[0, 0])]],
        )
        .unwrap();
        let x = PadicScalar::from_integer(3, pr);
        let y = PadicScalar::from_integer(4, pr);
        let out = f.evaluate(&[x, y]).unwrap();
        assert_eq!(out[0], PadicScalar::from_integer(3 + 12, pr));
        assert_eq!(out[1], PadicScalar::from_integer(9, pr));
    }
}
