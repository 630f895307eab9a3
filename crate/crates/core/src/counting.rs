//! Character sums, the numerator polynomials P_j(z), and exact counts N_n(ε), I_d(ε).
//!
//! With χ_j(ξ_1^{v_1}⋯ξ_f^{v_f}) = ω_R^{Σ v_i j_i R/r_i}, the count of α ∈ F_{q^n} whose
//! characteristic polynomial lies in ε is
//!
//! ```text
//! N_n(ε) = (1/|E|) · (T_n + Σ_{j≠0} χ_j(ε)^{-1} b_n(P_j))
//! ```
//!
//! where T_n = q^n - 1 (Type I) or q^n (Type II) and b_n(P) = n·[z^n] ln P(z).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclo::{CycloCtx, CycloNum, RootSum};
use crate::error::{Error, Result};
use crate::ff::enumerate_monic;
use crate::group::{ExponentVector, GroupStructure, Kind, Prescription};

/// A character index j with j_i in [0, r_i); the zero index is the trivial character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharIndex(pub Vec<u64>);

impl CharIndex {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&j| j == 0)
    }
}

impl fmt::Display for CharIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// P(z) = 1 + c_1 z + … + c_τ z^τ over Q(ω_R).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoly {
    coeffs: Vec<CycloNum>,
}

impl PPoly {
    pub fn new(coeffs: Vec<CycloNum>) -> Self {
        assert!(coeffs.first().is_some_and(|c| c.to_rational().is_ok_and(|r| r.is_one())), "P(0) must be 1");
        PPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    /// Coefficient of z^k, zero past the end.
    pub fn coeff(&self, k: usize, ctx: &CycloCtx) -> CycloNum {
        self.coeffs.get(k).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn conjugate(&self, ctx: &CycloCtx) -> PPoly {
        PPoly { coeffs: self.coeffs.iter().map(|c| ctx.conjugate(c)).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }
}

/// Classes hit by monic degree-d polynomials (nonzero constant for Type I), as a set.
pub fn spectrum(gs: &GroupStructure, d: usize) -> Result<Vec<ExponentVector>> {
    Ok(spectrum_indices(gs, d)?.into_iter().map(|i| gs.unpack(i)).collect())
}

fn spectrum_indices(gs: &GroupStructure, d: usize) -> Result<Vec<u64>> {
    let p = gs.prescription();
    if d < 1 || d > p.tau() {
        return Err(Error::InvalidInput(format!("degree {d} outside 1..={}", p.tau())));
    }
    let mut set = BTreeSet::new();
    for f in enumerate_monic(p.field(), d, p.kind() == Kind::TypeI) {
        if let Some(c) = p.class_of(&f)?.class() {
            set.insert(gs.index_of(&c)?);
        }
    }
    Ok(set.into_iter().collect())
}

/// The exponent e with χ_j(ξ^v) = ω_R^e.
pub fn character_exponent(gs: &GroupStructure, j: &[u64], v: &[u64]) -> u64 {
    let big_r = gs.exponent();
    gs.orders().iter().zip(j.iter().zip(v)).fold(0, |acc, (&r, (&ji, &vi))| (acc + (ji * vi % r) * (big_r / r)) % big_r)
}

/// c_{d,j} = Σ_{ε ∈ E_d} χ_j(ε).
pub fn char_coeff(gs: &GroupStructure, spectrum: &[ExponentVector], j: &CharIndex, ctx: &CycloCtx) -> CycloNum {
    let mut acc = RootSum::new(ctx);
    let one = BigRational::one();
    for v in spectrum {
        acc.add_root(character_exponent(gs, &j.0, &v.0) as i64, &one);
    }
    acc.reduce(ctx)
}

/// P_j(z) = 1 + Σ_{d=1}^{τ} c_{d,j} z^d.
pub fn build_p(gs: &GroupStructure, j: &CharIndex, ctx: &CycloCtx) -> Result<PPoly> {
    let tau = gs.prescription().tau();
    let mut coeffs = vec![ctx.one()];
    for d in 1..=tau {
        coeffs.push(char_coeff(gs, &spectrum(gs, d)?, j, ctx));
    }
    Ok(PPoly::new(coeffs))
}

/// b_n = n·[z^n] ln P(z) for n = 1..=n_max, from b_n = n c_n - Σ_{k<n} b_k c_{n-k}.
pub fn log_series(p: &PPoly, n_max: usize, ctx: &CycloCtx) -> Vec<CycloNum> {
    let c = p.coeffs();
    let mut b: Vec<CycloNum> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut acc = match c.get(n) {
            Some(cn) => ctx.scale(cn, &BigRational::from_integer(n.into())),
            None => ctx.zero(),
        };
        for k in 1..n {
            if let Some(ck) = c.get(n - k) {
                if !ck.is_zero() && !b[k - 1].is_zero() {
                    acc = &acc - &ctx.mul(&b[k - 1], ck);
                }
            }
        }
        b.push(acc);
    }
    b
}

/// All s with k·s ≡ t (mod r) componentwise.
pub fn solve_power_congruence(orders: &[u64], k: u64, t: &ExponentVector) -> Vec<ExponentVector> {
    let mut sols = vec![Vec::with_capacity(orders.len())];
    for (&r, &ti) in orders.iter().zip(&t.0) {
        let comp: Vec<u64> = (0..r).filter(|s| (k % r) * s % r == ti % r).collect();
        if comp.is_empty() {
            return Vec::new();
        }
        sols = sols
            .into_iter()
            .flat_map(|prefix| {
                comp.iter().map(move |&s| {
                    let mut v = prefix.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    sols.into_iter().map(ExponentVector).collect()
}

/// Number of monic irreducibles of degree d over F_q: (1/d) Σ_{k|d} μ(k) q^{d/k}.
pub fn total_irreducibles(q: u64, d: u64) -> BigInt {
    assert!(d >= 1, "degree must be positive");
    let qb = BigInt::from(q);
    let sum: BigInt = arith::divisors(d)
        .into_iter()
        .map(|k| BigInt::from(arith::mobius(k)) * num_traits::pow(qb.clone(), (d / k) as usize))
        .sum();
    sum / BigInt::from(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountKind {
    N,
    I,
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountKind::N => "N",
            CountKind::I => "I",
        })
    }
}

/// Counts for n = 1..=n_max over every class, indexed by packed exponent index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    kind: CountKind,
    orders: Vec<u64>,
    rows: Vec<Vec<BigInt>>,
}

impl CountTable {
    pub fn kind(&self) -> CountKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// The value at degree n (1-based) for the class with packed index `index`.
    pub fn at(&self, n: usize, index: u64) -> &BigInt {
        &self.rows[n - 1][index as usize]
    }

    pub fn get(&self, n: usize, v: &ExponentVector) -> Option<&BigInt> {
        if n == 0 || v.0.len() != self.orders.len() || v.0.iter().zip(&self.orders).any(|(a, r)| a >= r) {
            return None;
        }
        let idx = v.0.iter().zip(&self.orders).fold(0, |acc, (a, r)| acc * r + a);
        self.rows.get(n - 1).map(|row| &row[idx as usize])
    }

    /// Row for degree n, by packed index.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n - 1]
    }
}

/// The trivial character's contribution to the log-zeta: ln((1-z)/(1-qz)) for Type I,
/// ln(1/(1-qz)) for Type II. Polynomials are integer coefficient lists, constant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialFactor {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ZetaNumerators {
    pub trivial: TrivialFactor,
    pub numerators: Vec<(CharIndex, PPoly)>,
}

/// Evaluation engine for one group: spectra and P_j are built once, log series are
/// cached per character and extended on demand.
pub struct Counter {
    gs: GroupStructure,
    ctx: CycloCtx,
    polys: Vec<PPoly>,
    logs: Vec<Vec<CycloNum>>,
}

impl Counter {
    pub fn new(gs: GroupStructure) -> Result<Self> {
        let ctx = CycloCtx::new(gs.exponent());
        let tau = gs.prescription().tau();
        let spectra: Vec<Vec<ExponentVector>> = (1..=tau).map(|d| spectrum(&gs, d)).collect::<Result<_>>()?;
        let polys = gs
            .exponent_vectors()
            .map(|j| {
                let j = CharIndex(j.0);
                let mut coeffs = vec![ctx.one()];
                coeffs.extend(spectra.iter().map(|s| char_coeff(&gs, s, &j, &ctx)));
                PPoly::new(coeffs)
            })
            .collect();
        let logs = vec![Vec::new(); gs.order() as usize];
        Ok(Counter { gs, ctx, polys, logs })
    }

    pub fn group(&self) -> &GroupStructure {
        &self.gs
    }

    pub fn prescription(&self) -> &Prescription {
        self.gs.prescription()
    }

    pub fn cyclo(&self) -> &CycloCtx {
        &self.ctx
    }

    pub fn p_poly(&self, j: &CharIndex) -> Result<&PPoly> {
        let idx = self.gs.pack(&ExponentVector(j.0.clone()))?;
        Ok(&self.polys[idx as usize])
    }

    /// b_1..b_{n_max} of P_j.
    pub fn log_coeffs(&mut self, j: &CharIndex, n_max: usize) -> Result<&[CycloNum]> {
        let idx = self.gs.pack(&ExponentVector(j.0.clone()))? as usize;
        self.ensure_logs(n_max);
        Ok(&self.logs[idx][..n_max])
    }

    fn ensure_logs(&mut self, n_max: usize) {
        for (p, log) in self.polys.iter().zip(self.logs.iter_mut()) {
            if log.len() < n_max {
                *log = log_series(p, n_max, &self.ctx);
            }
        }
    }

    fn trivial_term(&self, n: usize) -> BigInt {
        let qn = num_traits::pow(BigInt::from(self.prescription().field().q()), n);
        match self.prescription().kind() {
            Kind::TypeI => qn - 1,
            Kind::TypeII => qn,
        }
    }

    fn finish(&self, sum: CycloNum, n: usize, what: &str) -> Result<BigInt> {
        let r = sum.to_rational()? + BigRational::from_integer(self.trivial_term(n));
        let r = r / BigRational::from_integer(self.gs.order().into());
        if !r.is_integer() || r.is_negative() {
            return Err(Error::NotInteger(format!("{what} = {r}")));
        }
        Ok(r.to_integer())
    }

    /// N_n(ε) for one class.
    pub fn n_of(&mut self, eps: &ExponentVector, n: usize) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        self.gs.pack(eps)?;
        self.ensure_logs(n);
        let mut acc = RootSum::new(&self.ctx);
        let big_r = self.gs.exponent() as i64;
        for (idx, log) in self.logs.iter().enumerate().skip(1) {
            let j = self.gs.unpack(idx as u64);
            let e = character_exponent(&self.gs, &j.0, &eps.0) as i64;
            acc.add_rotated(&log[n - 1], (big_r - e) % big_r);
        }
        self.finish(acc.reduce(&self.ctx), n, &format!("N_{n}{eps}"))
    }

    /// N_n(ε) for all ε and n = 1..=n_max, via an axis-wise inverse transform per n.
    pub fn n_table(&mut self, n_max: usize) -> Result<CountTable> {
        self.ensure_logs(n_max);
        let mut rows = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let mut data: Vec<RootSum> = self
                .logs
                .iter()
                .enumerate()
                .map(|(idx, log)| {
                    let mut s = RootSum::new(&self.ctx);
                    if idx != 0 {
                        s.add_rotated(&log[n - 1], 0);
                    }
                    s
                })
                .collect();
            self.inverse_transform(&mut data);
            let row = data
                .into_iter()
                .enumerate()
                .map(|(idx, s)| {
                    let what = format!("N_{n}{}", self.gs.unpack(idx as u64));
                    self.finish(s.reduce(&self.ctx), n, &what)
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(CountTable { kind: CountKind::N, orders: self.gs.orders().to_vec(), rows })
    }

    /// out[v] = Σ_j χ_j(ξ^v)^{-1} in[j], one cyclic axis at a time.
    fn inverse_transform(&self, data: &mut [RootSum]) {
        let orders = self.gs.orders();
        let big_r = self.gs.exponent() as i64;
        let total = data.len();
        let mut stride = total;
        for &r in orders {
            let r = r as usize;
            stride /= r;
            let step = big_r / r as i64;
            for block in (0..total).step_by(stride * r) {
                for off in 0..stride {
                    let base = block + off;
                    let line: Vec<RootSum> = (0..r).map(|j| data[base + j * stride].clone()).collect();
                    for v in 0..r {
                        let mut s = RootSum::new(&self.ctx);
                        for (j, item) in line.iter().enumerate() {
                            let e = (v * j % r) as i64 * step;
                            s.add_rotated_sum(item, -e);
                        }
                        data[base + v * stride] = s;
                    }
                }
            }
        }
    }

    /// I_d(ε) for all ε and d = 1..=d_max by Möbius inversion of the N table.
    pub fn i_table(&mut self, d_max: usize) -> Result<CountTable> {
        let n = self.n_table(d_max)?;
        self.i_table_from(&n)
    }

    pub fn i_table_from(&self, n: &CountTable) -> Result<CountTable> {
        let order = self.gs.order();
        let mut rows = Vec::with_capacity(n.n_max());
        for d in 1..=n.n_max() {
            let mut acc = vec![BigInt::zero(); order as usize];
            for k in arith::divisors(d as u64) {
                let mu = arith::mobius(k);
                if mu == 0 {
                    continue;
                }
                for s in 0..order {
                    let t = self.gs.pack(&self.gs.scale_exponents(&self.gs.unpack(s), k))?;
                    let val = n.at(d / k as usize, s);
                    if mu > 0 {
                        acc[t as usize] += val;
                    } else {
                        acc[t as usize] -= val;
                    }
                }
            }
            let row = acc
                .into_iter()
                .enumerate()
                .map(|(idx, a)| self.divide_degree(a, d, &self.gs.unpack(idx as u64)))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(CountTable { kind: CountKind::I, orders: self.gs.orders().to_vec(), rows })
    }

    fn divide_degree(&self, a: BigInt, d: usize, v: &ExponentVector) -> Result<BigInt> {
        let db = BigInt::from(d);
        if a.is_negative() || !(&a % &db).is_zero() {
            return Err(Error::NotInteger(format!("I_{d}{v} = {a}/{d}")));
        }
        Ok(a / db)
    }

    /// I_d(t) for one class, through the power congruence k·s ≡ t.
    pub fn i_of(&mut self, t: &ExponentVector, d: usize) -> Result<BigInt> {
        if d == 0 {
            return Err(Error::InvalidInput("d must be at least 1".into()));
        }
        self.gs.pack(t)?;
        let mut acc = BigInt::zero();
        for k in arith::divisors(d as u64) {
            let mu = arith::mobius(k);
            if mu == 0 {
                continue;
            }
            for s in solve_power_congruence(self.gs.orders(), k, t) {
                acc += BigInt::from(mu) * self.n_of(&s, d / k as usize)?;
            }
        }
        self.divide_degree(acc, d, t)
    }

    /// Every nontrivial P_j with the trivial factor.
    pub fn zeta_numerators(&self) -> ZetaNumerators {
        let q = self.prescription().field().q() as i64;
        let trivial = match self.prescription().kind() {
            Kind::TypeI => TrivialFactor { numerator: vec![1, -1], denominator: vec![1, -q] },
            Kind::TypeII => TrivialFactor { numerator: vec![1], denominator: vec![1, -q] },
        };
        let numerators = self
            .polys
            .iter()
            .enumerate()
            .skip(1)
            .map(|(idx, p)| (CharIndex(self.gs.unpack(idx as u64).0), p.clone()))
            .collect();
        ZetaNumerators { trivial, numerators }
    }
}
