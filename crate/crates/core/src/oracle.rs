//! Brute-force ground truth: irreducible enumeration for I_d and characteristic
//! polynomials over F_{q^n} for N_n.

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::counting::Counter;
use crate::error::{Error, Result};
use crate::ff::{enumerate_monic, FPoly, Fe, FieldCtx};
use crate::group::{ExponentVector, GroupStructure, Kind};

/// Default cap on the number of candidates (polynomials or field elements) per degree.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Class tallies indexed by packed exponent index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    orders: Vec<u64>,
    counts: Vec<u64>,
}

impl Tally {
    fn new(gs: &GroupStructure) -> Self {
        Tally { orders: gs.orders().to_vec(), counts: vec![0; gs.order() as usize] }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, v: &ExponentVector) -> Option<u64> {
        if v.0.len() != self.orders.len() || v.0.iter().zip(&self.orders).any(|(a, r)| a >= r) {
            return None;
        }
        let idx = v.0.iter().zip(&self.orders).fold(0, |acc, (a, r)| acc * r + a);
        Some(self.counts[idx as usize])
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

fn check_budget(q: u64, n: usize, budget: u64) -> Result<()> {
    let needed = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(q as u128)).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// I_d(ε) by enumerating monic degree-d polynomials and testing irreducibility.
pub fn brute_i(gs: &GroupStructure, d: usize, budget: u64) -> Result<Tally> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be at least 1".into()));
    }
    let p = gs.prescription();
    let field = p.field();
    check_budget(field.q(), d, budget)?;
    let mut tally = Tally::new(gs);
    for f in enumerate_monic(field, d, false) {
        if !field.is_irreducible(&f)? {
            continue;
        }
        // Type I: only f = x lands on the zero marker
        if let Some(c) = p.class_of(&f)?.class() {
            tally.counts[gs.index_of(&c)? as usize] += 1;
        }
    }
    Ok(tally)
}

/// F_{q^n} as F_q[y]/(m), elements as coefficient vectors of length n.
struct ExtField<'a> {
    base: &'a FieldCtx,
    n: usize,
    /// m without its leading 1, constant first
    m: Vec<Fe>,
    scratch: Vec<Fe>,
}

impl<'a> ExtField<'a> {
    fn new(base: &'a FieldCtx, n: usize) -> Self {
        let m = base.least_irreducible(n).coeffs()[..n].to_vec();
        ExtField { base, n, m, scratch: vec![Fe::ZERO; 2 * n] }
    }

    fn element(&self, mut idx: u64) -> Vec<Fe> {
        let q = self.base.q();
        (0..self.n)
            .map(|_| {
                let c = Fe(idx % q);
                idx /= q;
                c
            })
            .collect()
    }

    fn mul_into(&mut self, a: &[Fe], b: &[Fe], out: &mut [Fe]) {
        let f = self.base;
        let n = self.n;
        let prod = &mut self.scratch;
        prod.iter_mut().for_each(|c| *c = Fe::ZERO);
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c.is_zero() {
                continue;
            }
            prod[i] = Fe::ZERO;
            for (k, &mk) in self.m.iter().enumerate() {
                prod[i - n + k] = f.sub(prod[i - n + k], f.mul(c, mk));
            }
        }
        out.copy_from_slice(&prod[..n]);
    }

    fn mul(&mut self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.n];
        self.mul_into(a, b, &mut out);
        out
    }

    fn frobenius(&mut self, a: &[Fe]) -> Vec<Fe> {
        let mut e = self.base.q();
        let mut acc: Vec<Fe> = std::iter::once(Fe::ONE).chain(std::iter::repeat(Fe::ZERO)).take(self.n).collect();
        let mut sq = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Q_α(x) = Π_{j<n} (x - α^{q^j}), which has coefficients in F_q.
    fn char_poly(&mut self, alpha: &[Fe]) -> FPoly {
        let f = self.base;
        let n = self.n;
        // coefficients in F_{q^n}, constant first
        let mut q_poly: Vec<Vec<Fe>> = vec![self.element(1)];
        let mut beta = alpha.to_vec();
        let mut tmp = vec![Fe::ZERO; n];
        for _ in 0..n {
            let mut next = vec![vec![Fe::ZERO; n]; q_poly.len() + 1];
            for (i, c) in q_poly.iter().enumerate() {
                for (dst, &src) in next[i + 1].iter_mut().zip(c) {
                    *dst = f.add(*dst, src);
                }
                self.mul_into(&beta, c, &mut tmp);
                for (dst, &src) in next[i].iter_mut().zip(&tmp) {
                    *dst = f.sub(*dst, src);
                }
            }
            q_poly = next;
            beta = self.frobenius(&beta);
        }
        assert_eq!(beta, alpha, "α^{{q^n}} must return to α");
        let coeffs = q_poly
            .into_iter()
            .map(|c| {
                assert!(c[1..].iter().all(|x| x.is_zero()), "Q_α has coefficients outside F_q");
                c[0]
            })
            .collect();
        FPoly::new(coeffs)
    }
}

/// N_n(ε) as the number of α ∈ F_{q^n} whose characteristic polynomial over F_q lies in ε.
pub fn brute_f(gs: &GroupStructure, n: usize, budget: u64) -> Result<Tally> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let p = gs.prescription();
    let field = p.field();
    check_budget(field.q(), n, budget)?;
    let mut ext = ExtField::new(field, n);
    let mut tally = Tally::new(gs);
    let size = field.q().pow(n as u32);
    for idx in 0..size {
        let alpha = ext.element(idx);
        let q_alpha = ext.char_poly(&alpha);
        match p.class_of(&q_alpha)?.class() {
            Some(c) => tally.counts[gs.index_of(&c)? as usize] += 1,
            None => assert_eq!(idx, 0, "only α = 0 has Q_α(0) = 0"),
        }
    }
    Ok(tally)
}

/// Q_α for the α with the given index in F_{q^n} = F_q[y]/(m); index digits are the
/// coefficients of 1, y, y², … in base q.
pub fn char_poly_of(field: &FieldCtx, n: usize, index: u64) -> FPoly {
    let mut ext = ExtField::new(field, n);
    let alpha = ext.element(index);
    ext.char_poly(&alpha)
}

/// α ↦ α^q as an element index.
pub fn frobenius_index(field: &FieldCtx, n: usize, index: u64) -> u64 {
    let mut ext = ExtField::new(field, n);
    let alpha = ext.element(index);
    let beta = ext.frobenius(&alpha);
    beta.iter().rev().fold(0, |acc, c| acc * field.q() + c.0)
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceInfo {
    pub q: u64,
    pub p: u64,
    pub r: u32,
    pub modulus: Option<Vec<u64>>,
    #[serde(rename = "type")]
    pub kind: Kind,
    pub ell: usize,
    pub t: Option<usize>,
    pub group_order: u64,
    pub factors: Vec<u64>,
}

impl InstanceInfo {
    pub fn of(gs: &GroupStructure) -> Self {
        let p = gs.prescription();
        let f = p.field();
        InstanceInfo {
            q: f.q(),
            p: f.p(),
            r: f.r(),
            modulus: f.modulus().map(|m| m.to_vec()),
            kind: p.kind(),
            ell: p.ell(),
            t: (p.kind() == Kind::TypeI).then_some(p.t()),
            group_order: gs.order(),
            factors: gs.orders().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    /// "N" or "I"
    pub quantity: String,
    pub n: usize,
    pub class: ExponentVector,
    pub representative: String,
    #[serde(serialize_with = "as_decimal")]
    pub expected: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub computed: BigInt,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub instance: InstanceInfo,
    pub n_max: usize,
    pub d_max: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl OracleReport {
    pub fn first_mismatch(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.ok)
    }
}

/// Compares brute_f with N_n for n ≤ n_max and brute_i with I_d for d ≤ d_max, on
/// every class.
pub fn verify(gs: &GroupStructure, n_max: usize, d_max: usize, budget: u64) -> Result<OracleReport> {
    let start = Instant::now();
    let mut counter = Counter::new(gs.clone())?;
    let top = n_max.max(d_max);
    let n_table = counter.n_table(top.max(1))?;
    let i_table = counter.i_table_from(&n_table)?;
    let mut checks = Vec::new();
    let mut push = |quantity: &str, n: usize, tally: &Tally, table: &crate::counting::CountTable| {
        for (idx, &count) in tally.counts().iter().enumerate() {
            let expected = BigInt::from(count);
            let computed = table.at(n, idx as u64).clone();
            checks.push(Check {
                quantity: quantity.to_string(),
                n,
                class: gs.unpack(idx as u64),
                representative: gs.class_at(idx as u64).to_poly().to_text(),
                ok: expected == computed,
                expected,
                computed,
            });
        }
    };
    for n in 1..=n_max {
        push("N", n, &brute_f(gs, n, budget)?, &n_table);
    }
    for d in 1..=d_max {
        push("I", d, &brute_i(gs, d, budget)?, &i_table);
    }
    let passed = checks.iter().all(|c| c.ok);
    Ok(OracleReport {
        instance: InstanceInfo::of(gs),
        n_max,
        d_max,
        checks,
        passed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
