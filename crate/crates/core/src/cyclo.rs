//! Exact arithmetic in the cyclotomic field Q(ω_R).
//!
//! Elements are rational coordinate vectors in the power basis 1, ω, …, ω^{φ(R)-1},
//! reduced modulo the cyclotomic polynomial Φ_R. Sums of many rotated terms go through
//! [`RootSum`], which works in Q[x]/(x^R - 1) and reduces once at the end.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Φ_n with integer coefficients, constant term first.
///
/// Computed as (x^n - 1) divided exactly by Φ_d for every proper divisor d of n.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    let mut memo = BTreeMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u64, memo: &mut BTreeMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in arith::divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_memo(d, memo);
        num = exact_div_monic(&num, &den);
    }
    memo.insert(n, num.clone());
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        for (k, dk) in den.iter().enumerate() {
            rem[i - dd + k] -= &c * dk;
        }
        quot[i - dd] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

fn poly_mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Reduction context for Q(ω_R).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloCtx {
    order: u64,
    phi: Vec<BigInt>,
}

impl CycloCtx {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        let mut memo = BTreeMap::new();
        let phi = cyclotomic_memo(order, &mut memo);
        // Π_{d | R} Φ_d = x^R - 1
        let prod = arith::divisors(order)
            .into_iter()
            .map(|d| cyclotomic_memo(d, &mut memo))
            .fold(vec![BigInt::one()], |acc, p| poly_mul_int(&acc, &p));
        let mut expect = vec![BigInt::zero(); order as usize + 1];
        expect[0] = BigInt::from(-1);
        expect[order as usize] = BigInt::one();
        assert_eq!(prod, expect, "cyclotomic factorisation of x^R - 1 failed");
        assert!(phi.last().is_some_and(One::is_one));
        CycloCtx { order, phi }
    }

    /// R.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// φ(R), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    pub fn zero(&self) -> CycloNum {
        CycloNum { coeffs: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(&self) -> CycloNum {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> CycloNum {
        let mut c = self.zero();
        c.coeffs[0] = r;
        c
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> CycloNum {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    /// Builds an element from power-basis coordinates (must have length φ(R)).
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CycloNum {
        assert_eq!(coeffs.len(), self.degree());
        CycloNum { coeffs }
    }

    /// ω_R^k, k taken mod R.
    pub fn root_of_unity(&self, k: i64) -> CycloNum {
        let mut s = RootSum::new(self);
        s.add_root(k, &BigRational::one());
        s.reduce(self)
    }

    /// Reduces an arbitrary-length coefficient vector modulo Φ_R.
    pub fn reduce(&self, mut v: Vec<BigRational>) -> CycloNum {
        let deg = self.degree();
        if v.len() > deg {
            for i in (deg..v.len()).rev() {
                let c = std::mem::take(&mut v[i]);
                if c.is_zero() {
                    continue;
                }
                for k in 0..deg {
                    if !self.phi[k].is_zero() {
                        let t = &c * BigRational::from_integer(self.phi[k].clone());
                        v[i - deg + k] -= t;
                    }
                }
            }
            v.truncate(deg);
        } else {
            v.resize(deg, BigRational::zero());
        }
        CycloNum { coeffs: v }
    }

    pub fn mul(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        let d = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    pub fn scale(&self, a: &CycloNum, r: &BigRational) -> CycloNum {
        CycloNum { coeffs: a.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Galois automorphism ω ↦ ω^{-1} (complex conjugation).
    pub fn conjugate(&self, a: &CycloNum) -> CycloNum {
        let mut s = RootSum::new(self);
        for (k, c) in a.coeffs.iter().enumerate() {
            s.add_root(-(k as i64), c);
        }
        s.reduce(self)
    }

    /// Multiplication by ω^k.
    pub fn rotate(&self, a: &CycloNum, k: i64) -> CycloNum {
        let mut s = RootSum::new(self);
        s.add_rotated(a, k);
        s.reduce(self)
    }

    pub fn pow(&self, a: &CycloNum, mut e: u64) -> CycloNum {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// An element of Q(ω_R) in the reduced power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloNum {
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational)
        }
    }

    /// Coordinates as exact "num/den" strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;

    fn add(self, rhs: &CycloNum) -> CycloNum {
        CycloNum { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;

    fn sub(self, rhs: &CycloNum) -> CycloNum {
        CycloNum { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;

    fn neg(self) -> CycloNum {
        CycloNum { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

/// Accumulator in Q[x]/(x^R - 1), where multiplying by ω^k is a cyclic shift.
#[derive(Clone, Debug)]
pub struct RootSum {
    terms: Vec<BigRational>,
}

impl RootSum {
    pub fn new(ctx: &CycloCtx) -> Self {
        RootSum { terms: vec![BigRational::zero(); ctx.order() as usize] }
    }

    fn slot(&self, k: i64) -> usize {
        k.rem_euclid(self.terms.len() as i64) as usize
    }

    /// Adds c·ω^k.
    pub fn add_root(&mut self, k: i64, c: &BigRational) {
        let i = self.slot(k);
        self.terms[i] += c;
    }

    /// Adds ω^k·a.
    pub fn add_rotated(&mut self, a: &CycloNum, k: i64) {
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let s = self.slot(k + i as i64);
                self.terms[s] += c;
            }
        }
    }

    /// Adds ω^k·other.
    pub fn add_rotated_sum(&mut self, other: &RootSum, k: i64) {
        for (i, c) in other.terms.iter().enumerate() {
            if !c.is_zero() {
                let s = self.slot(k + i as i64);
                self.terms[s] += c;
            }
        }
    }

    pub fn reduce(&self, ctx: &CycloCtx) -> CycloNum {
        ctx.reduce(self.terms.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn num(ctx: &CycloCtx, v: &[i64]) -> CycloNum {
        ctx.reduce(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(8), ints(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn roots_of_unity() {
        let c4 = CycloCtx::new(4);
        assert_eq!(c4.root_of_unity(2), c4.from_int(-1));
        let c6 = CycloCtx::new(6);
        assert_eq!(c6.root_of_unity(3), c6.from_int(-1));
        let c9 = CycloCtx::new(9);
        assert_eq!(c9.root_of_unity(6), num(&c9, &[-1, 0, 0, -1]));
        assert_eq!(c9.root_of_unity(0), c9.one());
        assert_eq!(c9.root_of_unity(-3), c9.root_of_unity(6));
    }

    #[test]
    fn gaussian_products() {
        let c = CycloCtx::new(4);
        let a = num(&c, &[1, 1]);
        let b = num(&c, &[1, -1]);
        assert_eq!(c.mul(&a, &b), c.from_int(2));
        let i = c.root_of_unity(1);
        assert_eq!(c.mul(&i, &i), c.from_int(-1));
        let c8 = CycloCtx::new(8);
        let w = c8.root_of_unity(1);
        assert_eq!(c8.mul(&w, &w), num(&c8, &[0, 0, 1]));
    }

    #[test]
    fn conjugation() {
        let c = CycloCtx::new(4);
        assert_eq!(c.conjugate(&c.root_of_unity(1)), c.root_of_unity(3));
        assert_eq!(c.conjugate(&c.from_int(7)), c.from_int(7));
        let c8 = CycloCtx::new(8);
        let a = num(&c8, &[1, 1]);
        // 1 + ω^7 = 1 - ω^3
        assert_eq!(c8.conjugate(&a), num(&c8, &[1, 0, 0, -1]));
    }

    #[test]
    fn rationality() {
        let c = CycloCtx::new(4);
        assert_eq!(c.from_int(2).to_rational().unwrap(), rat(2));
        assert_eq!(c.root_of_unity(1).to_rational(), Err(Error::NotRational));
        let c6 = CycloCtx::new(6);
        let s = &c6.root_of_unity(1) + &c6.root_of_unity(5);
        assert_eq!(s.to_rational().unwrap(), rat(1));
    }

    #[test]
    fn orthogonality_of_root_sums() {
        for r in 1..=24u64 {
            let c = CycloCtx::new(r);
            for m in -24i64..=24 {
                let mut s = RootSum::new(&c);
                for k in 0..r as i64 {
                    s.add_root(k * m, &BigRational::one());
                }
                let expect = if m % r as i64 == 0 { r as i64 } else { 0 };
                assert_eq!(s.reduce(&c), c.from_int(expect), "R={r} m={m}");
            }
            let w = c.root_of_unity(1);
            assert_eq!(c.pow(&w, r), c.one());
        }
    }

    #[test]
    fn trivial_order_one() {
        let c = CycloCtx::new(1);
        assert_eq!(c.degree(), 1);
        assert_eq!(c.root_of_unity(5), c.one());
    }

    fn arb_num(ctx: &CycloCtx, v: &[i64]) -> CycloNum {
        ctx.reduce(v.iter().map(|&c| BigRational::new(c.into(), 3.into())).collect())
    }

    proptest::proptest! {
        #[test]
        fn field_laws(
            ri in 0usize..6,
            a in proptest::collection::vec(-5i64..6, 1..12),
            b in proptest::collection::vec(-5i64..6, 1..12),
            c in proptest::collection::vec(-5i64..6, 1..12),
        ) {
            let ctx = CycloCtx::new([1u64, 4, 6, 8, 9, 12][ri]);
            let (a, b, c) = (arb_num(&ctx, &a), arb_num(&ctx, &b), arb_num(&ctx, &c));
            proptest::prop_assert_eq!(ctx.mul(&a, &b), ctx.mul(&b, &a));
            proptest::prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
            proptest::prop_assert_eq!(ctx.conjugate(&ctx.conjugate(&a)), a.clone());
            proptest::prop_assert_eq!(
                ctx.conjugate(&ctx.mul(&a, &b)),
                ctx.mul(&ctx.conjugate(&a), &ctx.conjugate(&b))
            );
        }
    }
}
