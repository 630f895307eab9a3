use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::poly::{enumerate_monic, FPoly};

/// Fields up to this order get precomputed operation tables.
const TABLE_LIMIT: u64 = 256;

/// Highest degree for which monic irreducibles are cached for trial division.
pub(crate) const TRIAL_DEGREE_LIMIT: usize = 6;

/// An element of F_q, stored as its base-p digit encoding `Σ c_i p^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Debug, Default)]
struct Cache {
    irreducibles: [OnceLock<Vec<FPoly>>; TRIAL_DEGREE_LIMIT + 1],
}

/// The finite field F_q with q = p^r, realised as F_p[y]/(modulus) when r > 1.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    r: u32,
    q: u64,
    /// Residues mod p, constant first, monic of degree r. `None` for prime fields.
    modulus: Option<Vec<u64>>,
    tables: Option<Arc<Tables>>,
    cache: Arc<Cache>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({self})")
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn prime(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidInput(format!("characteristic {p} exceeds 2^32")));
        }
        Ok(Self::build(p, 1, None))
    }

    /// F_{p^r} with an explicit modulus (residues mod p, constant first) or the
    /// lexicographically least monic irreducible of degree r when `modulus` is `None`.
    pub fn new(p: u64, r: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        let base = Self::prime(p)?;
        if r == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        p.checked_pow(r)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidInput(format!("field order {p}^{r} exceeds 2^32")))?;
        if r == 1 {
            if let Some(m) = &modulus {
                if m.len() != 2 || m[1] != 1 {
                    return Err(Error::InvalidInput("prime field modulus must be monic of degree 1".into()));
                }
            }
            return Ok(base);
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != r as usize + 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidInput(format!("modulus must have {} residues mod {p}", r + 1)));
                }
                let poly = FPoly::new(m.iter().map(|&c| Fe(c)).collect());
                if !poly.is_monic() || poly.degree() != Some(r as usize) {
                    return Err(Error::InvalidInput("modulus must be monic of degree r".into()));
                }
                if !base.is_irreducible(&poly)? {
                    return Err(Error::InvalidInput("modulus is reducible".into()));
                }
                m
            }
            None => base.least_irreducible(r as usize).coeffs().iter().map(|c| c.0).collect(),
        };
        Ok(Self::build(p, r, Some(modulus)))
    }

    /// F_q with the default modulus.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, r) = arith::prime_power(q).ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        Self::new(p, r, None)
    }

    fn build(p: u64, r: u32, modulus: Option<Vec<u64>>) -> Self {
        let q = p.pow(r);
        let mut ctx = FieldCtx { p, r, q, modulus, tables: None, cache: Arc::new(Cache::default()) };
        if q <= TABLE_LIMIT {
            ctx.tables = Some(Arc::new(ctx.compute_tables()));
        }
        ctx
    }

    fn compute_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        for a in 0..q {
            neg[a] = self.slow_neg(Fe(a as u64)).0 as u32;
            for b in 0..q {
                let (x, y) = (Fe(a as u64), Fe(b as u64));
                add[a * q + b] = self.slow_add(x, y).0 as u32;
                let m = self.slow_mul(x, y);
                mul[a * q + b] = m.0 as u32;
                if m == Fe::ONE {
                    inv[a] = b as u32;
                }
            }
        }
        Tables { q, add, mul, neg, inv }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn element(&self, v: u64) -> Result<Fe> {
        if v < self.q {
            Ok(Fe(v))
        } else {
            Err(Error::InvalidInput(format!("{v} is not an element of F_{}", self.q)))
        }
    }

    /// Base-p digits of an element (polynomial-basis coordinates), length r.
    pub fn digits(&self, a: Fe) -> Vec<u64> {
        let mut v = a.0;
        (0..self.r)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Fe {
        Fe(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p))
    }

    /// The image of an integer under Z -> F_p ⊂ F_q.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u64)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.tables {
            Some(t) => Fe(t.add[a.0 as usize * t.q + b.0 as usize] as u64),
            None => self.slow_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        match &self.tables {
            Some(t) => Fe(t.neg[a.0 as usize] as u64),
            None => self.slow_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.tables {
            Some(t) => Fe(t.mul[a.0 as usize * t.q + b.0 as usize] as u64),
            None => self.slow_mul(a, b),
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => Fe(t.inv[a.0 as usize] as u64),
            None => self.pow(a, self.q - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn slow_add(&self, a: Fe, b: Fe) -> Fe {
        if self.r == 1 {
            return Fe((a.0 + b.0) % self.p);
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.from_digits(&s)
    }

    fn slow_neg(&self, a: Fe) -> Fe {
        if self.r == 1 {
            return Fe((self.p - a.0) % self.p);
        }
        let x: Vec<u64> = self.digits(a).iter().map(|u| (self.p - u) % self.p).collect();
        self.from_digits(&x)
    }

    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p as u128;
        let Some(m) = &self.modulus else {
            return Fe(((a.0 as u128 * b.0 as u128) % p) as u64);
        };
        let r = self.r as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u128; 2 * r - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u128 * v as u128) % p;
            }
        }
        for i in (r..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for k in 0..r {
                prod[i - r + k] = (prod[i - r + k] + (p - c) * m[k] as u128) % p;
            }
        }
        let digits: Vec<u64> = prod[..r].iter().map(|&c| c as u64).collect();
        self.from_digits(&digits)
    }

    /// Lexicographically least monic irreducible of degree `d` (first in enumeration order).
    pub fn least_irreducible(&self, d: usize) -> FPoly {
        enumerate_monic(self, d, false)
            .find(|f| self.is_irreducible(f).unwrap_or(false))
            .expect("irreducible polynomials exist in every degree")
    }

    /// Cached list of monic irreducibles of degree `d` (`d <= TRIAL_DEGREE_LIMIT`).
    pub(crate) fn irreducibles_of_degree(&self, d: usize) -> &[FPoly] {
        assert!((1..=TRIAL_DEGREE_LIMIT).contains(&d));
        self.cache.irreducibles[d].get_or_init(|| {
            enumerate_monic(self, d, false).filter(|f| self.is_irreducible(f).unwrap_or(false)).collect()
        })
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}", self.q)?;
        if let Some(m) = &self.modulus {
            let s: Vec<String> = m.iter().map(|c| c.to_string()).collect();
            write!(f, ",mod={}", s.join(","))?;
        }
        Ok(())
    }
}

/// Parses `q=9` or `q=9,mod=2,2,1` (modulus residues constant first).
impl FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("bad field spec '{s}'"));
        let rest = s.strip_prefix("q=").ok_or_else(bad)?;
        let (q_part, mod_part) = match rest.split_once(",mod=") {
            Some((a, b)) => (a, Some(b)),
            None => (rest, None),
        };
        let q: u64 = q_part.trim().parse().map_err(|_| bad())?;
        let (p, r) = arith::prime_power(q).ok_or_else(bad)?;
        let modulus = match mod_part {
            Some(m) => {
                Some(m.split(',').map(|c| c.trim().parse::<u64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?)
            }
            None => None,
        };
        FieldCtx::new(p, r, modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_one_plus_one() {
        let f = FieldCtx::prime(2).unwrap();
        assert_eq!(f.add(Fe(1), Fe(1)), Fe(0));
    }

    #[test]
    fn f3_inverse_of_two() {
        let f = FieldCtx::prime(3).unwrap();
        assert_eq!(f.inv(Fe(2)).unwrap(), Fe(2));
    }

    #[test]
    fn f4_y_squared() {
        let f = FieldCtx::with_order(4).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
        // y = digits (0,1) = 2; y + 1 = 3
        assert_eq!(f.mul(Fe(2), Fe(2)), Fe(3));
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = FieldCtx::with_order(9).unwrap();
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(FieldCtx::prime(9).unwrap_err(), Error::NotPrime(9));
        assert!(FieldCtx::with_order(12).is_err());
    }

    #[test]
    fn rejects_reducible_modulus() {
        // y^2 + 1 = (y + 1)^2 over F_2
        assert!(FieldCtx::new(2, 2, Some(vec![1, 0, 1])).is_err());
    }

    #[test]
    fn parses_field_spec() {
        let f: FieldCtx = "q=9,mod=2,2,1".parse().unwrap();
        assert_eq!((f.p(), f.r(), f.q()), (3, 2, 9));
        assert_eq!(f.to_string(), "q=9,mod=2,2,1");
        let g: FieldCtx = "q=7".parse().unwrap();
        assert_eq!(g.modulus(), None);
        assert!("q=6".parse::<FieldCtx>().is_err());
        assert!("9".parse::<FieldCtx>().is_err());
    }

    #[test]
    fn every_nonzero_element_has_inverse() {
        for q in [2u64, 3, 4, 5, 8, 9, 25, 27] {
            let f = FieldCtx::with_order(q).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn slow_path_matches_tables() {
        // 3^6 = 729 exceeds the table limit; compare against the same field via its tables on a subfield check
        let big = FieldCtx::new(3, 6, None).unwrap();
        assert!(big.tables.is_none());
        let a = Fe(123);
        let b = Fe(456);
        let ab = big.mul(a, b);
        assert_eq!(big.mul(ab, big.inv(b).unwrap()), a);
        assert_eq!(big.pow(a, big.q() - 1), Fe::ONE);
        assert_eq!(big.sub(big.add(a, b), b), a);
    }

    #[test]
    fn digits_round_trip() {
        let f = FieldCtx::with_order(27).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_digits(&f.digits(a)), a);
        }
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(qi in 0usize..7, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
            let q = [2u64, 3, 4, 8, 9, 25, 343][qi];
            let f = FieldCtx::with_order(q).unwrap();
            let (a, b, c) = (Fe(a % q), Fe(b % q), Fe(c % q));
            proptest::prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            proptest::prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            proptest::prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
            if !a.is_zero() {
                proptest::prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                proptest::prop_assert_eq!(f.pow(a, q - 1), Fe::ONE);
            }
        }
    }
}
