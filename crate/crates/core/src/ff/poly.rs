use std::fmt;

use crate::error::{Error, Result};
use crate::ff::field::{Fe, FieldCtx, TRIAL_DEGREE_LIMIT};

/// Irreducibility switches from trial division to the Frobenius gcd test above this degree.
const TRIAL_MAX_DEGREE: usize = 12;
/// ...or when the number of trial divisor candidates would exceed this.
const TRIAL_MAX_CANDIDATES: u64 = 4096;

/// Dense polynomial over F_q, constant term first, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FPoly {
    coeffs: Vec<Fe>,
}

impl FPoly {
    pub fn new(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FPoly { coeffs }
    }

    pub fn zero() -> Self {
        FPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        FPoly { coeffs: vec![Fe::ONE] }
    }

    pub fn x() -> Self {
        FPoly { coeffs: vec![Fe::ZERO, Fe::ONE] }
    }

    pub fn monomial(c: Fe, d: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    pub fn from_encodings(v: &[u64]) -> Self {
        Self::new(v.iter().map(|&c| Fe(c)).collect())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fe::ONE)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    /// Text form "c0,c1,...,cd" of coefficient encodings, constant first.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let v: Vec<String> = self.coeffs.iter().map(|c| c.0.to_string()).collect();
        v.join(",")
    }

    pub fn parse_text(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|c| {
                let v: u64 = c.trim().parse().map_err(|_| Error::InvalidInput(format!("bad coefficient '{c}'")))?;
                ctx.element(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, v) => write!(f, "{v}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FieldCtx {
    pub fn poly_add(&self, a: &FPoly, b: &FPoly) -> FPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        FPoly::new((0..n).map(|i| self.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_sub(&self, a: &FPoly, b: &FPoly) -> FPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        FPoly::new((0..n).map(|i| self.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_scale(&self, a: &FPoly, c: Fe) -> FPoly {
        FPoly::new(a.coeffs.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &FPoly, b: &FPoly) -> FPoly {
        if a.is_zero() || b.is_zero() {
            return FPoly::zero();
        }
        let mut out = vec![Fe::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        FPoly::new(out)
    }

    /// Euclidean division: returns `(quotient, remainder)` with `deg(rem) < deg(b)`.
    pub fn poly_divmod(&self, a: &FPoly, b: &FPoly) -> Result<(FPoly, FPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = self.inv(b.leading())?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((FPoly::zero(), a.clone()));
        }
        let mut quot = vec![Fe::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = self.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - db] = c;
            for (k, &bk) in b.coeffs.iter().enumerate() {
                rem[i - db + k] = self.sub(rem[i - db + k], self.mul(c, bk));
            }
        }
        rem.truncate(db);
        Ok((FPoly::new(quot), FPoly::new(rem)))
    }

    pub fn poly_rem(&self, a: &FPoly, b: &FPoly) -> Result<FPoly> {
        self.poly_divmod(a, b).map(|(_, r)| r)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn poly_gcd(&self, a: &FPoly, b: &FPoly) -> FPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b).expect("b is nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = self.inv(a.leading()).expect("nonzero leading coefficient");
        self.poly_scale(&a, inv)
    }

    /// `base^e mod m`.
    pub fn poly_pow_mod(&self, base: &FPoly, mut e: u64, m: &FPoly) -> Result<FPoly> {
        let mut acc = self.poly_rem(&FPoly::one(), m)?;
        let mut b = self.poly_rem(base, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), m)?;
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_rem(&self.poly_mul(&b, &b), m)?;
            }
        }
        Ok(acc)
    }

    /// Whether a monic polynomial of degree >= 1 is irreducible.
    pub fn is_irreducible(&self, f: &FPoly) -> Result<bool> {
        let d = match f.degree() {
            Some(d) if d >= 1 && f.is_monic() => d,
            _ => return Err(Error::InvalidInput("irreducibility test needs a monic polynomial of degree >= 1".into())),
        };
        if d == 1 {
            return Ok(true);
        }
        let half = d / 2;
        let few_candidates =
            (half as u32) < 32 && self.q().checked_pow(half as u32).is_some_and(|n| n <= TRIAL_MAX_CANDIDATES);
        if d <= TRIAL_MAX_DEGREE && half <= TRIAL_DEGREE_LIMIT && few_candidates {
            Ok(self.trial_division_irreducible(f, half))
        } else {
            self.frobenius_irreducible(f, half)
        }
    }

    fn trial_division_irreducible(&self, f: &FPoly, half: usize) -> bool {
        if f.coeff(0).is_zero() {
            return false;
        }
        for k in 1..=half {
            for g in self.irreducibles_of_degree(k) {
                if self.poly_rem(f, g).expect("nonzero divisor").is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// f has no irreducible factor of degree <= d/2 iff gcd(x^{q^i} - x, f) = 1 for i <= d/2.
    fn frobenius_irreducible(&self, f: &FPoly, half: usize) -> Result<bool> {
        let x = FPoly::x();
        let mut h = self.poly_rem(&x, f)?;
        for _ in 0..half {
            h = self.poly_pow_mod(&h, self.q(), f)?;
            let g = self.poly_gcd(&self.poly_sub(&h, &x), f);
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Iterator over monic polynomials of a fixed degree, in lexicographic order of the
/// constant-first coefficient vector (the constant term varies slowest).
pub struct MonicIter<'a> {
    ctx: &'a FieldCtx,
    current: Option<Vec<Fe>>,
    nonzero_constant: bool,
}

pub fn enumerate_monic(ctx: &FieldCtx, d: usize, nonzero_constant: bool) -> MonicIter<'_> {
    let mut coeffs = vec![Fe::ZERO; d + 1];
    coeffs[d] = Fe::ONE;
    if nonzero_constant && d > 0 {
        coeffs[0] = Fe::ONE;
    }
    let current = Some(coeffs);
    MonicIter { ctx, current, nonzero_constant }
}

impl Iterator for MonicIter<'_> {
    type Item = FPoly;

    fn next(&mut self) -> Option<FPoly> {
        let cur = self.current.take()?;
        let out = FPoly::new(cur.clone());
        let d = cur.len() - 1;
        let q = self.ctx.q();
        let mut next = cur;
        // odometer: position d-1 is the fastest digit, position 0 the slowest
        let mut pos = d;
        let advanced = loop {
            if pos == 0 {
                break false;
            }
            pos -= 1;
            let floor = if pos == 0 && self.nonzero_constant { 1 } else { 0 };
            if next[pos].0 + 1 < q {
                next[pos] = Fe(next[pos].0 + 1);
                break true;
            }
            next[pos] = Fe(floor);
        };
        if advanced {
            self.current = Some(next);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldCtx {
        FieldCtx::prime(2).unwrap()
    }

    fn p(v: &[u64]) -> FPoly {
        FPoly::from_encodings(v)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(p(&[1, 0, 0]).coeffs().len(), 1);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(FPoly::zero().degree(), None);
    }

    #[test]
    fn frobenius_square_over_f2() {
        let f = f2();
        assert_eq!(f.poly_mul(&p(&[1, 1]), &p(&[1, 1])), p(&[1, 0, 1]));
    }

    #[test]
    fn long_division_over_f2() {
        let f = f2();
        let (q, r) = f.poly_divmod(&p(&[1, 1, 0, 0, 1]), &p(&[1, 0, 1])).unwrap();
        assert_eq!(q, p(&[1, 0, 1]));
        assert_eq!(r, p(&[0, 1]));
    }

    #[test]
    fn product_over_f3() {
        let f = FieldCtx::prime(3).unwrap();
        assert_eq!(f.poly_mul(&p(&[1, 1]), &p(&[2, 1])), p(&[2, 0, 1]));
    }

    #[test]
    fn divmod_by_zero() {
        assert_eq!(f2().poly_divmod(&p(&[1, 1]), &FPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn irreducibility_examples() {
        let f = f2();
        assert!(f.is_irreducible(&p(&[1, 1, 1])).unwrap());
        assert!(!f.is_irreducible(&p(&[1, 0, 1])).unwrap());
        assert!(f.is_irreducible(&p(&[1, 1, 0, 0, 1])).unwrap());
        assert!(f.is_irreducible(&p(&[0, 1])).unwrap());
        assert!(f.is_irreducible(&p(&[1])).is_err());
        let f3 = FieldCtx::prime(3).unwrap();
        assert!(f3.is_irreducible(&p(&[1, 0, 2])).is_err());
    }

    #[test]
    fn frobenius_route_agrees_with_trial_division() {
        for q in [2u64, 3, 4] {
            let f = FieldCtx::with_order(q).unwrap();
            for d in 2..=5 {
                for g in enumerate_monic(&f, d, false) {
                    assert_eq!(
                        f.trial_division_irreducible(&g, d / 2),
                        f.frobenius_irreducible(&g, d / 2).unwrap(),
                        "q={q} g={g}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let f = f2();
        let d1: Vec<FPoly> = enumerate_monic(&f, 1, false).collect();
        assert_eq!(d1, vec![p(&[0, 1]), p(&[1, 1])]);
        let d2: Vec<FPoly> = enumerate_monic(&f, 2, true).collect();
        assert_eq!(d2, vec![p(&[1, 0, 1]), p(&[1, 1, 1])]);
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(enumerate_monic(&f3, 2, true).count(), 6);
        assert_eq!(enumerate_monic(&f3, 0, false).collect::<Vec<_>>(), vec![FPoly::one()]);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let f = FieldCtx::with_order(4).unwrap();
        let all: Vec<FPoly> = enumerate_monic(&f, 3, false).collect();
        assert_eq!(all.len(), 64);
        assert!(all.windows(2).all(|w| w[0].coeffs() < w[1].coeffs()));
    }

    #[test]
    fn text_round_trip() {
        let f = f2();
        let g = FPoly::parse_text(&f, "1,1,0,0,1").unwrap();
        assert_eq!(g, p(&[1, 1, 0, 0, 1]));
        assert_eq!(g.to_text(), "1,1,0,0,1");
        assert_eq!(g.to_string(), "x^4 + x + 1");
        assert!(FPoly::parse_text(&f, "1,2").is_err());
    }

    proptest::proptest! {
        #[test]
        fn division_identity(
            a in proptest::collection::vec(0u64..3, 0..12),
            b in proptest::collection::vec(0u64..3, 1..6),
        ) {
            let f = FieldCtx::prime(3).unwrap();
            let (a, b) = (p(&a), p(&b));
            proptest::prop_assume!(!b.is_zero());
            let (quo, rem) = f.poly_divmod(&a, &b).unwrap();
            proptest::prop_assert_eq!(f.poly_add(&f.poly_mul(&quo, &b), &rem), a);
            proptest::prop_assert!(rem.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn products_are_reducible(
            a in proptest::collection::vec(0u64..2, 1..6),
            b in proptest::collection::vec(0u64..2, 1..6),
        ) {
            let f = f2();
            let mut a = a; a.push(1);
            let mut b = b; b.push(1);
            let prod = f.poly_mul(&p(&a), &p(&b));
            proptest::prop_assert!(!f.is_irreducible(&prod).unwrap());
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        for q in [2u64, 3, 4] {
            let f = FieldCtx::with_order(q).unwrap();
            for d in 1..=10usize {
                let count = enumerate_monic(&f, d, false).filter(|g| f.is_irreducible(g).unwrap()).count() as i64;
                let sum: i64 = crate::arith::divisors(d as u64)
                    .into_iter()
                    .map(|k| crate::arith::mobius(k) as i64 * (q as i64).pow((d as u64 / k) as u32))
                    .sum();
                assert_eq!(count, sum / d as i64, "q = {q}, d = {d}");
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let f = FieldCtx::with_order(4).unwrap();
        for d in 0..=5 {
            let all: std::collections::HashSet<FPoly> = enumerate_monic(&f, d, false).collect();
            assert_eq!(all.len() as u64, 4u64.pow(d as u32));
        }
    }
}
