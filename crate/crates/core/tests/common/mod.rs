#![allow(dead_code)]

pub mod tables;

use irrcount::arith;
use irrcount::counting::{CountTable, Counter, PPoly};
use irrcount::cyclo::{CycloCtx, CycloNum};
use irrcount::ff::{FPoly, FieldCtx};
use irrcount::group::{decompose, ClassRep, ExponentVector, GroupStructure, Kind, Prescription};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn instance(q: u64, kind: Kind, ell: usize, t: Option<usize>) -> GroupStructure {
    let field = FieldCtx::with_order(q).unwrap();
    let p = Prescription::new(field, kind, ell, t).unwrap();
    decompose(&p, irrcount::group::DEFAULT_MAX_GROUP_ORDER).unwrap()
}

/// The instances exercised against the brute-force oracles, with their degree limits.
pub fn oracle_instances() -> Vec<(GroupStructure, usize)> {
    vec![
        (instance(2, Kind::TypeII, 1, None), 14),
        (instance(2, Kind::TypeII, 3, None), 14),
        (instance(2, Kind::TypeII, 4, None), 14),
        (instance(2, Kind::TypeII, 5, None), 14),
        (instance(2, Kind::TypeI, 2, Some(2)), 14),
        (instance(3, Kind::TypeI, 2, Some(1)), 8),
        (instance(3, Kind::TypeII, 3, None), 8),
        (instance(4, Kind::TypeII, 2, None), 7),
    ]
}

pub fn label(gs: &GroupStructure) -> String {
    let p = gs.prescription();
    match p.kind() {
        Kind::TypeI => format!("q={} I ell={} t={}", p.field().q(), p.ell(), p.t()),
        Kind::TypeII => format!("q={} II ell={}", p.field().q(), p.ell()),
    }
}

pub fn class_of(gs: &GroupStructure, coeffs: &[u64]) -> ClassRep {
    let f = FPoly::from_encodings(coeffs);
    gs.prescription().class_of(&f).unwrap().class().unwrap()
}

/// Exponent vector of ξ1^a ξ2^b for two classes given by representatives.
pub fn word(gs: &GroupStructure, xi1: &[u64], a: u64, xi2: &[u64], b: u64) -> ExponentVector {
    let p = gs.prescription();
    let c = p.mul(&p.pow(&class_of(gs, xi1), a), &p.pow(&class_of(gs, xi2), b));
    gs.dlog(&c).unwrap()
}

/// b_n = n·[z^n] ln P by composing ln(1+u) = Σ (-1)^{m-1} u^m / m with u = P - 1.
pub fn log_by_composition(p: &PPoly, n_max: usize, ctx: &CycloCtx) -> Vec<CycloNum> {
    let coeff = |k: usize| if k == 0 { ctx.zero() } else { p.coeff(k, ctx) };
    let u: Vec<CycloNum> = (0..=n_max).map(coeff).collect();
    let mut ln = vec![ctx.zero(); n_max + 1];
    let mut power = u.clone();
    for m in 1..=n_max {
        let w = BigRational::new(if m % 2 == 1 { 1 } else { -1 }.into(), (m as i64).into());
        for k in m..=n_max {
            if !power[k].is_zero() {
                ln[k] += &ctx.scale(&power[k], &w);
            }
        }
        let mut next = vec![ctx.zero(); n_max + 1];
        for i in m..=n_max {
            if power[i].is_zero() {
                continue;
            }
            for j in 1..=n_max - i {
                if !u[j].is_zero() {
                    next[i + j] += &ctx.mul(&power[i], &u[j]);
                }
            }
        }
        power = next;
    }
    (1..=n_max).map(|n| ctx.scale(&ln[n], &BigRational::from_integer(n.into()))).collect()
}

/// N_m(ε') = Σ_{k|m} (m/k) Σ_{ε^k = ε'} I_{m/k}(ε).
pub fn recompose(gs: &GroupStructure, i_table: &CountTable, m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); gs.order() as usize];
    for k in arith::divisors(m as u64) {
        let k = k as usize;
        for idx in 0..gs.order() {
            let target = gs.pack(&gs.scale_exponents(&gs.unpack(idx), k as u64)).unwrap();
            out[target as usize] += BigInt::from(m / k) * i_table.at(m / k, idx);
        }
    }
    out
}

/// The closed form for q=2, Type II, ell=3 in Q(ω_8), with ξ1 = <x+1>, ξ2 = <x^3+1>.
pub fn closed_form_q2_ell3(n: u64, t1: u64, t2: u64) -> BigInt {
    let ctx = CycloCtx::new(8);
    let rat = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let sign = |e: u64| if e.is_multiple_of(2) { 1i64 } else { -1 };
    let half = rat(1, 2);
    // 2^{n/2} = 2^{⌊n/2⌋} · √2^{n mod 2}, √2 = ω + ω^{-1}
    let sqrt2 = &ctx.root_of_unity(1) + &ctx.root_of_unity(-1);
    let mut two_half_n = ctx.from_int(BigInt::one() << (n / 2));
    if n % 2 == 1 {
        two_half_n = ctx.mul(&two_half_n, &sqrt2);
    }
    let cos = |k: i64| ctx.scale(&(&ctx.root_of_unity(k) + &ctx.root_of_unity(-k)), &half);

    let mut total = ctx.from_rational(BigRational::new(BigInt::one() << n, BigInt::from(8)));
    if n.is_multiple_of(2) {
        let m = n / 2;
        let pow = BigInt::from(sign(m)) * (BigInt::one() << m);
        let term = ctx.scale(&ctx.from_int(pow), &rat(sign(t2 + t1 + 1), 4));
        total += &term;
    }
    let c1 = ctx.mul(&two_half_n, &cos(n as i64));
    total += &ctx.scale(&c1, &rat(sign(t2 + n + 1), 4));
    let three = if n.is_multiple_of(3) { 1 } else { 0 };
    let coef = &ctx.from_rational(rat(sign(n + 1), 4)) + &ctx.from_rational(rat((1 - 3 * three) * sign(t2), 4));
    let c2 = ctx.mul(&two_half_n, &cos(n as i64 - 2 * t1 as i64));
    total += &ctx.mul(&coef, &c2);
    let r = total.to_rational().expect("closed form is rational");
    assert!(r.is_integer(), "closed form is not an integer: {r}");
    r.to_integer()
}

pub fn n_and_i(gs: &GroupStructure, n_max: usize) -> (Counter, CountTable, CountTable) {
    let mut c = Counter::new(gs.clone()).unwrap();
    let n = c.n_table(n_max).unwrap();
    let i = c.i_table_from(&n).unwrap();
    (c, n, i)
}
