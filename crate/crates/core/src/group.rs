//! The group E of prescription classes, its cyclic decomposition, and discrete logs.
//!
//! Two monic polynomials are Type I equivalent when they share the `ell` coefficients
//! below the leading term and the `t` lowest coefficients (constant term nonzero), and
//! Type II equivalent when they share the `ell` leading coefficients only. Classes
//! multiply through representatives.
//!
//! A class is stored by its prescribed coefficients: `lead = (a_1, …, a_ell)` and, for
//! Type I, `end = (b_0, …, b_{t-1})`. Leading coefficients multiply as truncated power
//! series 1 + a_1 x + … mod x^{ell+1} (the reciprocal polynomial), ending coefficients as
//! power series mod x^t.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{FPoly, Fe, FieldCtx};

/// Default cap on |E| for [`decompose`].
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::TypeI => "I",
            Kind::TypeII => "II",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" | "1" => Ok(Kind::TypeI),
            "II" | "ii" | "2" => Ok(Kind::TypeII),
            _ => Err(Error::InvalidInput(format!("unknown type '{s}', expected I or II"))),
        }
    }
}

/// A counting problem: the field, the equivalence type and the number of prescribed
/// leading (`ell`) and ending (`t`, Type I only) coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prescription {
    field: FieldCtx,
    kind: Kind,
    ell: usize,
    t: usize,
}

/// A class, identified by its prescribed coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassRep {
    lead: Vec<Fe>,
    end: Vec<Fe>,
}

/// Result of classifying a polynomial: Type I sends f with f(0) = 0 to the zero of the
/// group algebra, which is not a group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassOf {
    Class(ClassRep),
    Zero,
}

impl ClassOf {
    pub fn class(self) -> Option<ClassRep> {
        match self {
            ClassOf::Class(c) => Some(c),
            ClassOf::Zero => None,
        }
    }
}

impl ClassRep {
    /// a_1, …, a_ell.
    pub fn leading(&self) -> &[Fe] {
        &self.lead
    }

    /// b_0, …, b_{t-1} (empty for Type II).
    pub fn ending(&self) -> &[Fe] {
        &self.end
    }

    /// The canonical representative: x^{ell+t} + Σ a_j x^{ell+t-j} + Σ b_j x^j (Type I)
    /// or x^ell + Σ a_j x^{ell-j} (Type II).
    pub fn to_poly(&self) -> FPoly {
        let ell = self.lead.len();
        let t = self.end.len();
        let deg = ell + t;
        let mut c = vec![Fe::ZERO; deg + 1];
        c[deg] = Fe::ONE;
        for (j, &a) in self.lead.iter().enumerate() {
            c[deg - (j + 1)] = a;
        }
        for (j, &b) in self.end.iter().enumerate() {
            c[j] = b;
        }
        FPoly::new(c)
    }
}

impl fmt::Display for ClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_poly())
    }
}

impl Prescription {
    pub fn type_i(field: FieldCtx, ell: usize, t: usize) -> Result<Self> {
        if ell < 1 || t < 1 {
            return Err(Error::InvalidInput("type I needs ell >= 1 and t >= 1".into()));
        }
        Ok(Prescription { field, kind: Kind::TypeI, ell, t })
    }

    pub fn type_ii(field: FieldCtx, ell: usize) -> Result<Self> {
        if ell < 1 {
            return Err(Error::InvalidInput("type II needs ell >= 1".into()));
        }
        Ok(Prescription { field, kind: Kind::TypeII, ell, t: 0 })
    }

    pub fn new(field: FieldCtx, kind: Kind, ell: usize, t: Option<usize>) -> Result<Self> {
        match (kind, t) {
            (Kind::TypeI, Some(t)) => Self::type_i(field, ell, t),
            (Kind::TypeI, None) => Err(Error::InvalidInput("type I requires t".into())),
            (Kind::TypeII, None) => Self::type_ii(field, ell),
            (Kind::TypeII, Some(_)) => Err(Error::InvalidInput("type II takes no t".into())),
        }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of prescribed ending coefficients (0 for Type II).
    pub fn t(&self) -> usize {
        self.t
    }

    /// Highest degree whose classes feed the character polynomials: ell+t-1 or ell-1.
    pub fn tau(&self) -> usize {
        match self.kind {
            Kind::TypeI => self.ell + self.t - 1,
            Kind::TypeII => self.ell - 1,
        }
    }

    /// |E| = (q-1) q^{ell+t-1} (Type I) or q^ell (Type II).
    pub fn group_order(&self) -> u128 {
        let q = self.field.q() as u128;
        let pow = |e: usize| (0..e).try_fold(1u128, |acc, _| acc.checked_mul(q));
        let order = match self.kind {
            Kind::TypeI => pow(self.ell + self.t - 1).and_then(|x| x.checked_mul(q - 1)),
            Kind::TypeII => pow(self.ell),
        };
        order.unwrap_or(u128::MAX)
    }

    pub fn identity(&self) -> ClassRep {
        let mut end = vec![Fe::ZERO; self.t];
        if let Some(b0) = end.first_mut() {
            *b0 = Fe::ONE;
        }
        ClassRep { lead: vec![Fe::ZERO; self.ell], end }
    }

    /// The class of a monic polynomial.
    pub fn class_of(&self, f: &FPoly) -> Result<ClassOf> {
        if !f.is_monic() {
            return Err(Error::InvalidInput(format!("{f} is not monic")));
        }
        let m = f.degree().expect("monic polynomials are nonzero");
        let lead = (1..=self.ell).map(|j| if j <= m { f.coeff(m - j) } else { Fe::ZERO }).collect();
        let end: Vec<Fe> = (0..self.t).map(|j| f.coeff(j)).collect();
        if self.kind == Kind::TypeI && end[0].is_zero() {
            return Ok(ClassOf::Zero);
        }
        Ok(ClassOf::Class(ClassRep { lead, end }))
    }

    /// The class with leading coefficients `a_1..a_ell` and, for Type I, ending
    /// coefficients `b_0..b_{t-1}`.
    pub fn prescribe(&self, leading: &[Fe], ending: Option<&[Fe]>) -> Result<ClassRep> {
        if leading.len() != self.ell {
            return Err(Error::InvalidInput(format!("expected {} leading coefficients", self.ell)));
        }
        let end = match (self.kind, ending) {
            (Kind::TypeI, Some(e)) if e.len() == self.t => {
                if e[0].is_zero() {
                    return Err(Error::ZeroConstant);
                }
                e.to_vec()
            }
            (Kind::TypeI, _) => return Err(Error::InvalidInput(format!("expected {} ending coefficients", self.t))),
            (Kind::TypeII, None) => Vec::new(),
            (Kind::TypeII, Some(_)) => return Err(Error::InvalidInput("type II takes no ending coefficients".into())),
        };
        let c = ClassRep { lead: leading.to_vec(), end };
        self.validate(&c)?;
        Ok(c)
    }

    fn validate(&self, c: &ClassRep) -> Result<()> {
        let q = self.field.q();
        let ok = c.lead.len() == self.ell
            && c.end.len() == self.t
            && c.lead.iter().chain(&c.end).all(|x| x.0 < q)
            && (self.kind == Kind::TypeII || !c.end[0].is_zero());
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownClass)
        }
    }

    pub fn mul(&self, a: &ClassRep, b: &ClassRep) -> ClassRep {
        let f = &self.field;
        let lead = (1..=self.ell)
            .map(|k| {
                let mut s = f.add(a.lead[k - 1], b.lead[k - 1]);
                for i in 1..k {
                    s = f.add(s, f.mul(a.lead[i - 1], b.lead[k - i - 1]));
                }
                s
            })
            .collect();
        let end = (0..self.t).map(|k| (0..=k).fold(Fe::ZERO, |s, i| f.add(s, f.mul(a.end[i], b.end[k - i])))).collect();
        ClassRep { lead, end }
    }

    /// Inverse by the triangular recursions on leading and ending coefficients.
    pub fn inverse(&self, a: &ClassRep) -> ClassRep {
        let f = &self.field;
        // g_d = -Σ_{j=1}^{d} f_j g_{d-j}, g_0 = 1
        let mut lead: Vec<Fe> = Vec::with_capacity(self.ell);
        for d in 1..=self.ell {
            let mut s = a.lead[d - 1];
            for j in 1..d {
                s = f.add(s, f.mul(a.lead[j - 1], lead[d - j - 1]));
            }
            lead.push(f.neg(s));
        }
        let mut end: Vec<Fe> = Vec::with_capacity(self.t);
        if self.t > 0 {
            let inv_b0 = f.inv(a.end[0]).expect("class constant term is nonzero");
            end.push(inv_b0);
            for d in 1..self.t {
                let s = (1..=d).fold(Fe::ZERO, |s, j| f.add(s, f.mul(a.end[j], end[d - j])));
                end.push(f.neg(f.mul(inv_b0, s)));
            }
        }
        ClassRep { lead, end }
    }

    pub fn pow(&self, a: &ClassRep, mut e: u64) -> ClassRep {
        let mut acc = self.identity();
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

    /// Mixed-radix digits, most significant first: b_0-1 (radix q-1), b_1..b_{t-1},
    /// a_ell..a_1 (radix q). Key order equals lexicographic order of the
    /// constant-first coefficient vector of the canonical representative.
    pub(crate) fn key(&self, c: &ClassRep) -> u64 {
        let q = self.field.q();
        let mut k = 0u64;
        for (i, b) in c.end.iter().enumerate() {
            k = if i == 0 { b.0 - 1 } else { k * q + b.0 };
        }
        for a in c.lead.iter().rev() {
            k = k * q + a.0;
        }
        k
    }

    pub(crate) fn class_of_key(&self, mut k: u64) -> ClassRep {
        let q = self.field.q();
        let mut lead = vec![Fe::ZERO; self.ell];
        for a in lead.iter_mut() {
            *a = Fe(k % q);
            k /= q;
        }
        let mut end = vec![Fe::ZERO; self.t];
        for i in (0..self.t).rev() {
            if i == 0 {
                end[0] = Fe(k + 1);
            } else {
                end[i] = Fe(k % q);
                k /= q;
            }
        }
        ClassRep { lead, end }
    }
}

/// Coordinates of a class on the cyclic basis, v_i in [0, r_i).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u64>);

impl ExponentVector {
    pub fn zero(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn to_text(&self) -> String {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        v.join(",")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

/// E ≅ C_{r_1} × … × C_{r_f} with explicit generators and a complete dlog table.
#[derive(Clone, Debug)]
pub struct GroupStructure {
    presc: Prescription,
    gens: Vec<ClassRep>,
    orders: Vec<u64>,
    order: u64,
    /// class key -> packed exponent index
    index_of_key: Vec<u32>,
    /// packed exponent index -> class key
    key_of_index: Vec<u32>,
}

/// Decomposes E into cyclic factors and tabulates discrete logs.
///
/// Type II over a prime field first tries the classes <x^j + 1> with p ∤ j, j ≤ ell, in
/// ascending j; everything else (and any remainder) is filled greedily with an element of
/// maximal order independent of the span so far, scanning classes in ascending key order.
/// Generators are reported by descending order, ties by representative.
pub fn decompose(presc: &Prescription, max_order: u64) -> Result<GroupStructure> {
    let order128 = presc.group_order();
    if order128 > max_order as u128 || order128 > u32::MAX as u128 {
        return Err(Error::GroupTooLarge { order: order128, cap: max_order });
    }
    let order = order128 as u64;
    let primes: Vec<u64> = arith::factorize(order).into_iter().map(|(p, _)| p).collect();
    let mut search = Search { presc, order, primes: &primes, orders: None };

    let field = presc.field();
    let mut picked = Vec::new();
    if presc.kind() == Kind::TypeII && field.r() == 1 {
        picked = search.binomial_family();
    }
    let gens = match search.complete(picked) {
        Some(g) => g,
        None => search.complete(Vec::new()).expect("greedy decomposition of a finite abelian group"),
    };

    let mut gens: Vec<(u64, u64, ClassRep)> = gens.into_iter().map(|(c, r)| (r, presc.key(&c), c)).collect();
    gens.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let orders: Vec<u64> = gens.iter().map(|g| g.0).collect();
    let gens: Vec<ClassRep> = gens.into_iter().map(|g| g.2).collect();
    assert_eq!(orders.iter().product::<u64>(), order);

    // enumerate ξ_1^{v_1} ⋯ ξ_f^{v_f}; index = mixed radix with v_1 most significant
    let mut elems = vec![presc.identity()];
    for (g, &r) in gens.iter().zip(&orders) {
        let mut next = Vec::with_capacity(elems.len() * r as usize);
        for e in &elems {
            let mut cur = e.clone();
            for _ in 0..r {
                let c = presc.mul(&cur, g);
                next.push(std::mem::replace(&mut cur, c));
            }
        }
        elems = next;
    }
    let mut index_of_key = vec![u32::MAX; order as usize];
    let mut key_of_index = Vec::with_capacity(order as usize);
    for (idx, c) in elems.iter().enumerate() {
        let k = presc.key(c) as usize;
        assert_eq!(index_of_key[k], u32::MAX, "dlog table is not a bijection");
        index_of_key[k] = idx as u32;
        key_of_index.push(k as u32);
    }
    Ok(GroupStructure { presc: presc.clone(), gens, orders, order, index_of_key, key_of_index })
}

struct Search<'a> {
    presc: &'a Prescription,
    order: u64,
    primes: &'a [u64],
    orders: Option<Vec<u64>>,
}

impl Search<'_> {
    fn element_order(&self, c: &ClassRep) -> u64 {
        let p = self.presc;
        let id = p.identity();
        let mut ord = self.order;
        for &pr in self.primes {
            while ord.is_multiple_of(pr) && p.pow(c, ord / pr) == id {
                ord /= pr;
            }
        }
        ord
    }

    /// ⟨c⟩ ∩ span = 1 iff no element of prime order in ⟨c⟩ lies in the span.
    fn independent(&self, c: &ClassRep, ord: u64, span: &[bool]) -> bool {
        let p = self.presc;
        ord > 1 && arith::factorize(ord).iter().all(|&(pr, _)| !span[p.key(&p.pow(c, ord / pr)) as usize])
    }

    fn extend_span(&self, span: &mut [bool], members: &mut Vec<u64>, c: &ClassRep, ord: u64) {
        let p = self.presc;
        let old = members.clone();
        for k in old {
            let mut cur = p.class_of_key(k);
            for _ in 1..ord {
                cur = p.mul(&cur, c);
                let key = p.key(&cur);
                if !span[key as usize] {
                    span[key as usize] = true;
                    members.push(key);
                }
            }
        }
    }

    fn binomial_family(&mut self) -> Vec<(ClassRep, u64)> {
        let p = self.presc;
        let char_p = p.field().p() as usize;
        let (mut span, mut members) = self.start_span();
        let mut out = Vec::new();
        for j in (1..=p.ell()).filter(|j| j % char_p != 0) {
            let f = p.field().poly_add(&FPoly::monomial(Fe::ONE, j), &FPoly::one());
            let c = p.class_of(&f).expect("monic").class().expect("type II");
            let ord = self.element_order(&c);
            if self.independent(&c, ord, &span) {
                self.extend_span(&mut span, &mut members, &c, ord);
                out.push((c, ord));
            }
        }
        out
    }

    fn start_span(&self) -> (Vec<bool>, Vec<u64>) {
        let mut span = vec![false; self.order as usize];
        let id = self.presc.key(&self.presc.identity());
        span[id as usize] = true;
        (span, vec![id])
    }

    /// Extends `picked` greedily to a basis; `None` if no independent element remains
    /// before the span is everything.
    fn complete(&mut self, picked: Vec<(ClassRep, u64)>) -> Option<Vec<(ClassRep, u64)>> {
        let p = self.presc;
        let (mut span, mut members) = self.start_span();
        for (c, ord) in &picked {
            self.extend_span(&mut span, &mut members, c, *ord);
        }
        let mut gens = picked;
        if (members.len() as u64) < self.order && self.orders.is_none() {
            let all: Vec<u64> = (0..self.order).map(|k| self.element_order(&p.class_of_key(k))).collect();
            self.orders = Some(all);
        }
        while (members.len() as u64) < self.order {
            let orders = self.orders.as_ref().expect("computed above");
            let mut by_order: Vec<u64> = (0..self.order).filter(|&k| !span[k as usize]).collect();
            by_order.sort_by(|&a, &b| orders[b as usize].cmp(&orders[a as usize]).then(a.cmp(&b)));
            let found = by_order.into_iter().find_map(|k| {
                let c = p.class_of_key(k);
                let ord = orders[k as usize];
                self.independent(&c, ord, &span).then_some((c, ord))
            });
            let (c, ord) = found?;
            self.extend_span(&mut span, &mut members, &c, ord);
            gens.push((c, ord));
        }
        Some(gens)
    }
}

impl GroupStructure {
    pub fn prescription(&self) -> &Prescription {
        &self.presc
    }

    pub fn generators(&self) -> &[ClassRep] {
        &self.gens
    }

    /// r_1 ≥ r_2 ≥ …
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// |E|.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Number of cyclic factors f.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// R = lcm(r_1, …, r_f).
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &r| arith::lcm(acc, r))
    }

    pub fn dlog(&self, c: &ClassRep) -> Result<ExponentVector> {
        Ok(self.unpack(self.index_of(c)?))
    }

    /// Packed exponent index of a class.
    pub fn index_of(&self, c: &ClassRep) -> Result<u64> {
        self.presc.validate(c)?;
        Ok(self.index_of_key[self.presc.key(c) as usize] as u64)
    }

    pub fn class_at(&self, index: u64) -> ClassRep {
        self.presc.class_of_key(self.key_of_index[index as usize] as u64)
    }

    pub fn class_from_exponents(&self, v: &ExponentVector) -> Result<ClassRep> {
        Ok(self.class_at(self.pack(v)?))
    }

    pub fn pack(&self, v: &ExponentVector) -> Result<u64> {
        if v.0.len() != self.orders.len() || v.0.iter().zip(&self.orders).any(|(a, r)| a >= r) {
            return Err(Error::InvalidInput(format!("exponent vector {v} out of range")));
        }
        Ok(v.0.iter().zip(&self.orders).fold(0, |acc, (a, r)| acc * r + a))
    }

    pub fn unpack(&self, mut index: u64) -> ExponentVector {
        let mut v = vec![0; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            v[i] = index % self.orders[i];
            index /= self.orders[i];
        }
        ExponentVector(v)
    }

    /// All exponent vectors in packed-index order.
    pub fn exponent_vectors(&self) -> impl Iterator<Item = ExponentVector> + '_ {
        (0..self.order).map(|i| self.unpack(i))
    }

    pub fn add_exponents(&self, a: &ExponentVector, b: &ExponentVector) -> ExponentVector {
        ExponentVector(a.0.iter().zip(&b.0).zip(&self.orders).map(|((x, y), r)| (x + y) % r).collect())
    }

    pub fn scale_exponents(&self, a: &ExponentVector, k: u64) -> ExponentVector {
        ExponentVector(a.0.iter().zip(&self.orders).map(|(x, r)| (x * (k % r)) % r).collect())
    }
}
