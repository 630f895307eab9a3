//! Parsing of instance, class and range arguments.

use std::ops::RangeInclusive;

use irrcount::ff::{FPoly, FieldCtx};
use irrcount::group::{ExponentVector, GroupStructure, Kind, Prescription};
use irrcount::{Error, Result};

/// The field and prescription as given on the command line.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub q: Option<u64>,
    pub p: Option<u64>,
    pub r: Option<u32>,
    pub modulus: Option<String>,
    pub kind: Kind,
    pub ell: usize,
    pub t: Option<usize>,
}

impl InstanceSpec {
    pub fn field(&self) -> Result<FieldCtx> {
        match (self.q, self.p) {
            (Some(_), Some(_)) => Err(Error::InvalidInput("give either --q or --p/--r, not both".into())),
            (Some(q), None) => {
                if self.r.is_some() || self.modulus.is_some() {
                    return Err(Error::InvalidInput("--r and --modulus go with --p".into()));
                }
                FieldCtx::with_order(q)
            }
            (None, Some(p)) => {
                let modulus = self.modulus.as_deref().map(parse_list).transpose()?;
                FieldCtx::new(p, self.r.unwrap_or(1), modulus)
            }
            (None, None) => Err(Error::InvalidInput("missing --q (or --p)".into())),
        }
    }

    pub fn prescription(&self) -> Result<Prescription> {
        Prescription::new(self.field()?, self.kind, self.ell, self.t)
    }
}

pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| Error::InvalidInput(format!("bad integer list '{s}'"))))
        .collect()
}

/// "a..b" (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::InvalidInput(format!("bad range '{s}', expected N or A..B"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

/// A class selector: exponent vector, representative, prescribed coefficients, or all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    All,
    Exponents(Vec<u64>),
    Rep(Vec<u64>),
    Prescribed { lead: Vec<u64>, end: Option<Vec<u64>> },
}

impl std::str::FromStr for ClassSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "all" {
            return Ok(ClassSpec::All);
        }
        let bad = || Error::InvalidInput(format!("bad class '{s}', expected all, v=.., rep=.. or lead=.. [end=..]"));
        let mut parts = s.split_whitespace().map(|p| p.split_once('=').ok_or_else(bad));
        let (key, value) = parts.next().ok_or_else(bad)??;
        let spec = match key {
            "v" => ClassSpec::Exponents(parse_list(value)?),
            "rep" => ClassSpec::Rep(parse_list(value)?),
            "lead" => {
                let end = match parts.next().transpose()? {
                    Some(("end", e)) => Some(parse_list(e)?),
                    Some(_) => return Err(bad()),
                    None => None,
                };
                ClassSpec::Prescribed { lead: parse_list(value)?, end }
            }
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(spec)
    }
}

impl ClassSpec {
    /// Packed indices of the selected classes.
    pub fn resolve(&self, gs: &GroupStructure) -> Result<Vec<u64>> {
        let p = gs.prescription();
        let field = p.field();
        let elems = |v: &[u64]| v.iter().map(|&x| field.element(x)).collect::<Result<Vec<_>>>();
        let class = match self {
            ClassSpec::All => return Ok((0..gs.order()).collect()),
            ClassSpec::Exponents(v) => return Ok(vec![gs.pack(&ExponentVector(v.clone()))?]),
            ClassSpec::Rep(c) => {
                let f = FPoly::new(elems(c)?);
                p.class_of(&f)?.class().ok_or_else(|| Error::InvalidInput(format!("{f} has zero constant term")))?
            }
            ClassSpec::Prescribed { lead, end } => {
                let end = end.as_deref().map(elems).transpose()?;
                p.prescribe(&elems(lead)?, end.as_deref())?
            }
        };
        Ok(vec![gs.index_of(&class)?])
    }
}
