//! Arithmetic in F_q and F_q[x].

mod field;
mod poly;

pub use field::{Fe, FieldCtx};
pub use poly::{enumerate_monic, FPoly, MonicIter};
