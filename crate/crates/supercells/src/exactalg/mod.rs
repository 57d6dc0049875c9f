//! Exact arithmetic: integers, Laurent polynomials in q^{1/2}, t^{1/2}, a,
//! λ-variable polynomials over ℤ and 𝔽_{p^m}, rational functions, and
//! counting-polynomial interpolation.

pub mod field;
pub mod int;
pub mod interp;
pub mod laurent;
pub mod multipoly;
pub mod ratfun;

pub use field::GaloisField;
pub use int::Int;
pub use interp::{interpolate_counting_polynomial, CountPoly, InterpError};
pub use laurent::{Exp, LaurentError, LaurentQTA, Var};
pub use multipoly::{FieldPoly, Mono, MultiPoly, VarId};
pub use ratfun::RatFunQT;
