//! Flagged Jacobian factor cells of unibranch plane curve singularities,
//! their geometric superpolynomials, and DAHA superpolynomials of the
//! matching algebraic knots.

pub mod cellsys;
pub mod daha;
pub mod exactalg;
pub mod geomsuper;
pub mod gmod;
pub mod harness;
pub mod semigroup;
pub mod torusdim;
