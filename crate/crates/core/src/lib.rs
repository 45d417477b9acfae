//! Exact construction and verification of the index-2 Halphen pencil of
//! Hesse type: the twelve conics through nine points, its Picard lattice,
//! torsion loci on the Hesse cubic, and arrangement invariants.

pub mod chilean;
pub mod cubic;
mod error;
pub mod exactfield;
pub mod geometry;
pub mod invariants;
pub mod piclattice;
pub mod torsion;

pub use error::{Error, Result};
pub use exactfield::{Field, FieldError, Fp, Fq, QEps, RatFunc, Rational};

/// Q(ε)(a), the field of the one-parameter family.
pub type QEpsA = RatFunc<QEps>;
