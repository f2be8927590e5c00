//! Families of monic polynomials over GF(p) whose pairwise GCDs have bounded
//! degree.
//!
//! * [`poly`]: polynomial arithmetic, GCD and factorization over GF(p).
//! * [`irreducible`]: Möbius/Gauss counts and sorted irreducible lists.
//! * [`family`]: the [`Family`] type, membership in `M_n^d` and the
//!   closed-form cardinalities.
//! * [`constructions`]: the lower-bound construction and the maximal
//!   construction over GF(2) for `d = 1`.
//! * [`characterization`]: the `L`-map and maximality certificates.
//! * [`oracle`]: exact maximum-clique search over all of `S_n`.
//! * [`cli`]: the `gcdfam` command line.

pub mod characterization;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod family;
pub mod irreducible;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
pub use family::Family;
pub use irreducible::IrreducibleIndex;
pub use poly::{FieldChar, Poly};
