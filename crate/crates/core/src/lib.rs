//! Exact-arithmetic engine for singular vectors in Verma modules over the
//! simple Lie algebras. The Lie algebra acts by differential operators on a
//! polynomial algebra attached to a PBW basis; complex powers of the lowering
//! operators attached to simple roots give an action of the Weyl group on
//! truncated-up formal power series, whose polynomial orbit elements are
//! exactly the singular vectors.

pub mod chevalley;
pub mod cli;
pub mod error;
pub mod liediff;
pub mod linalg;
pub mod oracle;
pub mod posetrank;
pub mod rat;
pub mod rootsys;
pub mod singvec;
pub mod verify;
pub mod weylalg;
pub mod weylrep;

pub use error::Error;
pub use rat::Rat;
