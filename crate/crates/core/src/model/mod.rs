//! Frames, neighborhood frames and box algebras, with their structural
//! validators.

mod algebra;
mod kappa;
mod nframe;
mod relation;
mod worlds;

pub use algebra::{validate_algebra, AlgebraClass, BoxAlgebra};
pub use kappa::Kappa;
pub use nframe::{check_nfr, upward_closure_violation, NFrame, NfrReport, NfrViolation};
pub use relation::{check_kappa_dd, DirectednessReport, KripkeFrame, MRFrame, Relation};
pub use worlds::WorldSet;
