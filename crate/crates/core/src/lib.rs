//! Computable invariants around instanton and monopole knot homology:
//! Wirtinger presentations, Alexander polynomials, SU(2) representations
//! with a pinned meridian, sutured closure arithmetic and commuting
//! operator spectra.

pub mod alexander;
pub mod diagram;
pub mod eigen;
pub mod fibered;
pub mod laurent;
pub mod quaternion;
pub mod repvar;
pub mod sutured;
pub mod table;

pub use alexander::{alexander_fox, coefficient_mass, is_monic_of_degree, symmetrize};
pub use diagram::{
    parse_braid, parse_pd, seifert_genus_upper, GenusEstimate, GroupPresentation, KnotDiagram,
};
pub use laurent::LaurentPolynomial;
pub use quaternion::UnitQuaternion;
pub use repvar::{solve_repvar, RepClass, RepPoint, RepVariety, SolverConfig};
pub use fibered::{classify, table_sweep, KnotMeta, KnotReport};
