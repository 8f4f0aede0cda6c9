//! Exact arithmetic for periodic continued fractions over Q and Z[√2]:
//! evaluation, convergence decisions, PCF varieties, solution tables, and
//! the 2-adic unit-power analysis behind their completeness.

pub mod continuant;
pub mod converge;
pub mod numeric;
pub mod pcf;
pub mod ring;
pub mod search;
pub mod skolem;
pub mod variety;

pub use continuant::{cf_matrix, continuant, finite_cf_value, Mat2, Projective};
pub use converge::{verdict, DivergeReason, Verdict};
pub use pcf::{dual, e_matrix, quad_poly, roots, Pcf, QuadPoly, Root, RootPair};
pub use ring::{ExtElem, RingElem, RingError, Valuation};
