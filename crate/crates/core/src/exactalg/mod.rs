//! Exact arithmetic over ℚ(i): scalars, polynomials, Gröbner bases and
//! elimination.

pub mod groebner;
pub mod implicit;
pub mod matrix;
pub mod mpoly;
pub mod parse;
mod render;
pub mod roots;
pub mod scalar;
pub mod unipoly;
pub mod xgcd;

pub use groebner::{groebner, is_unit_ideal, GroebnerBudget, MonomialOrder};
pub use implicit::{implicitize_section, lift_through_section, subalgebra_section, section_holds};
pub use matrix::{Mat, PolyMatrix, RingElem, ScalarMatrix};
pub use mpoly::{BiPoly, EntryPoly, MPoly, Monomial, Var};
pub use parse::{parse_poly, parse_scalar, ParseError};
pub use scalar::Scalar;
pub use unipoly::UniPoly;
pub use xgcd::{divided_difference, xgcd_list};
