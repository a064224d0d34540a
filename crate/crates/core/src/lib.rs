//! Simple and flag higher Nash blowups of monomial curves and their
//! products, computed exactly and combinatorially.
//!
//! The numerical semigroup `S` of a monomial curve `k[[t^S]]` determines the
//! canonical generators `h_m` of the symbolic powers of its graph ideal.
//! Normal forms modulo these generators give the value semigroup of each
//! Nash blowup. Products of curves are handled through staircases, the
//! combinatorial shadow of monomial ideals in a product of semigroups.
//!
//! ```
//! use nashcurve::{nash_semigroup, NumericalSemigroup};
//!
//! let s: NumericalSemigroup = "5,7".parse().unwrap();
//! let blowup = nash_semigroup(&s, 2).unwrap();
//! assert_eq!(blowup.output.to_string(), "⟨3,5,7⟩");
//! ```

pub mod error;
pub mod graph_ideal;
pub mod linalg;
pub mod nash;
pub mod poly;
pub mod product;
pub mod scalar;
pub mod semigroup;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use graph_ideal::{construct_h, h_slice_order_test, symbolic_power_basis, HFamily, HPolynomial, SymbolicPowerBasis};
pub use linalg::solve_unique;
pub use nash::{
    conjecture_report, flag_nash_semigroup, is_normal_flag, is_normal_simple, iterated_classical, iterated_point,
    nash_semigroup, BlowupKind, BlowupTable, NashEngine, NashResult, NormalForm,
};
pub use poly::{BiPoly, UniPoly};
pub use product::{FlagCluster, Staircase};
pub use scalar::Scalar;
pub use semigroup::{enumerate_semigroups, DifferenceMode, NumericalSemigroup};

/// Arbitrary-precision rational numbers, the coefficient field throughout.
pub type Rational = num_rational::BigRational;
/// Bivariate polynomials in `x, y` over [`Rational`].
pub type Poly = BiPoly<Rational>;
/// Univariate polynomials in `x` over [`Rational`].
pub type XPoly = UniPoly<Rational>;
