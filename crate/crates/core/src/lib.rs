//! Formal separable endomorphisms of supersingular elliptic curves
//! `y^2 = x^3 + Ax + B` over GF(3^k).
//!
//! The crate is layered bottom-up:
//!
//! * [`field`]: GF(3^k) in a polynomial basis, square roots, additive cubics.
//! * [`poly`]: polynomials and rational functions in `x`.
//! * [`series`]: truncated Laurent series and the mod-3 exponent splitting.
//! * [`isocore`]: the construction of formal endomorphisms from a seed.
//! * [`curve`]: the group law and pointwise identification of maps.
//! * [`ratrec`]: Padé reconstruction of rational maps from series.
//! * [`exprparse`]: text input for constants, polynomials and seeds.
//!
//! Loops over points, seeds and long series products run on rayon when the
//! `parallel` feature is enabled; see [`Exec`].

pub mod curve;
pub mod exec;
pub mod exprparse;
pub mod field;
pub mod isocore;
pub mod poly;
pub mod ratrec;
pub mod series;

pub use curve::{CurveError, EllipticCurve, GroupAxioms, Identification, Point};
pub use exec::Exec;
pub use exprparse::{
    parse_coefficient_list, parse_expr, parse_field_element, parse_rational_function, Expr,
    ExprKind, ParseError,
};
pub use field::{solve_additive_cubic, FieldElement, FieldError, FieldParams};
pub use isocore::{
    beta_from_alpha, alpha_from_beta, check_cubic_membership, closed_form_conditions,
    compatibility_check, compute_psi, construct, construct_batch, prepare, solve_gamma,
    verify_functional_equation, ClosedForm, CompatReport, CurveParams, FormalEndomorphism,
    FunctionalEquationReport, IsoError, PoleBranch, Preparation, Seed, SeedKind,
};
pub use poly::{poly_extended_euclid, poly_gcd, PolyError, Polynomial, RationalFunction};
pub use ratrec::{derive_map_pair, pade, RatRecError};
pub use series::{expand_rational, Homogeneity, LaurentSeries, SeriesError, TriSplit};
