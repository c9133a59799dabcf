//! Exact multivariate polynomials over weighted polynomial rings, Gröbner
//! bases and quotient-ring bookkeeping.

mod groebner;
mod monomial;
mod parse;
mod polynomial;

pub use groebner::{buchberger, normal_form, DimensionSeries, GroebnerBasis, MonomialOrder};
pub use monomial::{cmp_wdegrevlex, monomials_of_degree, Monomial};
pub use parse::parse_polynomial;
pub use polynomial::{PolyRing, Polynomial};
