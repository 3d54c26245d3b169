//! Exact arithmetic on sparse integer polynomials, Laurent polynomials and
//! rational functions.

mod division;
mod gcd;
mod irreducible;
mod monomial;
mod parse;
mod ratfn;
mod sparse;

pub use division::{exact_div, monomial_content, monomial_content_in, primitive_integer_part, unit_ratio};
pub use gcd::{gcd, is_trivial_gcd};
pub use irreducible::{irreducibility, Irreducibility};
pub use monomial::{LaurentMonomial, Monomial, Term};
pub use parse::{format_poly, is_valid_name, parse_poly, parse_poly_with, parse_ratfn};
pub use ratfn::{compose, reduce_fraction, substitute, RationalFn};
pub use sparse::{LaurentPoly, Poly};

use crate::error::{Error, Result};

/// The lexicographically first term; an error for the zero polynomial.
pub fn lex_first(p: &Poly) -> Result<Term> {
    p.lex_first().ok_or_else(|| Error::Domain("lex_first of the zero polynomial".into()))
}
