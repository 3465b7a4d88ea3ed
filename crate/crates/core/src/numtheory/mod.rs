//! Exact polynomial arithmetic and the cyclotomic rational-angle test.

mod cyclotomic;
mod poly;
mod roots;

pub use cyclotomic::{
    angle_of_trace, cyclotomic_poly, divisors, is_cyclotomic, order_search_bound, parse_polynomial, totient,
    AngleVerdict, CyclotomicTable, VerdictReason, ROOT_MATCH_TOL,
};
pub use poly::{Polynomial, RationalPolynomial};
pub use roots::complex_roots;
