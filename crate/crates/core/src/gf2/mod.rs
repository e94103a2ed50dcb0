//! Exact GF(2) algebra: polynomials, the cyclic ring, extension fields, and
//! the factorization of `x^n - 1`.

pub mod factor;
pub mod field;
pub mod poly;
pub mod ring;

pub use factor::{cyclotomic_cosets, factor_xn_minus_1, multiplicative_order_of_two};
pub use field::{doubling_orbit, minimal_polynomial, Gf2mField, PRIMITIVE_POLYNOMIALS};
pub use poly::{x_pow_mod, BitPoly};
pub use ring::RingElement;
