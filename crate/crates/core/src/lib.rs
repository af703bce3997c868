//! Zeta functions and Weil polynomials of cyclic covers y^r = f(x) of the
//! projective line over F_{p^n} (p not dividing r), computed by lifting the
//! Frobenius to p-adic cohomology and reducing its action on an explicit
//! basis of differential forms.
//!
//! Module map:
//! - [`padic`]: fixed-precision arithmetic in Z_q with valuation shifts
//! - [`polyring`]: polynomials over Z_q, Bezout pairs, tau-series normalization
//! - [`cohomology`]: the Frobenius lift and the two reduction rules
//! - [`frobmatrix`]: block Frobenius matrices, twisted norms, charpoly
//! - [`weil`]: precision planning, basis selection, the end-to-end pipeline
//! - [`oracle`]: naive point counting and Newton-identity reconstruction

mod fp;
pub mod padic;
pub mod polyring;
pub mod cohomology;
pub mod frobmatrix;
pub mod weil;
pub mod oracle;



