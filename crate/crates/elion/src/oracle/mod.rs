//! Independent numerical cross-checks for the fast analytic paths.
//!
//! Everything in this module is deliberately slow and structurally unrelated
//! to the closed forms it validates: direct quadrature of defining integrals
//! instead of special-function identities. Production code must not call it;
//! tests and the acceptance suite do.

pub mod convolution;
pub mod quad;
