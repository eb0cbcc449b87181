//! Exact computations around depth-2 and depth-3 multiple zeta values and
//! period polynomials of cusp forms: coefficient kernels, annihilator
//! matrices, period-polynomial spaces, numerical double zeta values and
//! verification suites.

pub mod arith;
pub mod error;
pub mod index;
pub mod kernels;
pub mod linalg;
pub mod matrices;
pub mod numeric;
pub mod period;
pub mod poly;
pub mod suites;

pub use arith::{bernoulli, beta, binom, dim_cusp, fmt_rational, parse_rational, Rational};
pub use error::{Error, Result};
pub use index::{index_set, Index, IndexSet, Pattern, Slot};
pub use kernels::{b_coeff, c_coeff, e_coeff, h_coeff, lambda_coeff, tau};
pub use linalg::{left_kernel, rank, right_kernel, row_space_membership, KernelBasis, LabelledVector, QMatrix, Side};
pub use poly::{BiLaurentPoly, TriLaurentPoly};
