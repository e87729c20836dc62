//! Exact-arithmetic toolkit for GCD and LCM matrices.
//!
//! The crate builds the classical matrices `[(i,j)]` and `[[i,j]]` (entries
//! given by an arithmetical function of the gcd or lcm of the indices), the
//! two generalized families
//!
//! * `f1`: entries `g([i,j]) · Σ_{k ≤ n/[i,j]} g(k)`,
//! * `f2`: entries `Σ_{k≤n} g(k) − g(i)·Σ_{l≤n/i} g(l) − g(j)·Σ_{l≤n/j} g(l) + g([i,j])·Σ_{k≤n/[i,j]} g(k)`,
//!
//! together with their triangular factorizations, and computes determinants
//! both by fraction-free elimination and by closed product forms. Everything
//! runs over arbitrary-precision rationals; every comparison in the crate is
//! exact equality, never a tolerance.
//!
//! Modules follow the pipeline:
//!
//! * [`arithfun`] — sieved tables of arithmetical functions and their prefix sums,
//! * [`exactmat`] — dense rational matrices and the 0/1 divisibility matrices,
//! * [`format`](mod@format) — CSV / JSON / LaTeX emission and parsing,
//! * [`builders`] — the matrix families and their factorizations,
//! * [`dets`] — Bareiss elimination and the closed determinant forms,
//! * [`verify`] — brute-force oracles and the machine-checked identity suite.
//!
//! ```
//! use lcmat::{bareiss_det, build_f1_matrix, closed_form_det,
//!             FunctionKind, FunctionTable, MatrixFamily};
//!
//! let g = FunctionTable::build(FunctionKind::Id, 6, None)?;
//! let m = build_f1_matrix(6, &g)?;
//! // elimination and the closed product form agree exactly: det = 6!
//! let det = bareiss_det(&m).value;
//! assert_eq!(det, closed_form_det(MatrixFamily::F1, 6, &g)?.value);
//! assert_eq!(det.to_string(), "720");
//! # Ok::<(), lcmat::Error>(())
//! ```

pub mod arithfun;
pub mod builders;
pub mod dets;
pub mod error;
pub mod exactmat;
pub mod format;
pub mod verify;

/// Arbitrary-precision rational; the single scalar type used everywhere.
pub type Rat = num_rational::BigRational;

pub use arithfun::{FunctionKind, FunctionSpec, FunctionTable, PrefixSums};
pub use builders::{
    build_f1_factorization, build_f1_matrix, build_f2_factorization, build_f2_matrix,
    build_gcd_matrix, build_lcm_matrix, build_lcm_structure_product, Factorization, MatrixFamily,
};
pub use dets::{bareiss_det, closed_form_det, DetMethod, DetResult};
pub use error::{Error, Result};
pub use exactmat::{ExactMatrix, Mismatch};
pub use verify::{
    oracle_f1_entry, oracle_f2_entry, run_suite, Claim, GKind, Status, SuiteConfig, VerifyReport,
};
