//! Gröbner-basis lifting: membership, solving `d∘X = B` and `X∘A = B`,
//! factoring through `d₁`, and the exactness criterion.

mod exactness;
mod groebner;
mod solve;

pub use exactness::{exactness_check, ideal_height, ExactnessCertificate, Grade};
pub use groebner::ModuleGroebnerBasis;
pub use solve::{r1_factor, solve_post, solve_pre, ColumnSolver};
