//! Exact finite-field toolkit for n-potent sumset questions.
//!
//! Decides, for prime powers q and exponents m, n, whether every element of
//! GF(q) is the sum of an m-potent and an n-potent, and verifies the
//! character-sum identities, Jacobi-sum refinement, and Weil-bound estimates
//! behind the classification by exact integer and Z[w] arithmetic.

pub mod charsum;
pub mod eisenstein;
pub mod error;
pub mod field;
pub mod poly;
pub mod potent;
pub mod report;
pub mod sumset;
pub mod verify;

pub use charsum::{CharSumReport, MqBreakdown, NqBreakdown};
pub use eisenstein::Eisenstein;
pub use error::{Error, Result};
pub use field::{build_field, build_field_with_modulus, Elem, FieldCtx, FieldSpec};
pub use potent::{n_potents, potent_cardinality, reduce_exponent, PotentSet};
pub use report::RunReport;
pub use sumset::{check_all, check_one, covers, BoundaryRule, SearchConfig, SearchHit};
pub use verify::{run_verify, Suite};
