//! Square Frobenius numbers of the pairs `(a, a+1)` and `(a, a+2)`.
//!
//! The square Frobenius number `r2` of a pair is the largest perfect square
//! that is not a nonnegative combination of the two generators. This crate
//! computes it three independent ways (brute force, a quotient criterion, and
//! closed forms), together with the sequence and Pell-equation machinery the
//! closed forms rest on.
//!
//! ```
//! use sqfrob::{j_search, r2_closed, Gap, GenPair, Nat};
//!
//! let p = GenPair::new(Nat::from(49u32), Gap::Two).unwrap();
//! assert_eq!(j_search(&p).unwrap().r2, Nat::from(1444u32));
//! assert_eq!(r2_closed(&p).unwrap().r2, Nat::from(1444u32));
//! ```

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod exact_arith;
pub mod farey_pell;
pub mod semigroup;
pub mod simpell;
pub mod verify;

pub use closed_form::{r2_closed, r2_legacy, FormulaTag};
pub use error::{Error, Result};
pub use exact_arith::Nat;
pub use farey_pell::{classify, gen_pell_family, u_seq, UClass};
pub use semigroup::{brute_square_frobenius, is_representable, j_search, Gap, GenPair, SquareFrobResult};
pub use simpell::{enumerate_common, verify_theorem_hardest};
pub use verify::{find_legacy_failures, verify_range, VerifyRecord};
