//! Exact generator counts and Betti numbers of Veronese-type, c-bounded
//! t-spread, t-spread and squarefree Veronese ideals and their powers,
//! together with brute-force oracles that check every closed form:
//! generator enumeration, k-fold products, and simplicial homology.

pub mod closed_forms;
pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod families;
pub mod family;
pub mod monomial;
pub mod oracle;
pub mod report;
pub mod verify;

pub use closed_forms::BettiTable;
pub use combinatorics::{BigCount, SignedBigCount};
pub use error::{Error, Result};
pub use exec::Execution;
pub use families::{CBoundedTSpreadSpec, GeneratorSet, TSpreadMultiset, VeroneseTypeSpec};
pub use monomial::ExponentVector;
