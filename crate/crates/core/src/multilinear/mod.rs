//! Twisted spaces, skew cochains on wedge bases, shuffles, and contraction.

mod cochain;
mod contraction;
mod shuffle;
mod space;

pub(crate) use cochain::{binom, Sparse};
pub use cochain::{combine, compatibility_basis, increasing_tuples, Cochain, Degree0Cochain};
pub use contraction::{contract, contract_mixed, insert};
pub use shuffle::{inversions, shuffles, sort_with_sign, Sign, SignedShuffle};
pub(crate) use space::same_space;
pub use space::{Space, TwistedSpace};
