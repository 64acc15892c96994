//! Finite group actions on closed oriented surfaces of genus at least 2.
//!
//! `perm` has permutation groups and monomorphism search, `fp` coset
//! enumeration for finite presentations, `catalog` small-group families and
//! catalog files, `rh` signatures and generating vectors, `exclusivity` the
//! per-genus certificates and `report` the JSON/markdown layer behind the
//! `surface-actions` binary.
//!
//! ```
//! use surface_actions::rh::{rh_genus, rh_measure, Signature};
//!
//! let s: Signature = "(0;2,3,7)".parse().unwrap();
//! assert_eq!(rh_measure(&s).to_string(), "1/42");
//! assert_eq!(rh_genus(168, &s), Some(3));
//! ```

pub mod catalog;
pub mod error;
pub mod exclusivity;
pub mod fp;
pub mod perm;
pub mod report;
pub mod rh;
mod serde_u128;

pub use error::{Error, Result};
