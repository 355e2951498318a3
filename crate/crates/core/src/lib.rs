//! Exact finite permutation groups, G-sets and bisets, Goursat data for
//! subgroups of direct products, the double-coset decomposition of biset
//! composition, and fusion systems with their quotients.
//!
//! Everything is exhaustive and exact: groups are materialized element by
//! element and inputs beyond the configured [`Limits`] are rejected.
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bouc;
pub mod catalog;
pub mod error;
pub mod explorer;
pub mod fusion;
pub mod goursat;
pub mod group;
pub mod gset;
pub mod morphism;
pub mod perm;
pub mod product;
pub mod subgroup;

pub use error::{Cap, Error};
pub use group::{Limits, PermGroup};
pub use gset::{Biset, GSet, TransitiveDecomposition};
pub use morphism::GroupMorphism;
pub use perm::Perm;
pub use product::{DirectProduct, Quotient};
pub use subgroup::Subgroup;
