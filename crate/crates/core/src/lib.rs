//! Rigorous verification of series identities built from `C(4k, k)` and
//! harmonic numbers.
//!
//! The crate has two halves. Exact arithmetic ([`exact`], [`genfunc`],
//! [`symbolic`]) decides algebraic identities with no rounding at all.
//! Enclosure arithmetic ([`numerics`], [`series`]) produces balls that
//! provably contain infinite sums and closed-form constants. The
//! [`catalog`] lists the identities and [`verify`] runs them.

pub mod exact;
pub mod numerics;
pub mod series;
pub mod genfunc;
pub mod symbolic;
pub mod catalog;
pub mod verify;
