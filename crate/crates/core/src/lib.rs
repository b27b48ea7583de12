//! Schur rings over cyclic groups and dihedral groups of order `2p`.
//!
//! The crate enumerates S-rings over small groups ([`enumerate`]), decides
//! schurity through the automorphism group of the color graph
//! ([`schurity`]), searches cyclic difference sets ([`diffset`]), and
//! checks the classification of S-rings over `D_2p` on full censuses
//! ([`verify`]). [`cli`] drives all of it from the `schur` binary.

pub mod error;
pub mod groups;
pub mod permgrp;
pub mod sring;
pub mod enumerate;
pub mod schurity;
pub mod diffset;
pub mod verify;
pub mod cli;

pub use error::{AxiomViolation, Error, Result};
