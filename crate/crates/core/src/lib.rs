//! Exact-arithmetic toolkit for finite fuzzy Γ-hypersemigroups.
//!
//! A fuzzy Γ-hyperoperation assigns to every triple `(a, γ, b)` of
//! `M × Γ × M` a fuzzy subset `a∘γ∘b` of `M`. This crate builds and checks
//! such tables with exact rational grades, converts them to and from crisp
//! Γ-hyperoperations, and tests ideal and congruence properties against
//! brute-force oracles.

pub mod bridge;
pub mod carrier;
pub mod cuts;
pub mod error;
pub mod format;
pub mod grade;
pub mod hyperop;
pub mod ideals;
pub mod relations;
pub mod report;
pub mod search;

pub use carrier::{Carrier, CrispSubset, FuzzySubset};
pub use cuts::{CrispGammaHyperop, CutThreshold, GammaOperation};
pub use error::{Error, Result};
pub use grade::Grade;
pub use hyperop::{Factor, FuzzyGammaHyperop};
pub use report::{CheckReport, Witness};
