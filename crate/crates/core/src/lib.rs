//! Exact-arithmetic toolkit for smooth complete toric surfaces.
//!
//! Everything is computed over arbitrary-precision integers (and rationals
//! where bounds demand it): fans and their self-intersection profiles,
//! invariant divisor classes and intersection numbers, adjoint reduction
//! towers, lower bounds for Chern numbers of ample rank-r bundles, and
//! brute-force instability searches. The `harness` module wires these into
//! exhaustive desk-scale sweeps over enumerated surfaces.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod adjunction;
pub mod bogomolov;
pub mod chern;
pub mod divisor;
pub mod fan;
pub mod harness;
pub mod io;

mod serial;

pub use adjunction::{
    AdjunctionError, AdjunctionSequence, ContractionStep, ReductionOutcome, TelescopeReport,
};
pub use bogomolov::{
    BogomolovError, DestabilizerCandidate, DestabilizerSearch, RestrictionReport,
};
pub use chern::{BoundReport, ChernData, ChernError, ClaimReport, StabilityLabel};
pub use divisor::{DegreeVector, DivisorClass, DivisorError};
pub use fan::{BlowdownRecord, Fan, FanError, LatticeVector, SelfIntersectionProfile};
pub use harness::{RemarkReport, SurfaceEntry, SurfaceInventory, VerificationReport};
pub use io::IoError;
