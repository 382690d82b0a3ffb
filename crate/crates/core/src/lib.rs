//! Two-dimensional nearest-neighbour schedules for the C4 error-detecting
//! code with teleportation-based postselection, and two ways of estimating
//! their fault-tolerance threshold: exhaustive malignant-pair counting under
//! adversarial Pauli faults, and Monte Carlo pseudo-thresholds under
//! depolarizing noise.
//!
//! ```
//! use knill2d::circuit::census;
//! use knill2d::tiles::{build_cnot_exrec, TileSize};
//!
//! let exrec = build_cnot_exrec(TileSize::FiveByFive);
//! let c = census(&exrec.noisy).unwrap();
//! assert_eq!((c.total, c.idle(), c.time_steps), (196, 32, 14));
//! ```

pub mod circuit;
pub mod cli;
pub mod clifford;
pub mod malignancy;
pub mod montecarlo;
pub mod oracle;
pub mod pauli;
pub mod tableau;
pub mod threshold;
pub mod tiles;

pub use circuit::{GridCoord, Location, LocationCensus, LocationType, Schedule, Structure};
pub use clifford::{conjugate, conjugate_inverse, CliffordGate, GateKind};
pub use malignancy::{count_malignant_pairs, is_malignant_pair, simulate_faults, AlphaMatrix, Fault, FaultAssignment, TrialOutcome};
pub use pauli::{Pauli, PauliOp};
pub use tiles::{build_cnot_exrec, build_ed, build_prep, ExRec, TileSize, TileSpec};

/// Version string embedded in every emitted artifact.
pub const TOOL_VERSION: &str = concat!("knill2d ", env!("CARGO_PKG_VERSION"));
