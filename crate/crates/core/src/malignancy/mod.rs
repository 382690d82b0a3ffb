//! Adversarial fault propagation through exRecs and malignant-pair counting.

mod alpha;
mod crosscheck;
mod engine;
mod fault;
mod pairs;

pub use alpha::{AlphaDiff, AlphaMatrix, ALPHA_FORMAT};
pub use crosscheck::{oracle_crosscheck, CrossCheckError, CrossCheckReport};
pub use engine::{
    simulate_faults, EffectLayout, FrameTrace, MalignancyFlags, NoisyLocation, Program, SimError, TileResidual, TrialOutcome,
};
pub use fault::{fault_options, Fault, FaultAssignment};
pub use pairs::{
    count_malignant_pairs, count_malignant_pairs_with, count_with_table, is_malignant_pair, is_malignant_pair_with,
    PairCount, ResponseEntry, ResponseTable};
