//! Depolarizing-noise sampling of an exRec with postselection.
//!
//! Every trial draws independent faults at the noisy locations and XORs
//! their precomputed effect words, which equals a full frame simulation by
//! linearity. Randomness comes from ChaCha8 with one stream per fixed block
//! of trial indices, so results do not depend on the worker count.

mod pseudo;
mod stats;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::LocationType;
use crate::malignancy::{fault_options, EffectLayout, Fault, MalignancyFlags, Program, ResponseTable, SimError};
use crate::tiles::ExRec;

pub use pseudo::{find_pseudothreshold, logical_rate_sweep, sweep_csv, PointEval, PseudoThreshold, SearchConfig, SweepRow};
pub use stats::{loglog_fit, wilson_interval, Z95};

/// Trials sharing one RNG stream.
pub const BLOCK: u64 = 4096;

#[derive(Debug, Error)]
pub enum McError {
    #[error("invalid noise model: {0}")]
    Model(String),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub p: f64,
    pub gamma: f64,
    pub meas_prep_factor: f64,
}

impl NoiseModel {
    pub fn new(p: f64, gamma: f64) -> NoiseModel {
        NoiseModel { p, gamma, meas_prep_factor: 1.0 }
    }

    pub fn with_meas_prep_factor(mut self, f: f64) -> NoiseModel {
        self.meas_prep_factor = f;
        self
    }

    pub fn at(&self, p: f64) -> NoiseModel {
        NoiseModel { p, ..*self }
    }

    /// Total fault probability at a location of type `kind`.
    pub fn rate(&self, kind: LocationType) -> f64 {
        match kind {
            LocationType::Cnot | LocationType::Swap => self.p,
            LocationType::Idle => self.gamma * self.p,
            _ => self.meas_prep_factor * self.p,
        }
    }

    pub fn validate(&self) -> Result<(), McError> {
        let finite = [self.p, self.gamma, self.meas_prep_factor].iter().all(|v| v.is_finite());
        if !finite || self.p < 0.0 || self.gamma < 0.0 || self.meas_prep_factor <= 0.0 {
            return Err(McError::Model(format!("{self:?}")));
        }
        for t in LocationType::ALL {
            let r = self.rate(t);
            if !(0.0..=1.0).contains(&r) {
                return Err(McError::Model(format!("rate {r} for {t} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Draws the fault at one location: each option is equally likely and the
/// total fault probability is `model.rate(kind)`.
pub fn sample_fault<R: Rng + ?Sized>(kind: LocationType, model: &NoiseModel, rng: &mut R) -> Option<Fault> {
    let r = model.rate(kind);
    if r <= 0.0 || rng.random::<f64>() >= r {
        return None;
    }
    let opts = fault_options(kind);
    Some(opts[rng.random_range(0..opts.len())])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub e_hat: f64,
    pub accepted_count: u64,
    pub error_count: u64,
    pub total_trials: u64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub diagnostic: Option<String>,
}

impl McEstimate {
    pub fn from_counts(accepted: u64, errors: u64, trials: u64, seed: u64) -> McEstimate {
        let (ci_low, ci_high) = wilson_interval(errors, accepted, Z95);
        McEstimate {
            e_hat: if accepted == 0 { 0.0 } else { errors as f64 / accepted as f64 },
            accepted_count: accepted,
            error_count: errors,
            total_trials: trials,
            ci_low,
            ci_high,
            seed,
            diagnostic: (accepted == 0).then(|| "no trial was accepted".to_string()),
        }
    }

    pub fn accept_rate(&self) -> f64 {
        self.accepted_count as f64 / self.total_trials.max(1) as f64
    }
}

/// Locations sharing one fault rate.
#[derive(Debug, Clone)]
struct RateClass {
    rate: f64,
    /// Per location, its option effects.
    effects: Vec<Vec<u64>>,
}

/// Precomputed per-fault effects of one exRec.
#[derive(Debug, Clone)]
pub struct Sampler {
    table: ResponseTable,
    flags: MalignancyFlags,
}

impl Sampler {
    pub fn new(exrec: &ExRec, flags: MalignancyFlags) -> Result<Sampler, McError> {
        let program = Program::compile(exrec)?;
        Ok(Sampler { table: ResponseTable::build(&program)?, flags })
    }

    pub fn layout(&self) -> EffectLayout {
        self.table.layout
    }

    fn classes(&self, model: &NoiseModel) -> Vec<RateClass> {
        let mut classes: Vec<RateClass> = Vec::new();
        for e in &self.table.entries {
            let rate = model.rate(e.kind);
            if rate <= 0.0 {
                continue;
            }
            match classes.iter_mut().find(|c| c.rate == rate) {
                Some(c) => c.effects.push(e.effects.clone()),
                None => classes.push(RateClass { rate, effects: vec![e.effects.clone()] }),
            }
        }
        classes
    }

    /// (accepted, errors) over trials `[start, end)`.
    pub fn run_range(&self, model: &NoiseModel, start: u64, end: u64, seed: u64, jobs: Option<usize>) -> Result<(u64, u64), McError> {
        model.validate()?;
        let classes = self.classes(model);
        let layout = self.table.layout;
        let flags = self.flags;
        let first_block = start / BLOCK;
        let last_block = end.div_ceil(BLOCK);
        let block = |b: u64| -> (u64, u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let lo = (b * BLOCK).max(start);
            let hi = ((b + 1) * BLOCK).min(end);
            let (mut acc, mut err) = (0u64, 0u64);
            for trial in b * BLOCK..(b + 1) * BLOCK {
                let bits = trial_effect(&classes, &mut rng);
                if trial < lo || trial >= hi {
                    continue;
                }
                if bits & layout.noisy_mask() == 0 {
                    acc += 1;
                    if layout.is_failure(bits, flags) {
                        err += 1;
                    }
                }
            }
            (acc, err)
        };
        let run = || {
            (first_block..last_block)
                .into_par_iter()
                .map(block)
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
        };
        match jobs {
            Some(j) => rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map(|pool| pool.install(run))
                .map_err(|e| McError::Pool(e.to_string())),
            None => Ok(run()),
        }
    }

    pub fn estimate(&self, model: &NoiseModel, trials: u64, seed: u64, jobs: Option<usize>) -> Result<McEstimate, McError> {
        if trials == 0 {
            return Err(McError::NoTrials);
        }
        let (acc, err) = self.run_range(model, 0, trials, seed, jobs)?;
        Ok(McEstimate::from_counts(acc, err, trials, seed))
    }
}

/// Geometric skipping within each rate class: the gap to the next faulty
/// location is `floor(ln U / ln(1 - r))`.
fn trial_effect(classes: &[RateClass], rng: &mut ChaCha8Rng) -> u64 {
    let mut bits = 0u64;
    for c in classes {
        let n = c.effects.len();
        if c.rate >= 1.0 {
            for opts in &c.effects {
                bits ^= opts[rng.random_range(0..opts.len())];
            }
            continue;
        }
        let log_q = (-c.rate).ln_1p();
        let mut i = 0usize;
        loop {
            let u: f64 = 1.0 - rng.random::<f64>();
            let gap = (u.ln() / log_q).floor();
            if gap >= (n - i) as f64 {
                break;
            }
            i += gap as usize;
            let opts = &c.effects[i];
            bits ^= opts[rng.random_range(0..opts.len())];
            i += 1;
            if i >= n {
                break;
            }
        }
    }
    bits
}

/// Logical error rate among accepted trials, with a Wilson 95% interval.
pub fn estimate_logical_error_rate(exrec: &ExRec, model: &NoiseModel, trials: u64, seed: u64) -> Result<McEstimate, McError> {
    Sampler::new(exrec, MalignancyFlags::default())?.estimate(model, trials, seed, None)
}
