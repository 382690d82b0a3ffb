//! Pauli-frame execution of an exRec.
//!
//! The frame is the Pauli by which the faulty run differs from the ideal
//! one. A measurement outcome flips iff the frame anticommutes with the
//! measured observable; teleportation corrections are XORed in when the
//! parity of their flipped outcomes is odd. Every step is linear over GF(2),
//! so the packed effect of a fault set is the XOR of single-fault effects.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Grid, LocationType, LogicalBlock, Schedule};
use crate::pauli::Pauli;
use crate::tiles::{ExRec, ExRecError};

use super::fault::{Fault, FaultAssignment};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("location {0} does not exist")]
    UnknownLocation(u32),
    #[error("location {0} belongs to the fault-free decoder")]
    FaultOnIdealLocation(u32),
    #[error("fault {fault:?} does not fit location {id} of type {kind}")]
    FaultMismatch { id: u32, kind: LocationType, fault: Fault },
    #[error("location {0} carries more than one fault")]
    DuplicateLocation(u32),
    #[error("{0}")]
    Capacity(String),
    #[error(transparent)]
    ExRec(#[from] ExRecError),
}

/// Verdict flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MalignancyFlags {
    /// A detection by the ideal decoder also counts as failure.
    pub strict_malignancy: bool,
    /// Spectator-only residuals count as failure.
    pub spectator_counts: bool,
}

impl Default for MalignancyFlags {
    fn default() -> MalignancyFlags {
        MalignancyFlags { strict_malignancy: false, spectator_counts: false }
    }
}

/// Residual Pauli class on one tile's output block.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileResidual {
    pub x_logical: bool,
    pub z_logical: bool,
    pub x_spectator: bool,
    pub z_spectator: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// Every noisy detection parity is even.
    pub accepted: bool,
    pub trailing_ideal_detected: bool,
    /// Per tile, after ideal decoding (spectator bits at the decoder input).
    pub residual_logical: Vec<TileResidual>,
}

impl TrialOutcome {
    pub fn logical_nontrivial(&self, spectator_counts: bool) -> bool {
        self.residual_logical
            .iter()
            .any(|r| r.x_logical || r.z_logical || (spectator_counts && (r.x_spectator || r.z_spectator)))
    }

    /// Accepted, passed by the decoder, and logically wrong.
    pub fn is_logical_error(&self) -> bool {
        self.accepted && !self.trailing_ideal_detected && self.logical_nontrivial(false)
    }

    pub fn is_failure(&self, flags: MalignancyFlags) -> bool {
        if !self.accepted {
            return false;
        }
        let logical = self.logical_nontrivial(flags.spectator_counts);
        if flags.strict_malignancy {
            self.trailing_ideal_detected || logical
        } else {
            !self.trailing_ideal_detected && logical
        }
    }
}

/// Bit positions inside a packed effect word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EffectLayout {
    pub noisy_checks: u32,
    pub trailing_checks: u32,
    pub tiles: u32,
}

impl EffectLayout {
    pub const TRAILING_SHIFT: u32 = 16;
    pub const LOGICAL_SHIFT: u32 = 32;
    pub const SPECTATOR_SHIFT: u32 = 40;

    pub fn noisy_mask(&self) -> u64 {
        (1u64 << self.noisy_checks) - 1
    }

    pub fn trailing_mask(&self) -> u64 {
        ((1u64 << self.trailing_checks) - 1) << Self::TRAILING_SHIFT
    }

    pub fn logical_mask(&self) -> u64 {
        ((1u64 << (2 * self.tiles)) - 1) << Self::LOGICAL_SHIFT
    }

    pub fn spectator_mask(&self) -> u64 {
        ((1u64 << (2 * self.tiles)) - 1) << Self::SPECTATOR_SHIFT
    }

    /// Same verdict as `outcome(bits).is_failure(flags)`, without allocating.
    #[inline]
    pub fn is_failure(&self, bits: u64, flags: MalignancyFlags) -> bool {
        if bits & self.noisy_mask() != 0 {
            return false;
        }
        let trailing = bits & self.trailing_mask() != 0;
        let mut logical = bits & self.logical_mask() != 0;
        if flags.spectator_counts {
            logical |= bits & self.spectator_mask() != 0;
        }
        if flags.strict_malignancy {
            trailing || logical
        } else {
            !trailing && logical
        }
    }

    pub fn outcome(&self, bits: u64) -> TrialOutcome {
        let bit = |k: u32| (bits >> k) & 1 == 1;
        TrialOutcome {
            accepted: bits & self.noisy_mask() == 0,
            trailing_ideal_detected: bits & self.trailing_mask() != 0,
            residual_logical: (0..self.tiles)
                .map(|t| TileResidual {
                    x_logical: bit(Self::LOGICAL_SHIFT + 2 * t),
                    z_logical: bit(Self::LOGICAL_SHIFT + 2 * t + 1),
                    x_spectator: bit(Self::SPECTATOR_SHIFT + 2 * t),
                    z_spectator: bit(Self::SPECTATOR_SHIFT + 2 * t + 1),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Prep(u8),
    MeasX(u8, u8),
    MeasZ(u8, u8),
    Cnot(u8, u8),
    Swap(u8, u8),
    Idle(u8),
}

#[derive(Debug, Clone)]
struct Update {
    condition: u64,
    x: u128,
    z: u128,
}

#[derive(Debug, Clone, Default)]
struct Step {
    ops: Vec<Op>,
    updates: Vec<Update>,
}

/// (x mask, z mask) pair used as an observable.
type Obs = (u128, u128);

fn anticommutes(fx: u128, fz: u128, o: Obs) -> bool {
    ((fx & o.1) ^ (fz & o.0)).count_ones() % 2 == 1
}

#[derive(Debug, Clone, Copy)]
struct FaultSite {
    step: usize,
    op: usize,
    kind: LocationType,
}

/// One noisy location as seen by the fault machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoisyLocation {
    pub id: u32,
    pub kind: LocationType,
}

/// Final state of one frame run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameTrace {
    pub effect: u64,
    /// Frame at the end, indexed by grid site.
    pub x: u128,
    pub z: u128,
    /// Outcome flips relative to the fault-free run, by measurement slot.
    pub record: u64,
}

/// An exRec compiled to a flat list of frame operations.
#[derive(Debug, Clone)]
pub struct Program {
    steps: Vec<Step>,
    boundary: usize,
    noisy_checks: Vec<u64>,
    trailing_checks: Vec<u64>,
    spectator: Vec<(Obs, Obs)>,
    logical: Vec<(Obs, Obs)>,
    sites: HashMap<u32, FaultSite>,
    decoder_ids: BTreeSet<u32>,
    noisy: Vec<NoisyLocation>,
    layout: EffectLayout,
}

fn site_index(grid: &Grid, c: crate::circuit::GridCoord) -> u8 {
    grid.index(c) as u8
}

fn block_obs(grid: &Grid, b: &LogicalBlock, name: &str) -> Obs {
    let op = b.operator(name).expect("standard logical names");
    let (mut x, mut z) = (0u128, 0u128);
    for (k, site) in b.sites.iter().enumerate() {
        let (px, pz) = op.get(k).bits();
        let bit = 1u128 << grid.index(*site);
        if px {
            x |= bit;
        }
        if pz {
            z |= bit;
        }
    }
    (x, z)
}

fn blocks_by_tile(blocks: &[LogicalBlock]) -> Vec<&LogicalBlock> {
    let mut v: Vec<&LogicalBlock> = blocks.iter().collect();
    v.sort_by_key(|b| b.tile);
    v
}

impl Program {
    pub fn compile(rec: &ExRec) -> Result<Program, SimError> {
        rec.check()?;
        Program::build(&rec.noisy, Some(&rec.decoder))
    }

    /// Program for a lone schedule: residuals are read off its exit blocks.
    pub fn compile_schedule(s: &Schedule) -> Result<Program, SimError> {
        let report = crate::circuit::validate(s);
        if !report.is_empty() {
            return Err(SimError::ExRec(ExRecError::Invalid { name: s.name.clone(), report }));
        }
        Program::build(s, None)
    }

    fn build(noisy_part: &Schedule, decoder: Option<&Schedule>) -> Result<Program, SimError> {
        let grid = &noisy_part.grid;
        if grid.num_sites() > 128 {
            return Err(SimError::Capacity(format!("{} sites exceed 128", grid.num_sites())));
        }
        let mut steps = Vec::new();
        let mut slot_of: HashMap<(usize, u32), u8> = HashMap::new();
        let mut sites = HashMap::new();
        let mut noisy = Vec::new();
        let mut n_meas = 0usize;
        let decoder_offset = noisy_part.max_id().map_or(0, |m| m + 1);
        let mut decoder_ids = BTreeSet::new();

        for (part, sched) in std::iter::once(noisy_part).chain(decoder).enumerate() {
            let first = steps.len();
            for layer in &sched.layers {
                let mut step = Step::default();
                for loc in &layer.locations {
                    let q = |k: usize| site_index(grid, loc.operands[k]);
                    let op = match loc.kind {
                        LocationType::PrepPlus | LocationType::PrepZero => Op::Prep(q(0)),
                        LocationType::MeasX | LocationType::MeasZ => {
                            if n_meas >= 64 {
                                return Err(SimError::Capacity("more than 64 measurements".into()));
                            }
                            let slot = n_meas as u8;
                            n_meas += 1;
                            slot_of.insert((part, loc.id), slot);
                            if loc.kind == LocationType::MeasX {
                                Op::MeasX(q(0), slot)
                            } else {
                                Op::MeasZ(q(0), slot)
                            }
                        }
                        LocationType::Cnot => Op::Cnot(q(0), q(1)),
                        LocationType::Swap => Op::Swap(q(0), q(1)),
                        LocationType::Idle => Op::Idle(q(0)),
                    };
                    if part == 0 && !layer.fault_free {
                        sites.insert(loc.id, FaultSite { step: steps.len(), op: step.ops.len(), kind: loc.kind });
                        noisy.push(NoisyLocation { id: loc.id, kind: loc.kind });
                    } else {
                        decoder_ids.insert(if part == 0 { loc.id } else { decoder_offset + loc.id });
                    }
                    step.ops.push(op);
                }
                steps.push(step);
            }
            for u in &sched.frame_updates {
                let mut condition = 0u64;
                for m in &u.condition {
                    condition |= 1 << slot_of[&(part, *m)];
                }
                let (mut x, mut z) = (0u128, 0u128);
                for (site, p) in u.paulis() {
                    let (px, pz) = p.bits();
                    let bit = 1u128 << grid.index(site);
                    if px {
                        x ^= bit;
                    }
                    if pz {
                        z ^= bit;
                    }
                }
                steps[first + u.time as usize - 1].updates.push(Update { condition, x, z });
            }
        }
        let boundary = noisy_part.layers.len();
        let masks = |s: &Schedule, part: usize| -> Vec<u64> {
            s.detection_checks
                .iter()
                .map(|c| c.measurements.iter().fold(0u64, |m, id| m | 1 << slot_of[&(part, *id)]))
                .collect()
        };
        let noisy_checks = masks(noisy_part, 0);
        let trailing_checks = decoder.map(|d| masks(d, 1)).unwrap_or_default();
        let tiles = noisy_part.exit_blocks.len();
        if noisy_checks.len() > 16 || trailing_checks.len() > 16 || tiles > 4 {
            return Err(SimError::Capacity("too many checks or tiles for the packed effect word".into()));
        }
        let spectator = blocks_by_tile(&noisy_part.exit_blocks)
            .into_iter()
            .map(|b| (block_obs(grid, b, "X^S"), block_obs(grid, b, "Z^S")))
            .collect();
        let logical = blocks_by_tile(&decoder.unwrap_or(noisy_part).exit_blocks)
            .into_iter()
            .map(|b| (block_obs(grid, b, "X^L"), block_obs(grid, b, "Z^L")))
            .collect();
        noisy.sort_by_key(|l| l.id);
        let layout = EffectLayout {
            noisy_checks: noisy_checks.len() as u32,
            trailing_checks: trailing_checks.len() as u32,
            tiles: tiles as u32,
        };
        Ok(Program {
            steps,
            boundary,
            noisy_checks,
            trailing_checks,
            spectator,
            logical,
            sites,
            decoder_ids,
            noisy,
            layout,
        })
    }

    pub fn layout(&self) -> EffectLayout {
        self.layout
    }

    /// Noisy locations in id order.
    pub fn noisy_locations(&self) -> &[NoisyLocation] {
        &self.noisy
    }

    /// Id under which decoder location `raw` is addressed in fault sets.
    pub fn decoder_location_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.decoder_ids.iter().copied()
    }

    fn resolve(&self, faults: &FaultAssignment) -> Result<Vec<(FaultSite, Fault)>, SimError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(faults.faults.len());
        for &(id, f) in &faults.faults {
            if !seen.insert(id) {
                return Err(SimError::DuplicateLocation(id));
            }
            let site = match self.sites.get(&id) {
                Some(s) => *s,
                None if self.decoder_ids.contains(&id) => return Err(SimError::FaultOnIdealLocation(id)),
                None => return Err(SimError::UnknownLocation(id)),
            };
            if !f.fits(site.kind) {
                return Err(SimError::FaultMismatch { id, kind: site.kind, fault: f });
            }
            out.push((site, f));
        }
        Ok(out)
    }

    /// Packed effect word of a fault set.
    pub fn effect(&self, faults: &FaultAssignment) -> Result<u64, SimError> {
        Ok(self.trace(faults)?.effect)
    }

    pub fn trace(&self, faults: &FaultAssignment) -> Result<FrameTrace, SimError> {
        let resolved = self.resolve(faults)?;
        Ok(self.run(&resolved))
    }

    pub fn simulate(&self, faults: &FaultAssignment) -> Result<TrialOutcome, SimError> {
        Ok(self.layout.outcome(self.effect(faults)?))
    }

    fn spectator_bits(&self, fx: u128, fz: u128) -> u64 {
        let mut out = 0;
        for (t, (xs, zs)) in self.spectator.iter().enumerate() {
            let t = t as u32;
            // An X-type spectator error anticommutes with Z^S.
            out |= (anticommutes(fx, fz, *zs) as u64) << (EffectLayout::SPECTATOR_SHIFT + 2 * t);
            out |= (anticommutes(fx, fz, *xs) as u64) << (EffectLayout::SPECTATOR_SHIFT + 2 * t + 1);
        }
        out
    }

    fn run(&self, faults: &[(FaultSite, Fault)]) -> FrameTrace {
        let (mut fx, mut fz) = (0u128, 0u128);
        let mut record = 0u64;
        let mut out = 0u64;
        let flip = |x: &mut u128, z: &mut u128, q: u8, p: Pauli| {
            let (px, pz) = p.bits();
            if px {
                *x ^= 1 << q;
            }
            if pz {
                *z ^= 1 << q;
            }
        };
        for (si, step) in self.steps.iter().enumerate() {
            if si == self.boundary {
                out |= self.spectator_bits(fx, fz);
            }
            for (oi, op) in step.ops.iter().enumerate() {
                match *op {
                    Op::Prep(q) => {
                        fx &= !(1 << q);
                        fz &= !(1 << q);
                    }
                    Op::MeasX(q, slot) => {
                        record |= (((fz >> q) & 1) as u64) << slot;
                        fx &= !(1 << q);
                        fz &= !(1 << q);
                    }
                    Op::MeasZ(q, slot) => {
                        record |= (((fx >> q) & 1) as u64) << slot;
                        fx &= !(1 << q);
                        fz &= !(1 << q);
                    }
                    Op::Cnot(c, t) => {
                        fx ^= ((fx >> c) & 1) << t;
                        fz ^= ((fz >> t) & 1) << c;
                    }
                    Op::Swap(a, b) => {
                        let dx = ((fx >> a) ^ (fx >> b)) & 1;
                        let dz = ((fz >> a) ^ (fz >> b)) & 1;
                        fx ^= (dx << a) | (dx << b);
                        fz ^= (dz << a) | (dz << b);
                    }
                    Op::Idle(_) => {}
                }
                for (site, f) in faults {
                    if site.step != si || site.op != oi {
                        continue;
                    }
                    match (*op, *f) {
                        (Op::MeasX(_, slot) | Op::MeasZ(_, slot), Fault::Flip) => record ^= 1 << slot,
                        (Op::Prep(q) | Op::Idle(q), Fault::One(p)) => flip(&mut fx, &mut fz, q, p),
                        (Op::Cnot(a, b) | Op::Swap(a, b), Fault::Two(pa, pb)) => {
                            flip(&mut fx, &mut fz, a, pa);
                            flip(&mut fx, &mut fz, b, pb);
                        }
                        _ => unreachable!("fault kinds are checked in resolve"),
                    }
                }
            }
            for u in &step.updates {
                if (record & u.condition).count_ones() % 2 == 1 {
                    fx ^= u.x;
                    fz ^= u.z;
                }
            }
        }
        for (k, m) in self.noisy_checks.iter().enumerate() {
            out |= (((record & m).count_ones() % 2) as u64) << k;
        }
        for (k, m) in self.trailing_checks.iter().enumerate() {
            out |= (((record & m).count_ones() % 2) as u64) << (EffectLayout::TRAILING_SHIFT + k as u32);
        }
        for (t, (xl, zl)) in self.logical.iter().enumerate() {
            let t = t as u32;
            out |= (anticommutes(fx, fz, *zl) as u64) << (EffectLayout::LOGICAL_SHIFT + 2 * t);
            out |= (anticommutes(fx, fz, *xl) as u64) << (EffectLayout::LOGICAL_SHIFT + 2 * t + 1);
        }
        if self.boundary == self.steps.len() {
            out |= self.spectator_bits(fx, fz);
        }
        FrameTrace { effect: out, x: fx, z: fz, record }
    }
}

/// Propagates `faults` through `exrec` and returns the verdict.
pub fn simulate_faults(exrec: &ExRec, faults: &FaultAssignment) -> Result<TrialOutcome, SimError> {
    Program::compile(exrec)?.simulate(faults)
}
