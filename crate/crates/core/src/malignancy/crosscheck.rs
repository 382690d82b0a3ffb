//! Certifies the frame engine against the dense state-vector oracle on a
//! single-tile schedule.
//!
//! The input block is encoded in |+>_L|0>_S or |0>_L|+>_S. For every fault
//! set and every oracle branch, detection parities must match the engine and
//! each output operator with a definite fault-free value must flip sign
//! exactly when the engine's final frame anticommutes with it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{GridCoord, LocationType, Schedule};
use crate::clifford::{CliffordGate, GateKind};
use crate::oracle::{oracle_statevector, OracleError, OracleFault, OracleFaultKind, MAX_ORACLE_QUBITS};
use crate::pauli::{c4, PauliOp};

use super::engine::{Program, SimError};
use super::fault::{fault_options, Fault, FaultAssignment};

#[derive(Debug, Error)]
pub enum CrossCheckError {
    #[error("schedule needs {0} qubits, more than the oracle holds")]
    TooLarge(usize),
    #[error("schedule must have exactly one entry and one exit block")]
    Blocks,
    #[error("fault-free run leaves {0} without a definite value")]
    Indefinite(String),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub schedule: String,
    pub qubits: usize,
    pub max_live_qubits: usize,
    pub fault_sets: u64,
    pub branches: u64,
    pub mismatches: Vec<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Input {
    PlusZero,
    ZeroPlus,
}

struct Harness<'a> {
    schedule: &'a Schedule,
    program: Program,
    qubit: BTreeMap<GridCoord, usize>,
    circuit: Vec<CliffordGate>,
    gate_of: BTreeMap<u32, usize>,
    slot_of: BTreeMap<u32, usize>,
    /// (name, operator on oracle qubits, operator on grid sites).
    observables: Vec<(String, PauliOp, PauliOp)>,
}

fn gate_kind(t: LocationType) -> GateKind {
    match t {
        LocationType::PrepPlus => GateKind::PrepPlus,
        LocationType::PrepZero => GateKind::Prep0,
        LocationType::MeasX => GateKind::MeasX,
        LocationType::MeasZ => GateKind::MeasZ,
        LocationType::Swap => GateKind::Swap,
        LocationType::Cnot => GateKind::Cnot,
        LocationType::Idle => GateKind::Idle,
    }
}

impl<'a> Harness<'a> {
    fn new(schedule: &'a Schedule, input: Input) -> Result<Harness<'a>, CrossCheckError> {
        if schedule.entry_blocks.len() != 1 || schedule.exit_blocks.len() != 1 {
            return Err(CrossCheckError::Blocks);
        }
        let program = Program::compile_schedule(schedule)?;
        let entry = &schedule.entry_blocks[0];
        let mut qubit = BTreeMap::new();
        for s in entry.sites.iter().chain(schedule.locations().flat_map(|l| l.operands.iter())) {
            let n = qubit.len();
            qubit.entry(*s).or_insert(n);
        }
        if qubit.len() > MAX_ORACLE_QUBITS {
            return Err(CrossCheckError::TooLarge(qubit.len()));
        }
        let d: Vec<usize> = entry.sites.iter().map(|s| qubit[s]).collect();
        let gate = |k, ops: Vec<usize>| CliffordGate::new(k, ops).expect("well-formed gate");
        let mut circuit = Vec::new();
        let (plus, pairs) = match input {
            Input::PlusZero => ([0, 2], [(0, 1), (2, 3)]),
            Input::ZeroPlus => ([0, 1], [(0, 2), (1, 3)]),
        };
        for (k, &q) in d.iter().enumerate() {
            let kind = if plus.contains(&k) { GateKind::PrepPlus } else { GateKind::Prep0 };
            circuit.push(gate(kind, vec![q]));
        }
        for (c, t) in pairs {
            circuit.push(gate(GateKind::Cnot, vec![d[c], d[t]]));
        }
        let mut gate_of = BTreeMap::new();
        let mut slot_of = BTreeMap::new();
        for layer in &schedule.layers {
            for loc in &layer.locations {
                gate_of.insert(loc.id, circuit.len());
                if loc.kind.is_measurement() {
                    let n = slot_of.len();
                    slot_of.insert(loc.id, n);
                }
                circuit.push(gate(gate_kind(loc.kind), loc.operands.iter().map(|s| qubit[s]).collect()));
            }
        }
        let exit = &schedule.exit_blocks[0];
        let n = qubit.len();
        let grid_n = schedule.grid.num_sites();
        let mut observables = Vec::new();
        let named = [("XXXX", c4::stabilizer_x()), ("ZZZZ", c4::stabilizer_z())];
        let logicals = crate::circuit::LOGICAL_NAMES.iter().map(|&name| (name, exit.operator(name).expect("named")));
        for (name, op) in named.into_iter().chain(logicals) {
            let on_oracle = op.embed(n, &exit.sites.map(|s| qubit[&s])).expect("fits");
            let on_grid = op.embed(grid_n, &exit.sites.map(|s| schedule.grid.index(s))).expect("fits");
            observables.push((name.to_string(), on_oracle, on_grid));
        }
        Ok(Harness { schedule, program, qubit, circuit, gate_of, slot_of, observables })
    }

    fn oracle_faults(&self, faults: &FaultAssignment) -> Vec<OracleFault> {
        let n = self.qubit.len();
        faults
            .faults
            .iter()
            .map(|&(id, f)| {
                let loc = self.schedule.location(id).expect("known id");
                let q = |k: usize| self.qubit[&loc.operands[k]];
                let kind = match f {
                    Fault::Flip => OracleFaultKind::FlipOutcome,
                    Fault::One(p) => OracleFaultKind::Pauli(PauliOp::single(n, q(0), p).expect("in range")),
                    Fault::Two(a, b) => {
                        let mut op = PauliOp::identity(n).expect("in range");
                        op.set(q(0), a).expect("in range");
                        op.set(q(1), b).expect("in range");
                        OracleFaultKind::Pauli(op)
                    }
                };
                OracleFault { after_gate: self.gate_of[&id], kind }
            })
            .collect()
    }

    /// Per branch: detection bits and corrected signs of every observable.
    fn oracle_run(&self, faults: &FaultAssignment) -> Result<Vec<(Vec<bool>, Vec<Option<f64>>)>, CrossCheckError> {
        let branches = oracle_statevector(self.qubit.len(), &self.circuit, &self.oracle_faults(faults))?;
        let mut out = Vec::with_capacity(branches.len());
        for b in &branches {
            let parity = |ids: &[u32]| ids.iter().fold(false, |acc, id| acc ^ b.record[self.slot_of[id]]);
            let detected = self
                .schedule
                .detection_checks
                .iter()
                .map(|c| parity(&c.measurements) ^ (c.expected_parity == 1))
                .collect();
            let (mut cx, mut cz) = (0u128, 0u128);
            for u in self.schedule.frame_updates.iter().filter(|u| parity(&u.condition)) {
                for (site, p) in u.paulis() {
                    let bit = 1u128 << self.schedule.grid.index(site);
                    let (px, pz) = p.bits();
                    cx ^= if px { bit } else { 0 };
                    cz ^= if pz { bit } else { 0 };
                }
            }
            let correction = PauliOp::from_masks(self.schedule.grid.num_sites(), cx, cz).expect("fits");
            let signs = self
                .observables
                .iter()
                .map(|(_, on_oracle, on_grid)| {
                    b.expectation(on_oracle).map(|e| if correction.commutes(on_grid).expect("same width") { e } else { -e })
                })
                .collect();
            out.push((detected, signs));
        }
        Ok(out)
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-9
}

fn check_input(schedule: &Schedule, input: Input, max_faults: usize, report: &mut CrossCheckReport) -> Result<(), CrossCheckError> {
    let h = Harness::new(schedule, input)?;
    report.qubits = h.qubit.len();
    report.max_live_qubits = report.max_live_qubits.max(h.qubit.len());
    let ideal = h.oracle_run(&FaultAssignment::none())?;
    // Reference sign per observable; None when not definite.
    let mut reference: Vec<Option<f64>> = Vec::new();
    for k in 0..h.observables.len() {
        let first = ideal[0].1[k];
        let definite = first.is_some_and(|e| close(e.abs(), 1.0)) && ideal.iter().all(|(_, s)| s[k] == first);
        reference.push(if definite { first } else { None });
    }
    for name in ["XXXX", "ZZZZ"] {
        let k = h.observables.iter().position(|o| o.0 == name).expect("listed");
        if reference[k].is_none() {
            return Err(CrossCheckError::Indefinite(name.into()));
        }
    }
    if reference.iter().filter(|r| r.is_some()).count() < 4 {
        return Err(CrossCheckError::Indefinite("the encoded output".into()));
    }

    let locations = h.program.noisy_locations().to_vec();
    let mut sets: Vec<FaultAssignment> = vec![FaultAssignment::none()];
    if max_faults >= 1 {
        for l in &locations {
            for f in fault_options(l.kind) {
                sets.push(FaultAssignment::single(l.id, f));
            }
        }
    }
    let mut pair_sets = Vec::new();
    if max_faults >= 2 {
        for (i, a) in locations.iter().enumerate() {
            for b in &locations[i + 1..] {
                for fa in fault_options(a.kind) {
                    for fb in fault_options(b.kind) {
                        pair_sets.push(FaultAssignment::pair(a.id, fa, b.id, fb));
                    }
                }
            }
        }
    }
    for faults in sets.iter().chain(&pair_sets) {
        let trace = h.program.trace(faults)?;
        let predicted: Vec<bool> = (0..h.schedule.detection_checks.len()).map(|k| trace.effect >> k & 1 == 1).collect();
        let frame = PauliOp::from_masks(h.schedule.grid.num_sites(), trace.x, trace.z).expect("fits");
        let branches = h.oracle_run(faults)?;
        report.fault_sets += 1;
        report.branches += branches.len() as u64;
        for (detected, signs) in &branches {
            let mut bad = Vec::new();
            if *detected != predicted {
                bad.push(format!("detections {detected:?} vs {predicted:?}"));
            }
            for (k, (name, _, on_grid)) in h.observables.iter().enumerate() {
                let Some(r) = reference[k] else { continue };
                let flip = !frame.commutes(on_grid).expect("same width");
                let want = if flip { -r } else { r };
                if !signs[k].is_some_and(|s| close(s, want)) {
                    bad.push(format!("{name}: oracle {:?}, frame {want}", signs[k]));
                }
            }
            if !bad.is_empty() {
                report.mismatches.push(format!("{input:?} {:?}: {}", faults.faults, bad.join("; ")));
                break;
            }
        }
    }
    Ok(())
}

/// Exhaustive comparison over every fault set of size at most `max_faults`.
pub fn oracle_crosscheck(schedule: &Schedule, max_faults: usize) -> Result<CrossCheckReport, CrossCheckError> {
    let mut report = CrossCheckReport { schedule: schedule.name.clone(), ..Default::default() };
    for input in [Input::PlusZero, Input::ZeroPlus] {
        check_input(schedule, input, max_faults, &mut report)?;
    }
    Ok(report)
}
