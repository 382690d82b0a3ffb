//! Signed tableau execution of schedules, independent of the Pauli-frame
//! engine, used as the logical-action reference.
#![allow(dead_code)]

use std::collections::HashMap;

use knill2d::circuit::{LocationType, LogicalBlock, Schedule};
use knill2d::pauli::{c4, Pauli, PauliOp};
use knill2d::tableau::Tableau;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Encoded input of one block: which logical pair is fixed, and whether a
/// logical Pauli flips its sign first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Input {
    /// |+>_L |0>_S, sign of X^L negated when `flip`.
    PlusZero { flip: bool },
    /// |0>_L |+>_S, sign of Z^L negated when `flip`.
    ZeroPlus { flip: bool },
}

pub struct Run {
    pub tab: Tableau,
    pub n: usize,
    pub index: Box<dyn Fn(knill2d::GridCoord) -> usize>,
    pub detected: bool,
}

impl Run {
    /// Operator `name` ("XXXX", "ZZZZ" or a logical label) on `block`.
    pub fn op(&self, block: &LogicalBlock, name: &str) -> PauliOp {
        let local = match name {
            "XXXX" => c4::stabilizer_x(),
            "ZZZZ" => c4::stabilizer_z(),
            other => block.operator(other).expect("known label"),
        };
        let pos: Vec<usize> = block.sites.iter().map(|&s| (self.index)(s)).collect();
        local.embed(self.n, &pos).expect("fits")
    }

    pub fn product(&self, parts: &[(&LogicalBlock, &str)]) -> PauliOp {
        parts.iter().fold(PauliOp::identity(self.n).expect("fits"), |acc, (b, name)| acc.mul(&self.op(b, name)).expect("same width"))
    }

    pub fn sign(&mut self, p: &PauliOp) -> Option<bool> {
        self.tab.stabilizer_sign(p)
    }
}

fn encode(tab: &mut Tableau, q: [usize; 4], input: Input) {
    let (plus, pairs) = match input {
        Input::PlusZero { .. } => ([0, 2], [(0, 1), (2, 3)]),
        Input::ZeroPlus { .. } => ([0, 1], [(0, 2), (1, 3)]),
    };
    for (k, &site) in q.iter().enumerate() {
        tab.prep_zero(site);
        if plus.contains(&k) {
            tab.h(site);
        }
    }
    for (c, t) in pairs {
        tab.cnot(q[c], q[t]);
    }
    match input {
        // Z^L = ZIZI anticommutes with X^L = XXII.
        Input::PlusZero { flip: true } => {
            tab.z(q[0]);
            tab.z(q[2]);
        }
        Input::ZeroPlus { flip: true } => {
            tab.x(q[0]);
            tab.x(q[1]);
        }
        _ => {}
    }
}

/// Runs `s` fault-free with encoded inputs on its entry blocks, applying
/// frame updates from the sampled outcomes.
pub fn run(s: &Schedule, inputs: &[Input], seed: u64) -> Run {
    let grid = s.grid.clone();
    let n = grid.num_sites();
    let mut tab = Tableau::new(n);
    let g2 = grid.clone();
    let index = move |c| g2.index(c);
    assert_eq!(inputs.len(), s.entry_blocks.len());
    for (b, &input) in s.entry_blocks.iter().zip(inputs) {
        encode(&mut tab, b.sites.map(&index), input);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut record: HashMap<u32, bool> = HashMap::new();
    for layer in &s.layers {
        for loc in &layer.locations {
            let q: Vec<usize> = loc.operands.iter().map(|&c| index(c)).collect();
            match loc.kind {
                LocationType::PrepPlus => tab.prep_plus(q[0]),
                LocationType::PrepZero => tab.prep_zero(q[0]),
                LocationType::MeasX => {
                    record.insert(loc.id, tab.measure_x(q[0], rng.random()));
                }
                LocationType::MeasZ => {
                    record.insert(loc.id, tab.measure_z(q[0], rng.random()));
                }
                LocationType::Swap => tab.swap(q[0], q[1]),
                LocationType::Cnot => tab.cnot(q[0], q[1]),
                LocationType::Idle => {}
            }
        }
        for u in s.frame_updates.iter().filter(|u| u.time == layer.time) {
            if u.condition.iter().fold(false, |acc, id| acc ^ record[id]) {
                for (site, p) in u.paulis() {
                    match p {
                        Pauli::X => tab.x(index(site)),
                        Pauli::Z => tab.z(index(site)),
                        Pauli::Y => {
                            tab.x(index(site));
                            tab.z(index(site));
                        }
                        Pauli::I => {}
                    }
                }
            }
        }
    }
    let detected = s
        .detection_checks
        .iter()
        .any(|c| c.measurements.iter().fold(false, |acc, id| acc ^ record[id]) != (c.expected_parity == 1));
    Run { tab, n, index: Box::new(index), detected }
}
