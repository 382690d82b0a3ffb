//! Dense state-vector reference simulator for small Clifford circuits.
//!
//! Only used to certify the Pauli-frame engine. Measured qubits are removed
//! from the state so a 12-qubit circuit stays cheap; preparing a qubit again
//! re-inserts it.

use num_complex::Complex64;
use thiserror::Error;

use crate::clifford::{CliffordGate, GateKind};
use crate::pauli::{Pauli, PauliOp};

pub const MAX_ORACLE_QUBITS: usize = 12;

const PRUNE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{0} qubits exceeds the oracle limit of {MAX_ORACLE_QUBITS}")]
    TooManyQubits(usize),
    #[error("fault index {index} outside a circuit of {len} gates")]
    BadFaultIndex { index: usize, len: usize },
    #[error("outcome flip attached to gate {0}, which is not a measurement")]
    FlipOnNonMeasurement(usize),
    #[error("gate {index} acts on qubit {qubit}, which is out of range or not live")]
    DeadQubit { index: usize, qubit: usize },
    #[error("fault Pauli has {got} qubits, circuit has {expected}")]
    FaultWidth { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleFaultKind {
    Pauli(PauliOp),
    FlipOutcome,
}

/// Fault applied immediately after gate `after_gate`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleFault {
    pub after_gate: usize,
    pub kind: OracleFaultKind,
}

#[derive(Debug, Clone)]
struct DenseState {
    // bit position -> qubit id
    slots: Vec<usize>,
    amps: Vec<Complex64>,
}

impl DenseState {
    fn vacuum(n: usize) -> DenseState {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        DenseState { slots: (0..n).collect(), amps }
    }

    fn pos(&self, qubit: usize) -> Option<usize> {
        self.slots.iter().position(|&q| q == qubit)
    }

    fn apply_x(&mut self, k: usize) {
        let m = 1usize << k;
        for i in 0..self.amps.len() {
            if i & m == 0 {
                self.amps.swap(i, i | m);
            }
        }
    }

    fn apply_z(&mut self, k: usize) {
        let m = 1usize << k;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & m != 0 {
                *a = -*a;
            }
        }
    }

    fn apply_h(&mut self, k: usize) {
        let m = 1usize << k;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & m == 0 {
                let (a, b) = (self.amps[i], self.amps[i | m]);
                self.amps[i] = (a + b) * s;
                self.amps[i | m] = (a - b) * s;
            }
        }
    }

    fn apply_s(&mut self, k: usize) {
        let m = 1usize << k;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & m != 0 {
                *a *= Complex64::new(0.0, 1.0);
            }
        }
    }

    fn apply_cnot(&mut self, c: usize, t: usize) {
        let (mc, mt) = (1usize << c, 1usize << t);
        for i in 0..self.amps.len() {
            if i & mc != 0 && i & mt == 0 {
                self.amps.swap(i, i | mt);
            }
        }
    }

    fn apply_swap(&mut self, a: usize, b: usize) {
        let (ma, mb) = (1usize << a, 1usize << b);
        for i in 0..self.amps.len() {
            if i & ma != 0 && i & mb == 0 {
                self.amps.swap(i, (i ^ ma) | mb);
            }
        }
    }

    /// Projects bit position `k` onto `outcome` and drops it from the state.
    fn collapse(&self, k: usize, outcome: bool) -> (f64, DenseState) {
        let m = 1usize << k;
        let low = m - 1;
        let mut amps = Vec::with_capacity(self.amps.len() / 2);
        for j in 0..self.amps.len() / 2 {
            let i = (j & low) | ((j & !low) << 1) | if outcome { m } else { 0 };
            amps.push(self.amps[i]);
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm > PRUNE {
            let s = 1.0 / norm.sqrt();
            for a in &mut amps {
                *a *= s;
            }
        }
        let mut slots = self.slots.clone();
        slots.remove(k);
        (norm, DenseState { slots, amps })
    }

    fn insert(&mut self, qubit: usize, plus: bool) {
        let half = self.amps.len();
        if plus {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for a in &mut self.amps {
                *a *= s;
            }
            self.amps.extend_from_within(0..half);
        } else {
            self.amps.resize(2 * half, Complex64::new(0.0, 0.0));
        }
        self.slots.push(qubit);
    }

    fn apply_pauli(&mut self, p: &PauliOp) {
        for q in 0..p.num_qubits() {
            let Some(k) = self.pos(q) else { continue };
            match p.get(q) {
                Pauli::I => {}
                Pauli::X => self.apply_x(k),
                Pauli::Z => self.apply_z(k),
                Pauli::Y => {
                    self.apply_z(k);
                    self.apply_x(k);
                }
            }
        }
    }
}

/// One measurement history with its probability and the post-measurement state.
#[derive(Debug, Clone)]
pub struct OracleBranch {
    pub record: Vec<bool>,
    pub probability: f64,
    state: DenseState,
}

impl OracleBranch {
    /// Qubits still present in the state, in ascending order.
    pub fn live_qubits(&self) -> Vec<usize> {
        let mut v = self.state.slots.clone();
        v.sort_unstable();
        v
    }

    /// Real expectation value of an unsigned Pauli, or `None` if it touches
    /// a qubit that is no longer live.
    pub fn expectation(&self, p: &PauliOp) -> Option<f64> {
        let mut xm = 0usize;
        let mut zm = 0usize;
        let mut ys = 0u32;
        for q in 0..p.num_qubits() {
            let pq = p.get(q);
            if pq == Pauli::I {
                continue;
            }
            let k = self.state.pos(q)?;
            let (x, z) = pq.bits();
            if x {
                xm |= 1 << k;
            }
            if z {
                zm |= 1 << k;
            }
            if x && z {
                ys += 1;
            }
        }
        let phase = match ys % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, a) in self.state.amps.iter().enumerate() {
            let sign = if (i & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            acc += self.state.amps[i ^ xm].conj() * *a * sign;
        }
        Some((acc * phase).re)
    }

    /// True when the state is a +1 eigenstate of `p`.
    pub fn is_stabilized_by(&self, p: &PauliOp) -> bool {
        self.expectation(p).is_some_and(|e| (e - 1.0).abs() < 1e-9)
    }
}

/// Exact simulation of `circuit` on `n` qubits starting from |0...0>.
///
/// Measurement outcomes are enumerated; branches below 1e-12 probability are
/// dropped. Record bits appear in measurement order.
pub fn oracle_statevector(
    n: usize,
    circuit: &[CliffordGate],
    faults: &[OracleFault],
) -> Result<Vec<OracleBranch>, OracleError> {
    if n > MAX_ORACLE_QUBITS {
        return Err(OracleError::TooManyQubits(n));
    }
    for f in faults {
        if f.after_gate >= circuit.len() {
            return Err(OracleError::BadFaultIndex { index: f.after_gate, len: circuit.len() });
        }
        match &f.kind {
            OracleFaultKind::FlipOutcome => {
                let k = circuit[f.after_gate].kind();
                if !matches!(k, GateKind::MeasX | GateKind::MeasZ) {
                    return Err(OracleError::FlipOnNonMeasurement(f.after_gate));
                }
            }
            OracleFaultKind::Pauli(p) if p.num_qubits() != n => {
                return Err(OracleError::FaultWidth { expected: n, got: p.num_qubits() });
            }
            OracleFaultKind::Pauli(_) => {}
        }
    }

    let mut branches = vec![OracleBranch { record: Vec::new(), probability: 1.0, state: DenseState::vacuum(n) }];
    for (index, gate) in circuit.iter().enumerate() {
        for &q in gate.operands() {
            if q >= n {
                return Err(OracleError::DeadQubit { index, qubit: q });
            }
        }
        let flip = faults
            .iter()
            .filter(|f| f.after_gate == index && f.kind == OracleFaultKind::FlipOutcome)
            .count()
            % 2
            == 1;
        let mut next = Vec::with_capacity(branches.len());
        for mut b in branches {
            let pos = |b: &OracleBranch, q: usize| b.state.pos(q).ok_or(OracleError::DeadQubit { index, qubit: q });
            match gate.kind() {
                GateKind::Cnot => {
                    let (c, t) = (pos(&b, gate.operands()[0])?, pos(&b, gate.operands()[1])?);
                    b.state.apply_cnot(c, t);
                }
                GateKind::Swap => {
                    let (x, y) = (pos(&b, gate.operands()[0])?, pos(&b, gate.operands()[1])?);
                    b.state.apply_swap(x, y);
                }
                GateKind::H => {
                    let k = pos(&b, gate.operands()[0])?;
                    b.state.apply_h(k);
                }
                GateKind::S => {
                    let k = pos(&b, gate.operands()[0])?;
                    b.state.apply_s(k);
                }
                GateKind::Idle => {}
                GateKind::Prep0 | GateKind::PrepPlus => {
                    let q = gate.operands()[0];
                    let plus = gate.kind() == GateKind::PrepPlus;
                    match b.state.pos(q) {
                        None => {
                            b.state.insert(q, plus);
                        }
                        Some(k) => {
                            // Reset: discard the old qubit in every outcome.
                            for outcome in [false, true] {
                                let (w, mut s) = b.state.collapse(k, outcome);
                                if w > PRUNE {
                                    s.insert(q, plus);
                                    next.push(OracleBranch {
                                        record: b.record.clone(),
                                        probability: b.probability * w,
                                        state: s,
                                    });
                                }
                            }
                            continue;
                        }
                    }
                }
                GateKind::MeasX | GateKind::MeasZ => {
                    let k = pos(&b, gate.operands()[0])?;
                    if gate.kind() == GateKind::MeasX {
                        b.state.apply_h(k);
                    }
                    for outcome in [false, true] {
                        let (w, s) = b.state.collapse(k, outcome);
                        if w > PRUNE {
                            let mut record = b.record.clone();
                            record.push(outcome ^ flip);
                            next.push(OracleBranch { record, probability: b.probability * w, state: s });
                        }
                    }
                    continue;
                }
            }
            next.push(b);
        }
        branches = next;
        for f in faults.iter().filter(|f| f.after_gate == index) {
            if let OracleFaultKind::Pauli(p) = &f.kind {
                for b in &mut branches {
                    b.state.apply_pauli(p);
                }
            }
        }
    }
    Ok(branches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::c4;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    /// Two-CNOT preparation of |0>_L|+>_S.
    fn prep_zero_bar() -> Vec<CliffordGate> {
        vec![
            CliffordGate::one(GateKind::PrepPlus, 0),
            CliffordGate::one(GateKind::PrepPlus, 1),
            CliffordGate::one(GateKind::Prep0, 2),
            CliffordGate::one(GateKind::Prep0, 3),
            CliffordGate::cnot(0, 2),
            CliffordGate::cnot(1, 3),
        ]
    }

    #[test]
    fn zero_bar_preparation_stabilizers() {
        let out = oracle_statevector(4, &prep_zero_bar(), &[]).unwrap();
        assert_eq!(out.len(), 1);
        let b = &out[0];
        for s in [c4::stabilizer_x(), c4::stabilizer_z(), c4::logical_z(), c4::spectator_x()] {
            assert!(b.is_stabilized_by(&s), "{s}");
        }
        assert!(b.expectation(&c4::logical_x()).unwrap().abs() < 1e-9);
    }

    #[test]
    fn empty_circuit_is_deterministic() {
        let out = oracle_statevector(0, &[], &[]).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].record.is_empty());
        assert!((out[0].probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bit_flip_after_prep() {
        let circuit = vec![CliffordGate::one(GateKind::Prep0, 0), CliffordGate::one(GateKind::MeasZ, 0)];
        let faults = vec![OracleFault { after_gate: 0, kind: OracleFaultKind::Pauli(p("X")) }];
        let out = oracle_statevector(1, &circuit, &faults).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].record, vec![true]);
        assert!((out[0].probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn x_measurement_of_plus_branches_not() {
        let circuit = vec![CliffordGate::one(GateKind::PrepPlus, 0), CliffordGate::one(GateKind::MeasX, 0)];
        let out = oracle_statevector(1, &circuit, &[]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].record, vec![false]);
        let circuit = vec![CliffordGate::one(GateKind::PrepPlus, 0), CliffordGate::one(GateKind::MeasZ, 0)];
        let out = oracle_statevector(1, &circuit, &[]).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|b| (b.probability - 0.5).abs() < 1e-12));
    }

    #[test]
    fn bell_pair_correlations() {
        let circuit = vec![
            CliffordGate::one(GateKind::PrepPlus, 0),
            CliffordGate::one(GateKind::Prep0, 1),
            CliffordGate::cnot(0, 1),
        ];
        let out = oracle_statevector(2, &circuit, &[]).unwrap();
        assert!(out[0].is_stabilized_by(&p("XX")));
        assert!(out[0].is_stabilized_by(&p("ZZ")));
        assert!((out[0].expectation(&p("YY")).unwrap() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn measured_qubits_leave_the_state() {
        let circuit = vec![CliffordGate::one(GateKind::PrepPlus, 0), CliffordGate::one(GateKind::MeasX, 0)];
        let out = oracle_statevector(2, &circuit, &[]).unwrap();
        assert_eq!(out[0].live_qubits(), vec![1]);
        assert!(out[0].expectation(&p("XI")).is_none());
        let bad = vec![CliffordGate::one(GateKind::MeasZ, 0), CliffordGate::one(GateKind::H, 0)];
        assert!(matches!(oracle_statevector(1, &bad, &[]), Err(OracleError::DeadQubit { .. })));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(oracle_statevector(13, &[], &[]), Err(OracleError::TooManyQubits(13))));
        let circuit = vec![CliffordGate::one(GateKind::H, 0)];
        let f = OracleFault { after_gate: 3, kind: OracleFaultKind::Pauli(p("X")) };
        assert!(matches!(oracle_statevector(1, &circuit, &[f]), Err(OracleError::BadFaultIndex { .. })));
        let f = OracleFault { after_gate: 0, kind: OracleFaultKind::FlipOutcome };
        assert!(matches!(oracle_statevector(1, &circuit, &[f]), Err(OracleError::FlipOnNonMeasurement(0))));
    }
}
