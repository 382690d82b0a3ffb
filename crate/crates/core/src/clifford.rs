//! Clifford gate descriptions and Heisenberg conjugation of Pauli operators.

use thiserror::Error;

use crate::pauli::{PauliError, PauliOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Cnot,
    Swap,
    H,
    S,
    Prep0,
    PrepPlus,
    MeasX,
    MeasZ,
    Idle,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, GateKind::Cnot | GateKind::Swap | GateKind::H | GateKind::S | GateKind::Idle)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("{kind:?} takes {expected} operands, got {got}")]
    Arity { kind: GateKind, expected: usize, got: usize },
    #[error("{0:?} repeats operand {1}")]
    RepeatedOperand(GateKind, usize),
    #[error("{0:?} is not unitary")]
    NotUnitary(GateKind),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// A gate with ordered operands; CNOT operands are (control, target).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordGate {
    kind: GateKind,
    operands: Vec<usize>,
}

impl CliffordGate {
    pub fn new(kind: GateKind, operands: Vec<usize>) -> Result<CliffordGate, GateError> {
        if operands.len() != kind.arity() {
            return Err(GateError::Arity { kind, expected: kind.arity(), got: operands.len() });
        }
        if operands.len() == 2 && operands[0] == operands[1] {
            return Err(GateError::RepeatedOperand(kind, operands[0]));
        }
        Ok(CliffordGate { kind, operands })
    }

    pub fn cnot(control: usize, target: usize) -> CliffordGate {
        CliffordGate::new(GateKind::Cnot, vec![control, target]).expect("distinct CNOT operands")
    }

    pub fn swap(a: usize, b: usize) -> CliffordGate {
        CliffordGate::new(GateKind::Swap, vec![a, b]).expect("distinct SWAP operands")
    }

    pub fn one(kind: GateKind, q: usize) -> CliffordGate {
        CliffordGate::new(kind, vec![q]).expect("single-qubit kind")
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn operands(&self) -> &[usize] {
        &self.operands
    }
}

fn bit(m: u128, q: usize) -> u128 {
    (m >> q) & 1
}

fn check_range(gate: &CliffordGate, p: &PauliOp) -> Result<(), GateError> {
    for &q in gate.operands() {
        if q >= p.num_qubits() {
            return Err(PauliError::QubitOutOfRange { qubit: q, n: p.num_qubits() }.into());
        }
    }
    Ok(())
}

/// Returns G p G^dagger up to phase.
pub fn conjugate(gate: &CliffordGate, p: &PauliOp) -> Result<PauliOp, GateError> {
    if !gate.kind.is_unitary() {
        return Err(GateError::NotUnitary(gate.kind));
    }
    check_range(gate, p)?;
    let (mut x, mut z) = (p.x_mask(), p.z_mask());
    let ops = gate.operands();
    match gate.kind {
        GateKind::Cnot => {
            let (c, t) = (ops[0], ops[1]);
            x ^= bit(x, c) << t;
            z ^= bit(z, t) << c;
        }
        GateKind::Swap => {
            let (a, b) = (ops[0], ops[1]);
            let dx = bit(x, a) ^ bit(x, b);
            let dz = bit(z, a) ^ bit(z, b);
            x ^= (dx << a) | (dx << b);
            z ^= (dz << a) | (dz << b);
        }
        GateKind::H => {
            let q = ops[0];
            let d = bit(x, q) ^ bit(z, q);
            x ^= d << q;
            z ^= d << q;
        }
        GateKind::S => {
            let q = ops[0];
            z ^= bit(x, q) << q;
        }
        GateKind::Idle => {}
        _ => unreachable!("non-unitary kinds rejected above"),
    }
    Ok(PauliOp::from_masks(p.num_qubits(), x, z)?)
}

/// Returns G^dagger p G up to phase.
pub fn conjugate_inverse(gate: &CliffordGate, p: &PauliOp) -> Result<PauliOp, GateError> {
    if !gate.kind.is_unitary() {
        return Err(GateError::NotUnitary(gate.kind));
    }
    check_range(gate, p)?;
    match gate.kind {
        // S^dagger X S = -Y and S^dagger Y S = X; unsigned this is z ^= x again.
        GateKind::S => {
            let q = gate.operands()[0];
            let z = p.z_mask() ^ (bit(p.x_mask(), q) << q);
            Ok(PauliOp::from_masks(p.num_qubits(), p.x_mask(), z)?)
        }
        // CNOT, SWAP, H and the identity are self-inverse.
        _ => conjugate(gate, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn propagation_rules() {
        let cx = CliffordGate::cnot(0, 1);
        assert_eq!(conjugate(&cx, &p("XI")).unwrap(), p("XX"));
        assert_eq!(conjugate(&cx, &p("IZ")).unwrap(), p("ZZ"));
        assert_eq!(conjugate(&cx, &p("IX")).unwrap(), p("IX"));
        assert_eq!(conjugate(&cx, &p("ZI")).unwrap(), p("ZI"));
        assert_eq!(conjugate(&CliffordGate::one(GateKind::H, 0), &p("X")).unwrap(), p("Z"));
        assert_eq!(conjugate(&CliffordGate::one(GateKind::S, 0), &p("X")).unwrap(), p("Y"));
        assert_eq!(conjugate(&CliffordGate::swap(0, 1), &p("XI")).unwrap(), p("IX"));
        assert_eq!(conjugate(&CliffordGate::swap(0, 2), &p("XYZ")).unwrap(), p("ZYX"));
    }

    #[test]
    fn non_unitary_kinds_rejected() {
        for kind in [GateKind::Prep0, GateKind::PrepPlus, GateKind::MeasX, GateKind::MeasZ] {
            let g = CliffordGate::one(kind, 0);
            assert_eq!(conjugate(&g, &p("X")), Err(GateError::NotUnitary(kind)));
        }
    }

    #[test]
    fn arity_enforced() {
        assert!(CliffordGate::new(GateKind::Cnot, vec![0]).is_err());
        assert!(CliffordGate::new(GateKind::H, vec![0, 1]).is_err());
        assert!(CliffordGate::new(GateKind::Swap, vec![2, 2]).is_err());
    }

    #[test]
    fn operand_range_checked() {
        assert!(conjugate(&CliffordGate::cnot(0, 3), &p("XX")).is_err());
    }
}
