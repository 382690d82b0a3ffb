use serde::{Deserialize, Serialize};

use crate::circuit::LocationType;
use crate::pauli::Pauli;

/// Fault content at one location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fault {
    /// Pauli after a preparation or on an idle qubit.
    One(Pauli),
    /// Pauli on (first operand, second operand) after a CNOT or SWAP; not
    /// both identity.
    Two(Pauli, Pauli),
    /// Classical flip of a measurement outcome.
    Flip,
}

impl Fault {
    pub fn fits(&self, kind: LocationType) -> bool {
        match self {
            Fault::One(p) => kind.arity() == 1 && !kind.is_measurement() && *p != Pauli::I,
            Fault::Two(a, b) => kind.arity() == 2 && (*a, *b) != (Pauli::I, Pauli::I),
            Fault::Flip => kind.is_measurement(),
        }
    }
}

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Every fault the adversary may place at a location of this type:
/// 3 single-qubit Paulis, 15 two-qubit Paulis, or one outcome flip.
pub fn fault_options(kind: LocationType) -> Vec<Fault> {
    if kind.is_measurement() {
        return vec![Fault::Flip];
    }
    if kind.arity() == 1 {
        return Pauli::NON_IDENTITY.iter().map(|&p| Fault::One(p)).collect();
    }
    let mut v = Vec::with_capacity(15);
    for a in PAULIS {
        for b in PAULIS {
            if (a, b) != (Pauli::I, Pauli::I) {
                v.push(Fault::Two(a, b));
            }
        }
    }
    v
}

/// At most one fault per location.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultAssignment {
    pub faults: Vec<(u32, Fault)>,
}

impl FaultAssignment {
    pub fn none() -> FaultAssignment {
        FaultAssignment::default()
    }

    pub fn single(id: u32, f: Fault) -> FaultAssignment {
        FaultAssignment { faults: vec![(id, f)] }
    }

    pub fn pair(i: u32, fi: Fault, j: u32, fj: Fault) -> FaultAssignment {
        FaultAssignment { faults: vec![(i, fi), (j, fj)] }
    }
}
