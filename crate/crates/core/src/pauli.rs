//! Phase-free Pauli operators on up to 128 qubits.
//!
//! Qubit `q` carries X iff bit `q` of the x mask is set, Z iff bit `q` of the
//! z mask is set, and Y iff both are set. Signs are never tracked.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard capacity of a [`PauliOp`]; a two-tile 5x5 layout uses 50.
pub const MAX_QUBITS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("length mismatch: {left} vs {right} qubits")]
    LengthMismatch { left: usize, right: usize },
    #[error("{0} qubits exceeds the capacity of {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("invalid Pauli character {0:?}")]
    BadChar(char),
}

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Pauli, PauliError> {
        match c {
            'I' | '_' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(PauliError::BadChar(other)),
        }
    }
}

/// An unsigned n-qubit Pauli operator stored as two bit masks.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOp {
    n: u32,
    x: u128,
    z: u128,
}

fn width_mask(n: usize) -> u128 {
    if n == MAX_QUBITS {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl PauliOp {
    pub fn identity(n: usize) -> Result<PauliOp, PauliError> {
        if n > MAX_QUBITS {
            return Err(PauliError::TooManyQubits(n));
        }
        Ok(PauliOp { n: n as u32, x: 0, z: 0 })
    }

    /// Builds an operator from raw masks; bits at or above `n` must be clear.
    pub fn from_masks(n: usize, x: u128, z: u128) -> Result<PauliOp, PauliError> {
        if n > MAX_QUBITS {
            return Err(PauliError::TooManyQubits(n));
        }
        let outside = !width_mask(n);
        if (x | z) & outside != 0 {
            let qubit = 127 - ((x | z) & outside).leading_zeros() as usize;
            return Err(PauliError::QubitOutOfRange { qubit, n });
        }
        Ok(PauliOp { n: n as u32, x, z })
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Result<PauliOp, PauliError> {
        let mut op = PauliOp::identity(n)?;
        op.set(qubit, p)?;
        Ok(op)
    }

    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u128 {
        self.x
    }

    pub fn z_mask(&self) -> u128 {
        self.z
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        if qubit >= self.num_qubits() {
            return Pauli::I;
        }
        Pauli::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, p: Pauli) -> Result<(), PauliError> {
        if qubit >= self.num_qubits() {
            return Err(PauliError::QubitOutOfRange { qubit, n: self.num_qubits() });
        }
        let bit = 1u128 << qubit;
        let (x, z) = p.bits();
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Product up to phase: componentwise XOR of the masks.
    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp, PauliError> {
        self.check_len(other)?;
        Ok(PauliOp { n: self.n, x: self.x ^ other.x, z: self.z ^ other.z })
    }

    /// Symplectic inner product is even.
    pub fn commutes(&self, other: &PauliOp) -> Result<bool, PauliError> {
        self.check_len(other)?;
        Ok(((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0)
    }

    /// Operator on `n` qubits placing `self`'s qubit `k` at `positions[k]`.
    pub fn embed(&self, n: usize, positions: &[usize]) -> Result<PauliOp, PauliError> {
        if positions.len() != self.num_qubits() {
            return Err(PauliError::LengthMismatch { left: positions.len(), right: self.num_qubits() });
        }
        let mut out = PauliOp::identity(n)?;
        for (k, &pos) in positions.iter().enumerate() {
            let p = self.get(k);
            if p != Pauli::I {
                out.set(pos, p)?;
            }
        }
        Ok(out)
    }

    fn check_len(&self, other: &PauliOp) -> Result<(), PauliError> {
        if self.n != other.n {
            return Err(PauliError::LengthMismatch { left: self.num_qubits(), right: other.num_qubits() });
        }
        Ok(())
    }
}

impl FromStr for PauliOp {
    type Err = PauliError;

    /// Leftmost character is qubit 0.
    fn from_str(s: &str) -> Result<PauliOp, PauliError> {
        let chars: Vec<char> = s.chars().collect();
        let mut op = PauliOp::identity(chars.len())?;
        for (q, c) in chars.into_iter().enumerate() {
            op.set(q, Pauli::from_char(c)?)?;
        }
        Ok(op)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

/// C4 operators on the block order d1..d4.
pub mod c4 {
    use super::PauliOp;

    fn op(s: &str) -> PauliOp {
        s.parse().expect("static Pauli string")
    }

    pub fn stabilizer_x() -> PauliOp {
        op("XXXX")
    }

    pub fn stabilizer_z() -> PauliOp {
        op("ZZZZ")
    }

    pub fn logical_x() -> PauliOp {
        op("XXII")
    }

    pub fn logical_z() -> PauliOp {
        op("ZIZI")
    }

    pub fn spectator_x() -> PauliOp {
        op("IXIX")
    }

    pub fn spectator_z() -> PauliOp {
        op("IIZZ")
    }

    pub fn stabilizers() -> [PauliOp; 2] {
        [stabilizer_x(), stabilizer_z()]
    }

    pub fn logicals() -> [PauliOp; 4] {
        [logical_x(), logical_z(), spectator_x(), spectator_z()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(p("X").mul(&p("Z")).unwrap(), p("Y"));
        assert_eq!(p("XXII").mul(&p("ZIZI")).unwrap(), p("YXZI"));
        assert!(p("XYZ").mul(&p("XYZ")).unwrap().is_identity());
    }

    #[test]
    fn commutation() {
        assert!(p("X").commutes(&p("X")).unwrap());
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XXXX").commutes(&p("ZZZZ")).unwrap());
    }

    #[test]
    fn c4_logicals_commute_with_stabilizers() {
        for s in c4::stabilizers() {
            for l in c4::logicals() {
                assert!(s.commutes(&l).unwrap(), "{s} vs {l}");
            }
        }
        assert!(!c4::logical_x().commutes(&c4::logical_z()).unwrap());
        assert!(!c4::spectator_x().commutes(&c4::spectator_z()).unwrap());
        assert!(c4::logical_x().commutes(&c4::spectator_z()).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert_eq!(
            p("XX").mul(&p("X")),
            Err(PauliError::LengthMismatch { left: 2, right: 1 })
        );
        assert!(p("XX").commutes(&p("XXX")).is_err());
    }

    #[test]
    fn masks_are_bounded() {
        assert!(PauliOp::from_masks(3, 0b1000, 0).is_err());
        assert!(PauliOp::identity(129).is_err());
        let full = PauliOp::from_masks(128, u128::MAX, 0).unwrap();
        assert_eq!(full.weight(), 128);
    }

    #[test]
    fn embed_places_qubits() {
        let op = p("XZ").embed(5, &[3, 1]).unwrap();
        assert_eq!(op.to_string(), "IZIXI");
    }
}
