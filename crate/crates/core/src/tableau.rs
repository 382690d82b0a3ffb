//! Signed stabilizer tableau (Aaronson-Gottesman) for up to 128 qubits.
//!
//! A second reference engine: unlike the dense oracle it scales to the full
//! two-tile layouts, and unlike the Pauli frame it tracks signs.

use crate::pauli::{PauliOp, MAX_QUBITS};

#[derive(Debug, Clone)]
pub struct Tableau {
    n: usize,
    // rows 0..n destabilizers, n..2n stabilizers, 2n scratch
    xs: Vec<u128>,
    zs: Vec<u128>,
    r: Vec<bool>,
}

fn g(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    let (x2, z2) = (x2 as i32, z2 as i32);
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 - x2,
        (true, false) => z2 * (2 * x2 - 1),
        (false, true) => x2 * (1 - 2 * z2),
    }
}

impl Tableau {
    /// All qubits in |0>.
    pub fn new(n: usize) -> Tableau {
        assert!(n <= MAX_QUBITS, "tableau capacity exceeded");
        let mut xs = vec![0u128; 2 * n + 1];
        let mut zs = vec![0u128; 2 * n + 1];
        for i in 0..n {
            xs[i] = 1 << i;
            zs[n + i] = 1 << i;
        }
        Tableau { n, xs, zs, r: vec![false; 2 * n + 1] }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    fn bit(m: u128, q: usize) -> bool {
        (m >> q) & 1 == 1
    }

    fn rowsum(&mut self, h: usize, i: usize) {
        let mut sum = 2 * (self.r[h] as i32) + 2 * (self.r[i] as i32);
        for q in 0..self.n {
            sum += g(
                Self::bit(self.xs[i], q),
                Self::bit(self.zs[i], q),
                Self::bit(self.xs[h], q),
                Self::bit(self.zs[h], q),
            );
        }
        self.r[h] = sum.rem_euclid(4) == 2;
        self.xs[h] ^= self.xs[i];
        self.zs[h] ^= self.zs[i];
    }

    pub fn cnot(&mut self, a: usize, b: usize) {
        for i in 0..2 * self.n {
            let (xa, zb) = (Self::bit(self.xs[i], a), Self::bit(self.zs[i], b));
            let (xb, za) = (Self::bit(self.xs[i], b), Self::bit(self.zs[i], a));
            self.r[i] ^= xa && zb && (xb == za);
            if xa {
                self.xs[i] ^= 1 << b;
            }
            if zb {
                self.zs[i] ^= 1 << a;
            }
        }
    }

    pub fn h(&mut self, a: usize) {
        for i in 0..2 * self.n {
            let (x, z) = (Self::bit(self.xs[i], a), Self::bit(self.zs[i], a));
            self.r[i] ^= x && z;
            if x != z {
                self.xs[i] ^= 1 << a;
                self.zs[i] ^= 1 << a;
            }
        }
    }

    pub fn s(&mut self, a: usize) {
        for i in 0..2 * self.n {
            let (x, z) = (Self::bit(self.xs[i], a), Self::bit(self.zs[i], a));
            self.r[i] ^= x && z;
            if x {
                self.zs[i] ^= 1 << a;
            }
        }
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.cnot(a, b);
        self.cnot(b, a);
        self.cnot(a, b);
    }

    pub fn x(&mut self, a: usize) {
        for i in 0..2 * self.n {
            self.r[i] ^= Self::bit(self.zs[i], a);
        }
    }

    pub fn z(&mut self, a: usize) {
        for i in 0..2 * self.n {
            self.r[i] ^= Self::bit(self.xs[i], a);
        }
    }

    /// Applies an unsigned Pauli (Y as XZ; the global phase is irrelevant).
    pub fn apply_pauli(&mut self, p: &PauliOp) {
        for q in 0..p.num_qubits().min(self.n) {
            if Self::bit(p.x_mask(), q) {
                self.x(q);
            }
            if Self::bit(p.z_mask(), q) {
                self.z(q);
            }
        }
    }

    /// Z-basis measurement; `coin` decides a random outcome.
    pub fn measure_z(&mut self, a: usize, coin: bool) -> bool {
        let n = self.n;
        if let Some(p) = (n..2 * n).find(|&p| Self::bit(self.xs[p], a)) {
            for i in 0..2 * n {
                if i != p && Self::bit(self.xs[i], a) {
                    self.rowsum(i, p);
                }
            }
            self.xs[p - n] = self.xs[p];
            self.zs[p - n] = self.zs[p];
            self.r[p - n] = self.r[p];
            self.xs[p] = 0;
            self.zs[p] = 1 << a;
            self.r[p] = coin;
            coin
        } else {
            let s = 2 * n;
            self.xs[s] = 0;
            self.zs[s] = 0;
            self.r[s] = false;
            for i in 0..n {
                if Self::bit(self.xs[i], a) {
                    self.rowsum(s, i + n);
                }
            }
            self.r[s]
        }
    }

    pub fn measure_x(&mut self, a: usize, coin: bool) -> bool {
        self.h(a);
        let m = self.measure_z(a, coin);
        self.h(a);
        m
    }

    pub fn prep_zero(&mut self, a: usize) {
        if self.measure_z(a, false) {
            self.x(a);
        }
    }

    pub fn prep_plus(&mut self, a: usize) {
        self.prep_zero(a);
        self.h(a);
    }

    /// `Some(true)` if +P stabilizes the state, `Some(false)` for -P, `None`
    /// if neither.
    pub fn stabilizer_sign(&mut self, p: &PauliOp) -> Option<bool> {
        let n = self.n;
        let (px, pz) = (p.x_mask(), p.z_mask());
        let anti = |x: u128, z: u128| ((x & pz) ^ (z & px)).count_ones() % 2 == 1;
        if (n..2 * n).any(|i| anti(self.xs[i], self.zs[i])) {
            return None;
        }
        let s = 2 * n;
        self.xs[s] = 0;
        self.zs[s] = 0;
        self.r[s] = false;
        for i in 0..n {
            if anti(self.xs[i], self.zs[i]) {
                self.rowsum(s, i + n);
            }
        }
        debug_assert_eq!((self.xs[s], self.zs[s]), (px, pz));
        Some(!self.r[s])
    }
}
