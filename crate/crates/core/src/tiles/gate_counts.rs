//! Recursive gate counts: how many level-m operations of each kind make up
//! one level-(m+1) operation together with its trailing ED.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpKind {
    Ed,
    VCnot,
    HCnot,
    VSwap,
    HSwap,
    PrepPlus,
    PrepZero,
    MeasZ,
    MeasX,
    Z,
    X,
    H,
    S,
    T,
}

impl OpKind {
    pub const ALL: [OpKind; 14] = [
        OpKind::Ed,
        OpKind::VCnot,
        OpKind::HCnot,
        OpKind::VSwap,
        OpKind::HSwap,
        OpKind::PrepPlus,
        OpKind::PrepZero,
        OpKind::MeasZ,
        OpKind::MeasX,
        OpKind::Z,
        OpKind::X,
        OpKind::H,
        OpKind::S,
        OpKind::T,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            OpKind::Ed => "ED",
            OpKind::VCnot => "vCNOT",
            OpKind::HCnot => "hCNOT",
            OpKind::VSwap => "vSWAP",
            OpKind::HSwap => "hSWAP",
            OpKind::PrepPlus => "P+",
            OpKind::PrepZero => "P0",
            OpKind::MeasZ => "MZ",
            OpKind::MeasX => "MX",
            OpKind::Z => "Z",
            OpKind::X => "X",
            OpKind::H => "H",
            OpKind::S => "S",
            OpKind::T => "T",
        }
    }

    pub fn parse(s: &str) -> Option<OpKind> {
        Self::ALL.iter().copied().find(|k| k.label().eq_ignore_ascii_case(s))
    }
}

/// A table cell; SWAPs inside an ED depend on the structure it starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountEntry {
    Fixed(u64),
    EdSwap,
}

/// How the structure-dependent ED SWAP cells resolve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdSwaps {
    pub vertical: u64,
    pub horizontal: u64,
}

impl EdSwaps {
    pub const STRUCTURE_I: EdSwaps = EdSwaps { vertical: 0, horizontal: 0 };
    /// ED+ from structure II moves its output block with horizontal SWAPs.
    pub const ED_PLUS_STRUCTURE_II: EdSwaps = EdSwaps { vertical: 0, horizontal: 4 };
    /// ED0 from structure II moves its output block with vertical SWAPs.
    pub const ED_ZERO_STRUCTURE_II: EdSwaps = EdSwaps { vertical: 4, horizontal: 0 };
}

/// Entry (r, c): level-m operations of kind r inside the level-(m+1)
/// operation of kind c.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCountMatrix {
    pub entries: Vec<Vec<CountEntry>>,
}

impl GateCountMatrix {
    pub fn get(&self, row: OpKind, col: OpKind) -> CountEntry {
        self.entries[row.index()][col.index()]
    }

    pub fn resolved(&self, row: OpKind, col: OpKind, swaps: EdSwaps) -> u64 {
        match self.get(row, col) {
            CountEntry::Fixed(v) => v,
            CountEntry::EdSwap => match row {
                OpKind::VSwap => swaps.vertical,
                OpKind::HSwap => swaps.horizontal,
                _ => 0,
            },
        }
    }
}

pub fn gate_count_matrix() -> GateCountMatrix {
    use OpKind::*;
    let cols: [(OpKind, &[(OpKind, u64)]); 14] = [
        (Ed, &[(VCnot, 6), (HCnot, 6), (PrepPlus, 4), (PrepZero, 4), (MeasZ, 4), (MeasX, 4)]),
        (VCnot, &[(Ed, 2), (VCnot, 4), (VSwap, 40), (HSwap, 8)]),
        (HCnot, &[(Ed, 2), (HCnot, 4), (VSwap, 8), (HSwap, 40)]),
        (VSwap, &[(Ed, 1), (VSwap, 20)]),
        (HSwap, &[(Ed, 1), (HSwap, 20)]),
        (PrepPlus, &[(Ed, 1), (VCnot, 2), (VSwap, 4), (PrepPlus, 2), (PrepZero, 2)]),
        (PrepZero, &[(Ed, 1), (HCnot, 2), (HSwap, 4), (PrepPlus, 2), (PrepZero, 2)]),
        (MeasZ, &[(MeasZ, 4)]),
        (MeasX, &[(MeasX, 4)]),
        (Z, &[(Ed, 1), (Z, 2)]),
        (X, &[(Ed, 1), (X, 2)]),
        (H, &[(Ed, 1), (H, 4)]),
        (S, &[(Ed, 1), (HCnot, 8), (VSwap, 20), (HSwap, 4), (H, 8)]),
        (T, &[(Ed, 2), (HCnot, 12), (VSwap, 40), (HSwap, 12), (MeasX, 4), (H, 8)]),
    ];
    let mut entries = vec![vec![CountEntry::Fixed(0); 14]; 14];
    for (col, cells) in cols {
        for &(row, v) in cells {
            entries[row.index()][col.index()] = CountEntry::Fixed(v);
        }
    }
    entries[VSwap.index()][Ed.index()] = CountEntry::EdSwap;
    entries[HSwap.index()][Ed.index()] = CountEntry::EdSwap;
    GateCountMatrix { entries }
}

/// Level-0 operation counts inside one level-`levels` operation of kind
/// `top`. Every ED at any level is expanded with the same SWAP resolution.
pub fn propagate_counts(m: &GateCountMatrix, top: OpKind, levels: u32, swaps: EdSwaps) -> [u64; 14] {
    assert!(levels >= 1, "at least one level");
    let ed = OpKind::Ed;
    let n = OpKind::ALL.len();
    // One-level expansion with the trailing ED's contents inlined; the ED
    // row of the result stays zero.
    let mut step = vec![vec![0u64; n]; n];
    for c in OpKind::ALL {
        let eds = if c == ed { 1 } else { m.resolved(ed, c, swaps) };
        for r in OpKind::ALL.into_iter().filter(|&r| r != ed) {
            let own = if c == ed { 0 } else { m.resolved(r, c, swaps) };
            step[r.index()][c.index()] = own + eds * m.resolved(r, ed, swaps);
        }
    }
    let mut v = [0u64; 14];
    v[top.index()] = 1;
    for _ in 0..levels {
        let mut next = [0u64; 14];
        for (c, &count) in v.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for r in 0..n {
                next[r] += step[r][c] * count;
            }
        }
        v = next;
    }
    v
}
