//! Grid-embedded circuits: locations, layers, checks and logical bookkeeping.

mod census;
mod compose;
mod json;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pauli::{c4, Pauli, PauliOp};

pub use census::{census, census_of_layers, LocationCensus, OrientationCounts};
pub use compose::{compose, parallel, splice, ComposeError};
pub use json::{content_hash, schedule_from_json, schedule_to_json, JsonError, SCHEDULE_FORMAT, SCHEDULE_VERSION};
pub use validate::{validate, ValidationReport, Violation, ViolationKind};

/// A site on one tile, in tile-local coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 3]", into = "[u32; 3]")]
pub struct GridCoord {
    pub row: u32,
    pub col: u32,
    pub tile: u32,
}

impl GridCoord {
    pub const fn new(row: u32, col: u32, tile: u32) -> GridCoord {
        GridCoord { row, col, tile }
    }
}

impl From<[u32; 3]> for GridCoord {
    fn from(v: [u32; 3]) -> GridCoord {
        GridCoord::new(v[0], v[1], v[2])
    }
}

impl From<GridCoord> for [u32; 3] {
    fn from(c: GridCoord) -> [u32; 3] {
        [c.row, c.col, c.tile]
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})@{}", self.row, self.col, self.tile)
    }
}

/// The seven location types; the numbering indexes the alpha matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LocationType {
    PrepPlus,
    PrepZero,
    MeasX,
    MeasZ,
    Swap,
    Cnot,
    Idle,
}

impl LocationType {
    pub const ALL: [LocationType; 7] = [
        LocationType::PrepPlus,
        LocationType::PrepZero,
        LocationType::MeasX,
        LocationType::MeasZ,
        LocationType::Swap,
        LocationType::Cnot,
        LocationType::Idle,
    ];

    /// 1-based index: PREP_PLUS = 1 ... IDLE = 7.
    pub fn number(self) -> usize {
        self.index() + 1
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_number(k: usize) -> Option<LocationType> {
        k.checked_sub(1).and_then(|i| Self::ALL.get(i).copied())
    }

    pub fn arity(self) -> usize {
        match self {
            LocationType::Swap | LocationType::Cnot => 2,
            _ => 1,
        }
    }

    pub fn is_measurement(self) -> bool {
        matches!(self, LocationType::MeasX | LocationType::MeasZ)
    }

    pub fn is_prep(self) -> bool {
        matches!(self, LocationType::PrepPlus | LocationType::PrepZero)
    }

    pub fn label(self) -> &'static str {
        match self {
            LocationType::PrepPlus => "PREP_PLUS",
            LocationType::PrepZero => "PREP_ZERO",
            LocationType::MeasX => "MEAS_X",
            LocationType::MeasZ => "MEAS_Z",
            LocationType::Swap => "SWAP",
            LocationType::Cnot => "CNOT",
            LocationType::Idle => "IDLE",
        }
    }
}

impl fmt::Display for LocationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
    None,
}

/// One fault site. CNOT operands are (control, target).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Location {
    pub id: u32,
    #[serde(rename = "type")]
    pub kind: LocationType,
    pub time: u32,
    pub operands: Vec<GridCoord>,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Layer {
    pub time: u32,
    /// Data qubits waiting for this layer's ED produce no IDLE locations.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub pre_arrival: bool,
    /// Locations here never carry faults (ideal decoder role).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub fault_free: bool,
    pub locations: Vec<Location>,
}

/// Parity of a set of measurement outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionCheck {
    pub label: String,
    pub measurements: Vec<u32>,
    pub expected_parity: u8,
}

/// Pauli applied to the frame after `time` when the outcome parity of
/// `condition` is odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameUpdate {
    pub label: String,
    pub time: u32,
    pub condition: Vec<u32>,
    pub sites: Vec<GridCoord>,
    pub pauli: String,
}

impl FrameUpdate {
    pub fn paulis(&self) -> Vec<(GridCoord, Pauli)> {
        self.sites
            .iter()
            .zip(self.pauli.chars())
            .filter_map(|(s, c)| match Pauli::from_char(c) {
                Ok(Pauli::I) | Err(_) => None,
                Ok(p) => Some((*s, p)),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Structure {
    I,
    II,
}

impl Structure {
    pub fn flipped(self) -> Structure {
        match self {
            Structure::I => Structure::II,
            Structure::II => Structure::I,
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::I => "I",
            Structure::II => "II",
        })
    }
}

/// A C4 block on the grid: sites d1..d4 and its logical operators written
/// over that site order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalBlock {
    pub tile: u32,
    pub sites: [GridCoord; 4],
    pub operators: BTreeMap<String, String>,
}

pub const LOGICAL_NAMES: [&str; 4] = ["X^L", "Z^L", "X^S", "Z^S"];

impl LogicalBlock {
    pub fn new(tile: u32, sites: [GridCoord; 4]) -> LogicalBlock {
        let operators = LOGICAL_NAMES
            .iter()
            .zip(c4::logicals())
            .map(|(name, op)| (name.to_string(), op.to_string()))
            .collect();
        LogicalBlock { tile, sites, operators }
    }

    /// Operator `name` on the block's four qubits.
    pub fn operator(&self, name: &str) -> Option<PauliOp> {
        self.operators.get(name).and_then(|s| s.parse().ok())
    }

    /// Inner SWAP of a logical Hadamard: exchange the roles of d2 and d3.
    pub fn swap_inner_labels(&mut self) {
        for s in self.operators.values_mut() {
            let mut c: Vec<char> = s.chars().collect();
            c.swap(1, 2);
            *s = c.into_iter().collect();
        }
    }
}

/// Global placement of the tiles and the locality rule in force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub tile_rows: u32,
    pub tile_cols: u32,
    /// Global (row, col) of each tile's local (0, 0).
    pub tile_origins: Vec<[u32; 2]>,
    pub nearest_neighbor: bool,
}

impl Grid {
    pub fn num_sites(&self) -> usize {
        self.tile_origins.len() * (self.tile_rows * self.tile_cols) as usize
    }

    pub fn contains(&self, c: GridCoord) -> bool {
        (c.tile as usize) < self.tile_origins.len() && c.row < self.tile_rows && c.col < self.tile_cols
    }

    /// Dense site index, tile-major.
    pub fn index(&self, c: GridCoord) -> usize {
        (c.tile * self.tile_rows * self.tile_cols + c.row * self.tile_cols + c.col) as usize
    }

    pub fn coord(&self, index: usize) -> GridCoord {
        let per = (self.tile_rows * self.tile_cols) as usize;
        let tile = (index / per) as u32;
        let rem = (index % per) as u32;
        GridCoord::new(rem / self.tile_cols, rem % self.tile_cols, tile)
    }

    pub fn global(&self, c: GridCoord) -> (i64, i64) {
        let o = self.tile_origins[c.tile as usize];
        ((o[0] + c.row) as i64, (o[1] + c.col) as i64)
    }

    /// Site at a global position, if any tile covers it.
    pub fn at_global(&self, row: u32, col: u32) -> Option<GridCoord> {
        self.tile_origins.iter().enumerate().find_map(|(t, o)| {
            let (r, c) = (row.checked_sub(o[0])?, col.checked_sub(o[1])?);
            (r < self.tile_rows && c < self.tile_cols).then(|| GridCoord::new(r, c, t as u32))
        })
    }

    pub fn manhattan(&self, a: GridCoord, b: GridCoord) -> i64 {
        let (ga, gb) = (self.global(a), self.global(b));
        (ga.0 - gb.0).abs() + (ga.1 - gb.1).abs()
    }

    /// Axis of a nearest-neighbour pair.
    pub fn axis(&self, a: GridCoord, b: GridCoord) -> Orientation {
        let (ga, gb) = (self.global(a), self.global(b));
        if ga.0 == gb.0 && (ga.1 - gb.1).abs() == 1 {
            Orientation::Horizontal
        } else if ga.1 == gb.1 && (ga.0 - gb.0).abs() == 1 {
            Orientation::Vertical
        } else {
            Orientation::None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub name: String,
    pub grid: Grid,
    pub entry_structure: Option<Structure>,
    pub exit_structure: Option<Structure>,
    pub layers: Vec<Layer>,
    pub detection_checks: Vec<DetectionCheck>,
    pub frame_updates: Vec<FrameUpdate>,
    /// Blocks live when the schedule starts.
    pub entry_blocks: Vec<LogicalBlock>,
    /// Blocks holding the encoded data when it ends.
    pub exit_blocks: Vec<LogicalBlock>,
}

impl Schedule {
    pub fn empty(name: &str, grid: Grid) -> Schedule {
        Schedule {
            name: name.to_string(),
            grid,
            entry_structure: None,
            exit_structure: None,
            layers: Vec::new(),
            detection_checks: Vec::new(),
            frame_updates: Vec::new(),
            entry_blocks: Vec::new(),
            exit_blocks: Vec::new(),
        }
    }

    pub fn num_steps(&self) -> usize {
        self.layers.len()
    }

    pub fn locations(&self) -> impl Iterator<Item = &Location> {
        self.layers.iter().flat_map(|l| l.locations.iter())
    }

    pub fn location(&self, id: u32) -> Option<&Location> {
        self.locations().find(|l| l.id == id)
    }

    pub fn max_id(&self) -> Option<u32> {
        self.locations().map(|l| l.id).max()
    }

    /// Layer at 1-based time `t`, created empty if missing.
    pub fn layer_mut(&mut self, t: u32) -> &mut Layer {
        while self.layers.len() < t as usize {
            let time = self.layers.len() as u32 + 1;
            self.layers.push(Layer { time, ..Layer::default() });
        }
        &mut self.layers[t as usize - 1]
    }

    /// Appends a location with the next free id.
    pub fn push(&mut self, t: u32, kind: LocationType, operands: Vec<GridCoord>) -> u32 {
        let id = self.max_id().map_or(0, |m| m + 1);
        let orientation = if operands.len() == 2 {
            self.grid.axis(operands[0], operands[1])
        } else {
            Orientation::None
        };
        self.layer_mut(t).locations.push(Location { id, kind, time: t, operands, orientation });
        id
    }

    /// Sites live at the start.
    pub fn initial_live(&self) -> BTreeSet<GridCoord> {
        self.entry_blocks.iter().flat_map(|b| b.sites).collect()
    }

    /// Copy with explicit IDLE locations for every live, unoperated qubit in
    /// layers that are neither pre-arrival nor fault-free. New ids continue
    /// after the largest existing id, in (time, site) order.
    pub fn with_idles(&self) -> Schedule {
        let mut out = self.clone();
        let mut next = self.max_id().map_or(0, |m| m + 1);
        let mut live = self.initial_live();
        for layer in &mut out.layers {
            let touched: BTreeSet<GridCoord> = layer.locations.iter().flat_map(|l| l.operands.iter().copied()).collect();
            if !layer.pre_arrival && !layer.fault_free {
                for &site in live.iter() {
                    if !touched.contains(&site) {
                        layer.locations.push(Location {
                            id: next,
                            kind: LocationType::Idle,
                            time: layer.time,
                            operands: vec![site],
                            orientation: Orientation::None,
                        });
                        next += 1;
                    }
                }
            }
            advance_liveness(&mut live, &layer.locations);
        }
        out
    }
}

/// Applies one layer's effect on the live set; errors are left to `validate`.
pub(crate) fn advance_liveness(live: &mut BTreeSet<GridCoord>, locations: &[Location]) {
    let mut born = Vec::new();
    let mut dead = Vec::new();
    for loc in locations {
        match loc.kind {
            LocationType::PrepPlus | LocationType::PrepZero => born.push(loc.operands[0]),
            LocationType::MeasX | LocationType::MeasZ => dead.push(loc.operands[0]),
            LocationType::Swap => {
                let (a, b) = (loc.operands[0], loc.operands[1]);
                let (la, lb) = (live.contains(&a), live.contains(&b));
                if la != lb {
                    if la {
                        dead.push(a);
                        born.push(b);
                    } else {
                        dead.push(b);
                        born.push(a);
                    }
                }
            }
            _ => {}
        }
    }
    for d in dead {
        live.remove(&d);
    }
    live.extend(born);
}
