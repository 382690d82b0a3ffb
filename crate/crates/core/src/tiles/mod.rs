//! Curated C4 schedules on 5x5, 4x4 and unconstrained tiles.
//!
//! Coordinates below are written for the 5x5 tile; the 4x4 tile drops the
//! transport row and column, i.e. every site moves by (-1, -1).

mod ed;
mod exrec;
mod gate_counts;
mod prep;
mod routing;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{GridCoord, Grid, Structure};

pub use ed::{build_ed, build_ed_on, build_ed_with_layout, EdLayout};
pub use exrec::{build_cnot_exrec, exrec_from_json, exrec_to_json, ExRec, ExRecError, EXREC_FORMAT};
pub use gate_counts::{gate_count_matrix, propagate_counts, CountEntry, EdSwaps, GateCountMatrix, OpKind};
pub use prep::{build_prep, build_prep_on};
pub use routing::{deviation_report, Deviation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileSize {
    #[serde(rename = "5x5")]
    FiveByFive,
    #[serde(rename = "4x4")]
    FourByFour,
    #[serde(rename = "nonlocal")]
    Nonlocal,
}

impl TileSize {
    pub const ALL: [TileSize; 3] = [TileSize::FiveByFive, TileSize::FourByFour, TileSize::Nonlocal];

    pub fn dim(self) -> u32 {
        match self {
            TileSize::FourByFour => 4,
            _ => 5,
        }
    }

    pub fn nearest_neighbor(self) -> bool {
        self != TileSize::Nonlocal
    }

    pub fn label(self) -> &'static str {
        match self {
            TileSize::FiveByFive => "5x5",
            TileSize::FourByFour => "4x4",
            TileSize::Nonlocal => "nonlocal",
        }
    }

    /// Tile-local site for 5x5-style coordinates.
    pub fn site(self, row: u32, col: u32, tile: u32) -> GridCoord {
        match self {
            TileSize::FourByFour => GridCoord::new(row - 1, col - 1, tile),
            _ => GridCoord::new(row, col, tile),
        }
    }

    /// Grid of `tiles` tiles stacked vertically.
    pub fn grid(self, tiles: u32) -> Grid {
        let d = self.dim();
        Grid {
            tile_rows: d,
            tile_cols: d,
            tile_origins: (0..tiles).map(|t| [t * d, 0]).collect(),
            nearest_neighbor: self.nearest_neighbor(),
        }
    }
}

impl std::str::FromStr for TileSize {
    type Err = TileError;

    fn from_str(s: &str) -> Result<TileSize, TileError> {
        match s {
            "5x5" => Ok(TileSize::FiveByFive),
            "4x4" => Ok(TileSize::FourByFour),
            "nonlocal" => Ok(TileSize::Nonlocal),
            other => Err(TileError::UnknownTile(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdVariant {
    /// First ancilla block |+>, Bell CNOT from it; output spectator |+>.
    Plus,
    /// First ancilla block |0>, Bell CNOT into it; output spectator |0>.
    Zero,
}

impl EdVariant {
    pub fn label(self) -> &'static str {
        match self {
            EdVariant::Plus => "ed_plus",
            EdVariant::Zero => "ed_zero",
        }
    }
}

/// Encoded states prepared by the two-CNOT circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrepKind {
    /// |0>_L |+>_S
    Zero,
    /// |+>_L |0>_S
    Plus,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TileError {
    #[error("unknown tile size {0:?}")]
    UnknownTile(String),
}

/// Tile size, structure and the resulting data sites d1..d4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileSpec {
    pub size: TileSize,
    pub structure: Structure,
    pub data: [GridCoord; 4],
}

impl TileSpec {
    pub fn new(size: TileSize, structure: Structure) -> TileSpec {
        TileSpec { size, structure, data: data_sites(size, structure, 0) }
    }

    /// Sites a1..a8 used by an ED of `variant` started on this structure.
    pub fn ancilla_sites(&self, variant: EdVariant) -> [GridCoord; 8] {
        let l = EdLayout::standard(variant, self.size, self.structure, 0);
        [l.a[0], l.a[1], l.a[2], l.a[3], l.b[0], l.b[1], l.b[2], l.b[3]]
    }
}

/// Data sites d1..d4: corners for structure I, centre for structure II.
pub fn data_sites(size: TileSize, structure: Structure, tile: u32) -> [GridCoord; 4] {
    let s = |r, c| size.site(r, c, tile);
    match structure {
        Structure::I => [s(1, 1), s(4, 1), s(1, 4), s(4, 4)],
        Structure::II => [s(2, 2), s(3, 2), s(2, 3), s(3, 3)],
    }
}
