use crate::circuit::{LocationType, LogicalBlock, Schedule, Structure};

use super::ed::encode_block;
use super::{data_sites, PrepKind, TileSize, TileSpec};

/// Encoded preparation ending on the structure-I corners of tile `tile`.
///
/// |+> is encoded on the column sides and moved out with vertical SWAPs;
/// |0> on the row sides with horizontal SWAPs. Unconstrained tiles encode
/// directly on the corners.
pub fn build_prep_on(kind: PrepKind, size: TileSize, tile: u32, tiles: u32) -> Schedule {
    let s5 = |r, c| size.site(r, c, tile);
    let corners = data_sites(size, Structure::I, tile);
    let start = match (kind, size) {
        (_, TileSize::Nonlocal) => corners,
        (PrepKind::Plus, _) => [s5(2, 1), s5(3, 1), s5(2, 4), s5(3, 4)],
        (PrepKind::Zero, _) => [s5(1, 2), s5(4, 2), s5(1, 3), s5(4, 3)],
    };
    let label = match kind {
        PrepKind::Zero => "prep_zero",
        PrepKind::Plus => "prep_plus",
    };
    let mut s = Schedule::empty(&format!("{label}_{}_t{tile}", size.label()), size.grid(tiles));
    s.exit_structure = Some(Structure::I);
    encode_block(&mut s, 1, kind, start);
    if start != corners {
        for k in 0..4 {
            s.push(3, LocationType::Swap, vec![start[k], corners[k]]);
        }
    }
    s.exit_blocks = vec![LogicalBlock::new(tile, corners)];
    s
}

/// Single-tile encoded preparation; `spec.structure` is ignored because the
/// output always sits on the corners.
pub fn build_prep(kind: PrepKind, spec: &TileSpec) -> Schedule {
    let mut s = build_prep_on(kind, spec.size, 0, 1);
    s.name = s.name.trim_end_matches("_t0").to_string();
    s
}
