use crate::circuit::{
    DetectionCheck, FrameUpdate, Grid, GridCoord, LocationType, LogicalBlock, Schedule, Structure,
};

use super::{data_sites, EdVariant, PrepKind, TileSize, TileSpec};

/// Site assignment of one teleportation ED.
///
/// `a` is the block entangled with the data and measured in Z; `b` receives
/// the teleported data. When `b_moves` is set, `b` is prepared in place and
/// then swapped onto those sites before the Bell CNOT.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdLayout {
    pub a: [GridCoord; 4],
    pub b: [GridCoord; 4],
    pub b_moves: Option<[GridCoord; 4]>,
}

impl EdLayout {
    pub fn standard(variant: EdVariant, size: TileSize, structure: Structure, tile: u32) -> EdLayout {
        let s = |r, c| size.site(r, c, tile);
        let column_side = [s(2, 1), s(3, 1), s(2, 4), s(3, 4)];
        let row_side = [s(1, 2), s(4, 2), s(1, 3), s(4, 3)];
        let centre = data_sites(size, Structure::II, tile);
        let corners = data_sites(size, Structure::I, tile);
        // |+> blocks pair vertically on the column sides, |0> blocks pair
        // horizontally on the row sides.
        match (variant, structure) {
            (EdVariant::Plus, Structure::I) => EdLayout { a: column_side, b: centre, b_moves: None },
            (EdVariant::Zero, Structure::I) => EdLayout { a: row_side, b: centre, b_moves: None },
            (EdVariant::Plus, Structure::II) => match size {
                TileSize::Nonlocal => EdLayout { a: column_side, b: corners, b_moves: None },
                _ => EdLayout { a: column_side, b: row_side, b_moves: Some(corners) },
            },
            (EdVariant::Zero, Structure::II) => match size {
                TileSize::Nonlocal => EdLayout { a: row_side, b: corners, b_moves: None },
                _ => EdLayout { a: row_side, b: column_side, b_moves: Some(corners) },
            },
        }
    }

    pub fn output(&self) -> [GridCoord; 4] {
        self.b_moves.unwrap_or(self.b)
    }
}

/// Preparation layer at `t` and the two encoding CNOTs at `t + 1`.
pub(crate) fn encode_block(s: &mut Schedule, t: u32, kind: PrepKind, q: [GridCoord; 4]) {
    use LocationType::{PrepPlus, PrepZero};
    let (preps, pairs) = match kind {
        PrepKind::Plus => ([PrepPlus, PrepZero, PrepPlus, PrepZero], [(0, 1), (2, 3)]),
        PrepKind::Zero => ([PrepPlus, PrepPlus, PrepZero, PrepZero], [(0, 2), (1, 3)]),
    };
    for (k, p) in preps.into_iter().enumerate() {
        s.push(t, p, vec![q[k]]);
    }
    for (c, tgt) in pairs {
        s.push(t + 1, LocationType::Cnot, vec![q[c], q[tgt]]);
    }
}

/// Teleportation ED on explicit sites. Starts at t=1.
pub fn build_ed_with_layout(
    variant: EdVariant,
    grid: Grid,
    tile: u32,
    data: [GridCoord; 4],
    layout: &EdLayout,
    tags: (Option<Structure>, Option<Structure>),
    name: &str,
) -> Schedule {
    let mut s = Schedule::empty(name, grid);
    s.entry_structure = tags.0;
    s.exit_structure = tags.1;
    s.entry_blocks = vec![LogicalBlock::new(tile, data)];
    let (a_kind, b_kind) = match variant {
        EdVariant::Plus => (PrepKind::Plus, PrepKind::Zero),
        EdVariant::Zero => (PrepKind::Zero, PrepKind::Plus),
    };
    encode_block(&mut s, 1, a_kind, layout.a);
    encode_block(&mut s, 1, b_kind, layout.b);
    let mut t = 3;
    if let Some(dest) = layout.b_moves {
        for k in 0..4 {
            s.push(t, LocationType::Swap, vec![layout.b[k], dest[k]]);
        }
        t += 1;
    }
    let b = layout.output();
    for k in 0..4 {
        let ops = match variant {
            EdVariant::Plus => vec![layout.a[k], b[k]],
            EdVariant::Zero => vec![b[k], layout.a[k]],
        };
        s.push(t, LocationType::Cnot, ops);
    }
    for k in 0..4 {
        s.push(t + 1, LocationType::Cnot, vec![data[k], layout.a[k]]);
    }
    let mx: Vec<u32> = (0..4).map(|k| s.push(t + 2, LocationType::MeasX, vec![data[k]])).collect();
    let mz: Vec<u32> = (0..4).map(|k| s.push(t + 2, LocationType::MeasZ, vec![layout.a[k]])).collect();
    s.detection_checks.push(DetectionCheck { label: format!("t{tile}.xxxx"), measurements: mx.clone(), expected_parity: 0 });
    s.detection_checks.push(DetectionCheck { label: format!("t{tile}.zzzz"), measurements: mz.clone(), expected_parity: 0 });
    // X^L = XXII read from the data, Z^L = ZIZI read from block a.
    s.frame_updates.push(FrameUpdate {
        label: format!("t{tile}.z_logical"),
        time: t + 2,
        condition: vec![mx[0], mx[1]],
        sites: vec![b[0], b[2]],
        pauli: "ZZ".into(),
    });
    s.frame_updates.push(FrameUpdate {
        label: format!("t{tile}.x_logical"),
        time: t + 2,
        condition: vec![mz[0], mz[2]],
        sites: vec![b[0], b[1]],
        pauli: "XX".into(),
    });
    s.exit_blocks = vec![LogicalBlock::new(tile, b)];
    s
}

/// Standard ED on tile `tile` of a vertical stack of `tiles` tiles.
pub fn build_ed_on(variant: EdVariant, size: TileSize, structure: Structure, tile: u32, tiles: u32) -> Schedule {
    let layout = EdLayout::standard(variant, size, structure, tile);
    let name = format!("{}_{}_{}_t{}", variant.label(), structure, size.label(), tile);
    build_ed_with_layout(
        variant,
        size.grid(tiles),
        tile,
        data_sites(size, structure, tile),
        &layout,
        (Some(structure), Some(structure.flipped())),
        &name,
    )
}

/// Single-tile ED for `spec`.
pub fn build_ed(variant: EdVariant, spec: &TileSpec) -> Schedule {
    let mut s = build_ed_on(variant, spec.size, spec.structure, 0, 1);
    s.name = format!("{}_{}_{}", variant.label(), spec.structure, spec.size.label());
    s
}
