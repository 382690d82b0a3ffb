//! Inter-tile transport for the transversal CNOT, and the record of where
//! the reconstructed schedules differ from the published figures.

use serde::{Deserialize, Serialize};

use crate::circuit::{census, LocationType, LogicalBlock, Schedule, Structure};

use super::{build_cnot_exrec, data_sites, TileSize};

/// Path of one data qubit in global (row, col); entry `k` is its position
/// after routing step `k`, entry 0 the position before the first step. A
/// qubit stays put once its path ends.
pub(crate) struct Route {
    pub tile: u32,
    pub qubit: usize,
    pub path: &'static [(u32, u32)],
}

// Routing steps 1..=8 run at exRec steps 5..=12. The d1/d3 pairs meet for
// the transversal CNOT at routing step 4 and the d2/d4 pairs at step 5.
const ROUTES_5X5: [Route; 8] = [
    Route { tile: 0, qubit: 0, path: &[(2, 2), (1, 2), (2, 2), (3, 2), (3, 2), (3, 1), (2, 1), (1, 1), (1, 1)] },
    Route { tile: 0, qubit: 1, path: &[(3, 2), (4, 2), (4, 1), (5, 1), (5, 1), (5, 1), (4, 1), (3, 1), (4, 1)] },
    Route { tile: 0, qubit: 2, path: &[(2, 3), (1, 3), (2, 3), (3, 3), (3, 3), (3, 4), (2, 4), (1, 4), (1, 4)] },
    Route { tile: 0, qubit: 3, path: &[(3, 3), (4, 3), (4, 4), (5, 4), (5, 4), (5, 4), (4, 4), (3, 4), (4, 4)] },
    Route { tile: 1, qubit: 0, path: &[(7, 2), (6, 2), (5, 2), (4, 2), (4, 2), (5, 2), (5, 2), (5, 1), (6, 1)] },
    Route { tile: 1, qubit: 1, path: &[(8, 2), (8, 2), (8, 1), (7, 1), (6, 1), (6, 1), (7, 1), (8, 1), (9, 1)] },
    Route { tile: 1, qubit: 2, path: &[(7, 3), (6, 3), (5, 3), (4, 3), (4, 3), (5, 3), (5, 3), (5, 4), (6, 4)] },
    Route { tile: 1, qubit: 3, path: &[(8, 3), (8, 3), (7, 3), (7, 4), (6, 4), (6, 4), (7, 4), (8, 4), (9, 4)] },
];

const CNOT_STEPS_5X5: [u32; 4] = [4, 5, 4, 5];

// Routing steps 1..=11 run at exRec steps 4..=14; tile 0 arrives one step
// early because its ED0 starts one step before tile 1's. All four pairs
// meet for the transversal CNOT at routing step 5.
const ROUTES_4X4: [Route; 8] = [
    Route { tile: 0, qubit: 0, path: &[(1, 1), (1, 1), (1, 1), (1, 0), (2, 0), (2, 0), (1, 0), (0, 0), (0, 0), (0, 0), (0, 0)] },
    Route { tile: 0, qubit: 1, path: &[(2, 1), (3, 1), (3, 1), (3, 1), (3, 1), (3, 1), (2, 1), (2, 0), (2, 0), (2, 0), (3, 0)] },
    Route { tile: 0, qubit: 2, path: &[(1, 2), (1, 2), (1, 2), (1, 3), (1, 3), (1, 3), (0, 3), (0, 3), (0, 3), (0, 3), (0, 3)] },
    Route { tile: 0, qubit: 3, path: &[(2, 2), (2, 2), (2, 1), (2, 2), (3, 2), (3, 2), (2, 2), (2, 3), (2, 3), (2, 3), (3, 3)] },
    Route { tile: 1, qubit: 0, path: &[(5, 1), (5, 1), (4, 1), (4, 0), (3, 0), (3, 0), (3, 0), (3, 0), (4, 0), (4, 0), (4, 0), (4, 0)] },
    Route { tile: 1, qubit: 1, path: &[(6, 1), (6, 1), (6, 1), (5, 1), (4, 1), (4, 1), (4, 0), (5, 0), (6, 0), (6, 0), (7, 0), (7, 0)] },
    Route { tile: 1, qubit: 2, path: &[(5, 2), (4, 2), (3, 2), (3, 3), (2, 3), (2, 3), (3, 3), (3, 3), (4, 3), (4, 3), (4, 3), (4, 3)] },
    Route { tile: 1, qubit: 3, path: &[(6, 2), (6, 2), (6, 2), (5, 2), (4, 2), (4, 2), (4, 3), (5, 3), (5, 3), (6, 3), (6, 3), (7, 3)] },
];

const CNOT_STEPS_4X4: [u32; 4] = [5, 5, 5, 5];

pub(crate) fn routes(size: TileSize) -> (&'static [Route], &'static [u32; 4]) {
    match size {
        TileSize::FiveByFive => (&ROUTES_5X5, &CNOT_STEPS_5X5),
        TileSize::FourByFour => (&ROUTES_4X4, &CNOT_STEPS_4X4),
        TileSize::Nonlocal => (&[], &[0; 4]),
    }
}

/// SWAP transport plus transversal CNOT (tile 0 controls tile 1), taking
/// both blocks from the centre to the corners.
pub(crate) fn cnot_routing(size: TileSize) -> Schedule {
    let (routes, cnot_steps) = routes(size);
    let grid = size.grid(2);
    let mut s = Schedule::empty(&format!("cnot_routing_{}", size.label()), grid.clone());
    s.entry_structure = Some(Structure::II);
    s.exit_structure = Some(Structure::I);
    s.entry_blocks = (0..2).map(|t| LogicalBlock::new(t, data_sites(size, Structure::II, t))).collect();
    s.exit_blocks = (0..2).map(|t| LogicalBlock::new(t, data_sites(size, Structure::I, t))).collect();
    let at = |(r, c): (u32, u32)| grid.at_global(r, c).expect("route stays on the grid");
    let steps = routes.iter().map(|r| r.path.len() - 1).max().unwrap_or(0);
    let pos = |r: &Route, k: usize| r.path[k.min(r.path.len() - 1)];
    for step in 1..=steps {
        for r in routes {
            let (from, to) = (pos(r, step - 1), pos(r, step));
            if from != to {
                s.push(step as u32, LocationType::Swap, vec![at(from), at(to)]);
            }
        }
        for k in 0..4 {
            if cnot_steps[k] as usize == step {
                let c = routes.iter().find(|r| r.tile == 0 && r.qubit == k).expect("control route");
                let t = routes.iter().find(|r| r.tile == 1 && r.qubit == k).expect("target route");
                s.push(step as u32, LocationType::Cnot, vec![at(pos(c, step)), at(pos(t, step))]);
            }
        }
    }
    s
}

/// One reconstructed metric that differs from its published value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deviation {
    pub schedule: String,
    pub target_metric: String,
    pub published_value: f64,
    pub realized_value: f64,
    pub note: String,
}

/// Compares the shipped exRec censuses against the published targets.
pub fn deviation_report() -> Vec<Deviation> {
    let mut out = Vec::new();
    let mut check = |schedule: &str, metric: &str, published: f64, realized: f64, note: &str| {
        if (published - realized).abs() > 1e-9 {
            out.push(Deviation {
                schedule: schedule.into(),
                target_metric: metric.into(),
                published_value: published,
                realized_value: realized,
                note: note.into(),
            });
        }
    };
    let c5 = census(&build_cnot_exrec(TileSize::FiveByFive).noisy).expect("shipped 5x5 exRec validates");
    let c4 = census(&build_cnot_exrec(TileSize::FourByFour).noisy).expect("shipped 4x4 exRec validates");
    check(
        "cnot_exrec_5x5",
        "gate_total",
        154.0,
        c5.gate_total as f64,
        "published gate count conflicts with 196 total and 32 idle (196 - 32 = 164); 154 is exactly the reconstructed 4x4 exRec gate count",
    );
    check(
        "cnot_exrec_5x5",
        "swap_total",
        38.0,
        c5.swap_total as f64,
        "the text quotes 38 SWAPs while the tile comparison table lists 48; 38 is exactly the reconstructed 4x4 exRec SWAP count",
    );
    check("cnot_exrec_5x5", "total", 196.0, c5.total as f64, "");
    check("cnot_exrec_5x5", "idle", 32.0, c5.idle() as f64, "");
    check("cnot_exrec_5x5", "time_steps", 14.0, c5.time_steps as f64, "");
    check("cnot_exrec_4x4", "swap_total", 38.0, c4.swap_total as f64, "4x4 routing reconstructed");
    check("cnot_exrec_4x4", "idle", 74.0, c4.idle() as f64, "4x4 routing reconstructed");
    check("cnot_exrec_4x4", "time_steps", 16.0, c4.time_steps as f64, "4x4 routing reconstructed");
    for size in [TileSize::FiveByFive, TileSize::FourByFour] {
        let ed = census(&super::build_ed(super::EdVariant::Plus, &super::TileSpec::new(size, Structure::II)))
            .expect("shipped ED validates");
        check(
            &format!("ed_plus_II_{}", size.label()),
            "swap_events",
            2.0,
            ed.swap_total as f64,
            "prose says two SWAPs for structure II; four single-qubit SWAPs are realized, matching the gate-count table",
        );
    }
    out
}
