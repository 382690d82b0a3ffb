//! Compares the Pauli-frame engine against the state-vector oracle on a
//! single-tile ED for all fault sets of size at most one.

use knill2d::circuit::Structure;
use knill2d::malignancy::oracle_crosscheck;
use knill2d::tiles::{build_ed, EdVariant, TileSize, TileSpec};

fn main() {
    let ed = build_ed(EdVariant::Plus, &TileSpec::new(TileSize::FiveByFive, Structure::I)).with_idles();
    let r = oracle_crosscheck(&ed, 1).expect("crosscheck");
    println!(
        "{}: {} qubits, {} fault sets, {} branches, {} mismatches",
        r.schedule,
        r.qubits,
        r.fault_sets,
        r.branches,
        r.mismatches.len()
    );
}
