//! Builds every exRec, validates it and prints its location census.

use knill2d::circuit::{census, LocationType};
use knill2d::tiles::{build_cnot_exrec, TileSize};

fn main() {
    println!("{:<9} {:>5} {:>5} {:>5} {:>5} {:>5}", "tile", "total", "gates", "swaps", "idle", "steps");
    for size in TileSize::ALL {
        let rec = build_cnot_exrec(size);
        rec.check().expect("valid exRec");
        let c = census(&rec.noisy).expect("valid schedule");
        println!(
            "{:<9} {:>5} {:>5} {:>5} {:>5} {:>5}",
            size.label(),
            c.total,
            c.gate_total,
            c.swap_total,
            c.count(LocationType::Idle),
            c.time_steps
        );
    }
}
