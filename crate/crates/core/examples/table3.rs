//! Census and threshold table for the 5x5 and 4x4 tiles.

fn main() {
    let t = knill2d::cli::table3().expect("table");
    for row in &t.rows {
        println!(
            "{:<4} gamma {:<4} eps {:.3e} published {:.2e} ({:.1}%) {}",
            row.tile.label(),
            row.gamma,
            row.epsilon,
            row.published,
            100.0 * row.rel_error,
            if row.within_tolerance { "ok" } else { "off" }
        );
    }
}
