//! e(p) over a decade of p as CSV, with the fitted log-log slope.

use knill2d::malignancy::MalignancyFlags;
use knill2d::montecarlo::{logical_rate_sweep, loglog_fit, sweep_csv, NoiseModel, Sampler};
use knill2d::tiles::{build_cnot_exrec, TileSize};

fn main() {
    let sampler = Sampler::new(&build_cnot_exrec(TileSize::FiveByFive), MalignancyFlags::default()).expect("compile");
    let rows = logical_rate_sweep(&sampler, &NoiseModel::new(1e-3, 1.0), (1e-4, 1e-3), 5, 20_000_000, 1, None)
        .expect("sweep");
    print!("{}", sweep_csv(&rows));
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.p, r.e_hat)).collect();
    if let Some((slope, _)) = loglog_fit(&pts) {
        eprintln!("slope {slope:.3}");
    }
}
