//! Logical error rate of the 5x5 exRec at one physical error rate.

use knill2d::malignancy::MalignancyFlags;
use knill2d::montecarlo::{NoiseModel, Sampler};
use knill2d::tiles::{build_cnot_exrec, TileSize};

fn main() {
    let sampler = Sampler::new(&build_cnot_exrec(TileSize::FiveByFive), MalignancyFlags::default()).expect("compile");
    let model = NoiseModel::new(1e-3, 1.0);
    let e = sampler.estimate(&model, 2_000_000, 1, None).expect("estimate");
    println!(
        "p 1e-3: accepted {}/{}, errors {}, e {:.3e} [{:.3e}, {:.3e}]",
        e.accepted_count, e.total_trials, e.error_count, e.e_hat, e.ci_low, e.ci_high
    );
}
