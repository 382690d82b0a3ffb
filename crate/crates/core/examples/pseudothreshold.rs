//! Pseudo-threshold of the 5x5 and nonlocal exRecs.

use knill2d::malignancy::MalignancyFlags;
use knill2d::montecarlo::{find_pseudothreshold, NoiseModel, Sampler, SearchConfig};
use knill2d::tiles::{build_cnot_exrec, TileSize};

fn main() {
    for (size, gamma) in [(TileSize::FiveByFive, 1.0), (TileSize::FiveByFive, 0.1), (TileSize::Nonlocal, 1.0)] {
        let sampler = Sampler::new(&build_cnot_exrec(size), MalignancyFlags::default()).expect("compile");
        let cfg = SearchConfig::new(NoiseModel::new(0.0, gamma), 1_000_000, 1);
        let r = find_pseudothreshold(&sampler, &cfg).expect("search");
        println!(
            "{} gamma {gamma}: {:.3}% in [{:.3}%, {:.3}%]",
            size.label(),
            100.0 * r.epsilon_tilde,
            100.0 * r.bracket.0,
            100.0 * r.bracket.1
        );
    }
}
