//! Threshold estimates from the reference malignant-pair matrix.

use knill2d::circuit::census;
use knill2d::malignancy::AlphaMatrix;
use knill2d::threshold::{threshold_report, ThresholdInput};
use knill2d::tiles::{build_cnot_exrec, TileSize};

fn main() {
    let c = census(&build_cnot_exrec(TileSize::FiveByFive).noisy).expect("valid schedule");
    for gamma in [1.0, 0.1, 0.0] {
        let input = ThresholdInput { label: "5x5".into(), alpha: AlphaMatrix::reference(), census: c, gamma };
        let r = threshold_report(&input).expect("solvable");
        println!("gamma {gamma:<4} A {:>10.1} B {:>8.2} eps {:.3e}", r.a, r.b, r.epsilon);
    }
}
