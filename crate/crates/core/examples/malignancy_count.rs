//! Counts malignant location pairs of the 5x5 exRec and compares them with
//! the reference matrix.

use knill2d::malignancy::{count_malignant_pairs_with, AlphaMatrix, MalignancyFlags};
use knill2d::tiles::{build_cnot_exrec, TileSize};

fn main() {
    let rec = build_cnot_exrec(TileSize::FiveByFive);
    let count = count_malignant_pairs_with(&rec, MalignancyFlags::default(), None).expect("count");
    println!("{} locations, {} pairs checked", count.locations, count.pairs_checked);
    println!("{}", count.alpha.render());
    println!("total {} (reference {})", count.alpha.total(), AlphaMatrix::reference().total());
    for d in count.alpha.diff(&AlphaMatrix::reference()) {
        println!("alpha({},{}) counted {} reference {}", d.i, d.j, d.counted, d.reference);
    }
}
