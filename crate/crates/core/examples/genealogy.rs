//! Draw a coalescent genealogy, inspect it, and evaluate a graph on it.

use splitdrift::genealogy::sample_kingman;
use splitdrift::samplers::{sample_backward_from, substream};

fn main() -> splitdrift::Result<()> {
    let n = 8;
    let mut rng = substream(12, 0);
    let genealogy = sample_kingman(n, &mut rng)?;

    genealogy.write_dump(std::io::stdout()).expect("stdout");
    println!(
        "height {:.4}, total branch length {:.4}",
        genealogy.height(),
        genealogy.total_branch_length()
    );
    for level in 0..n {
        println!("after {level} merges: {:?}", genealogy.blocks_at(level));
    }
    println!("T(1, 2) = {:.4}", genealogy.pair_coalescence_time(0, 1)?);

    // The same genealogy carries graphs for every r; larger r keeps fewer edges.
    for r in [0.1, 1.0, 10.0] {
        let g = sample_backward_from(&genealogy, r, &mut substream(12, 1));
        println!("r = {r:>4}: {} edges {:?}", g.len(), g.edges);
    }
    Ok(())
}
