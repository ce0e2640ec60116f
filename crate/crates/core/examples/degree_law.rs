//! The degree of a fixed vertex: exact law, the degree chain, and the
//! limiting shapes.

use splitdrift::analytic::{degree_pmf, limit_density, moments, LimitLaw};
use splitdrift::samplers::{sample_degree_chain, substream, ModelParams};
use splitdrift::stats::{tv_distance, PmfTable};

fn main() -> splitdrift::Result<()> {
    let params = ModelParams::new(100, 10.0)?;
    let law = degree_pmf(&params)?;
    let m = moments(&params)?;
    println!("mean {:.6} (closed form {:.6})", law.mean(), m.mean_degree);
    println!(
        "variance {:.6} (closed form {:.6})",
        law.variance(),
        m.var_degree
    );

    let mut counts = vec![0u64; params.n()];
    let mut rng = substream(3, 0);
    for _ in 0..50_000 {
        counts[sample_degree_chain(&params, &mut rng)] += 1;
    }
    let empirical = PmfTable::from_counts(&counts)?;
    println!("TV(chain, exact) = {:.4}", tv_distance(&empirical, &law));

    // With r fixed, D / n approaches Beta(2, 2r).
    let n = 2000;
    let law = degree_pmf(&ModelParams::new(n, 2.0)?)?;
    println!("\n  k    n P(D=k)   Beta(2,4) density at k/n");
    for k in (0..n).step_by(200) {
        let beta = limit_density(LimitLaw::Beta { r: 2.0 }, k as f64 / n as f64)?;
        println!("{k:>5}  {:>9.5}  {beta:>9.5}", n as f64 * law.prob(k));
    }
    Ok(())
}
