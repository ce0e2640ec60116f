//! Walk r across the regimes for a fixed n and print the structural
//! predictions at each point.

use splitdrift::analytic::{cc_bounds, classify_regime, clique_upper_bound, moments, p_complete};
use splitdrift::samplers::ModelParams;

fn main() -> splitdrift::Result<()> {
    let n = 10_000;
    println!(
        "{:>10} {:>20} {:>12} {:>12} {:>10} {:>18}",
        "r", "regime", "E|E|", "P(complete)", "clique<=", "#CC bracket"
    );
    for r in [0.0, 1e-5, 1e-2, 0.5, 1.0, 100.0, 1e4, 1e6, 1e8, 1e9] {
        let params = ModelParams::new(n, r)?;
        let label = classify_regime(n, r);
        let m = moments(&params)?;
        let cc = cc_bounds(&params);
        println!(
            "{r:>10.0e} {:>20} {:>12.4e} {:>12.4e} {:>10} {:>8.1}..{:<8.1}",
            format!("{:?}", label.regime),
            m.mean_edges,
            p_complete(&params),
            clique_upper_bound(&params, 0.01)?,
            cc.lower,
            cc.upper
        );
    }
    Ok(())
}
