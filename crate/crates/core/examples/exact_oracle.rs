//! Solve the stationary law of the chain on four vertices and compare it
//! with the closed forms.

use splitdrift::analytic::{moments, p_complete};
use splitdrift::samplers::ModelParams;
use splitdrift::stats::{exact_stationary_small_n, exact_stationary_with_clock, Clock};

fn main() -> splitdrift::Result<()> {
    for r in [0.1, 1.0, 10.0] {
        let params = ModelParams::new(4, r)?;
        let law = exact_stationary_small_n(&params)?;
        let m = moments(&params)?;
        println!("r = {r}");
        println!(
            "  P(edge)         {:.12}  closed form {:.12}",
            law.p_edge(0, 1),
            m.p_edge
        );
        println!(
            "  P(complete)     {:.12}  closed form {:.12}",
            law.p_complete(),
            p_complete(&params)
        );
        println!(
            "  Cov(shared)     {:.12}  closed form {:.12}",
            law.edge_covariance((0, 1), (0, 2)),
            m.cov_shared
        );
        println!(
            "  Cov(disjoint)   {:.12}  closed form {:.12}",
            law.edge_covariance((0, 1), (2, 3)),
            m.cov_disjoint
        );

        let rescaled = exact_stationary_with_clock(&params, Clock::Rescaled)?;
        let gap = law
            .probs()
            .iter()
            .zip(rescaled.probs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("  max |unit - rescaled clock| = {gap:.1e}");
    }
    Ok(())
}
