//! Draw one graph with each sampler and print its summary.
//!
//! ```text
//! cargo run --example sample_graph -- 200 4.0
//! ```

use splitdrift::graph::{summarize, write_edge_list};
use splitdrift::samplers::{
    default_burn_in, sample_backward, sample_ctmc, sample_forward, substream, ModelParams,
};
use splitdrift::LabeledGraph;

fn main() -> splitdrift::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(200, |s| s.parse().expect("n"));
    let r: f64 = args.next().map_or(4.0, |s| s.parse().expect("r"));
    let params = ModelParams::new(n, r)?;

    let forward = sample_forward(&params, &mut substream(1, 0));
    let backward = sample_backward(&params, &mut substream(1, 1));
    let chain = sample_ctmc(
        &params,
        default_burn_in(&params),
        &LabeledGraph::complete(n),
        &mut substream(1, 2),
    )?;

    println!(
        "n = {n}, r = {r}, expected edges {:.1}",
        n as f64 * (n - 1) as f64 / (2.0 * (1.0 + r))
    );
    for (name, g) in [
        ("forward", &forward),
        ("backward", &backward),
        ("ctmc", &chain),
    ] {
        let s = summarize(g, 256, &[3])?;
        println!(
            "{name:>8}: {} edges, {} components, clique number {:?}, {} triangles",
            s.edges, s.num_components, s.clique_number, s.complete_counts[&3]
        );
    }

    if n <= 10 {
        write_edge_list(std::io::stdout(), &forward).expect("stdout");
    }
    Ok(())
}
