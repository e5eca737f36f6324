//! rank K_0 − rank K_1 equals the number of sinks, on seeded random graphs.
//!
//! ```bash
//! cargo run --example sink_identity -- --seed 7 --count 200
//! ```

use clap::Parser;
use lensgraph::graph::random_graph;
use lensgraph::ktheory::k_groups;
use rand::SeedableRng;

#[derive(Parser)]
struct Args {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 12)]
    max_vertices: usize,
    #[arg(long, default_value_t = 30)]
    max_edges: usize,
}

fn main() {
    let args = Args::parse();
    let mut rng = rand::rngs::StdRng::seed_from_u64(args.seed);
    let mut failures = 0;
    for i in 0..args.count {
        let g = random_graph(&mut rng, args.max_vertices, args.max_edges);
        let k = k_groups(&g);
        let sinks = g.sinks().len();
        let ok = k.k0.free_rank as i64 - k.k1.free_rank as i64 == sinks as i64;
        if !ok {
            failures += 1;
        }
        if i < 10 || !ok {
            println!(
                "#{i:<3} {:>2} vertices {:>2} edges {sinks} sinks  {k}{}",
                g.vertex_count(),
                g.edge_count(),
                if ok { "" } else { "  MISMATCH" }
            );
        }
    }
    println!("{} graphs, {failures} mismatches", args.count);
    if failures > 0 {
        std::process::exit(1);
    }
}
