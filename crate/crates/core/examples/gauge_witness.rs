//! Principality of the gauge action: decision table and explicit witnesses.
//!
//! ```bash
//! cargo run --example gauge_witness -- 2 3
//! ```
//!
//! Arguments: n and |k|. Prints the witnesses for P_v ⊗ z^k on L_{2n-1} for
//! every vertex v and -|k| ≤ k ≤ |k|.

use lensgraph::graph::{sphere_graph, DirectedGraph, Edge};
use lensgraph::leavitt::{Action, LeavittAlgebra};
use lensgraph::principality::{check_gauge, gauge_witness};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(2), |s| s.parse())?;
    let bound: i64 = args.get(1).map_or(Ok(2), |s| s.parse())?;

    let l3 = sphere_graph(2)?;
    let mut vertices = l3.vertices().to_vec();
    vertices.push("w".into());
    let isolated = DirectedGraph::new(vertices, l3.edges().to_vec())?;
    let source = DirectedGraph::new(vec!["v1".into(), "v2".into()], vec![Edge::new("e", 0, 1), Edge::new("f", 1, 1)])?;
    for (name, g) in [("L_3", &l3), ("L_3 + isolated vertex", &isolated), ("v1 -> v2 with loop at v2", &source)] {
        println!("{name}: {}", check_gauge(g));
    }
    println!();

    let g = sphere_graph(n)?;
    let alg = LeavittAlgebra::new(&g);
    for v in 0..g.vertex_count() {
        for k in -bound..=bound {
            let cert = gauge_witness(&g, v, k)?;
            let terms: Vec<String> =
                cert.pairs.iter().map(|p| format!("({}, {})", alg.render(&p.x), alg.render(&p.y))).collect();
            println!(
                "{} k={k:>2}: {} pair(s), recheck {}  {}",
                g.vertex_name(v),
                cert.pairs.len(),
                cert.recheck(&g, Action::Gauge)?,
                terms.join(" + ")
            );
        }
    }
    Ok(())
}
