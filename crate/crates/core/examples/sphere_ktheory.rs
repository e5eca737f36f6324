//! K-theory of the quantum spheres, read off the graphs L_{2n-1}.
//!
//! ```bash
//! cargo run --example sphere_ktheory -- 6
//! ```

use lensgraph::graph::sphere_graph;
use lensgraph::ktheory::{k_groups, smith_normal_form, vertex_matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args().nth(1).map_or(Ok(5), |s| s.parse())?;
    for n in 1..=max_n {
        let g = sphere_graph(n)?;
        let a = vertex_matrix(&g);
        let snf = smith_normal_form(&a.matrix);
        println!(
            "L_{:<2} {} vertices, {:>2} edges, invariant factors {:?}: {}",
            2 * n - 1,
            g.vertex_count(),
            g.edge_count(),
            snf.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            k_groups(&g)
        );
    }
    let g = sphere_graph(3)?;
    println!("\nvertex matrix of L_5:\n{}", vertex_matrix(&g).matrix);
    Ok(())
}
