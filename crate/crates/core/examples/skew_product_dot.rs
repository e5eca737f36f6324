//! Skew product L_{2n-1} ×_c ℤ_p as a Graphviz drawing.
//!
//! ```bash
//! cargo run --example skew_product_dot -- 2 3 1,2 > lens.dot && dot -Tsvg lens.dot -o lens.svg
//! ```
//!
//! The base graph with its lens labeling goes to stderr as JSON, the DOT
//! text of the skew product to stdout.

use lensgraph::format::{to_dot, GraphFile};
use lensgraph::graph::{gauge_labeling, lens_labeling, skew_product, sphere_graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(2), |s| s.parse())?;
    let p: u64 = args.get(1).map_or(Ok(3), |s| s.parse())?;
    let weights: Vec<i64> = match args.get(2) {
        Some(s) => s.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![1; n],
    };
    let sphere = sphere_graph(n)?;
    let lens = lens_labeling(&sphere, p, &weights)?;
    eprintln!("{}", GraphFile::new(sphere.clone(), Some(lens.clone()))?.to_json());

    let skew = skew_product(&sphere, &lens)?;
    eprintln!("skew product: {} vertices, {} edges", skew.vertex_count(), skew.edge_count());
    print!("{}", to_dot(&skew, Some(&gauge_labeling(&skew, p)?)));
    Ok(())
}
