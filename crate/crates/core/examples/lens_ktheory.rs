//! K-groups of quantum lens spaces through the skew-product graph.
//!
//! ```bash
//! cargo run --example lens_ktheory -- 3 5 1,2,3
//! ```
//!
//! Without arguments prints a small table over n ≤ 3 and a few moduli.

use lensgraph::ktheory::lens_k_groups;

fn parse_weights(s: &str) -> Result<Vec<i64>, std::num::ParseIntError> {
    s.split(',').map(str::parse).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [n, p, w] = args.as_slice() {
        let report = lens_k_groups(n.parse()?, p.parse()?, &parse_weights(w)?)?;
        println!("{}", report.to_json());
        return Ok(());
    }
    let table: &[(usize, u64, &[i64])] = &[
        (1, 3, &[1]),
        (2, 2, &[1, 1]),
        (2, 3, &[1, 2]),
        (2, 6, &[1, 5]),
        (3, 2, &[1, 1, 1]),
        (3, 5, &[1, 2, 3]),
        (3, 7, &[1, 2, 3]),
        (4, 3, &[1, 1, 2, 2]),
    ];
    for &(n, p, weights) in table {
        let report = lens_k_groups(n, p, weights)?;
        println!("L_q({p}; {weights:?}) in dim {}: {}", 2 * n - 1, report.groups);
    }
    // weights coprime to p are required
    if let Err(e) = lens_k_groups(2, 4, &[2, 1]) {
        println!("(2, 4, [2, 1]) rejected: {e}");
    }
    Ok(())
}
