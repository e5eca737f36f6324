//! Certificates that the ℤ_p action defining a quantum lens space is principal.
//!
//! ```bash
//! cargo run --example zp_certificates -- 3 7 1,2,3
//! ```
//!
//! Arguments: n, p, comma-separated weights. Certifies every target
//! P_v ⊗ χ^k twice: on L_{2n-1} with the lens labeling, and on the skew
//! product L_{2n-1} ×_c ℤ_p with its gauge ℤ_p labeling.

use std::time::Instant;

use lensgraph::graph::{gauge_labeling, lens_labeling, skew_product, sphere_graph};
use lensgraph::leavitt::{Action, LeavittAlgebra};
use lensgraph::principality::{certify_zp, loop_criterion, CertifyOptions};

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
    println!("loop criterion on L_{}: {:?}", 2 * n - 1, loop_criterion(&sphere, &lens)?.is_satisfied());

    let start = Instant::now();
    let result = certify_zp(&sphere, &lens, CertifyOptions::new(p as usize))?;
    println!(
        "sphere with lens labeling: {} targets, all certified = {} ({:.2?})",
        result.outcomes.len(),
        result.all_certified(),
        start.elapsed()
    );
    let alg = LeavittAlgebra::new(&sphere);
    for o in result.outcomes.iter().take(p as usize) {
        if let Some(c) = &o.certificate {
            for pair in &c.pairs {
                println!(
                    "  {} * Phi({} (x) {}) -> {}",
                    pair.coefficient,
                    alg.render(&pair.x),
                    alg.render(&pair.y),
                    alg.render_tensor(&alg.phi(&pair.x, &pair.y, Action::Cyclic(&lens))?)
                );
            }
        }
    }

    let skew = skew_product(&sphere, &lens)?;
    let gauge = gauge_labeling(&skew, p)?;
    let start = Instant::now();
    let result = certify_zp(&skew, &gauge, CertifyOptions { jobs: 0, ..CertifyOptions::new(p as usize) })?;
    println!(
        "skew product ({} vertices) with gauge labeling: {} targets, all certified = {} ({:.2?})",
        skew.vertex_count(),
        result.outcomes.len(),
        result.all_certified(),
        start.elapsed()
    );
    Ok(())
}
