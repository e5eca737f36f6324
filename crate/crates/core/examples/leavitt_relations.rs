//! Symbolic computation in the Leavitt path algebra of L_3.
//!
//! ```bash
//! cargo run --example leavitt_relations
//! ```

use lensgraph::graph::{lens_labeling, sphere_graph};
use lensgraph::leavitt::{rational, Action, AlgebraElement, LeavittAlgebra};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = sphere_graph(2)?;
    let alg = LeavittAlgebra::new(&g);
    let edge = |name: &str| g.edges().iter().position(|e| e.name == name).expect("edge of L_3");
    let (e11, e12, e22) = (edge("e1,1"), edge("e1,2"), edge("e2,2"));

    for e in [e11, e12, e22] {
        let lhs = alg.multiply(&AlgebraElement::edge_adjoint(&g, e), &AlgebraElement::edge(&g, e))?;
        println!("S_{0}* S_{0} = {1}", g.edge(e).name, alg.render(&lhs));
    }

    // P_v1 expands over the edges leaving v1
    let p1 = AlgebraElement::vertex(0);
    println!("P_v1 at level 1 = {}", alg.render(&alg.normalize(&p1, 1)?));
    println!("P_v1 at level 2 = {}", alg.render(&alg.normalize(&p1, 2)?));

    // S_{e12}* S_{e11} = 0: orthogonal ranges
    let cross = alg.multiply(&AlgebraElement::edge_adjoint(&g, e12), &AlgebraElement::edge(&g, e11))?;
    println!("S_e1,2* S_e1,1 = {}", alg.render(&cross));

    let one = AlgebraElement::unit(&g);
    let x = AlgebraElement::edge(&g, e12).scale(&rational(3)) + AlgebraElement::edge_adjoint(&g, e22);
    let xx = alg.multiply(&x, &alg.multiply(&one, &x)?)?;
    println!("x = {}\nx * 1 * x = {}", alg.render(&x), alg.render(&xx));
    println!("x* = {}", alg.render(&x.adjoint()));

    let lens = lens_labeling(&g, 3, &[1, 2])?;
    for (name, action) in [("gauge", Action::Gauge), ("Z_3 lens", Action::Cyclic(&lens))] {
        println!("{name} coaction of x: {}", alg.render_tensor(&alg.coaction(&x, action)?));
    }
    Ok(())
}
