//! Invariants of graph C*-algebras of finite directed graphs.
//!
//! * [`graph`]: multigraphs, paths, ℤ_p labelings, the sphere graphs
//!   L_{2n-1}, lens labelings and skew products.
//! * [`ktheory`]: vertex matrices, integer Smith normal form and
//!   K_0 = coker(A_E), K_1 = ker(A_E).
//! * [`leavitt`]: exact Leavitt path algebra arithmetic, coactions and the
//!   canonical map Φ.
//! * [`principality`]: the gauge decision table, gauge witnesses and
//!   bounded certificate search for ℤ_p actions.
//! * [`format`]: graph JSON, DOT export and report layouts.
//!
//! ```
//! use lensgraph::graph::sphere_graph;
//! use lensgraph::ktheory::{k_groups, lens_k_groups};
//!
//! let l3 = sphere_graph(2).unwrap();
//! assert_eq!(k_groups(&l3).to_string(), "K0 = Z, K1 = Z");
//! let lens = lens_k_groups(2, 3, &[1, 2]).unwrap();
//! assert_eq!(lens.groups.to_string(), "K0 = Z (+) Z_3, K1 = Z");
//! ```

pub mod format;
pub mod graph;
pub mod ktheory;
pub mod leavitt;
pub mod linsolve;
pub mod principality;

pub use graph::{DirectedGraph, Path, ZpLabeling};
pub use ktheory::{AbelianGroup, KGroups};
pub use leavitt::{Action, AlgebraElement, LeavittAlgebra, TensorElement};
pub use principality::{Certificate, Verdict};
