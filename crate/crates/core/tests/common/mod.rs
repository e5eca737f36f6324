//! Independent oracles shared by the integration suites. Nothing here calls
//! the Smith normal form or certificate search under test.

#![allow(dead_code)]

use lensgraph::graph::{DirectedGraph, Path};
use lensgraph::leavitt::Monomial;

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => {
            let mut total = 0i128;
            for (j, &a) in m[0].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total += sign * a * cofactor_det(&minor);
            }
            total
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1},
/// where D_k is the gcd of all k×k minors. Returns the nonzero factors,
/// so their count is the rank.
pub fn invariant_factors_oracle(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut dk = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                dk = gcd(dk, cofactor_det(&minor));
            }
        }
        if dk == 0 {
            break;
        }
        factors.push(dk / prev);
        prev = dk;
    }
    factors
}

/// K-groups (free rank, torsion, kernel rank) of a graph straight from the
/// definition of its vertex matrix and the determinantal-divisor oracle.
pub fn k_groups_oracle(graph: &DirectedGraph) -> (usize, Vec<i128>, usize) {
    let n = graph.vertex_count();
    let emitters: Vec<usize> = (0..n).filter(|&v| graph.edges().iter().any(|e| e.source == v)).collect();
    let mut m = vec![vec![0i64; emitters.len()]; n];
    for (c, &v) in emitters.iter().enumerate() {
        m[v][c] -= 1;
        for e in graph.edges().iter().filter(|e| e.source == v) {
            m[e.range][c] += 1;
        }
    }
    let factors = invariant_factors_oracle(&m);
    let rank = factors.len();
    let torsion = factors.into_iter().filter(|&d| d.abs() > 1).map(i128::abs).collect();
    (n - rank, torsion, emitters.len() - rank)
}

/// Every path of length ≤ max_len, by brute force over edge sequences.
pub fn all_paths(graph: &DirectedGraph, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..graph.vertex_count()).map(Path::trivial).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (e, edge) in graph.edges().iter().enumerate() {
                let end = p.edges.last().map_or(p.base, |&l| graph.edge(l).range);
                if edge.source == end {
                    let mut q = p.clone();
                    q.edges.push(e);
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every monomial S_μ S_ν* with |μ|, |ν| ≤ max_len.
pub fn all_monomials(graph: &DirectedGraph, max_len: usize) -> Vec<Monomial> {
    let paths = all_paths(graph, max_len);
    let mut out = Vec::new();
    for mu in &paths {
        for nu in &paths {
            if let Ok(m) = Monomial::new(graph, mu.clone(), nu.clone()) {
                out.push(m);
            }
        }
    }
    out
}

pub fn two_cycle() -> DirectedGraph {
    use lensgraph::graph::Edge;
    DirectedGraph::new(vec!["a".into(), "b".into()], vec![Edge::new("f", 0, 1), Edge::new("g", 1, 0)]).unwrap()
}

/// A random path of length ≤ max_len starting at a random vertex; the
/// graph must have no sinks.
pub fn random_path<R: rand::Rng>(rng: &mut R, graph: &DirectedGraph, max_len: usize) -> Path {
    let v = rng.gen_range(0..graph.vertex_count());
    let len = rng.gen_range(0..=max_len);
    let mut p = Path::trivial(v);
    let mut at = v;
    for _ in 0..len {
        let outs = graph.out_edges(at);
        let e = outs[rng.gen_range(0..outs.len())];
        p.edges.push(e);
        at = graph.range(e);
    }
    p
}

/// A random monomial S_μ S_ν* with matching ranges.
pub fn random_monomial<R: rand::Rng>(rng: &mut R, graph: &DirectedGraph, max_len: usize) -> Monomial {
    let mu = random_path(rng, graph, max_len);
    let end = graph.path_range(&mu);
    let len = rng.gen_range(0..=max_len);
    let candidates = graph.paths_to(end, len).unwrap();
    let nu = if candidates.is_empty() {
        Path::trivial(end)
    } else {
        candidates[rng.gen_range(0..candidates.len())].clone()
    };
    Monomial::new(graph, mu, nu).unwrap()
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn rational_det(m: &[Vec<num_bigint::BigInt>]) -> num_bigint::BigInt {
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return num_bigint::BigInt::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det.to_integer()
}
