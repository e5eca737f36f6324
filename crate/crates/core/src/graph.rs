//! Finite directed multigraphs, paths, ℤ_p edge labelings and the
//! generators for sphere graphs, lens labelings and skew products.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("vertex index {0} out of range")]
    InvalidVertex(usize),
    #[error("sphere graph needs n >= 1, got {0}")]
    SphereDimension(usize),
    #[error("modulus must be at least 2, got {0}")]
    Modulus(u64),
    #[error("weight {weight} not coprime to {modulus}")]
    WeightNotCoprime { weight: i64, modulus: u64 },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("graph is not the sphere graph L_{{2n-1}} for n = {0}")]
    NotSphere(usize),
    #[error("labeling has {labels} labels but the graph has {edges} edges")]
    LabelingMismatch { labels: usize, edges: usize },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A single broken graph invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    DuplicateEdge(String),
    DanglingSource { edge: String, source: usize },
    DanglingRange { edge: String, range: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex \"{v}\""),
            Violation::DuplicateEdge(e) => write!(f, "duplicate edge \"{e}\""),
            Violation::DanglingSource { edge, source } => {
                write!(f, "dangling source: edge \"{edge}\" has source index {source}")
            }
            Violation::DanglingRange { edge, range } => {
                write!(f, "dangling range: edge \"{edge}\" has range index {range}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub range: usize,
}

impl Edge {
    pub fn new(name: impl Into<String>, source: usize, range: usize) -> Self {
        Edge { name: name.into(), source, range }
    }
}

/// Checks every graph invariant and reports all violations at once.
pub fn validate(vertices: &[String], edges: &[Edge]) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for v in vertices {
        if !seen.insert(v.as_str()) {
            violations.push(Violation::DuplicateVertex(v.clone()));
        }
    }
    let mut seen = HashSet::new();
    for e in edges {
        if !seen.insert(e.name.as_str()) {
            violations.push(Violation::DuplicateEdge(e.name.clone()));
        }
        if e.source >= vertices.len() {
            violations.push(Violation::DanglingSource { edge: e.name.clone(), source: e.source });
        }
        if e.range >= vertices.len() {
            violations.push(Violation::DanglingRange { edge: e.name.clone(), range: e.range });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A finite directed multigraph. Loops and parallel edges are allowed.
///
/// Vertices and edges are addressed by their position in the construction
/// order. The adjacency lists are kept sorted by edge index, which is what
/// makes every path enumeration below lexicographic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl DirectedGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        validate(&vertices, &edges).map_err(GraphError::Invalid)?;
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source].push(i);
            in_edges[e.range].push(i);
        }
        Ok(DirectedGraph { vertices, edges, out_edges, in_edges })
    }

    pub fn empty() -> Self {
        DirectedGraph { vertices: vec![], edges: vec![], out_edges: vec![], in_edges: vec![] }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].source
    }

    pub fn range(&self, e: usize) -> usize {
        self.edges[e].range
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    /// Edges with source `v`, in increasing index order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Edges with range `v`, in increasing index order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn out_degree(&self, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.out_edges[v].len())
    }

    pub fn in_degree(&self, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.in_edges[v].len())
    }

    /// Vertices emitting no edges.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.out_edges[v].is_empty()).collect()
    }

    /// Vertices receiving no edges.
    pub fn non_receiving(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.in_edges[v].is_empty()).collect()
    }

    /// All paths of length `k` starting at `v`, lexicographic in edge indices.
    pub fn paths_from(&self, v: usize, k: usize) -> Result<Vec<Path>, GraphError> {
        self.check_vertex(v)?;
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(k);
        self.extend_forward(v, k, &mut stack, &mut |edges| {
            out.push(Path { base: v, edges: edges.to_vec() })
        });
        Ok(out)
    }

    fn extend_forward(
        &self,
        at: usize,
        remaining: usize,
        stack: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if remaining == 0 {
            emit(stack);
            return;
        }
        for &e in &self.out_edges[at] {
            stack.push(e);
            self.extend_forward(self.edges[e].range, remaining - 1, stack, emit);
            stack.pop();
        }
    }

    /// All paths of length `k` ending at `v`, lexicographic in edge indices.
    pub fn paths_to(&self, v: usize, k: usize) -> Result<Vec<Path>, GraphError> {
        self.check_vertex(v)?;
        if k == 0 {
            return Ok(vec![Path::trivial(v)]);
        }
        let mut out = Vec::new();
        let mut rev = Vec::with_capacity(k);
        self.extend_backward(v, k, &mut rev, &mut out);
        out.sort();
        Ok(out)
    }

    fn extend_backward(&self, at: usize, remaining: usize, rev: &mut Vec<usize>, out: &mut Vec<Path>) {
        if remaining == 0 {
            let edges: Vec<usize> = rev.iter().rev().copied().collect();
            out.push(Path { base: at, edges });
            return;
        }
        for &e in &self.in_edges[at] {
            rev.push(e);
            self.extend_backward(self.edges[e].source, remaining - 1, rev, out);
            rev.pop();
        }
    }

    /// Builds a path from edge indices, checking that consecutive edges compose.
    pub fn path(&self, edges: &[usize]) -> Option<Path> {
        let first = *edges.first()?;
        if first >= self.edge_count() {
            return None;
        }
        for w in edges.windows(2) {
            if w[1] >= self.edge_count() || self.range(w[0]) != self.source(w[1]) {
                return None;
            }
        }
        Some(Path { base: self.source(first), edges: edges.to_vec() })
    }

    /// Whether `path` is a valid path of this graph.
    pub fn contains_path(&self, path: &Path) -> bool {
        if path.base >= self.vertex_count() {
            return false;
        }
        let mut at = path.base;
        for &e in &path.edges {
            if e >= self.edge_count() || self.source(e) != at {
                return false;
            }
            at = self.range(e);
        }
        true
    }

    pub fn path_range(&self, path: &Path) -> usize {
        path.edges.last().map_or(path.base, |&e| self.range(e))
    }

    /// Disjoint union; names of the second graph get `suffix` appended.
    pub fn disjoint_union(&self, other: &DirectedGraph, suffix: &str) -> DirectedGraph {
        let shift = self.vertex_count();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| format!("{v}{suffix}")));
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| Edge::new(format!("{}{suffix}", e.name), e.source + shift, e.range + shift)),
        );
        DirectedGraph::new(vertices, edges).expect("disjoint union of valid graphs is valid")
    }
}

/// A finite path. The empty path at `base` stands for the vertex projection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub base: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { base: v, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Whether `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.base == other.base && other.edges.starts_with(&self.edges)
    }

    /// The remainder of `other` after removing the prefix `self`.
    /// `end` is the vertex where the prefix ends.
    pub fn strip_from(&self, other: &Path, end: usize) -> Option<Path> {
        if !self.is_prefix_of(other) {
            return None;
        }
        Some(Path { base: end, edges: other.edges[self.edges.len()..].to_vec() })
    }

    /// Concatenation; the caller guarantees `tail` starts where `self` ends.
    pub fn concat(&self, tail: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&tail.edges);
        Path { base: self.base, edges }
    }

    pub fn display<'a>(&'a self, graph: &'a DirectedGraph) -> impl fmt::Display + 'a {
        PathDisplay { path: self, graph }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges.cmp(&other.edges).then(self.base.cmp(&other.base))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a DirectedGraph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return write!(f, "{}", self.graph.vertex_name(self.path.base));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(&self.graph.edge(e).name)?;
        }
        Ok(())
    }
}

/// A ℤ_p-valued labeling of the edges of a graph, stored as canonical residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpLabeling {
    modulus: u64,
    labels: Vec<u64>,
}

impl ZpLabeling {
    /// Labels may be arbitrary integers; they are reduced mod `modulus`.
    pub fn new(modulus: u64, labels: &[i64]) -> Result<Self, GraphError> {
        if modulus < 2 {
            return Err(GraphError::Modulus(modulus));
        }
        let labels = labels.iter().map(|&l| reduce(l, modulus)).collect();
        Ok(ZpLabeling { modulus, labels })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self, e: usize) -> u64 {
        self.labels[e]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Sum of labels along a path, mod p.
    pub fn path_label(&self, path: &Path) -> u64 {
        path.edges.iter().fold(0, |acc, &e| (acc + self.labels[e]) % self.modulus)
    }

    pub fn check_graph(&self, graph: &DirectedGraph) -> Result<(), GraphError> {
        if self.labels.len() == graph.edge_count() {
            Ok(())
        } else {
            Err(GraphError::LabelingMismatch { labels: self.labels.len(), edges: graph.edge_count() })
        }
    }
}

pub(crate) fn reduce(x: i64, modulus: u64) -> u64 {
    (x as i128).rem_euclid(modulus as i128) as u64
}

/// The graph L_{2n-1}: vertices v1..vn and an edge e{i},{j} from v_i to v_j
/// for every i <= j.
pub fn sphere_graph(n: usize) -> Result<DirectedGraph, GraphError> {
    if n < 1 {
        return Err(GraphError::SphereDimension(n));
    }
    let vertices = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            edges.push(Edge::new(format!("e{},{}", i + 1, j + 1), i, j));
        }
    }
    DirectedGraph::new(vertices, edges)
}

/// Labels e_{i,j} by m_i mod p. Every weight must be a unit mod p.
pub fn lens_labeling(graph: &DirectedGraph, p: u64, weights: &[i64]) -> Result<ZpLabeling, GraphError> {
    if p < 2 {
        return Err(GraphError::Modulus(p));
    }
    let n = graph.vertex_count();
    if weights.len() != n {
        return Err(GraphError::WeightCount { expected: n, got: weights.len() });
    }
    if n == 0 || *graph != sphere_graph(n)? {
        return Err(GraphError::NotSphere(n));
    }
    for &w in weights {
        if reduce(w, p).gcd(&p) != 1 {
            return Err(GraphError::WeightNotCoprime { weight: w, modulus: p });
        }
    }
    let labels: Vec<i64> = graph.edges().iter().map(|e| weights[e.source]).collect();
    ZpLabeling::new(p, &labels)
}

/// Every edge labeled 1: the restriction of the gauge action to ℤ_p.
pub fn gauge_labeling(graph: &DirectedGraph, p: u64) -> Result<ZpLabeling, GraphError> {
    ZpLabeling::new(p, &vec![1; graph.edge_count()])
}

/// Skew product E ×_c ℤ_p.
///
/// Vertex (v, m) has index `v * p + m`, edge (e, m) has index `e * p + m`;
/// (e, m) runs from (s(e), m - c(e)) to (r(e), m).
pub fn skew_product(graph: &DirectedGraph, labeling: &ZpLabeling) -> Result<DirectedGraph, GraphError> {
    labeling.check_graph(graph)?;
    let p = labeling.modulus();
    let pu = p as usize;
    let mut vertices = Vec::with_capacity(graph.vertex_count() * pu);
    for v in graph.vertices() {
        for m in 0..p {
            vertices.push(format!("({v},{m})"));
        }
    }
    let mut edges = Vec::with_capacity(graph.edge_count() * pu);
    for (i, e) in graph.edges().iter().enumerate() {
        let c = labeling.label(i);
        for m in 0..p {
            let from = (m + p - c) % p;
            edges.push(Edge::new(
                format!("({},{m})", e.name),
                e.source * pu + from as usize,
                e.range * pu + m as usize,
            ));
        }
    }
    DirectedGraph::new(vertices, edges)
}

/// A random multigraph with at most `max_vertices` vertices and `max_edges`
/// edges. Used by the seeded property suites.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, max_edges: usize) -> DirectedGraph {
    let n = rng.gen_range(0..=max_vertices);
    if n == 0 {
        return DirectedGraph::empty();
    }
    let m = rng.gen_range(0..=max_edges);
    let vertices = (0..n).map(|i| format!("u{i}")).collect();
    let edges = (0..m)
        .map(|i| Edge::new(format!("f{i}"), rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    DirectedGraph::new(vertices, edges).expect("random graph is valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l3() -> DirectedGraph {
        sphere_graph(2).unwrap()
    }

    fn edges_of(paths: &[Path]) -> Vec<Vec<usize>> {
        paths.iter().map(|p| p.edges.clone()).collect()
    }

    #[test]
    fn validate_reports_every_violation() {
        assert!(validate(&[], &[]).is_ok());
        let l3 = l3();
        assert!(validate(l3.vertices(), l3.edges()).is_ok());

        let vs = vec!["a".to_string(), "a".to_string()];
        let es = vec![Edge::new("x", 5, 0), Edge::new("x", 0, 7)];
        let errs = validate(&vs, &es).unwrap_err();
        assert_eq!(errs.len(), 4);
        assert!(errs.iter().any(|v| v.to_string().starts_with("dangling source")));
        assert!(errs.iter().any(|v| v.to_string().starts_with("dangling range")));
        assert!(DirectedGraph::new(vs, es).is_err());
    }

    #[test]
    fn degrees_and_sinks() {
        let g = l3();
        // edges: 0 = e1,1  1 = e1,2  2 = e2,2
        assert_eq!(g.out_degree(0).unwrap(), 2);
        assert_eq!(g.in_degree(1).unwrap(), 2);
        assert!(g.sinks().is_empty());
        assert!(g.non_receiving().is_empty());
        assert_eq!(g.out_degree(9), Err(GraphError::InvalidVertex(9)));

        let single = DirectedGraph::new(vec!["v".into()], vec![]).unwrap();
        assert_eq!(single.sinks(), vec![0]);
        assert_eq!(single.non_receiving(), vec![0]);
    }

    #[test]
    fn path_enumeration_on_l3() {
        let g = l3();
        let from = g.paths_from(0, 2).unwrap();
        assert_eq!(edges_of(&from), vec![vec![0, 0], vec![0, 1], vec![1, 2]]);
        let to = g.paths_to(1, 1).unwrap();
        assert_eq!(edges_of(&to), vec![vec![1], vec![2]]);
        assert_eq!(g.paths_from(1, 0).unwrap(), vec![Path::trivial(1)]);
        assert_eq!(g.paths_to(0, 0).unwrap(), vec![Path::trivial(0)]);
        assert!(g.paths_from(3, 1).is_err());
        for p in g.paths_to(1, 3).unwrap() {
            assert!(g.contains_path(&p));
            assert_eq!(g.path_range(&p), 1);
        }
    }

    #[test]
    fn sphere_graphs() {
        let g1 = sphere_graph(1).unwrap();
        assert_eq!((g1.vertex_count(), g1.edge_count()), (1, 1));
        assert_eq!(g1.edge(0).source, g1.edge(0).range);
        let g3 = sphere_graph(3).unwrap();
        assert_eq!(g3.edge_count(), 6);
        let outs: Vec<_> = (0..3).map(|v| g3.out_degree(v).unwrap()).collect();
        assert_eq!(outs, vec![3, 2, 1]);
        assert_eq!(g3.edge(1).name, "e1,2");
        assert!(sphere_graph(0).is_err());
    }

    #[test]
    fn labelings() {
        let g = l3();
        assert_eq!(lens_labeling(&g, 2, &[1, 1]).unwrap().labels(), &[1, 1, 1]);
        assert_eq!(lens_labeling(&g, 3, &[1, 2]).unwrap().labels(), &[1, 1, 2]);
        assert_eq!(lens_labeling(&g, 3, &[4, -1]).unwrap().labels(), &[1, 1, 2]);
        let err = lens_labeling(&g, 4, &[2, 1]).unwrap_err();
        assert_eq!(err.to_string(), "weight 2 not coprime to 4");
        assert!(matches!(lens_labeling(&g, 3, &[1]), Err(GraphError::WeightCount { .. })));
        assert!(lens_labeling(&g, 1, &[1, 1]).is_err());

        assert_eq!(gauge_labeling(&g, 2).unwrap().labels(), &[1, 1, 1]);
        assert!(gauge_labeling(&DirectedGraph::empty(), 3).unwrap().labels().is_empty());
        let s3 = sphere_graph(3).unwrap();
        assert_eq!(gauge_labeling(&s3, 5).unwrap().labels(), &[1; 6]);
        assert!(gauge_labeling(&g, 1).is_err());
    }

    #[test]
    fn skew_product_examples() {
        let g = l3();
        let sk = skew_product(&g, &gauge_labeling(&g, 2).unwrap()).unwrap();
        assert_eq!((sk.vertex_count(), sk.edge_count()), (4, 6));
        // (e1,2, 0) is edge index 1*2+0
        let e = sk.edge(2);
        assert_eq!(e.name, "(e1,2,0)");
        assert_eq!(sk.vertex_name(e.source), "(v1,1)");
        assert_eq!(sk.vertex_name(e.range), "(v2,0)");

        let lens = lens_labeling(&g, 3, &[1, 2]).unwrap();
        let sk = skew_product(&g, &lens).unwrap();
        assert_eq!((sk.vertex_count(), sk.edge_count()), (6, 9));
        let e = sk.edge(6);
        assert_eq!(e.name, "(e2,2,0)");
        assert_eq!(sk.vertex_name(e.source), "(v2,1)");
        assert_eq!(sk.vertex_name(e.range), "(v2,0)");

        let zero = ZpLabeling::new(2, &[0, 0, 0]).unwrap();
        let sk = skew_product(&g, &zero).unwrap();
        for e in sk.edges() {
            assert_eq!(e.source % 2, e.range % 2);
        }
        assert!(skew_product(&g, &ZpLabeling::new(2, &[0]).unwrap()).is_err());
    }
}
