//! Principality of gauge and ℤ_p actions on graph algebras.
//!
//! An action is principal when `Φ(x ⊗ y) = (x ⊗ 1) δ(y)` has dense range;
//! on a finite graph it suffices that every `P_v ⊗ z^k` (resp. `P_v ⊗ χ^k`)
//! lies in the range. A [`Certificate`] is a finite combination of pairs
//! whose Φ-image is exactly such a target, and can be rechecked through
//! [`LeavittAlgebra`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{DirectedGraph, GraphError, Path, ZpLabeling};
use crate::leavitt::{Action, AlgebraElement, AlgebraError, CharGroup, LeavittAlgebra, Monomial, Rational, TensorElement};
use crate::linsolve;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("graph has a sink at vertex \"{0}\"")]
    Sink(String),
    #[error("gauge action is not known to be principal here: {0}")]
    NotPrincipal(Verdict),
    #[error("no path of length {length} ends at vertex {vertex}")]
    NoPath { vertex: usize, length: usize },
    #[error("max_len must be at least 1")]
    MaxLen,
    #[error("search at vertex {vertex} exceeded the budget of {cap} monomial pairs per target")]
    ResourceExceeded { vertex: usize, cap: usize },
    #[error("certificate for ({vertex}, {exponent}) failed its recheck")]
    RecheckFailed { vertex: usize, exponent: i64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Principal,
    NotPrincipal,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    /// Every vertex emits and receives an edge.
    EmitsAndReceives,
    /// A vertex emitting no edges.
    Sink { vertex: usize },
    /// All vertices emit, but this one receives nothing.
    NonReceiving { vertex: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub reason: Reason,
}

impl Verdict {
    pub fn witness(&self) -> Option<usize> {
        match self.reason {
            Reason::EmitsAndReceives => None,
            Reason::Sink { vertex } | Reason::NonReceiving { vertex } => Some(vertex),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason {
            Reason::EmitsAndReceives => f.write_str("principal: every vertex emits and receives an edge"),
            Reason::Sink { vertex } => write!(f, "not principal: vertex {vertex} emits no edges"),
            Reason::NonReceiving { vertex } => write!(
                f,
                "inconclusive: vertex {vertex} receives no edges; neither the sufficient \
                 condition nor the sink obstruction applies"
            ),
        }
    }
}

/// Decision table for the gauge circle action on a finite graph.
pub fn check_gauge(graph: &DirectedGraph) -> Verdict {
    if let Some(&vertex) = graph.sinks().first() {
        return Verdict { status: Status::NotPrincipal, reason: Reason::Sink { vertex } };
    }
    if let Some(&vertex) = graph.non_receiving().first() {
        return Verdict { status: Status::Inconclusive, reason: Reason::NonReceiving { vertex } };
    }
    Verdict { status: Status::Principal, reason: Reason::EmitsAndReceives }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificatePair {
    pub x: AlgebraElement,
    pub y: AlgebraElement,
    pub coefficient: Rational,
}

/// `Σ coefficient · Φ(x ⊗ y) = P_vertex ⊗ (character)^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub vertex: usize,
    pub exponent: i64,
    pub group: CharGroup,
    pub pairs: Vec<CertificatePair>,
}

impl Certificate {
    pub fn target(&self) -> TensorElement {
        TensorElement::simple(&AlgebraElement::vertex(self.vertex), self.exponent, self.group)
    }

    /// `Σ coefficient · Φ(x ⊗ y)`.
    pub fn image(&self, graph: &DirectedGraph, action: Action<'_>) -> Result<TensorElement, AlgebraError> {
        if action.group() != self.group {
            return Err(AlgebraError::GroupMismatch);
        }
        let alg = LeavittAlgebra::new(graph);
        let mut sum = TensorElement::zero(self.group);
        for pair in &self.pairs {
            let image = alg.phi(&pair.x, &pair.y, action)?;
            sum = sum.add(&image.scale(&pair.coefficient))?;
        }
        Ok(sum)
    }

    /// Re-evaluates every pair through Φ and compares with the target in
    /// normal form.
    pub fn recheck(&self, graph: &DirectedGraph, action: Action<'_>) -> Result<bool, AlgebraError> {
        let image = self.image(graph, action)?;
        LeavittAlgebra::new(graph).equals_tensor(&image, &self.target())
    }
}

/// Witness for `P_v ⊗ z^k` under the gauge action.
///
/// k > 0: `(S_α*, S_α)` for the first length-k path α ending at v.
/// k < 0: `Σ (S_β, S_β*)` over all length-|k| paths β starting at v.
/// k = 0: `(P_v, P_v)`.
pub fn gauge_witness(graph: &DirectedGraph, v: usize, k: i64) -> Result<Certificate, CertifyError> {
    graph.out_degree(v)?;
    let verdict = check_gauge(graph);
    if verdict.status != Status::Principal {
        return Err(CertifyError::NotPrincipal(verdict));
    }
    let one = Rational::one();
    let length = k.unsigned_abs() as usize;
    let pairs = match k.signum() {
        0 => vec![CertificatePair { x: AlgebraElement::vertex(v), y: AlgebraElement::vertex(v), coefficient: one }],
        1 => {
            let alpha = graph
                .paths_to(v, length)?
                .into_iter()
                .next()
                .ok_or(CertifyError::NoPath { vertex: v, length })?;
            vec![CertificatePair {
                x: AlgebraElement::path_adjoint(graph, &alpha),
                y: AlgebraElement::path(graph, &alpha),
                coefficient: one,
            }]
        }
        _ => graph
            .paths_from(v, length)?
            .into_iter()
            .map(|beta| CertificatePair {
                x: AlgebraElement::path(graph, &beta),
                y: AlgebraElement::path_adjoint(graph, &beta),
                coefficient: one.clone(),
            })
            .collect(),
    };
    Ok(Certificate { vertex: v, exponent: k, group: CharGroup::Integers, pairs })
}

/// A cycle based at a vertex whose label sum is a unit mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitCycle {
    pub path: Path,
    pub label: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopCriterion {
    /// One shortest qualifying cycle per vertex, in vertex order.
    Satisfied(Vec<UnitCycle>),
    Failing { vertex: usize },
}

impl LoopCriterion {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, LoopCriterion::Satisfied(_))
    }
}

/// Looks for a cycle at every vertex whose label sum is invertible mod p.
///
/// Breadth-first search over (vertex, label sum) states, so the cycle found
/// is a shortest one and never longer than |E^0|·p.
pub fn loop_criterion(graph: &DirectedGraph, labeling: &ZpLabeling) -> Result<LoopCriterion, GraphError> {
    labeling.check_graph(graph)?;
    let mut cycles = Vec::with_capacity(graph.vertex_count());
    for v in 0..graph.vertex_count() {
        match shortest_unit_cycle(graph, labeling, v) {
            Some(c) => cycles.push(c),
            None => return Ok(LoopCriterion::Failing { vertex: v }),
        }
    }
    Ok(LoopCriterion::Satisfied(cycles))
}

fn shortest_unit_cycle(graph: &DirectedGraph, labeling: &ZpLabeling, v: usize) -> Option<UnitCycle> {
    let p = labeling.modulus();
    let pu = p as usize;
    let state = |w: usize, s: u64| w * pu + s as usize;
    // parent[state] = (previous state, edge)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; graph.vertex_count() * pu];
    let mut seen = vec![false; graph.vertex_count() * pu];
    let mut queue = std::collections::VecDeque::new();
    seen[state(v, 0)] = true;
    queue.push_back((v, 0u64));
    while let Some((w, s)) = queue.pop_front() {
        for &e in graph.out_edges(w) {
            let t = (s + labeling.label(e)) % p;
            let r = graph.range(e);
            if r == v && t.gcd(&p) == 1 {
                let mut edges = vec![e];
                let mut cur = state(w, s);
                while let Some((prev, edge)) = parent[cur] {
                    edges.push(edge);
                    cur = prev;
                }
                edges.reverse();
                return Some(UnitCycle { path: Path { base: v, edges }, label: t });
            }
            let st = state(r, t);
            if !seen[st] {
                seen[st] = true;
                parent[st] = Some((state(w, s), e));
                queue.push_back((r, t));
            }
        }
    }
    None
}

/// Certificate for `P_v ⊗ χ^k` from powers of a unit cycle:
/// `Φ(S_c^{*j} ⊗ S_c^j) = P_v ⊗ χ^{j·c}` with `j·c ≡ k`.
pub fn cycle_certificate(
    graph: &DirectedGraph,
    labeling: &ZpLabeling,
    cycle: &UnitCycle,
    k: i64,
) -> Certificate {
    let p = labeling.modulus() as i64;
    let group = CharGroup::Cyclic(labeling.modulus());
    let k = group.canonical(k);
    let inverse = BigInt::from(cycle.label as i64)
        .extended_gcd(&BigInt::from(p))
        .x;
    let j = (inverse * k).mod_floor(&BigInt::from(p));
    let j: usize = j.try_into().expect("residue fits");
    let v = cycle.path.base;
    let pair = if j == 0 {
        CertificatePair { x: AlgebraElement::vertex(v), y: AlgebraElement::vertex(v), coefficient: Rational::one() }
    } else {
        let mut power = Path::trivial(v);
        for _ in 0..j {
            power = power.concat(&cycle.path);
        }
        CertificatePair {
            x: AlgebraElement::path_adjoint(graph, &power),
            y: AlgebraElement::path(graph, &power),
            coefficient: Rational::one(),
        }
    };
    Certificate { vertex: v, exponent: k, group, pairs: vec![pair] }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Longest path allowed in any of μ, ν, σ, τ.
    pub max_len: usize,
    /// Budget of candidate monomial pairs per target.
    pub max_pairs: usize,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl CertifyOptions {
    pub const DEFAULT_MAX_PAIRS: usize = 20_000;

    pub fn new(max_len: usize) -> Self {
        CertifyOptions { max_len, max_pairs: Self::DEFAULT_MAX_PAIRS, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetOutcome {
    pub vertex: usize,
    pub exponent: i64,
    /// `None` means no certificate within the bound, which does not prove
    /// the action is not principal.
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpCertification {
    pub modulus: u64,
    pub max_len: usize,
    pub outcomes: Vec<TargetOutcome>,
}

impl ZpCertification {
    pub fn all_certified(&self) -> bool {
        self.outcomes.iter().all(|o| o.certificate.is_some())
    }

    pub fn not_found(&self) -> impl Iterator<Item = &TargetOutcome> {
        self.outcomes.iter().filter(|o| o.certificate.is_none())
    }
}

/// Bounded search for certificates of every target `P_v ⊗ χ^k`.
///
/// Since `(P_v ⊗ 1) Φ(x ⊗ y) (P_v ⊗ 1) = Φ(P_v x ⊗ y P_v)`, and Φ respects
/// both the χ-grading and the gauge grading, a certificate may be assumed
/// to use pairs `(S_μ S_ν*, S_σ S_τ*)` with `s(μ) = s(τ) = v`, exponent
/// `k`, and a product that is a diagonal projection `S_α S_α*`
/// (off-diagonal products never touch the diagonal coordinates of the
/// normal form). Such a pair is determined by α, a split `α = head·tail`
/// and a path `other` into `r(head)`:
///
/// ```text
/// σ = ν σ':  x = S_head S_other*,        y = S_{other·tail} S_α*
/// ν = σ ν':  x = S_α S_{other·tail}*,    y = S_other S_head*     (tail ≠ ∅)
/// ```
///
/// both with exponent `c(other) − c(head)` and total path length
/// `2(|α| + |other|)`. Pairs with the same α and exponent have the same
/// Φ-image, so only the first one in (total length, lexicographic) order is
/// kept. After each total-length layer the solver checks whether `P_v` is in
/// the span; the first layer that succeeds yields the certificate, which is
/// rechecked through [`Certificate::recheck`] before it is returned.
pub fn certify_zp(
    graph: &DirectedGraph,
    labeling: &ZpLabeling,
    options: CertifyOptions,
) -> Result<ZpCertification, CertifyError> {
    labeling.check_graph(graph)?;
    if let Some(&v) = graph.sinks().first() {
        return Err(CertifyError::Sink(graph.vertex_name(v).to_string()));
    }
    if options.max_len == 0 {
        return Err(CertifyError::MaxLen);
    }
    let incoming = IncomingPaths::new(graph, labeling, options.max_len);
    let p = labeling.modulus() as i64;
    let targets: Vec<(usize, i64)> =
        (0..graph.vertex_count()).flat_map(|v| (0..p).map(move |k| (v, k))).collect();
    let search = |&(v, k): &(usize, i64)| -> Result<TargetOutcome, CertifyError> {
        let certificate = TargetSearch::new(graph, labeling, &incoming, v, k, options).run()?;
        Ok(TargetOutcome { vertex: v, exponent: k, certificate })
    };
    let outcomes: Vec<Result<TargetOutcome, CertifyError>> = if options.jobs == 1 {
        targets.iter().map(search).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| CertifyError::ThreadPool(e.to_string()))?;
        pool.install(|| targets.par_iter().map(search).collect())
    };
    Ok(ZpCertification {
        modulus: labeling.modulus(),
        max_len: options.max_len,
        outcomes: outcomes.into_iter().collect::<Result<_, _>>()?,
    })
}

/// `best[len][w][r]`: the lexicographically first path of length `len`
/// ending at `w` whose label sum is `r` mod p.
struct IncomingPaths {
    best: Vec<Vec<Vec<Option<Path>>>>,
}

impl IncomingPaths {
    fn new(graph: &DirectedGraph, labeling: &ZpLabeling, max_len: usize) -> Self {
        let p = labeling.modulus() as usize;
        let n = graph.vertex_count();
        let mut best = Vec::with_capacity(max_len + 1);
        let mut level: Vec<Vec<Option<Path>>> =
            (0..n).map(|w| (0..p).map(|r| (r == 0).then(|| Path::trivial(w))).collect()).collect();
        best.push(level.clone());
        for _ in 0..max_len {
            let mut next: Vec<Vec<Option<Path>>> = vec![vec![None; p]; n];
            for w in 0..n {
                for &e in graph.in_edges(w) {
                    let c = labeling.label(e) as usize;
                    for r in 0..p {
                        let Some(prefix) = &level[graph.source(e)][(r + p - c) % p] else {
                            continue;
                        };
                        let mut path = prefix.clone();
                        path.edges.push(e);
                        let slot = &mut next[w][r];
                        if slot.as_ref().is_none_or(|cur| path < *cur) {
                            *slot = Some(path);
                        }
                    }
                }
            }
            best.push(next.clone());
            level = next;
        }
        IncomingPaths { best }
    }

    fn get(&self, len: usize, w: usize, residue: u64) -> Option<&Path> {
        self.best[len][w][residue as usize].as_ref()
    }
}

/// One pair `(S_μ S_ν*, S_σ S_τ*)` whose product is `S_α S_α*`.
#[derive(Debug, Clone)]
struct Candidate {
    mu: Path,
    nu: Path,
    sigma: Path,
    tau: Path,
}

impl Candidate {
    fn key(&self) -> (usize, &[usize], &[usize], &[usize], &[usize]) {
        let total = self.mu.len() + self.nu.len() + self.sigma.len() + self.tau.len();
        (total, &self.mu.edges, &self.nu.edges, &self.sigma.edges, &self.tau.edges)
    }

    fn into_pair(self, coefficient: Rational) -> CertificatePair {
        CertificatePair {
            x: Monomial::from_parts(self.mu, self.nu).into(),
            y: Monomial::from_parts(self.sigma, self.tau).into(),
            coefficient,
        }
    }
}

struct TargetSearch<'a> {
    graph: &'a DirectedGraph,
    labeling: &'a ZpLabeling,
    incoming: &'a IncomingPaths,
    vertex: usize,
    exponent: i64,
    options: CertifyOptions,
    /// paths from the target vertex, by length, filled on demand
    outgoing: Vec<Vec<Path>>,
}

impl<'a> TargetSearch<'a> {
    fn new(
        graph: &'a DirectedGraph,
        labeling: &'a ZpLabeling,
        incoming: &'a IncomingPaths,
        vertex: usize,
        exponent: i64,
        options: CertifyOptions,
    ) -> Self {
        TargetSearch { graph, labeling, incoming, vertex, exponent, options, outgoing: Vec::new() }
    }

    fn outgoing(&mut self, len: usize) -> Result<&[Path], CertifyError> {
        while self.outgoing.len() <= len {
            let next = self.graph.paths_from(self.vertex, self.outgoing.len())?;
            if next.len() > self.options.max_pairs {
                return Err(CertifyError::ResourceExceeded { vertex: self.vertex, cap: self.options.max_pairs });
            }
            self.outgoing.push(next);
        }
        Ok(&self.outgoing[len])
    }

    /// The first pair producing `S_α S_α* ⊗ χ^k` with `|other| = other_len`.
    fn best_pair(&self, alpha: &Path, other_len: usize) -> Option<Candidate> {
        let p = self.labeling.modulus();
        let l = self.options.max_len;
        let mut best: Option<Candidate> = None;
        let mut offer = |cand: Candidate| {
            if best.as_ref().is_none_or(|b| cand.key() < b.key()) {
                best = Some(cand);
            }
        };
        for split in 0..=alpha.len() {
            let head = Path { base: self.vertex, edges: alpha.edges[..split].to_vec() };
            let w = self.graph.path_range(&head);
            let tail = Path { base: w, edges: alpha.edges[split..].to_vec() };
            if other_len + tail.len() > l {
                continue;
            }
            let residue = crate::graph::reduce(self.exponent + self.labeling.path_label(&head) as i64, p);
            let Some(other) = self.incoming.get(other_len, w, residue) else {
                continue;
            };
            offer(Candidate {
                mu: head.clone(),
                nu: other.clone(),
                sigma: other.concat(&tail),
                tau: alpha.clone(),
            });
            if !tail.is_empty() {
                offer(Candidate { mu: alpha.clone(), nu: other.concat(&tail), sigma: other.clone(), tau: head });
            }
        }
        best
    }

    fn run(mut self) -> Result<Option<Certificate>, CertifyError> {
        let l = self.options.max_len;
        let mut chosen: Vec<(Path, Candidate)> = Vec::new();
        let mut seen: std::collections::HashSet<Path> = std::collections::HashSet::new();
        // layer t collects the pairs with |α| + |other| = t
        for t in 0..=2 * l {
            let mut layer: Vec<(Path, Candidate)> = Vec::new();
            for alpha_len in 0..=t.min(l) {
                let other_len = t - alpha_len;
                if other_len > l {
                    continue;
                }
                let alphas = self.outgoing(alpha_len)?.to_vec();
                for alpha in alphas {
                    if seen.contains(&alpha) {
                        continue;
                    }
                    if let Some(cand) = self.best_pair(&alpha, other_len) {
                        layer.push((alpha, cand));
                    }
                }
            }
            if layer.is_empty() {
                continue;
            }
            layer.sort_by(|a, b| a.1.key().cmp(&b.1.key()));
            for (alpha, _) in &layer {
                seen.insert(alpha.clone());
            }
            chosen.extend(layer);
            if chosen.len() > self.options.max_pairs {
                return Err(CertifyError::ResourceExceeded { vertex: self.vertex, cap: self.options.max_pairs });
            }
            let Some(solution) = solve_cylinders(self.graph, self.vertex, chosen.iter().map(|(a, _)| a))? else {
                continue;
            };
            let pairs: Vec<CertificatePair> = chosen
                .into_iter()
                .zip(solution)
                .filter(|(_, c)| !c.is_zero())
                .map(|((_, cand), c)| cand.into_pair(c))
                .collect();
            let cert = Certificate {
                vertex: self.vertex,
                exponent: self.exponent,
                group: CharGroup::Cyclic(self.labeling.modulus()),
                pairs,
            };
            if !cert.recheck(self.graph, Action::Cyclic(self.labeling))? {
                return Err(CertifyError::RecheckFailed { vertex: self.vertex, exponent: self.exponent });
            }
            return Ok(Some(cert));
        }
        Ok(None)
    }
}

/// Coefficients c_α with Σ c_α S_α S_α* = P_v, or `None`.
///
/// At level N every `S_α S_α*` is the sum of `S_γ S_γ*` over length-N paths
/// γ extending α, so the question is whether the all-ones vector on those
/// paths is a combination of the cylinder indicators.
fn solve_cylinders<'a>(
    graph: &DirectedGraph,
    v: usize,
    alphas: impl Iterator<Item = &'a Path> + Clone,
) -> Result<Option<Vec<Rational>>, CertifyError> {
    let level = alphas.clone().map(|a| a.len()).max().unwrap_or(0);
    let rows = graph.paths_from(v, level)?;
    let columns: Vec<Vec<BigInt>> = alphas
        .map(|a| {
            rows.iter()
                .map(|g| if g.edges.starts_with(&a.edges) { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let target = vec![BigInt::one(); rows.len()];
    Ok(linsolve::solve(&columns, &target))
}
