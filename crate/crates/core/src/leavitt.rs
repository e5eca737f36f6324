//! Exact arithmetic in the Leavitt path algebra of a finite graph over ℚ.
//!
//! Elements are finite rational combinations of monomials `S_μ S_ν*` with
//! `r(μ) = r(ν)`. Products follow the Cuntz-Krieger relations
//!
//! ```text
//! S_e* S_e = P_{r(e)},   S_e* S_f = 0 (e ≠ f),   P_v = Σ_{s(f)=v} S_f S_f*
//! ```
//!
//! and equality is decided by expanding every monomial to a common level
//! `|ν| = N` with the last relation. At a fixed level the monomials are
//! linearly independent, so two elements agree iff their expansions agree
//! term by term. This needs a graph without sinks.
//!
//! Coactions and the canonical map `Φ(x ⊗ y) = (x ⊗ 1) δ(y)` act on
//! [`TensorElement`]s, which attach a character exponent to each monomial:
//! a power of `z` for the gauge circle action or of `χ` for a ℤ_p labeling.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{DirectedGraph, GraphError, Path, ZpLabeling};

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("path is not a path of this graph")]
    ForeignPath,
    #[error("monomial ranges differ: r(mu) = {mu_range}, r(nu) = {nu_range}")]
    RangeMismatch { mu_range: usize, nu_range: usize },
    #[error("graph has a sink at vertex {0}; normal forms need every vertex to emit an edge")]
    Sink(usize),
    #[error("normal form level {level} is below the required {required}")]
    LevelTooLow { level: usize, required: usize },
    #[error("character groups differ")]
    GroupMismatch,
    #[error(transparent)]
    Labeling(#[from] GraphError),
}

/// `S_μ S_ν*`. Both paths empty encodes `P_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    mu: Path,
    nu: Path,
}

impl Monomial {
    pub fn new(graph: &DirectedGraph, mu: Path, nu: Path) -> Result<Self, AlgebraError> {
        if !graph.contains_path(&mu) || !graph.contains_path(&nu) {
            return Err(AlgebraError::ForeignPath);
        }
        let (mu_range, nu_range) = (graph.path_range(&mu), graph.path_range(&nu));
        if mu_range != nu_range {
            return Err(AlgebraError::RangeMismatch { mu_range, nu_range });
        }
        Ok(Monomial { mu, nu })
    }

    /// Caller guarantees validity.
    pub(crate) fn from_parts(mu: Path, nu: Path) -> Self {
        Monomial { mu, nu }
    }

    pub fn vertex(v: usize) -> Self {
        Monomial { mu: Path::trivial(v), nu: Path::trivial(v) }
    }

    /// `S_α`.
    pub fn path(graph: &DirectedGraph, alpha: &Path) -> Self {
        let r = graph.path_range(alpha);
        Monomial { mu: alpha.clone(), nu: Path::trivial(r) }
    }

    /// `S_α*`.
    pub fn path_adjoint(graph: &DirectedGraph, alpha: &Path) -> Self {
        Monomial::path(graph, alpha).adjoint()
    }

    pub fn edge(graph: &DirectedGraph, e: usize) -> Self {
        Monomial::path(graph, &Path { base: graph.source(e), edges: vec![e] })
    }

    pub fn edge_adjoint(graph: &DirectedGraph, e: usize) -> Self {
        Monomial::edge(graph, e).adjoint()
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn nu(&self) -> &Path {
        &self.nu
    }

    /// |μ| − |ν|, the gauge degree.
    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    pub fn is_vertex(&self) -> bool {
        self.mu.is_empty() && self.nu.is_empty()
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial { mu: self.nu.clone(), nu: self.mu.clone() }
    }

    fn is_valid(&self, graph: &DirectedGraph) -> bool {
        graph.contains_path(&self.mu)
            && graph.contains_path(&self.nu)
            && graph.path_range(&self.mu) == graph.path_range(&self.nu)
    }

    /// `(S_μ S_ν*)(S_σ S_τ*)`, which is a single monomial or zero.
    pub fn multiply(&self, other: &Monomial, graph: &DirectedGraph) -> Option<Monomial> {
        let end = graph.path_range(&self.nu);
        if let Some(rest) = self.nu.strip_from(&other.mu, end) {
            // σ = ν σ'
            return Some(Monomial { mu: self.mu.concat(&rest), nu: other.nu.clone() });
        }
        let end = graph.path_range(&other.mu);
        if let Some(rest) = other.mu.strip_from(&self.nu, end) {
            // ν = σ ν'
            return Some(Monomial { mu: self.mu.clone(), nu: other.nu.concat(&rest) });
        }
        None
    }

    fn write(&self, graph: &DirectedGraph, out: &mut String) {
        if self.is_vertex() {
            let _ = write!(out, "P[{}]", graph.vertex_name(self.mu.base));
            return;
        }
        if !self.mu.is_empty() {
            let _ = write!(out, "S[{}]", self.mu.display(graph));
        }
        if !self.nu.is_empty() {
            if !self.mu.is_empty() {
                out.push(' ');
            }
            let _ = write!(out, "S[{}]^*", self.nu.display(graph));
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.mu.cmp(&other.mu))
            .then_with(|| self.nu.cmp(&other.nu))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_term<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, coefficient: Rational) {
    if coefficient.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(coefficient);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += coefficient;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// A finite ℚ-combination of monomials. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vertex(v: usize) -> Self {
        Monomial::vertex(v).into()
    }

    /// Sum of all vertex projections; the unit of the algebra of a finite graph.
    pub fn unit(graph: &DirectedGraph) -> Self {
        (0..graph.vertex_count()).map(AlgebraElement::vertex).fold(Self::zero(), |a, b| a + b)
    }

    pub fn edge(graph: &DirectedGraph, e: usize) -> Self {
        Monomial::edge(graph, e).into()
    }

    pub fn edge_adjoint(graph: &DirectedGraph, e: usize) -> Self {
        Monomial::edge_adjoint(graph, e).into()
    }

    pub fn path(graph: &DirectedGraph, alpha: &Path) -> Self {
        Monomial::path(graph, alpha).into()
    }

    pub fn path_adjoint(graph: &DirectedGraph, alpha: &Path) -> Self {
        Monomial::path_adjoint(graph, alpha).into()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            add_term(&mut out.terms, m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect() }
    }

    /// Swaps μ and ν in every term; coefficients are real.
    pub fn adjoint(&self) -> Self {
        AlgebraElement { terms: self.terms.iter().map(|(m, c)| (m.adjoint(), c.clone())).collect() }
    }

    fn max_nu(&self) -> usize {
        self.terms.keys().map(|m| m.nu.len()).max().unwrap_or(0)
    }
}

impl From<Monomial> for AlgebraElement {
    fn from(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        AlgebraElement { terms }
    }
}

impl std::ops::Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(mut self, rhs: AlgebraElement) -> AlgebraElement {
        for (m, c) in rhs.terms {
            add_term(&mut self.terms, m, c);
        }
        self
    }
}

impl std::ops::Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(mut self, rhs: AlgebraElement) -> AlgebraElement {
        for (m, c) in rhs.terms {
            add_term(&mut self.terms, m, -c);
        }
        self
    }
}

/// The character group carried by tensor factors: ℤ (powers of `z`) or ℤ_p
/// (powers of `χ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharGroup {
    Integers,
    Cyclic(u64),
}

impl CharGroup {
    pub fn canonical(&self, exponent: i64) -> i64 {
        match *self {
            CharGroup::Integers => exponent,
            CharGroup::Cyclic(p) => exponent.rem_euclid(p as i64),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            CharGroup::Integers => "z",
            CharGroup::Cyclic(_) => "chi",
        }
    }
}

/// Which coaction to apply: the gauge circle action (exponent = path
/// length) or a ℤ_p labeling (exponent = label sum).
#[derive(Debug, Clone, Copy)]
pub enum Action<'a> {
    Gauge,
    Cyclic(&'a ZpLabeling),
}

impl Action<'_> {
    pub fn group(&self) -> CharGroup {
        match self {
            Action::Gauge => CharGroup::Integers,
            Action::Cyclic(l) => CharGroup::Cyclic(l.modulus()),
        }
    }

    pub fn path_exponent(&self, path: &Path) -> i64 {
        match self {
            Action::Gauge => path.len() as i64,
            Action::Cyclic(l) => l.path_label(path) as i64,
        }
    }

    /// c(μ) − c(ν), canonical.
    pub fn monomial_exponent(&self, m: &Monomial) -> i64 {
        self.group().canonical(self.path_exponent(&m.mu) - self.path_exponent(&m.nu))
    }
}

/// A finite ℚ-combination of `S_μ S_ν* ⊗ z^k` (or `⊗ χ^k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    group: CharGroup,
    terms: BTreeMap<(Monomial, i64), Rational>,
}

impl TensorElement {
    pub fn zero(group: CharGroup) -> Self {
        TensorElement { group, terms: BTreeMap::new() }
    }

    /// `a ⊗ z^k` / `a ⊗ χ^k`.
    pub fn simple(a: &AlgebraElement, exponent: i64, group: CharGroup) -> Self {
        let e = group.canonical(exponent);
        let mut out = Self::zero(group);
        for (m, c) in a.terms() {
            add_term(&mut out.terms, (m.clone(), e), c.clone());
        }
        out
    }

    pub fn group(&self) -> CharGroup {
        self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64, &Rational)> {
        self.terms.iter().map(|((m, e), c)| (m, *e, c))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.group);
        }
        TensorElement {
            group: self.group,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * factor)).collect(),
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<Self, AlgebraError> {
        if self.group != other.group {
            return Err(AlgebraError::GroupMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<Self, AlgebraError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Reduces every exponent mod `p`; maps a ℤ-graded element to a ℤ_p one.
    pub fn reduce_mod(&self, p: u64) -> Self {
        let group = CharGroup::Cyclic(p);
        let mut out = Self::zero(group);
        for ((m, e), c) in &self.terms {
            add_term(&mut out.terms, (m.clone(), group.canonical(*e)), c.clone());
        }
        out
    }

    fn max_nu(&self) -> usize {
        self.terms.keys().map(|(m, _)| m.nu.len()).max().unwrap_or(0)
    }
}

/// The Leavitt path algebra L_ℚ(E) of a finite graph.
#[derive(Debug, Clone, Copy)]
pub struct LeavittAlgebra<'g> {
    graph: &'g DirectedGraph,
}

impl<'g> LeavittAlgebra<'g> {
    pub fn new(graph: &'g DirectedGraph) -> Self {
        LeavittAlgebra { graph }
    }

    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }

    fn check(&self, a: &AlgebraElement) -> Result<(), AlgebraError> {
        if a.terms.keys().all(|m| m.is_valid(self.graph)) {
            Ok(())
        } else {
            Err(AlgebraError::ForeignPath)
        }
    }

    fn check_tensor(&self, a: &TensorElement) -> Result<(), AlgebraError> {
        if a.terms.keys().all(|(m, _)| m.is_valid(self.graph)) {
            Ok(())
        } else {
            Err(AlgebraError::ForeignPath)
        }
    }

    fn check_action(&self, action: Action<'_>) -> Result<(), AlgebraError> {
        if let Action::Cyclic(l) = action {
            l.check_graph(self.graph)?;
        }
        Ok(())
    }

    fn require_no_sinks(&self) -> Result<(), AlgebraError> {
        match self.graph.sinks().first() {
            Some(&v) => Err(AlgebraError::Sink(v)),
            None => Ok(()),
        }
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.multiply_unchecked(a, b))
    }

    fn multiply_unchecked(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in &a.terms {
            for (n, d) in &b.terms {
                if let Some(mn) = m.multiply(n, self.graph) {
                    add_term(&mut out.terms, mn, c * d);
                }
            }
        }
        out
    }

    /// Product in L(E) ⊗ C(Γ): monomials multiply, exponents add.
    pub fn multiply_tensor(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement, AlgebraError> {
        if a.group != b.group {
            return Err(AlgebraError::GroupMismatch);
        }
        self.check_tensor(a)?;
        self.check_tensor(b)?;
        let mut out = TensorElement::zero(a.group);
        for ((m, e), c) in &a.terms {
            for ((n, f), d) in &b.terms {
                if let Some(mn) = m.multiply(n, self.graph) {
                    add_term(&mut out.terms, (mn, a.group.canonical(e + f)), c * d);
                }
            }
        }
        Ok(out)
    }

    /// All paths of length `len` from `v`; a sink met on the way is an error.
    fn extensions(&self, v: usize, len: usize) -> Result<Vec<Path>, AlgebraError> {
        let mut frontier = vec![Path::trivial(v)];
        for _ in 0..len {
            let mut next = Vec::with_capacity(frontier.len());
            for p in &frontier {
                let end = self.graph.path_range(p);
                let outs = self.graph.out_edges(end);
                if outs.is_empty() {
                    return Err(AlgebraError::Sink(end));
                }
                for &e in outs {
                    let mut q = p.clone();
                    q.edges.push(e);
                    next.push(q);
                }
            }
            frontier = next;
        }
        Ok(frontier)
    }

    fn expand_monomial(&self, m: &Monomial, level: usize) -> Result<Vec<Monomial>, AlgebraError> {
        if m.nu.len() > level {
            return Err(AlgebraError::LevelTooLow { level, required: m.nu.len() });
        }
        let end = self.graph.path_range(&m.nu);
        Ok(self
            .extensions(end, level - m.nu.len())?
            .into_iter()
            .map(|g| Monomial { mu: m.mu.concat(&g), nu: m.nu.concat(&g) })
            .collect())
    }

    /// Rewrites every term with `P_v = Σ S_f S_f*` until each `ν` has length
    /// exactly `level`.
    pub fn normalize(&self, a: &AlgebraElement, level: usize) -> Result<AlgebraElement, AlgebraError> {
        self.check(a)?;
        let mut out = AlgebraElement::zero();
        for (m, c) in &a.terms {
            for t in self.expand_monomial(m, level)? {
                add_term(&mut out.terms, t, c.clone());
            }
        }
        Ok(out)
    }

    pub fn normalize_tensor(&self, a: &TensorElement, level: usize) -> Result<TensorElement, AlgebraError> {
        self.check_tensor(a)?;
        let mut out = TensorElement::zero(a.group);
        for ((m, e), c) in &a.terms {
            for t in self.expand_monomial(m, level)? {
                add_term(&mut out.terms, (t, *e), c.clone());
            }
        }
        Ok(out)
    }

    /// Equality in the algebra. Rejects graphs with sinks.
    pub fn equals(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<bool, AlgebraError> {
        self.require_no_sinks()?;
        let level = a.max_nu().max(b.max_nu());
        Ok(self.normalize(a, level)? == self.normalize(b, level)?)
    }

    pub fn equals_tensor(&self, a: &TensorElement, b: &TensorElement) -> Result<bool, AlgebraError> {
        self.require_no_sinks()?;
        if a.group != b.group {
            return Err(AlgebraError::GroupMismatch);
        }
        let level = a.max_nu().max(b.max_nu());
        Ok(self.normalize_tensor(a, level)? == self.normalize_tensor(b, level)?)
    }

    /// δ(S_μ S_ν*) = S_μ S_ν* ⊗ (c(μ) − c(ν)), extended linearly.
    pub fn coaction(&self, a: &AlgebraElement, action: Action<'_>) -> Result<TensorElement, AlgebraError> {
        self.check(a)?;
        self.check_action(action)?;
        let mut out = TensorElement::zero(action.group());
        for (m, c) in &a.terms {
            add_term(&mut out.terms, (m.clone(), action.monomial_exponent(m)), c.clone());
        }
        Ok(out)
    }

    /// Φ(x ⊗ y) = (x ⊗ 1) δ(y).
    pub fn phi(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
        action: Action<'_>,
    ) -> Result<TensorElement, AlgebraError> {
        let dy = self.coaction(y, action)?;
        let x1 = TensorElement::simple(x, 0, action.group());
        self.multiply_tensor(&x1, &dy)
    }

    /// `q * S[e1.e2] S[e3]^* + ...`, or `0`.
    pub fn render(&self, a: &AlgebraElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in a.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{c} * ");
            m.write(self.graph, &mut out);
        }
        out
    }

    /// `q * S[e1.e2] S[e3]^* (x) chi^k + ...`, or `0`.
    pub fn render_tensor(&self, a: &TensorElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, ((m, e), c)) in a.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{c} * ");
            m.write(self.graph, &mut out);
            let _ = write!(out, " (x) {}^{e}", a.group.symbol());
        }
        out
    }
}

impl fmt::Display for CharGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharGroup::Integers => f.write_str("Z"),
            CharGroup::Cyclic(p) => write!(f, "Z_{p}"),
        }
    }
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
