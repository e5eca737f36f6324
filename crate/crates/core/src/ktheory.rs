//! Vertex matrices, integer Smith normal form and the K-groups
//! K_0 = coker(A_E), K_1 = ker(A_E) of a finite graph algebra.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::graph::{lens_labeling, skew_product, sphere_graph, DirectedGraph, GraphError};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if `entries.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        IntegerMatrix { rows, cols, entries }
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| x.into()));
        }
        IntegerMatrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * factor;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + src] * factor;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.entries[r * self.cols + j]);
            self.entries[r * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Smith normal form over ℤ.
///
/// Pivot: the entry of smallest absolute value in the remaining block,
/// ties broken by lowest (row, col). Row and column are cleared by
/// euclidean reduction, restarting whenever a smaller remainder appears;
/// a pivot that fails to divide the rest of the block absorbs the
/// offending row and the block is reduced again.
pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                return finish(d, u, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = d[(t, t)].clone();
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(d, u, v)
}

fn smallest_entry(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => x.abs() < d[b].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

fn finish(d: IntegerMatrix, u: IntegerMatrix, v: IntegerMatrix) -> SnfResult {
    let invariant_factors = (0..d.rows().min(d.cols()))
        .map(|i| d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SnfResult { d, u, v, invariant_factors }
}

/// A finitely generated abelian group ℤ^r ⊕ ℤ_{t_1} ⊕ … with t_i | t_{i+1}, t_i ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Builds the group from an invariant-factor chain, dropping units.
    pub fn from_invariant_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let torsion = factors.iter().map(|f| f.abs()).filter(|f| !f.is_one()).collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, recomputed into invariant-factor form.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut all: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        if all.is_empty() {
            return AbelianGroup::free(self.free_rank + other.free_rank);
        }
        let n = all.len();
        let mut diag = IntegerMatrix::zeros(n, n);
        for (i, t) in all.drain(..).enumerate() {
            diag[(i, i)] = t;
        }
        let snf = smith_normal_form(&diag);
        AbelianGroup::from_invariant_factors(self.free_rank + other.free_rank, &snf.invariant_factors)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        f.write_str(&parts.join(" (+) "))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Torsion<'a>(&'a [BigInt]);
        impl Serialize for Torsion<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for t in self.0 {
                    match t.to_u64() {
                        Some(x) => seq.serialize_element(&x)?,
                        None => seq.serialize_element(&t.to_string())?,
                    }
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &Torsion(&self.torsion))?;
        st.end()
    }
}

/// The vertex matrix A_E together with the vertex index of each column.
#[derive(Debug, Clone)]
pub struct VertexMatrix {
    pub matrix: IntegerMatrix,
    pub columns: Vec<usize>,
}

/// Rows are all vertices in graph order, columns the emitting vertices.
/// Column v holds (#edges v→w) at row w, minus one at row v.
pub fn vertex_matrix(graph: &DirectedGraph) -> VertexMatrix {
    let columns: Vec<usize> =
        (0..graph.vertex_count()).filter(|&v| !graph.out_edges(v).is_empty()).collect();
    let mut matrix = IntegerMatrix::zeros(graph.vertex_count(), columns.len());
    for (c, &v) in columns.iter().enumerate() {
        matrix[(v, c)] -= 1;
        for &e in graph.out_edges(v) {
            matrix[(graph.range(e), c)] += 1;
        }
    }
    VertexMatrix { matrix, columns }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KGroups {
    #[serde(rename = "K0")]
    pub k0: AbelianGroup,
    #[serde(rename = "K1")]
    pub k1: AbelianGroup,
}

impl fmt::Display for KGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0 = {}, K1 = {}", self.k0, self.k1)
    }
}

/// K_0 = coker(A_E), K_1 = ker(A_E).
pub fn k_groups(graph: &DirectedGraph) -> KGroups {
    let vm = vertex_matrix(graph);
    let snf = smith_normal_form(&vm.matrix);
    let rank = snf.rank();
    KGroups {
        k0: AbelianGroup::from_invariant_factors(graph.vertex_count() - rank, &snf.invariant_factors),
        k1: AbelianGroup::free(vm.columns.len() - rank),
    }
}

pub const GRAPH_PROVENANCE: &str =
    "K0 = coker(A_E), K1 = ker(A_E), computed from the Smith normal form of the vertex matrix";

pub const LENS_PROVENANCE: &str = "K-groups of the skew-product graph L_{2n-1} x_c Z_p; \
equality with the K-theory of C(L_q(p; m_1,...,m_n)) rests on the strong Morita equivalence \
of the two algebras and Morita invariance of K-theory (a known result, not re-proved here)";

/// K-theory report in the JSON layout shared by the library and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KTheoryReport {
    #[serde(flatten)]
    pub groups: KGroups,
    pub provenance: String,
}

impl KTheoryReport {
    pub fn for_graph(graph: &DirectedGraph) -> Self {
        KTheoryReport { groups: k_groups(graph), provenance: GRAPH_PROVENANCE.to_string() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// K-theory of the quantum lens space L_q(p; m_1, …, m_n), computed through
/// the skew-product graph L_{2n-1} ×_c ℤ_p.
pub fn lens_k_groups(n: usize, p: u64, weights: &[i64]) -> Result<KTheoryReport, GraphError> {
    let sphere = sphere_graph(n)?;
    let labeling = lens_labeling(&sphere, p, weights)?;
    let skew = skew_product(&sphere, &labeling)?;
    Ok(KTheoryReport { groups: k_groups(&skew), provenance: LENS_PROVENANCE.to_string() })
}
