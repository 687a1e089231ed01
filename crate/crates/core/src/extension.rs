//! 1-sink extensions `(E, v0)` of a base graph `G` and the constructions
//! that produce essential ones with a prescribed Wojciech class.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Hypothesis, Result};
use crate::ext::check_hypotheses;
use crate::graph::{DirectedMultigraph, GraphBuilder};
use crate::matrix::{IntMatrix, IntVector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AddedEdge {
    pub id: String,
    pub source: String,
    pub range: String,
}

/// A graph `E` containing `G`, with added vertices `H = E^0 \ G^0`, added
/// edges `E^1 \ G^1` and a designated sink `v0 ∈ H`.
///
/// Construction only checks that ids are unique and endpoints exist; the
/// four defining conditions are reported by [`OneSinkExtension::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneSinkExtension {
    base: DirectedMultigraph,
    added_vertices: Vec<String>,
    added_edges: Vec<AddedEdge>,
    sink: String,
    total: DirectedMultigraph,
}

/// A failed condition of the 1-sink extension definition, numbered 1 to 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: u8,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition ({}): {}", self.condition, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, condition: u8) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

impl OneSinkExtension {
    pub fn new(
        base: DirectedMultigraph,
        added_vertices: Vec<String>,
        added_edges: Vec<AddedEdge>,
        sink: impl Into<String>,
    ) -> Result<Self> {
        let sink = sink.into();
        if !added_vertices.contains(&sink) {
            return Err(Error::InvalidExtension(format!(
                "sink `{sink}` is not an added vertex"
            )));
        }
        let mut b = GraphBuilder::new();
        for v in base.vertices().iter().chain(&added_vertices) {
            b.add_vertex(v.clone());
        }
        for e in base.edges() {
            b.add_edge(
                Some(e.id.clone()),
                base.vertices()[e.source].clone(),
                base.vertices()[e.range].clone(),
            );
        }
        for e in &added_edges {
            b.add_edge(Some(e.id.clone()), e.source.clone(), e.range.clone());
        }
        let total = b.build()?;
        Ok(OneSinkExtension {
            base,
            added_vertices,
            added_edges,
            sink,
            total,
        })
    }

    pub fn base(&self) -> &DirectedMultigraph {
        &self.base
    }

    pub fn added_vertices(&self) -> &[String] {
        &self.added_vertices
    }

    pub fn added_edges(&self) -> &[AddedEdge] {
        &self.added_edges
    }

    pub fn sink(&self) -> &str {
        &self.sink
    }

    /// The whole graph `E`: base vertices and edges first, then the added part.
    pub fn graph(&self) -> &DirectedMultigraph {
        &self.total
    }

    /// Exactly one vertex was added.
    pub fn is_simple(&self) -> bool {
        self.added_vertices.len() == 1
    }

    pub(crate) fn sink_index(&self) -> usize {
        self.total
            .vertex_index(&self.sink)
            .expect("sink checked at construction")
    }

    fn is_added_vertex(&self, v: usize) -> bool {
        v >= self.base.vertex_count()
    }

    /// Reports every violated condition of the 1-sink extension definition.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut report =
            |condition: u8, message: String| violations.push(Violation { condition, message });
        let e = &self.total;
        let nb = self.base.vertex_count();
        let sink = self.sink_index();

        for h in nb..e.vertex_count() {
            if e.is_source(h) {
                report(1, format!("added vertex `{}` is a source", e.vertices()[h]));
            }
            if e.is_sink(h) && h != sink {
                report(
                    1,
                    format!("added vertex `{}` is a second sink", e.vertices()[h]),
                );
            }
        }
        if !e.is_sink(sink) {
            report(1, format!("designated sink `{}` emits edges", self.sink));
        }

        let mut hb = GraphBuilder::new();
        for h in &self.added_vertices {
            hb.add_vertex(h.clone());
        }
        for a in &self.added_edges {
            let internal =
                self.added_vertices.contains(&a.source) && self.added_vertices.contains(&a.range);
            if internal {
                hb.add_edge(Some(a.id.clone()), a.source.clone(), a.range.clone());
            }
        }
        let h_graph = hb.build().expect("subgraph of a valid graph");
        for component in h_graph.strongly_connected_components() {
            let cyclic = component.len() > 1
                || h_graph
                    .out_edges(component[0])
                    .iter()
                    .any(|&k| h_graph.edges()[k].range == component[0]);
            if cyclic {
                let names: Vec<&str> = component
                    .iter()
                    .map(|&i| h_graph.vertices()[i].as_str())
                    .collect();
                report(2, format!("loop among added vertices {}", names.join(", ")));
            }
        }

        let base_sinks: HashSet<usize> = (0..nb).filter(|&v| self.base.is_sink(v)).collect();
        for a in &self.added_edges {
            let r = e.vertex_index(&a.range).expect("endpoint checked");
            if !self.is_added_vertex(r) {
                report(
                    3,
                    format!("added edge `{}` ends in base vertex `{}`", a.id, a.range),
                );
            }
            let s = e.vertex_index(&a.source).expect("endpoint checked");
            if base_sinks.contains(&s) {
                report(
                    4,
                    format!("added edge `{}` leaves base sink `{}`", a.id, a.source),
                );
            }
        }
        ValidationReport { violations }
    }

    /// Every base vertex reaches the sink (`G^0 ≥ v0`).
    ///
    /// This is pure reachability and does not require [`validate`](Self::validate)
    /// to pass.
    pub fn is_essential(&self) -> bool {
        let reaching = self.total.vertices_reaching(&[self.sink_index()]);
        reaching[..self.base.vertex_count()].iter().all(|&r| r)
    }

    /// The base vertices from which the sink is unreachable.
    pub fn unreachable_base_vertices(&self) -> Vec<&str> {
        let reaching = self.total.vertices_reaching(&[self.sink_index()]);
        (0..self.base.vertex_count())
            .filter(|&v| !reaching[v])
            .map(|v| self.base.vertices()[v].as_str())
            .collect()
    }
}

fn fresh_id(taken: &HashSet<String>, wanted: String) -> String {
    let mut id = wanted;
    while taken.contains(&id) {
        id.push('\'');
    }
    id
}

fn check_len(g: &DirectedMultigraph, x: &[BigInt]) -> Result<()> {
    if x.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            actual: x.len(),
        });
    }
    Ok(())
}

fn check_nonnegative(x: &[BigInt]) -> Result<()> {
    match x.iter().position(Signed::is_negative) {
        Some(index) => Err(Error::NegativeEntry {
            index,
            value: x[index].to_string(),
        }),
        None => Ok(()),
    }
}

/// The simple extension with one added vertex `v0` and `x(w)` parallel edges
/// `w → v0` for each base vertex `w`.
///
/// The sink is named `v0` (primed until unused) and the edges
/// `<sink>_<w>_<i>` for `1 ≤ i ≤ x(w)`.
pub fn simple_extension(g: &DirectedMultigraph, x: &[BigInt]) -> Result<OneSinkExtension> {
    check_len(g, x)?;
    check_nonnegative(x)?;
    let mut taken: HashSet<String> = g.vertices().iter().cloned().collect();
    let sink = fresh_id(&taken, "v0".to_string());
    taken = g.edges().iter().map(|e| e.id.clone()).collect();
    let mut added_edges = Vec::new();
    for (w, count) in g.vertices().iter().zip(x) {
        let count = count.to_usize().ok_or(Error::OutOfRange {
            what: "edge multiplicity",
            value: usize::MAX,
        })?;
        for i in 1..=count {
            let id = fresh_id(&taken, format!("{sink}_{w}_{i}"));
            taken.insert(id.clone());
            added_edges.push(AddedEdge {
                id,
                source: w.clone(),
                range: sink.clone(),
            });
        }
    }
    OneSinkExtension::new(g.clone(), vec![sink.clone()], added_edges, sink)
}

/// Adds a single vertex `v0` and a single edge `v → v0`.
pub fn add_sink_at(g: &DirectedMultigraph, v: &str) -> Result<OneSinkExtension> {
    let vi = g.require_vertex(v)?;
    let mut x = vec![BigInt::zero(); g.vertex_count()];
    x[vi] = BigInt::one();
    simple_extension(g, &x)
}

/// A vector `n` with `(A - I)n ≥ 0` such that every vertex reaches a vertex
/// where `(A - I)n` is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentializingVector {
    pub entries: IntVector,
    /// `(A - I)·entries`.
    pub image: IntVector,
}

/// For a finite graph without sinks every vertex feeds into a loop, so the
/// all-ones vector works; both properties are checked before returning.
pub fn essentializing_vector(g: &DirectedMultigraph) -> Result<EssentializingVector> {
    check_hypotheses(g)?;
    let entries = vec![BigInt::one(); g.vertex_count()];
    let image = g.vertex_matrix().minus_identity()?.mul_vec(&entries)?;
    if let Some(w) = image.iter().position(Signed::is_negative) {
        return Err(Error::InternalAssertion(format!(
            "(A-I)·1 is negative at `{}`",
            g.vertices()[w]
        )));
    }
    let positive: Vec<usize> = (0..image.len())
        .filter(|&w| image[w].is_positive())
        .collect();
    let reaching = g.vertices_reaching(&positive);
    if let Some(v) = reaching.iter().position(|&r| !r) {
        return Err(Error::InternalAssertion(format!(
            "`{}` reaches no vertex where (A-I)·1 is positive",
            g.vertices()[v]
        )));
    }
    Ok(EssentializingVector { entries, image })
}

fn smallest_id_edge<'a>(
    g: &'a DirectedMultigraph,
    candidates: impl Iterator<Item = &'a usize>,
) -> Option<usize> {
    candidates
        .copied()
        .min_by(|&a, &b| g.edges()[a].id.cmp(&g.edges()[b].id))
}

/// A nonnegative `n` with `(A - I)n ≥ 0` and `((A - I)n)(v) ≥ 1`.
///
/// If `v` carries at least two loops, `n = δ_v`. Otherwise walk `e_1 e_2 …`
/// from `v` (with `r(e_1) ≠ v`, always taking the out-edge of smallest id)
/// until a vertex repeats, find the first position `l` on the closed loop
/// whose source has another out-edge, and weight the vertices
/// `s(e_2), …, s(e_l)` by 2 and all others by 1.
pub fn positive_vector_at(g: &DirectedMultigraph, v: &str) -> Result<IntVector> {
    check_hypotheses(g)?;
    let vi = g.require_vertex(v)?;
    positive_vector_unchecked(g, vi)
}

pub(crate) fn positive_vector_unchecked(g: &DirectedMultigraph, vi: usize) -> Result<IntVector> {
    let a = g.vertex_matrix();
    let n = g.vertex_count();
    let mut weights = vec![BigInt::one(); n];

    if a[(vi, vi)] >= BigInt::from(2) {
        weights = vec![BigInt::zero(); n];
        weights[vi] = BigInt::one();
    } else {
        let first = smallest_id_edge(
            g,
            g.out_edges(vi)
                .iter()
                .filter(|&&k| g.edges()[k].range != vi),
        )
        .ok_or(Error::HypothesisViolated(Hypothesis::ConditionL))?;
        // walk[i] is the edge e_{i+1}; first_seen maps a vertex to the walk
        // position whose source it is.
        let mut walk = vec![first];
        let mut first_seen = vec![usize::MAX; n];
        first_seen[vi] = 0;
        let loop_start = loop {
            let here = g.edges()[*walk.last().expect("walk is nonempty")].range;
            if first_seen[here] != usize::MAX {
                break first_seen[here];
            }
            first_seen[here] = walk.len();
            let next = smallest_id_edge(g, g.out_edges(here).iter()).ok_or_else(|| {
                Error::HypothesisViolated(Hypothesis::NoSinks(vec![g.vertices()[here].clone()]))
            })?;
            walk.push(next);
        };
        // the loop is walk[loop_start..]; find its first vertex with an exit
        let exit_at = (loop_start..walk.len())
            .find(|&i| g.out_edges(g.edges()[walk[i]].source).len() >= 2)
            .ok_or(Error::HypothesisViolated(Hypothesis::ConditionL))?;
        for &k in &walk[1..=exit_at] {
            weights[g.edges()[k].source] = BigInt::from(2);
        }
    }

    let image = a.minus_identity()?.mul_vec(&weights)?;
    if let Some(w) = image.iter().position(Signed::is_negative) {
        return Err(Error::InternalAssertion(format!(
            "positive vector at `{}`: (A-I)n is negative at `{}`",
            g.vertices()[vi],
            g.vertices()[w]
        )));
    }
    if !image[vi].is_positive() {
        return Err(Error::InternalAssertion(format!(
            "positive vector at `{}`: (A-I)n vanishes there",
            g.vertices()[vi]
        )));
    }
    Ok(weights)
}

/// An essential extension with `ω_E = x + (A - I)n` for the essentializing
/// vector `n`, hence `[ω_E] = [x]`.
pub fn essential_extension_for_nonneg(
    g: &DirectedMultigraph,
    x: &[BigInt],
) -> Result<OneSinkExtension> {
    check_len(g, x)?;
    check_nonnegative(x)?;
    let n = essentializing_vector(g)?;
    let omega: IntVector = x.iter().zip(&n.image).map(|(a, b)| a + b).collect();
    let e = simple_extension(g, &omega)?;
    if !e.is_essential() {
        return Err(Error::InternalAssertion(
            "extension built from the essentializing vector is not essential".into(),
        ));
    }
    Ok(e)
}

/// An essential extension in the class of an arbitrary integer vector `x`.
///
/// Uses `n = Σ_v (|x(v)| + 1)·n_v` with `n_v` from [`positive_vector_at`], so
/// `ω_E = x + (A - I)n ≥ 1` entrywise.
pub fn essential_extension_for_class(
    g: &DirectedMultigraph,
    x: &[BigInt],
) -> Result<OneSinkExtension> {
    check_len(g, x)?;
    check_hypotheses(g)?;
    let size = g.vertex_count();
    let mut n = vec![BigInt::zero(); size];
    for (v, xv) in x.iter().enumerate() {
        let weight = xv.abs() + 1;
        for (acc, nv) in n.iter_mut().zip(positive_vector_unchecked(g, v)?) {
            *acc += &weight * nv;
        }
    }
    let correction = g.vertex_matrix().minus_identity()?.mul_vec(&n)?;
    let omega: IntVector = x.iter().zip(&correction).map(|(a, b)| a + b).collect();
    if let Some(w) = omega.iter().position(|o| !o.is_positive()) {
        return Err(Error::InternalAssertion(format!(
            "essential representative is not positive at `{}`",
            g.vertices()[w]
        )));
    }
    simple_extension(g, &omega)
}

/// The truncated ladder on `w_1, …, w_m`: one loop at each vertex and two
/// parallel edges each way between neighbours.
pub fn ladder_graph(m: usize) -> Result<DirectedMultigraph> {
    if m < 1 {
        return Err(Error::OutOfRange {
            what: "ladder length",
            value: m,
        });
    }
    let mut b = GraphBuilder::new();
    for i in 1..=m {
        b.add_vertex(format!("w{i}"));
    }
    for i in 1..=m {
        let here = format!("w{i}");
        b.add_edge(Some(format!("loop{i}")), here.clone(), here.clone());
        if i > 1 {
            let left = format!("w{}", i - 1);
            b.add_edge(Some(format!("left{i}a")), here.clone(), left.clone());
            b.add_edge(Some(format!("left{i}b")), here.clone(), left);
        }
        if i < m {
            let right = format!("w{}", i + 1);
            b.add_edge(Some(format!("right{i}a")), here.clone(), right.clone());
            b.add_edge(Some(format!("right{i}b")), here, right);
        }
    }
    b.build()
}

/// Structural facts about a ladder truncation and, for each `j`, whether
/// `δ_{w_j}` lies outside the image of `A - I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderReport {
    pub m: usize,
    pub transitive: bool,
    pub condition_l: bool,
    pub sinks: Vec<String>,
    /// Every entry of `A - I` is even.
    pub even_entries: bool,
    /// `obstructions[j - 1]` is true iff `δ_{w_j} ∉ im(A - I)`.
    pub obstructions: Vec<bool>,
}

impl LadderReport {
    pub fn all_obstructed(&self) -> bool {
        self.obstructions.iter().all(|&o| o)
    }
}

pub fn ladder_report(m: usize) -> Result<LadderReport> {
    let g = ladder_graph(m)?;
    let a_minus_i = g.vertex_matrix().minus_identity()?;
    let two = BigInt::from(2);
    let even_entries = a_minus_i.entries().iter().all(|x| (x % &two).is_zero());
    let presentation = crate::cokernel::CokernelPresentation::new(a_minus_i);
    let obstructions = (0..m)
        .map(|j| {
            let delta = unit_vector(m, j);
            presentation.solve_in_image(&delta).map(|s| s.is_none())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LadderReport {
        m,
        transitive: g.is_transitive(),
        condition_l: g.satisfies_condition_l(),
        sinks: g.sinks().into_iter().map(String::from).collect(),
        even_entries,
        obstructions,
    })
}

/// True iff `δ_{w_j} ∉ im(A - I)` for the ladder truncation of length `m`.
pub fn obstruction_check(m: usize, j: usize) -> Result<bool> {
    if j < 1 || j > m {
        return Err(Error::OutOfRange {
            what: "ladder vertex",
            value: j,
        });
    }
    let a_minus_i: IntMatrix = ladder_graph(m)?.vertex_matrix().minus_identity()?;
    Ok(crate::cokernel::solve_in_image(&a_minus_i, &unit_vector(m, j - 1))?.is_none())
}

pub(crate) fn unit_vector(len: usize, at: usize) -> IntVector {
    let mut v = vec![BigInt::zero(); len];
    v[at] = BigInt::one();
    v
}
