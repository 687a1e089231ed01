//! Finite directed multigraphs `G = (G^0, G^1, r, s)` and their incidence
//! matrices.
//!
//! Vertex and edge orders are fixed at construction. Row and column `i` of
//! every matrix built here refers to the `i`-th declared vertex or edge.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    /// Index of `s(e)`.
    pub source: usize,
    /// Index of `r(e)`.
    pub range: usize,
}

#[derive(Debug, Clone)]
pub struct DirectedMultigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl PartialEq for DirectedMultigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DirectedMultigraph {}

/// Collects vertices and edges, then validates them in [`GraphBuilder::build`].
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<(Option<String>, String, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.add_vertex(id);
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        range: impl Into<String>,
    ) -> Self {
        self.add_edge(Some(id.into()), source, range);
        self
    }

    /// Adds an edge whose id is generated as `e<k>` at build time.
    pub fn auto_edge(mut self, source: impl Into<String>, range: impl Into<String>) -> Self {
        self.add_edge(None, source, range);
        self
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) {
        self.vertices.push(id.into());
    }

    pub fn add_edge(
        &mut self,
        id: Option<String>,
        source: impl Into<String>,
        range: impl Into<String>,
    ) {
        self.edges.push((id, source.into(), range.into()));
    }

    pub fn build(self) -> Result<DirectedMultigraph> {
        let mut vertex_index = HashMap::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut taken: HashSet<&str> = HashSet::new();
        for id in self.edges.iter().filter_map(|(id, _, _)| id.as_deref()) {
            if !taken.insert(id) {
                return Err(Error::DuplicateId(id.to_string()));
            }
        }
        let mut generated = HashSet::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, (id, s, r)) in self.edges.iter().enumerate() {
            let id = match id {
                Some(id) => id.clone(),
                None => {
                    let mut n = k;
                    let mut candidate = format!("e{n}");
                    while taken.contains(candidate.as_str()) || generated.contains(&candidate) {
                        n += 1;
                        candidate = format!("e{n}");
                    }
                    generated.insert(candidate.clone());
                    candidate
                }
            };
            let source = *vertex_index
                .get(s)
                .ok_or_else(|| Error::UnknownVertex(s.clone()))?;
            let range = *vertex_index
                .get(r)
                .ok_or_else(|| Error::UnknownVertex(r.clone()))?;
            edges.push(Edge { id, source, range });
        }
        Ok(DirectedMultigraph::from_parts(
            self.vertices,
            edges,
            vertex_index,
        ))
    }
}

impl DirectedMultigraph {
    fn from_parts(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        vertex_index: HashMap<String, usize>,
    ) -> Self {
        let n = vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            out_edges[e.source].push(k);
            in_edges[e.range].push(k);
            edge_index.insert(e.id.clone(), k);
        }
        DirectedMultigraph {
            vertices,
            edges,
            vertex_index,
            edge_index,
            out_edges,
            in_edges,
        }
    }

    /// Builds a graph from `(edge id, source id, range id)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.add_vertex(v);
        }
        for (id, s, r) in edges {
            b.add_edge(Some(id), s, r);
        }
        b.build()
    }

    /// Builds a graph whose vertex matrix is `counts`, with edges listed in
    /// row-major order and ids `e0, e1, …`.
    pub fn from_counts<V>(vertices: V, counts: &[Vec<usize>]) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if counts.len() != vertices.len() {
            return Err(Error::DimensionMismatch {
                expected: vertices.len(),
                actual: counts.len(),
            });
        }
        let mut b = GraphBuilder::new();
        for v in &vertices {
            b.add_vertex(v.clone());
        }
        let mut k = 0;
        for (i, row) in counts.iter().enumerate() {
            if row.len() != vertices.len() {
                return Err(Error::DimensionMismatch {
                    expected: vertices.len(),
                    actual: row.len(),
                });
            }
            for (j, &c) in row.iter().enumerate() {
                for _ in 0..c {
                    b.add_edge(
                        Some(format!("e{k}")),
                        vertices[i].clone(),
                        vertices[j].clone(),
                    );
                    k += 1;
                }
            }
        }
        b.build()
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

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub(crate) fn require_vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Edge indices with source `v`, in declaration order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Edge indices with range `v`, in declaration order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    /// `A_G(v, w)` = number of edges from `v` to `w`.
    pub fn vertex_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut a = IntMatrix::zeros(n, n);
        for e in &self.edges {
            a[(e.source, e.range)] += 1;
        }
        a
    }

    /// `B_G(e, f) = 1` iff `r(e) = s(f)`.
    pub fn edge_matrix(&self) -> IntMatrix {
        let m = self.edge_count();
        let mut b = IntMatrix::zeros(m, m);
        for (i, e) in self.edges.iter().enumerate() {
            for &j in &self.out_edges[e.range] {
                b[(i, j)] = 1.into();
            }
        }
        b
    }

    /// `S_G(v, e) = 1` iff `s(e) = v`; vertices × edges.
    pub fn source_matrix(&self) -> IntMatrix {
        let mut s = IntMatrix::zeros(self.vertex_count(), self.edge_count());
        for (k, e) in self.edges.iter().enumerate() {
            s[(e.source, k)] = 1.into();
        }
        s
    }

    /// `R_G(e, v) = 1` iff `r(e) = v`; edges × vertices.
    pub fn range_matrix(&self) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.edge_count(), self.vertex_count());
        for (k, e) in self.edges.iter().enumerate() {
            r[(k, e.range)] = 1.into();
        }
        r
    }

    /// Vertices reachable from `v` by a path of length at least one.
    pub fn reachable_from(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &e in &self.out_edges[v] {
            let w = self.edges[e].range;
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &e in &self.out_edges[u] {
                let w = self.edges[e].range;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Vertices that reach some vertex of `targets` by a path of length at
    /// least zero (every target reaches itself).
    pub fn vertices_reaching(&self, targets: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &t in targets {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &e in &self.in_edges[u] {
                let w = self.edges[e].source;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// `v ≥ w`: a path from `v` to `w` exists, where `v = w` always counts.
    pub fn reaches(&self, v: &str, w: &str) -> Result<bool> {
        let (vi, wi) = (self.require_vertex(v)?, self.require_vertex(w)?);
        Ok(vi == wi || self.reachable_from(vi)[wi])
    }

    /// A path of length at least one from `v` to `w` exists.
    pub fn reaches_strict(&self, v: &str, w: &str) -> Result<bool> {
        let (vi, wi) = (self.require_vertex(v)?, self.require_vertex(w)?);
        Ok(self.reachable_from(vi)[wi])
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_edges[v].is_empty()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_edges[v].is_empty()
    }

    /// Vertices emitting no edges, in declaration order.
    pub fn sinks(&self) -> Vec<&str> {
        (0..self.vertex_count())
            .filter(|&v| self.is_sink(v))
            .map(|v| self.vertices[v].as_str())
            .collect()
    }

    /// Vertices receiving no edges, in declaration order.
    pub fn sources(&self) -> Vec<&str> {
        (0..self.vertex_count())
            .filter(|&v| self.is_source(v))
            .map(|v| self.vertices[v].as_str())
            .collect()
    }

    /// Strongly connected components (Tarjan), each listed in ascending
    /// vertex order; components appear in reverse topological order.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        const UNVISITED: usize = usize::MAX;
        let n = self.vertex_count();
        let mut index = vec![UNVISITED; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut components = Vec::new();
        let mut next = 0;
        // (vertex, position in its out-edge list)
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNVISITED {
                continue;
            }
            call.push((root, 0));
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if let Some(&e) = self.out_edges[v].get(*pos) {
                    *pos += 1;
                    let w = self.edges[e].range;
                    if index[w] == UNVISITED {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    component.sort_unstable();
                    components.push(component);
                }
            }
        }
        components
    }

    /// Components that carry a cycle: more than one vertex, or a single
    /// vertex with a loop edge.
    fn cyclic_components(&self) -> Vec<Vec<usize>> {
        self.strongly_connected_components()
            .into_iter()
            .filter(|c| {
                c.len() > 1
                    || self.out_edges[c[0]]
                        .iter()
                        .any(|&e| self.edges[e].range == c[0])
            })
            .collect()
    }

    /// Cycles with no exit, one per offending component, as vertex index lists.
    ///
    /// A cycle has no exit exactly when each of its vertices emits a single
    /// edge; such a cycle is closed under reachability and therefore fills its
    /// whole strongly connected component.
    pub fn exitless_cycles(&self) -> Vec<Vec<usize>> {
        self.cyclic_components()
            .into_iter()
            .filter(|c| c.iter().all(|&v| self.out_edges[v].len() == 1))
            .collect()
    }

    /// Condition (L): every loop has an exit.
    pub fn satisfies_condition_l(&self) -> bool {
        self.exitless_cycles().is_empty()
    }

    /// Every vertex reaches every other vertex.
    pub fn is_transitive(&self) -> bool {
        matches!(self.strongly_connected_components().len(), 0 | 1)
    }
}

/// A nonempty sequence of composable edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    edges: Vec<String>,
    source: String,
    range: String,
}

impl Path {
    pub fn new<I, S>(graph: &DirectedMultigraph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let edges: Vec<String> = edges.into_iter().map(Into::into).collect();
        let mut resolved = Vec::with_capacity(edges.len());
        for id in &edges {
            let k = graph
                .edge_index(id)
                .ok_or_else(|| Error::UnknownEdge(id.clone()))?;
            resolved.push(&graph.edges()[k]);
        }
        let (first, last) = match (resolved.first(), resolved.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::EmptyPath),
        };
        for (i, pair) in resolved.windows(2).enumerate() {
            if pair[0].range != pair[1].source {
                return Err(Error::BrokenPath(edges[i].clone(), edges[i + 1].clone()));
            }
        }
        Ok(Path {
            source: graph.vertices()[first.source].clone(),
            range: graph.vertices()[last.range].clone(),
            edges,
        })
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn range(&self) -> &str {
        &self.range
    }

    /// Range and source coincide.
    pub fn is_loop(&self) -> bool {
        self.source == self.range
    }
}
