//! `Ext(C*(G))` computed as `coker(A_G - I)`, its isomorphism with
//! `coker(B_G - I)`, and the classes of 1-sink extensions.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cokernel::{CokerElement, CokernelPresentation};
use crate::error::{Error, Hypothesis, Result};
use crate::extension::{simple_extension, OneSinkExtension};
use crate::graph::DirectedMultigraph;
use crate::matrix::{IntMatrix, IntVector};

/// Fails unless `g` has no sinks and satisfies Condition (L).
pub fn check_hypotheses(g: &DirectedMultigraph) -> Result<()> {
    let sinks = g.sinks();
    if !sinks.is_empty() {
        return Err(Error::HypothesisViolated(Hypothesis::NoSinks(
            sinks.into_iter().map(String::from).collect(),
        )));
    }
    if !g.satisfies_condition_l() {
        return Err(Error::HypothesisViolated(Hypothesis::ConditionL));
    }
    Ok(())
}

/// The Ext group of a finite graph algebra in its two presentations.
#[derive(Debug, Clone)]
pub struct ExtGroup {
    graph: DirectedMultigraph,
    source_matrix: IntMatrix,
    range_matrix: IntMatrix,
    vertex_presentation: Arc<CokernelPresentation>,
    edge_presentation: Arc<CokernelPresentation>,
}

pub fn ext_group(g: &DirectedMultigraph) -> Result<ExtGroup> {
    ExtGroup::new(g)
}

impl ExtGroup {
    /// Checks the hypotheses, presents `coker(A - I)` and `coker(B - I)`, and
    /// confirms the two groups agree.
    pub fn new(g: &DirectedMultigraph) -> Result<Self> {
        check_hypotheses(g)?;
        let ext = Self::presentations_only(g);
        if !ext.presentations_agree() {
            return Err(Error::InternalAssertion(format!(
                "coker(A-I) = {} but coker(B-I) = {}",
                ext.vertex_presentation, ext.edge_presentation
            )));
        }
        Ok(ext)
    }

    /// Both cokernels without checking the hypotheses. For graphs with sinks
    /// or exitless cycles `coker(A - I)` need not be the Ext group.
    pub fn presentations_only(g: &DirectedMultigraph) -> Self {
        let a = g
            .vertex_matrix()
            .minus_identity()
            .expect("vertex matrix is square");
        let b = g
            .edge_matrix()
            .minus_identity()
            .expect("edge matrix is square");
        ExtGroup {
            graph: g.clone(),
            source_matrix: g.source_matrix(),
            range_matrix: g.range_matrix(),
            vertex_presentation: Arc::new(CokernelPresentation::new(a)),
            edge_presentation: Arc::new(CokernelPresentation::new(b)),
        }
    }

    pub fn graph(&self) -> &DirectedMultigraph {
        &self.graph
    }

    /// `coker(A_G - I)`.
    pub fn vertex_presentation(&self) -> &Arc<CokernelPresentation> {
        &self.vertex_presentation
    }

    /// `coker(B_G - I)`.
    pub fn edge_presentation(&self) -> &Arc<CokernelPresentation> {
        &self.edge_presentation
    }

    pub fn presentations_agree(&self) -> bool {
        self.vertex_presentation.same_group(&self.edge_presentation)
    }

    /// `[x]` in `coker(A_G - I)` for a vector indexed by vertices.
    pub fn vertex_class(&self, x: IntVector) -> Result<CokerElement> {
        CokerElement::new(Arc::clone(&self.vertex_presentation), x)
    }

    /// `[u]` in `coker(B_G - I)` for a vector indexed by edges.
    pub fn edge_class(&self, u: IntVector) -> Result<CokerElement> {
        CokerElement::new(Arc::clone(&self.edge_presentation), u)
    }

    /// `S̄: coker(B - I) → coker(A - I)`, `[u] ↦ [S_G u]`.
    pub fn induced_s_bar(&self, c: &CokerElement) -> Result<CokerElement> {
        if c.presentation().matrix() != self.edge_presentation.matrix() {
            return Err(Error::PresentationMismatch);
        }
        self.vertex_class(self.source_matrix.mul_vec(c.representative())?)
    }

    /// `R̄: coker(A - I) → coker(B - I)`, `[y] ↦ [R_G y]`.
    pub fn induced_r_bar(&self, c: &CokerElement) -> Result<CokerElement> {
        if c.presentation().matrix() != self.vertex_presentation.matrix() {
            return Err(Error::PresentationMismatch);
        }
        self.edge_class(self.range_matrix.mul_vec(c.representative())?)
    }

    /// The class of `ω_E` in `coker(A_G - I)`, flagged with essentiality.
    pub fn wojciech_class(&self, e: &OneSinkExtension) -> Result<WojciechClass> {
        if e.base() != &self.graph {
            return Err(Error::BaseMismatch);
        }
        let vector = wojciech_vector(e)?;
        let class = self.vertex_class(vector.entries.clone())?;
        Ok(WojciechClass {
            vector,
            class,
            essential: e.is_essential(),
        })
    }
}

impl fmt::Display for ExtGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.vertex_presentation.fmt(f)
    }
}

/// `ω_E(w)`: the number of paths from `w` to the sink using added edges only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WojciechVector {
    entries: IntVector,
}

impl WojciechVector {
    pub fn new(entries: IntVector) -> Result<Self> {
        if let Some(index) = entries.iter().position(Signed::is_negative) {
            return Err(Error::NegativeEntry {
                index,
                value: entries[index].to_string(),
            });
        }
        Ok(WojciechVector { entries })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn into_entries(self) -> IntVector {
        self.entries
    }
}

impl fmt::Display for WojciechVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct WojciechClass {
    pub vector: WojciechVector,
    pub class: CokerElement,
    /// False when some base vertex cannot reach the sink; the class is
    /// still computed.
    pub essential: bool,
}

/// Counts the paths into the sink along added edges by dynamic programming
/// over the added part, which must be acyclic.
pub fn wojciech_vector(e: &OneSinkExtension) -> Result<WojciechVector> {
    let g = e.graph();
    let nb = e.base().vertex_count();
    let first_added_edge = e.base().edge_count();
    let sink = e.sink_index();
    let added_out = |v: usize| {
        g.out_edges(v)
            .iter()
            .copied()
            .filter(move |&k| k >= first_added_edge)
    };

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        New,
        Open,
        Done,
    }
    let mut state = vec![State::New; g.vertex_count()];
    let mut count = vec![BigInt::zero(); g.vertex_count()];

    for root in 0..nb {
        if state[root] == State::Done {
            continue;
        }
        state[root] = State::Open;
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, added_out(root).collect())];
        while let Some((v, pending)) = stack.last_mut() {
            let v = *v;
            if let Some(k) = pending.pop() {
                let w = g.edges()[k].range;
                match state[w] {
                    State::Done => {}
                    State::Open => {
                        return Err(Error::InvalidExtension(format!(
                            "added edges form a loop through `{}`",
                            g.vertices()[w]
                        )))
                    }
                    State::New => {
                        state[w] = State::Open;
                        stack.push((w, added_out(w).collect()));
                    }
                }
                continue;
            }
            stack.pop();
            let mut total: BigInt = if v == sink {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            for k in added_out(v) {
                total += &count[g.edges()[k].range];
            }
            count[v] = total;
            state[v] = State::Done;
        }
    }
    count.truncate(nb);
    WojciechVector::new(count)
}

/// The class of `ω_E` in `coker(A_G - I)`; the base graph must satisfy the
/// hypotheses.
pub fn wojciech_class(e: &OneSinkExtension) -> Result<WojciechClass> {
    ExtGroup::new(e.base())?.wojciech_class(e)
}

/// `x(f) = ω_E(r(f))` for every base edge `f`.
pub fn edge_class_vector(e: &OneSinkExtension) -> Result<IntVector> {
    let omega = wojciech_vector(e)?;
    Ok(e.base()
        .edges()
        .iter()
        .map(|f| omega.entries[f.range].clone())
        .collect())
}

/// A simple extension whose Wojciech vector is `ω_{E1} + ω_{E2}`.
pub fn sum_extensions(e1: &OneSinkExtension, e2: &OneSinkExtension) -> Result<OneSinkExtension> {
    if e1.base() != e2.base() {
        return Err(Error::BaseMismatch);
    }
    let a = wojciech_vector(e1)?;
    let b = wojciech_vector(e2)?;
    let sum: IntVector = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| x + y)
        .collect();
    simple_extension(e1.base(), &sum)
}
