//! Cokernels of integer matrices as finitely generated abelian groups.
//!
//! For `M: Z^cols → Z^rows`, `coker M = Z^rows / im M`. With `U·M·V = S` in
//! Smith form the class of `x` is determined by `U·x` read modulo the
//! diagonal of `S`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, IntVector};
use crate::snf::{smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelPresentation {
    matrix: IntMatrix,
    decomposition: SmithDecomposition,
    rank: usize,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

/// Presents `coker m`.
pub fn cokernel(m: &IntMatrix) -> CokernelPresentation {
    CokernelPresentation::new(m.clone())
}

/// Returns `n` with `m·n = x`, or `None` when `x` is not in the image of `m`.
pub fn solve_in_image(m: &IntMatrix, x: &[BigInt]) -> Result<Option<IntVector>> {
    CokernelPresentation::new(m.clone()).solve_in_image(x)
}

/// True iff `x - y` lies in the image of `m`.
pub fn coker_equal(m: &IntMatrix, x: &[BigInt], y: &[BigInt]) -> Result<bool> {
    CokernelPresentation::new(m.clone()).equal(x, y)
}

impl CokernelPresentation {
    pub fn new(matrix: IntMatrix) -> Self {
        let decomposition = smith_normal_form(&matrix);
        let diagonal = decomposition.diagonal_entries();
        let rank = decomposition.rank();
        let invariant_factors = diagonal[..rank]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        let free_rank = matrix.rows() - rank;
        CokernelPresentation {
            matrix,
            decomposition,
            rank,
            invariant_factors,
            free_rank,
        }
    }

    /// The presenting matrix `M`.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn decomposition(&self) -> &SmithDecomposition {
        &self.decomposition
    }

    /// Torsion coefficients `d_i > 1`, each dividing the next.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Rank of the presenting matrix.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Length of the vectors this group is a quotient of.
    pub fn ambient_dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// True when both presentations describe isomorphic groups.
    pub fn same_group(&self, other: &CokernelPresentation) -> bool {
        self.invariant_factors == other.invariant_factors && self.free_rank == other.free_rank
    }

    fn check_len(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.rows(),
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// Solves `M·n = x` exactly; `None` iff `x ∉ im M`.
    pub fn solve_in_image(&self, x: &[BigInt]) -> Result<Option<IntVector>> {
        self.check_len(x)?;
        let y = self.decomposition.left.mul_vec(x)?;
        let d = self.decomposition.diagonal_entries();
        let mut m = vec![BigInt::zero(); self.matrix.cols()];
        for (i, yi) in y.iter().enumerate() {
            if i < self.rank {
                let (q, r) = yi.div_rem(&d[i]);
                if !r.is_zero() {
                    return Ok(None);
                }
                m[i] = q;
            } else if !yi.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.decomposition.right.mul_vec(&m)?))
    }

    pub fn contains_in_image(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.solve_in_image(x)?.is_some())
    }

    /// True iff `[x] = [y]`, decided by solving `M·n = x - y`.
    pub fn equal(&self, x: &[BigInt], y: &[BigInt]) -> Result<bool> {
        self.check_len(x)?;
        self.check_len(y)?;
        let diff: IntVector = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.contains_in_image(&diff)
    }

    /// Canonical coordinates of `[x]` in `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^free_rank`.
    ///
    /// Torsion coordinates are reduced into `0..d_i`. Two vectors have the
    /// same class iff their coordinates are equal.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<IntVector> {
        self.check_len(x)?;
        let y = self.decomposition.left.mul_vec(x)?;
        let d = self.decomposition.diagonal_entries();
        let mut out = Vec::with_capacity(self.invariant_factors.len() + self.free_rank);
        for (i, yi) in y.into_iter().enumerate() {
            if i < self.rank {
                if !d[i].is_one() {
                    out.push(yi.mod_floor(&d[i]));
                }
            } else {
                out.push(yi);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CokernelPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// A class `[x]` in the cokernel of a fixed presentation.
#[derive(Debug, Clone)]
pub struct CokerElement {
    representative: IntVector,
    presentation: Arc<CokernelPresentation>,
}

impl CokerElement {
    pub fn new(presentation: Arc<CokernelPresentation>, representative: IntVector) -> Result<Self> {
        presentation.check_len(&representative)?;
        Ok(CokerElement {
            representative,
            presentation,
        })
    }

    pub fn zero(presentation: Arc<CokernelPresentation>) -> Self {
        let representative = vec![BigInt::zero(); presentation.ambient_dimension()];
        CokerElement {
            representative,
            presentation,
        }
    }

    pub fn representative(&self) -> &[BigInt] {
        &self.representative
    }

    pub fn presentation(&self) -> &Arc<CokernelPresentation> {
        &self.presentation
    }

    pub fn is_zero(&self) -> bool {
        self.presentation
            .contains_in_image(&self.representative)
            .expect("representative length checked at construction")
    }

    pub fn coordinates(&self) -> IntVector {
        self.presentation
            .coordinates(&self.representative)
            .expect("representative length checked at construction")
    }

    pub fn same_presentation(&self, other: &CokerElement) -> bool {
        Arc::ptr_eq(&self.presentation, &other.presentation)
            || self.presentation.matrix == other.presentation.matrix
    }

    fn check_compatible(&self, other: &CokerElement) -> Result<()> {
        if self.same_presentation(other) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    /// Class equality; fails if the presentations differ.
    pub fn class_eq(&self, other: &CokerElement) -> Result<bool> {
        self.check_compatible(other)?;
        self.presentation
            .equal(&self.representative, &other.representative)
    }

    pub fn checked_add(&self, other: &CokerElement) -> Result<CokerElement> {
        self.check_compatible(other)?;
        let representative = self
            .representative
            .iter()
            .zip(&other.representative)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CokerElement {
            representative,
            presentation: Arc::clone(&self.presentation),
        })
    }

    pub fn checked_sub(&self, other: &CokerElement) -> Result<CokerElement> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> CokerElement {
        CokerElement {
            representative: self.representative.iter().map(|a| -a).collect(),
            presentation: Arc::clone(&self.presentation),
        }
    }
}

/// Elements compare equal when they share a presentation and their
/// difference lies in the image of the presenting matrix.
impl PartialEq for CokerElement {
    fn eq(&self, other: &Self) -> bool {
        self.class_eq(other).unwrap_or(false)
    }
}

impl Eq for CokerElement {}
