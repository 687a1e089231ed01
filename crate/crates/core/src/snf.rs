//! Smith normal form over the integers with unimodular transforms.
//!
//! [`smith_normal_form`] returns `U`, `S`, `V` with `U·M·V = S`, `S`
//! diagonal, nonnegative, and `d_1 | d_2 | … | d_r`. Each round picks the
//! nonzero entry of least absolute value in the unreduced block as pivot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Largest dimension for which [`SmithDecomposition::verify`] recomputes
/// `det U` and `det V` exactly instead of relying on the tracked signs.
pub const DIRECT_DETERMINANT_LIMIT: usize = 8;

/// One elementary operation performed while reducing a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnfStep {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// `row[target] += factor * row[source]`
    AddRow {
        target: usize,
        source: usize,
        factor: BigInt,
    },
    /// `col[target] += factor * col[source]`
    AddCol {
        target: usize,
        source: usize,
        factor: BigInt,
    },
    NegateCol(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// `U`, rows × rows.
    pub left: IntMatrix,
    /// `S`, rows × cols.
    pub diagonal: IntMatrix,
    /// `V`, cols × cols.
    pub right: IntMatrix,
    /// `det U`, tracked through the elementary operations (±1).
    pub left_determinant: i8,
    /// `det V`, tracked through the elementary operations (±1).
    pub right_determinant: i8,
}

impl SmithDecomposition {
    /// The diagonal entries `d_1, …, d_min(rows, cols)`, zeros included.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal_entries()
            .iter()
            .take_while(|d| !d.is_zero())
            .count()
    }

    /// Checks every invariant of the decomposition against the original matrix.
    pub fn verify(&self, m: &IntMatrix) -> Result<()> {
        let fail = |msg: &str| Err(Error::InternalAssertion(format!("SNF: {msg}")));
        if self.left.rows() != m.rows()
            || !self.left.is_square()
            || self.right.rows() != m.cols()
            || !self.right.is_square()
            || self.diagonal.rows() != m.rows()
            || self.diagonal.cols() != m.cols()
        {
            return fail("transform shapes do not match the input");
        }
        if &(&self.left * m) * &self.right != self.diagonal {
            return fail("U·M·V differs from S");
        }
        if !self.diagonal.is_diagonal() {
            return fail("S has a nonzero off-diagonal entry");
        }
        let d = self.diagonal_entries();
        if d.iter().any(Signed::is_negative) {
            return fail("negative diagonal entry");
        }
        for pair in d.windows(2) {
            let divides = if pair[0].is_zero() {
                pair[1].is_zero()
            } else {
                pair[1].is_multiple_of(&pair[0])
            };
            if !divides {
                return fail("divisibility chain broken");
            }
        }
        for (t, tracked) in [
            (&self.left, self.left_determinant),
            (&self.right, self.right_determinant),
        ] {
            if tracked.abs() != 1 {
                return fail("tracked determinant is not a unit");
            }
            if t.rows() <= DIRECT_DETERMINANT_LIMIT {
                let det = t.determinant()?;
                if det != BigInt::from(tracked) {
                    return fail("transform is not unimodular");
                }
            }
        }
        Ok(())
    }
}

/// Computes the Smith normal form of `m`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    smith_normal_form_traced(m, |_, _| {})
}

/// Like [`smith_normal_form`], reporting each elementary operation and the
/// working matrix after it has been applied.
pub fn smith_normal_form_traced<F>(m: &IntMatrix, mut trace: F) -> SmithDecomposition
where
    F: FnMut(&SnfStep, &IntMatrix),
{
    let mut r = Reducer {
        s: m.clone(),
        u: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
        det_u: 1,
        det_v: 1,
        trace: &mut trace,
    };
    let rows = m.rows();
    let cols = m.cols();
    for t in 0..rows.min(cols) {
        let mut found = false;
        while let Some((pi, pj)) = r.min_pivot(t) {
            found = true;
            r.apply(SnfStep::SwapRows(t, pi));
            r.apply(SnfStep::SwapCols(t, pj));

            let mut clean = true;
            for i in t + 1..rows {
                if r.s[(i, t)].is_zero() {
                    continue;
                }
                let q = &r.s[(i, t)] / &r.s[(t, t)];
                r.apply(SnfStep::AddRow {
                    target: i,
                    source: t,
                    factor: -q,
                });
                clean &= r.s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if r.s[(t, j)].is_zero() {
                    continue;
                }
                let q = &r.s[(t, j)] / &r.s[(t, t)];
                r.apply(SnfStep::AddCol {
                    target: j,
                    source: t,
                    factor: -q,
                });
                clean &= r.s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            match r.non_multiple(t) {
                Some(i) => r.apply(SnfStep::AddRow {
                    target: t,
                    source: i,
                    factor: BigInt::from(1),
                }),
                None => break,
            }
        }
        if !found {
            break;
        }
        if r.s[(t, t)].is_negative() {
            r.apply(SnfStep::NegateCol(t));
        }
    }
    SmithDecomposition {
        left: r.u,
        diagonal: r.s,
        right: r.v,
        left_determinant: r.det_u,
        right_determinant: r.det_v,
    }
}

struct Reducer<'a, F> {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    det_u: i8,
    det_v: i8,
    trace: &'a mut F,
}

impl<F: FnMut(&SnfStep, &IntMatrix)> Reducer<'_, F> {
    fn apply(&mut self, step: SnfStep) {
        match &step {
            SnfStep::SwapRows(a, b) => {
                if a == b {
                    return;
                }
                self.s.swap_rows(*a, *b);
                self.u.swap_rows(*a, *b);
                self.det_u = -self.det_u;
            }
            SnfStep::SwapCols(a, b) => {
                if a == b {
                    return;
                }
                self.s.swap_cols(*a, *b);
                self.v.swap_cols(*a, *b);
                self.det_v = -self.det_v;
            }
            SnfStep::AddRow {
                target,
                source,
                factor,
            } => {
                self.s.add_row_multiple(*target, *source, factor);
                self.u.add_row_multiple(*target, *source, factor);
            }
            SnfStep::AddCol {
                target,
                source,
                factor,
            } => {
                self.s.add_col_multiple(*target, *source, factor);
                self.v.add_col_multiple(*target, *source, factor);
            }
            SnfStep::NegateCol(j) => {
                self.s.negate_col(*j);
                self.v.negate_col(*j);
                self.det_v = -self.det_v;
            }
        }
        (self.trace)(&step, &self.s);
    }

    /// Position of the nonzero entry of least magnitude in the block `[t.., t..]`,
    /// first in row-major order on ties.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let v = &self.s[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().is_none_or(|(_, b)| a < *b) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// A row below `t` holding an entry not divisible by the pivot.
    fn non_multiple(&self, t: usize) -> Option<usize> {
        let p = &self.s[(t, t)];
        (t + 1..self.s.rows())
            .find(|&i| (t + 1..self.s.cols()).any(|j| !self.s[(i, j)].is_multiple_of(p)))
    }
}
