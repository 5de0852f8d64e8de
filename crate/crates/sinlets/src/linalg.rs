//! Dense column-pivoted Householder QR, just enough for the overdetermined
//! least-squares fits in [`crate::analysis`] and [`crate::image`].
//!
//! The normal-equations route (F^T F)^{-1} F^T squares the condition number,
//! so fits go through an orthogonal factorization instead; pivoting makes
//! rank deficiency detectable and reportable.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    /// y = A x
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// y = A^T x
    pub fn apply_transpose(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.rows);
        let mut y = vec![T::zero(); self.cols];
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            for (c, &a) in row.iter().enumerate() {
                y[c] += a * x[r];
            }
        }
        y
    }
}

/// Column-pivoted Householder QR of a tall matrix (rows >= cols), reusable
/// across right-hand sides.
///
/// The reflector vectors stay in the lower trapezoid of `factors`; the
/// upper triangle holds R with its diagonal in `diag`.
#[derive(Debug, Clone)]
pub struct CpQr<T> {
    factors: DenseMatrix<T>,
    diag: Vec<T>,
    v_norm_sq: Vec<T>,
    perm: Vec<usize>,
    rank: usize,
}

impl<T: Real> CpQr<T> {
    /// Factor with the tight (machine-precision) rank threshold.
    pub fn new(a: &DenseMatrix<T>) -> Result<Self> {
        Self::with_threshold_factor(a, T::epsilon() * T::of_usize(a.rows().max(a.cols())))
    }

    /// Factor with rank cut at `factor` times the largest column norm.
    ///
    /// Rank-truncated solves amplify roundoff by one over the smallest kept
    /// diagonal; chained solves (as in the separable image fit) want the
    /// sqrt(eps) balance point rather than the eps-level cut.
    pub fn with_threshold_factor(a: &DenseMatrix<T>, factor: T) -> Result<Self> {
        let rows = a.rows();
        let cols = a.cols();
        if rows < cols {
            return Err(Error::IllPosed {
                effective_rank: rows,
                needed: cols,
            });
        }
        let mut work = a.clone();
        let mut perm: Vec<usize> = (0..cols).collect();
        let mut diag = vec![T::zero(); cols];
        let mut v_norm_sq = vec![T::zero(); cols];

        let mut col_norms: Vec<T> = (0..cols)
            .map(|c| (0..rows).fold(T::zero(), |acc, r| acc + work.get(r, c) * work.get(r, c)))
            .collect();

        let mut threshold = T::zero();
        let mut rank = cols;

        for step in 0..cols {
            let (pivot, &pivot_norm) = col_norms[step..]
                .iter()
                .enumerate()
                .max_by(|(_, x), (_, y)| x.partial_cmp(y).expect("finite norms"))
                .map(|(i, v)| (i + step, v))
                .expect("non-empty column range");
            if step == 0 {
                threshold = factor * pivot_norm.sqrt();
            }
            if pivot_norm.sqrt().max(T::zero()) <= threshold {
                rank = step;
                break;
            }
            if pivot != step {
                for r in 0..rows {
                    let tmp = work.get(r, step);
                    work.set(r, step, work.get(r, pivot));
                    work.set(r, pivot, tmp);
                }
                col_norms.swap(step, pivot);
                perm.swap(step, pivot);
            }

            // recompute the pivot column norm from scratch; the running
            // downdate loses accuracy after many steps
            let fresh = (step..rows)
                .fold(T::zero(), |acc, r| acc + work.get(r, step) * work.get(r, step));
            let mut alpha = fresh.sqrt();
            if alpha <= threshold {
                rank = step;
                break;
            }
            if work.get(step, step) > T::zero() {
                alpha = -alpha;
            }

            // Householder vector v lives in rows step.. of column step,
            // with its head adjusted by alpha
            let head = work.get(step, step) - alpha;
            work.set(step, step, head);
            let vns = (step..rows)
                .fold(T::zero(), |acc, r| acc + work.get(r, step) * work.get(r, step));
            v_norm_sq[step] = vns;
            diag[step] = alpha;

            if vns > T::zero() {
                let two = T::of(2.0);
                for c in step + 1..cols {
                    let dot = (step..rows)
                        .fold(T::zero(), |acc, r| acc + work.get(r, step) * work.get(r, c));
                    let scale = two * dot / vns;
                    for r in step..rows {
                        let val = work.get(r, c) - scale * work.get(r, step);
                        work.set(r, c, val);
                    }
                }
            }
            for c in step + 1..cols {
                let t = work.get(step, c);
                col_norms[c] = (col_norms[c] - t * t).max(T::zero());
            }
        }

        Ok(CpQr {
            factors: work,
            diag,
            v_norm_sq,
            perm,
            rank,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cols(&self) -> usize {
        self.factors.cols()
    }

    fn apply_q_transpose(&self, rhs: &mut [T]) {
        let rows = self.factors.rows();
        let two = T::of(2.0);
        for step in 0..self.rank {
            let vns = self.v_norm_sq[step];
            if vns > T::zero() {
                let dot = (step..rows)
                    .fold(T::zero(), |acc, r| acc + self.factors.get(r, step) * rhs[r]);
                let scale = two * dot / vns;
                for r in step..rows {
                    rhs[r] -= scale * self.factors.get(r, step);
                }
            }
        }
    }

    fn back_substitute(&self, rhs: &[T], active: usize) -> Vec<T> {
        let cols = self.cols();
        let mut x = vec![T::zero(); cols];
        for i in (0..active).rev() {
            let mut acc = rhs[i];
            for j in i + 1..active {
                acc -= self.factors.get(i, j) * x[j];
            }
            x[i] = acc / self.diag[i];
        }
        let mut solution = vec![T::zero(); cols];
        for (i, &p) in self.perm.iter().enumerate() {
            solution[p] = x[i];
        }
        solution
    }

    /// Least-squares solution demanding full column rank.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        if self.rank < self.cols() {
            return Err(Error::IllPosed {
                effective_rank: self.rank,
                needed: self.cols(),
            });
        }
        Ok(self.solve_truncated(b))
    }

    /// Least-squares solution using only the effective rank; deficient
    /// directions get zero coefficients (in the pivoted ordering).
    pub fn solve_truncated(&self, b: &[T]) -> Vec<T> {
        assert_eq!(b.len(), self.factors.rows());
        let mut rhs = b.to_vec();
        self.apply_q_transpose(&mut rhs);
        self.back_substitute(&rhs, self.rank)
    }
}

/// Solution of an overdetermined system, with the rank the factorization saw.
#[derive(Debug, Clone)]
pub struct LeastSquares<T> {
    pub solution: Vec<T>,
    pub rank: usize,
}

/// Solve min ||A x - b||_2 for full-column-rank A (rows >= cols); rank
/// deficiency is an error that reports the effective rank.
pub fn solve_least_squares<T: Real>(a: &DenseMatrix<T>, b: &[T]) -> Result<LeastSquares<T>> {
    let qr = CpQr::new(a)?;
    let solution = qr.solve(b)?;
    Ok(LeastSquares {
        solution,
        rank: qr.rank(),
    })
}
