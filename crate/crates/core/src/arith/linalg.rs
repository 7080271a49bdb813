use std::fmt::Debug;

use num_traits::{One, Zero};

use super::{RatFun, Rational};
use crate::error::{Error, Result};

/// Minimal field interface for exact Gaussian elimination.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, o: &Self) -> Self;
    fn sub_elem(&self, o: &Self) -> Self;
    fn mul_elem(&self, o: &Self) -> Self;
    /// Panics on a zero divisor; callers only divide by pivots.
    fn div_elem(&self, o: &Self) -> Self;
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn div_elem(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for RatFun {
    fn zero_like(&self) -> Self {
        RatFun::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RatFun::one(self.vars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn div_elem(&self, o: &Self) -> Self {
        self / o
    }
}

/// Reduced row echelon form with the list of pivot columns.
#[derive(Debug, Clone)]
pub struct Rref<F> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-reduce in place; pivots are normalised to one and cleared above and
/// below. `ncols` limits which columns may host pivots.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Rref<F> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero_elem()) else {
            continue;
        };
        rows.swap(r, p);
        let pv = rows[r][col].clone();
        if !pv.is_zero_elem() {
            let one = pv.one_like();
            if pv != one {
                for v in rows[r].iter_mut() {
                    if !v.is_zero_elem() {
                        *v = v.div_elem(&pv);
                    }
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero_elem() {
                continue;
            }
            let f = row[col].clone();
            for (v, pvv) in row.iter_mut().zip(&pivot_row) {
                if !pvv.is_zero_elem() {
                    *v = v.sub_elem(&f.mul_elem(pvv));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    Rref { rows, pivots }
}

/// Result of [`solve_linear`].
#[derive(Debug, Clone)]
pub struct LinearSolution<F> {
    /// A particular solution, absent when the system is inconsistent.
    pub particular: Option<Vec<F>>,
    /// Basis of the null space, one vector per free column.
    pub kernel: Vec<Vec<F>>,
    pub rank: usize,
}

/// Solve `A x = b` exactly. `zero` fixes the ambient field (needed to build
/// zero elements when the matrix has no columns or rows).
pub fn solve_linear<F: Field>(a: &[Vec<F>], b: &[F], zero: &F) -> Result<LinearSolution<F>> {
    let nrows = a.len();
    if b.len() != nrows {
        return Err(Error::Structural(format!(
            "matrix has {nrows} rows but right-hand side has {}",
            b.len()
        )));
    }
    let ncols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != ncols) {
        return Err(Error::Structural("ragged matrix".into()));
    }
    let aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let red = rref(aug, ncols);
    let consistent = red
        .rows
        .iter()
        .all(|row| !row[..ncols].iter().all(Field::is_zero_elem) || row[ncols].is_zero_elem());
    let zero = zero.zero_like();
    let one = zero.one_like();
    let particular = consistent.then(|| {
        let mut x = vec![zero.clone(); ncols];
        for (i, &p) in red.pivots.iter().enumerate() {
            x[p] = red.rows[i][ncols].clone();
        }
        x
    });
    let free: Vec<usize> = (0..ncols).filter(|c| !red.pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); ncols];
            v[f] = one.clone();
            for (i, &p) in red.pivots.iter().enumerate() {
                let e = &red.rows[i][f];
                if !e.is_zero_elem() {
                    v[p] = zero.sub_elem(e);
                }
            }
            v
        })
        .collect();
    let sol = LinearSolution {
        particular,
        kernel,
        rank: red.pivots.len(),
    };
    debug_assert!(
        verify_solution(a, b, &sol, &zero),
        "solve_linear multiply-back failed"
    );
    Ok(sol)
}

fn mat_vec<F: Field>(a: &[Vec<F>], x: &[F], zero: &F) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(x).fold(zero.clone(), |acc, (r, v)| {
                if r.is_zero_elem() || v.is_zero_elem() {
                    acc
                } else {
                    acc.add_elem(&r.mul_elem(v))
                }
            })
        })
        .collect()
}

/// Multiply-back check of a solution.
pub fn verify_solution<F: Field>(a: &[Vec<F>], b: &[F], sol: &LinearSolution<F>, zero: &F) -> bool {
    if let Some(x) = &sol.particular {
        if mat_vec(a, x, zero) != b {
            return false;
        }
    }
    sol.kernel
        .iter()
        .all(|k| mat_vec(a, k, zero).iter().all(Field::is_zero_elem))
}

/// Rank of a matrix over a field.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    rref(rows.to_vec(), ncols).rank()
}
