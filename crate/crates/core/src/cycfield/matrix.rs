use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::{CycScalar, MAX_ORDER};
use crate::{Error, Result};

/// Dense matrix over a cyclotomic field. All entries are held at one common
/// order (the lcm of the entries' declared orders), fixed at construction.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<CycScalar>,
}

/// Result of reduced row-echelon elimination.
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<CycScalar>) -> Result<ExactMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let mut order = 1u32;
        for e in &entries {
            order = num::integer::lcm(order, e.order());
            if order > MAX_ORDER {
                return Err(Error::OrderTooLarge(order));
            }
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> CycScalar) -> ExactMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix::from_fn(rows, cols, |_, _| CycScalar::zero())
    }

    pub fn identity(n: usize) -> ExactMatrix {
        ExactMatrix::from_fn(n, n, |r, c| if r == c { CycScalar::one() } else { CycScalar::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<CycScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj_entries(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).conj())
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).add(other.get(r, c))
        }))
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).sub(other.get(r, c))
        }))
    }

    pub fn neg(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).neg())
    }

    pub fn scale(&self, s: &CycScalar) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).mul(s))
    }

    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[CycScalar]) -> Result<Vec<CycScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x{} applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![CycScalar::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                out[r] = out[r].add(&a.mul(&v[c]));
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                if r == c {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn eq_val(&self, other: &ExactMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| a.eq_val(b))
    }

    pub fn trace(&self) -> CycScalar {
        let mut t = CycScalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.add(self.get(i, i));
        }
        t
    }

    fn check_same_shape(&self, other: &ExactMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row-echelon form. Forward elimination is fraction-free in the
    /// Bareiss style (cross-multiplication, exact division by the previous
    /// pivot); divisions appear only when pivot rows are normalized at the
    /// end. Pivot choice is deterministic: first nonzero entry scanning rows
    /// top-down, columns left-to-right.
    pub fn rref(&self) -> Rref {
        let mut m: Vec<Vec<CycScalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivots: Vec<usize> = Vec::new();
        let mut prev = CycScalar::one();
        let mut r = 0usize;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let pivot = m[r][c].clone();
            // fraction-free pass touches only rows below the pivot
            for i in r + 1..rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = m[i][c].clone();
                for j in 0..cols {
                    if j == c {
                        m[i][j] = CycScalar::zero();
                        continue;
                    }
                    let v = pivot.mul(&m[i][j]).sub(&factor.mul(&m[r][j]));
                    m[i][j] = v
                        .div(&prev)
                        .expect("previous pivot is nonzero by construction");
                }
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let rank = pivots.len();
        // Normalize pivot rows, then eliminate above the pivots.
        for (i, &c) in pivots.iter().enumerate() {
            let inv = m[i][c].inv().expect("pivot entries are nonzero");
            for j in 0..cols {
                m[i][j] = m[i][j].mul(&inv);
            }
        }
        for (i, &c) in pivots.iter().enumerate().rev() {
            for up in 0..i {
                if m[up][c].is_zero() {
                    continue;
                }
                let factor = m[up][c].clone();
                for j in 0..cols {
                    let v = m[up][j].sub(&factor.mul(&m[i][j]));
                    m[up][j] = v;
                }
            }
        }
        let entries: Vec<CycScalar> = m.into_iter().flatten().collect();
        Rref {
            reduced: ExactMatrix { rows, cols, entries },
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel, one vector per free column in ascending
    /// column order.
    pub fn nullspace(&self) -> Vec<Vec<CycScalar>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![CycScalar::zero(); self.cols];
            v[f] = CycScalar::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = reduced.get(i, f).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = b`, returning `None` when inconsistent. When the
    /// solution is not unique the free variables are set to zero.
    pub fn solve(&self, b: &[CycScalar]) -> Result<Option<Vec<CycScalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "rhs length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = ExactMatrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![CycScalar::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = reduced.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = ExactMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                CycScalar::one()
            } else {
                CycScalar::zero()
            }
        });
        let Rref { reduced, rank, .. } = aug.rref();
        if rank < n {
            return Err(Error::Singular("matrix has no inverse".into()));
        }
        Ok(ExactMatrix::from_fn(n, n, |r, c| reduced.get(r, c + n).clone()))
    }

    /// Determinant by fraction-free forward elimination.
    pub fn det(&self) -> Result<CycScalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(CycScalar::one());
        }
        let mut m: Vec<Vec<CycScalar>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut prev = CycScalar::one();
        let mut sign_flip = false;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Ok(CycScalar::zero());
            };
            if p != c {
                m.swap(c, p);
                sign_flip = !sign_flip;
            }
            let pivot = m[c][c].clone();
            for i in c + 1..n {
                let factor = m[i][c].clone();
                for j in c..n {
                    let v = pivot.mul(&m[i][j]).sub(&factor.mul(&m[c][j]));
                    m[i][j] = v.div(&prev).expect("previous pivot nonzero");
                }
            }
            prev = pivot;
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign_flip { d.neg() } else { d })
    }

    /// Matrix power by repeated multiplication (orders here are tiny).
    pub fn pow(&self, e: u32) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("power of non-square matrix".into()));
        }
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::from_fn(rows, cols, |r, c| CycScalar::from_int(vals[r * cols + c]))
    }

    #[test]
    fn rref_rank_examples() {
        assert_eq!(m(2, 2, &[1, 1, 1, 1]).rank(), 1);
        let id5 = ExactMatrix::identity(5);
        let rr = id5.rref();
        assert_eq!(rr.rank, 5);
        assert_eq!(rr.pivots, vec![0, 1, 2, 3, 4]);
        assert_eq!(m(2, 2, &[0, 1, 1, 0]).rank(), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(ExactMatrix::zero(3, 3).nullspace().len(), 3);
        assert!(ExactMatrix::identity(4).nullspace().is_empty());
        let ns = m(1, 2, &[1, 1]).nullspace();
        assert_eq!(ns.len(), 1);
        // (x, -x) direction: first coordinate is the negated reduced entry.
        assert!(ns[0][0].add(&ns[0][1]).is_zero());
        assert!(!ns[0][0].is_zero());
    }

    #[test]
    fn rank_plus_nullity_is_cols() {
        let a = m(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0]);
        assert_eq!(a.rank() + a.nullspace().len(), a.cols());
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!(a.matmul(&inv).unwrap().is_identity());
        let b = vec![CycScalar::from_int(1), CycScalar::from_int(0), CycScalar::from_int(2)];
        let x = a.solve(&b).unwrap().unwrap();
        let ax = a.apply(&x).unwrap();
        assert!(ax.iter().zip(b.iter()).all(|(p, q)| p.eq_val(q)));
    }

    #[test]
    fn determinant_values() {
        assert!(m(2, 2, &[1, 2, 3, 4]).det().unwrap().eq_val(&CycScalar::from_int(-2)));
        assert!(m(2, 2, &[1, 1, 1, 1]).det().unwrap().is_zero());
        assert!(ExactMatrix::identity(6).det().unwrap().is_one());
    }

    #[test]
    fn cyclotomic_entries_eliminate_exactly() {
        let i = CycScalar::i();
        let a = ExactMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) => CycScalar::one(),
            (0, 1) => i.clone(),
            (1, 0) => i.neg(),
            (1, 1) => CycScalar::one(),
        _ => unreachable!(),
        });
        // rows are (1, i), (-i, 1): the second is -i times the first.
        assert_eq!(a.rank(), 1);
        assert_eq!(a.nullspace().len(), 1);
    }
}
