//! Sparse exact vectors and elimination, used internally where the dense
//! kernels would be wasteful (bracket tables and graded fixed spaces are
//! mostly zeros). Pivot choice mirrors the dense rule: smallest leading
//! column first, ties broken by insertion order, so results are canonical.

use super::scalar::CycScalar;

/// Sorted-by-index sparse vector with nonzero cyclotomic entries.
pub type SparseVec = Vec<(usize, CycScalar)>;

pub fn sparse_from_dense(v: &[CycScalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<CycScalar> {
    let mut out = vec![CycScalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparse_scale(v: &SparseVec, s: &CycScalar) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul(s))).collect()
}

/// `a + c * b`, merged by index.
pub fn sparse_axpy(a: &SparseVec, c: &CycScalar, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out: SparseVec = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, vb))) => {
                if ia < ib {
                    out.push((*ia, va.clone()));
                    i += 1;
                } else if ib < ia {
                    let v = c.mul(vb);
                    if !v.is_zero() {
                        out.push((*ib, v));
                    }
                    j += 1;
                } else {
                    let v = va.add(&c.mul(vb));
                    if !v.is_zero() {
                        out.push((*ia, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ia, va)), None) => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (None, Some((ib, vb))) => {
                let v = c.mul(vb);
                if !v.is_zero() {
                    out.push((*ib, v));
                }
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

pub fn sparse_is_zero(v: &SparseVec) -> bool {
    v.is_empty()
}

fn leading(v: &SparseVec) -> Option<usize> {
    v.first().map(|(i, _)| *i)
}

/// Reduced row echelon form of sparse rows. Returns the canonical reduced
/// rows (unit leading entries, sorted by leading column) and their pivot
/// columns.
pub fn sparse_rref(rows: Vec<SparseVec>) -> (Vec<SparseVec>, Vec<usize>) {
    let mut work: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut reduced: Vec<SparseVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    loop {
        // deterministic pivot: smallest leading column, earliest row
        let mut best: Option<(usize, usize)> = None;
        for (ri, r) in work.iter().enumerate() {
            if let Some(lead) = leading(r) {
                if best.map(|(bl, _)| lead < bl).unwrap_or(true) {
                    best = Some((lead, ri));
                }
            }
        }
        let Some((lead, ri)) = best else { break };
        let mut pivot_row = work.swap_remove(ri);
        let inv = pivot_row[0].1.inv().expect("leading entry is nonzero");
        pivot_row = sparse_scale(&pivot_row, &inv);
        // eliminate from remaining work rows
        for r in work.iter_mut() {
            if let Some(pos) = r.iter().position(|(i, _)| *i == lead) {
                let c = r[pos].1.neg();
                *r = sparse_axpy(r, &c, &pivot_row);
            }
        }
        // and from previously reduced rows
        for r in reduced.iter_mut() {
            if let Some(pos) = r.iter().position(|(i, _)| *i == lead) {
                let c = r[pos].1.neg();
                *r = sparse_axpy(r, &c, &pivot_row);
            }
        }
        reduced.push(pivot_row);
        pivots.push(lead);
        work.retain(|r| !r.is_empty());
    }
    // canonical order: ascending pivot column
    let mut paired: Vec<(usize, SparseVec)> = pivots.into_iter().zip(reduced).collect();
    paired.sort_by_key(|(p, _)| *p);
    let pivots: Vec<usize> = paired.iter().map(|(p, _)| *p).collect();
    let reduced: Vec<SparseVec> = paired.into_iter().map(|(_, r)| r).collect();
    (reduced, pivots)
}

pub fn sparse_rank(rows: Vec<SparseVec>) -> usize {
    sparse_rref(rows).0.len()
}

/// Expresses `v` in a reduced basis (as returned by [`sparse_rref`]);
/// `None` when `v` is outside the span.
pub fn reduce_against(v: &SparseVec, basis: &[SparseVec], pivots: &[usize]) -> Option<Vec<CycScalar>> {
    let mut rem = v.clone();
    let mut coords = vec![CycScalar::zero(); basis.len()];
    for (bi, (row, &p)) in basis.iter().zip(pivots.iter()).enumerate() {
        if let Some(pos) = rem.iter().position(|(i, _)| *i == p) {
            let c = rem[pos].1.clone();
            coords[bi] = c.clone();
            rem = sparse_axpy(&rem, &c.neg(), row);
        }
    }
    if rem.is_empty() {
        Some(coords)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        pairs
            .iter()
            .map(|(i, v)| (*i, CycScalar::from_int(*v)))
            .collect()
    }

    #[test]
    fn rref_and_rank() {
        let rows = vec![sv(&[(0, 1), (1, 1)]), sv(&[(0, 2), (1, 2)]), sv(&[(1, 1), (2, 1)])];
        let (reduced, pivots) = sparse_rref(rows);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(reduced.len(), 2);
    }

    #[test]
    fn reduce_membership() {
        let rows = vec![sv(&[(0, 1), (2, 3)]), sv(&[(1, 1)])];
        let (basis, pivots) = sparse_rref(rows);
        let inside = sv(&[(0, 2), (1, 5), (2, 6)]);
        assert!(reduce_against(&inside, &basis, &pivots).is_some());
        let outside = sv(&[(2, 1)]);
        assert!(reduce_against(&outside, &basis, &pivots).is_none());
    }

    #[test]
    fn axpy_cancels() {
        let a = sv(&[(0, 1), (3, 2)]);
        let b = sv(&[(0, 1), (3, 2)]);
        let r = sparse_axpy(&a, &CycScalar::from_int(-1), &b);
        assert!(sparse_is_zero(&r));
    }
}
