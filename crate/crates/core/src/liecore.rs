//! Lie algebras as exact structures: matrix realizations of sl/so/sp,
//! abstract Chevalley realizations, bracket tables, Killing forms and
//! subalgebra invariant profiles.
//!
//! Every constructed algebra is certified by a full antisymmetry and Jacobi
//! sweep; the sweep failing aborts construction, since it indicates a
//! sign-convention bug rather than bad user input.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cycfield::sparse::{
    reduce_against, sparse_axpy, sparse_from_dense, sparse_rank, sparse_rref, sparse_scale,
    sparse_to_dense, SparseVec,
};
use crate::cycfield::{rational_int, CycScalar, ExactMatrix};
use crate::rootsys::{build_root_system, ChevalleyData, RootSystem, TypeLabel};
use crate::{Error, Result};

/// Classical matrix families.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Family {
    Sl,
    So,
    Sp,
}

/// Root-space bookkeeping for algebras whose basis is aligned with a root
/// decomposition (abstract Chevalley models and the sl(n) matrix model).
#[derive(Clone)]
pub struct RootData {
    pub system: RootSystem,
    /// Basis indices of the Cartan subalgebra generators `h_1..h_r`.
    pub csa: Vec<usize>,
    /// Basis index of `e_alpha` per positive root (in root order).
    pub pos: Vec<usize>,
    /// Basis index of `f_alpha` per positive root.
    pub neg: Vec<usize>,
}

impl RootData {
    /// Basis index carrying the (signed) root with the given coordinates.
    pub fn basis_index_of_root(&self, coords: &[i64]) -> Option<usize> {
        if let Some(i) = self.system.positive_index(coords) {
            return Some(self.pos[i]);
        }
        let negated: Vec<i64> = coords.iter().map(|x| -x).collect();
        self.system.positive_index(&negated).map(|i| self.neg[i])
    }

    /// Root coordinates carried by a basis index, if any.
    pub fn root_of_basis_index(&self, idx: usize) -> Option<Vec<i64>> {
        if let Some(i) = self.pos.iter().position(|&p| p == idx) {
            return Some(self.system.positive_roots[i].clone());
        }
        if let Some(i) = self.neg.iter().position(|&p| p == idx) {
            return Some(self.system.positive_roots[i].iter().map(|x| -x).collect());
        }
        None
    }
}

/// An exact Lie algebra: bracket table over the cyclotomic scalars, optional
/// matrix realization, Killing matrix, and a family+rank label.
pub struct LieAlgebra {
    pub label: String,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    brackets: Vec<Vec<SparseVec>>,
    pub matrix_basis: Option<Vec<ExactMatrix>>,
    coords: Option<CoordExtractor>,
    pub killing: ExactMatrix,
    pub root_data: Option<RootData>,
    /// Set for the classical matrix realizations: (family, n).
    pub matrix_family: Option<(Family, usize)>,
}

/// Precomputed transform expressing an n-by-n matrix in the span of the
/// vectorized matrix basis.
struct CoordExtractor {
    n: usize,
    /// coords = t_top * vec(M)
    t_top: ExactMatrix,
    /// membership requires t_bottom * vec(M) = 0
    t_bottom: ExactMatrix,
}

impl CoordExtractor {
    fn build(basis: &[ExactMatrix]) -> Result<CoordExtractor> {
        let dim = basis.len();
        let n = basis[0].rows();
        let nn = n * n;
        // Columns of `bt` are the vectorized basis elements.
        let bt = ExactMatrix::from_fn(nn, dim, |r, c| basis[c].get(r / n, r % n).clone());
        let aug = ExactMatrix::from_fn(nn, dim + nn, |r, c| {
            if c < dim {
                bt.get(r, c).clone()
            } else if c - dim == r {
                CycScalar::one()
            } else {
                CycScalar::zero()
            }
        });
        let rref = aug.rref();
        let expected: Vec<usize> = (0..dim).collect();
        if rref.pivots.len() < dim || rref.pivots[..dim] != expected[..] {
            return Err(Error::Internal("matrix basis is not independent".into()));
        }
        let t_top = ExactMatrix::from_fn(dim, nn, |r, c| rref.reduced.get(r, dim + c).clone());
        let t_bottom =
            ExactMatrix::from_fn(nn - dim, nn, |r, c| rref.reduced.get(dim + r, dim + c).clone());
        Ok(CoordExtractor { n, t_top, t_bottom })
    }

    fn extract(&self, m: &ExactMatrix) -> Result<Vec<CycScalar>> {
        let n = self.n;
        let v: Vec<CycScalar> = (0..n * n).map(|k| m.get(k / n, k % n).clone()).collect();
        let rem = self.t_bottom.apply(&v)?;
        if rem.iter().any(|x| !x.is_zero()) {
            return Err(Error::DoesNotNormalize);
        }
        self.t_top.apply(&v)
    }
}

/// Invariant fingerprint of a subalgebra: dimension, generic-centralizer
/// rank, center dimension and derived-subalgebra dimension. Recognition by
/// profile is deliberately weaker than an isomorphism claim.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct InvariantProfile {
    pub dim: usize,
    pub rank: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
}

impl LieAlgebra {
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    /// Bracket of sparse coordinate vectors.
    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (i, xi) in x {
            for (j, yj) in y {
                let table = &self.brackets[*i][*j];
                if table.is_empty() {
                    continue;
                }
                let c = xi.mul(yj);
                acc = sparse_axpy(&acc, &c, table);
            }
        }
        acc
    }

    pub fn bracket_dense(&self, x: &[CycScalar], y: &[CycScalar]) -> Vec<CycScalar> {
        let xs = sparse_from_dense(x);
        let ys = sparse_from_dense(y);
        sparse_to_dense(&self.bracket_sparse(&xs, &ys), self.dim)
    }

    /// Expresses an n-by-n matrix in the matrix basis, failing when the
    /// matrix lies outside the realized span.
    pub fn matrix_coords(&self, m: &ExactMatrix) -> Result<Vec<CycScalar>> {
        let ex = self
            .coords
            .as_ref()
            .ok_or_else(|| Error::UnsupportedAlgebra("no matrix realization".into()))?;
        ex.extract(m)
    }

    pub fn has_matrix_realization(&self) -> bool {
        self.matrix_basis.is_some()
    }

    /// Full antisymmetry + Jacobi sweep over basis triples.
    pub fn verify_table(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let mut anti = self.brackets[i][j].clone();
                anti = sparse_axpy(&anti, &CycScalar::one(), &self.brackets[j][i]);
                if !anti.is_empty() {
                    return Err(Error::Internal(format!(
                        "bracket table not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let mut acc =
                        self.bracket_sparse(&self.brackets[j][k], &basis_sparse(i));
                    acc = sparse_axpy(
                        &acc,
                        &CycScalar::one(),
                        &self.bracket_sparse(&self.brackets[k][i], &basis_sparse(j)),
                    );
                    acc = sparse_axpy(
                        &acc,
                        &CycScalar::one(),
                        &self.bracket_sparse(&self.brackets[i][j], &basis_sparse(k)),
                    );
                    if !acc.is_empty() {
                        return Err(Error::Internal(format!(
                            "Jacobi identity fails on triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Killing form on coordinate vectors.
    pub fn killing_value(&self, x: &[CycScalar], y: &[CycScalar]) -> CycScalar {
        let mut acc = CycScalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let k = self.killing.get(i, j);
                if k.is_zero() {
                    continue;
                }
                acc = acc.add(&xi.mul(yj).mul(k));
            }
        }
        acc
    }
}

fn basis_sparse(i: usize) -> SparseVec {
    vec![(i, CycScalar::one())]
}

fn killing_from_brackets(brackets: &[Vec<SparseVec>], dim: usize) -> ExactMatrix {
    // kappa(i, j) = sum_k coeff_k( [b_i, [b_j, b_k]] )
    let mut out = ExactMatrix::zero(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let mut acc = CycScalar::zero();
            for k in 0..dim {
                for (l, v) in &brackets[j][k] {
                    for (t, w) in &brackets[i][*l] {
                        if *t == k {
                            acc = acc.add(&v.mul(w));
                        }
                    }
                }
            }
            out.set(i, j, acc.clone());
            out.set(j, i, acc);
        }
    }
    out
}

/// Builds the abstract algebra from Chevalley data: basis
/// `h_1..h_r, e_alpha (positive order), f_alpha`, with
/// `[e_a, f_a] = h_a` (the coroot), `[h, e_a] = <a, h> e_a`, and
/// `[e_a, e_b] = N_{a,b} e_{a+b}`.
pub fn build_from_chevalley(cd: &ChevalleyData) -> Result<Arc<LieAlgebra>> {
    let rs = &cd.rs;
    let rank = rs.rank;
    let p = cd.num_positive();
    let dim = rank + 2 * p;
    let e_index = |i: usize| rank + i;
    let f_index = |i: usize| rank + p + i;
    let mut brackets: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
    // [h_i, x]
    for i in 0..rank {
        for (ri, root) in rs.positive_roots.iter().enumerate() {
            let pairing = rs.pairing_with_simple_coroot(root, i);
            if pairing != 0 {
                brackets[i][e_index(ri)] = vec![(e_index(ri), CycScalar::from_int(pairing))];
                brackets[e_index(ri)][i] = vec![(e_index(ri), CycScalar::from_int(-pairing))];
                brackets[i][f_index(ri)] = vec![(f_index(ri), CycScalar::from_int(-pairing))];
                brackets[f_index(ri)][i] = vec![(f_index(ri), CycScalar::from_int(pairing))];
            }
        }
    }
    // root-root brackets
    for a in 0..2 * p {
        for b in 0..2 * p {
            if a == b {
                continue;
            }
            let basis_a = if a < p { e_index(a) } else { f_index(a - p) };
            let basis_b = if b < p { e_index(b) } else { f_index(b - p) };
            let ca = cd.root_coords(a);
            let cb = cd.root_coords(b);
            let sum: Vec<i64> = ca.iter().zip(cb.iter()).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&x| x == 0) {
                // [e_a, f_a] = coroot; only fill from the positive side and mirror
                if a < p {
                    let coroot = rs.coroot_coords(&ca);
                    let mut v: SparseVec = Vec::new();
                    for (i, &c) in coroot.iter().enumerate() {
                        if c != 0 {
                            v.push((i, CycScalar::from_int(c)));
                        }
                    }
                    brackets[basis_a][basis_b] = v.clone();
                    brackets[basis_b][basis_a] = sparse_scale(&v, &CycScalar::from_int(-1));
                }
                continue;
            }
            if !rs.is_root(&sum) {
                continue;
            }
            let n = cd.n_const(a, b);
            debug_assert!(n != 0);
            let sum_idx = cd.root_index(&sum).expect("sum is a root");
            let target = if sum_idx < p {
                e_index(sum_idx)
            } else {
                f_index(sum_idx - p)
            };
            brackets[basis_a][basis_b] = vec![(target, CycScalar::from_int(n))];
        }
    }
    let mut labels: Vec<String> = (0..rank).map(|i| format!("h{}", i + 1)).collect();
    labels.extend((0..p).map(|i| format!("e{i}")));
    labels.extend((0..p).map(|i| format!("f{i}")));
    let killing = killing_from_brackets(&brackets, dim);
    let alg = LieAlgebra {
        label: format!("{}{}-chevalley", rs.type_label, rank),
        dim,
        basis_labels: labels,
        brackets,
        matrix_basis: None,
        coords: None,
        killing,
        root_data: Some(RootData {
            system: rs.clone(),
            csa: (0..rank).collect(),
            pos: (0..p).map(e_index).collect(),
            neg: (0..p).map(f_index).collect(),
        }),
        matrix_family: None,
    };
    alg.verify_table()?;
    Ok(Arc::new(alg))
}

/// Convenience: Chevalley model straight from a type label.
pub fn chevalley_algebra(label: TypeLabel, rank: usize) -> Result<Arc<LieAlgebra>> {
    let rs = build_root_system(label, rank)?;
    let cd = crate::rootsys::chevalley_constants(&rs)?;
    build_from_chevalley(&cd)
}

fn unit_matrix_entry(n: usize, i: usize, j: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |r, c| {
        if r == i && c == j {
            CycScalar::one()
        } else {
            CycScalar::zero()
        }
    })
}

/// Builds a classical matrix algebra: sl(n) traceless, so(n) antisymmetric
/// (`X^T = -X`), sp(2m) for the standard block form `J`.
pub fn build_classical(family: Family, n: usize) -> Result<Arc<LieAlgebra>> {
    match family {
        Family::Sl => build_sl(n),
        Family::So => build_so(n),
        Family::Sp => build_sp(n),
    }
}

fn build_sl(n: usize) -> Result<Arc<LieAlgebra>> {
    if n < 2 {
        return Err(Error::UnsupportedAlgebra(format!("sl({n})")));
    }
    let rs = build_root_system(TypeLabel::A, n - 1)?;
    let mut basis: Vec<ExactMatrix> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for i in 0..n - 1 {
        let m = unit_matrix_entry(n, i, i)
            .sub(&unit_matrix_entry(n, i + 1, i + 1))
            .expect("same shape");
        basis.push(m);
        labels.push(format!("h{}", i + 1));
    }
    // coordinates of e_i - e_j in the simple-root basis: partial sums
    let root_coords = |i: usize, j: usize| -> Vec<i64> {
        let mut v = vec![0i64; n - 1];
        for (k, item) in v.iter_mut().enumerate() {
            if i <= k && k < j {
                *item = 1;
            }
        }
        v
    };
    let mut pos_idx = vec![0usize; rs.num_positive()];
    let mut neg_idx = vec![0usize; rs.num_positive()];
    let mut pos_entries: Vec<(usize, usize, usize)> = Vec::new(); // (root index, i, j)
    for i in 0..n {
        for j in i + 1..n {
            let coords = root_coords(i, j);
            let ri = rs.positive_index(&coords).expect("A-type root");
            pos_entries.push((ri, i, j));
        }
    }
    pos_entries.sort();
    for (ri, i, j) in &pos_entries {
        pos_idx[*ri] = basis.len();
        basis.push(unit_matrix_entry(n, *i, *j));
        labels.push(format!("E{}{}", i + 1, j + 1));
    }
    for (ri, i, j) in &pos_entries {
        neg_idx[*ri] = basis.len();
        basis.push(unit_matrix_entry(n, *j, *i));
        labels.push(format!("E{}{}", j + 1, i + 1));
    }
    let root_data = RootData {
        system: rs,
        csa: (0..n - 1).collect(),
        pos: pos_idx,
        neg: neg_idx,
    };
    finish_matrix_algebra(format!("sl({n})"), (Family::Sl, n), basis, labels, Some(root_data))
}

fn build_so(n: usize) -> Result<Arc<LieAlgebra>> {
    if n < 3 {
        return Err(Error::UnsupportedAlgebra(format!("so({n})")));
    }
    let mut basis: Vec<ExactMatrix> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = unit_matrix_entry(n, i, j)
                .sub(&unit_matrix_entry(n, j, i))
                .expect("same shape");
            basis.push(m);
            labels.push(format!("A{}{}", i + 1, j + 1));
        }
    }
    finish_matrix_algebra(format!("so({n})"), (Family::So, n), basis, labels, None)
}

fn build_sp(n: usize) -> Result<Arc<LieAlgebra>> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::UnsupportedAlgebra(format!("sp({n})")));
    }
    let m = n / 2;
    let mut basis: Vec<ExactMatrix> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    // block [[A, B], [C, -A^T]] with B, C symmetric
    for i in 0..m {
        for j in 0..m {
            let mat = unit_matrix_entry(n, i, j)
                .sub(&unit_matrix_entry(n, m + j, m + i))
                .expect("same shape");
            basis.push(mat);
            labels.push(format!("A{}{}", i + 1, j + 1));
        }
    }
    for i in 0..m {
        for j in i..m {
            let mut mat = unit_matrix_entry(n, i, m + j);
            if i != j {
                mat = mat.add(&unit_matrix_entry(n, j, m + i)).expect("same shape");
            }
            basis.push(mat);
            labels.push(format!("B{}{}", i + 1, j + 1));
        }
    }
    for i in 0..m {
        for j in i..m {
            let mut mat = unit_matrix_entry(n, m + i, j);
            if i != j {
                mat = mat.add(&unit_matrix_entry(n, m + j, i)).expect("same shape");
            }
            basis.push(mat);
            labels.push(format!("C{}{}", i + 1, j + 1));
        }
    }
    finish_matrix_algebra(format!("sp({n})"), (Family::Sp, n), basis, labels, None)
}

fn finish_matrix_algebra(
    label: String,
    family: (Family, usize),
    basis: Vec<ExactMatrix>,
    labels: Vec<String>,
    root_data: Option<RootData>,
) -> Result<Arc<LieAlgebra>> {
    let dim = basis.len();
    let extractor = CoordExtractor::build(&basis)?;
    let mut brackets: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                continue;
            }
            let comm = basis[i]
                .matmul(&basis[j])?
                .sub(&basis[j].matmul(&basis[i])?)?;
            if comm.is_zero() {
                continue;
            }
            let coords = extractor.extract(&comm).map_err(|_| {
                Error::Internal("matrix commutator left the realized span".into())
            })?;
            brackets[i][j] = sparse_from_dense(&coords);
        }
    }
    let killing = killing_from_brackets(&brackets, dim);
    let alg = LieAlgebra {
        label,
        dim,
        basis_labels: labels,
        brackets,
        matrix_basis: Some(basis),
        coords: Some(extractor),
        killing,
        root_data,
        matrix_family: Some(family),
    };
    alg.verify_table()?;
    Ok(Arc::new(alg))
}

/// A subspace of an algebra held as a canonical reduced basis, so identical
/// subspaces compare equal regardless of how they were produced.
#[derive(Clone)]
pub struct Subspace {
    pub basis: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    pub ambient_dim: usize,
}

impl Subspace {
    pub fn from_sparse(vectors: Vec<SparseVec>, ambient_dim: usize) -> Subspace {
        let (basis, pivots) = sparse_rref(vectors);
        Subspace {
            basis,
            pivots,
            ambient_dim,
        }
    }

    pub fn from_dense(vectors: &[Vec<CycScalar>], ambient_dim: usize) -> Subspace {
        Subspace::from_sparse(vectors.iter().map(|v| sparse_from_dense(v)).collect(), ambient_dim)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        reduce_against(v, &self.basis, &self.pivots).is_some()
    }

    pub fn coords_of(&self, v: &SparseVec) -> Option<Vec<CycScalar>> {
        reduce_against(v, &self.basis, &self.pivots)
    }

    /// Canonical fingerprint used for deterministic bucketing.
    pub fn fingerprint(&self) -> Vec<Vec<(usize, Vec<(String, String)>)>> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(i, v)| {
                        (
                            *i,
                            v.coeffs()
                                .iter()
                                .map(|c| (c.numer().to_string(), c.denom().to_string()))
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect()
    }
}

/// Structure constants of a subalgebra in its own reduced basis, used by the
/// profile computation. Errors when the subspace is not bracket-closed.
fn subalgebra_table(g: &LieAlgebra, s: &Subspace) -> Result<Vec<Vec<SparseVec>>> {
    let k = s.dim();
    let mut table: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let br = g.bracket_sparse(&s.basis[a], &s.basis[b]);
            if br.is_empty() {
                continue;
            }
            let coords = s
                .coords_of(&br)
                .ok_or(Error::NotSubalgebra(a, b))?;
            let sv = sparse_from_dense(&coords);
            table[a][b] = sv.clone();
            table[b][a] = sparse_scale(&sv, &CycScalar::from_int(-1));
        }
    }
    Ok(table)
}

/// Computes the invariant profile of a bracket-closed subspace: dimension,
/// generic-element centralizer dimension (rank), center dimension, and
/// derived-subalgebra dimension. The generic element is drawn with a seeded
/// deterministic generator; the minimum centralizer dimension over five
/// draws is taken.
pub fn invariant_profile(g: &LieAlgebra, s: &Subspace, seed: u64) -> Result<InvariantProfile> {
    let k = s.dim();
    if k == 0 {
        return Ok(InvariantProfile {
            dim: 0,
            rank: 0,
            center_dim: 0,
            derived_dim: 0,
        });
    }
    let table = subalgebra_table(g, s)?;
    // center: x with [x, s_b] = 0 for all b. Rows of the constraint system
    // are indexed by (b, output coordinate); unknowns by a.
    let mut rows: Vec<SparseVec> = vec![Vec::new(); k * k];
    for a in 0..k {
        for b in 0..k {
            for (t, v) in &table[a][b] {
                rows[b * k + t].push((a, v.clone()));
            }
        }
    }
    for r in rows.iter_mut() {
        r.sort_by_key(|(i, _)| *i);
    }
    let center_dim = k - sparse_rank(rows);
    // derived: span of all brackets
    let mut derived_rows: Vec<SparseVec> = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if !table[a][b].is_empty() {
                derived_rows.push(table[a][b].clone());
            }
        }
    }
    let derived_dim = sparse_rank(derived_rows);
    // rank: minimal centralizer dimension of seeded pseudo-random elements
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<usize> = None;
    for _ in 0..5 {
        let coeffs: Vec<CycScalar> = (0..k)
            .map(|_| {
                let v: i64 = rng.gen_range(-9..=9);
                CycScalar::from_rational(rational_int(v))
            })
            .collect();
        // ad(x) in subalgebra coordinates
        let mut ad_rows: Vec<SparseVec> = vec![Vec::new(); k];
        for b in 0..k {
            let mut col: SparseVec = Vec::new();
            for (a, ca) in coeffs.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                col = sparse_axpy(&col, ca, &table[a][b]);
            }
            for (t, v) in col {
                ad_rows[t].push((b, v));
            }
        }
        for r in ad_rows.iter_mut() {
            r.sort_by_key(|(i, _)| *i);
        }
        let nullity = k - sparse_rank(ad_rows);
        best = Some(best.map_or(nullity, |b: usize| b.min(nullity)));
    }
    Ok(InvariantProfile {
        dim: k,
        rank: best.unwrap_or(0),
        center_dim,
        derived_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::chevalley_constants;
    use crate::DEFAULT_SEED;

    /// Textbook divide-at-pivot elimination, independent of the library's
    /// fraction-free path; used as the rank oracle in this module's tests.
    pub(crate) fn naive_rank(rows: &[Vec<CycScalar>]) -> usize {
        let mut m: Vec<Vec<CycScalar>> = rows.to_vec();
        let cols = m.first().map(|r| r.len()).unwrap_or(0);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][c].inv().unwrap();
            for j in 0..cols {
                m[rank][j] = m[rank][j].mul(&inv);
            }
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..cols {
                        let v = m[i][j].sub(&f.mul(&m[rank][j]));
                        m[i][j] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(build_classical(Family::Sl, 3).unwrap().dim, 8);
        assert_eq!(build_classical(Family::So, 8).unwrap().dim, 28);
        assert_eq!(build_classical(Family::Sp, 4).unwrap().dim, 10);
        assert!(build_classical(Family::Sp, 5).is_err());
        assert!(build_classical(Family::So, 2).is_err());
    }

    #[test]
    fn chevalley_dimensions() {
        let d4 = chevalley_algebra(TypeLabel::D, 4).unwrap();
        assert_eq!(d4.dim, 28);
        let g2 = chevalley_algebra(TypeLabel::G, 2).unwrap();
        assert_eq!(g2.dim, 14);
    }

    #[test]
    fn a1_killing_value() {
        // oracle: ad(h) acts with eigenvalues (0, 2, -2), so kappa(h,h) = 8
        let a1 = chevalley_algebra(TypeLabel::A, 1).unwrap();
        let h = a1.killing.get(0, 0);
        assert!(h.eq_val(&CycScalar::from_int(8)));
    }

    #[test]
    fn a1_bracket_relations() {
        let rs = build_root_system(TypeLabel::A, 1).unwrap();
        let cd = chevalley_constants(&rs).unwrap();
        let a1 = build_from_chevalley(&cd).unwrap();
        // basis: h, e, f. [e,f] = h, [h,e] = 2e, [h,f] = -2f
        let ef = a1.bracket_basis(1, 2);
        assert_eq!(ef.len(), 1);
        assert_eq!(ef[0].0, 0);
        assert!(ef[0].1.eq_val(&CycScalar::from_int(1)));
        let he = a1.bracket_basis(0, 1);
        assert!(he[0].1.eq_val(&CycScalar::from_int(2)));
        let hf = a1.bracket_basis(0, 2);
        assert!(hf[0].1.eq_val(&CycScalar::from_int(-2)));
    }

    #[test]
    fn killing_nondegenerate_for_semisimple() {
        for alg in [
            build_classical(Family::Sl, 4).unwrap(),
            build_classical(Family::So, 5).unwrap(),
            build_classical(Family::Sp, 6).unwrap(),
            chevalley_algebra(TypeLabel::G, 2).unwrap(),
        ] {
            assert_eq!(alg.killing.rank(), alg.dim, "{}", alg.label);
            assert!(alg.killing.eq_val(&alg.killing.transpose()));
        }
    }

    #[test]
    fn matrix_realization_brackets_are_commutators() {
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        let basis = sl3.matrix_basis.as_ref().unwrap();
        for i in 0..sl3.dim {
            for j in 0..sl3.dim {
                let comm = basis[i]
                    .matmul(&basis[j])
                    .unwrap()
                    .sub(&basis[j].matmul(&basis[i]).unwrap())
                    .unwrap();
                let coords = sparse_to_dense(sl3.bracket_basis(i, j), sl3.dim);
                let mut rebuilt = ExactMatrix::zero(3, 3);
                for (k, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        rebuilt = rebuilt.add(&basis[k].scale(c)).unwrap();
                    }
                }
                assert!(rebuilt.eq_val(&comm));
            }
        }
    }

    #[test]
    fn profile_of_full_sl3() {
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        let full: Vec<SparseVec> = (0..sl3.dim).map(basis_sparse).collect();
        let s = Subspace::from_sparse(full, sl3.dim);
        let p = invariant_profile(&sl3, &s, DEFAULT_SEED).unwrap();
        assert_eq!(
            p,
            InvariantProfile {
                dim: 8,
                rank: 2,
                center_dim: 0,
                derived_dim: 8
            }
        );
    }

    #[test]
    fn profile_of_so3_fixed_space() {
        // fixed space of X -> -X^T on sl(3): antisymmetric matrices
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        let basis = sl3.matrix_basis.as_ref().unwrap();
        let mut fixed: Vec<Vec<CycScalar>> = Vec::new();
        // kernel oracle: solve (theta - id) x = 0 with the naive elimination
        let theta_cols: Vec<Vec<CycScalar>> = (0..sl3.dim)
            .map(|i| {
                let img = basis[i].transpose().neg();
                sl3.matrix_coords(&img).unwrap()
            })
            .collect();
        let mut rows: Vec<Vec<CycScalar>> = vec![vec![CycScalar::zero(); sl3.dim]; sl3.dim];
        for (c, col) in theta_cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                rows[r][c] = if r == c { v.sub(&CycScalar::one()) } else { v.clone() };
            }
        }
        assert_eq!(naive_rank(&rows), sl3.dim - 3, "so(3) is 3-dimensional");
        let m = ExactMatrix::from_fn(sl3.dim, sl3.dim, |r, c| rows[r][c].clone());
        for v in m.nullspace() {
            fixed.push(v);
        }
        let s = Subspace::from_dense(&fixed, sl3.dim);
        let p = invariant_profile(&sl3, &s, DEFAULT_SEED).unwrap();
        assert_eq!(
            p,
            InvariantProfile {
                dim: 3,
                rank: 1,
                center_dim: 0,
                derived_dim: 3
            }
        );
    }

    #[test]
    fn profile_of_diagonal_torus_sl4() {
        let sl4 = build_classical(Family::Sl, 4).unwrap();
        let torus: Vec<SparseVec> = (0..3).map(basis_sparse).collect();
        let s = Subspace::from_sparse(torus, sl4.dim);
        let p = invariant_profile(&sl4, &s, DEFAULT_SEED).unwrap();
        assert_eq!(
            p,
            InvariantProfile {
                dim: 3,
                rank: 3,
                center_dim: 3,
                derived_dim: 0
            }
        );
    }

    #[test]
    fn non_closed_subspace_is_rejected() {
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        // span{ E12 } union nothing closed? single root vector is abelian;
        // take {E12, E21} whose bracket is h — not in the span.
        let rd = sl3.root_data.as_ref().unwrap();
        let v = vec![basis_sparse(rd.pos[0]), basis_sparse(rd.neg[0])];
        let s = Subspace::from_sparse(v, sl3.dim);
        assert!(matches!(
            invariant_profile(&sl3, &s, DEFAULT_SEED),
            Err(Error::NotSubalgebra(_, _))
        ));
    }

    #[test]
    fn profile_invariant_under_recoordinatization() {
        let so5 = build_classical(Family::So, 5).unwrap();
        // subalgebra: span of A12, A13, A23 (an so(3) block)
        let idx: Vec<usize> = so5
            .basis_labels
            .iter()
            .enumerate()
            .filter(|(_, l)| ["A12", "A13", "A23"].contains(&l.as_str()))
            .map(|(i, _)| i)
            .collect();
        let vs: Vec<SparseVec> = idx.iter().map(|&i| basis_sparse(i)).collect();
        let s1 = Subspace::from_sparse(vs.clone(), so5.dim);
        // recoordinatized: invertible integer combinations
        let mixed = vec![
            sparse_axpy(&vs[0], &CycScalar::from_int(2), &vs[1]),
            sparse_axpy(&vs[1], &CycScalar::from_int(-1), &vs[2]),
            sparse_axpy(
                &sparse_axpy(&vs[2], &CycScalar::from_int(3), &vs[0]),
                &CycScalar::from_int(1),
                &vs[1],
            ),
        ];
        let s2 = Subspace::from_sparse(mixed, so5.dim);
        assert_eq!(s1.fingerprint(), s2.fingerprint());
        let p1 = invariant_profile(&so5, &s1, DEFAULT_SEED).unwrap();
        let p2 = invariant_profile(&so5, &s2, DEFAULT_SEED).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(p1.dim, 3);
        assert_eq!(p1.rank, 1);
    }

    #[test]
    fn d3_matches_a3_in_dimension_and_rank() {
        let d3 = chevalley_algebra(TypeLabel::D, 3).unwrap();
        let a3 = chevalley_algebra(TypeLabel::A, 3).unwrap();
        assert_eq!(d3.dim, 15);
        assert_eq!(d3.dim, a3.dim);
        let full: Vec<SparseVec> = (0..d3.dim).map(basis_sparse).collect();
        let s = Subspace::from_sparse(full, d3.dim);
        let p = invariant_profile(&d3, &s, DEFAULT_SEED).unwrap();
        assert_eq!(p.rank, 3);
    }
}
