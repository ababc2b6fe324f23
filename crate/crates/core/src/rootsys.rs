//! Root systems for types A, B, C, D and G2: positive-root enumeration,
//! Chevalley structure constants with the extraspecial-pair sign convention,
//! and the group of Dynkin-diagram automorphisms.
//!
//! Root coordinates are integer vectors in the simple-root basis, so all data
//! here is integral. The total order on positive roots is height-then-lex and
//! every downstream basis ordering derives from it.

use std::collections::HashMap;
use std::fmt;

use num::rational::Ratio;
use num::{One, Zero};
use serde::Serialize;

use crate::{Error, Result};

type Q64 = Ratio<i64>;

/// Classical family label. `G` is G2 (rank fixed at 2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    G,
}

impl TypeLabel {
    pub fn letter(&self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::G => 'G',
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A rank permutation, i.e. a symmetry of the Dynkin diagram.
pub type Perm = Vec<usize>;

pub fn perm_identity(rank: usize) -> Perm {
    (0..rank).collect()
}

pub fn perm_compose(a: &Perm, b: &Perm) -> Perm {
    // (a . b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

pub fn perm_inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &v) in a.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

pub fn perm_order(a: &Perm) -> u32 {
    let mut p = a.clone();
    let id = perm_identity(a.len());
    let mut n = 1;
    while p != id {
        p = perm_compose(a, &p);
        n += 1;
    }
    n
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`; diagonal 2, off-diagonal <= 0.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Simple roots as coordinate vectors in their own basis.
    pub simple_roots: Vec<Vec<i64>>,
    /// Positive roots in height-then-lex order; simple roots come first.
    pub positive_roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Half square lengths `d_i = (alpha_i, alpha_i)/2`.
    sym: Vec<i64>,
}

fn cartan_matrix_for(label: TypeLabel, rank: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let ok = match label {
        TypeLabel::A => rank >= 1,
        TypeLabel::B | TypeLabel::C => rank >= 2,
        TypeLabel::D => rank >= 3,
        TypeLabel::G => rank == 2,
    };
    if !ok {
        return Err(Error::UnsupportedRootSystem(label.letter(), rank));
    }
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    let sym: Vec<i64>;
    match label {
        TypeLabel::A => {
            for i in 0..rank.saturating_sub(1) {
                chain(&mut a, i, i + 1);
            }
            sym = vec![1; rank];
        }
        TypeLabel::B => {
            // long chain, short last root: <alpha_last, alpha_{last-1}^vee> = -2
            for i in 0..rank - 1 {
                chain(&mut a, i, i + 1);
            }
            a[rank - 1][rank - 2] = -2;
            a[rank - 2][rank - 1] = -1;
            let mut d = vec![2; rank];
            d[rank - 1] = 1;
            sym = d;
        }
        TypeLabel::C => {
            // short chain, long last root
            for i in 0..rank - 1 {
                chain(&mut a, i, i + 1);
            }
            a[rank - 1][rank - 2] = -1;
            a[rank - 2][rank - 1] = -2;
            let mut d = vec![1; rank];
            d[rank - 1] = 2;
            sym = d;
        }
        TypeLabel::D => {
            for i in 0..rank - 2 {
                chain(&mut a, i, i + 1);
            }
            chain(&mut a, rank - 3, rank - 1);
            sym = vec![1; rank];
        }
        TypeLabel::G => {
            a[0][1] = -1;
            a[1][0] = -3;
            sym = vec![3, 1];
        }
    }
    // d_i * a[i][j] must be symmetric
    for i in 0..rank {
        for j in 0..rank {
            debug_assert_eq!(sym[i] * a[i][j], sym[j] * a[j][i]);
        }
    }
    Ok((a, sym))
}

fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// Builds the root system by closure of the simple roots under root-string
/// addition, with deterministic height-then-lex ordering.
pub fn build_root_system(label: TypeLabel, rank: usize) -> Result<RootSystem> {
    let (cartan, sym) = cartan_matrix_for(label, rank)?;
    let simple: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut found: Vec<Vec<i64>> = simple.clone();
    let mut seen: HashMap<Vec<i64>, ()> = simple.iter().map(|r| (r.clone(), ())).collect();
    let is_root = |seen: &HashMap<Vec<i64>, ()>, v: &[i64]| {
        if seen.contains_key(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        seen.contains_key(&neg)
    };
    let mut head = 0;
    while head < found.len() {
        let beta = found[head].clone();
        head += 1;
        for i in 0..rank {
            // r = how far the alpha_i-string through beta extends downwards
            let mut r = 0i64;
            loop {
                let mut down = beta.clone();
                down[i] -= r + 1;
                if down.iter().all(|&x| x == 0) || !is_root(&seen, &down) {
                    break;
                }
                r += 1;
            }
            let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[i][j]).sum();
            let q = r - pairing;
            if q >= 1 {
                let mut up = beta.clone();
                up[i] += 1;
                if !seen.contains_key(&up) {
                    seen.insert(up.clone(), ());
                    found.push(up);
                }
            }
        }
        if found.len() > 4096 {
            return Err(Error::Internal("root closure did not terminate".into()));
        }
    }
    found.sort_by(|a, b| (height(a), a.clone()).cmp(&(height(b), b.clone())));
    let index: HashMap<Vec<i64>, usize> = found
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    Ok(RootSystem {
        type_label: label,
        rank,
        cartan_matrix: cartan,
        simple_roots: simple,
        positive_roots: found,
        index,
        sym,
    })
}

impl RootSystem {
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    /// Index of a positive root, if present.
    pub fn positive_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        if self.index.contains_key(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    /// `<beta, alpha_i^vee>` for `beta` in simple-root coordinates.
    pub fn pairing_with_simple_coroot(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| beta[j] * self.cartan_matrix[i][j]).sum()
    }

    /// Inner product from the symmetrized Cartan matrix.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += a[i] * b[j] * self.sym[i] * self.cartan_matrix[i][j];
            }
        }
        acc
    }

    pub fn norm(&self, a: &[i64]) -> i64 {
        self.inner(a, a)
    }

    /// Coroot of `alpha` in the simple-coroot basis; integral for any root.
    pub fn coroot_coords(&self, alpha: &[i64]) -> Vec<i64> {
        let d_alpha = self.norm(alpha) / 2;
        (0..self.rank)
            .map(|i| {
                let num = alpha[i] * self.sym[i];
                debug_assert_eq!(num % d_alpha, 0);
                num / d_alpha
            })
            .collect()
    }

    /// Simple reflection `s_i` applied to a coordinate vector.
    pub fn reflect_simple(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let p = self.pairing_with_simple_coroot(beta, i);
        let mut out = beta.to_vec();
        out[i] -= p;
        out
    }

    /// Applies a rank permutation to root coordinates.
    pub fn permute_root(&self, pi: &Perm, beta: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rank];
        for (i, &c) in beta.iter().enumerate() {
            out[pi[i]] = c;
        }
        out
    }

    /// All rank permutations preserving the Cartan matrix, identity first,
    /// then sorted; this set is a group.
    pub fn diagram_automorphism_group(&self) -> Vec<Perm> {
        let rank = self.rank;
        let mut all: Vec<Perm> = Vec::new();
        let mut current: Perm = perm_identity(rank);
        permute_collect(&mut current, 0, &mut all);
        let mut group: Vec<Perm> = all
            .into_iter()
            .filter(|p| {
                (0..rank).all(|i| {
                    (0..rank).all(|j| self.cartan_matrix[p[i]][p[j]] == self.cartan_matrix[i][j])
                })
            })
            .collect();
        group.sort();
        let id = perm_identity(rank);
        group.retain(|p| *p != id);
        group.insert(0, id);
        group
    }
}

fn permute_collect(current: &mut Perm, k: usize, out: &mut Vec<Perm>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permute_collect(current, k + 1, out);
        current.swap(k, i);
    }
}

/// Signed root index: positive roots are `0..P`, the negative of positive
/// root `i` is `P + i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RootIdx(pub usize);

/// Chevalley structure constants `N_{alpha,beta}` for the full root list,
/// with signs fixed by the extraspecial-pair convention: the lowest pair (in
/// the height-then-lex total order) summing to each non-simple positive root
/// carries the positive sign.
pub struct ChevalleyData {
    pub rs: RootSystem,
    num_positive: usize,
    constants: HashMap<(usize, usize), i64>,
}

impl ChevalleyData {
    pub fn root_coords(&self, idx: usize) -> Vec<i64> {
        let p = self.num_positive;
        if idx < p {
            self.rs.positive_roots[idx].clone()
        } else {
            self.rs.positive_roots[idx - p].iter().map(|x| -x).collect()
        }
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        if let Some(i) = self.rs.positive_index(coords) {
            return Some(i);
        }
        let neg: Vec<i64> = coords.iter().map(|x| -x).collect();
        self.rs.positive_index(&neg).map(|i| i + self.num_positive)
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    /// `N_{alpha,beta}` for root indices; zero when the sum is not a root.
    pub fn n_const(&self, a: usize, b: usize) -> i64 {
        *self.constants.get(&(a, b)).unwrap_or(&0)
    }
}

/// Computes all structure constants. Consistency is certified downstream by
/// a full Jacobi sweep on the generated algebra; a failure there aborts the
/// construction.
pub fn chevalley_constants(rs: &RootSystem) -> Result<ChevalleyData> {
    let p = rs.positive_roots.len();
    let mut builder = ConstBuilder {
        rs,
        num_positive: p,
        memo: HashMap::new(),
    };
    let mut constants = HashMap::new();
    for a in 0..2 * p {
        for b in 0..2 * p {
            if a == b {
                continue;
            }
            let ca = builder.coords(a);
            let cb = builder.coords(b);
            let sum: Vec<i64> = ca.iter().zip(cb.iter()).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&x| x == 0) || !rs.is_root(&sum) {
                continue;
            }
            let v = builder.n(a, b)?;
            constants.insert((a, b), v);
        }
    }
    Ok(ChevalleyData {
        rs: rs.clone(),
        num_positive: p,
        constants,
    })
}

struct ConstBuilder<'a> {
    rs: &'a RootSystem,
    num_positive: usize,
    memo: HashMap<(usize, usize), i64>,
}

impl<'a> ConstBuilder<'a> {
    fn coords(&self, idx: usize) -> Vec<i64> {
        if idx < self.num_positive {
            self.rs.positive_roots[idx].clone()
        } else {
            self.rs.positive_roots[idx - self.num_positive]
                .iter()
                .map(|x| -x)
                .collect()
        }
    }

    fn idx_of(&self, coords: &[i64]) -> Option<usize> {
        if let Some(i) = self.rs.positive_index(coords) {
            return Some(i);
        }
        let neg: Vec<i64> = coords.iter().map(|x| -x).collect();
        self.rs.positive_index(&neg).map(|i| i + self.num_positive)
    }

    fn is_positive(&self, idx: usize) -> bool {
        idx < self.num_positive
    }

    fn negate(&self, idx: usize) -> usize {
        if idx < self.num_positive {
            idx + self.num_positive
        } else {
            idx - self.num_positive
        }
    }

    /// Down-string length: max `k` with `beta - k*alpha` a root.
    fn string_down(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut k = 0i64;
        loop {
            let probe: Vec<i64> = beta
                .iter()
                .zip(alpha.iter())
                .map(|(b, a)| b - (k + 1) * a)
                .collect();
            if probe.iter().all(|&x| x == 0) || !self.rs.is_root(&probe) {
                return k;
            }
            k += 1;
        }
    }

    /// Extraspecial pair of a non-simple positive root: the first positive
    /// root `alpha` in the total order with `gamma - alpha` also positive.
    fn extraspecial(&self, gamma_idx: usize) -> (usize, usize) {
        let gamma = &self.rs.positive_roots[gamma_idx];
        for (a_idx, alpha) in self.rs.positive_roots.iter().enumerate() {
            if a_idx == gamma_idx {
                break;
            }
            let rest: Vec<i64> = gamma.iter().zip(alpha.iter()).map(|(g, a)| g - a).collect();
            if rest.iter().all(|&x| x == 0) {
                continue;
            }
            if let Some(b_idx) = self.rs.positive_index(&rest) {
                return (a_idx, b_idx);
            }
        }
        unreachable!("every non-simple positive root decomposes")
    }

    fn n(&mut self, a: usize, b: usize) -> Result<i64> {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return Ok(v);
        }
        let v = self.compute(a, b)?;
        self.memo.insert((a, b), v);
        self.memo.insert((b, a), -v);
        Ok(v)
    }

    fn compute(&mut self, a: usize, b: usize) -> Result<i64> {
        let pa = self.is_positive(a);
        let pb = self.is_positive(b);
        match (pa, pb) {
            (true, true) => self.positive_pair(a, b),
            (false, false) => Ok(-self.n(self.negate(a), self.negate(b))?),
            (true, false) | (false, true) => self.mixed_pair(a, b),
        }
    }

    fn positive_pair(&mut self, a: usize, b: usize) -> Result<i64> {
        if a > b {
            return Ok(-self.n(b, a)?);
        }
        let ca = self.coords(a);
        let cb = self.coords(b);
        let sum: Vec<i64> = ca.iter().zip(cb.iter()).map(|(x, y)| x + y).collect();
        let gamma_idx = self
            .rs
            .positive_index(&sum)
            .ok_or_else(|| Error::Internal("positive pair sum must be positive".into()))?;
        let (a1, b1) = self.extraspecial(gamma_idx);
        let plen = self.string_down(&ca, &cb);
        if (a1, b1) == (a, b) {
            return Ok(plen + 1);
        }
        // Four-root identity on (a1, b1, -a, -b), solved for N_{a,b}.
        let ca1 = self.coords(a1);
        let cb1 = self.coords(b1);
        let gamma_norm = Q64::from_integer(self.rs.norm(&sum));
        let mut rhs = Q64::zero();
        let dif1: Vec<i64> = cb1.iter().zip(ca.iter()).map(|(x, y)| x - y).collect(); // b1 - a
        if !dif1.iter().all(|&x| x == 0) && self.rs.is_root(&dif1) {
            let n1 = self.n(b1, self.negate(a))?;
            let n2 = self.n(a1, self.negate(b))?;
            rhs += Q64::new(n1 * n2, self.rs.norm(&dif1));
        }
        let dif2: Vec<i64> = ca1.iter().zip(ca.iter()).map(|(x, y)| x - y).collect(); // a1 - a
        if !dif2.iter().all(|&x| x == 0) && self.rs.is_root(&dif2) {
            let n1 = self.n(self.negate(a), a1)?;
            let n2 = self.n(b1, self.negate(b))?;
            rhs += Q64::new(n1 * n2, self.rs.norm(&dif2));
        }
        let n_extra = self.n(a1, b1)?;
        let value = gamma_norm * rhs / Q64::from_integer(n_extra);
        if !value.is_integer() {
            return Err(Error::Internal(format!(
                "non-integral structure constant for pair ({a}, {b})"
            )));
        }
        let v = value.to_integer();
        let expect = plen + 1;
        if v.abs() != expect {
            return Err(Error::Internal(format!(
                "structure constant magnitude {v} != p+1 = {expect} (sign-convention bug)"
            )));
        }
        Ok(v)
    }

    fn mixed_pair(&mut self, a: usize, b: usize) -> Result<i64> {
        if !self.is_positive(a) {
            return Ok(-self.n(b, a)?);
        }
        // a positive, b negative, a+b a root
        let ca = self.coords(a);
        let cb = self.coords(b);
        let delta: Vec<i64> = ca.iter().zip(cb.iter()).map(|(x, y)| x + y).collect();
        let delta_idx = self
            .idx_of(&delta)
            .ok_or_else(|| Error::Internal("mixed pair sum must be a root".into()))?;
        let norm_delta = Q64::from_integer(self.rs.norm(&delta));
        if self.is_positive(delta_idx) {
            // N_{a,b} = -(delta,delta) * N_{-b, delta} / (a,a)
            let n1 = self.n(self.negate(b), delta_idx)?;
            let value = -norm_delta * Q64::from_integer(n1) / Q64::from_integer(self.rs.norm(&ca));
            self.expect_integer(value)
        } else {
            // N_{a,b} = (delta,delta) * N_{-delta, a} / (b,b)
            let n1 = self.n(self.negate(delta_idx), a)?;
            let value = norm_delta * Q64::from_integer(n1) / Q64::from_integer(self.rs.norm(&cb));
            self.expect_integer(value)
        }
    }

    fn expect_integer(&self, v: Q64) -> Result<i64> {
        if !v.is_integer() {
            return Err(Error::Internal("non-integral structure constant".into()));
        }
        Ok(v.to_integer())
    }
}

#[allow(unused)]
fn q64_one() -> Q64 {
    Q64::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_root_counts() {
        assert_eq!(build_root_system(TypeLabel::A, 2).unwrap().num_roots(), 6);
        assert_eq!(build_root_system(TypeLabel::A, 2).unwrap().num_positive(), 3);
        assert_eq!(build_root_system(TypeLabel::D, 4).unwrap().num_roots(), 24);
        assert_eq!(build_root_system(TypeLabel::G, 2).unwrap().num_roots(), 12);
        assert_eq!(build_root_system(TypeLabel::B, 3).unwrap().num_roots(), 18);
        assert_eq!(build_root_system(TypeLabel::C, 3).unwrap().num_roots(), 18);
        assert_eq!(build_root_system(TypeLabel::D, 3).unwrap().num_roots(), 12);
    }

    #[test]
    fn unsupported_pairs_are_rejected() {
        assert!(build_root_system(TypeLabel::G, 3).is_err());
        assert!(build_root_system(TypeLabel::D, 2).is_err());
        assert!(build_root_system(TypeLabel::B, 1).is_err());
    }

    #[test]
    fn cartan_matrix_shape() {
        let rs = build_root_system(TypeLabel::B, 3).unwrap();
        for i in 0..3 {
            assert_eq!(rs.cartan_matrix[i][i], 2);
            for j in 0..3 {
                if i != j {
                    assert!(rs.cartan_matrix[i][j] <= 0);
                }
            }
        }
    }

    #[test]
    fn diagram_groups_match_table() {
        let order = |l, r| {
            build_root_system(l, r)
                .unwrap()
                .diagram_automorphism_group()
                .len()
        };
        assert_eq!(order(TypeLabel::A, 1), 1);
        for r in 2..=6 {
            assert_eq!(order(TypeLabel::A, r), 2);
        }
        for r in 2..=4 {
            assert_eq!(order(TypeLabel::B, r), 1);
            assert_eq!(order(TypeLabel::C, r), 1);
        }
        assert_eq!(order(TypeLabel::D, 4), 6);
        assert_eq!(order(TypeLabel::D, 5), 2);
        assert_eq!(order(TypeLabel::G, 2), 1);
    }

    #[test]
    fn diagram_group_is_a_group() {
        let rs = build_root_system(TypeLabel::D, 4).unwrap();
        let g = rs.diagram_automorphism_group();
        assert_eq!(g[0], perm_identity(4));
        for a in &g {
            assert!(g.contains(&perm_inverse(a)));
            for b in &g {
                assert!(g.contains(&perm_compose(a, b)));
            }
        }
    }

    #[test]
    fn extraspecial_signs_are_antisymmetric_and_small() {
        for (l, r) in [
            (TypeLabel::A, 3),
            (TypeLabel::B, 2),
            (TypeLabel::C, 3),
            (TypeLabel::D, 4),
            (TypeLabel::G, 2),
        ] {
            let rs = build_root_system(l, r).unwrap();
            let cd = chevalley_constants(&rs).unwrap();
            let total = 2 * cd.num_positive();
            for a in 0..total {
                for b in 0..total {
                    let v = cd.n_const(a, b);
                    assert_eq!(v, -cd.n_const(b, a));
                    assert!(v.abs() <= 3, "|N| must be at most 3, got {v}");
                }
            }
        }
    }

    #[test]
    fn a2_constants_all_unit() {
        let rs = build_root_system(TypeLabel::A, 2).unwrap();
        let cd = chevalley_constants(&rs).unwrap();
        let total = 2 * cd.num_positive();
        for a in 0..total {
            for b in 0..total {
                let ca = cd.root_coords(a);
                let cb = cd.root_coords(b);
                let sum: Vec<i64> = ca.iter().zip(cb.iter()).map(|(x, y)| x + y).collect();
                if sum.iter().all(|&x| x == 0) || !rs.is_root(&sum) {
                    continue;
                }
                assert_eq!(cd.n_const(a, b).abs(), 1);
            }
        }
    }

    #[test]
    fn coroot_coordinates_are_integral() {
        for (l, r) in [(TypeLabel::B, 3), (TypeLabel::C, 2), (TypeLabel::G, 2)] {
            let rs = build_root_system(l, r).unwrap();
            for root in &rs.positive_roots {
                let cr = rs.coroot_coords(root);
                assert_eq!(cr.len(), rs.rank);
            }
        }
    }
}
