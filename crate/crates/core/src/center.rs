//! Centre bookkeeping: finite abelian groups, the centres of the simply
//! connected classical groups (table data), the action of diagram symmetries
//! on them, and group-level automorphism descriptors for matrix groups.
//!
//! Matrix computations are done for SL/SO/Sp; Spin centres are abstract
//! table entries only.

use serde::Serialize;

use crate::cycfield::{CycScalar, ExactMatrix};
use crate::rootsys::{Perm, TypeLabel};
use crate::{Error, Result};

/// A finite abelian group presented as a product of cyclic factors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiniteAbelianGroup {
    pub factors: Vec<u32>,
}

/// Element: one residue per factor.
pub type CenterElem = Vec<u32>;

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: vec![] }
    }

    pub fn cyclic(n: u32) -> Self {
        if n <= 1 {
            FiniteAbelianGroup::trivial()
        } else {
            FiniteAbelianGroup { factors: vec![n] }
        }
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&f| f as usize).product()
    }

    pub fn identity(&self) -> CenterElem {
        vec![0; self.factors.len()]
    }

    pub fn is_identity(&self, e: &CenterElem) -> bool {
        e.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &CenterElem, b: &CenterElem) -> CenterElem {
        a.iter()
            .zip(b.iter())
            .zip(self.factors.iter())
            .map(|((x, y), f)| (x + y) % f)
            .collect()
    }

    pub fn neg(&self, a: &CenterElem) -> CenterElem {
        a.iter()
            .zip(self.factors.iter())
            .map(|(x, f)| (f - x % f) % f)
            .collect()
    }

    pub fn elem_order(&self, a: &CenterElem) -> u32 {
        let mut acc = self.identity();
        for k in 1..=self.order().max(1) as u32 {
            acc = self.add(&acc, a);
            if self.is_identity(&acc) {
                return k;
            }
        }
        1
    }

    pub fn elements(&self) -> Vec<CenterElem> {
        let mut out = vec![self.identity()];
        for (i, &f) in self.factors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * f as usize);
            for e in &out {
                for v in 0..f {
                    let mut e2 = e.clone();
                    e2[i] = v;
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    /// Subgroup generated by the given elements, sorted.
    pub fn subgroup(&self, gens: &[CenterElem]) -> Vec<CenterElem> {
        let mut set = vec![self.identity()];
        let mut frontier = vec![self.identity()];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let s = self.add(&e, g);
                if !set.contains(&s) {
                    set.push(s.clone());
                    frontier.push(s);
                }
            }
        }
        set.sort();
        set
    }

    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|f| format!("Z/{f}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// An automorphism of a finite abelian group, given as an integer matrix
/// acting on the residue tuples.
#[derive(Clone, Debug, Serialize)]
pub struct CenterAction {
    pub matrix: Vec<Vec<i64>>,
}

impl CenterAction {
    pub fn identity(rank: usize) -> Self {
        CenterAction {
            matrix: (0..rank)
                .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn inverse_map(rank: usize) -> Self {
        CenterAction {
            matrix: (0..rank)
                .map(|i| (0..rank).map(|j| if i == j { -1 } else { 0 }).collect())
                .collect(),
        }
    }

    pub fn apply(&self, group: &FiniteAbelianGroup, e: &CenterElem) -> CenterElem {
        (0..group.factors.len())
            .map(|i| {
                let f = group.factors[i] as i64;
                let mut acc = 0i64;
                for (j, &x) in e.iter().enumerate() {
                    acc += self.matrix[i][j] * x as i64;
                }
                acc.rem_euclid(f) as u32
            })
            .collect()
    }

    pub fn is_automorphism(&self, group: &FiniteAbelianGroup) -> bool {
        let mut images: Vec<CenterElem> = group
            .elements()
            .iter()
            .map(|e| self.apply(group, e))
            .collect();
        images.sort();
        images.dedup();
        images.len() == group.order()
    }
}

/// Centre of the simply connected group of the given type (table data).
pub fn simply_connected_center(label: TypeLabel, rank: usize) -> FiniteAbelianGroup {
    match label {
        TypeLabel::A => FiniteAbelianGroup::cyclic(rank as u32 + 1),
        TypeLabel::B | TypeLabel::C => FiniteAbelianGroup::cyclic(2),
        TypeLabel::D => {
            if rank % 2 == 0 {
                FiniteAbelianGroup { factors: vec![2, 2] }
            } else {
                FiniteAbelianGroup::cyclic(4)
            }
        }
        TypeLabel::G => FiniteAbelianGroup::trivial(),
    }
}

/// The three outer nodes of the D4 diagram in our Cartan layout (node 1 is
/// the branch node), paired with the three nontrivial central elements.
const D4_LEAVES: [usize; 3] = [0, 2, 3];
const D4_LEAF_ELEMS: [[u32; 2]; 3] = [[1, 0], [0, 1], [1, 1]];

/// Action of a diagram symmetry on the centre of the simply connected group.
/// Type A flips invert; D-odd flips invert; D-even flips swap the two spinor
/// classes; the D4 group S3 permutes the three nontrivial elements as it
/// permutes the leaves.
pub fn center_action_of_clique(label: TypeLabel, rank: usize, perm: &Perm) -> CenterAction {
    let group = simply_connected_center(label, rank);
    let nfac = group.factors.len();
    let is_identity = perm.iter().enumerate().all(|(i, &v)| i == v);
    if is_identity {
        return CenterAction::identity(nfac);
    }
    match label {
        TypeLabel::A => CenterAction::inverse_map(nfac),
        TypeLabel::D if rank == 4 => {
            let elem_of_leaf = |leaf: usize| -> [u32; 2] {
                let pos = D4_LEAVES.iter().position(|&l| l == leaf).unwrap();
                D4_LEAF_ELEMS[pos]
            };
            // images of the basis vectors (1,0) (leaf 0) and (0,1) (leaf 2)
            let img_e1 = elem_of_leaf(perm[0]);
            let img_e2 = elem_of_leaf(perm[2]);
            CenterAction {
                matrix: vec![
                    vec![img_e1[0] as i64, img_e2[0] as i64],
                    vec![img_e1[1] as i64, img_e2[1] as i64],
                ],
            }
        }
        TypeLabel::D if rank % 2 == 1 => CenterAction::inverse_map(nfac),
        TypeLabel::D => CenterAction {
            // swap the two spinor generators, fixing the vector class (1,1)
            matrix: vec![vec![0, 1], vec![1, 0]],
        },
        _ => CenterAction::identity(nfac),
    }
}

/// `Z_a = { z : z a(z) ... a^{n-1}(z) = 1 }`.
pub fn z_a_subgroup(group: &FiniteAbelianGroup, action: &CenterAction, n: u32) -> Vec<CenterElem> {
    let mut out = Vec::new();
    for z in group.elements() {
        let mut acc = group.identity();
        let mut cur = z.clone();
        for _ in 0..n {
            acc = group.add(&acc, &cur);
            cur = action.apply(group, &cur);
        }
        if group.is_identity(&acc) {
            out.push(z);
        }
    }
    out.sort();
    out
}

/// `{ a(z) z^{-1} : z in Z }` — always inside the image of the central
/// homomorphism.
pub fn c_image_of_center(group: &FiniteAbelianGroup, action: &CenterAction) -> Vec<CenterElem> {
    let gens: Vec<CenterElem> = group
        .elements()
        .iter()
        .map(|z| group.add(&action.apply(group, z), &group.neg(z)))
        .collect();
    group.subgroup(&gens)
}

/// Label of an ambient matrix (or Spin) group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupLabel {
    Sl(usize),
    So(usize),
    Sp(usize),
    Spin8,
}

impl GroupLabel {
    pub fn name(&self) -> String {
        match self {
            GroupLabel::Sl(n) => format!("SL({n},C)"),
            GroupLabel::So(n) => format!("SO({n},C)"),
            GroupLabel::Sp(n) => format!("Sp({n},C)"),
            GroupLabel::Spin8 => "Spin(8,C)".to_string(),
        }
    }

    pub fn matrix_size(&self) -> Option<usize> {
        match self {
            GroupLabel::Sl(n) | GroupLabel::So(n) | GroupLabel::Sp(n) => Some(*n),
            GroupLabel::Spin8 => None,
        }
    }

    pub fn center(&self) -> FiniteAbelianGroup {
        match self {
            GroupLabel::Sl(n) => FiniteAbelianGroup::cyclic(*n as u32),
            GroupLabel::So(n) => {
                if n % 2 == 0 {
                    FiniteAbelianGroup::cyclic(2)
                } else {
                    FiniteAbelianGroup::trivial()
                }
            }
            GroupLabel::Sp(_) => FiniteAbelianGroup::cyclic(2),
            GroupLabel::Spin8 => FiniteAbelianGroup { factors: vec![2, 2] },
        }
    }

    /// Membership check for the matrix groups; Spin has no matrix
    /// realization here.
    pub fn contains(&self, m: &ExactMatrix) -> Result<()> {
        let n = self
            .matrix_size()
            .ok_or_else(|| Error::NotInGroup(self.name()))?;
        if m.rows() != n || m.cols() != n {
            return Err(Error::NotInGroup(self.name()));
        }
        match self {
            GroupLabel::Sl(_) => {
                if !m.det()?.is_one() {
                    return Err(Error::NotInGroup(self.name()));
                }
            }
            GroupLabel::So(_) => {
                if !m.transpose().matmul(m)?.is_identity() || !m.det()?.is_one() {
                    return Err(Error::NotInGroup(self.name()));
                }
            }
            GroupLabel::Sp(nn) => {
                let j = standard_symplectic_form(*nn);
                let lhs = m.transpose().matmul(&j)?.matmul(m)?;
                if !lhs.eq_val(&j) {
                    return Err(Error::NotInGroup(self.name()));
                }
            }
            GroupLabel::Spin8 => unreachable!(),
        }
        Ok(())
    }

    /// Recognizes a central scalar matrix as an abstract centre element.
    pub fn central_value(&self, m: &ExactMatrix) -> Option<CenterElem> {
        let scalar = as_scalar_matrix(m)?;
        match self {
            GroupLabel::Sl(n) => {
                let k = scalar.as_power_of_zeta(*n as u32)?;
                if *n <= 1 {
                    Some(vec![])
                } else {
                    Some(vec![k as u32])
                }
            }
            GroupLabel::So(n) => {
                if scalar.is_one() {
                    Some(if n % 2 == 0 { vec![0] } else { vec![] })
                } else if n % 2 == 0 && scalar.eq_val(&CycScalar::from_int(-1)) {
                    Some(vec![1])
                } else {
                    None
                }
            }
            GroupLabel::Sp(_) => {
                if scalar.is_one() {
                    Some(vec![0])
                } else if scalar.eq_val(&CycScalar::from_int(-1)) {
                    Some(vec![1])
                } else {
                    None
                }
            }
            GroupLabel::Spin8 => None,
        }
    }
}

/// `J = [[0, I], [-I, 0]]`.
pub fn standard_symplectic_form(n: usize) -> ExactMatrix {
    let m = n / 2;
    ExactMatrix::from_fn(n, n, |r, c| {
        if r < m && c == m + r {
            CycScalar::one()
        } else if r >= m && c == r - m {
            CycScalar::from_int(-1)
        } else {
            CycScalar::zero()
        }
    })
}

/// Returns the scalar if the matrix is `z * I`.
pub fn as_scalar_matrix(m: &ExactMatrix) -> Option<CycScalar> {
    if m.rows() != m.cols() || m.rows() == 0 {
        return None;
    }
    let z = m.get(0, 0).clone();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let e = m.get(r, c);
            if r == c {
                if !e.eq_val(&z) {
                    return None;
                }
            } else if !e.is_zero() {
                return None;
            }
        }
    }
    Some(z)
}

/// Group-level automorphism rules: the grammar is conjugation, inverse
/// transpose, form-twisted inverse transpose, and composites of these.
#[derive(Clone, Debug)]
pub enum GroupAut {
    ConjugateBy(ExactMatrix),
    InverseTranspose,
    /// `A -> F (A^t)^{-1} F^{-1}`.
    FormTwistedInverseTranspose(ExactMatrix),
    /// Applied right-to-left.
    Composite(Vec<GroupAut>),
}

impl GroupAut {
    pub fn apply(&self, a: &ExactMatrix) -> Result<ExactMatrix> {
        match self {
            GroupAut::ConjugateBy(s) => s.matmul(a)?.matmul(&s.inverse()?),
            GroupAut::InverseTranspose => a.transpose().inverse(),
            GroupAut::FormTwistedInverseTranspose(f) => {
                f.matmul(&a.transpose().inverse()?)?.matmul(&f.inverse()?)
            }
            GroupAut::Composite(parts) => {
                let mut out = a.clone();
                for p in parts.iter().rev() {
                    out = p.apply(&out)?;
                }
                Ok(out)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GroupAut::ConjugateBy(_) => "Int(s)".to_string(),
            GroupAut::InverseTranspose => "inverse-transpose".to_string(),
            GroupAut::FormTwistedInverseTranspose(_) => {
                "form-twisted inverse-transpose".to_string()
            }
            GroupAut::Composite(parts) => parts
                .iter()
                .map(|p| p.describe())
                .collect::<Vec<_>>()
                .join(" . "),
        }
    }

    /// Induced action on the centre of a matrix group, computed by applying
    /// the rule to scalar matrices.
    pub fn center_action(&self, group: &GroupLabel) -> Result<CenterAction> {
        let z = group.center();
        let nfac = z.factors.len();
        if nfac == 0 {
            return Ok(CenterAction::identity(0));
        }
        let n = group
            .matrix_size()
            .ok_or_else(|| Error::UnsupportedAlgebra("no matrix realization of Spin".into()))?;
        let mut matrix: Vec<Vec<i64>> = vec![vec![0; nfac]; nfac];
        for j in 0..nfac {
            let scalar = match group {
                GroupLabel::Sl(nn) => CycScalar::root_of_unity(*nn as u32, 1)?,
                _ => CycScalar::from_int(-1),
            };
            let gen_matrix = ExactMatrix::identity(n).scale(&scalar);
            let image = self.apply(&gen_matrix)?;
            let image_elem = group.central_value(&image).ok_or_else(|| {
                Error::Internal("automorphism does not preserve the centre".into())
            })?;
            for i in 0..nfac {
                matrix[i][j] = image_elem[i] as i64;
            }
        }
        Ok(CenterAction { matrix })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, perm_order};

    #[test]
    fn table_centres() {
        assert_eq!(simply_connected_center(TypeLabel::A, 3).describe(), "Z/4");
        assert_eq!(simply_connected_center(TypeLabel::A, 1).describe(), "Z/2");
        assert_eq!(simply_connected_center(TypeLabel::B, 3).describe(), "Z/2");
        assert_eq!(simply_connected_center(TypeLabel::C, 4).describe(), "Z/2");
        assert_eq!(
            simply_connected_center(TypeLabel::D, 4).describe(),
            "Z/2 x Z/2"
        );
        assert_eq!(simply_connected_center(TypeLabel::D, 5).describe(), "Z/4");
        assert_eq!(simply_connected_center(TypeLabel::G, 2).describe(), "1");
    }

    #[test]
    fn d4_center_action_is_faithful_s3() {
        let rs = build_root_system(TypeLabel::D, 4).unwrap();
        let group = simply_connected_center(TypeLabel::D, 4);
        let perms = rs.diagram_automorphism_group();
        assert_eq!(perms.len(), 6);
        let mut seen = Vec::new();
        for p in &perms {
            let act = center_action_of_clique(TypeLabel::D, 4, p);
            assert!(act.is_automorphism(&group));
            let ord = perm_order(p);
            let e = vec![1, 0];
            let mut steps = 1u32;
            let mut cur = act.apply(&group, &e);
            while cur != e && steps < 10 {
                cur = act.apply(&group, &cur);
                steps += 1;
            }
            assert!(ord % steps == 0, "action order divides perm order");
            let img: Vec<CenterElem> =
                group.elements().iter().map(|x| act.apply(&group, x)).collect();
            seen.push(img);
        }
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6, "all six diagram symmetries act differently");
    }

    #[test]
    fn z_a_for_inverse_action() {
        // Z/4 with inversion, n = 2: z - z = 0 always
        let g = FiniteAbelianGroup::cyclic(4);
        let a = CenterAction::inverse_map(1);
        let za = z_a_subgroup(&g, &a, 2);
        assert_eq!(za.len(), 4);
        // trivial action, n = 2: 2z = 0 -> the 2-torsion
        let t = CenterAction::identity(1);
        let za2 = z_a_subgroup(&g, &t, 2);
        assert_eq!(za2, vec![vec![0], vec![2]]);
    }

    #[test]
    fn group_membership() {
        let sl2 = GroupLabel::Sl(2);
        let i = CycScalar::i();
        let s = ExactMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) => i.clone(),
            (1, 1) => i.neg(),
            _ => CycScalar::zero(),
        });
        assert!(sl2.contains(&s).is_ok());
        let bad = ExactMatrix::identity(2).scale(&CycScalar::from_int(2));
        assert!(sl2.contains(&bad).is_err());
        let so3 = GroupLabel::So(3);
        assert!(so3.contains(&ExactMatrix::identity(3)).is_ok());
        let sp4 = GroupLabel::Sp(4);
        assert!(sp4.contains(&ExactMatrix::identity(4)).is_ok());
    }

    #[test]
    fn central_value_recognition() {
        let sl4 = GroupLabel::Sl(4);
        let z = ExactMatrix::identity(4).scale(&CycScalar::i());
        assert_eq!(sl4.central_value(&z), Some(vec![1]));
        let m = ExactMatrix::identity(4).scale(&CycScalar::from_int(-1));
        assert_eq!(sl4.central_value(&m), Some(vec![2]));
        assert_eq!(sl4.central_value(&ExactMatrix::identity(4)), Some(vec![0]));
    }

    #[test]
    fn inverse_transpose_inverts_the_centre() {
        let sl3 = GroupLabel::Sl(3);
        let act = GroupAut::InverseTranspose.center_action(&sl3).unwrap();
        let z = sl3.center();
        let g = vec![1u32];
        assert_eq!(act.apply(&z, &g), vec![2]);
    }

    #[test]
    fn subgroup_generation() {
        let g = FiniteAbelianGroup { factors: vec![2, 2] };
        let sub = g.subgroup(&[vec![1, 1]]);
        assert_eq!(sub, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(g.subgroup(&[vec![1, 0], vec![0, 1]]).len(), 4);
    }
}
