//! Induced monomial representations of Heisenberg pairs and their
//! determinants, computed three independent ways: directly from the matrix,
//! through Gallagher's transfer formula, and in closed form.

mod corollaries;
mod epsilon;

pub use corollaries::{
    check_all_twists, check_trivializing_twist, check_twist, determinant_character,
    find_trivializing_twist, p3_classification, twist, P3GroupRow, P3Report, TwistSearch,
};
pub use epsilon::{check_epsilon_case, epsilon_table, isotropic_independence, EpsilonTable};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::character::{extend_character, CharacterError, LinearCharacter, QmodZ};
use crate::group::{Elem, FiniteGroup, GroupError, GroupHom, LeftCosets, Subgroup};
use crate::heisenberg::{
    is_kernel_reduced, maximal_isotropic_through, reduce_kernel, two_rank_mod_z, HeisenbergError,
    HeisenbergPair,
};
use crate::report::CheckReport;
use crate::transfer::{Transfer, TransferError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InducedError {
    #[error("invalid inducing data: {0}")]
    InvalidInducingData(String),
    #[error("pair is not kernel-reduced: {0}")]
    KernelNotReduced(String),
    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid prime {0}: need an odd prime with p³ <= 512")]
    InvalidPrime(usize),
    #[error("twisting character must be defined on all of G")]
    NotAGroupCharacter,
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A monomial matrix over roots of unity: column `j` has its single nonzero
/// entry `exp(2πi·exps[j])` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    exps: Vec<QmodZ>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, exps: Vec<QmodZ>) -> Self {
        assert_eq!(perm.len(), exps.len());
        MonomialMatrix { perm, exps }
    }

    pub fn identity(dim: usize) -> Self {
        MonomialMatrix {
            perm: (0..dim).collect(),
            exps: vec![QmodZ::ZERO; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `(row, exponent)` of the nonzero entry in column `col`.
    pub fn column(&self, col: usize) -> (usize, QmodZ) {
        (self.perm[col], self.exps[col])
    }

    pub fn mul(&self, rhs: &MonomialMatrix) -> Result<MonomialMatrix, InducedError> {
        if self.dim() != rhs.dim() {
            return Err(InducedError::DimensionMismatch(self.dim(), rhs.dim()));
        }
        let (perm, exps) = (0..rhs.dim())
            .map(|j| {
                let (k, b) = rhs.column(j);
                let (i, a) = self.column(k);
                (i, a + b)
            })
            .unzip();
        Ok(MonomialMatrix { perm, exps })
    }

    /// `sign(perm) + Σ exps`.
    pub fn det(&self) -> QmodZ {
        permutation_sign(&self.perm) + self.exps.iter().copied().sum()
    }

    /// `Some(v)` when the matrix is `exp(2πi·v)·I`.
    pub fn scalar(&self) -> Option<QmodZ> {
        let first = *self.exps.first()?;
        let diagonal = self.perm.iter().enumerate().all(|(j, &i)| i == j);
        (diagonal && self.exps.iter().all(|&e| e == first)).then_some(first)
    }
}

/// Sign of a permutation as `0` (even) or `1/2` (odd).
pub fn permutation_sign(perm: &[usize]) -> QmodZ {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        transpositions += len.max(1) - 1;
    }
    if transpositions % 2 == 0 {
        QmodZ::ZERO
    } else {
        QmodZ::HALF
    }
}

/// `Ind_H^G χ_H` for a maximal isotropic `H` and an extension `χ_H` of `χ`,
/// written in the basis given by the canonical left transversal of `H`.
#[derive(Clone, Debug)]
pub struct InducedRep {
    pair: HeisenbergPair,
    subgroup: Subgroup,
    chi_h: LinearCharacter,
    cosets: LeftCosets,
    transfer: Transfer,
}

impl InducedRep {
    pub fn new(
        pair: &HeisenbergPair,
        h: &Subgroup,
        chi_h: &LinearCharacter,
    ) -> Result<Self, InducedError> {
        let group = pair.group();
        if chi_h.domain() != h {
            return Err(InducedError::InvalidInducingData(
                "χ_H is not defined on H".into(),
            ));
        }
        if let Some(&z) = pair
            .z()
            .members()
            .iter()
            .find(|&&z| chi_h.get(z) != pair.chi().get(z))
        {
            return Err(InducedError::InvalidInducingData(format!(
                "χ_H and χ differ at {z}"
            )));
        }
        if group.order() / h.order() != pair.dim() {
            return Err(InducedError::InvalidInducingData(format!(
                "[G:H] = {} but the pair has dimension {}",
                group.order() / h.order(),
                pair.dim()
            )));
        }
        Ok(InducedRep {
            pair: pair.clone(),
            subgroup: h.clone(),
            chi_h: chi_h.clone(),
            cosets: group.left_cosets(h),
            transfer: Transfer::new(group, h),
        })
    }

    /// Uses the maximal isotropic subgroup through the identity and the
    /// default extension of `χ`.
    pub fn canonical(pair: &HeisenbergPair) -> Result<Self, InducedError> {
        let h = maximal_isotropic_through(pair, pair.group().identity());
        let chi_h = extend_character(pair.group(), pair.chi(), &h)?;
        Self::new(pair, &h, &chi_h)
    }

    pub fn pair(&self) -> &HeisenbergPair {
        &self.pair
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn chi_h(&self) -> &LinearCharacter {
        &self.chi_h
    }

    pub fn group(&self) -> &FiniteGroup {
        self.pair.group()
    }

    /// Column `j` holds `χ_H(t_i⁻¹·g·t_j)` in the row `i` with `g·t_j ∈ t_i·H`.
    pub fn matrix(&self, g: Elem) -> MonomialMatrix {
        let group = self.group();
        let reps = self.cosets.reps();
        let (perm, exps) = reps
            .iter()
            .map(|&tj| {
                let gt = group.mul(g, tj);
                let i = self.cosets.coset_of(gt);
                (i, self.chi_h.at(group.mul(group.inv(reps[i]), gt)))
            })
            .unzip();
        MonomialMatrix { perm, exps }
    }

    pub fn det(&self, g: Elem) -> QmodZ {
        self.matrix(g).det()
    }

    /// Sign of `g` permuting `G/H`.
    pub fn delta(&self, g: Elem) -> QmodZ {
        delta_character(self.group(), &self.cosets, g)
    }

    /// `Δ(g) + χ_H(T_{G/H}(g))`.
    pub fn det_gallagher(&self, g: Elem) -> QmodZ {
        self.delta(g) + self.chi_h.at(self.transfer.value(self.group(), g))
    }

    pub fn transfer(&self) -> &Transfer {
        &self.transfer
    }

    /// `ρ(g₁)ρ(g₂) = ρ(g₁g₂)`: exhaustive when `|G|²·dim <= 2²²`, otherwise
    /// on 4096 seeded random pairs.
    pub fn check_homomorphism(&self, seed: u64) -> CheckReport {
        let group = self.group();
        let n = group.order();
        let mut report = CheckReport::new("induced_homomorphism");
        let check = |x: Elem, y: Elem, report: &mut CheckReport| {
            let prod = self.matrix(x).mul(&self.matrix(y)).expect("same dimension");
            let ok = prod == self.matrix(group.mul(x, y));
            report.expect(x, Some(y), ok, "ρ(x)ρ(y) = ρ(xy)");
        };
        if n * n * self.pair.dim() <= 1 << 22 {
            for x in group.elements() {
                for y in group.elements() {
                    check(x, y, &mut report);
                }
            }
            report.set_stat("mode", "exhaustive");
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..4096 {
                check(rng.gen_range(0..n), rng.gen_range(0..n), &mut report);
            }
            report.set_stat("mode", "sampled");
        }
        report
    }
}

/// Sign of the permutation of the left cosets induced by `g`.
pub fn delta_character(group: &FiniteGroup, cosets: &LeftCosets, g: Elem) -> QmodZ {
    let perm: Vec<usize> = cosets
        .reps()
        .iter()
        .map(|&t| cosets.coset_of(group.mul(g, t)))
        .collect();
    permutation_sign(&perm)
}

pub fn induced_matrix(
    pair: &HeisenbergPair,
    h: &Subgroup,
    chi_h: &LinearCharacter,
    g: Elem,
) -> Result<MonomialMatrix, InducedError> {
    Ok(InducedRep::new(pair, h, chi_h)?.matrix(g))
}

pub fn det_gallagher(
    pair: &HeisenbergPair,
    h: &Subgroup,
    chi_h: &LinearCharacter,
    g: Elem,
) -> Result<QmodZ, InducedError> {
    Ok(InducedRep::new(pair, h, chi_h)?.det_gallagher(g))
}

/// Which branch of the closed-form determinant applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DetCase {
    /// `d` odd, so `rk₂(G/Z) = 0`.
    #[serde(rename = "odd")]
    Odd,
    #[serde(rename = "rk2>=4")]
    RankAtLeastFour,
    #[serde(rename = "rk2=2")]
    RankTwo,
}

impl std::fmt::Display for DetCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DetCase::Odd => "odd",
            DetCase::RankAtLeastFour => "rk2>=4",
            DetCase::RankTwo => "rk2=2",
        })
    }
}

/// `det ρ(g) = ε(g) + χ(g^d)`, with `ε ≡ 0` unless `rk₂(G/Z) = 2`, in which
/// case `ε` is `0` on `G²Z` and `1/2` off it.
#[derive(Clone, Debug)]
pub struct DeterminantFormula {
    pair: HeisenbergPair,
    projection: Option<GroupHom>,
    rk2: usize,
    case: DetCase,
    squares_z: Subgroup,
}

impl DeterminantFormula {
    /// Requires a kernel-reduced pair: `χ` faithful, `Z = Z(G)`, `G^d ⊆ Z`.
    pub fn new(pair: &HeisenbergPair) -> Result<Self, InducedError> {
        require_reduced(pair)?;
        let group = pair.group();
        let rk2 = two_rank_mod_z(pair)?;
        let case = match rk2 {
            0 => DetCase::Odd,
            2 => DetCase::RankTwo,
            _ => DetCase::RankAtLeastFour,
        };
        let mut gens = group.power_set(2);
        gens.extend_from_slice(pair.z().members());
        let squares_z = group.subgroup_generated(&gens);
        Ok(DeterminantFormula {
            pair: pair.clone(),
            projection: None,
            rk2,
            case,
            squares_z,
        })
    }

    /// Reduces the pair first and evaluates through the projection `G → Ḡ`.
    pub fn via_reduction(pair: &HeisenbergPair) -> Result<Self, InducedError> {
        let (reduced, proj) = reduce_kernel(pair)?;
        let mut formula = Self::new(&reduced)?;
        formula.projection = Some(proj);
        Ok(formula)
    }

    /// The pair the formula is evaluated on (the reduced one, if reduced).
    pub fn pair(&self) -> &HeisenbergPair {
        &self.pair
    }

    pub fn rk2(&self) -> usize {
        self.rk2
    }

    pub fn case(&self) -> DetCase {
        self.case
    }

    fn project(&self, g: Elem) -> Elem {
        self.projection.as_ref().map_or(g, |p| p.apply(g))
    }

    pub fn epsilon(&self, g: Elem) -> QmodZ {
        let g = self.project(g);
        match self.case {
            DetCase::RankTwo if !self.squares_z.contains(g) => QmodZ::HALF,
            _ => QmodZ::ZERO,
        }
    }

    /// `(det ρ(g), ε(g))`.
    pub fn eval(&self, g: Elem) -> (QmodZ, QmodZ) {
        let eps = self.epsilon(g);
        let gb = self.project(g);
        let gd = self.pair.group().pow(gb, self.pair.dim() as i64);
        (eps + self.pair.chi().at(gd), eps)
    }
}

pub(crate) fn require_reduced(pair: &HeisenbergPair) -> Result<(), InducedError> {
    let group = pair.group();
    if !is_kernel_reduced(pair) {
        return Err(InducedError::KernelNotReduced(
            "χ has a nontrivial kernel".into(),
        ));
    }
    if pair.z() != group.center() {
        return Err(InducedError::KernelNotReduced("Z is not the center".into()));
    }
    let d = pair.dim() as i64;
    if let Some(g) = group
        .elements()
        .find(|&g| !pair.z().contains(group.pow(g, d)))
    {
        return Err(InducedError::KernelNotReduced(format!(
            "{g}^{d} lies outside Z"
        )));
    }
    Ok(())
}

/// `(det ρ(g), ε(g))` from the closed form, for a kernel-reduced pair.
pub fn det_formula(pair: &HeisenbergPair, g: Elem) -> Result<(QmodZ, QmodZ), InducedError> {
    Ok(DeterminantFormula::new(pair)?.eval(g))
}

#[derive(Clone, Debug, Serialize)]
pub struct DetRow {
    pub g: Elem,
    pub direct: QmodZ,
    pub gallagher: QmodZ,
    pub formula: QmodZ,
    pub epsilon: QmodZ,
}

/// The determinant of a pair's representation on every element, computed
/// three ways on the kernel-reduced group `Ḡ`.
#[derive(Clone, Debug, Serialize)]
pub struct DetReport {
    pub group: String,
    #[serde(rename = "Z")]
    pub z: Vec<Elem>,
    pub dim: usize,
    pub rk2: usize,
    pub case: DetCase,
    pub rows: Vec<DetRow>,
    pub all_agree: bool,
}

pub fn det_report(pair: &HeisenbergPair) -> Result<DetReport, InducedError> {
    let (reduced, _) = reduce_kernel(pair)?;
    let rep = InducedRep::canonical(&reduced)?;
    let formula = DeterminantFormula::new(&reduced)?;
    let rows: Vec<DetRow> = reduced
        .group()
        .elements()
        .map(|g| {
            let (f, eps) = formula.eval(g);
            DetRow {
                g,
                direct: rep.det(g),
                gallagher: rep.det_gallagher(g),
                formula: f,
                epsilon: eps,
            }
        })
        .collect();
    let all_agree = rows
        .iter()
        .all(|r| r.direct == r.gallagher && r.direct == r.formula);
    Ok(DetReport {
        group: reduced.group().label().to_string(),
        z: reduced.z().members().to_vec(),
        dim: reduced.dim(),
        rk2: formula.rk2(),
        case: formula.case(),
        rows,
        all_agree,
    })
}

/// `ρ(z) = χ(z)·I` for every `z ∈ Z`.
pub fn check_scalar_on_z(rep: &InducedRep) -> CheckReport {
    let mut report = CheckReport::new("scalar_on_center");
    for &z in rep.pair().z().members() {
        let scalar = rep
            .matrix(z)
            .scalar()
            .map_or_else(|| "not scalar".to_string(), |v| v.to_string());
        report.expect_eq(z, None, scalar, rep.pair().chi().at(z).to_string());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::heisenberg::enumerate_pairs;
    use std::sync::Arc;

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[]), QmodZ::ZERO);
        assert_eq!(permutation_sign(&[1, 0]), QmodZ::HALF);
        assert_eq!(permutation_sign(&[1, 2, 0]), QmodZ::ZERO);
        assert_eq!(permutation_sign(&[1, 0, 3, 2]), QmodZ::ZERO);
    }

    #[test]
    fn monomial_products() {
        let a = MonomialMatrix::new(vec![1, 0], vec![QmodZ::new(1, 4), QmodZ::ZERO]);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.scalar(), Some(QmodZ::new(1, 4)));
        assert_eq!(a.det(), QmodZ::HALF + QmodZ::new(1, 4));
        assert!(a.mul(&MonomialMatrix::identity(3)).is_err());
    }

    fn two_dim_pair(spec: GroupSpec) -> HeisenbergPair {
        let g = Arc::new(spec.build().unwrap());
        enumerate_pairs(&g, 256)
            .unwrap()
            .into_iter()
            .find(|p| p.dim() == 2)
            .unwrap()
    }

    #[test]
    fn d8_determinant() {
        // det of the 2-dim representation of D8 is the sign character of
        // the reflection quotient: -1 exactly on reflections.
        let pair = two_dim_pair(GroupSpec::Dihedral { order: 8 });
        let report = det_report(&pair).unwrap();
        assert!(report.all_agree);
        assert_eq!(report.case, DetCase::RankTwo);
        for row in &report.rows {
            let reflection = row.g % 2 == 1;
            assert_eq!(
                row.direct,
                if reflection { QmodZ::HALF } else { QmodZ::ZERO },
                "g = {}",
                row.g
            );
        }
    }

    #[test]
    fn q8_determinant_is_trivial() {
        let pair = two_dim_pair(GroupSpec::Quaternion8 {});
        let report = det_report(&pair).unwrap();
        assert!(report.all_agree);
        assert!(report.rows.iter().all(|r| r.direct.is_zero()));
        let rep = InducedRep::canonical(&pair).unwrap();
        assert!(rep.check_homomorphism(0).pass());
        assert!(check_scalar_on_z(&rep).pass());
    }

    #[test]
    fn unreduced_pairs_are_rejected() {
        let g = Arc::new(GroupSpec::Cyclic { n: 4 }.build().unwrap());
        let trivial = enumerate_pairs(&g, 256).unwrap().remove(0);
        assert!(matches!(
            det_formula(&trivial, 1),
            Err(InducedError::KernelNotReduced(_))
        ));
        let formula = DeterminantFormula::via_reduction(&trivial).unwrap();
        assert_eq!(formula.eval(1).0, QmodZ::ZERO);
    }
}
