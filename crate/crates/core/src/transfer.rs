//! The transfer `T_{G/H}: G → H/[H, H]` and its behavior on two-step
//! nilpotent groups.
//!
//! Transfer values are reported as canonical representatives of the coset
//! `x·[H, H]`: the smallest element id in that coset. For abelian `H` this is
//! the element itself.

use std::collections::HashMap;

use rand::Rng;
use thiserror::Error;

use crate::abelian;
use crate::group::{Elem, FiniteGroup, GroupError, LeftCosets, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("transversal is not a left transversal: {0}")]
    BadTransversal(String),
    #[error("structural condition fails: {condition} ({detail})")]
    PreconditionFailed {
        condition: Condition,
        detail: String,
    },
    #[error("subgroups have different indices {0} and {1}")]
    IndexMismatch(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The structural hypotheses under which transfer has a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    SubgroupNotNormal,
    SubgroupNotAbelian,
    QuotientNotAbelian,
    IndexEven,
    NotTwoStepNilpotent,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Condition::SubgroupNotNormal => "H is not normal in G",
            Condition::SubgroupNotAbelian => "H is not abelian",
            Condition::QuotientNotAbelian => "G/H is not abelian",
            Condition::IndexEven => "[G:H] is even",
            Condition::NotTwoStepNilpotent => "G is not two-step nilpotent",
        })
    }
}

fn precondition(condition: Condition, detail: impl Into<String>) -> TransferError {
    TransferError::PreconditionFailed {
        condition,
        detail: detail.into(),
    }
}

/// Transfer into `H/[H, H]` computed from a fixed left transversal.
#[derive(Clone, Debug)]
pub struct Transfer {
    subgroup: Subgroup,
    cosets: LeftCosets,
    transversal: Vec<Elem>,
    /// Canonical representative mod `[H, H]`, indexed by element id
    /// (`usize::MAX` off `H`).
    reduce: Vec<Elem>,
}

impl Transfer {
    /// Uses the canonical transversal (smallest id in each coset).
    pub fn new(group: &FiniteGroup, h: &Subgroup) -> Self {
        let cosets = group.left_cosets(h);
        let transversal = cosets.reps().to_vec();
        Self::build(group, h, cosets, transversal)
    }

    /// Uses the given transversal, which must meet every left coset once.
    pub fn with_transversal(
        group: &FiniteGroup,
        h: &Subgroup,
        transversal: &[Elem],
    ) -> Result<Self, TransferError> {
        let cosets = group.left_cosets(h);
        if transversal.len() != cosets.index() {
            return Err(TransferError::BadTransversal(format!(
                "{} representatives for {} cosets",
                transversal.len(),
                cosets.index()
            )));
        }
        let mut ordered = vec![usize::MAX; cosets.index()];
        for &t in transversal {
            if t >= group.order() {
                return Err(TransferError::BadTransversal(format!(
                    "element {t} out of range"
                )));
            }
            let c = cosets.coset_of(t);
            if ordered[c] != usize::MAX {
                return Err(TransferError::BadTransversal(format!(
                    "{} and {t} share a coset",
                    ordered[c]
                )));
            }
            ordered[c] = t;
        }
        Ok(Self::build(group, h, cosets, ordered))
    }

    fn build(
        group: &FiniteGroup,
        h: &Subgroup,
        cosets: LeftCosets,
        transversal: Vec<Elem>,
    ) -> Self {
        let derived = group.commutator_of(h, h);
        let mut reduce = vec![usize::MAX; group.order()];
        for &x in h.members() {
            reduce[x] = derived
                .members()
                .iter()
                .map(|&c| group.mul(x, c))
                .min()
                .expect("nonempty");
        }
        Transfer {
            subgroup: h.clone(),
            cosets,
            transversal,
            reduce,
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[Elem] {
        &self.transversal
    }

    /// Canonical representative of `x·[H, H]` for `x ∈ H`.
    pub fn reduce(&self, x: Elem) -> Elem {
        let rep = self.reduce[x];
        assert!(rep != usize::MAX, "{x} is not in H");
        rep
    }

    /// `∏_i t_{g(i)}⁻¹·g·t_i mod [H, H]`, where `g·t_i ∈ t_{g(i)}·H`.
    pub fn value(&self, group: &FiniteGroup, g: Elem) -> Elem {
        let mut acc = group.identity();
        for &t in &self.transversal {
            let gt = group.mul(g, t);
            let tj = self.transversal[self.cosets.coset_of(gt)];
            acc = group.mul(acc, group.mul(group.inv(tj), gt));
        }
        self.reduce(acc)
    }

    /// Values for every element id.
    pub fn table(&self, group: &FiniteGroup) -> Vec<Elem> {
        group.elements().map(|g| self.value(group, g)).collect()
    }
}

/// `T_{G/H}(g)` with the canonical transversal.
pub fn transfer(group: &FiniteGroup, h: &Subgroup, g: Elem) -> Elem {
    Transfer::new(group, h).value(group, g)
}

/// Checks `H ⊴ G`, `H` abelian, `G/H` abelian, `G` two-step nilpotent and,
/// if asked, `[G : H]` odd. Returns the index.
pub fn check_structure(
    group: &FiniteGroup,
    h: &Subgroup,
    require_odd: bool,
) -> Result<usize, TransferError> {
    if let Some((member, by)) = group.normality_witness(h) {
        return Err(precondition(
            Condition::SubgroupNotNormal,
            format!("{by}·{member}·{by}⁻¹ ∉ H"),
        ));
    }
    for &x in h.members() {
        for &y in h.members() {
            if group.mul(x, y) != group.mul(y, x) {
                return Err(precondition(
                    Condition::SubgroupNotAbelian,
                    format!("{x} and {y} do not commute"),
                ));
            }
        }
    }
    let derived = group.commutator_subgroup();
    if let Some(&c) = derived.members().iter().find(|&&c| !h.contains(c)) {
        return Err(precondition(
            Condition::QuotientNotAbelian,
            format!("commutator {c} ∉ H"),
        ));
    }
    let d = group.order() / h.order();
    if require_odd && d.is_multiple_of(2) {
        return Err(precondition(Condition::IndexEven, format!("index {d}")));
    }
    if !group.is_two_step_nilpotent() {
        return Err(precondition(
            Condition::NotTwoStepNilpotent,
            "[G, G] is not central",
        ));
    }
    Ok(d)
}

/// For odd index, transfer is `g ↦ g^d`.
pub fn check_odd_index_transfer(
    group: &FiniteGroup,
    h: &Subgroup,
) -> Result<CheckReport, TransferError> {
    let d = check_structure(group, h, true)?;
    let t = Transfer::new(group, h);
    let mut report = CheckReport::new("odd_index_transfer");
    report.set_stat("index", d);
    for g in group.elements() {
        report.expect_eq(g, None, t.value(group, g), group.pow(g, d as i64));
    }
    Ok(report)
}

/// The correcting function `φ(g) = g^{-d}·T_{G/H}(g)`.
#[derive(Clone, Debug)]
pub struct CorrectingFunction {
    index: usize,
    transfer: Vec<Elem>,
    values: Vec<Elem>,
}

impl CorrectingFunction {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn value(&self, g: Elem) -> Elem {
        self.values[g]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn transfer_value(&self, g: Elem) -> Elem {
        self.transfer[g]
    }
}

pub fn correcting_function(
    group: &FiniteGroup,
    h: &Subgroup,
) -> Result<CorrectingFunction, TransferError> {
    let d = check_structure(group, h, false)?;
    let transfer = Transfer::new(group, h).table(group);
    let values = group
        .elements()
        .map(|g| group.mul(group.inv(group.pow(g, d as i64)), transfer[g]))
        .collect();
    Ok(CorrectingFunction {
        index: d,
        transfer,
        values,
    })
}

/// Central involutions, constancy on `G²[G,G]`-cosets, triviality on `G²`
/// and for odd index, and `G^d ⊆ Z(G) ⇔ T(G) ⊆ Z(G)`.
pub fn check_correcting_function(
    group: &FiniteGroup,
    h: &Subgroup,
) -> Result<CheckReport, TransferError> {
    let phi = correcting_function(group, h)?;
    let d = phi.index();
    let e = group.identity();
    let center = group.center();
    let mut report = CheckReport::new("correcting_function");
    report.set_stat("index", d);

    let mut gens = group.power_set(2);
    gens.extend_from_slice(group.commutator_subgroup().members());
    let squares_derived = group.subgroup_generated(&gens);
    let squares = group.power_subgroup(2);
    let mut image: Vec<Elem> = phi.values().to_vec();
    image.sort_unstable();
    image.dedup();
    report.set_stat("image_size", image.len());

    for g in group.elements() {
        let v = phi.value(g);
        report.expect(g, None, center.contains(v), "φ(g) is central");
        report.expect_eq(g, None, group.mul(v, v), e);
        if d % 2 == 1 || squares.contains(g) {
            report.expect_eq(g, None, v, e);
        }
        let power_central = center.contains(group.pow(g, d as i64));
        let transfer_central = center.contains(phi.transfer_value(g));
        report.expect_eq(g, None, power_central, transfer_central);
        for &s in squares_derived.members() {
            report.expect_eq(g, Some(s), phi.value(group.mul(g, s)), v);
        }
    }
    Ok(report)
}

/// `φ(g₁g₂)·(φ(g₁)φ(g₂))⁻¹ = [g₁, g₂]^{d(d-1)/2}`.
pub fn check_phi_cocycle(group: &FiniteGroup, h: &Subgroup) -> Result<CheckReport, TransferError> {
    let phi = correcting_function(group, h)?;
    let d = phi.index() as i64;
    let mut report = CheckReport::new("phi_cocycle");
    report.set_stat("index", d);
    for x in group.elements() {
        for y in group.elements() {
            let prod = group.mul(phi.value(x), phi.value(y));
            let lhs = group.mul(phi.value(group.mul(x, y)), group.inv(prod));
            let rhs = group.pow(group.commutator(x, y), d * (d - 1) / 2);
            report.expect_eq(x, Some(y), lhs, rhs);
        }
    }
    Ok(report)
}

/// For abelian coabelian `H, H'` of equal index, `g ↦ φ_H(g)·φ_{H'}(g)⁻¹` is
/// a homomorphism.
pub fn check_two_isotropic_ratio(
    group: &FiniteGroup,
    h: &Subgroup,
    h2: &Subgroup,
) -> Result<CheckReport, TransferError> {
    if h.order() != h2.order() {
        return Err(TransferError::IndexMismatch(
            group.order() / h.order(),
            group.order() / h2.order(),
        ));
    }
    let p1 = correcting_function(group, h)?;
    let p2 = correcting_function(group, h2)?;
    let f: Vec<Elem> = group
        .elements()
        .map(|g| group.mul(p1.value(g), group.inv(p2.value(g))))
        .collect();
    let mut report = CheckReport::new("two_isotropic_ratio");
    for x in group.elements() {
        for y in group.elements() {
            report.expect_eq(x, Some(y), f[group.mul(x, y)], group.mul(f[x], f[y]));
        }
    }
    Ok(report)
}

/// Explicit transfer values on generators.
///
/// With `G/H = ⊕⟨q_i⟩` (orders `m_i`), every lift `t` of `q_i`, every
/// complement `C` of `⟨q_i⟩` and `α` the product of the elements of `C`,
/// `T(t) = t^d·[t^{m_i}, α̂]`. On `H`, `T(h) = h^d·[h, α̂]` with `α` the product
/// of all elements of `G/H`. Complements are enumerated exhaustively when
/// `|G/H| <= 256`; otherwise only the one from the invariant-factor basis.
pub fn check_generator_formulas(
    group: &FiniteGroup,
    h: &Subgroup,
) -> Result<CheckReport, TransferError> {
    let d = check_structure(group, h, false)? as i64;
    let t = Transfer::new(group, h).table(group);
    let (q, proj) = group.quotient(h)?;
    let lifts = proj.min_preimages();
    let lift = |x: Elem| lifts[x].expect("projection is onto");
    let dec = abelian::decompose(&q).expect("G/H is abelian");
    let mut report = CheckReport::new("generator_formulas");
    report.set_stat("index", d);

    let subgroups = if q.order() <= DEFAULT_SUBGROUP_BOUND {
        Some(q.all_subgroups(DEFAULT_SUBGROUP_BOUND)?)
    } else {
        None
    };
    for (i, (&qi, &mi)) in dec.generators().iter().zip(dec.factors()).enumerate() {
        let cyc = q.subgroup_generated(&[qi]);
        let complements: Vec<Subgroup> = match &subgroups {
            Some(all) => all
                .iter()
                .filter(|c| {
                    c.order() * cyc.order() == q.order() && c.intersection(&cyc).is_trivial()
                })
                .cloned()
                .collect(),
            None => {
                let others: Vec<Elem> = dec
                    .generators()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &g)| g)
                    .collect();
                vec![q.subgroup_generated(&others)]
            }
        };
        report.bump_stat("complements", complements.len() as u64);
        for c in &complements {
            let alpha = lift(
                c.members()
                    .iter()
                    .fold(q.identity(), |acc, &x| q.mul(acc, x)),
            );
            for ti in group.elements().filter(|&g| proj.apply(g) == qi) {
                let rhs = group.mul(
                    group.pow(ti, d),
                    group.commutator(group.pow(ti, mi as i64), alpha),
                );
                report.expect_eq(ti, Some(alpha), t[ti], rhs);
            }
        }
    }

    let alpha = lift(abelian::miller_product(&q).expect("G/H is abelian"));
    for &x in h.members() {
        let rhs = group.mul(group.pow(x, d), group.commutator(x, alpha));
        report.expect_eq(x, Some(alpha), t[x], rhs);
    }
    Ok(report)
}

/// `T_{G/gHg⁻¹}(g') = g·T_{G/H}(g')·g⁻¹` modulo the commutator subgroup of the
/// conjugate. Holds for any subgroup.
pub fn check_conjugation_identity(group: &FiniteGroup, h: &Subgroup) -> CheckReport {
    let base = Transfer::new(group, h).table(group);
    let mut conjugates: HashMap<Subgroup, (Transfer, Vec<Elem>)> = HashMap::new();
    let mut report = CheckReport::new("conjugation_identity");
    for g in group.elements() {
        let members: Vec<Elem> = h.members().iter().map(|&x| group.conjugate(g, x)).collect();
        let conj = group
            .subgroup_from_members(&members)
            .expect("conjugate of a subgroup");
        let (tc, table) = conjugates.entry(conj.clone()).or_insert_with(|| {
            let tc = Transfer::new(group, &conj);
            let table = tc.table(group);
            (tc, table)
        });
        for g2 in group.elements() {
            let rhs = tc.reduce(group.conjugate(g, base[g2]));
            report.expect_eq(g, Some(g2), table[g2], rhs);
        }
    }
    report.bump_stat("conjugates", conjugates.len() as u64);
    report
}

/// For abelian normal `H`, the transfer lands in `H^{G/H} = H ∩ Z(G)`.
pub fn check_image_central(
    group: &FiniteGroup,
    h: &Subgroup,
) -> Result<CheckReport, TransferError> {
    if let Some((member, by)) = group.normality_witness(h) {
        return Err(precondition(
            Condition::SubgroupNotNormal,
            format!("{by}·{member}·{by}⁻¹ ∉ H"),
        ));
    }
    if !group.commutator_of(h, h).is_trivial() {
        return Err(precondition(
            Condition::SubgroupNotAbelian,
            "H is not abelian",
        ));
    }
    let t = Transfer::new(group, h);
    let center = group.center();
    let mut report = CheckReport::new("image_central");
    for g in group.elements() {
        let v = t.value(group, g);
        let fixed = group.elements().all(|x| group.conjugate(x, v) == v);
        report.expect(
            g,
            None,
            h.contains(v) && fixed,
            "T(g) is fixed by conjugation",
        );
        report.expect(g, None, center.contains(v), "T(g) is central");
    }
    Ok(report)
}

/// Furtwängler's theorem and its generalization: for `[G,G] ⊆ K`,
/// `T_{G/K}(g)^{[K : [G,G]]} ∈ [K, K]`.
pub fn check_furtwangler(group: &FiniteGroup, bound: usize) -> Result<CheckReport, TransferError> {
    let derived = group.commutator_subgroup().clone();
    let mut report = CheckReport::new("furtwangler");
    for k in group.coabelian_subgroups(bound)? {
        let e = (k.order() / derived.order()) as i64;
        let t = Transfer::new(group, &k);
        let kk = group.commutator_of(&k, &k);
        for g in group.elements() {
            let v = group.pow(t.value(group, g), e);
            report.expect_eq(g, None, t.reduce(v), t.reduce(kk.members()[0]));
        }
        report.bump_stat("subgroups", 1);
    }
    Ok(report)
}

/// Transfer does not depend on the transversal: compares the canonical
/// transversal against `trials` random ones.
pub fn check_transversal_independence<R: Rng>(
    group: &FiniteGroup,
    h: &Subgroup,
    trials: usize,
    rng: &mut R,
) -> CheckReport {
    let canonical = Transfer::new(group, h);
    let base = canonical.table(group);
    let mut report = CheckReport::new("transversal_independence");
    for _ in 0..trials {
        let shifted: Vec<Elem> = canonical
            .transversal()
            .iter()
            .map(|&t| group.mul(t, h.members()[rng.gen_range(0..h.order())]))
            .collect();
        let other =
            Transfer::with_transversal(group, h, &shifted).expect("shifted transversal is valid");
        for g in group.elements() {
            report.expect_eq(g, None, other.value(group, g), base[g]);
        }
    }
    report.set_stat("trials", trials);
    report
}

/// Identities of two-step nilpotent groups: bimultiplicativity of the
/// commutator and `xⁿyⁿ = (xy)ⁿ[x, y]^{n(n-1)/2}`. Both sides are periodic in
/// `n` with period dividing `2·exp(G)`, so `n` runs up to `min(|G|, 2·exp(G))`.
pub fn check_two_step_identities(group: &FiniteGroup) -> Result<CheckReport, TransferError> {
    if !group.is_two_step_nilpotent() {
        return Err(precondition(
            Condition::NotTwoStepNilpotent,
            "[G, G] is not central",
        ));
    }
    let n_max = group.order().min(2 * group.exponent()) as i64;
    let mut report = CheckReport::new("two_step_identities");
    report.set_stat("n_max", n_max);
    for x in group.elements() {
        for y in group.elements() {
            let c = group.commutator(x, y);
            let xy = group.mul(x, y);
            for z in group.elements() {
                let lhs = group.commutator(group.mul(x, z), y);
                let rhs = group.mul(group.commutator(x, y), group.commutator(z, y));
                report.expect_eq(x, Some(y), lhs, rhs);
            }
            for n in 1..=n_max {
                let lhs = group.mul(group.pow(x, n), group.pow(y, n));
                let rhs = group.mul(group.pow(xy, n), group.pow(c, n * (n - 1) / 2));
                report.expect_eq(x, Some(y), lhs, rhs);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d8() -> FiniteGroup {
        GroupSpec::Dihedral { order: 8 }.build().unwrap()
    }

    #[test]
    fn trivial_cases() {
        let g = d8();
        let whole = g.whole();
        for x in g.elements() {
            // Into the whole group the transfer is the abelianization map.
            let t = Transfer::new(&g, &whole);
            assert_eq!(t.value(&g, x), t.reduce(x));
        }
        let z6 = GroupSpec::Cyclic { n: 6 }.build().unwrap();
        let triv = z6.trivial_subgroup();
        for x in z6.elements() {
            assert_eq!(transfer(&z6, &triv, x), 0);
        }
    }

    #[test]
    fn odd_index_in_heisenberg() {
        let g = GroupSpec::HeisenbergMod { n: 3 }.build().unwrap();
        // H = {(0, b, c)} has index 3.
        let h = g.subgroup_generated(&[1, 3]);
        assert_eq!(h.order(), 9);
        let r = check_odd_index_transfer(&g, &h).unwrap();
        assert!(r.pass(), "{:?}", r.counterexamples());
    }

    #[test]
    fn preconditions_are_named() {
        let g = d8();
        let rot = g.subgroup_generated(&[2]);
        let err = check_odd_index_transfer(&g, &rot).unwrap_err();
        assert!(matches!(
            err,
            TransferError::PreconditionFailed {
                condition: Condition::IndexEven,
                ..
            }
        ));
        let refl = g.subgroup_generated(&[1]);
        let err = correcting_function(&g, &refl).unwrap_err();
        assert!(matches!(
            err,
            TransferError::PreconditionFailed {
                condition: Condition::SubgroupNotNormal,
                ..
            }
        ));
        let s3 = GroupSpec::Dihedral { order: 6 }.build().unwrap();
        let a3 = s3.subgroup_generated(&[2]);
        let err = check_structure(&s3, &a3, false).unwrap_err();
        assert!(matches!(
            err,
            TransferError::PreconditionFailed {
                condition: Condition::NotTwoStepNilpotent,
                ..
            }
        ));
    }

    #[test]
    fn d8_correcting_function() {
        let g = d8();
        let rot = g.subgroup_generated(&[2]);
        for check in [
            check_correcting_function,
            check_phi_cocycle,
            check_generator_formulas,
        ] {
            let r = check(&g, &rot).unwrap();
            assert!(r.pass(), "{}: {:?}", r.check(), r.counterexamples());
        }
        // T(a) = a²·[a, b] = e while a² ≠ e, so φ(a) = a²; T(b) = e = b².
        let phi = correcting_function(&g, &rot).unwrap();
        assert_eq!(phi.value(2), 4);
        assert_eq!(phi.value(1), 0);
    }

    #[test]
    fn bad_transversal() {
        let g = d8();
        let rot = g.subgroup_generated(&[2]);
        assert!(Transfer::with_transversal(&g, &rot, &[0, 2]).is_err());
        assert!(Transfer::with_transversal(&g, &rot, &[0]).is_err());
        assert!(Transfer::with_transversal(&g, &rot, &[6, 3]).is_ok());
    }

    #[test]
    fn independence_and_identities() {
        let g = GroupSpec::Quaternion8 {}.build().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for h in g.all_subgroups(64).unwrap() {
            assert!(check_transversal_independence(&g, &h, 5, &mut rng).pass());
            assert!(check_conjugation_identity(&g, &h).pass());
        }
        assert!(check_furtwangler(&g, 64).unwrap().pass());
        assert!(check_two_step_identities(&g).unwrap().pass());
    }
}
