//! The group zoo and the full verification run over one group.

use std::collections::HashSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::character::{all_extensions, CharacterError, QmodZ};
use crate::group::{FiniteGroup, GroupError, GroupSpec, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::heisenberg::{
    all_maximal_isotropics, enumerate_pairs, is_kernel_reduced, maximal_isotropic_through,
    reduce_kernel, symplectic_basis, HeisenbergError, HeisenbergPair,
};
use crate::induced::{
    check_all_twists, check_epsilon_case, check_scalar_on_z, check_trivializing_twist,
    determinant_character, isotropic_independence, DeterminantFormula, InducedError, InducedRep,
};
use crate::io::parse_builtin;
use crate::report::CheckReport;
use crate::transfer::{
    check_conjugation_identity, check_correcting_function, check_furtwangler,
    check_generator_formulas, check_image_central, check_odd_index_transfer, check_phi_cocycle,
    check_transversal_independence, check_two_isotropic_ratio, check_two_step_identities,
    TransferError,
};

/// Builtin names of every group the acceptance run covers.
pub fn zoo_names() -> Vec<String> {
    let mut names: Vec<String> = (1..=64).map(|n| format!("c{n}")).collect();
    names.extend((4..=64).step_by(2).map(|n| format!("d{n}")));
    names.extend((8..=64).step_by(4).map(|n| format!("q{n}")));
    names.extend((2..=5).map(|n| format!("heis{n}")));
    names.extend(
        [
            "heis7",
            "es_p3_exp_p2:3",
            "es_p3_exp_p2:5",
            "es_p3_exp_p2:7",
        ]
        .map(String::from),
    );
    names.extend(["cp:d8,d8", "cp:d8,q8"].map(String::from));
    names.extend(
        [
            "ab:2,2,2",
            "ab:2,4,8",
            "ab:3,9",
            "dp:d8,c2",
            "dp:q8,c2",
            "dp:d8,c3",
            "dp:q8,c4",
            "dp:d8,d8",
            "dp:d8,q8",
            "dp:q8,q8",
            "dp:heis3,c2",
            "dp:heis3,c4",
            "dp:d6,c2",
            "dp:d6,d6",
            "dp:d8,c2,c2",
            "dp:q8,c2,c2,c2",
            "dp:d8,d8,c2",
            "dp:d8,c16",
            "dp:q16,c8",
            "dp:d16,c4",
            "dp:d8,q8,c2",
        ]
        .map(String::from),
    );
    names
}

/// Every zoo group, built.
pub fn zoo() -> Vec<Arc<FiniteGroup>> {
    zoo_names()
        .iter()
        .map(|n| {
            Arc::new(
                parse_builtin(n)
                    .and_then(|s| Ok(s.build()?))
                    .expect("zoo names are valid"),
            )
        })
        .collect()
}

/// Specs of the zoo, for callers that want to build lazily.
pub fn zoo_specs() -> Vec<GroupSpec> {
    zoo_names()
        .iter()
        .map(|n| parse_builtin(n).expect("zoo names are valid"))
        .collect()
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("verification could not run: {0}")]
    Internal(String),
}

impl From<GroupError> for SuiteError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::EnumerationBoundExceeded { .. } => SuiteError::BoundExceeded(e.to_string()),
            other => SuiteError::Internal(other.to_string()),
        }
    }
}

impl From<HeisenbergError> for SuiteError {
    fn from(e: HeisenbergError) -> Self {
        match e {
            HeisenbergError::EnumerationBoundExceeded { .. } => {
                SuiteError::BoundExceeded(e.to_string())
            }
            HeisenbergError::Group(g) => g.into(),
            other => SuiteError::Internal(other.to_string()),
        }
    }
}

impl From<TransferError> for SuiteError {
    fn from(e: TransferError) -> Self {
        match e {
            TransferError::Group(g) => g.into(),
            other => SuiteError::Internal(other.to_string()),
        }
    }
}

impl From<CharacterError> for SuiteError {
    fn from(e: CharacterError) -> Self {
        SuiteError::Internal(e.to_string())
    }
}

impl From<InducedError> for SuiteError {
    fn from(e: InducedError) -> Self {
        match e {
            InducedError::Heisenberg(h) => h.into(),
            InducedError::Transfer(t) => t.into(),
            InducedError::Group(g) => g.into(),
            other => SuiteError::Internal(other.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Seed for the sampled checks (transversal shifts, homomorphism samples).
    pub seed: u64,
    /// Largest group order for which pairs are enumerated.
    pub max_order: usize,
    /// Random transversals tried per subgroup.
    pub transversal_trials: usize,
    /// Largest `[G : Z]` for which every maximal isotropic is visited.
    pub isotropic_bound: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            max_order: 512,
            transversal_trials: 10,
            isotropic_bound: 4096,
        }
    }
}

/// One line per Heisenberg pair in a verification run.
#[derive(Clone, Debug, Serialize)]
pub struct PairSummary {
    pub z: Vec<usize>,
    pub dim: usize,
    pub rk2: usize,
    pub isotropics: usize,
    pub det_trivial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub order: usize,
    pub pass: bool,
    pub pairs: Vec<PairSummary>,
    pub checks: Vec<CheckReport>,
}

/// Collects reports under their check names, in first-seen order.
#[derive(Default)]
struct Checks(Vec<CheckReport>);

impl Checks {
    fn add(&mut self, report: CheckReport) {
        match self.0.iter_mut().find(|r| r.check() == report.check()) {
            Some(existing) => existing.absorb(report),
            None => self.0.push(report),
        }
    }
}

/// Abelian subgroups containing `[G, G]`: the inducing subgroups of the
/// transfer identities.
pub fn abelian_coabelian_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    Ok(group
        .coabelian_subgroups(DEFAULT_SUBGROUP_BOUND)?
        .into_iter()
        .filter(|h| group.commutator_of(h, h).is_trivial())
        .collect())
}

/// Distinct cyclic subgroups, sorted.
fn cyclic_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut subs: Vec<Subgroup> = group
        .elements()
        .map(|g| group.subgroup_generated(&[g]))
        .collect();
    subs.sort();
    subs.dedup();
    subs
}

/// `[G, G]^d = {e}` for odd index `d = [G : H]`.
fn check_derived_power(group: &FiniteGroup, d: usize) -> CheckReport {
    let mut report = CheckReport::new("derived_power");
    for &c in group.commutator_subgroup().members() {
        report.expect_eq(c, None, group.pow(c, d as i64), group.identity());
    }
    report
}

/// Transfer identities that need no Heisenberg pair.
fn transfer_checks(
    group: &FiniteGroup,
    opts: &VerifyOptions,
    checks: &mut Checks,
) -> Result<(), SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    checks.add(check_furtwangler(group, DEFAULT_SUBGROUP_BOUND)?);
    if group.is_two_step_nilpotent() {
        checks.add(check_two_step_identities(group)?);
        let subs = abelian_coabelian_subgroups(group)?;
        for h in &subs {
            let d = group.order() / h.order();
            if d % 2 == 1 {
                checks.add(check_odd_index_transfer(group, h)?);
                checks.add(check_derived_power(group, d));
            }
            checks.add(check_correcting_function(group, h)?);
            checks.add(check_phi_cocycle(group, h)?);
            checks.add(check_generator_formulas(group, h)?);
            checks.add(check_image_central(group, h)?);
            checks.add(check_transversal_independence(
                group,
                h,
                opts.transversal_trials,
                &mut rng,
            ));
        }
        for (i, h) in subs.iter().enumerate() {
            if let Some(h2) = subs[i + 1..].iter().find(|h2| h2.order() == h.order()) {
                checks.add(check_two_isotropic_ratio(group, h, h2)?);
            }
        }
    }
    for h in cyclic_subgroups(group) {
        checks.add(check_conjugation_identity(group, &h));
        checks.add(check_transversal_independence(
            group,
            &h,
            opts.transversal_trials,
            &mut rng,
        ));
    }
    Ok(())
}

/// Direct monomial determinant, Gallagher's formula and the closed form
/// agree for every maximal isotropic `H ⊇ Z`, every extension of `χ` to `H`
/// and every element.
pub fn check_oracle_equivalence(
    pair: &HeisenbergPair,
    bound: usize,
) -> Result<CheckReport, SuiteError> {
    let group = pair.group();
    let formula = DeterminantFormula::via_reduction(pair)?;
    let closed: Vec<_> = group.elements().map(|g| formula.eval(g).0).collect();
    let mut report = CheckReport::new("oracle_equivalence");
    let subgroups = all_maximal_isotropics(pair, bound)?;
    for h in &subgroups {
        for chi_h in all_extensions(group, pair.chi(), h)? {
            let rep = InducedRep::new(pair, h, &chi_h)?;
            for g in group.elements() {
                let direct = rep.det(g);
                report.expect_eq(g, None, direct, rep.det_gallagher(g));
                report.expect_eq(g, None, direct, closed[g]);
            }
            report.bump_stat("representations", 1);
        }
    }
    Ok(report)
}

/// Every element lies in some maximal isotropic subgroup, and the one grown
/// through it is normal, self-perpendicular, of index `d`, and contains `Z`.
pub fn check_isotropic_coverage(pair: &HeisenbergPair) -> CheckReport {
    let group = pair.group();
    let mut report = CheckReport::new("isotropic_coverage");
    let mut seen: HashSet<Subgroup> = HashSet::new();
    for g in group.elements() {
        let h = maximal_isotropic_through(pair, g);
        report.expect(g, None, h.contains(g), "g ∈ H");
        if !seen.insert(h.clone()) {
            continue;
        }
        report.expect(g, None, pair.z().is_subset_of(&h), "Z ⊆ H");
        report.expect(g, None, pair.pairing().is_isotropic(&h), "H is isotropic");
        report.expect(g, None, pair.pairing().perp(group, &h) == h, "H = H^⊥");
        report.expect_eq(g, None, group.order() / h.order(), pair.dim());
        report.expect(g, None, group.is_normal(&h), "H is normal");
    }
    report.set_stat("subgroups", seen.len());
    report
}

/// A symplectic basis has ascending divisibility, normalized pairings,
/// mutually orthogonal pairs, `∏ m_i = d`, and Lagrangian halves.
pub fn check_symplectic_basis(pair: &HeisenbergPair) -> Result<CheckReport, SuiteError> {
    let group = pair.group();
    let basis = symplectic_basis(pair)?;
    let x = |a, b| pair.pairing().value(a, b);
    let e = group.identity();
    let mut report = CheckReport::new("symplectic_basis");
    for w in basis.pairs.windows(2) {
        report.expect(w[0].t, Some(w[1].t), w[1].m % w[0].m == 0, "m_i | m_{i+1}");
    }
    for (i, p) in basis.pairs.iter().enumerate() {
        report.expect_eq(p.t, Some(p.t_prime), x(p.t, p.t_prime), QmodZ::new(1, p.m));
        for q in &basis.pairs[i + 1..] {
            for (a, b) in [
                (p.t, q.t),
                (p.t, q.t_prime),
                (p.t_prime, q.t),
                (p.t_prime, q.t_prime),
            ] {
                report.expect(
                    a,
                    Some(b),
                    x(a, b).is_zero(),
                    "distinct pairs are orthogonal",
                );
            }
        }
    }
    let product: u64 = basis.pairs.iter().map(|p| p.m).product();
    report.expect_eq(e, None, product as usize, pair.dim());
    let (l1, l2) = basis.lagrangians(pair);
    for l in [&l1, &l2] {
        report.expect(
            e,
            None,
            pair.pairing().perp(group, l) == *l,
            "Lagrangian half is maximal isotropic",
        );
    }
    report.expect(
        e,
        None,
        l1.intersection(&l2) == *pair.z(),
        "Lagrangian halves meet in Z",
    );
    Ok(report)
}

/// Kernel reduction preserves the dimension, makes `χ` faithful, and makes
/// `Z` the center of a two-step nilpotent group.
pub fn check_kernel_reduction(pair: &HeisenbergPair) -> Result<CheckReport, SuiteError> {
    let (reduced, proj) = reduce_kernel(pair)?;
    let q = reduced.group();
    let e = q.identity();
    let mut report = CheckReport::new("kernel_reduction");
    report.expect_eq(e, None, reduced.dim(), pair.dim());
    report.expect(e, None, is_kernel_reduced(&reduced), "χ̄ is faithful");
    report.expect(e, None, q.center() == reduced.z(), "Z̄ = Z(Ḡ)");
    report.expect(
        e,
        None,
        q.is_two_step_nilpotent(),
        "Ḡ is two-step nilpotent",
    );
    report.expect(
        e,
        None,
        proj.is_homomorphism(pair.group(), q),
        "projection is a homomorphism",
    );
    Ok(report)
}

fn pair_checks(
    pair: &HeisenbergPair,
    opts: &VerifyOptions,
    checks: &mut Checks,
) -> Result<PairSummary, SuiteError> {
    let bound = opts.isotropic_bound;
    checks.add(check_kernel_reduction(pair)?);
    checks.add(check_oracle_equivalence(pair, bound)?);
    let (reduced, _) = reduce_kernel(pair)?;
    if !is_kernel_reduced(pair) {
        checks.add(check_oracle_equivalence(&reduced, bound)?);
    }
    let rep = InducedRep::canonical(pair)?;
    checks.add(rep.check_homomorphism(opts.seed));
    checks.add(check_scalar_on_z(&rep));
    let (case, properties) = check_epsilon_case(&reduced, bound)?;
    let rk2 = case.stats()["rk2"].as_u64().unwrap_or_default() as usize;
    checks.add(case);
    checks.add(properties);
    checks.add(isotropic_independence(pair, bound)?);
    checks.add(check_isotropic_coverage(pair));
    checks.add(check_symplectic_basis(pair)?);
    checks.add(check_all_twists(pair)?);
    checks.add(check_trivializing_twist(pair)?);
    Ok(PairSummary {
        z: pair.z().members().to_vec(),
        dim: pair.dim(),
        rk2,
        isotropics: all_maximal_isotropics(pair, bound)?.len(),
        det_trivial: determinant_character(pair)?.iter().all(|v| v.is_zero()),
    })
}

/// Runs every applicable check on `group`.
pub fn verify_group(
    group: &Arc<FiniteGroup>,
    opts: &VerifyOptions,
) -> Result<VerifyReport, SuiteError> {
    let mut checks = Checks::default();
    transfer_checks(group, opts, &mut checks)?;
    let mut pairs = Vec::new();
    for pair in enumerate_pairs(group, opts.max_order)? {
        pairs.push(pair_checks(&pair, opts, &mut checks)?);
    }
    let checks = checks.0;
    Ok(VerifyReport {
        group: group.label().to_string(),
        order: group.order(),
        pass: checks.iter().all(CheckReport::pass),
        pairs,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zoo_builds() {
        let groups = zoo();
        assert_eq!(groups.len(), zoo_names().len());
        assert!(groups.iter().all(|g| g.order() <= 512));
    }

    #[test]
    fn verify_small_groups() {
        for name in ["d8", "q8", "heis3", "c6", "d6"] {
            let g = Arc::new(crate::io::builtin_group(name).unwrap());
            let report = verify_group(&g, &VerifyOptions::default()).unwrap();
            let failing: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.pass())
                .map(|c| c.summary())
                .collect();
            assert!(report.pass, "{name}: {failing:?}");
        }
    }

    #[test]
    fn bound_is_reported() {
        let g = Arc::new(crate::io::builtin_group("d8").unwrap());
        let opts = VerifyOptions {
            max_order: 4,
            ..VerifyOptions::default()
        };
        assert!(matches!(
            verify_group(&g, &opts),
            Err(SuiteError::BoundExceeded(_))
        ));
    }
}
