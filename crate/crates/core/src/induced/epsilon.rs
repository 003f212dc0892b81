use crate::abelian;
use crate::character::{all_extensions, extend_character, CharacterError, LinearCharacter, QmodZ};
use crate::group::Subgroup;
use crate::heisenberg::{all_maximal_isotropics, maximal_isotropic_through, HeisenbergPair};
use crate::report::CheckReport;
use crate::transfer::correcting_function;

use super::{require_reduced, DetCase, DeterminantFormula, InducedError, InducedRep};

/// `ε(g) = Δ(g) + χ(φ_{G/H}(g))` on every element, with the checks it must
/// pass collected in `report`.
#[derive(Clone, Debug)]
pub struct EpsilonTable {
    pub values: Vec<QmodZ>,
    pub report: CheckReport,
}

/// Tabulates `ε` for a kernel-reduced pair and checks that it takes values
/// in `{0, 1/2}`, is constant on `G²Z`-cosets, satisfies
/// `ε(g₁) + ε(g₂) - ε(g₁g₂) = d(d-1)/2·X(g₁, g₂)` (and `= d/2·X` for even `d`),
/// and that `ε(g) + χ(g^d)` is the determinant.
pub fn epsilon_table(
    pair: &HeisenbergPair,
    h: &Subgroup,
    chi_h: &LinearCharacter,
) -> Result<EpsilonTable, InducedError> {
    require_reduced(pair)?;
    let group = pair.group();
    let rep = InducedRep::new(pair, h, chi_h)?;
    let phi = correcting_function(group, h)?;
    let d = pair.dim() as i64;
    let values: Vec<QmodZ> = group
        .elements()
        .map(|g| rep.delta(g) + pair.chi().at(phi.value(g)))
        .collect();

    let mut report = CheckReport::new("epsilon_properties");
    let mut gens = group.power_set(2);
    gens.extend_from_slice(pair.z().members());
    let squares_z = group.subgroup_generated(&gens);
    for g in group.elements() {
        let eps = values[g];
        report.expect(
            g,
            None,
            eps.is_zero() || eps == QmodZ::HALF,
            "ε(g) ∈ {0, 1/2}",
        );
        let closed = eps + pair.chi().at(group.pow(g, d));
        report.expect_eq(g, None, rep.det(g), closed);
        for &s in squares_z.members() {
            report.expect_eq(g, Some(s), values[group.mul(g, s)], eps);
        }
    }
    for x in group.elements() {
        for y in group.elements() {
            let defect = values[x] + values[y] - values[group.mul(x, y)];
            let pairing = pair.pairing().value(x, y);
            report.expect_eq(x, Some(y), defect, pairing.scale(d * (d - 1) / 2));
            if d % 2 == 0 {
                report.expect_eq(x, Some(y), defect, pairing.scale(d / 2));
            }
        }
    }
    Ok(EpsilonTable { values, report })
}

/// Compares `ε` computed through every maximal isotropic subgroup (only the
/// canonical one when `[G:Z]` exceeds `bound`) with the closed-form case split,
/// and records the sign pattern on `G/G²Z`.
pub fn check_epsilon_case(
    pair: &HeisenbergPair,
    bound: usize,
) -> Result<(CheckReport, CheckReport), InducedError> {
    let formula = DeterminantFormula::new(pair)?;
    let group = pair.group();
    let subgroups = if pair.z_index() <= bound {
        all_maximal_isotropics(pair, bound)?
    } else {
        vec![maximal_isotropic_through(pair, group.identity())]
    };
    let mut report = CheckReport::new("epsilon_case_split");
    let mut properties = CheckReport::new("epsilon_properties");
    report.set_stat("case", formula.case().to_string());
    report.set_stat("rk2", formula.rk2());
    report.expect(
        group.identity(),
        None,
        formula.rk2() % 2 == 0,
        "rk₂(G/Z) is even",
    );
    report.expect(
        group.identity(),
        None,
        (formula.case() == DetCase::Odd) == (pair.dim() % 2 == 1),
        "odd case exactly when d is odd",
    );
    for h in &subgroups {
        let chi_h = extend_character(group, pair.chi(), h)?;
        let table = epsilon_table(pair, h, &chi_h)?;
        for g in group.elements() {
            report.expect_eq(g, None, table.values[g], formula.epsilon(g));
        }
        properties.absorb(table.report);
    }
    report.set_stat("subgroups", subgroups.len());

    if formula.case() == DetCase::RankTwo {
        let mut gens = group.power_set(2);
        gens.extend_from_slice(pair.z().members());
        let squares_z = group.subgroup_generated(&gens);
        let reps = group.left_transversal(&squares_z);
        let quotient_is_klein = reps.len() == 4;
        report.expect(
            group.identity(),
            None,
            quotient_is_klein,
            "G/G²Z has order 4",
        );
        let pattern: String = reps
            .iter()
            .map(|&r| {
                if formula.epsilon(r).is_zero() {
                    '+'
                } else {
                    '-'
                }
            })
            .collect();
        report.expect_eq(group.identity(), None, pattern.as_str(), "+---");
        report.set_stat("pattern", pattern);
    }
    Ok((report, properties))
}

/// The determinant does not depend on the maximal isotropic subgroup or on
/// the extension of `χ`; on `H` it equals `χ(h^d) + X(h, α̂)` with `α` the
/// product of all elements of `G/H`.
pub fn isotropic_independence(
    pair: &HeisenbergPair,
    bound: usize,
) -> Result<CheckReport, InducedError> {
    let group = pair.group();
    let subgroups = all_maximal_isotropics(pair, bound)?;
    let d = pair.dim() as i64;
    let mut report = CheckReport::new("isotropic_independence");
    let mut reference: Option<Vec<QmodZ>> = None;
    let mut extensions = 0u64;
    for h in &subgroups {
        let (q, proj) = group.quotient(h)?;
        let alpha_bar = abelian::miller_product(&q).map_err(CharacterError::from)?;
        let alpha = proj.min_preimages()[alpha_bar].expect("onto");
        for chi_h in all_extensions(group, pair.chi(), h)? {
            extensions += 1;
            let rep = InducedRep::new(pair, h, &chi_h)?;
            let dets: Vec<QmodZ> = group.elements().map(|g| rep.det(g)).collect();
            for &x in h.members() {
                let rhs = pair.chi().at(group.pow(x, d)) + pair.pairing().value(x, alpha);
                report.expect_eq(x, Some(alpha), dets[x], rhs);
            }
            match &reference {
                None => reference = Some(dets),
                Some(base) => {
                    for g in group.elements() {
                        report.expect_eq(g, None, dets[g], base[g]);
                    }
                }
            }
        }
    }
    report.set_stat("subgroups", subgroups.len());
    report.set_stat("extensions", extensions);
    Ok(report)
}
