//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! if any fails or overruns its time budget.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hrep_core::character::all_extensions;
use hrep_core::heisenberg::{all_maximal_isotropics, enumerate_pairs, reduce_kernel};
use hrep_core::induced::{
    check_all_twists, check_epsilon_case, p3_classification, DetCase, InducedRep,
};
use hrep_core::io::builtin_group;
use hrep_core::suite::{
    abelian_coabelian_subgroups, check_isotropic_coverage, check_oracle_equivalence, zoo,
};
use hrep_core::transfer::{
    check_correcting_function, check_furtwangler, check_generator_formulas,
    check_odd_index_transfer, check_transversal_independence,
};
use hrep_core::{CheckReport, FiniteGroup, HeisenbergPair, QmodZ};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

const BOUND: usize = 4096;

fn require(report: &CheckReport) -> Result<(), String> {
    if report.pass() {
        Ok(())
    } else {
        Err(report.summary())
    }
}

fn all_pairs(groups: &[Arc<FiniteGroup>]) -> Vec<HeisenbergPair> {
    groups
        .iter()
        .flat_map(|g| enumerate_pairs(g, 512).expect("zoo groups are within bounds"))
        .collect()
}

fn d8_example() -> Outcome {
    let g = Arc::new(builtin_group("d8").map_err(|e| e.to_string())?);
    let pairs: Vec<_> = enumerate_pairs(&g, 512)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|p| p.dim() == 2)
        .collect();
    if pairs.len() != 1 {
        return Err(format!("{} pairs of dimension 2", pairs.len()));
    }
    let pair = &pairs[0];
    // Elements a^i b^j have id 2i + j.
    let expected: Vec<Vec<usize>> = vec![vec![0, 1, 4, 5], vec![0, 2, 4, 6], vec![0, 3, 4, 7]];
    let found: Vec<Vec<usize>> = all_maximal_isotropics(pair, BOUND)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|h| h.members().to_vec())
        .collect();
    let mut sorted = found.clone();
    sorted.sort();
    if sorted != expected {
        return Err(format!("maximal isotropics {found:?}"));
    }
    let mut checked = 0;
    for members in &found {
        let h = g
            .subgroup_from_members(members)
            .map_err(|e| e.to_string())?;
        for chi_h in all_extensions(&g, pair.chi(), &h).map_err(|e| e.to_string())? {
            let rep = InducedRep::new(pair, &h, &chi_h).map_err(|e| e.to_string())?;
            for x in g.elements() {
                let base = pair.chi().at(g.pow(x, 2));
                let want = if pair.z().contains(x) {
                    base
                } else {
                    base + QmodZ::HALF
                };
                if rep.det(x) != want {
                    return Err(format!(
                        "det({x}) = {} via H = {members:?}, expected {want}",
                        rep.det(x)
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "3 maximal isotropics, {checked} determinant values"
    ))
}

fn oracle_equivalence(groups: &[Arc<FiniteGroup>]) -> Outcome {
    let mut total = CheckReport::new("oracle_equivalence");
    let pairs = all_pairs(groups);
    for pair in &pairs {
        total.absorb(check_oracle_equivalence(pair, BOUND).map_err(|e| e.to_string())?);
        let (reduced, _) = reduce_kernel(pair).map_err(|e| e.to_string())?;
        total.absorb(check_oracle_equivalence(&reduced, BOUND).map_err(|e| e.to_string())?);
    }
    require(&total)?;
    Ok(format!(
        "{} groups, {} pairs, {} comparisons",
        groups.len(),
        pairs.len(),
        total.cases()
    ))
}

fn odd_index_transfer(groups: &[Arc<FiniteGroup>]) -> Outcome {
    let mut instances = 0;
    let mut total = CheckReport::new("odd_index_transfer");
    for g in groups.iter().filter(|g| g.is_two_step_nilpotent()) {
        for h in abelian_coabelian_subgroups(g).map_err(|e| e.to_string())? {
            let d = g.order() / h.order();
            if d % 2 == 0 {
                continue;
            }
            instances += 1;
            total.absorb(check_odd_index_transfer(g, &h).map_err(|e| e.to_string())?);
            for &c in g.commutator_subgroup().members() {
                total.expect_eq(c, None, g.pow(c, d as i64), g.identity());
            }
        }
    }
    require(&total)?;
    Ok(format!("{instances} instances, {} cases", total.cases()))
}

fn generator_formulas(groups: &[Arc<FiniteGroup>]) -> Outcome {
    let mut instances = 0;
    let mut total = CheckReport::new("generator_formulas");
    for g in groups.iter().filter(|g| g.is_two_step_nilpotent()) {
        for h in abelian_coabelian_subgroups(g).map_err(|e| e.to_string())? {
            instances += 1;
            total.absorb(check_generator_formulas(g, &h).map_err(|e| e.to_string())?);
            total.absorb(check_correcting_function(g, &h).map_err(|e| e.to_string())?);
        }
    }
    require(&total)?;
    Ok(format!("{instances} instances, {} cases", total.cases()))
}

fn case_split(groups: &[Arc<FiniteGroup>]) -> Outcome {
    let mut total = CheckReport::new("epsilon_case_split");
    let (mut vanishing, mut rank_two) = (0, 0);
    let mut rank_two_groups = std::collections::BTreeSet::new();
    for pair in all_pairs(groups) {
        let (reduced, _) = reduce_kernel(&pair).map_err(|e| e.to_string())?;
        let (case, properties) = check_epsilon_case(&reduced, BOUND).map_err(|e| e.to_string())?;
        let formula = hrep_core::DeterminantFormula::new(&reduced).map_err(|e| e.to_string())?;
        match formula.case() {
            DetCase::RankTwo => {
                rank_two += 1;
                rank_two_groups.insert(pair.group().label().to_string());
            }
            DetCase::RankAtLeastFour => vanishing += 1,
            DetCase::Odd => {}
        }
        if formula.rk2() != 2 {
            for g in reduced.group().elements() {
                total.expect(g, None, formula.epsilon(g).is_zero(), "ε vanishes");
            }
        }
        total.absorb(case);
        total.absorb(properties);
    }
    for needed in ["D8", "Q8", "Heis4"] {
        if !rank_two_groups.contains(needed) {
            return Err(format!("no rank-two pair seen on {needed}"));
        }
    }
    require(&total)?;
    Ok(format!(
        "{vanishing} pairs with rk2 >= 4, {rank_two} with rk2 = 2 showing +---"
    ))
}

fn p3_dichotomy() -> Outcome {
    for p in [3, 5, 7] {
        let report = p3_classification(p).map_err(|e| e.to_string())?;
        if !report.pass {
            return Err(format!("p = {p}: {report:?}"));
        }
    }
    Ok("p = 3, 5, 7".into())
}

fn furtwangler(groups: &[Arc<FiniteGroup>]) -> Outcome {
    let mut total = CheckReport::new("furtwangler");
    let small: Vec<_> = groups.iter().filter(|g| g.order() <= 64).collect();
    for g in &small {
        total.absorb(check_furtwangler(g, 256).map_err(|e| e.to_string())?);
    }
    require(&total)?;
    Ok(format!("{} groups, {} cases", small.len(), total.cases()))
}

fn property_suites(groups: &[Arc<FiniteGroup>]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut total = CheckReport::new("properties");
    for g in groups {
        let mut subs = if g.is_two_step_nilpotent() {
            abelian_coabelian_subgroups(g).map_err(|e| e.to_string())?
        } else {
            Vec::new()
        };
        subs.extend(g.elements().map(|x| g.subgroup_generated(&[x])));
        subs.sort();
        subs.dedup();
        for h in &subs {
            total.absorb(check_transversal_independence(g, h, 10, &mut rng));
        }
    }
    for pair in all_pairs(groups) {
        let (reduced, _) = reduce_kernel(&pair).map_err(|e| e.to_string())?;
        let (_, properties) = check_epsilon_case(&reduced, BOUND).map_err(|e| e.to_string())?;
        total.absorb(properties);
        total.absorb(check_all_twists(&pair).map_err(|e| e.to_string())?);
        total.absorb(check_isotropic_coverage(&pair));
    }
    require(&total)?;
    Ok(format!("{} cases, 0 counterexamples", total.cases()))
}

fn main() -> ExitCode {
    let groups = zoo();
    let criteria: Vec<Criterion> = vec![
        (
            "D8 worked example",
            Duration::from_secs(1),
            Box::new(d8_example),
        ),
        (
            "oracle equivalence over the zoo",
            Duration::from_secs(60),
            Box::new(|| oracle_equivalence(&groups)),
        ),
        (
            "odd-index transfer is g^d",
            Duration::from_secs(10),
            Box::new(|| odd_index_transfer(&groups)),
        ),
        (
            "transfer on generators",
            Duration::from_secs(10),
            Box::new(|| generator_formulas(&groups)),
        ),
        (
            "epsilon case split",
            Duration::from_secs(60),
            Box::new(|| case_split(&groups)),
        ),
        (
            "order p^3 dichotomy",
            Duration::from_secs(30),
            Box::new(p3_dichotomy),
        ),
        (
            "Furtwangler",
            Duration::from_secs(60),
            Box::new(|| furtwangler(&groups)),
        ),
        (
            "property suites",
            Duration::from_secs(120),
            Box::new(|| property_suites(&groups)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS  {name} ({detail}) [{elapsed:.2?}]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
