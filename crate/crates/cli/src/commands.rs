//! One function per subcommand. Each returns its report as a JSON value (keys
//! sorted) together with a TSV rendering whose rows are sorted by id.

use std::fmt;
use std::sync::Arc;

use hrep_core::abelian::decompose;
use hrep_core::heisenberg::{all_maximal_isotropics, enumerate_pairs, two_rank_mod_z};
use hrep_core::induced::{det_report, determinant_character, p3_classification};
use hrep_core::suite::{verify_group, zoo, SuiteError, VerifyOptions};
use hrep_core::transfer::correcting_function;
use hrep_core::{FiniteGroup, InducedError, Transfer};
use serde_json::{json, Value};

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Bound(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Input(_) => 2,
            Failure::Bound(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Bound(m) => write!(f, "bound exceeded: {m}"),
            Failure::Internal(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl<E: Into<SuiteError>> From<E> for Failure {
    fn from(e: E) -> Self {
        match e.into() {
            SuiteError::BoundExceeded(m) => Failure::Bound(m),
            SuiteError::Internal(m) => Failure::Internal(m),
        }
    }
}

pub struct Output {
    pub json: Value,
    pub tsv: String,
    /// False when a mathematical identity failed; maps to exit code 1.
    pub pass: bool,
    pub diagnostics: Vec<String>,
}

impl Output {
    fn passing(json: Value, tsv: String) -> Self {
        Output {
            json,
            tsv,
            pass: true,
            diagnostics: Vec::new(),
        }
    }
}

fn tsv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn ids(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn group_info(g: &FiniteGroup) -> Result<Output, Failure> {
    let center = g.center();
    let derived = g.commutator_subgroup();
    let squares = g.power_subgroup(2);
    let (ab, proj) = g.quotient(derived)?;
    let dec = decompose(&ab).map_err(|e| Failure::Internal(e.to_string()))?;
    let lift = proj.min_preimages();
    let generators: Vec<usize> = dec
        .generators()
        .iter()
        .map(|&x| lift[x].expect("projection is onto"))
        .collect();
    let json = json!({
        "label": g.label(),
        "order": g.order(),
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "center": center.members(),
        "derived_subgroup": derived.members(),
        "lower_central_series": g.lower_central_series().iter().map(|s| s.order()).collect::<Vec<_>>(),
        "nilpotency_class": g.nilpotency_class(),
        "squares": squares.members(),
        "abelianization": {"factors": dec.factors(), "generators": generators},
    });
    let rows = g.elements().map(|x| {
        vec![
            x.to_string(),
            g.element_order(x).to_string(),
            g.inv(x).to_string(),
            center.contains(x).to_string(),
            derived.contains(x).to_string(),
            squares.contains(x).to_string(),
        ]
    });
    Ok(Output::passing(
        json,
        tsv(
            &["id", "order", "inverse", "central", "derived", "square"],
            rows,
        ),
    ))
}

pub fn heisenberg(g: Arc<FiniteGroup>, bound: usize) -> Result<Output, Failure> {
    let mut pairs = Vec::new();
    let mut rows = Vec::new();
    for (i, pair) in enumerate_pairs(&g, bound)?.iter().enumerate() {
        let rk2 = two_rank_mod_z(pair)?;
        let isotropics = all_maximal_isotropics(pair, bound.max(4096))?.len();
        let z = pair.z().members();
        let chi: Vec<String> = z.iter().map(|&x| pair.chi().at(x).to_string()).collect();
        rows.push(vec![
            i.to_string(),
            z.len().to_string(),
            pair.dim().to_string(),
            rk2.to_string(),
            isotropics.to_string(),
            ids(z),
            chi.join(","),
        ]);
        pairs.push(
            json!({"Z": z, "chi": chi, "dim": pair.dim(), "rk2": rk2, "isotropics": isotropics}),
        );
    }
    let json = json!({"group": g.label(), "order": g.order(), "pairs": pairs});
    Ok(Output::passing(
        json,
        tsv(
            &["pair", "z_order", "dim", "rk2", "isotropics", "Z", "chi"],
            rows,
        ),
    ))
}

pub fn transfer(g: &FiniteGroup, gens: &[usize]) -> Result<Output, Failure> {
    if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
        return Err(Failure::Input(format!(
            "element {bad} is not in a group of order {}",
            g.order()
        )));
    }
    let h = g.subgroup_generated(gens);
    let t = Transfer::new(g, &h);
    let d = t.index();
    // Only defined when H is abelian and contains [G, G] in a two-step group.
    let phi = correcting_function(g, &h).ok();
    let values = t.table(g);
    let rows = g.elements().map(|x| {
        let mut row = vec![
            x.to_string(),
            values[x].to_string(),
            g.pow(x, d as i64).to_string(),
        ];
        row.push(
            phi.as_ref()
                .map_or_else(String::new, |f| f.value(x).to_string()),
        );
        row
    });
    let json = json!({
        "group": g.label(),
        "subgroup": h.members(),
        "index": d,
        "transversal": t.transversal(),
        "transfer": values,
        "correcting_function": phi.as_ref().map(|f| f.values()),
    });
    Ok(Output::passing(
        json,
        tsv(&["g", "transfer", "power", "phi"], rows),
    ))
}

pub fn det(g: Arc<FiniteGroup>, bound: usize) -> Result<Output, Failure> {
    let mut pairs = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    let mut diagnostics = Vec::new();
    for (i, pair) in enumerate_pairs(&g, bound)?.iter().enumerate() {
        let report = det_report(pair)?;
        let on_g = determinant_character(pair)?;
        if !report.all_agree {
            pass = false;
            diagnostics.push(format!("pair {i}: determinant computations disagree"));
        }
        for r in &report.rows {
            rows.push(vec![
                i.to_string(),
                r.g.to_string(),
                r.direct.to_string(),
                r.gallagher.to_string(),
                r.formula.to_string(),
                r.epsilon.to_string(),
            ]);
        }
        let mut value =
            serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
        value["det_on_group"] = json!(on_g);
        value["det_trivial"] = json!(on_g.iter().all(|v| v.is_zero()));
        pairs.push(value);
    }
    let json = json!({"group": g.label(), "order": g.order(), "pairs": pairs});
    let tsv = tsv(
        &["pair", "g", "direct", "gallagher", "formula", "epsilon"],
        rows,
    );
    Ok(Output {
        json,
        tsv,
        pass,
        diagnostics,
    })
}

fn options(seed: u64, max_order: usize) -> VerifyOptions {
    VerifyOptions {
        seed,
        max_order,
        ..VerifyOptions::default()
    }
}

pub fn verify(g: Arc<FiniteGroup>, seed: u64, max_order: usize) -> Result<Output, Failure> {
    let report = verify_group(&g, &options(seed, max_order))?;
    let diagnostics = report
        .checks
        .iter()
        .filter(|c| !c.pass())
        .map(|c| c.summary())
        .collect();
    let rows = report.checks.iter().map(|c| {
        vec![
            c.check().to_string(),
            c.pass().to_string(),
            c.cases().to_string(),
            c.failures().to_string(),
        ]
    });
    let tsv = tsv(&["check", "pass", "cases", "failures"], rows);
    let json = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Output {
        json,
        tsv,
        pass: report.pass,
        diagnostics,
    })
}

pub fn p3(p: usize) -> Result<Output, Failure> {
    let report = p3_classification(p).map_err(|e| match e {
        InducedError::InvalidPrime(_) => Failure::Input(e.to_string()),
        other => other.into(),
    })?;
    let rows = report.groups.iter().map(|r| {
        let trivial: Vec<String> = r.det_trivial.iter().map(bool::to_string).collect();
        vec![
            r.group.clone(),
            r.order.to_string(),
            r.exponent.to_string(),
            r.power_subgroup_order.to_string(),
            r.pairs_of_dim_p.to_string(),
            trivial.join(","),
        ]
    });
    let tsv = tsv(
        &[
            "group",
            "order",
            "exponent",
            "power_subgroup_order",
            "pairs_of_dim_p",
            "det_trivial",
        ],
        rows,
    );
    let json = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Output {
        json,
        tsv,
        pass: report.pass,
        diagnostics: Vec::new(),
    })
}

pub fn suite(seed: u64, max_order: usize) -> Result<Output, Failure> {
    let opts = options(seed, max_order);
    let mut groups = Vec::new();
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for g in zoo().into_iter().filter(|g| g.order() <= max_order) {
        let report = verify_group(&g, &opts)?;
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass())
            .map(|c| c.check())
            .collect();
        let cases: u64 = report.checks.iter().map(|c| c.cases()).sum();
        for c in report.checks.iter().filter(|c| !c.pass()) {
            diagnostics.push(format!("{}: {}", report.group, c.summary()));
        }
        rows.push(vec![
            report.group.clone(),
            report.order.to_string(),
            report.pass.to_string(),
            cases.to_string(),
        ]);
        groups.push(json!({
            "group": report.group,
            "order": report.order,
            "pass": report.pass,
            "pairs": report.pairs.len(),
            "cases": cases,
            "failed_checks": failed,
        }));
    }
    let pass = groups.iter().all(|g| g["pass"] == json!(true));
    let json = json!({"groups": groups, "pass": pass});
    Ok(Output {
        json,
        tsv: tsv(&["group", "order", "pass", "cases"], rows),
        pass,
        diagnostics,
    })
}
