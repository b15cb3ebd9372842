use std::fmt::Write as _;

use fano_instanton::instanton::{
    check_natural_cohomology, classify_pullback, in_movable_cone, is_earnest_criterion, is_minimal,
    minimal_charge_bound, moduli_component_report, ulrich_classification,
};
use fano_instanton::monad::verify_instanton_conditions;
use fano_instanton::stability::{hoppe_scan, mu_stability_verdict, MuStabilityVerdict, StabilityMode};
use fano_instanton::{
    cohomology_table, euler_characteristic, monad_chern, synthesize_monad_f, synthesize_monad_flag,
    validate_invariants, ChernData, CurveClass, Error, Geometry, GeometryDescriptor, InstantonInvariants, MonadTerms,
    Rational,
};
use serde::{Deserialize, Serialize};

/// Which threefold a command talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
pub enum GeometryArg {
    #[default]
    #[value(name = "f")]
    #[serde(rename = "BlowupP3", alias = "f")]
    Blowup,
    #[value(name = "flag")]
    #[serde(rename = "FlagThreefold", alias = "flag")]
    Flag,
}

impl GeometryArg {
    pub fn geometry(self) -> Geometry {
        match self {
            GeometryArg::Blowup => Geometry::BlowupP3,
            GeometryArg::Flag => Geometry::FlagThreefold,
        }
    }
}

/// The flat report object. Keys are documented in the README.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub geometry: GeometryArg,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub gamma_assumed: bool,
    pub valid: bool,
    pub table_q0: Option<[u64; 6]>,
    pub table_q1: Option<[u64; 6]>,
    pub table_q2: Option<[u64; 6]>,
    pub table_q3: Option<[u64; 6]>,
    pub monad_c_minus1: String,
    pub monad_c0: String,
    pub monad_c1: String,
    pub monad_ranks: [u64; 3],
    pub chern_c1: String,
    pub chern_c2: String,
    pub chern_check: bool,
    pub chi: i64,
    pub instanton_conditions: Option<bool>,
    pub condition_failures: Vec<String>,
    pub natural_cohomology: Option<bool>,
    pub stability: Option<String>,
    pub stability_certified: bool,
    pub mu_stability: Option<String>,
    pub earnest: Option<bool>,
    pub minimal: bool,
    pub movable: Option<bool>,
    pub moduli_dimension: Option<i64>,
    pub pullback: Option<String>,
    pub ulrich: Option<String>,
}

/// Why a report could not be produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainError {
    pub message: String,
    pub violations: Vec<String>,
}

impl From<Error> for DomainError {
    fn from(e: Error) -> Self {
        let violations = match &e {
            Error::Inadmissible(v) => v.clone(),
            _ => Vec::new(),
        };
        DomainError { message: e.to_string(), violations }
    }
}

impl std::fmt::Display for DomainError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportRequest {
    pub geometry: GeometryArg,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: Option<i64>,
    pub search_box: u32,
}

fn monad_fields(terms: &MonadTerms) -> (String, String, String, [u64; 3]) {
    (
        terms.render_degree(-1),
        terms.render_degree(0),
        terms.render_degree(1),
        [terms.rank(-1), terms.rank(0), terms.rank(1)],
    )
}

pub fn build_report(req: &ReportRequest) -> Result<Report, DomainError> {
    match req.geometry {
        GeometryArg::Blowup => blowup_report(req),
        GeometryArg::Flag => flag_report(req),
    }
}

fn blowup_report(req: &ReportRequest) -> Result<Report, DomainError> {
    let inv = InstantonInvariants::new(req.alpha, req.beta, req.gamma.unwrap_or(0));
    let violations = validate_invariants(&inv);
    if !violations.is_empty() {
        return Err(Error::Inadmissible(violations).into());
    }
    let table = cohomology_table(&inv)?;
    let terms = synthesize_monad_f(&inv)?;
    let chern = monad_chern(&terms)?;
    let (c_minus1, c0, c1, ranks) = monad_fields(&terms);
    let conditions = verify_instanton_conditions(&terms, req.search_box)?;
    let verdict = hoppe_scan(&terms, req.search_box, StabilityMode::Stable)?;
    let minimal = is_minimal(&inv);
    let ulrich = if minimal {
        match ulrich_classification(&inv) {
            Ok(u) => Some(u.descriptor.to_string()),
            Err(Error::MinimalNotRealized { .. }) => Some("not realized".into()),
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let moduli_dimension = if inv.gamma == 0 { Some(moduli_component_report(&inv)?.dimension) } else { None };
    Ok(Report {
        geometry: req.geometry,
        alpha: inv.alpha,
        beta: inv.beta,
        gamma: inv.gamma,
        gamma_assumed: req.gamma.is_none(),
        valid: true,
        table_q0: Some(table.row(0)),
        table_q1: Some(table.row(1)),
        table_q2: Some(table.row(2)),
        table_q3: Some(table.row(3)),
        monad_c_minus1: c_minus1,
        monad_c0: c0,
        monad_c1: c1,
        monad_ranks: ranks,
        chern_c1: chern.c1.to_string(),
        chern_c2: chern.c2.to_string(),
        chern_check: chern == inv.chern(),
        chi: euler_characteristic(&inv.chern())?,
        instanton_conditions: Some(conditions.all_pass),
        condition_failures: conditions.failures().map(|c| c.name.clone()).collect(),
        natural_cohomology: Some(check_natural_cohomology(&inv)?.natural),
        stability: Some(verdict.to_string()),
        stability_certified: verdict.is_stable(),
        mu_stability: Some(match mu_stability_verdict(inv.alpha, inv.beta) {
            MuStabilityVerdict::Stable => "stable".into(),
            MuStabilityVerdict::Unknown { open_question } => format!("unknown: {open_question}"),
        }),
        earnest: Some(is_earnest_criterion(&inv)?),
        minimal,
        movable: Some(in_movable_cone(&inv.charge())?),
        moduli_dimension,
        pullback: classify_pullback(&inv)?.map(|p| p.to_string()),
        ulrich,
    })
}

/// On the flag threefold `alpha`, `beta` are the charge coordinates `k₁`, `k₂`
/// of `k₁h₁² + k₂h₂²`.
fn flag_report(req: &ReportRequest) -> Result<Report, DomainError> {
    let (k1, k2) = (req.alpha, req.beta);
    let mut violations = Vec::new();
    if k1 < 0 {
        violations.push("k₁≥0".to_string());
    }
    if k2 < 0 {
        violations.push("k₂≥0".to_string());
    }
    if req.gamma.is_some_and(|g| g != 0) {
        violations.push("γ=0".to_string());
    }
    let bound = minimal_charge_bound(&GeometryDescriptor::flag_threefold());
    let pairing = Rational::from_integer(k1 + k2);
    if pairing < bound {
        violations.push(format!("k₁+k₂≥{bound}"));
    }
    if !violations.is_empty() {
        return Err(Error::Inadmissible(violations).into());
    }
    let terms = synthesize_monad_flag(k1 as u64, k2 as u64);
    let chern = monad_chern(&terms)?;
    let expected = ChernData::rank_two(CurveClass::flag(k1, k2));
    let (c_minus1, c0, c1, ranks) = monad_fields(&terms);
    Ok(Report {
        geometry: req.geometry,
        alpha: k1,
        beta: k2,
        gamma: 0,
        gamma_assumed: req.gamma.is_none(),
        valid: true,
        table_q0: None,
        table_q1: None,
        table_q2: None,
        table_q3: None,
        monad_c_minus1: c_minus1,
        monad_c0: c0,
        monad_c1: c1,
        monad_ranks: ranks,
        chern_c1: chern.c1.to_string(),
        chern_c2: chern.c2.to_string(),
        chern_check: chern == expected,
        chi: euler_characteristic(&expected)?,
        instanton_conditions: None,
        condition_failures: Vec::new(),
        natural_cohomology: None,
        stability: None,
        stability_certified: false,
        mu_stability: None,
        earnest: None,
        minimal: pairing == bound,
        movable: None,
        moduli_dimension: None,
        pullback: None,
        ulrich: None,
    })
}

fn row(cells: &[u64; 6]) -> String {
    cells.iter().map(|c| format!("{c:>4}")).collect()
}

fn opt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let geom = match r.geometry {
        GeometryArg::Blowup => "F = Bl_P P³",
        GeometryArg::Flag => "flag threefold",
    };
    let _ = writeln!(
        s,
        "instanton on {geom}: α={} β={} γ={}{}",
        r.alpha,
        r.beta,
        r.gamma,
        if r.gamma_assumed { " (assumed)" } else { "" }
    );
    let _ = writeln!(s, "valid: {}", if r.valid { "yes" } else { "no" });
    if let (Some(q0), Some(q1), Some(q2), Some(q3)) = (&r.table_q0, &r.table_q1, &r.table_q2, &r.table_q3) {
        let _ = writeln!(s, "table h^q(E⊗F_p), p = 0..5:");
        for (q, cells) in [q3, q2, q1, q0].into_iter().enumerate() {
            let _ = writeln!(s, "  q={} {}", 3 - q, row(cells));
        }
    }
    let _ = writeln!(s, "monad: C⁻¹ = {}", r.monad_c_minus1);
    let _ = writeln!(s, "       C⁰  = {}", r.monad_c0);
    let _ = writeln!(s, "       C¹  = {}", r.monad_c1);
    let _ = writeln!(s, "ranks: {} {} {}", r.monad_ranks[0], r.monad_ranks[1], r.monad_ranks[2]);
    let _ = writeln!(
        s,
        "chern: c1={} c2={} ({})",
        r.chern_c1,
        r.chern_c2,
        if r.chern_check { "matches" } else { "MISMATCH" }
    );
    let _ = writeln!(s, "chi(E): {}", r.chi);
    if let Some(ok) = r.instanton_conditions {
        let _ = write!(s, "instanton conditions: {}", if ok { "pass" } else { "fail" });
        if !r.condition_failures.is_empty() {
            let _ = write!(s, " ({})", r.condition_failures.join(", "));
        }
        s.push('\n');
    }
    let _ = writeln!(s, "natural cohomology: {}", opt_bool(r.natural_cohomology));
    if let Some(v) = &r.stability {
        let _ = writeln!(s, "hoppe scan: {v}");
    }
    if let Some(v) = &r.mu_stability {
        let _ = writeln!(s, "μ-stability: {v}");
    }
    let _ = writeln!(
        s,
        "earnest: {}  minimal: {}  movable: {}",
        opt_bool(r.earnest),
        if r.minimal { "yes" } else { "no" },
        opt_bool(r.movable)
    );
    if let Some(d) = r.moduli_dimension {
        let _ = writeln!(s, "moduli dimension: {d}");
    }
    if let Some(p) = &r.pullback {
        let _ = writeln!(s, "pullback: {p}");
    }
    if let Some(u) = &r.ulrich {
        let _ = writeln!(s, "ulrich: {u}");
    }
    s
}
