//! Numerical invariants of instanton bundles on the blow-up and what can be
//! read off them without constructing a bundle.

use std::fmt;

use num_rational::Ratio;

use crate::chern::{euler_characteristic, ChernData};
use crate::chow::{CurveClass, Geometry, GeometryDescriptor};
use crate::cohomology::SheafTerm;
use crate::error::{Error, Result};

/// `c₂(E) = αξ² + βf²` together with `γ = h¹(E(−2ξ))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstantonInvariants {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl InstantonInvariants {
    pub fn new(alpha: i64, beta: i64, gamma: i64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// `γ = 0`, the earnest case.
    pub fn earnest(alpha: i64, beta: i64) -> Self {
        Self::new(alpha, beta, 0)
    }

    pub fn charge(&self) -> CurveClass {
        CurveClass::blowup(self.alpha, self.beta)
    }

    /// `c₂(E)·h = 2α + β`.
    pub fn charge_pairing(&self) -> i64 {
        2 * self.alpha + self.beta
    }

    pub fn chern(&self) -> ChernData {
        ChernData::rank_two(self.charge())
    }

    pub fn is_admissible(&self) -> bool {
        validate_invariants(self).is_empty()
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        let v = validate_invariants(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Inadmissible(v))
        }
    }
}

impl fmt::Display for InstantonInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(α={}, β={}, γ={})", self.alpha, self.beta, self.gamma)
    }
}

/// Names of the violated inequalities, empty when the triple is admissible.
pub fn validate_invariants(inv: &InstantonInvariants) -> Vec<String> {
    let InstantonInvariants { alpha: a, beta: b, gamma: g } = *inv;
    let checks: [(&str, bool); 6] = [
        ("α≥0", a >= 0),
        ("α+β≥0", a + b >= 0),
        ("β+γ≥0", b + g >= 0),
        ("2α+β≥2", 2 * a + b >= 2),
        ("γ≥0", g >= 0),
        ("γ≤α", g <= a),
    ];
    checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.to_string()).collect()
}

/// `cα·α + cβ·β + cγ·γ + k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LinearForm {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub constant: i64,
}

impl LinearForm {
    const fn new(alpha: i64, beta: i64, gamma: i64, constant: i64) -> Self {
        Self { alpha, beta, gamma, constant }
    }

    pub fn eval(&self, inv: &InstantonInvariants) -> i64 {
        self.alpha * inv.alpha + self.beta * inv.beta + self.gamma * inv.gamma + self.constant
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, name) in [(self.alpha, "α"), (self.beta, "β"), (self.gamma, "γ"), (self.constant, "")] {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let coef = if mag == 1 && !name.is_empty() { String::new() } else { mag.to_string() };
            out.push_str(&format!("{sign}{coef}{name}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

const Z: LinearForm = LinearForm::new(0, 0, 0, 0);

/// `h^q(E ⊗ F_p)` as linear forms in `(α, β, γ)`, rows `q = 0..3`.
pub const SYMBOLIC_TABLE: [[LinearForm; 6]; 4] = [
    [Z; 6],
    [
        Z,
        LinearForm::new(1, 0, 0, 0),
        LinearForm::new(2, 0, 0, 0),
        LinearForm::new(0, 1, 1, 0),
        LinearForm::new(1, 1, 0, 0),
        LinearForm::new(2, 1, 0, -2),
    ],
    [Z, Z, Z, LinearForm::new(0, 0, 1, 0), Z, Z],
    [Z; 6],
];

/// The exceptional collection `F₀, …, F₅` indexing the table columns.
pub fn collection() -> [SheafTerm; 6] {
    [
        SheafTerm::line(-1, -1),
        SheafTerm::line(-1, 0),
        SheafTerm::line(-1, 1),
        SheafTerm::line(0, -2),
        SheafTerm::line(0, -1),
        SheafTerm::line(0, 0),
    ]
}

/// Rows `q = 0..3`, columns `p = 0..5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CohomologyTable(pub [[u64; 6]; 4]);

impl CohomologyTable {
    pub fn get(&self, q: usize, p: usize) -> u64 {
        self.0[q][p]
    }

    pub fn row(&self, q: usize) -> [u64; 6] {
        self.0[q]
    }

    pub fn column_euler(&self, p: usize) -> i64 {
        (0..4).map(|q| if q % 2 == 0 { self.0[q][p] as i64 } else { -(self.0[q][p] as i64) }).sum()
    }
}

pub fn cohomology_table(inv: &InstantonInvariants) -> Result<CohomologyTable> {
    let mut out = [[0u64; 6]; 4];
    let mut negative = false;
    for (q, row) in SYMBOLIC_TABLE.iter().enumerate() {
        for (p, form) in row.iter().enumerate() {
            let v = form.eval(inv);
            negative |= v < 0;
            out[q][p] = v.max(0) as u64;
        }
    }
    // negative entries and failed inequalities are reported together
    let violations = validate_invariants(inv);
    if negative || !violations.is_empty() {
        return Err(Error::Inadmissible(violations));
    }
    Ok(CohomologyTable(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaRow {
    pub lambda: i64,
    /// `h^i(E(λh))`, `i = 0..3`.
    pub h: [u64; 4],
    /// The only degree allowed to be non-zero at this twist, if any.
    pub allowed: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalCohomologyReport {
    pub natural: bool,
    pub rows: Vec<LambdaRow>,
}

/// `h^i(E(λh))` for `−2 ≤ λ ≤ 0` from the table and Serre duality, checked
/// against the natural-cohomology pattern.
pub fn check_natural_cohomology(inv: &InstantonInvariants) -> Result<NaturalCohomologyReport> {
    let table = cohomology_table(inv)?;
    let q_x = GeometryDescriptor::blowup_p3().half_index as i64;
    // column p = 5 is E itself
    let h_e: [u64; 4] = [0, 1, 2, 3].map(|q| table.get(q, 5));
    let h_minus_h = [0u64; 4];
    // E ≅ E^∨ and ω = O(−2h): h^i(E(−2h)) = h^{3−i}(E)
    let h_minus_2h = [h_e[3], h_e[2], h_e[1], h_e[0]];

    let rows: Vec<LambdaRow> = [(-2, h_minus_2h), (-1, h_minus_h), (0, h_e)]
        .into_iter()
        .map(|(lambda, h)| {
            let allowed = if (1 - q_x..=0).contains(&lambda) {
                Some(1)
            } else if (-2 * q_x..=-1 - q_x).contains(&lambda) {
                Some(2)
            } else {
                None
            };
            LambdaRow { lambda, h, allowed }
        })
        .collect();
    let natural = rows.iter().all(|r| r.h.iter().enumerate().all(|(i, v)| *v == 0 || r.allowed == Some(i)));
    Ok(NaturalCohomologyReport { natural, rows })
}

/// Lower bound on `c₂(E)·h` for an instanton.
pub fn minimal_charge_bound(geom: &GeometryDescriptor) -> Ratio<i64> {
    match geom.index {
        4 => Ratio::from_integer(1),
        2 | 3 => Ratio::from_integer(2),
        1 => Ratio::new(geom.degree, 4),
        // index ≥ 5 does not occur for threefolds
        _ => Ratio::from_integer(0),
    }
}

pub fn is_minimal(inv: &InstantonInvariants) -> bool {
    Ratio::from_integer(inv.charge_pairing()) == minimal_charge_bound(&GeometryDescriptor::blowup_p3())
}

/// A pulled-back description of an instanton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PullbackDescriptor {
    /// `σ*U` for an instanton `U` on P³ of the given charge (a null-correlation
    /// bundle when the charge is 1).
    Sigma { p3_charge: i64 },
    /// `π*V` for a μ-stable bundle `V` on P² with `c₁ = 0` and the given `c₂`.
    Pi { p2_c2: i64 },
}

impl fmt::Display for PullbackDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PullbackDescriptor::Sigma { p3_charge: 1 } => f.write_str("σ*U, U a null-correlation bundle on P³"),
            PullbackDescriptor::Sigma { p3_charge } => write!(f, "σ*U, U an instanton on P³ of charge {p3_charge}"),
            PullbackDescriptor::Pi { p2_c2 } => write!(f, "π*V, V μ-stable on P² with c₁=0, c₂={p2_c2}"),
        }
    }
}

/// Classification of minimal instantons, equivalently of rank-2 bundles
/// `E` with `E(h)` Ulrich.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlrichClassification {
    pub descriptor: PullbackDescriptor,
    pub generically_trivial: bool,
    pub earnest: bool,
    pub note: &'static str,
}

pub fn ulrich_classification(inv: &InstantonInvariants) -> Result<UlrichClassification> {
    inv.require_admissible()?;
    if !is_minimal(inv) {
        return Err(Error::NotMinimal { alpha: inv.alpha, beta: inv.beta, pairing: inv.charge_pairing() });
    }
    let descriptor = match (inv.alpha, inv.beta, inv.gamma) {
        (1, 0, 0) => PullbackDescriptor::Sigma { p3_charge: 1 },
        (0, 2, 0) => PullbackDescriptor::Pi { p2_c2: 2 },
        _ => return Err(Error::MinimalNotRealized { alpha: inv.alpha, beta: inv.beta }),
    };
    Ok(UlrichClassification {
        descriptor,
        generically_trivial: true,
        earnest: true,
        note: "generic triviality and the Ulrich property are asserted, not machine-checked",
    })
}

/// Earnest iff `h¹(E(−2ξ)) = 0`.
pub fn is_earnest_criterion(inv: &InstantonInvariants) -> Result<bool> {
    inv.require_admissible()?;
    Ok(inv.gamma == 0)
}

/// `αξ² + βf²` lies in the movable cone iff `α, β ≥ 0`.
pub fn in_movable_cone(c: &CurveClass) -> Result<bool> {
    if c.geometry != Geometry::BlowupP3 {
        return Err(Error::GeometryMismatch { left: c.geometry, right: Geometry::BlowupP3 });
    }
    Ok(c.coords[0] >= 0 && c.coords[1] >= 0)
}

/// `dim Ext¹(E,E) − dim Ext²(E,E) = 2i·c₂h − i·c₁²h/2 − 3` for a simple
/// rank-2 bundle, from `c₁²·h` and `c₂·h`.
pub fn ext_difference(geom: &GeometryDescriptor, c1_squared_h: i64, c2_h: i64) -> Result<i64> {
    let i = geom.index as i64;
    let half = i * c1_squared_h;
    if half % 2 != 0 {
        return Err(Error::NonIntegral(format!("{half}/2")));
    }
    Ok(2 * i * c2_h - half / 2 - 3)
}

/// `E ≅ σ*U` when `β = γ = 0`, `E ≅ π*V` when `α = 0`.
pub fn classify_pullback(inv: &InstantonInvariants) -> Result<Option<PullbackDescriptor>> {
    inv.require_admissible()?;
    Ok(if inv.beta == 0 && inv.gamma == 0 {
        Some(PullbackDescriptor::Sigma { p3_charge: inv.alpha })
    } else if inv.alpha == 0 {
        Some(PullbackDescriptor::Pi { p2_c2: inv.beta })
    } else {
        None
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliComponentReport {
    pub dimension: i64,
    pub generically_smooth: bool,
    pub note: &'static str,
}

pub fn moduli_component_report(inv: &InstantonInvariants) -> Result<ModuliComponentReport> {
    inv.require_admissible()?;
    if inv.alpha < 0 || inv.beta < 0 {
        return Err(Error::Precondition("the charge must satisfy α, β ≥ 0".into()));
    }
    let dimension = ext_difference(&GeometryDescriptor::blowup_p3(), 0, inv.charge_pairing())?;
    Ok(ModuliComponentReport {
        dimension,
        generically_smooth: true,
        note: "component containing the bundles built from conics and lines; whether it is the whole earnest locus is open",
    })
}

/// `χ(E ⊗ F_p)` for every column, by Riemann-Roch.
pub fn column_euler_characteristics(inv: &InstantonInvariants) -> Result<[i64; 6]> {
    let e = inv.chern();
    let mut out = [0; 6];
    for (slot, term) in out.iter_mut().zip(collection()) {
        *slot = euler_characteristic(&e.twist(term.divisor())?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(a: i64, b: i64, g: i64) -> InstantonInvariants {
        InstantonInvariants::new(a, b, g)
    }

    #[test]
    fn validation() {
        assert!(validate_invariants(&inv(1, 0, 0)).is_empty());
        assert_eq!(validate_invariants(&inv(0, 1, 0)), vec!["2α+β≥2"]);
        assert!(validate_invariants(&inv(1, -2, 0)).contains(&"α+β≥0".to_string()));
        assert_eq!(validate_invariants(&inv(1, 0, 2)), vec!["γ≤α"]);
    }

    #[test]
    fn tables() {
        let t = cohomology_table(&inv(1, 0, 0)).unwrap();
        assert_eq!(t.row(1), [0, 1, 2, 0, 1, 0]);
        assert_eq!(t.row(2), [0; 6]);
        let t = cohomology_table(&inv(2, 1, 1)).unwrap();
        assert_eq!(t.row(1), [0, 2, 4, 2, 3, 3]);
        assert_eq!(t.row(2), [0, 0, 0, 1, 0, 0]);
        assert_eq!(cohomology_table(&inv(0, 2, 0)).unwrap().row(1), [0, 0, 0, 2, 2, 0]);
        assert!(cohomology_table(&inv(0, 1, 0)).is_err());
    }

    #[test]
    fn table_columns_match_riemann_roch() {
        for a in 0..=6 {
            for b in -6..=6 {
                for g in 0..=6 {
                    let i = inv(a, b, g);
                    let Ok(t) = cohomology_table(&i) else { continue };
                    let chis = column_euler_characteristics(&i).unwrap();
                    for (p, chi) in chis.iter().enumerate() {
                        assert_eq!(t.column_euler(p), *chi, "{i} column {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn natural_cohomology() {
        let r = check_natural_cohomology(&inv(1, 0, 0)).unwrap();
        assert!(r.natural);
        assert!(r.rows.iter().all(|row| row.h == [0; 4]));
        let r = check_natural_cohomology(&inv(3, 0, 0)).unwrap();
        assert!(r.natural);
        assert_eq!(r.rows[2].h[1], 4);
        assert_eq!(r.rows[0].h[2], 4);
        assert_eq!(check_natural_cohomology(&inv(0, 2, 0)).unwrap().rows[2].h[1], 0);
    }

    #[test]
    fn bounds_and_minimality() {
        assert_eq!(minimal_charge_bound(&GeometryDescriptor::p3()), Ratio::from_integer(1));
        assert_eq!(minimal_charge_bound(&GeometryDescriptor::blowup_p3()), Ratio::from_integer(2));
        assert_eq!(minimal_charge_bound(&GeometryDescriptor::scalar_only(1, 8)), Ratio::from_integer(2));
        assert!(is_minimal(&inv(1, 0, 0)));
        assert!(is_minimal(&inv(0, 2, 0)));
        assert!(!is_minimal(&inv(2, 0, 0)));
    }

    #[test]
    fn ulrich() {
        let c = ulrich_classification(&inv(1, 0, 0)).unwrap();
        assert_eq!(c.descriptor, PullbackDescriptor::Sigma { p3_charge: 1 });
        assert_eq!(ulrich_classification(&inv(0, 2, 0)).unwrap().descriptor, PullbackDescriptor::Pi { p2_c2: 2 });
        assert!(matches!(ulrich_classification(&inv(2, 0, 0)), Err(Error::NotMinimal { .. })));
        assert!(matches!(ulrich_classification(&inv(2, -2, 2)), Err(Error::MinimalNotRealized { .. })));
    }

    #[test]
    fn earnest_and_cone() {
        assert!(is_earnest_criterion(&inv(1, 0, 0)).unwrap());
        assert!(!is_earnest_criterion(&inv(2, 1, 1)).unwrap());
        assert!(is_earnest_criterion(&inv(5, 3, 0)).unwrap());
        assert!(in_movable_cone(&CurveClass::blowup(1, 0)).unwrap());
        assert!(!in_movable_cone(&CurveClass::blowup(1, -1)).unwrap());
        assert!(in_movable_cone(&CurveClass::blowup(0, 0)).unwrap());
        assert!(in_movable_cone(&CurveClass::flag(1, 0)).is_err());
    }

    #[test]
    fn ext_and_moduli() {
        let f = GeometryDescriptor::blowup_p3();
        assert_eq!(ext_difference(&f, 0, 2).unwrap(), 5);
        assert_eq!(ext_difference(&GeometryDescriptor::p3(), 0, 3).unwrap(), 21);
        for (a, b, d) in [(1, 0, 5), (0, 2, 5), (2, 1, 17)] {
            assert_eq!(moduli_component_report(&inv(a, b, 0)).unwrap().dimension, d);
        }
        assert!(moduli_component_report(&inv(2, -1, 1)).is_err());
    }

    #[test]
    fn pullbacks() {
        assert_eq!(classify_pullback(&inv(3, 0, 0)).unwrap(), Some(PullbackDescriptor::Sigma { p3_charge: 3 }));
        assert_eq!(classify_pullback(&inv(0, 4, 0)).unwrap(), Some(PullbackDescriptor::Pi { p2_c2: 4 }));
        assert_eq!(classify_pullback(&inv(2, 1, 0)).unwrap(), None);
    }

    #[test]
    fn linear_form_display() {
        assert_eq!(SYMBOLIC_TABLE[1][5].to_string(), "2α+β-2");
        assert_eq!(SYMBOLIC_TABLE[1][3].to_string(), "β+γ");
        assert_eq!(SYMBOLIC_TABLE[0][0].to_string(), "0");
    }
}
