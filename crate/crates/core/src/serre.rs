//! Instantons from disjoint conics and fibre lines via the Serre
//! correspondence: `0 → O → F → I_X(2f) → 0`, then `E = F(−f)`.

use std::fmt;

use crate::chern::{euler_characteristic, ChernData};
use crate::chow::{CurveClass, DivisorClass, Geometry, GeometryDescriptor};
use crate::cohomology::h_line_f;
use crate::error::{Error, Result};
use crate::instanton::{
    ext_difference, is_earnest_criterion, moduli_component_report, InstantonInvariants, ModuliComponentReport,
};

/// Curves on the blow-up with their normal bundles `O(d₁) ⊕ O(d₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveFamily {
    /// Fibres of `π`, strict transforms of lines through the point; `N = O ⊕ O`.
    LambdaPi,
    /// Lines in the exceptional plane; `N = O(−1) ⊕ O(1)`.
    LambdaE,
    /// Pullbacks of conics missing the point; `N = O(1) ⊕ O(1)`.
    Gamma,
}

impl CurveFamily {
    pub const ALL: [CurveFamily; 3] = [CurveFamily::LambdaPi, CurveFamily::LambdaE, CurveFamily::Gamma];

    pub fn class(self) -> CurveClass {
        match self {
            CurveFamily::LambdaPi => CurveClass::blowup(0, 1),
            CurveFamily::LambdaE => CurveClass::blowup(1, -1),
            CurveFamily::Gamma => CurveClass::blowup(1, 0),
        }
    }

    pub fn normal_degrees(self) -> [i64; 2] {
        match self {
            CurveFamily::LambdaPi => [0, 0],
            CurveFamily::LambdaE => [-1, 1],
            CurveFamily::Gamma => [1, 1],
        }
    }

    /// `C·h`.
    pub fn degree(self) -> i64 {
        self.class().pair(&DivisorClass::blowup(1, 1)).expect("blow-up pairing")
    }

    /// `deg det N_C` agrees with `C·2f`, as needed for `det N_X = O(2f)|_X`.
    pub fn det_compatible(self) -> bool {
        let [d1, d2] = self.normal_degrees();
        self.class().pair(&DivisorClass::blowup(0, 2)).expect("blow-up pairing") == d1 + d2
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveFamily::LambdaPi => "Λ_π",
            CurveFamily::LambdaE => "Λ_E",
            CurveFamily::Gamma => "Γ",
        })
    }
}

/// `num_conics` curves from `Γ` and `num_lines` from `Λ_π`, pairwise disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CurveConfig {
    pub num_conics: u64,
    pub num_lines: u64,
}

impl CurveConfig {
    pub fn new(num_conics: u64, num_lines: u64) -> Self {
        Self { num_conics, num_lines }
    }

    /// The configuration producing charge `αξ² + βf²`.
    pub fn for_charge(alpha: u64, beta: u64) -> Self {
        Self::new(alpha, beta + 1)
    }

    pub fn components(&self) -> u64 {
        self.num_conics + self.num_lines
    }
}

pub fn curve_class(config: &CurveConfig) -> CurveClass {
    let c = |n: u64| i64::try_from(n).expect("curve count fits i64");
    CurveClass::blowup(c(config.num_conics), c(config.num_lines))
}

/// `det N_{X|F} ≅ O_F(2f) ⊗ O_X`, checked on each kind of component present.
pub fn normal_det_check(config: &CurveConfig) -> bool {
    let mut ok = true;
    if config.num_conics > 0 {
        ok &= CurveFamily::Gamma.det_compatible();
    }
    if config.num_lines > 0 {
        ok &= CurveFamily::LambdaPi.det_compatible();
    }
    ok
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SerreHypotheses {
    /// `h²(L^∨) = 0`: a rank-2 bundle with the given determinant exists.
    pub existence: bool,
    /// `h¹(L^∨) = 0`: it is unique up to isomorphism.
    pub uniqueness: bool,
}

pub fn serre_hypotheses(twist: &DivisorClass) -> Result<SerreHypotheses> {
    if twist.geometry != Geometry::BlowupP3 {
        return Err(Error::GeometryMismatch { left: twist.geometry, right: Geometry::BlowupP3 });
    }
    let [a, b] = twist.coords;
    Ok(SerreHypotheses { existence: h_line_f(2, -a, -b) == 0, uniqueness: h_line_f(1, -a, -b) == 0 })
}

/// `χ(E) = χ(O(−f)) + χ(I_X(f))` along `0 → O(−f) → E → I_X(f) → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChiAdditivity {
    pub chi_e: i64,
    pub chi_sub: i64,
    /// `χ(O(f)) − χ(O_X(f))`; each conic contributes 2 to `χ(O_X(f))`, each line 1.
    pub chi_ideal: i64,
    pub holds: bool,
}

pub fn chi_additivity(config: &CurveConfig) -> Result<ChiAdditivity> {
    let c = curve_class(config);
    let f = DivisorClass::blowup(0, 1);
    let e = ChernData::rank_two(CurveClass::blowup(c.coords[0], c.coords[1] - 1));
    let chi_e = euler_characteristic(&e)?;
    let chi_sub = euler_characteristic(&ChernData::line_bundle(-f.clone()))?;
    // a disjoint union of smooth rational curves: χ(O_C(f)) = f·C + 1 per component
    let chi_curves: i64 = [(CurveFamily::Gamma, config.num_conics), (CurveFamily::LambdaPi, config.num_lines)]
        .iter()
        .map(|(fam, n)| (fam.class().pair(&f).unwrap() + 1) * *n as i64)
        .sum();
    let chi_ideal = euler_characteristic(&ChernData::line_bundle(f))? - chi_curves;
    Ok(ChiAdditivity { chi_e, chi_sub, chi_ideal, holds: chi_e == chi_sub + chi_ideal })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub config: CurveConfig,
    pub invariants: InstantonInvariants,
    /// Chern data of the Serre bundle `F`, `(2, 2f, [X], 0)`.
    pub serre_bundle: ChernData,
    /// Chern data of `E = F(−f)`.
    pub chern: ChernData,
    /// `dim Ext^i(E, E)` for `i = 1, 2, 3`.
    pub ext: [i64; 3],
    pub ext_consistent: bool,
    pub normal_det_ok: bool,
    pub hypotheses: SerreHypotheses,
    pub chi: ChiAdditivity,
    pub earnest: bool,
    /// μ-stability, generic triviality and the genericity of the curves are
    /// asserted for these bundles, not machine-checked.
    pub mu_stable: bool,
    pub generically_trivial: bool,
    pub moduli: ModuliComponentReport,
    pub note: &'static str,
}

pub fn construct_instanton(config: &CurveConfig) -> Result<ConstructionReport> {
    if config.num_lines == 0 {
        return Err(Error::Precondition("at least one fibre line is needed (β = lines − 1 ≥ 0)".into()));
    }
    let class = curve_class(config);
    let inv = InstantonInvariants::earnest(class.coords[0], class.coords[1] - 1);
    if inv.charge_pairing() < 2 {
        return Err(Error::Precondition(format!("2α+β = {} < 2", inv.charge_pairing())));
    }
    let twist = DivisorClass::blowup(0, 2);
    let hypotheses = serre_hypotheses(&twist)?;
    let serre_bundle = ChernData::new(2, twist, class, 0)?;
    let chern = serre_bundle.twist(&DivisorClass::blowup(0, -1))?;
    assert_eq!(chern, inv.chern(), "E = F(−f) has the expected Chern data");

    let ext1 = 8 * inv.alpha + 4 * inv.beta - 3;
    let ext = [ext1, 0, 0];
    let ext_consistent = ext_difference(&GeometryDescriptor::blowup_p3(), 0, inv.charge_pairing())? == ext[0] - ext[1];
    let moduli = moduli_component_report(&inv)?;

    Ok(ConstructionReport {
        config: *config,
        invariants: inv,
        serre_bundle,
        chern,
        ext,
        ext_consistent,
        normal_det_ok: normal_det_check(config),
        hypotheses,
        chi: chi_additivity(config)?,
        earnest: is_earnest_criterion(&inv)?,
        mu_stable: true,
        generically_trivial: true,
        moduli,
        note: "only earnest instantons with charge in Mov(F) arise this way",
    })
}
