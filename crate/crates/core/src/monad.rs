//! Monads `C⁻¹ → C⁰ → C¹` whose cohomology is an instanton, their Chern
//! classes, and cohomology bounds read off the display sequences
//!
//! ```text
//! 0 → K → C⁰ → C¹ → 0,    0 → C⁻¹ → K → E → 0.
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::chern::{ChernData, TotalChern};
use crate::chow::{DivisorClass, Geometry};
use crate::cohomology::{h_sheaf, has_smooth_integral_member, SheafTerm};
use crate::error::{Error, Result};
use crate::instanton::{cohomology_table, CohomologyTable, InstantonInvariants};

/// Complex degrees `−1, 0, 1`, stored at indices `0, 1, 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonadTerms {
    pub geometry: Geometry,
    pub terms: [BTreeMap<SheafTerm, u64>; 3],
}

fn slot(degree: i32) -> usize {
    match degree {
        -1 => 0,
        0 => 1,
        1 => 2,
        _ => panic!("monad degree {degree} outside -1..=1"),
    }
}

impl MonadTerms {
    pub fn empty(geometry: Geometry) -> Self {
        Self { geometry, terms: Default::default() }
    }

    /// Adds `mult` copies of `term` in `degree`; zero multiplicities are dropped.
    pub fn push(&mut self, degree: i32, term: SheafTerm, mult: u64) {
        if mult > 0 {
            *self.terms[slot(degree)].entry(term).or_default() += mult;
        }
    }

    pub fn with(mut self, degree: i32, term: SheafTerm, mult: u64) -> Self {
        self.push(degree, term, mult);
        self
    }

    pub fn degree(&self, degree: i32) -> &BTreeMap<SheafTerm, u64> {
        &self.terms[slot(degree)]
    }

    pub fn multiplicity(&self, degree: i32, term: &SheafTerm) -> u64 {
        self.degree(degree).get(term).copied().unwrap_or(0)
    }

    pub fn rank(&self, degree: i32) -> u64 {
        self.degree(degree).iter().map(|(t, m)| t.rank() as u64 * m).sum()
    }

    /// `rank C⁰ − rank C⁻¹ − rank C¹`.
    pub fn alternating_rank(&self) -> i64 {
        self.rank(0) as i64 - self.rank(-1) as i64 - self.rank(1) as i64
    }

    /// Total Chern class of the terms in one degree.
    pub fn total_chern(&self, degree: i32) -> Result<TotalChern> {
        let mut acc = TotalChern::one(self.geometry);
        for (term, mult) in self.degree(degree) {
            acc = acc.mul(&total_chern_pow(&TotalChern::of(&term.chern()?), *mult)?)?;
        }
        Ok(acc)
    }

    /// `h^i(C^j ⊗ L)`.
    pub fn h_term(&self, degree: i32, l: &DivisorClass, i: i32) -> Result<u64> {
        if !(0..=3).contains(&i) {
            return Ok(0);
        }
        let mut total = 0u64;
        for (term, mult) in self.degree(degree) {
            let h = h_sheaf(i as u8, &term.twisted(l)?)?;
            total = h.checked_mul(*mult).and_then(|v| v.checked_add(total)).expect("bound overflow");
        }
        Ok(total)
    }

    /// `χ(E ⊗ L) = Σ_j (−1)^j χ(C^j ⊗ L)`.
    pub fn euler_characteristic(&self, l: &DivisorClass) -> Result<i64> {
        let mut chi = 0i64;
        for j in -1..=1 {
            let mut cj = 0i64;
            for i in 0..4 {
                let h = self.h_term(j, l, i)? as i64;
                cj += if i % 2 == 0 { h } else { -h };
            }
            chi += if j == 0 { cj } else { -cj };
        }
        Ok(chi)
    }
}

fn total_chern_pow(c: &TotalChern, mut n: u64) -> Result<TotalChern> {
    let mut base = c.clone();
    let mut acc = TotalChern::one(c.c1.geometry);
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base)?;
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base)?;
        }
    }
    Ok(acc)
}

fn superscript(n: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl MonadTerms {
    /// One degree as a direct sum, e.g. `O(-ξ)² ⊕ π*Ω¹(f)`, or `0`.
    pub fn render_degree(&self, degree: i32) -> String {
        let parts: Vec<String> = self
            .degree(degree)
            .iter()
            .map(|(t, m)| if *m == 1 { t.to_string() } else { format!("{t}{}", superscript(*m)) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl fmt::Display for MonadTerms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C⁻¹ = {}; C⁰ = {}; C¹ = {}", self.render_degree(-1), self.render_degree(0), self.render_degree(1))
    }
}

/// The sheaf `π*Ω^b(bf) ⊗ O(−aξ)` of the Beilinson-type resolution.
fn beilinson_sheaf(a: i64, b: i64) -> SheafTerm {
    match b {
        0 => SheafTerm::line(-a, 0),
        1 => SheafTerm::omega(-a, 1),
        // Ω² = O(−3f)
        _ => SheafTerm::line(-a, -1),
    }
}

/// Assembles `C^i = ⊕_{q−(a+b)=i} H^q(E ⊗ F_p) ⊗ π*Ω^b(bf) ⊗ ∧^a O(−ξ)` with
/// `p = 5 − 3a − b`.
pub fn beilinson_terms(table: &CohomologyTable) -> Result<MonadTerms> {
    let mut out = MonadTerms::empty(Geometry::BlowupP3);
    for a in 0..=1i64 {
        for b in 0..=2i64 {
            let p = (5 - 3 * a - b) as usize;
            for q in 0..4i64 {
                let mult = table.get(q as usize, p);
                if mult == 0 {
                    continue;
                }
                let degree = q - (a + b);
                if !(-1..=1).contains(&degree) {
                    return Err(Error::Precondition(format!(
                        "table entry h^{q}(E⊗F_{p}) = {mult} lands in monad degree {degree}"
                    )));
                }
                out.push(degree as i32, beilinson_sheaf(a, b), mult);
            }
        }
    }
    Ok(out)
}

/// The monad of an instanton with invariants `(α, β, γ)`.
pub fn synthesize_monad_f(inv: &InstantonInvariants) -> Result<MonadTerms> {
    cohomology_table(inv)?;
    let InstantonInvariants { alpha, beta, gamma } = *inv;
    let n = |v: i64| v as u64;
    Ok(MonadTerms::empty(Geometry::BlowupP3)
        .with(-1, SheafTerm::line(0, -1), n(beta + gamma))
        .with(-1, SheafTerm::omega(-1, 1), n(alpha))
        .with(0, SheafTerm::line(0, -1), n(gamma))
        .with(0, SheafTerm::omega(0, 1), n(alpha + beta))
        .with(0, SheafTerm::line(-1, 0), n(2 * alpha))
        .with(1, SheafTerm::line(0, 0), n(2 * alpha + beta - 2)))
}

/// `O(−h₁)^{k₁} ⊕ O(−h₂)^{k₂} → O^{2k₁+2k₂+2} → O(h₁)^{k₁} ⊕ O(h₂)^{k₂}`.
pub fn synthesize_monad_flag(k1: u64, k2: u64) -> MonadTerms {
    MonadTerms::empty(Geometry::FlagThreefold)
        .with(-1, SheafTerm::flag_line(-1, 0), k1)
        .with(-1, SheafTerm::flag_line(0, -1), k2)
        .with(0, SheafTerm::flag_line(0, 0), 2 * k1 + 2 * k2 + 2)
        .with(1, SheafTerm::flag_line(1, 0), k1)
        .with(1, SheafTerm::flag_line(0, 1), k2)
}

/// Chern data of the monad cohomology, `c(E) = c(C⁰) / (c(C⁻¹)·c(C¹))`.
pub fn monad_chern(terms: &MonadTerms) -> Result<ChernData> {
    let r = terms.alternating_rank();
    if r != 2 {
        return Err(Error::MonadRank(r));
    }
    let ends = terms.total_chern(-1)?.mul(&terms.total_chern(1)?)?;
    let e = terms.total_chern(0)?.div(&ends)?;
    ChernData::new(2, e.c1, e.c2, e.c3)
}

/// `h^i(E ⊗ L) ≤ Σ_j h^{i−j}(C^j ⊗ L)`.
pub fn cohomology_upper_bound(terms: &MonadTerms, l: &DivisorClass, i: i32) -> Result<u64> {
    let mut total = 0u64;
    for j in -1..=1 {
        total += terms.h_term(j, l, i - j)?;
    }
    Ok(total)
}

fn canonical(terms: &MonadTerms) -> Result<DivisorClass> {
    terms.geometry.descriptor().canonical::<i64>()
}

fn require_self_dual(terms: &MonadTerms) -> Result<()> {
    let c = monad_chern(terms).map_err(|_| Error::NotSelfDual)?;
    if !c.c1.is_zero() {
        return Err(Error::NotSelfDual);
    }
    Ok(())
}

/// The display bound applied to `h^{3−i}(E ⊗ L^∨ ⊗ ω)`, which equals
/// `h^i(E ⊗ L)` when `E` is a rank-2 bundle with `c₁ = 0`.
pub fn dual_upper_bound(terms: &MonadTerms, l: &DivisorClass, i: i32) -> Result<u64> {
    require_self_dual(terms)?;
    let dual_twist = canonical(terms)?.checked_add(&-l.clone())?;
    cohomology_upper_bound(terms, &dual_twist, 3 - i)
}

/// The smaller of the direct and the dual bound.
pub fn best_upper_bound(terms: &MonadTerms, l: &DivisorClass, i: i32) -> Result<u64> {
    let direct = cohomology_upper_bound(terms, l, i)?;
    if direct == 0 {
        return Ok(0);
    }
    match dual_upper_bound(terms, l, i) {
        Ok(dual) => Ok(direct.min(dual)),
        Err(Error::NotSelfDual) => Ok(direct),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: String,
    pub twist: DivisorClass,
    pub degree: i32,
    pub bound: u64,
    pub required_at_most: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstantonConditionReport {
    pub gamma: u64,
    pub checks: Vec<ConditionCheck>,
    pub all_pass: bool,
}

impl InstantonConditionReport {
    pub fn failures(&self) -> impl Iterator<Item = &ConditionCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Checks the vanishings making the monad cohomology an instanton:
/// `h⁰(E) = 0`, `h¹(E(−h)) = 0`, `h¹(E(−h−E)) ≤ γ` and
/// `h¹(E(−h−D)) = 0` for smooth `D = aξ+bf ≠ E` with `a, b ≤ search_box`.
///
/// `γ` is the multiplicity of `O(−f)` in `C⁰`.
pub fn verify_instanton_conditions(terms: &MonadTerms, search_box: u32) -> Result<InstantonConditionReport> {
    if terms.geometry != Geometry::BlowupP3 {
        return Err(Error::GeometryMismatch { left: terms.geometry, right: Geometry::BlowupP3 });
    }
    let r = terms.alternating_rank();
    if r != 2 {
        return Err(Error::MonadRank(r));
    }
    let gamma = terms.multiplicity(0, &SheafTerm::line(0, -1));
    let h = DivisorClass::blowup(1, 1);
    let mut checks = Vec::new();
    let mut check = |name: String, twist: DivisorClass, degree: i32, at_most: u64| -> Result<()> {
        let bound = best_upper_bound(terms, &twist, degree)?;
        checks.push(ConditionCheck { name, twist, degree, bound, required_at_most: at_most, pass: bound <= at_most });
        Ok(())
    };
    check("h0(E)=0".into(), DivisorClass::zero(Geometry::BlowupP3), 0, 0)?;
    check("h1(E(-h))=0".into(), -h.clone(), 1, 0)?;
    // −h − E = −2ξ
    check("h1(E(-h-E))<=gamma".into(), DivisorClass::blowup(-2, 0), 1, gamma)?;
    let n = search_box as i64;
    for a in 0..=n {
        for b in 0..=n {
            if !has_smooth_integral_member(a, b) {
                continue;
            }
            check(
                format!("h1(E(-h-D))=0 for D={}", DivisorClass::blowup(a, b)),
                DivisorClass::blowup(-a - 1, -b - 1),
                1,
                0,
            )?;
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(InstantonConditionReport { gamma, checks, all_pass })
}
