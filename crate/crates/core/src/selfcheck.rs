//! The invariant suites, runnable on demand with adjustable grid bounds.
//!
//! Each suite walks a grid and stops at the first counterexample. A radius
//! override replaces every suite's default bound; radius 0 checks nothing.

use std::fmt;

use crate::chern::{euler_characteristic, rr_blowup, slope, ChernData};
use crate::chow::{CurveClass, DivisorClass, GeometryDescriptor};
use crate::cohomology::{h_line_f_with, h_line_flag, h_omega_f_with, is_effective, BinomialConvention};
use crate::error::Result;
use crate::instanton::{
    cohomology_table, ext_difference, in_movable_cone, is_earnest_criterion, is_minimal, minimal_charge_bound,
    validate_invariants, InstantonInvariants,
};
use crate::monad::{beilinson_terms, cohomology_upper_bound, monad_chern, synthesize_monad_f};
use crate::serre::{chi_additivity, construct_instanton, CurveConfig};
use crate::stability::{destabilizer_curve_class, extension_eliminator, hoppe_scan, StabilityMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SelfcheckOptions {
    /// Replaces every suite's grid bound when set.
    pub radius: Option<i64>,
    /// Binomial reading used by the closed-form cohomology suites.
    pub convention: BinomialConvention,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS {} ({} cases)", self.name, self.checked),
            Some(w) => write!(f, "FAIL {} after {} cases: {}", self.name, self.checked, w),
        }
    }
}

struct Suite {
    name: &'static str,
    checked: u64,
    failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, failure: None }
    }

    /// Records one case; returns false once a counterexample is known.
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.checked += 1;
        if !ok {
            self.failure = Some(witness());
        }
        ok
    }

    fn check_result(&mut self, r: Result<bool>, witness: impl FnOnce() -> String) -> bool {
        match r {
            Ok(ok) => self.check(ok, witness),
            Err(e) => {
                let w = witness();
                self.check(false, || format!("{w}: {e}"))
            }
        }
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }

    fn finish(self) -> SuiteResult {
        SuiteResult { name: self.name, checked: self.checked, counterexample: self.failure }
    }
}

fn sym(r: i64) -> std::ops::RangeInclusive<i64> {
    if r > 0 {
        -r..=r
    } else {
        std::ops::RangeInclusive::new(1, 0)
    }
}

fn upto(r: i64) -> std::ops::RangeInclusive<i64> {
    if r > 0 {
        0..=r
    } else {
        std::ops::RangeInclusive::new(1, 0)
    }
}

fn chi_line(a: i64, b: i64) -> Result<i64> {
    euler_characteristic(&ChernData::line_bundle(DivisorClass::blowup(a, b)))
}

fn alternating(h: impl Fn(u8) -> i128) -> i128 {
    (0..4u8).map(|i| if i % 2 == 0 { h(i) } else { -h(i) }).sum()
}

/// Admissible `(α, β, γ)` with every coordinate in `[−r, r]`.
fn admissible(r: i64) -> impl Iterator<Item = InstantonInvariants> {
    sym(r)
        .flat_map(move |a| sym(r).flat_map(move |b| sym(r).map(move |g| InstantonInvariants::new(a, b, g))))
        .filter(InstantonInvariants::is_admissible)
}

pub fn run_all(opts: &SelfcheckOptions) -> Vec<SuiteResult> {
    let r = |default: i64| opts.radius.unwrap_or(default);
    vec![
        chow_ring(r(4)),
        serre_duality(r(8), opts.convention),
        chi_consistency(r(6), opts.convention),
        euler_sequences(r(6), opts.convention),
        effectivity(r(8), opts.convention),
        riemann_roch(r(5)),
        chern_calculus(r(5)),
        table_columns(r(6)),
        monad_round_trip(r(5)),
        destabilizer(r(5), r(20)),
        eliminator(r(8)),
        hoppe_minimal(r(6)),
        construction(r(5)),
    ]
}

pub fn chow_ring(r: i64) -> SuiteResult {
    let mut s = Suite::new("chow-ring");
    let fund = |c: &CurveClass, d: &DivisorClass| c.pair(d);
    for a in sym(r) {
        for b in sym(r) {
            for c in sym(r) {
                for d in sym(r) {
                    let x = DivisorClass::blowup(a, b);
                    let y = DivisorClass::blowup(c, d);
                    let ok = x.intersect(&y).and_then(|p| y.intersect(&x).map(|q| p == q));
                    s.check_result(ok, || format!("{x}·{y} is not symmetric"));
                    // (x·y)·z = x·(y·z) and distributivity, with z running over the basis and h
                    for z in [DivisorClass::blowup(1, 0), DivisorClass::blowup(0, 1), DivisorClass::blowup(1, 1)] {
                        let assoc = (|| Ok(fund(&x.intersect(&y)?, &z)? == fund(&y.intersect(&z)?, &x)?))();
                        s.check_result(assoc, || format!("({x}·{y})·{z} ≠ {x}·({y}·{z})"));
                        let dist = (|| {
                            let lhs = x.intersect(&y.checked_add(&z)?)?;
                            Ok(lhs == x.intersect(&y)?.checked_add(&x.intersect(&z)?)?)
                        })();
                        s.check_result(dist, || format!("{x}·({y}+{z}) is not distributive"));
                    }
                    if s.done() {
                        return s.finish();
                    }
                }
            }
        }
    }
    if r > 0 {
        s.check_result(DivisorClass::<i64>::blowup(1, 1).cube().map(|d| d == 7), || "h³ ≠ 7 on F".into());
        s.check_result(DivisorClass::<i64>::flag(1, 1).cube().map(|d| d == 6), || "h³ ≠ 6 on the flag".into());
        let plane = (|| DivisorClass::blowup(1, 1).square()?.pair(&DivisorClass::blowup(1, -1)))();
        s.check_result(plane.map(|d| d == 1), || "E·h² ≠ 1".into());
    }
    s.finish()
}

pub fn serre_duality(r: i64, conv: BinomialConvention) -> SuiteResult {
    let mut s = Suite::new("serre-duality");
    for i in 0..4u8 {
        for a in sym(r) {
            for b in sym(r) {
                let (l, ld) = (h_line_f_with(conv, i, a, b), h_line_f_with(conv, 3 - i, -a - 2, -b - 2));
                s.check(l == ld, || format!("h^{i}(O({a},{b})) = {l} but dual gives {ld}"));
                let (o, od) = (h_omega_f_with(conv, i, a, b), h_omega_f_with(conv, 3 - i, -a - 2, -b + 1));
                s.check(o == od, || format!("h^{i}(π*Ω¹({a},{b})) = {o} but dual gives {od}"));
                let (g, gd) = (h_line_flag(i, a, b), h_line_flag(3 - i, -a - 2, -b - 2));
                s.check(g == gd, || format!("flag h^{i}(O({a},{b})) = {g} but dual gives {gd}"));
                if s.done() {
                    return s.finish();
                }
            }
        }
    }
    s.finish()
}

pub fn chi_consistency(r: i64, conv: BinomialConvention) -> SuiteResult {
    let mut s = Suite::new("chi-consistency");
    for a in sym(r) {
        for b in sym(r) {
            let alt = alternating(|i| h_line_f_with(conv, i, a, b));
            s.check_result(chi_line(a, b).map(|x| x as i128 == alt), || format!("Σ(−1)^i h^i(O({a},{b})) = {alt} ≠ χ"));
            let alt = alternating(|i| h_line_flag(i, a, b) as i128);
            let chi = euler_characteristic(&ChernData::line_bundle(DivisorClass::flag(a, b)));
            s.check_result(chi.map(|x| x as i128 == alt), || format!("flag Σ(−1)^i h^i(O({a},{b})) = {alt} ≠ χ"));
            if s.done() {
                return s.finish();
            }
        }
    }
    s.finish()
}

pub fn euler_sequences(r: i64, conv: BinomialConvention) -> SuiteResult {
    let mut s = Suite::new("euler-sequences");
    for a in sym(r) {
        for b in sym(r) {
            let alt = alternating(|i| h_omega_f_with(conv, i, a, b));
            let first = (|| Ok(3 * chi_line(a, b - 1)? - chi_line(a, b)?))();
            s.check_result(first.map(|x| x as i128 == alt), || format!("χ(π*Ω¹({a},{b})) = {alt} ≠ 3χ(D−f) − χ(D)"));
            let second = (|| Ok(3 * chi_line(a, b - 2)? - chi_line(a, b - 3)?))();
            s.check_result(second.map(|x| x as i128 == alt), || {
                format!("χ(π*Ω¹({a},{b})) = {alt} ≠ 3χ(D−2f) − χ(D−3f)")
            });
            if s.done() {
                return s.finish();
            }
        }
    }
    s.finish()
}

pub fn effectivity(r: i64, conv: BinomialConvention) -> SuiteResult {
    let mut s = Suite::new("effectivity");
    for a in sym(r) {
        for b in sym(r) {
            let h0 = h_line_f_with(conv, 0, a, b);
            if !s.check((h0 > 0) == is_effective(a, b), || format!("h⁰(O({a},{b})) = {h0} disagrees with effectivity"))
            {
                return s.finish();
            }
        }
    }
    s.finish()
}

pub fn riemann_roch(r: i64) -> SuiteResult {
    let mut s = Suite::new("riemann-roch");
    for a in sym(r) {
        for b in sym(r) {
            for alpha in upto(r) {
                for beta in sym(r) {
                    let via_twist = ChernData::rank_two(CurveClass::blowup(alpha, beta))
                        .twist(&DivisorClass::blowup(a, b))
                        .and_then(|c| euler_characteristic(&c));
                    let closed = rr_blowup(a, b, alpha, beta);
                    let ok = via_twist.map(|x| closed.is_integer() && closed.to_integer() == x);
                    if !s.check_result(ok, || format!("rr_blowup({a},{b},{alpha},{beta}) = {closed}")) {
                        return s.finish();
                    }
                }
            }
        }
    }
    for alpha in upto(r) {
        for beta in sym(r) {
            let e = ChernData::rank_two(CurveClass::blowup(alpha, beta));
            let chi = euler_characteristic(&e).map(|x| x == 2 - 2 * alpha - beta);
            s.check_result(chi, || format!("χ(E) ≠ 2−2α−β at ({alpha},{beta})"));
            let chi_h = e.twist(&DivisorClass::blowup(-1, -1)).and_then(|c| euler_characteristic(&c)).map(|x| x == 0);
            s.check_result(chi_h, || format!("χ(E(−h)) ≠ 0 at ({alpha},{beta})"));
        }
    }
    s.finish()
}

pub fn chern_calculus(r: i64) -> SuiteResult {
    let mut s = Suite::new("chern-calculus");
    let h = DivisorClass::blowup(1, 1);
    let base = ChernData::new(2, DivisorClass::blowup(1, -1), CurveClass::blowup(3, -2), 1).expect("same geometry");
    for a in sym(r) {
        for b in sym(r) {
            let d1 = DivisorClass::blowup(a, b);
            let d2 = DivisorClass::blowup(b, -a);
            let comp = (|| Ok(base.twist(&d1)?.twist(&d2)? == base.twist(&d1.checked_add(&d2)?)?))();
            s.check_result(comp, || format!("twist by {d1} then {d2} ≠ twist by the sum"));
            let shift = (|| {
                let lhs = slope(&base.twist(&d1)?, &h)?;
                Ok(lhs == slope(&base, &h)? + h.square()?.pair(&d1)?)
            })();
            s.check_result(shift, || format!("slope does not shift by {d1}·h²"));
            let sum = (|| {
                let (l1, l2) = (ChernData::line_bundle(d1.clone()), ChernData::line_bundle(d2.clone()));
                Ok(euler_characteristic(&l1.direct_sum(&l2)?)?
                    == euler_characteristic(&l1)? + euler_characteristic(&l2)?)
            })();
            s.check_result(sum, || format!("χ(O({d1}) ⊕ O({d2})) is not additive"));
            if s.done() {
                return s.finish();
            }
        }
    }
    s.finish()
}

pub fn table_columns(r: i64) -> SuiteResult {
    let mut s = Suite::new("table-columns");
    let minimal = minimal_charge_bound(&GeometryDescriptor::blowup_p3());
    for inv in admissible(r) {
        let cols = (|| {
            let t = cohomology_table(&inv)?;
            for (p, sheaf) in crate::instanton::collection().iter().enumerate() {
                let twisted = inv.chern().twist(sheaf.divisor())?;
                let chi = match sheaf.rank() {
                    1 => euler_characteristic(&twisted)?,
                    _ => {
                        // E ⊗ π*Ω¹(D) through the Euler sequence
                        let d = sheaf.divisor();
                        let tw = |x: i64, y: i64| -> Result<i64> {
                            euler_characteristic(&inv.chern().twist(&d.checked_add(&DivisorClass::blowup(x, y))?)?)
                        };
                        3 * tw(0, -1)? - tw(0, 0)?
                    }
                };
                if t.column_euler(p) != chi {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        s.check_result(cols, || format!("column sums disagree with χ at {inv:?}"));
        if inv.gamma == 0 {
            s.check_result(in_movable_cone(&inv.charge()), || format!("{inv:?} charge not movable"));
        }
        let min_ok = is_minimal(&inv) == (num_rational::Ratio::from_integer(inv.charge_pairing()) == minimal);
        s.check(min_ok, || format!("is_minimal inconsistent at {inv:?}"));
        if s.done() {
            return s.finish();
        }
    }
    for a in sym(r) {
        for b in sym(r) {
            let e = ext_difference(&GeometryDescriptor::blowup_p3(), 0, 2 * a + b).map(|x| x == 4 * (2 * a + b) - 3);
            if !s.check_result(e, || format!("ext_difference ≠ 4(2α+β)−3 at ({a},{b})")) {
                return s.finish();
            }
        }
    }
    s.finish()
}

pub fn monad_round_trip(r: i64) -> SuiteResult {
    let mut s = Suite::new("monad-round-trip");
    let zero = DivisorClass::blowup(0, 0);
    let minus_h = DivisorClass::blowup(-1, -1);
    for inv in admissible(r) {
        let ok = (|| {
            let terms = synthesize_monad_f(&inv)?;
            let round = beilinson_terms(&cohomology_table(&inv)?)? == terms;
            let chern = monad_chern(&terms)? == inv.chern();
            let rank = terms.alternating_rank() == 2;
            let vanish =
                cohomology_upper_bound(&terms, &zero, 0)? == 0 && cohomology_upper_bound(&terms, &minus_h, 1)? == 0;
            Ok(round && chern && rank && vanish)
        })();
        if !s.check_result(ok, || format!("monad round trip breaks at {inv:?}")) {
            return s.finish();
        }
    }
    s.finish()
}

pub fn destabilizer(lambda_r: i64, r: i64) -> SuiteResult {
    let mut s = Suite::new("destabilizer");
    let h = DivisorClass::blowup(1, 1);
    for lambda in sym(lambda_r).filter(|l| *l != 0) {
        let d = DivisorClass::blowup(3 * lambda, -4 * lambda);
        let flat = (|| Ok(h.square()?.pair(&d)? == 0))();
        s.check_result(flat, || format!("(3λξ−4λf)·h² ≠ 0 at λ={lambda}"));
        for alpha in upto(r) {
            for beta in sym(r) {
                let ok = (|| {
                    let rest = destabilizer_curve_class(alpha, beta, lambda)?;
                    Ok(d.intersect(&-d.clone())?.checked_add(&rest)? == CurveClass::blowup(alpha, beta))
                })();
                if !s.check_result(ok, || format!("destabilizer identity fails at ({alpha},{beta},{lambda})")) {
                    return s.finish();
                }
            }
        }
    }
    s.finish()
}

pub fn eliminator(r: i64) -> SuiteResult {
    let mut s = Suite::new("extension-eliminator");
    for a in sym(r) {
        for b in sym(r) {
            if !s.check(extension_eliminator(a, b).eliminated(), || format!("({a},{b}) survives")) {
                return s.finish();
            }
        }
    }
    s.finish()
}

/// The scan certifies the minimal charges; higher charges are not claimed.
pub fn hoppe_minimal(search_box: i64) -> SuiteResult {
    let mut s = Suite::new("hoppe-minimal");
    if search_box <= 0 {
        return s.finish();
    }
    for inv in [InstantonInvariants::earnest(1, 0), InstantonInvariants::earnest(0, 2)] {
        let ok = synthesize_monad_f(&inv)
            .and_then(|t| hoppe_scan(&t, search_box as u32, StabilityMode::Stable))
            .map(|v| v.is_stable());
        s.check_result(ok, || format!("{inv:?} not certified within box {search_box}"));
    }
    s.finish()
}

pub fn construction(r: i64) -> SuiteResult {
    let mut s = Suite::new("construction");
    for alpha in upto(r) {
        for beta in upto(r) {
            if 2 * alpha + beta < 2 {
                continue;
            }
            let config = CurveConfig::for_charge(alpha as u64, beta as u64);
            let ok = (|| {
                let rep = construct_instanton(&config)?;
                let chi = chi_additivity(&config)?;
                Ok(rep.chern.c2 == CurveClass::blowup(alpha, beta)
                    && rep.chern.c1.is_zero()
                    && rep.invariants.gamma == 0
                    && validate_invariants(&rep.invariants).is_empty()
                    && is_earnest_criterion(&rep.invariants)?
                    && rep.ext == [8 * alpha + 4 * beta - 3, 0, 0]
                    && rep.ext_consistent
                    && rep.hypotheses.existence
                    && rep.hypotheses.uniqueness
                    && rep.moduli.dimension == rep.ext[0]
                    && chi.holds)
            })();
            if !s.check_result(ok, || format!("construction fails for {config:?}")) {
                return s.finish();
            }
        }
    }
    s.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_pass() {
        for r in run_all(&SelfcheckOptions::default()) {
            assert!(r.passed(), "{r}");
            assert!(r.checked > 0, "{r}");
        }
    }

    #[test]
    fn radius_zero_is_vacuous() {
        for r in run_all(&SelfcheckOptions { radius: Some(0), ..Default::default() }) {
            assert!(r.passed() && r.checked == 0, "{r}");
        }
    }

    #[test]
    fn polynomial_convention_is_caught() {
        let opts = SelfcheckOptions { radius: None, convention: BinomialConvention::Polynomial };
        let results = run_all(&opts);
        let by_name = |n: &str| results.iter().find(|r| r.name == n).unwrap();
        assert!(!by_name("chi-consistency").passed());
        assert!(!by_name("effectivity").passed());
        assert!(by_name("chi-consistency").counterexample.as_ref().unwrap().contains("O("));
    }
}
