//! One-sided μ-stability certificates for rank-2 bundles on the blow-up.
//!
//! Nothing here can prove instability: the available bounds on `h⁰` only go
//! one way, so verdicts are `Stable` or `Inconclusive` / `Unknown`.

use std::fmt;

use crate::chow::{CurveClass, DivisorClass, Geometry};
use crate::cohomology::{h_line_f, is_effective};
use crate::error::{Error, Result};
use crate::monad::{best_upper_bound, monad_chern, MonadTerms};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StabilityMode {
    /// `h⁰(E(−aξ−bf)) = 0` whenever `4a+3b ≥ μ`.
    #[default]
    Stable,
    /// The same for `4a+3b > μ`.
    Semistable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistBound {
    pub a: i64,
    pub b: i64,
    /// Upper bound on `h⁰(E(−aξ−bf))`.
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable {
        /// Number of frontier twists whose bound was checked.
        frontier_checked: usize,
        /// Lattice points of the box shown to dominate a checked twist.
        dominated_points: usize,
    },
    Inconclusive {
        frontier_checked: usize,
        /// The first frontier twist with a non-zero bound, if any.
        witness: Option<TwistBound>,
        /// A point of the box not dominating the frontier, if the
        /// monotonicity argument broke down.
        undominated: Option<(i64, i64)>,
    },
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityVerdict::Stable { .. })
    }
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityVerdict::Stable { frontier_checked, .. } => {
                write!(f, "stable ({frontier_checked} frontier twists with h0 bound 0)")
            }
            StabilityVerdict::Inconclusive { witness: Some(w), .. } => {
                write!(f, "inconclusive: h0 bound {} at (a,b)=({},{})", w.bound, w.a, w.b)
            }
            StabilityVerdict::Inconclusive { undominated: Some((a, b)), .. } => {
                write!(f, "inconclusive: ({a},{b}) dominates no frontier twist")
            }
            StabilityVerdict::Inconclusive { .. } => f.write_str("inconclusive"),
        }
    }
}

fn degree(a: i64, b: i64) -> i64 {
    4 * a + 3 * b
}

/// Hoppe scan over the slab `c ≤ 4a+3b ≤ c+3`, `|a| ≤ box`, where `c` is
/// `0` for stability and `1` for semistability.
///
/// Every twist `(a, b)` with `|a|, |b| ≤ box` and `4a+3b ≥ c` is checked to
/// differ from some frontier twist by an effective class, so vanishing on the
/// frontier propagates to it.
///
/// A frontier twist is cleared when its `h⁰` bound is zero, when its
/// ξ-degree exceeds [`fibre_splitting_bound`] (then `E(−D)` has no sections
/// on any fibre of `π`, and the fibres cover `F`), or when it exceeds a
/// cleared twist by an effective class.
pub fn hoppe_scan(terms: &MonadTerms, search_box: u32, mode: StabilityMode) -> Result<StabilityVerdict> {
    if terms.geometry != Geometry::BlowupP3 {
        return Err(Error::GeometryMismatch { left: terms.geometry, right: Geometry::BlowupP3 });
    }
    let c = monad_chern(terms)?;
    if !c.c1.is_zero() {
        return Err(Error::Precondition("hoppe_scan needs slope-0 monad cohomology".into()));
    }
    let low = match mode {
        StabilityMode::Stable => 0,
        StabilityMode::Semistable => 1,
    };
    let n = search_box as i64;
    let frontier: Vec<(i64, i64)> = (-n..=n)
        .flat_map(|a| {
            // 4a + 3b ∈ [low, low + 3] pins b to at most two values
            let lo_b = (low - 4 * a).div_euclid(3) - 1;
            (lo_b..=lo_b + 3).filter(move |b| (low..=low + 3).contains(&degree(a, *b))).map(move |b| (a, b))
        })
        .collect();

    let bounds: Vec<u64> = frontier
        .iter()
        .map(|&(a, b)| best_upper_bound(terms, &DivisorClass::blowup(-a, -b), 0))
        .collect::<Result<_>>()?;
    // h⁰(E(−D−D')) ≤ h⁰(E(−D)) for effective D', so a twist is cleared once it
    // exceeds an already cleared one by an effective class
    let k_max = fibre_splitting_bound(terms)? as i64;
    let mut cleared: Vec<bool> = bounds.iter().zip(&frontier).map(|(bd, &(a, _))| *bd == 0 || a > k_max).collect();
    loop {
        let mut changed = false;
        for i in 0..frontier.len() {
            if cleared[i] {
                continue;
            }
            let (a, b) = frontier[i];
            if (0..frontier.len()).any(|j| cleared[j] && is_effective(a - frontier[j].0, b - frontier[j].1)) {
                cleared[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if let Some(i) = cleared.iter().position(|c| !c) {
        let (a, b) = frontier[i];
        return Ok(StabilityVerdict::Inconclusive {
            frontier_checked: frontier.len(),
            witness: Some(TwistBound { a, b, bound: bounds[i] }),
            undominated: None,
        });
    }

    let mut dominated = 0;
    for a in -n..=n {
        for b in -n..=n {
            if degree(a, b) < low {
                continue;
            }
            let ok = frontier.iter().any(|&(fa, fb)| is_effective(a - fa, b - fb));
            if !ok {
                return Ok(StabilityVerdict::Inconclusive {
                    frontier_checked: frontier.len(),
                    witness: None,
                    undominated: Some((a, b)),
                });
            }
            dominated += 1;
        }
    }
    Ok(StabilityVerdict::Stable { frontier_checked: frontier.len(), dominated_points: dominated })
}

/// Bound on `k` with `E|_L ≅ O(k) ⊕ O(−k)` for every fibre `L` of `π`.
///
/// `k = h⁰(E|_L(−1)) ≤ h¹(C⁻¹|_L(−1)) + h⁰(C⁰|_L(−1))`; on `L` a term
/// `O(aξ+bf)` restricts to `O(a)` and `π*Ω¹(aξ+bf)` to `O(a)²`.
pub fn fibre_splitting_bound(terms: &MonadTerms) -> Result<u64> {
    if terms.geometry != Geometry::BlowupP3 {
        return Err(Error::GeometryMismatch { left: terms.geometry, right: Geometry::BlowupP3 });
    }
    let on_fibre = |degree: i32, h: fn(i64) -> u64| -> u64 {
        terms.degree(degree).iter().map(|(t, m)| m * t.rank() as u64 * h(t.divisor().coords[0] - 1)).sum()
    };
    let h0 = |d: i64| (d + 1).max(0) as u64;
    let h1 = |d: i64| (-d - 1).max(0) as u64;
    Ok(on_fibre(-1, h1) + on_fibre(0, h0))
}

/// Class of the curve `C` in `0 → O(3λξ−4λf) → E → I_C(−3λξ+4λf) → 0`,
/// `(α−15λ²)ξ² + (β+16λ²)f²`, checked against `c₂(E)` in the Chow ring.
pub fn destabilizer_curve_class(alpha: i64, beta: i64, lambda: i64) -> Result<CurveClass> {
    if lambda == 0 {
        return Err(Error::ZeroLambda);
    }
    let l2 = lambda * lambda;
    let class = CurveClass::blowup(alpha - 15 * l2, beta + 16 * l2);
    let d = DivisorClass::blowup(3 * lambda, -4 * lambda);
    let product = d.intersect(&-d.clone())?;
    assert_eq!(product.checked_add(&class)?, CurveClass::blowup(alpha, beta), "destabilizer class");
    Ok(class)
}

pub const OPEN_STABILITY_QUESTION: &str = "Is every instanton bundle on F μ-stable?";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuStabilityVerdict {
    Stable,
    Unknown { open_question: &'static str },
}

/// μ-stability of any instanton with charge `αξ² + βf²`: settled when
/// `α ≤ 14`, open otherwise.
pub fn mu_stability_verdict(alpha: i64, _beta: i64) -> MuStabilityVerdict {
    if alpha <= 14 {
        MuStabilityVerdict::Stable
    } else {
        MuStabilityVerdict::Unknown { open_question: OPEN_STABILITY_QUESTION }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EliminationReason {
    /// Split with `4a+3b ≠ 0`: one summand has positive slope. Witness `4a+3b`.
    SlopeObstruction,
    /// Split with `a = b = 0`: `E = O²`. Witness `h⁰(E) = 2`.
    SectionsObstruction,
    /// The instantonic vanishing `h¹(E(−h)) = 0` fails. Witness a lower bound on `h¹(E(−h))`.
    InstantonicVanishing,
    /// Non-split extensions do not exist: `h¹(O(−2aξ−2bf)) = 0`.
    NoExtension,
    /// `α + β = −(a+b)² < 0`. Witness `α+β`.
    ChargeNotMovable,
    /// `2α+β = a² < 2`. Witness `a²`.
    ChargeBelowMinimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchResult {
    pub eliminated: bool,
    pub reason: EliminationReason,
    pub witness: i64,
}

impl BranchResult {
    fn eliminated(reason: EliminationReason, witness: i64) -> Self {
        Self { eliminated: true, reason, witness }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtensionAnalysis {
    pub a: i64,
    pub b: i64,
    pub split: BranchResult,
    pub nonsplit: BranchResult,
}

impl ExtensionAnalysis {
    pub fn eliminated(&self) -> bool {
        self.split.eliminated && self.nonsplit.eliminated
    }
}

/// Rules out instantons `E` in `0 → O(−aξ−bf) → E → O(aξ+bf) → 0`, in both
/// the split and the non-split case.
pub fn extension_eliminator(a: i64, b: i64) -> ExtensionAnalysis {
    ExtensionAnalysis { a, b, split: split_branch(a, b), nonsplit: nonsplit_branch(a, b) }
}

fn split_branch(a: i64, b: i64) -> BranchResult {
    let mu = degree(a, b);
    if mu != 0 {
        return BranchResult::eliminated(EliminationReason::SlopeObstruction, mu);
    }
    let lambda = a / 3;
    debug_assert_eq!((a, b), (3 * lambda, -4 * lambda));
    if lambda == 0 {
        return BranchResult::eliminated(EliminationReason::SectionsObstruction, 2);
    }
    // the sum is symmetric in ±λ
    let l = lambda.abs();
    let h1 = h_line_f(1, -3 * l - 1, 4 * l - 1) as i64;
    BranchResult { eliminated: h1 > 0, reason: EliminationReason::InstantonicVanishing, witness: h1 }
}

fn nonsplit_branch(a: i64, b: i64) -> BranchResult {
    if h_line_f(1, -2 * a, -2 * b) == 0 {
        return BranchResult::eliminated(EliminationReason::NoExtension, 0);
    }
    assert!(a >= 1 && b <= -1, "non-split extension with a={a}, b={b}");
    // c₂(E) = −(a² + 2ab)ξ² − b²f²
    let alpha = -(a * a + 2 * a * b);
    let beta = -b * b;
    if alpha + beta < 0 {
        return BranchResult::eliminated(EliminationReason::ChargeNotMovable, alpha + beta);
    }
    debug_assert_eq!(b, -a);
    let pairing = 2 * alpha + beta;
    if pairing < 2 {
        return BranchResult::eliminated(EliminationReason::ChargeBelowMinimum, pairing);
    }
    // h⁰ of the quotient twisted by −h vanishes, so h¹(E(−h)) ≥ h¹ of the sub twisted by −h
    assert_eq!(h_line_f(0, a - 1, -a - 1), 0);
    let h1 = h_line_f(1, -a - 1, a - 1) as i64;
    BranchResult { eliminated: h1 > 0, reason: EliminationReason::InstantonicVanishing, witness: h1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::SheafTerm;
    use crate::instanton::InstantonInvariants;
    use crate::monad::synthesize_monad_f;

    #[test]
    fn destabilizer_examples() {
        assert_eq!(destabilizer_curve_class(14, 0, 1).unwrap(), CurveClass::blowup(-1, 16));
        assert_eq!(destabilizer_curve_class(15, 0, 1).unwrap(), CurveClass::blowup(0, 16));
        assert_eq!(destabilizer_curve_class(7, 3, 2).unwrap(), CurveClass::blowup(7 - 60, 3 + 64));
        assert_eq!(destabilizer_curve_class(1, 1, 0), Err(Error::ZeroLambda));
        let h = DivisorClass::blowup(1, 1);
        for l in -5..=5 {
            assert_eq!(h.square().unwrap().pair(&DivisorClass::blowup(3 * l, -4 * l)).unwrap(), 0);
        }
    }

    #[test]
    fn verdicts() {
        assert_eq!(mu_stability_verdict(14, 0), MuStabilityVerdict::Stable);
        assert!(matches!(mu_stability_verdict(15, -20), MuStabilityVerdict::Unknown { .. }));
        assert_eq!(mu_stability_verdict(1, 0), MuStabilityVerdict::Stable);
    }

    #[test]
    fn extension_examples() {
        let r = extension_eliminator(3, -4);
        assert!(r.eliminated());
        assert_eq!((r.split.reason, r.split.witness), (EliminationReason::InstantonicVanishing, 10));
        let r = extension_eliminator(2, -2);
        assert_eq!((r.nonsplit.reason, r.nonsplit.witness), (EliminationReason::InstantonicVanishing, 1));
        let r = extension_eliminator(1, -1);
        assert_eq!((r.nonsplit.reason, r.nonsplit.witness), (EliminationReason::ChargeBelowMinimum, 1));
        assert_eq!(extension_eliminator(0, 0).split.reason, EliminationReason::SectionsObstruction);
        for a in -8..=8 {
            for b in -8..=8 {
                assert!(extension_eliminator(a, b).eliminated(), "({a},{b})");
            }
        }
    }

    #[test]
    fn fibre_bound() {
        for (a, b) in [(0, 2), (0, 5), (1, 0), (3, 2)] {
            let m = synthesize_monad_f(&InstantonInvariants::earnest(a, b)).unwrap();
            assert_eq!(fibre_splitting_bound(&m).unwrap(), 2 * a as u64);
        }
    }

    #[test]
    fn hoppe_certified() {
        for (a, b) in [(1, 0), (0, 2), (0, 3), (0, 5)] {
            let m = synthesize_monad_f(&InstantonInvariants::earnest(a, b)).unwrap();
            let v = hoppe_scan(&m, 6, StabilityMode::Stable).unwrap();
            assert!(v.is_stable(), "({a},{b}): {v}");
        }
    }

    #[test]
    fn hoppe_degenerate() {
        let m = MonadTerms::empty(Geometry::BlowupP3).with(0, SheafTerm::line(0, 0), 2);
        let v = hoppe_scan(&m, 6, StabilityMode::Stable).unwrap();
        assert!(!v.is_stable());
    }
}
