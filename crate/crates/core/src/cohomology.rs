//! Closed-form cohomology dimensions of line bundles and pulled-back
//! cotangent twists on the blow-up, and of line bundles on the flag
//! threefold.
//!
//! All sums of binomials run over contiguous ranges, so with the truncated
//! convention they telescope (`Σ_{m=lo}^{hi} C(m,2) = C(hi+1,3) − C(lo,3)`)
//! and large twists are answered in constant time.

use std::fmt;

use crate::chern::{pullback_cotangent, ChernData};
use crate::chow::{DivisorClass, Geometry};
use crate::error::{Error, Result};

/// How `C(m, k)` is read when `m < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BinomialConvention {
    /// Zero whenever the top is smaller than the bottom.
    #[default]
    Truncated,
    /// The polynomial `m(m−1)⋯(m−k+1)/k!` for every integer `m`. Wrong for
    /// these formulas; kept so the invariant suites can be shown to catch it.
    Polynomial,
}

/// `C(m, k)`, zero for `m < k` (in particular for every negative `m`).
pub fn binom_nonneg(m: i64, k: u32) -> u64 {
    let v = binom_with(BinomialConvention::Truncated, m as i128, k);
    to_dim(v)
}

fn binom_with(conv: BinomialConvention, m: i128, k: u32) -> i128 {
    if conv == BinomialConvention::Truncated && m < k as i128 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc.checked_mul(m - i).expect("binomial overflow") / (i + 1);
    }
    acc
}

fn to_dim(v: i128) -> u64 {
    u64::try_from(v).expect("cohomology dimension out of range")
}

/// `Σ_{m=lo}^{hi} C(m,2)` under the truncated convention.
fn sum_binom2(lo: i128, hi: i128) -> i128 {
    if hi < lo {
        return 0;
    }
    let tail = |n: i128| binom_with(BinomialConvention::Truncated, n, 3);
    tail(hi + 1) - tail(lo)
}

/// `Σ_{x=lo}^{hi} C(x,1)·C(x−2,1)` under the truncated convention.
fn sum_omega_term(lo: i128, hi: i128) -> i128 {
    // G(n) = Σ_{x=3}^{n} x(x−2)
    fn g(n: i128) -> i128 {
        if n < 3 {
            0
        } else {
            n * (n + 1) * (2 * n + 1) / 6 - n * (n + 1) + 1
        }
    }
    if hi < lo {
        0
    } else {
        g(hi) - g(lo - 1)
    }
}

fn loop_sum(lo: i128, hi: i128, f: impl Fn(i128) -> i128) -> i128 {
    (lo..=hi).map(f).sum()
}

/// `h^i(F, O_F(aξ+bf))`.
pub fn h_line_f(i: u8, a: i64, b: i64) -> u64 {
    to_dim(h_line_f_with(BinomialConvention::Truncated, i, a, b))
}

pub(crate) fn h_line_f_with(conv: BinomialConvention, i: u8, a: i64, b: i64) -> i128 {
    let (a, b) = (a as i128, b as i128);
    // (lowest, highest) top of C(·,2) in each printed sum
    let range = match i {
        0 => (b + 2, b + 2 + a),
        1 => (b + a + 3, b + 1),
        2 => (-b - 1 - a, -b - 1),
        3 => (-b, -b - a - 2),
        _ => return 0,
    };
    match conv {
        BinomialConvention::Truncated => sum_binom2(range.0, range.1),
        BinomialConvention::Polynomial => loop_sum(range.0, range.1, |m| binom_with(conv, m, 2)),
    }
}

/// `h^i(F, π*Ω¹_{P²}(aξ+bf))`.
pub fn h_omega_f(i: u8, a: i64, b: i64) -> u64 {
    to_dim(h_omega_f_with(BinomialConvention::Truncated, i, a, b))
}

pub(crate) fn h_omega_f_with(conv: BinomialConvention, i: u8, a: i64, b: i64) -> i128 {
    let (a, b) = (a as i128, b as i128);
    // the sums are over x = first top; the second top is always x − 2
    let range = match i {
        0 => (b + 1, b + 1 + a),
        1 => (b + a + 2, b),
        2 => (-b + 1 - a, -b + 1),
        3 => (-b + 2, -b - a),
        _ => return 0,
    };
    let sum = match conv {
        BinomialConvention::Truncated => sum_omega_term(range.0, range.1),
        BinomialConvention::Polynomial => {
            loop_sum(range.0, range.1, |x| binom_with(conv, x, 1) * binom_with(conv, x - 2, 1))
        }
    };
    let special = match i {
        1 => a >= -b && -b >= 0,
        2 => a < -b && -b - 1 <= -2,
        _ => false,
    };
    if special {
        // the two kinds of branch never overlap
        assert!(conv != BinomialConvention::Truncated || sum == 0, "branches overlap at ({a},{b}) in degree {i}");
        1
    } else {
        sum
    }
}

/// `h^i(X, O_X(a₁h₁+a₂h₂))` on the flag threefold.
pub fn h_line_flag(i: u8, a1: i64, a2: i64) -> u64 {
    to_dim(h_line_flag_raw(i, a1, a2))
}

fn h_line_flag_raw(i: u8, a1: i64, a2: i64) -> i128 {
    let (x, y) = if a1 <= a2 { (a1 as i128, a2 as i128) } else { (a2 as i128, a1 as i128) };
    let nonzero = match i {
        0 => x >= 0,
        1 => x <= -2 && x + y + 1 >= 0,
        2 => y >= 0 && x + y + 3 <= 0,
        3 => y <= -2,
        _ => false,
    };
    if !nonzero {
        return 0;
    }
    ((x + 1) * (y + 1) * (x + y + 2) / 2).abs()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SheafTerm {
    /// `O(D)`.
    LineBundle(DivisorClass),
    /// `π*Ω¹_{P²} ⊗ O_F(D)`, blow-up only.
    PullbackCotangent(DivisorClass),
}

impl SheafTerm {
    pub fn line(a: i64, b: i64) -> Self {
        SheafTerm::LineBundle(DivisorClass::blowup(a, b))
    }

    pub fn omega(a: i64, b: i64) -> Self {
        SheafTerm::PullbackCotangent(DivisorClass::blowup(a, b))
    }

    pub fn flag_line(a1: i64, a2: i64) -> Self {
        SheafTerm::LineBundle(DivisorClass::flag(a1, a2))
    }

    pub fn divisor(&self) -> &DivisorClass {
        match self {
            SheafTerm::LineBundle(d) | SheafTerm::PullbackCotangent(d) => d,
        }
    }

    pub fn geometry(&self) -> Geometry {
        self.divisor().geometry
    }

    pub fn rank(&self) -> u32 {
        match self {
            SheafTerm::LineBundle(_) => 1,
            SheafTerm::PullbackCotangent(_) => 2,
        }
    }

    /// The same kind of sheaf tensored by `O(d)`.
    pub fn twisted(&self, d: &DivisorClass) -> Result<Self> {
        Ok(match self {
            SheafTerm::LineBundle(e) => SheafTerm::LineBundle(e.checked_add(d)?),
            SheafTerm::PullbackCotangent(e) => SheafTerm::PullbackCotangent(e.checked_add(d)?),
        })
    }

    fn check_supported(&self) -> Result<()> {
        let ok = match self {
            SheafTerm::LineBundle(d) => d.geometry.has_chow_ring(),
            SheafTerm::PullbackCotangent(d) => d.geometry == Geometry::BlowupP3,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedSheaf { term: self.to_string(), geometry: self.geometry() })
        }
    }

    pub fn chern(&self) -> Result<ChernData> {
        self.check_supported()?;
        match self {
            SheafTerm::LineBundle(d) => Ok(ChernData::line_bundle(d.clone())),
            SheafTerm::PullbackCotangent(d) => pullback_cotangent::<i64>().twist(d),
        }
    }
}

impl fmt::Display for SheafTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafTerm::LineBundle(d) if d.is_zero() => f.write_str("O"),
            SheafTerm::LineBundle(d) => write!(f, "O({d})"),
            SheafTerm::PullbackCotangent(d) if d.is_zero() => f.write_str("π*Ω¹"),
            SheafTerm::PullbackCotangent(d) => write!(f, "π*Ω¹({d})"),
        }
    }
}

/// `(h⁰, h¹, h², h³)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HVector(pub [u64; 4]);

impl HVector {
    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn euler(&self) -> i64 {
        let [a, b, c, d] = self.0.map(|v| i64::try_from(v).expect("dimension fits i64"));
        a - b + c - d
    }
}

/// `h^i` of a sheaf term.
pub fn h_sheaf(i: u8, t: &SheafTerm) -> Result<u64> {
    h_sheaf_with(BinomialConvention::Truncated, i, t).map(to_dim)
}

pub(crate) fn h_sheaf_with(conv: BinomialConvention, i: u8, t: &SheafTerm) -> Result<i128> {
    t.check_supported()?;
    let [a, b] = t.divisor().coords;
    Ok(match (t, t.geometry()) {
        (SheafTerm::LineBundle(_), Geometry::BlowupP3) => h_line_f_with(conv, i, a, b),
        (SheafTerm::PullbackCotangent(_), _) => h_omega_f_with(conv, i, a, b),
        _ => h_line_flag_raw(i, a, b),
    })
}

pub fn h_vector(t: &SheafTerm) -> Result<HVector> {
    let mut out = [0u64; 4];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = h_sheaf(i as u8, t)?;
    }
    Ok(HVector(out))
}

/// `O_F(aξ+bf)` has a non-zero section.
pub fn is_effective(a: i64, b: i64) -> bool {
    a >= 0 && a.checked_add(b).is_some_and(|s| s >= 0)
}

/// `O_F(aξ+bf)` is generated by global sections.
pub fn is_globally_generated(a: i64, b: i64) -> bool {
    a >= 0 && b >= 0
}

/// `|aξ+bf|` contains a smooth integral divisor.
pub fn has_smooth_integral_member(a: i64, b: i64) -> bool {
    (is_globally_generated(a, b) && (a, b) != (0, 0)) || (a, b) == (1, -1)
}
