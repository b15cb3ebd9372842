//! Chern classes of twists and sums, Hirzebruch-Riemann-Roch, slopes and
//! Hilbert polynomials.
//!
//! Everything is exact: intermediate values live in `Ratio<T>` and the Euler
//! characteristic is required to come out integral.

use num_rational::Ratio;
use num_traits::Zero;

use crate::chow::{CurveClass, DivisorClass, Geometry};
use crate::error::{Error, Result};
use crate::scalar::{as_integer, choose, Scalar};

/// `(rank, c₁, c₂, c₃)` of a sheaf on a threefold.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChernData<T = i64> {
    pub rank: u32,
    pub c1: DivisorClass<T>,
    pub c2: CurveClass<T>,
    pub c3: T,
}

impl<T: Scalar> ChernData<T> {
    pub fn new(rank: u32, c1: DivisorClass<T>, c2: CurveClass<T>, c3: T) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        if c1.geometry != c2.geometry {
            return Err(Error::GeometryMismatch { left: c1.geometry, right: c2.geometry });
        }
        Ok(Self { rank, c1, c2, c3 })
    }

    pub fn geometry(&self) -> Geometry {
        self.c1.geometry
    }

    /// The structure sheaf.
    pub fn trivial(geometry: Geometry, rank: u32) -> Self {
        Self { rank: rank.max(1), c1: DivisorClass::zero(geometry), c2: CurveClass::zero(geometry), c3: T::zero() }
    }

    pub fn line_bundle(d: DivisorClass<T>) -> Self {
        let g = d.geometry;
        Self { rank: 1, c1: d, c2: CurveClass::zero(g), c3: T::zero() }
    }

    /// Rank-2 data with vanishing c₁ and c₃, the shape of an instanton.
    pub fn rank_two(c2: CurveClass<T>) -> Self {
        let g = c2.geometry;
        Self { rank: 2, c1: DivisorClass::zero(g), c2, c3: T::zero() }
    }

    /// Chern data of `F ⊗ O(d)`.
    pub fn twist(&self, d: &DivisorClass<T>) -> Result<Self> {
        let r = self.rank;
        let rank_t = T::from_u32(r).expect("rank fits");
        let dd = d.square()?;
        let c1d = self.c1.intersect(d)?;
        let c1 = self.c1.checked_add(&d.scale(&rank_t))?;
        let c2 = self
            .c2
            .checked_add(&c1d.scale(&T::from_u32(r - 1).unwrap()))?
            .checked_add(&dd.scale(&choose::<T>(r, 2)))?;
        let c3 = self.c3.clone()
            + (rank_t - T::from_int(2)) * self.c2.pair(d)?
            + choose::<T>(r - 1, 2) * dd.pair(&self.c1)?
            + choose::<T>(r, 3) * dd.pair(d)?;
        Ok(Self { rank: r, c1, c2, c3 })
    }

    /// Whitney sum `c(F ⊕ G) = c(F)c(G)`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let c1 = self.c1.checked_add(&other.c1)?;
        let c2 = self.c2.checked_add(&other.c2)?.checked_add(&self.c1.intersect(&other.c1)?)?;
        let c3 = self.c3.clone() + other.c3.clone() + self.c2.pair(&other.c1)? + other.c2.pair(&self.c1)?;
        Ok(Self { rank: self.rank + other.rank, c1, c2, c3 })
    }

    /// `F^{⊕n}`; `None` when `n = 0`.
    pub fn power_sum(&self, n: u64) -> Result<Option<Self>> {
        let mut acc: Option<Self> = None;
        for _ in 0..n {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => a.direct_sum(self)?,
            });
        }
        Ok(acc)
    }
}

/// Total Chern class `1 + c₁ + c₂ + c₃` with rank tracked separately,
/// allowing formal quotients of rank-graded data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalChern<T = i64> {
    pub rank: i64,
    pub c1: DivisorClass<T>,
    pub c2: CurveClass<T>,
    pub c3: T,
}

impl<T: Scalar> TotalChern<T> {
    pub fn one(geometry: Geometry) -> Self {
        Self { rank: 0, c1: DivisorClass::zero(geometry), c2: CurveClass::zero(geometry), c3: T::zero() }
    }

    pub fn of(c: &ChernData<T>) -> Self {
        Self { rank: c.rank as i64, c1: c.c1.clone(), c2: c.c2.clone(), c3: c.c3.clone() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(Self {
            rank: self.rank + o.rank,
            c1: self.c1.checked_add(&o.c1)?,
            c2: self.c2.checked_add(&o.c2)?.checked_add(&self.c1.intersect(&o.c1)?)?,
            c3: self.c3.clone() + o.c3.clone() + self.c2.pair(&o.c1)? + o.c2.pair(&self.c1)?,
        })
    }

    /// `self / o` in the truncated ring, ranks subtracted.
    pub fn div(&self, o: &Self) -> Result<Self> {
        let c1 = self.c1.checked_add(&-o.c1.clone())?;
        let c2 = self.c2.checked_add(&-o.c2.clone())?.checked_add(&-c1.intersect(&o.c1)?)?;
        let c3 = self.c3.clone() - o.c3.clone() - c2.pair(&o.c1)? - o.c2.pair(&c1)?;
        Ok(Self { rank: self.rank - o.rank, c1, c2, c3 })
    }
}

/// χ(F) by Hirzebruch-Riemann-Roch on a Fano threefold:
///
/// `r·χ(O) + (c₁³ − 3c₁c₂ + 3c₃)/6 − (ωc₁² − 2ωc₂)/4 + (ω²c₁ + c₂(Ω)c₁)/12`.
pub fn euler_characteristic<T: Scalar>(c: &ChernData<T>) -> Result<T> {
    let q = euler_characteristic_rational(c)?;
    as_integer(&q).ok_or_else(|| Error::NonIntegral(q.to_string()))
}

pub(crate) fn euler_characteristic_rational<T: Scalar>(c: &ChernData<T>) -> Result<Ratio<T>> {
    let geom = c.geometry().descriptor();
    let omega = geom.canonical::<T>()?;
    let c2_omega = geom.c2_cotangent::<T>()?;
    let c1 = &c.c1;
    let c1_sq = c1.square()?;
    let t = |v: i64| T::from_int(v);

    let ch3 = c1_sq.pair(c1)? - t(3) * c.c2.pair(c1)? + t(3) * c.c3.clone();
    let td1_term = c1_sq.pair(&omega)? - t(2) * c.c2.pair(&omega)?;
    let td2_term = omega.square()?.pair(c1)? + c2_omega.pair(c1)?;

    let rank = T::from_u32(c.rank).unwrap() * t(geom.chi_structure_sheaf);
    Ok(Ratio::from_integer(rank) + Ratio::new(ch3, t(6)) - Ratio::new(td1_term, t(4)) + Ratio::new(td2_term, t(12)))
}

/// Closed form of `χ(E(aξ+bf))` on the blow-up for rank-2 `E` with `c₁ = 0`,
/// `c₂ = αξ² + βf²`.
pub fn rr_blowup<T: Scalar>(a: T, b: T, alpha: T, beta: T) -> Ratio<T> {
    let t = |v: i64| T::from_int(v);
    let r = |v: T| Ratio::from_integer(v);
    let (a2, b2) = (a.clone() * a.clone(), b.clone() * b.clone());
    Ratio::new(a2.clone() * a.clone(), t(3))
        + r(a2.clone() * b.clone())
        + r(a.clone() * b2.clone())
        + r(t(2) * a2)
        + r(b2)
        + r(t(4) * a.clone() * b.clone())
        + r(t(3) * b.clone())
        + Ratio::new(t(11) * a.clone(), t(3))
        + r(t(2))
        - r((a.clone() + b + t(2)) * alpha)
        - r((a + t(1)) * beta)
}

/// `μ = c₁·H²/rank`.
pub fn slope<T: Scalar>(c: &ChernData<T>, polarization: &DivisorClass<T>) -> Result<Ratio<T>> {
    let num = polarization.square()?.pair(&c.c1)?;
    Ok(Ratio::new(num, T::from_u32(c.rank).unwrap()))
}

/// A polynomial of degree ≤ 3 with rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPolynomial<T: Clone + num_integer::Integer = i64> {
    pub coeffs: [Ratio<T>; 4],
}

impl<T: Scalar> CubicPolynomial<T> {
    pub fn eval(&self, x: &Ratio<T>) -> Ratio<T> {
        self.coeffs.iter().rev().fold(Ratio::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_int(&self, x: i64) -> Ratio<T> {
        self.eval(&Ratio::from_integer(T::from_int(x)))
    }

    pub fn leading(&self) -> &Ratio<T> {
        &self.coeffs[3]
    }

    fn scaled(&self, k: &Ratio<T>) -> Self {
        Self { coeffs: self.coeffs.clone().map(|c| c / k.clone()) }
    }
}

/// `t ↦ χ(F(tH))`, interpolated exactly through `t = 0, 1, 2, 3`.
pub fn hilbert_polynomial<T: Scalar>(c: &ChernData<T>, polarization: &DivisorClass<T>) -> Result<CubicPolynomial<T>> {
    let mut values = Vec::with_capacity(4);
    for t in 0..4 {
        let twisted = c.twist(&polarization.scale(&T::from_int(t)))?;
        values.push(Ratio::from_integer(euler_characteristic(&twisted)?));
    }
    // forward differences Δᵏp(0)
    let mut diffs = values.clone();
    let mut deltas = Vec::with_capacity(4);
    for k in 0..4 {
        deltas.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
        if k == 3 {
            break;
        }
    }
    let q = |n: i64, d: i64| Ratio::new(T::from_int(n), T::from_int(d));
    // p(t) = Δ⁰ + Δ¹ t + Δ² (t² − t)/2 + Δ³ (t³ − 3t² + 2t)/6
    let [d0, d1, d2, d3] = [deltas[0].clone(), deltas[1].clone(), deltas[2].clone(), deltas[3].clone()];
    let coeffs =
        [d0, d1 - d2.clone() * q(1, 2) + d3.clone() * q(1, 3), d2 * q(1, 2) - d3.clone() * q(1, 2), d3 * q(1, 6)];
    Ok(CubicPolynomial { coeffs })
}

/// Hilbert polynomial divided by the rank.
pub fn reduced_hilbert_polynomial<T: Scalar>(
    c: &ChernData<T>,
    polarization: &DivisorClass<T>,
) -> Result<CubicPolynomial<T>> {
    let p = hilbert_polynomial(c, polarization)?;
    Ok(p.scaled(&Ratio::from_integer(T::from_u32(c.rank).unwrap())))
}

/// Chern data of `π*Ω¹_{P²}` on the blow-up.
pub fn pullback_cotangent<T: Scalar>() -> ChernData<T> {
    ChernData {
        rank: 2,
        c1: DivisorClass::blowup(T::zero(), T::from_int(-3)),
        c2: CurveClass::blowup(T::zero(), T::from_int(3)),
        c3: T::zero(),
    }
}
