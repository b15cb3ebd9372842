//! Chow rings of the blow-up of P³ at a point and of the flag threefold.
//!
//! Classes are stored by graded part in a fixed basis:
//!
//! | geometry        | degree 1        | degree 2            | relations                          |
//! |-----------------|-----------------|---------------------|------------------------------------|
//! | `BlowupP3`      | `aξ + bf`       | `αξ² + βf²`         | `f³ = 0`, `ξ² = ξf`, `ξ³ = pt`     |
//! | `FlagThreefold` | `a₁h₁ + a₂h₂`   | `k₁h₁² + k₂h₂²`     | `h₁h₂ = h₁² + h₂²`, `hᵢ³ = 0`      |
//!
//! Products landing above degree 3 vanish and are dropped.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Geometry {
    /// The blow-up F of P³ at a point, degree 7 in P⁸.
    BlowupP3,
    /// The flag threefold, a hyperplane section of P²×P² ⊂ P⁸.
    FlagThreefold,
    /// Projective 3-space; only scalar index data is used.
    P3,
    /// A descriptor carrying only index and degree.
    Abstract,
}

impl Geometry {
    pub fn has_chow_ring(self) -> bool {
        matches!(self, Geometry::BlowupP3 | Geometry::FlagThreefold)
    }

    pub fn descriptor(self) -> GeometryDescriptor {
        match self {
            Geometry::BlowupP3 => GeometryDescriptor::blowup_p3(),
            Geometry::FlagThreefold => GeometryDescriptor::flag_threefold(),
            Geometry::P3 => GeometryDescriptor::p3(),
            Geometry::Abstract => GeometryDescriptor::scalar_only(1, 1),
        }
    }

    fn require_chow(self) -> Result<()> {
        if self.has_chow_ring() {
            Ok(())
        } else {
            Err(Error::NoChowRing(self))
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::BlowupP3 => "blowup_p3",
            Geometry::FlagThreefold => "flag",
            Geometry::P3 => "p3",
            Geometry::Abstract => "abstract",
        })
    }
}

fn same_geometry(left: Geometry, right: Geometry) -> Result<Geometry> {
    if left == right {
        Ok(left)
    } else {
        Err(Error::GeometryMismatch { left, right })
    }
}

/// Numerical data of a Fano threefold with its fundamental divisor `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryDescriptor {
    pub name: Geometry,
    /// Index `i_X`: `ω_X = O(-i_X h)`.
    pub index: u32,
    /// `q_X = ⌊i_X / 2⌋`.
    pub half_index: u32,
    /// `h³`.
    pub degree: i64,
    canonical: Option<[i64; 2]>,
    c2_tangent: Option<[i64; 2]>,
    pub chi_structure_sheaf: i64,
}

impl GeometryDescriptor {
    pub fn blowup_p3() -> Self {
        GeometryDescriptor {
            name: Geometry::BlowupP3,
            index: 2,
            half_index: 1,
            degree: 7,
            canonical: Some([-2, -2]),
            // c₂(Ω_F) = 6ξf = 6ξ²
            c2_tangent: Some([6, 0]),
            chi_structure_sheaf: 1,
        }
    }

    pub fn flag_threefold() -> Self {
        GeometryDescriptor {
            name: Geometry::FlagThreefold,
            index: 2,
            half_index: 1,
            degree: 6,
            canonical: Some([-2, -2]),
            // c₂(Ω) = 6h₁h₂ = 6h₁² + 6h₂²
            c2_tangent: Some([6, 6]),
            chi_structure_sheaf: 1,
        }
    }

    pub fn p3() -> Self {
        Self {
            name: Geometry::P3,
            index: 4,
            half_index: 2,
            degree: 1,
            canonical: None,
            c2_tangent: None,
            chi_structure_sheaf: 1,
        }
    }

    /// A geometry known only through its index and degree.
    pub fn scalar_only(index: u32, degree: i64) -> Self {
        Self {
            name: Geometry::Abstract,
            index,
            half_index: index / 2,
            degree,
            canonical: None,
            c2_tangent: None,
            chi_structure_sheaf: 1,
        }
    }

    /// Class of ω_X.
    pub fn canonical<T: Scalar>(&self) -> Result<DivisorClass<T>> {
        let [a, b] = self.canonical.ok_or(Error::NoChowRing(self.name))?;
        Ok(DivisorClass::new(self.name, T::from_int(a), T::from_int(b)))
    }

    /// c₂(Ω¹_X) as a curve class.
    pub fn c2_cotangent<T: Scalar>(&self) -> Result<CurveClass<T>> {
        let [a, b] = self.c2_tangent.ok_or(Error::NoChowRing(self.name))?;
        Ok(CurveClass::new(self.name, T::from_int(a), T::from_int(b)))
    }

    /// The fundamental divisor `h`.
    pub fn fundamental<T: Scalar>(&self) -> Result<DivisorClass<T>> {
        self.name.require_chow()?;
        Ok(DivisorClass::new(self.name, T::one(), T::one()))
    }
}

/// A divisor class, `aξ + bf` on F or `a₁h₁ + a₂h₂` on the flag threefold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass<T = i64> {
    pub geometry: Geometry,
    pub coords: [T; 2],
}

/// A curve class, `αξ² + βf²` on F or `k₁h₁² + k₂h₂²` on the flag threefold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass<T = i64> {
    pub geometry: Geometry,
    pub coords: [T; 2],
}

macro_rules! class_common {
    ($ty:ident) => {
        impl<T: Scalar> $ty<T> {
            pub fn new(geometry: Geometry, first: T, second: T) -> Self {
                Self { geometry, coords: [first, second] }
            }

            pub fn zero(geometry: Geometry) -> Self {
                Self::new(geometry, T::zero(), T::zero())
            }

            pub fn is_zero(&self) -> bool {
                self.coords[0].is_zero() && self.coords[1].is_zero()
            }

            pub fn first(&self) -> &T {
                &self.coords[0]
            }

            pub fn second(&self) -> &T {
                &self.coords[1]
            }

            pub fn checked_add(&self, other: &Self) -> Result<Self> {
                let g = same_geometry(self.geometry, other.geometry)?;
                Ok(Self::new(
                    g,
                    self.coords[0].clone() + other.coords[0].clone(),
                    self.coords[1].clone() + other.coords[1].clone(),
                ))
            }

            pub fn scale(&self, k: &T) -> Self {
                Self::new(self.geometry, self.coords[0].clone() * k.clone(), self.coords[1].clone() * k.clone())
            }
        }

        // Adding classes of different varieties is a programming error; the
        // checked variants exist for untrusted input.
        impl<T: Scalar> Add for $ty<T> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                self.checked_add(&rhs).expect("adding classes of different geometries")
            }
        }

        impl<'a, T: Scalar> Add<&'a $ty<T>> for &'a $ty<T> {
            type Output = $ty<T>;
            fn add(self, rhs: Self) -> $ty<T> {
                self.checked_add(rhs).expect("adding classes of different geometries")
            }
        }

        impl<T: Scalar> Neg for $ty<T> {
            type Output = Self;
            fn neg(self) -> Self {
                let [a, b] = self.coords;
                Self::new(self.geometry, -a, -b)
            }
        }

        impl<T: Scalar> Sub for $ty<T> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                self + (-rhs)
            }
        }

        impl<'a, T: Scalar> Sub<&'a $ty<T>> for &'a $ty<T> {
            type Output = $ty<T>;
            fn sub(self, rhs: Self) -> $ty<T> {
                self.clone() - rhs.clone()
            }
        }
    };
}

class_common!(DivisorClass);
class_common!(CurveClass);

impl<T: Scalar> DivisorClass<T> {
    pub fn blowup(a: T, b: T) -> Self {
        Self::new(Geometry::BlowupP3, a, b)
    }

    pub fn flag(a1: T, a2: T) -> Self {
        Self::new(Geometry::FlagThreefold, a1, a2)
    }

    /// Intersection product of two divisors.
    pub fn intersect(&self, other: &Self) -> Result<CurveClass<T>> {
        let g = same_geometry(self.geometry, other.geometry)?;
        g.require_chow()?;
        let [a, b] = &self.coords;
        let [c, d] = &other.coords;
        let coords = match g {
            // (aξ+bf)(cξ+df) = (ac+ad+bc)ξ² + bd f²
            Geometry::BlowupP3 => {
                [a.clone() * c.clone() + a.clone() * d.clone() + b.clone() * c.clone(), b.clone() * d.clone()]
            }
            // h₁h₂ = h₁² + h₂²
            Geometry::FlagThreefold => {
                let mixed = a.clone() * d.clone() + b.clone() * c.clone();
                [a.clone() * c.clone() + mixed.clone(), b.clone() * d.clone() + mixed]
            }
            _ => unreachable!(),
        };
        Ok(CurveClass { geometry: g, coords })
    }

    pub fn square(&self) -> Result<CurveClass<T>> {
        self.intersect(self)
    }

    /// Degree of `D³`.
    pub fn cube(&self) -> Result<T> {
        self.square()?.pair(self)
    }
}

impl<T: Scalar> CurveClass<T> {
    pub fn blowup(alpha: T, beta: T) -> Self {
        Self::new(Geometry::BlowupP3, alpha, beta)
    }

    pub fn flag(k1: T, k2: T) -> Self {
        Self::new(Geometry::FlagThreefold, k1, k2)
    }

    /// Degree of the zero-cycle `C·D`.
    pub fn pair(&self, d: &DivisorClass<T>) -> Result<T> {
        let g = same_geometry(self.geometry, d.geometry)?;
        g.require_chow()?;
        let [al, be] = &self.coords;
        let [a, b] = &d.coords;
        Ok(match g {
            // ξ³ = ξ²f = ξf² = 1, f³ = 0
            Geometry::BlowupP3 => al.clone() * a.clone() + al.clone() * b.clone() + be.clone() * a.clone(),
            // h₁²h₂ = h₁h₂² = 1, hᵢ³ = 0
            Geometry::FlagThreefold => al.clone() * b.clone() + be.clone() * a.clone(),
            _ => unreachable!(),
        })
    }
}

/// Degree of `c·d` for a curve class and a divisor class.
pub fn pair_curve_divisor<T: Scalar>(c: &CurveClass<T>, d: &DivisorClass<T>) -> Result<T> {
    c.pair(d)
}

impl<T: Scalar> Mul<&DivisorClass<T>> for &DivisorClass<T> {
    type Output = CurveClass<T>;
    fn mul(self, rhs: &DivisorClass<T>) -> CurveClass<T> {
        self.intersect(rhs).expect("divisor product")
    }
}

impl<T: Scalar> Mul<&DivisorClass<T>> for &CurveClass<T> {
    type Output = T;
    fn mul(self, rhs: &DivisorClass<T>) -> T {
        self.pair(rhs).expect("curve-divisor product")
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for DivisorClass<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = match self.geometry {
            Geometry::FlagThreefold => ["h₁", "h₂"],
            _ => ["ξ", "f"],
        };
        write_linear(f, &self.coords, names)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for CurveClass<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = match self.geometry {
            Geometry::FlagThreefold => ["h₁²", "h₂²"],
            _ => ["ξ²", "f²"],
        };
        write_linear(f, &self.coords, names)
    }
}

fn write_linear<T: Scalar>(f: &mut fmt::Formatter<'_>, coords: &[T; 2], names: [&str; 2]) -> fmt::Result {
    let mut wrote = false;
    for (c, name) in coords.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if wrote {
            f.write_str(if neg { "-" } else { "+" })?;
        } else if neg {
            f.write_str("-")?;
        }
        if !mag.is_one() {
            write!(f, "{mag}")?;
        }
        f.write_str(name)?;
        wrote = true;
    }
    if !wrote {
        f.write_str("0")?;
    }
    Ok(())
}

/// A general element of the Chow ring, stored by graded part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedClass<T = i64> {
    pub geometry: Geometry,
    pub deg0: T,
    pub deg1: DivisorClass<T>,
    pub deg2: CurveClass<T>,
    pub deg3: T,
}

impl<T: Scalar> GradedClass<T> {
    pub fn zero(geometry: Geometry) -> Self {
        Self {
            geometry,
            deg0: T::zero(),
            deg1: DivisorClass::zero(geometry),
            deg2: CurveClass::zero(geometry),
            deg3: T::zero(),
        }
    }

    pub fn one(geometry: Geometry) -> Self {
        Self { deg0: T::one(), ..Self::zero(geometry) }
    }

    pub fn point(geometry: Geometry, n: T) -> Self {
        Self { deg3: n, ..Self::zero(geometry) }
    }

    pub fn from_divisor(d: DivisorClass<T>) -> Self {
        Self { deg1: d.clone(), ..Self::zero(d.geometry) }
    }

    pub fn from_curve(c: CurveClass<T>) -> Self {
        Self { deg2: c.clone(), ..Self::zero(c.geometry) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let g = same_geometry(self.geometry, other.geometry)?;
        Ok(Self {
            geometry: g,
            deg0: self.deg0.clone() + other.deg0.clone(),
            deg1: self.deg1.checked_add(&other.deg1)?,
            deg2: self.deg2.checked_add(&other.deg2)?,
            deg3: self.deg3.clone() + other.deg3.clone(),
        })
    }

    /// Ring product, truncated above degree 3.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let g = same_geometry(self.geometry, other.geometry)?;
        g.require_chow()?;
        let (x, y) = (self, other);
        let deg1 = y.deg1.scale(&x.deg0).checked_add(&x.deg1.scale(&y.deg0))?;
        let deg2 =
            y.deg2.scale(&x.deg0).checked_add(&x.deg2.scale(&y.deg0))?.checked_add(&x.deg1.intersect(&y.deg1)?)?;
        let deg3 = x.deg0.clone() * y.deg3.clone()
            + x.deg3.clone() * y.deg0.clone()
            + y.deg2.pair(&x.deg1)?
            + x.deg2.pair(&y.deg1)?;
        Ok(Self { geometry: g, deg0: x.deg0.clone() * y.deg0.clone(), deg1, deg2, deg3 })
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.geometry);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Coefficient of the point class; fails unless the class is purely in degree 3.
    pub fn degree(&self) -> Result<T> {
        if !self.deg0.is_zero() || !self.deg1.is_zero() || !self.deg2.is_zero() {
            return Err(Error::NotTopDegree);
        }
        Ok(self.deg3.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi() -> DivisorClass {
        DivisorClass::blowup(1, 0)
    }
    fn f() -> DivisorClass {
        DivisorClass::blowup(0, 1)
    }
    fn h() -> DivisorClass {
        DivisorClass::blowup(1, 1)
    }

    #[test]
    fn hyperplane_square_and_cube() {
        assert_eq!(h().square().unwrap(), CurveClass::blowup(3, 1));
        let g = GradedClass::from_divisor(h());
        assert_eq!(g.pow(3).unwrap().degree().unwrap(), 7);
        let fl = GradedClass::from_divisor(DivisorClass::flag(1, 1));
        assert_eq!(fl.pow(3).unwrap().degree().unwrap(), 6);
    }

    #[test]
    fn relations() {
        assert_eq!(CurveClass::blowup(0, 1).pair(&f()).unwrap(), 0);
        assert_eq!(CurveClass::blowup(1, 0).pair(&f()).unwrap(), 1);
        assert_eq!(xi().cube().unwrap(), 1);
        assert_eq!(xi().intersect(&f()).unwrap(), CurveClass::blowup(1, 0));
        let e = DivisorClass::blowup(1, -1);
        assert_eq!(CurveClass::blowup(0, 1).pair(&e).unwrap(), 1);
        // E·h² = 1: the exceptional divisor is a plane
        assert_eq!(h().square().unwrap().pair(&e).unwrap(), 1);
    }

    #[test]
    fn charge_pairing() {
        for (al, be) in [(1, 0), (0, 2), (3, -1)] {
            assert_eq!(CurveClass::blowup(al, be).pair(&h()).unwrap(), 2 * al + be);
        }
    }

    #[test]
    fn degree_rejects_lower_parts() {
        assert_eq!(GradedClass::from_divisor(xi()).degree(), Err(Error::NotTopDegree));
        assert_eq!(GradedClass::<i64>::zero(Geometry::BlowupP3).degree().unwrap(), 0);
    }

    #[test]
    fn mismatch_and_p3() {
        let err = xi().intersect(&DivisorClass::flag(1, 0)).unwrap_err();
        assert!(matches!(err, Error::GeometryMismatch { .. }));
        let p = DivisorClass::new(Geometry::P3, 1i64, 0);
        assert_eq!(p.intersect(&p), Err(Error::NoChowRing(Geometry::P3)));
    }

    #[test]
    fn display() {
        assert_eq!(DivisorClass::blowup(-2, 1).to_string(), "-2ξ+f");
        assert_eq!(CurveClass::blowup(0, 0).to_string(), "0");
        assert_eq!(CurveClass::flag(2, -1).to_string(), "2h₁²-h₂²");
    }

    #[test]
    fn c2_cotangent_pairs_to_24_over_index() {
        for d in [GeometryDescriptor::blowup_p3(), GeometryDescriptor::flag_threefold()] {
            let c2 = d.c2_cotangent::<i64>().unwrap();
            let h = d.fundamental::<i64>().unwrap();
            assert_eq!(d.index as i64 * c2.pair(&h).unwrap(), 24);
        }
    }

    #[test]
    fn bigint_instantiation() {
        use num_bigint::BigInt;
        let h = DivisorClass::<BigInt>::blowup(BigInt::from(1), BigInt::from(1));
        assert_eq!(h.cube().unwrap(), BigInt::from(7));
    }
}
