use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer coefficients for Chow classes and Chern data.
///
/// Implemented for every signed integer type from `num` that can be built
/// from machine integers, in practice `i64`, `i128` and `BigInt`.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type holds an i64")
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

pub type Rational<T> = Ratio<T>;

/// Returns `Some(n)` when the rational is an integer.
pub fn as_integer<T: Scalar>(q: &Ratio<T>) -> Option<T> {
    q.is_integer().then(|| q.to_integer())
}

/// `n choose k` for a non-negative `n` as a scalar.
pub(crate) fn choose<T: Scalar>(n: u32, k: u32) -> T {
    if k > n {
        return T::zero();
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    T::from_u128(acc).expect("binomial fits the scalar type")
}
