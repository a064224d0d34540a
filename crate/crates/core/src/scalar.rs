//! Coefficient fields.
//!
//! Every algebraic routine in the crate is generic over [`Scalar`], an exact
//! field. Only rational types implement it: the computations decide whether
//! coefficients vanish, which floating point cannot do reliably.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact field of characteristic zero.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + Signed + FromPrimitive
{
    /// Whether the value is in its canonical representation.
    fn is_canonical(&self) -> bool;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the scalar type")
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + FromPrimitive,
    Ratio<I>: FromPrimitive,
{
    fn is_canonical(&self) -> bool {
        let (n, d) = (self.numer(), self.denom());
        d.is_positive() && n.gcd(d).is_one()
    }
}

#[inline]
pub(crate) fn debug_assert_canonical<T: Scalar>(v: &T) {
    debug_assert!(v.is_canonical(), "non-canonical coefficient {v:?}");
}

/// Binomial coefficient `C(n, k)` computed in the scalar field.
pub fn binomial<T: Scalar>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_u64(n - i).expect("fits") / T::from_u64(i + 1).expect("fits");
    }
    acc
}
