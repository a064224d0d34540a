//! Sparse polynomials in `x` and `y` over an exact field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{binomial, debug_assert_canonical, Scalar};

/// Exponent pair `(a, b)` of the monomial `x^a y^b`.
pub type Exponent = (u32, u32);

/// A polynomial in `k[x, y]`, stored as a map from exponent pairs to
/// nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly<T> {
    terms: BTreeMap<Exponent, T>,
}

impl<T: Scalar> Default for BiPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0, 0)
    }

    /// `coeff * x^a * y^b`.
    pub fn monomial(coeff: T, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b), coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `x + y`.
    pub fn x_plus_y() -> Self {
        Self::from_terms([((1, 0), T::one()), ((0, 1), T::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> T {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(T::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &T)> {
        self.terms.iter()
    }

    /// Adds `c * x^a y^b` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: Exponent, c: T) {
        if c.is_zero() {
            return;
        }
        debug_assert_canonical(&c);
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                debug_assert_canonical(v);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by the monomial `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(p, q), v)| ((p + a, q + b), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The common total degree of all terms, or `None` for the zero
    /// polynomial and for mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|(a, b)| a + b);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    /// Coefficient of `y^j`, as a polynomial in `x`.
    pub fn y_slice(&self, j: u32) -> UniPoly<T> {
        UniPoly::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b == j)
                .map(|((a, _), c)| (*a, c.clone())),
        )
    }

    /// Substitutes `y = 1`.
    pub fn dehomogenize(&self) -> UniPoly<T> {
        UniPoly::from_terms(self.terms.iter().map(|((a, _), c)| (*a, c.clone())))
    }

    /// Largest `m` with `(x+y)^m` dividing this homogeneous polynomial.
    ///
    /// Counts the successive derivatives of `p(t, 1)` that vanish at `t = -1`.
    pub fn divisibility_order(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.homogeneous_degree().is_none() {
            return Err(Error::NonHomogeneous);
        }
        Ok(self.dehomogenize().vanishing_order_at_minus_one())
    }
}

impl<T: Scalar> Add for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Scalar> Add for BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: BiPoly<T>) -> BiPoly<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Neg for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl<T: Scalar> Neg for BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        -&self
    }
}

impl<T: Scalar> Sub for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: BiPoly<T>) -> BiPoly<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(p, q), d) in &rhs.terms {
                out.add_term((a + p, b + q), c.clone() * d.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Mul for BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: BiPoly<T>) -> BiPoly<T> {
        &self * &rhs
    }
}

/// Writes terms in decreasing `x`-exponent order, e.g.
/// `x^7 - (7/5)*x^5*y^2 - (2/5)*y^7`.
impl<T: Scalar> fmt::Display for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|((a1, b1), _), ((a2, b2), _)| a2.cmp(a1).then(b1.cmp(b2)));
        for (k, (&(a, b), c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || (a == 0 && b == 0) {
                factors.push(format_coefficient(&magnitude));
            }
            for (var, e) in [("x", a), ("y", b)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Integers print bare, proper fractions in parentheses: `3`, `(7/5)`.
pub fn format_coefficient<T: Scalar>(c: &T) -> String {
    let s = c.to_string();
    if s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}

/// A polynomial in one variable, sparse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<T> {
    terms: BTreeMap<u32, T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn zero() -> Self {
        UniPoly { terms: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, T)>>(terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let v = out.entry(e).or_insert_with(T::zero);
            *v = v.clone() + c;
        }
        out.retain(|_, v: &mut T| !v.is_zero());
        UniPoly { terms: out }
    }

    pub fn monomial(c: T, e: u32) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: u32) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &T)> {
        self.terms.iter()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    /// `p^{(j)}(-1) / j!`, the `j`-th Taylor coefficient at `-1`.
    pub fn taylor_at_minus_one(&self, j: u32) -> T {
        let mut acc = T::zero();
        for (&a, c) in &self.terms {
            if a < j {
                continue;
            }
            let term = c.clone() * binomial::<T>(a as u64, j as u64);
            if (a - j).is_multiple_of(2) {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        acc
    }

    /// Multiplicity of `t = -1` as a root; the polynomial must be nonzero.
    pub fn vanishing_order_at_minus_one(&self) -> u32 {
        assert!(!self.is_zero(), "zero polynomial vanishes to infinite order");
        let mut j = 0;
        while self.taylor_at_minus_one(j).is_zero() {
            j += 1;
        }
        j
    }
}

impl<T: Scalar> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lifted = BiPoly::from_terms(self.terms.iter().map(|(&a, c)| ((a, 0), c.clone())));
        lifted.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};
    use num_rational::Ratio;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn h(terms: &[(u32, u32, i64, i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(a, b, n, d)| ((a, b), q(n, d))))
    }

    #[test]
    fn cancellation_and_identity() {
        let p = h(&[(5, 0, 1, 1), (0, 5, 1, 1)]);
        let r = &p + &h(&[(0, 5, -1, 1)]);
        assert_eq!(r, h(&[(5, 0, 1, 1)]));
        assert_eq!(&p + &Poly::zero(), p);
        assert_eq!(&p * &Poly::one(), p);
        assert_eq!(&p * &p, h(&[(10, 0, 1, 1), (5, 5, 2, 1), (0, 10, 1, 1)]));
    }

    #[test]
    fn combination_h4_plus_multiple_of_h3() {
        let h3 = h(&[(10, 0, 1, 1), (7, 3, 25, 7), (5, 5, -3, 1), (0, 10, -3, 7)]);
        let h4 = h(&[(12, 0, 1, 1), (10, 2, -14, 5), (7, 5, -4, 1), (5, 7, 12, 5), (0, 12, 1, 5)]);
        let combo = &h4 + &h3.shift(0, 2).scale(&q(14, 5));
        assert_eq!(combo, h(&[(12, 0, 1, 1), (7, 5, 6, 1), (5, 7, -6, 1), (0, 12, -1, 1)]));
    }

    #[test]
    fn slices() {
        let h2 = h(&[(7, 0, 1, 1), (5, 2, -7, 5), (0, 7, -2, 5)]);
        assert_eq!(h2.y_slice(0), UniPoly::monomial(q(1, 1), 7));
        assert!(h2.y_slice(1).is_zero());
        let h6 = h(&[(15, 0, 1, 1), (14, 1, 125, 49), (12, 3, -25, 7)]);
        assert_eq!(h6.y_slice(1), UniPoly::monomial(q(125, 49), 14));
    }

    #[test]
    fn divisibility_orders() {
        assert_eq!(h(&[(5, 0, 1, 1), (0, 5, 1, 1)]).divisibility_order(), Ok(1));
        assert_eq!(Poly::x_plus_y().pow(3).divisibility_order(), Ok(3));
        let g = h(&[(5, 0, 1, 1), (2, 3, 5, 2), (0, 5, -3, 2)]);
        assert_eq!(g.divisibility_order(), Ok(2));
        assert_eq!(Poly::zero().divisibility_order(), Err(Error::ZeroPolynomial));
        assert_eq!(h(&[(2, 0, 1, 1), (0, 1, 1, 1)]).divisibility_order(), Err(Error::NonHomogeneous));
        // y^3 (x+y)^2: a pure y-power factor does not disturb the count.
        let p = &Poly::monomial(q(1, 1), 0, 3) * &Poly::x_plus_y().pow(2);
        assert_eq!(p.divisibility_order(), Ok(2));
    }

    #[test]
    fn rendering_follows_decreasing_x() {
        let h2 = h(&[(7, 0, 1, 1), (5, 2, -7, 5), (0, 7, -2, 5)]);
        assert_eq!(h2.to_string(), "x^7 - (7/5)*x^5*y^2 - (2/5)*y^7");
        let h6 = h(&[(15, 0, 1, 1), (14, 1, 125, 49), (10, 5, 3, 1), (0, 15, -1, 49)]);
        assert_eq!(h6.to_string(), "x^15 + (125/49)*x^14*y + 3*x^10*y^5 - (1/49)*y^15");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(h(&[(0, 0, -3, 1)]).to_string(), "-3");
    }

    #[test]
    fn works_over_machine_rationals() {
        type Small = Ratio<i64>;
        let p = BiPoly::<Small>::x_plus_y().pow(4);
        assert_eq!(p.coeff(2, 2), Small::from_integer(6));
        assert_eq!(p.divisibility_order(), Ok(4));
    }
}
