//! Generators of the symbolic powers of the graph ideal of a monomial curve.
//!
//! For the curve `k[[t^S]]` with normalization `x -> -y`, the graph of the
//! normalization map is `{x + y = 0}` and the `(n+1)`-th symbolic power of
//! its ideal consists of the elements of `A[[y]]` divisible by
//! `(x + y)^{n+1}`. The canonical generator `h_m` is the unique homogeneous
//! polynomial of degree `s_m` supported on `x^{s_0}, ..., x^{s_m}` with
//! monic `x^{s_m}` term and `(x + y)^m | h_m`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::solve_unique;
use crate::semigroup::NumericalSemigroup;
use crate::{Poly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct HPolynomial {
    m: usize,
    degree: u32,
    poly: Poly,
    /// `x`-exponents `s_0, ..., s_m`.
    support: Vec<u32>,
    /// Coefficient of `x^{s_i} y^{s_m - s_i}` at position `i`.
    coefficients: Vec<Rational>,
}

impl HPolynomial {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Total degree, equal to `s_m`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    /// Coefficient of `x^{s_i} y^{s_m - s_i}`.
    pub fn coefficient(&self, i: usize) -> &Rational {
        &self.coefficients[i]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Checks the defining properties against `s`.
    pub fn check_invariants(&self, s: &NumericalSemigroup) -> Result<()> {
        let fail = |reason: String| Err(Error::ConstructionFailed { m: self.m, reason });
        if self.poly.homogeneous_degree() != Some(self.degree) || self.degree != s.element(self.m) {
            return fail(format!("not homogeneous of degree s_{} = {}", self.m, s.element(self.m)));
        }
        if !self.poly.coeff(self.degree, 0).is_one() {
            return fail("leading x-power is not monic".into());
        }
        let order = self.poly.divisibility_order()?;
        if (order as usize) < self.m {
            return fail(format!("divisible only by (x+y)^{order}"));
        }
        if let Some(((a, _), _)) = self.poly.terms().find(|((a, _), _)| !s.contains(*a as i64)) {
            return fail(format!("x-exponent {a} is not in {s}"));
        }
        let slice0 = self.poly.y_slice(0);
        if slice0.terms().count() != 1 || slice0.order() != Some(self.degree) {
            return fail("y^0 slice is not x^{s_m}".into());
        }
        Ok(())
    }
}

/// Taylor coefficient `C(a, j) (-1)^{a-j}` of `t^a` at `t = -1`.
fn taylor_entry(a: u32, j: u32) -> Rational {
    if a < j {
        return Rational::zero();
    }
    let mut c = BigInt::one();
    for i in 0..j {
        c = c * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    if (a - j) % 2 == 1 {
        c = -c;
    }
    Rational::from_integer(c)
}

/// Builds `h_m` by solving the `m x (m+1)` system "the first `m` Taylor
/// coefficients of `p(t) = h_m(t, 1)` at `t = -1` vanish".
pub fn construct_h(s: &NumericalSemigroup, m: usize) -> Result<HPolynomial> {
    if m == 0 {
        return Err(Error::InvalidArgument("h_m is defined for m >= 1".into()));
    }
    let support: Vec<u32> = (0..=m).map(|i| s.element(i)).collect();
    let system: Vec<Vec<Rational>> =
        (0..m as u32).map(|j| support.iter().map(|&a| taylor_entry(a, j)).collect()).collect();
    let coefficients = solve_unique(&system, m).map_err(|e| Error::ConstructionFailed {
        m,
        reason: format!("generalized Vandermonde system is singular: {e}"),
    })?;
    let degree = support[m];
    let poly = Poly::from_terms(support.iter().zip(&coefficients).map(|(&a, c)| ((a, degree - a), c.clone())));
    let h = HPolynomial { m, degree, poly, support, coefficients };
    h.check_invariants(s)?;
    Ok(h)
}

/// Reads condition (4) off `h`: whether its `y^1` slice is nonzero.
///
/// Fails with [`Error::CriterionMismatch`] unless this agrees with
/// `s_m - 1 in S` and a nonzero slice is the single monomial `x^{s_m - 1}`.
pub fn h_slice_order_test(h: &HPolynomial, s: &NumericalSemigroup) -> Result<bool> {
    let slice = h.poly.y_slice(1);
    let nonzero = !slice.is_zero();
    let expected = s.contains(h.degree as i64 - 1);
    if nonzero != expected {
        return Err(Error::CriterionMismatch(format!(
            "h_{} over {s}: y-slice nonzero = {nonzero}, but s_m - 1 = {} in S is {expected}",
            h.m,
            h.degree as i64 - 1
        )));
    }
    if nonzero && (slice.terms().count() != 1 || slice.order() != Some(h.degree - 1)) {
        return Err(Error::CriterionMismatch(format!(
            "h_{} over {s}: y-slice {slice} is not a multiple of x^{}",
            h.m,
            h.degree - 1
        )));
    }
    Ok(nonzero)
}

/// The polynomials `h_1, h_2, ...` of one semigroup, built on demand.
#[derive(Clone, Debug)]
pub struct HFamily {
    semigroup: NumericalSemigroup,
    members: Vec<HPolynomial>,
}

impl HFamily {
    pub fn new(semigroup: &NumericalSemigroup) -> Self {
        HFamily { semigroup: semigroup.clone(), members: Vec::new() }
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    /// `h_m`, constructing it (and nothing else) if missing.
    pub fn get(&mut self, m: usize) -> Result<&HPolynomial> {
        if m == 0 {
            return Err(Error::InvalidArgument("h_m is defined for m >= 1".into()));
        }
        while self.members.len() < m {
            let next = construct_h(&self.semigroup, self.members.len() + 1)?;
            self.members.push(next);
        }
        Ok(&self.members[m - 1])
    }

    /// Number of members built so far.
    pub fn built(&self) -> usize {
        self.members.len()
    }
}

/// `{h_m : n+1 <= m <= M}`, generating the `(n+1)`-th symbolic power.
#[derive(Clone, Debug)]
pub struct SymbolicPowerBasis {
    n: usize,
    bound: usize,
    members: Vec<HPolynomial>,
}

impl SymbolicPowerBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The largest index `M`.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn members(&self) -> &[HPolynomial] {
        &self.members
    }

    /// `h_m` for `n + 1 <= m <= M`.
    pub fn member(&self, m: usize) -> Option<&HPolynomial> {
        m.checked_sub(self.n + 1).and_then(|k| self.members.get(k))
    }

    /// Extends the basis until it reaches index `bound`.
    pub fn grow_to(&mut self, semigroup: &NumericalSemigroup, bound: usize) -> Result<()> {
        while self.bound < bound {
            self.bound += 1;
            self.members.push(construct_h(semigroup, self.bound)?);
        }
        Ok(())
    }
}

/// Builds `h_{n+1}, ..., h_M` with `M` minimal such that `s_M >= s_{n+1} + c`.
pub fn symbolic_power_basis(s: &NumericalSemigroup, n: usize) -> Result<SymbolicPowerBasis> {
    let target = s.element(n + 1) + s.conductor();
    let bound = s.index_of(target).unwrap_or_else(|| s.count_below(target));
    let mut basis = SymbolicPowerBasis { n, bound: n, members: Vec::new() };
    basis.grow_to(s, bound.max(n + 1))?;
    Ok(basis)
}

/// Rationals travel as strings such as `"-7/5"` in JSON records.
pub mod rational_serde {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Rational>().map_err(serde::de::Error::custom)
    }
}

/// A plain-data view of `h_m` for reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HRecord {
    pub semigroup: NumericalSemigroup,
    pub m: usize,
    pub degree: u32,
    /// `(x-exponent, coefficient)`, decreasing exponent.
    pub terms: Vec<HTerm>,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HTerm {
    pub x_exponent: u32,
    #[serde(with = "rational_serde")]
    pub coefficient: Rational,
}

impl HRecord {
    pub fn new(s: &NumericalSemigroup, h: &HPolynomial) -> Self {
        let mut terms: Vec<HTerm> = h
            .support
            .iter()
            .zip(&h.coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&a, c)| HTerm { x_exponent: a, coefficient: c.clone() })
            .collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.x_exponent));
        HRecord { semigroup: s.clone(), m: h.m, degree: h.degree, terms, polynomial: h.poly.to_string() }
    }
}

/// Sign pattern helper for tests and reports: number of negative
/// coefficients of `h`.
pub fn negative_terms(h: &HPolynomial) -> usize {
    h.coefficients.iter().filter(|c| c.is_negative()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn poly(terms: &[(u32, u32, i64, i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(a, b, n, d)| ((a, b), q(n, d))))
    }

    #[test]
    fn h2_and_h6_of_five_seven() {
        let s = sg(&[5, 7]);
        assert_eq!(construct_h(&s, 2).unwrap().poly(), &poly(&[(7, 0, 1, 1), (5, 2, -7, 5), (0, 7, -2, 5)]));
        let h6 = construct_h(&s, 6).unwrap();
        assert_eq!(
            h6.poly(),
            &poly(&[
                (15, 0, 1, 1),
                (14, 1, 125, 49),
                (12, 3, -25, 7),
                (10, 5, 3, 1),
                (7, 8, 75, 49),
                (5, 10, -4, 7),
                (0, 15, -1, 49),
            ])
        );
    }

    #[test]
    fn smooth_curve_gives_binomial_powers() {
        let s = sg(&[1]);
        for m in 1..=6 {
            assert_eq!(construct_h(&s, m).unwrap().poly(), &Poly::x_plus_y().pow(m as u32));
        }
    }

    #[test]
    fn two_five() {
        let s = sg(&[2, 5]);
        assert_eq!(construct_h(&s, 2).unwrap().poly(), &poly(&[(4, 0, 1, 1), (2, 2, -2, 1), (0, 4, 1, 1)]));
        let basis = symbolic_power_basis(&s, 1).unwrap();
        let h3 = basis.member(3).unwrap();
        assert_eq!(h3.poly(), &poly(&[(5, 0, 1, 1), (4, 1, 15, 8), (2, 3, -5, 4), (0, 5, 3, 8)]));
    }

    #[test]
    fn slice_test() {
        let s = sg(&[5, 7]);
        assert_eq!(h_slice_order_test(&construct_h(&s, 6).unwrap(), &s), Ok(true));
        assert_eq!(h_slice_order_test(&construct_h(&s, 5).unwrap(), &s), Ok(false));
        let n = sg(&[1]);
        for m in 1..5 {
            assert_eq!(h_slice_order_test(&construct_h(&n, m).unwrap(), &n), Ok(true));
        }
    }

    #[test]
    fn basis_bound_and_errors() {
        let s = sg(&[5, 7]);
        let b = symbolic_power_basis(&s, 1).unwrap();
        // s_2 + c = 7 + 24 = 31 = s_19.
        assert_eq!(b.bound(), 19);
        assert_eq!(b.members().len(), 18);
        assert_eq!(b.members()[0].m(), 2);
        assert!(construct_h(&s, 0).is_err());
        let nat = symbolic_power_basis(&sg(&[1]), 2).unwrap();
        assert_eq!(nat.members()[0].poly(), &Poly::x_plus_y().pow(3));
    }

    #[test]
    fn family_is_lazy() {
        let s = sg(&[3, 4]);
        let mut f = HFamily::new(&s);
        assert_eq!(f.built(), 0);
        assert_eq!(f.get(3).unwrap().degree(), 6);
        assert_eq!(f.built(), 3);
    }

    #[test]
    fn record_lists_decreasing_exponents() {
        let s = sg(&[5, 7]);
        let r = HRecord::new(&s, &construct_h(&s, 2).unwrap());
        assert_eq!(r.polynomial, "x^7 - (7/5)*x^5*y^2 - (2/5)*y^7");
        assert_eq!(r.terms.iter().map(|t| t.x_exponent).collect::<Vec<_>>(), vec![7, 5, 0]);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<HRecord>(&json).unwrap(), r);
    }
}
