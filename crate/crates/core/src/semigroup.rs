//! Numerical semigroups: cofinite additive submonoids of the non-negative
//! integers.
//!
//! A semigroup is stored through its membership table below the conductor;
//! every integer at or above the conductor is an element. The enumeration
//! `0 = s_0 < s_1 < ...` is therefore available for every index without
//! any lazily grown state.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u32>,
    conductor: u32,
    /// Elements strictly below the conductor, ascending.
    small: Vec<u32>,
    /// Membership for `0..conductor`.
    member: Vec<bool>,
}

/// Which differences `s_m - s_l` feed [`NumericalSemigroup::difference_semigroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DifferenceMode {
    /// `m > n`, `l <= n`.
    Simple,
    /// `m > l`, `l <= n`.
    Flag,
}

impl NumericalSemigroup {
    /// The monoid of all non-negative integers, `<1>`.
    pub fn natural() -> Self {
        NumericalSemigroup { generators: vec![1], conductor: 0, small: Vec::new(), member: Vec::new() }
    }

    /// The monoid generated by `gens`; the generator list is minimalized.
    pub fn from_generators(gens: &[u32]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let g = gens.iter().fold(0u32, |acc, &x| acc.gcd(&x));
        if g != 1 {
            let mut sorted = gens.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            return Err(Error::NotCofinite { generators: sorted, gcd: g });
        }
        let e = *gens.iter().min().expect("nonempty");
        if e == 1 {
            return Ok(Self::natural());
        }

        // Sieve with a doubling bound until a run of `e` consecutive members
        // shows up; that run starts at the conductor.
        let mut bound = 2 * gens.iter().copied().max().expect("nonempty") as usize + 2 * e as usize;
        loop {
            let mut member = vec![false; bound];
            member[0] = true;
            for v in 1..bound {
                member[v] = gens.iter().any(|&g| (g as usize) <= v && member[v - g as usize]);
            }
            let mut run = 0usize;
            let mut start = None;
            for (v, &m) in member.iter().enumerate() {
                if m {
                    run += 1;
                    if run == e as usize {
                        start = Some(v + 1 - e as usize);
                        break;
                    }
                } else {
                    run = 0;
                }
            }
            if let Some(c) = start {
                member.truncate(c);
                return Ok(Self::from_table(member));
            }
            bound *= 2;
        }
    }

    /// Builds a semigroup from its membership table below the conductor.
    /// `member[0]` must be true and `member.last()` must be false (unless
    /// the table is empty, which encodes `<1>`).
    fn from_table(member: Vec<bool>) -> Self {
        if member.is_empty() {
            return Self::natural();
        }
        debug_assert!(member[0] && !member[member.len() - 1]);
        let conductor = member.len() as u32;
        let small: Vec<u32> = (0..conductor).filter(|&v| member[v as usize]).collect();
        let mut s = NumericalSemigroup { generators: Vec::new(), conductor, small, member };
        s.generators = s.compute_minimal_generators();
        s
    }

    /// The semigroup whose gaps are exactly `gaps`. The gap set must be
    /// closed under "subtracting an element", i.e. its complement must be a
    /// monoid; this is checked.
    pub fn from_gaps(gaps: &[u32]) -> Result<Self> {
        let Some(&frob) = gaps.iter().max() else {
            return Ok(Self::natural());
        };
        if gaps.contains(&0) {
            return Err(Error::InvalidArgument("0 cannot be a gap".into()));
        }
        let mut member = vec![true; frob as usize + 1];
        for &g in gaps {
            member[g as usize] = false;
        }
        for a in 1..member.len() {
            for b in a..member.len() - a {
                if member[a] && member[b] && !member[a + b] {
                    return Err(Error::InvalidArgument(format!(
                        "complement of the gap set is not closed: {a} + {b} = {} is a gap",
                        a + b
                    )));
                }
            }
        }
        Ok(Self::from_table(member))
    }

    /// The monoid generated by an arbitrary collection of positive
    /// integers, which must have gcd 1.
    pub fn generated_by<I: IntoIterator<Item = u32>>(values: I) -> Result<Self> {
        let mut v: Vec<u32> = values.into_iter().filter(|&x| x > 0).collect();
        v.sort_unstable();
        v.dedup();
        // Drop values that are sums of smaller ones before sieving.
        let mut kept: Vec<u32> = Vec::new();
        let mut reach = vec![true];
        for x in v {
            let need = x as usize + 1;
            while reach.len() < need {
                let n = reach.len();
                let r = kept.iter().any(|&g| g as usize <= n && reach[n - g as usize]);
                reach.push(r);
            }
            if !reach[x as usize] {
                kept.push(x);
                // Recompute lazily: entries above x might change.
                reach.truncate(x as usize);
                reach.push(true);
            }
        }
        Self::from_generators(&kept)
    }

    fn compute_minimal_generators(&self) -> Vec<u32> {
        let e = self.multiplicity();
        let top = self.conductor + e;
        (1..top)
            .filter(|&v| self.contains(v as i64))
            .filter(|&v| !(1..v).any(|a| self.contains(a as i64) && self.contains((v - a) as i64)))
            .collect()
    }

    /// Minimal generators, ascending.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Least `c` such that every integer `>= c` is an element.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `c - 1`, or `None` for `<1>`.
    pub fn frobenius(&self) -> Option<u32> {
        self.conductor.checked_sub(1)
    }

    /// The smallest positive element `s_1`.
    pub fn multiplicity(&self) -> u32 {
        self.element(1)
    }

    pub fn is_natural(&self) -> bool {
        self.conductor == 0
    }

    /// Number of gaps.
    pub fn genus(&self) -> u32 {
        self.conductor - self.small.len() as u32
    }

    /// Elements strictly below the conductor.
    pub fn small_elements(&self) -> &[u32] {
        &self.small
    }

    /// Gaps, ascending.
    pub fn gaps(&self) -> Vec<u32> {
        (0..self.conductor).filter(|&v| !self.member[v as usize]).collect()
    }

    /// `s_i`, the `i`-th smallest element (`s_0 = 0`).
    pub fn element(&self, i: usize) -> u32 {
        match self.small.get(i) {
            Some(&v) => v,
            None => self.conductor + (i - self.small.len()) as u32,
        }
    }

    /// Index `i` with `s_i = v`, if `v` is an element.
    pub fn index_of(&self, v: u32) -> Option<usize> {
        if v >= self.conductor {
            Some(self.small.len() + (v - self.conductor) as usize)
        } else if self.member[v as usize] {
            Some(self.small.partition_point(|&x| x < v))
        } else {
            None
        }
    }

    /// Number of elements strictly below `v`.
    pub fn count_below(&self, v: u32) -> usize {
        if v >= self.conductor {
            self.small.len() + (v - self.conductor) as usize
        } else {
            self.small.partition_point(|&x| x < v)
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        if v < 0 {
            false
        } else if v >= self.conductor as i64 {
            true
        } else {
            self.member[v as usize]
        }
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_semigroup(&self, other: &NumericalSemigroup) -> bool {
        other.generators.iter().all(|&g| self.contains(g as i64))
    }

    /// The monoid generated by the union of both.
    pub fn join(&self, other: &NumericalSemigroup) -> NumericalSemigroup {
        let gens: Vec<u32> = self.generators.iter().chain(&other.generators).copied().collect();
        Self::from_generators(&gens).expect("join of cofinite monoids is cofinite")
    }

    /// Blowup of the reduced special point.
    ///
    /// Computed from elements as `<e, {s - e : e <= s <= e + c}>` with `e` the
    /// multiplicity, and checked against the generator formula
    /// `<e, a_2 - e, ..., a_k - e>`. The element-based result is returned.
    pub fn point_blowup(&self) -> NumericalSemigroup {
        if self.is_natural() {
            return Self::natural();
        }
        let e = self.multiplicity();
        let by_elements = Self::generated_by(
            std::iter::once(e).chain((e..=e + self.conductor).filter(|&s| self.contains(s as i64)).map(|s| s - e)),
        )
        .expect("contains 1 or has gcd 1");
        let by_generators = self.point_blowup_from_generators();
        assert_eq!(
            by_elements, by_generators,
            "point blowup formulas disagree on {self}: elements give {by_elements}, generators give {by_generators}"
        );
        by_elements
    }

    /// `<e, a_2 - e, ..., a_k - e>` over the minimal generators.
    pub fn point_blowup_from_generators(&self) -> NumericalSemigroup {
        if self.is_natural() {
            return Self::natural();
        }
        let e = self.multiplicity();
        Self::generated_by(std::iter::once(e).chain(self.generators.iter().map(|&a| a - e)))
            .expect("gcd of shifted generators divides the original gcd")
    }

    /// The monoid generated by the differences `s_m - s_l` selected by
    /// `mode` at level `n`.
    ///
    /// The sweep over `m` stops once `s_m - s_n` reaches the conductor of the
    /// monoid generated so far: every later difference is at least that
    /// large and therefore already present.
    pub fn difference_semigroup(&self, n: usize, mode: DifferenceMode) -> NumericalSemigroup {
        if self.is_natural() {
            return Self::natural();
        }
        let s_n = self.element(n);
        let mut values: Vec<u32> = Vec::new();
        let mut current: Option<NumericalSemigroup> = None;
        let mut m = match mode {
            DifferenceMode::Simple => n + 1,
            DifferenceMode::Flag => 1,
        };
        loop {
            let s_m = self.element(m);
            if m > n {
                if let Some(cur) = &current {
                    if s_m - s_n >= cur.conductor() {
                        break;
                    }
                }
            }
            let top = if m > n { n } else { m - 1 };
            let before = values.len();
            for l in 0..=top {
                let d = s_m - self.element(l);
                if current.as_ref().is_none_or(|c| !c.contains(d as i64)) {
                    values.push(d);
                }
            }
            if values.len() != before {
                let g = values.iter().fold(0u32, |acc, &x| acc.gcd(&x));
                if g == 1 {
                    current = Some(Self::generated_by(values.iter().copied()).expect("gcd is 1"));
                    values = current.as_ref().expect("set").generators().to_vec();
                }
            }
            m += 1;
        }
        current.expect("loop exits only after a cofinite monoid was found")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(u32::to_string).collect();
        write!(f, "⟨{}⟩", parts.join(","))
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by generator list; used only to make reports deterministic.
impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.generators.cmp(&other.generators)
    }
}

#[derive(Serialize, Deserialize)]
struct SemigroupRepr {
    generators: Vec<u32>,
    conductor: u32,
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SemigroupRepr { generators: self.generators.clone(), conductor: self.conductor }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NumericalSemigroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SemigroupRepr::deserialize(deserializer)?;
        let s = NumericalSemigroup::from_generators(&repr.generators).map_err(serde::de::Error::custom)?;
        if s.conductor != repr.conductor || s.generators != repr.generators {
            return Err(serde::de::Error::custom(format!(
                "inconsistent semigroup record: generators {:?} give {s} with conductor {}, record says {}",
                repr.generators, s.conductor, repr.conductor
            )));
        }
        Ok(s)
    }
}

/// Parses `"5,7"`, `"<5,7>"` or `"⟨5,7⟩"`.
impl std::str::FromStr for NumericalSemigroup {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches(['<', '⟨']).trim_end_matches(['>', '⟩']);
        let gens = inner
            .split(',')
            .map(|p| p.trim())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<u32>().map_err(|_| Error::InvalidArgument(format!("not a generator: {p:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        Self::from_generators(&gens)
    }
}

/// All numerical semigroups with multiplicity at most `max_multiplicity` and
/// conductor at most `max_conductor`, including `<1>` when the multiplicity
/// bound allows it.
///
/// Walks the semigroup tree: the children of `S` remove one minimal
/// generator larger than the Frobenius number. Every semigroup is reached
/// exactly once, and removing a generator never lowers the multiplicity, so
/// subtrees over the multiplicity bound are pruned.
pub fn enumerate_semigroups(max_multiplicity: u32, max_conductor: u32) -> Vec<NumericalSemigroup> {
    let mut out = Vec::new();
    if max_multiplicity == 0 {
        return out;
    }
    let mut stack = vec![NumericalSemigroup::natural()];
    while let Some(s) = stack.pop() {
        for &g in s.generators() {
            if g < s.conductor() || g + 1 > max_conductor {
                continue;
            }
            let mut member: Vec<bool> = (0..=g).map(|v| s.contains(v as i64)).collect();
            member[g as usize] = false;
            let child = NumericalSemigroup::from_table(member);
            if child.multiplicity() <= max_multiplicity {
                stack.push(child);
            }
        }
        out.push(s);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn five_seven_listing() {
        let s = sg(&[5, 7]);
        assert_eq!(s.small_elements(), &[0, 5, 7, 10, 12, 14, 15, 17, 19, 20, 21, 22]);
        assert_eq!(s.conductor(), 24);
        assert_eq!(s.element(1), 5);
        assert_eq!(s.element(6), 15);
        assert_eq!(s.element(12), 24);
        assert!(s.contains(14));
        assert!(!s.contains(13));
        assert!(!s.contains(-1));
        assert!(s.contains(0));
        assert_eq!(s.index_of(15), Some(6));
        assert_eq!(s.index_of(13), None);
        assert_eq!(s.genus(), 12);
    }

    #[test]
    fn three_four_and_natural() {
        let s = sg(&[3, 4]);
        assert_eq!(s.conductor(), 6);
        assert!(!s.contains(5));
        assert_eq!(s.element(3), 6);
        let n = sg(&[1]);
        assert_eq!(n.conductor(), 0);
        assert_eq!(n.frobenius(), None);
        assert_eq!(n.element(17), 17);
        assert_eq!(n, NumericalSemigroup::natural());
        assert_eq!(sg(&[3, 1, 7]), n);
    }

    #[test]
    fn minimalization_and_errors() {
        assert_eq!(sg(&[5, 7, 10, 12, 14]).generators(), &[5, 7]);
        assert_eq!(sg(&[7, 5]).generators(), &[5, 7]);
        assert!(matches!(NumericalSemigroup::from_generators(&[4, 6]), Err(Error::NotCofinite { gcd: 2, .. })));
        assert_eq!(NumericalSemigroup::from_generators(&[]), Err(Error::EmptyGenerators));
        assert_eq!(NumericalSemigroup::from_generators(&[0, 1]), Err(Error::ZeroGenerator));
    }

    #[test]
    fn joins() {
        assert_eq!(sg(&[2, 5]).join(&sg(&[3, 5, 7])), sg(&[2, 3]));
        assert_eq!(sg(&[5, 7]).join(&sg(&[5, 7])), sg(&[5, 7]));
        assert_eq!(sg(&[5, 7]).join(&sg(&[1])), sg(&[1]));
    }

    #[test]
    fn point_blowups() {
        assert_eq!(sg(&[5, 7]).point_blowup(), sg(&[2, 5]));
        assert_eq!(sg(&[2, 5]).point_blowup(), sg(&[2, 3]));
        assert_eq!(sg(&[2, 3]).point_blowup(), sg(&[1]));
        assert_eq!(sg(&[1]).point_blowup(), sg(&[1]));
    }

    #[test]
    fn difference_semigroups() {
        let s = sg(&[5, 7]);
        assert_eq!(s.difference_semigroup(1, DifferenceMode::Simple), sg(&[2, 5]));
        assert_eq!(s.difference_semigroup(2, DifferenceMode::Simple), sg(&[3, 5, 7]));
        assert_eq!(s.difference_semigroup(2, DifferenceMode::Flag), sg(&[2, 3]));
        assert_eq!(s.difference_semigroup(0, DifferenceMode::Simple), s);
        for mode in [DifferenceMode::Simple, DifferenceMode::Flag] {
            assert_eq!(sg(&[1]).difference_semigroup(3, mode), sg(&[1]));
        }
    }

    #[test]
    fn gap_constructor() {
        assert_eq!(NumericalSemigroup::from_gaps(&[1, 2, 5]).unwrap(), sg(&[3, 4]));
        assert_eq!(NumericalSemigroup::from_gaps(&[]).unwrap(), sg(&[1]));
        assert_eq!(NumericalSemigroup::from_gaps(&[1, 2, 4]).unwrap(), sg(&[3, 5, 7]));
        assert!(NumericalSemigroup::from_gaps(&[2, 3]).is_err());
    }

    #[test]
    fn parse_and_render() {
        let s: NumericalSemigroup = "⟨7,5⟩".parse().unwrap();
        assert_eq!(s.to_string(), "⟨5,7⟩");
        assert_eq!("3, 4".parse::<NumericalSemigroup>().unwrap(), sg(&[3, 4]));
        assert!("3,x".parse::<NumericalSemigroup>().is_err());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"generators":[5,7],"conductor":24}"#);
        assert_eq!(serde_json::from_str::<NumericalSemigroup>(&json).unwrap(), s);
        assert!(serde_json::from_str::<NumericalSemigroup>(r#"{"generators":[5,7],"conductor":20}"#).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // Semigroups by Frobenius number f = -1, 1, 2, ..., 7: 1,1,1,2,2,5,4,11.
        let all = enumerate_semigroups(u32::MAX, 8);
        assert_eq!(all.len(), 1 + 1 + 1 + 2 + 2 + 5 + 4 + 11);
        assert!(enumerate_semigroups(0, 10).is_empty());
        assert_eq!(enumerate_semigroups(1, 50), vec![sg(&[1])]);
        let mut seen = std::collections::HashSet::new();
        for s in enumerate_semigroups(4, 12) {
            assert!(s.multiplicity() <= 4 && s.conductor() <= 12);
            assert!(seen.insert(s));
        }
    }
}
