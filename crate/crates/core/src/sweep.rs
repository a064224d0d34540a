//! Exhaustive cross-checks over all numerical semigroups within bounds.
//!
//! Every (semigroup, level, check) triple yields one [`SweepRecord`].
//! Theorem checks must always agree; conjecture checks are data.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph_ideal::h_slice_order_test;
use crate::nash::{is_normal_flag, is_normal_simple, NashEngine};
use crate::product::{
    binomial, conductor_region, not_contained, product_cluster_identities, product_regular, t_staircase,
    tangent_directions_independent, FlagCluster,
};
use crate::semigroup::{enumerate_semigroups, DifferenceMode, NumericalSemigroup};

/// Multiplicity, conductor and level bounds `M,C,N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepBounds {
    pub max_multiplicity: u32,
    pub max_conductor: u32,
    pub max_n: usize,
}

impl std::str::FromStr for SweepBounds {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let bad = || Error::InvalidArgument(format!("bounds must look like M,C,N, got {text:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(SweepBounds {
            max_multiplicity: parts[0].parse().map_err(|_| bad())?,
            max_conductor: parts[1].parse().map_err(|_| bad())?,
            max_n: parts[2].parse().map_err(|_| bad())?,
        })
    }
}

impl fmt::Display for SweepBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.max_multiplicity, self.max_conductor, self.max_n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `Nash_n = <1>` against `s_{n+1} - 1 in S`.
    SimpleCriterion,
    /// `fNash_n = <1>` against `s_m - 1 in S` for some `m <= n+1`.
    FlagCriterion,
    /// The `y`-slice of `h_{n+1}` against `s_{n+1} - 1 in S`.
    SliceCondition,
    /// `fNash_n` contains `Nash_n`.
    FlagRefinesSimple,
    /// A smooth `fNash_n` stays smooth at `n + 1`.
    FlagStabilization,
    /// `s_{n+1} > c` forces the simple criterion.
    ConductorImplication,
    ConjectureSimple,
    ConjectureFlag,
}

impl Check {
    pub fn is_theorem(self) -> bool {
        !matches!(self, Check::ConjectureSimple | Check::ConjectureFlag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub semigroup: NumericalSemigroup,
    pub n: usize,
    pub check: Check,
    pub expected: Value,
    pub actual: Value,
    pub agree: bool,
}

impl SweepRecord {
    fn new(semigroup: &NumericalSemigroup, n: usize, check: Check, expected: Value, actual: Value) -> Self {
        let agree = expected == actual;
        SweepRecord { semigroup: semigroup.clone(), n, check, expected, actual, agree }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub semigroups: usize,
    pub records: Vec<SweepRecord>,
}

impl SweepReport {
    pub fn theorem_mismatches(&self) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(|r| r.check.is_theorem() && !r.agree)
    }

    pub fn conjecture_disagreements(&self) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(|r| !r.check.is_theorem() && !r.agree)
    }

    pub fn count(&self, check: Check) -> usize {
        self.records.iter().filter(|r| r.check == check).count()
    }

    /// One JSON object per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }
}

fn semigroup_value(s: &NumericalSemigroup) -> Value {
    Value::String(s.to_string())
}

/// All checks for one semigroup and levels `0..=max_n`.
pub fn check_semigroup(s: &NumericalSemigroup, max_n: usize, conjecture: bool) -> Result<Vec<SweepRecord>> {
    let mut engine = NashEngine::new(s);
    let mut simple = Vec::with_capacity(max_n + 2);
    for n in 0..=max_n + 1 {
        simple.push(engine.simple_unchecked(n)?.output);
    }
    let mut flag = Vec::with_capacity(max_n + 2);
    let mut acc = s.clone();
    for out in &simple {
        acc = acc.join(out);
        flag.push(acc.clone());
    }
    let mut records = Vec::new();
    for n in 0..=max_n {
        let crit_simple = is_normal_simple(s, n);
        let crit_flag = is_normal_flag(s, n);
        records.push(SweepRecord::new(
            s,
            n,
            Check::SimpleCriterion,
            json!(crit_simple),
            json!(simple[n].is_natural()),
        ));
        records.push(SweepRecord::new(s, n, Check::FlagCriterion, json!(crit_flag), json!(flag[n].is_natural())));
        let slice = match h_slice_order_test(engine.family().get(n + 1)?, s) {
            Ok(v) => json!(v),
            Err(Error::CriterionMismatch(msg)) => json!(msg),
            Err(e) => return Err(e),
        };
        let expected = json!(s.contains(s.element(n + 1) as i64 - 1));
        records.push(SweepRecord::new(s, n, Check::SliceCondition, expected, slice));
        records.push(SweepRecord::new(
            s,
            n,
            Check::FlagRefinesSimple,
            json!(true),
            json!(flag[n].contains_semigroup(&simple[n])),
        ));
        if flag[n].is_natural() {
            records.push(SweepRecord::new(
                s,
                n,
                Check::FlagStabilization,
                json!(true),
                json!(flag[n + 1].is_natural()),
            ));
        }
        if s.element(n + 1) > s.conductor() {
            records.push(SweepRecord::new(s, n, Check::ConductorImplication, json!(true), json!(crit_simple)));
        }
        if conjecture {
            for (check, mode, computed) in [
                (Check::ConjectureSimple, DifferenceMode::Simple, &simple[n]),
                (Check::ConjectureFlag, DifferenceMode::Flag, &flag[n]),
            ] {
                let conjectured = s.difference_semigroup(n, mode);
                records.push(SweepRecord::new(s, n, check, semigroup_value(&conjectured), semigroup_value(computed)));
            }
        }
    }
    Ok(records)
}

/// Runs [`check_semigroup`] over every semigroup within `bounds`.
///
/// Records are ordered by semigroup, then level, then check.
pub fn criterion_sweep(bounds: SweepBounds, conjecture: bool) -> Result<SweepReport> {
    if bounds.max_multiplicity == 0 {
        return Ok(SweepReport::default());
    }
    let semigroups = enumerate_semigroups(bounds.max_multiplicity, bounds.max_conductor);
    let chunks: Vec<Vec<SweepRecord>> =
        semigroups.par_iter().map(|s| check_semigroup(s, bounds.max_n, conjecture)).collect::<Result<_>>()?;
    let mut records: Vec<SweepRecord> = chunks.into_iter().flatten().collect();
    records.sort_by(|a, b| (&a.semigroup, a.n, a.check).cmp(&(&b.semigroup, b.n, b.check)));
    Ok(SweepReport { semigroups: semigroups.len(), records })
}

/// Summary of the product-of-clusters identity over all ordered pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterSweep {
    pub semigroups: usize,
    pub pairs: usize,
    pub identities: usize,
}

/// Checks the three cluster expressions for every ordered pair of
/// semigroups within the bounds and every level `i <= max_i`.
///
/// Fails with [`Error::IdentityViolation`] on the first disagreement.
pub fn cluster_sweep(max_multiplicity: u32, max_conductor: u32, max_i: usize) -> Result<ClusterSweep> {
    let semigroups = enumerate_semigroups(max_multiplicity, max_conductor);
    let flags: Vec<FlagCluster> = semigroups.iter().map(|s| FlagCluster::new(s, max_i)).collect();
    let per_first: Vec<usize> = flags
        .par_iter()
        .map(|u| {
            flags.iter().try_fold(0usize, |acc, v| Ok(acc + product_cluster_identities(u, v, max_i)?.len()))
        })
        .collect::<Result<_>>()?;
    Ok(ClusterSweep {
        semigroups: semigroups.len(),
        pairs: semigroups.len() * semigroups.len(),
        identities: per_first.iter().sum(),
    })
}

/// Colengths of the level-`i` cluster of two smooth branches, `i <= max_i`.
pub fn smooth_colengths(max_i: usize) -> Result<Vec<usize>> {
    let u = FlagCluster::new(&NumericalSemigroup::natural(), max_i);
    Ok(product_cluster_identities(&u, &u, max_i)?.into_iter().map(|r| r.colength).collect())
}

/// Violations found by the product sweeps, with counts of cases examined.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSweep {
    /// Ordered pairs and levels examined.
    pub cases: usize,
    /// Cases with `T_{n+1}` not containing `U`.
    pub premise_cases: usize,
    pub violations: Vec<String>,
}

/// For ordered pairs and `n <= max_n`, builds `T_{n+1}` and `U` as
/// staircases and checks: `T_{n+1}` has colength `binom(n+2, 2)`; if
/// `T_{n+1}` misses part of `U` both product criteria hold; the simple
/// criterion agrees with the tangent-direction argument.
pub fn product_staircase_sweep(semigroups: &[NumericalSemigroup], max_n: usize) -> Result<ProductSweep> {
    let parts: Vec<ProductSweep> = semigroups
        .par_iter()
        .map(|a| {
            let mut part = ProductSweep::default();
            for b in semigroups {
                let ss = [a.clone(), b.clone()];
                let u = conductor_region(&ss)?;
                for n in 0..=max_n {
                    part.cases += 1;
                    let t = t_staircase(&ss, n)?;
                    let colength = t.colength()?;
                    if colength as u64 != binomial(n as u64 + 2, 2) {
                        part.violations.push(format!("{a} x {b}, n = {n}: T has colength {colength}"));
                    }
                    let simple = product_regular(&ss, n, DifferenceMode::Simple)?;
                    if not_contained(&t, &u)? {
                        part.premise_cases += 1;
                        let flag = product_regular(&ss, n, DifferenceMode::Flag)?;
                        if !(simple && flag) {
                            part.violations.push(format!("{a} x {b}, n = {n}: T misses U but not regular"));
                        }
                    }
                    if tangent_directions_independent(&ss, n)? != simple {
                        part.violations.push(format!("{a} x {b}, n = {n}: tangent directions disagree"));
                    }
                }
            }
            Ok(part)
        })
        .collect::<Result<_>>()?;
    Ok(merge(parts))
}

fn merge(parts: Vec<ProductSweep>) -> ProductSweep {
    parts.into_iter().fold(ProductSweep::default(), |mut acc, p| {
        acc.cases += p.cases;
        acc.premise_cases += p.premise_cases;
        acc.violations.extend(p.violations);
        acc
    })
}

/// The conductor implication for pairs over a large semigroup list, using
/// that `T_{n+1} ⊉ U` exactly when the corner `(c_1, c_2)` lies outside
/// `T_{n+1}`, i.e. when the indices of the conductors sum to at most `n`.
pub fn product_conductor_sweep(semigroups: &[NumericalSemigroup], max_n: usize) -> ProductSweep {
    let info: Vec<(usize, Vec<bool>)> = semigroups
        .iter()
        .map(|s| {
            let idx = s.index_of(s.conductor()).expect("the conductor is an element");
            (idx, (0..=max_n).map(|n| is_normal_flag(s, n)).collect())
        })
        .collect();
    let parts: Vec<ProductSweep> = info
        .par_iter()
        .enumerate()
        .map(|(ia, (ca, fa))| {
            let mut part = ProductSweep::default();
            for (ib, (cb, fb)) in info.iter().enumerate() {
                for n in 0..=max_n {
                    part.cases += 1;
                    if ca + cb <= n {
                        part.premise_cases += 1;
                        if !(fa[n] && fb[n]) {
                            part.violations.push(format!(
                                "{} x {}, n = {n}: T misses U but not regular",
                                semigroups[ia], semigroups[ib]
                            ));
                        }
                    }
                }
            }
            part
        })
        .collect();
    merge(parts)
}

/// Triples for the tangent-direction argument with three factors.
pub fn tangent_sweep_three(semigroups: &[NumericalSemigroup], max_n: usize) -> Result<ProductSweep> {
    let mut out = ProductSweep::default();
    for a in semigroups {
        for b in semigroups {
            for c in semigroups {
                let ss = [a.clone(), b.clone(), c.clone()];
                for n in 0..=max_n {
                    out.cases += 1;
                    if tangent_directions_independent(&ss, n)? != product_regular(&ss, n, DifferenceMode::Simple)? {
                        out.violations.push(format!("{a} x {b} x {c}, n = {n}: tangent directions disagree"));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_parse() {
        let b: SweepBounds = "4,12,4".parse().unwrap();
        assert_eq!(b, SweepBounds { max_multiplicity: 4, max_conductor: 12, max_n: 4 });
        assert_eq!(b.to_string(), "4,12,4");
        assert!("4,12".parse::<SweepBounds>().is_err());
        assert!("a,1,2".parse::<SweepBounds>().is_err());
    }

    #[test]
    fn small_sweep_has_no_theorem_mismatch() {
        let r = criterion_sweep(SweepBounds { max_multiplicity: 4, max_conductor: 12, max_n: 4 }, true).unwrap();
        assert!(r.semigroups > 10);
        assert_eq!(r.theorem_mismatches().count(), 0);
        assert_eq!(r.count(Check::SimpleCriterion), r.semigroups * 5);
        let text = r.to_jsonl();
        let first: SweepRecord = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first, r.records[0]);
    }

    #[test]
    fn empty_bounds() {
        let r = criterion_sweep(SweepBounds { max_multiplicity: 0, max_conductor: 0, max_n: 0 }, true).unwrap();
        assert!(r.records.is_empty());
        assert_eq!(r.to_jsonl(), "");
    }

    #[test]
    fn smooth_cluster_lengths() {
        assert_eq!(smooth_colengths(4).unwrap(), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn small_product_sweeps() {
        let ss = enumerate_semigroups(3, 6);
        let r = product_staircase_sweep(&ss, 3).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.premise_cases > 0);
        let q = product_conductor_sweep(&ss, 3);
        assert!(q.violations.is_empty());
        assert_eq!(q.cases, r.cases);
        assert_eq!(q.premise_cases, r.premise_cases);
        let c = cluster_sweep(3, 6, 2).unwrap();
        assert_eq!(c.identities, c.pairs * 3);
    }
}
