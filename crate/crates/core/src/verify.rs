//! Named reproduction suites for the `<5,7>` example and the criteria.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_ideal::{construct_h, symbolic_power_basis};
use crate::nash::{conjecture_report, BlowupKind, BlowupTable};
use crate::product::compatibility_report;
use crate::semigroup::{enumerate_semigroups, NumericalSemigroup};
use crate::sweep::{
    cluster_sweep, criterion_sweep, product_conductor_sweep, product_staircase_sweep, smooth_colengths, SweepBounds,
};
use crate::{Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    HGolden,
    Table,
    TwoFive,
    Example,
    Criterion,
    Clusters,
    Conductor,
    Conjecture,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::HGolden,
        Suite::Table,
        Suite::TwoFive,
        Suite::Example,
        Suite::Criterion,
        Suite::Clusters,
        Suite::Conductor,
        Suite::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::HGolden => "h-golden",
            Suite::Table => "table",
            Suite::TwoFive => "two-five",
            Suite::Example => "example",
            Suite::Criterion => "criterion",
            Suite::Clusters => "clusters",
            Suite::Conductor => "conductor",
            Suite::Conjecture => "conjecture",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::InvalidArgument(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub lines: Vec<String>,
}

struct Lines {
    lines: Vec<String>,
    passed: bool,
}

impl Lines {
    fn new() -> Self {
        Lines { lines: Vec::new(), passed: true }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.passed &= ok;
        self.lines.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, what.into()));
    }

    fn note(&mut self, what: impl Into<String>) {
        self.lines.push(format!("     {}", what.into()));
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport { suite, passed: self.passed, lines: self.lines }
    }
}

fn sg(g: &[u32]) -> NumericalSemigroup {
    NumericalSemigroup::from_generators(g).expect("valid literal")
}

fn poly(terms: &[(u32, u32, i64, i64)]) -> Poly {
    Poly::from_terms(terms.iter().map(|&(a, b, n, d)| ((a, b), Rational::new(n.into(), d.into()))))
}

/// Known `h_1, ..., h_6` of `<5,7>`.
pub fn five_seven_h() -> Vec<Poly> {
    vec![
        poly(&[(5, 0, 1, 1), (0, 5, 1, 1)]),
        poly(&[(7, 0, 1, 1), (5, 2, -7, 5), (0, 7, -2, 5)]),
        poly(&[(10, 0, 1, 1), (7, 3, 25, 7), (5, 5, -3, 1), (0, 10, -3, 7)]),
        poly(&[(12, 0, 1, 1), (10, 2, -14, 5), (7, 5, -4, 1), (5, 7, 12, 5), (0, 12, 1, 5)]),
        poly(&[(14, 0, 1, 1), (12, 2, -21, 5), (10, 4, 147, 25), (7, 7, 24, 5), (5, 9, -56, 25), (0, 14, -3, 25)]),
        poly(&[
            (15, 0, 1, 1),
            (14, 1, 125, 49),
            (12, 3, -25, 7),
            (10, 5, 3, 1),
            (7, 8, 75, 49),
            (5, 10, -4, 7),
            (0, 15, -1, 49),
        ]),
    ]
}

fn h_golden() -> Result<SuiteReport> {
    let mut out = Lines::new();
    let s = sg(&[5, 7]);
    for (k, expected) in five_seven_h().iter().enumerate() {
        let h = construct_h(&s, k + 1)?;
        out.check(h.poly() == expected, format!("h_{} = {}", k + 1, h.poly()));
    }
    Ok(out.finish(Suite::HGolden))
}

fn table() -> Result<SuiteReport> {
    let mut out = Lines::new();
    let t = BlowupTable::compute(&sg(&[5, 7]), 5)?;
    let expected: [(BlowupKind, [&str; 5]); 4] = [
        (BlowupKind::Simple, ["⟨2,5⟩", "⟨3,5,7⟩", "⟨2,5⟩", "⟨2,3⟩", "⟨1⟩"]),
        (BlowupKind::Flag, ["⟨2,5⟩", "⟨2,3⟩", "⟨2,3⟩", "⟨2,3⟩", "⟨1⟩"]),
        (BlowupKind::IteratedClassical, ["⟨2,5⟩", "⟨2,3⟩", "⟨1⟩", "⟨1⟩", "⟨1⟩"]),
        (BlowupKind::IteratedPoint, ["⟨2,5⟩", "⟨2,3⟩", "⟨1⟩", "⟨1⟩", "⟨1⟩"]),
    ];
    for (kind, row) in expected {
        let got: Vec<String> = t.row(kind).iter().map(|s| s.to_string()).collect();
        out.check(got == row, format!("{}: {}", kind.label(), got.join(" ")));
    }
    Ok(out.finish(Suite::Table))
}

fn two_five() -> Result<SuiteReport> {
    let mut out = Lines::new();
    let basis = symbolic_power_basis(&sg(&[2, 5]), 1)?;
    let h2 = basis.member(2).expect("level 1 basis starts at h_2").poly().clone();
    let h3 = basis.member(3).expect("basis reaches h_3").poly().clone();
    out.check(h2 == poly(&[(4, 0, 1, 1), (2, 2, -2, 1), (0, 4, 1, 1)]), format!("h_2 = {h2}"));
    let combo = &h3 - &h2.shift(0, 1).scale(&Rational::new(15.into(), 8.into()));
    let expected = poly(&[(5, 0, 1, 1), (2, 3, 5, 2), (0, 5, -3, 2)]);
    out.check(combo == expected, format!("h_3 - (15/8)*y*h_2 = {combo}"));
    Ok(out.finish(Suite::TwoFive))
}

fn example() -> Result<SuiteReport> {
    let mut out = Lines::new();
    let ss = [NumericalSemigroup::natural(), sg(&[3, 4])];
    let rows = compatibility_report(&ss, 6)?;
    for r in &rows {
        let ok = r.factorwise == !matches!(r.n, 0 | 2) && r.product == (r.n > 0);
        out.check(ok, format!("n = {}: factor-wise {}, product {}", r.n, r.factorwise, r.product));
    }
    let witnesses: Vec<usize> = rows.iter().filter(|r| !r.agree).map(|r| r.n).collect();
    out.check(witnesses == [2], format!("disagreement at n in {witnesses:?}"));
    Ok(out.finish(Suite::Example))
}

fn criterion() -> Result<SuiteReport> {
    let mut out = Lines::new();
    let bounds = SweepBounds { max_multiplicity: 8, max_conductor: 30, max_n: 6 };
    let r = criterion_sweep(bounds, false)?;
    let bad: Vec<_> = r.theorem_mismatches().collect();
    out.check(bad.is_empty(), format!("{} semigroups, {} records, {} mismatches", r.semigroups, r.records.len(), bad.len()));
    for b in bad.iter().take(10) {
        out.note(format!("{} n = {} {:?}: expected {}, got {}", b.semigroup, b.n, b.check, b.expected, b.actual));
    }
    Ok(out.finish(Suite::Criterion))
}

fn clusters() -> Result<SuiteReport> {
    let mut out = Lines::new();
    let c = cluster_sweep(6, 20, 4)?;
    out.check(true, format!("{} pairs, {} identities", c.pairs, c.identities));
    let lengths = smooth_colengths(8)?;
    let expected: Vec<usize> = (0..=8).map(|i| (i + 1) * (i + 2) / 2).collect();
    out.check(lengths == expected, format!("smooth colengths {lengths:?}"));
    Ok(out.finish(Suite::Clusters))
}

fn conductor() -> Result<SuiteReport> {
    let mut out = Lines::new();
    let r = criterion_sweep(SweepBounds { max_multiplicity: 8, max_conductor: 30, max_n: 6 }, false)?;
    let implied = r.records.iter().filter(|x| x.check == crate::sweep::Check::ConductorImplication);
    let (total, bad) = implied.fold((0, 0), |(t, b), x| (t + 1, b + usize::from(!x.agree)));
    out.check(bad == 0, format!("curves: {total} cases with s_(n+1) > c, {bad} violations"));
    let small = enumerate_semigroups(6, 20);
    let p = product_staircase_sweep(&small, 4)?;
    out.check(
        p.violations.is_empty(),
        format!("pairs (staircases): {} cases, {} with T not containing U, {} violations", p.cases, p.premise_cases, p.violations.len()),
    );
    let large = enumerate_semigroups(8, 30);
    let q = product_conductor_sweep(&large, 6);
    out.check(
        q.violations.is_empty(),
        format!("pairs (indices): {} cases, {} with T not containing U, {} violations", q.cases, q.premise_cases, q.violations.len()),
    );
    Ok(out.finish(Suite::Conductor))
}

fn conjecture() -> Result<SuiteReport> {
    let mut out = Lines::new();
    for r in conjecture_report(&sg(&[5, 7]), 5)? {
        out.check(r.agree, format!("n = {} {:?}: computed {}, conjectured {}", r.n, r.mode, r.computed, r.conjectured));
    }
    Ok(out.finish(Suite::Conjecture))
}

pub fn run(suite: Suite) -> Result<SuiteReport> {
    match suite {
        Suite::HGolden => h_golden(),
        Suite::Table => table(),
        Suite::TwoFive => two_five(),
        Suite::Example => example(),
        Suite::Criterion => criterion(),
        Suite::Clusters => clusters(),
        Suite::Conductor => conductor(),
        Suite::Conjecture => conjecture(),
    }
}
