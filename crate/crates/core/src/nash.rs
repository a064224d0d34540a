//! Value semigroups of Nash blowups of monomial curves.
//!
//! Over the generic fiber, the `n`-th Nash blowup records the quotient of
//! `A[[y]]` by the `(n+1)`-th symbolic power, whose special fiber has basis
//! `x^{s_0}, ..., x^{s_n}`. Rewriting `x^s` into that basis produces
//! coefficients `lambda_i y^{s - s_i}`; the blowup's coordinate ring is
//! generated over `A` by the nonzero ones, so its value semigroup is
//! generated by `S` and the exponents `s - s_i` with `lambda_i != 0`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_ideal::{rational_serde, HFamily};
use crate::semigroup::{DifferenceMode, NumericalSemigroup};
use crate::{Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlowupKind {
    Simple,
    Flag,
    IteratedClassical,
    IteratedPoint,
}

impl BlowupKind {
    pub const ALL: [BlowupKind; 4] =
        [BlowupKind::Simple, BlowupKind::Flag, BlowupKind::IteratedClassical, BlowupKind::IteratedPoint];

    /// Row label in the blowup table.
    pub fn label(self) -> &'static str {
        match self {
            BlowupKind::Simple => "Nash_n",
            BlowupKind::Flag => "fNash_n",
            BlowupKind::IteratedClassical => "Nash^n",
            BlowupKind::IteratedPoint => "B^n",
        }
    }
}

impl fmt::Display for BlowupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BlowupKind::Simple => "simple",
            BlowupKind::Flag => "flag",
            BlowupKind::IteratedClassical => "iterated_classical",
            BlowupKind::IteratedPoint => "iterated_point",
        };
        f.write_str(name)
    }
}

/// One exponent `s - s_i` contributed to the output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceRecord {
    /// The reduced element `s`.
    pub s: u32,
    /// Basis index `i`.
    pub i: usize,
    /// `s - s_i`.
    pub exponent: u32,
    /// `lambda_i`, nonzero.
    #[serde(with = "rational_serde")]
    pub coefficient: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NashResult {
    pub input: NumericalSemigroup,
    pub kind: BlowupKind,
    pub n: usize,
    pub output: NumericalSemigroup,
    pub provenance: Vec<ProvenanceRecord>,
}

/// One rewrite `x^s -> x^s - lambda * y^{shift} * h_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub j: usize,
    pub multiplier: Rational,
    pub y_shift: u32,
}

/// `x^s = sum_i lambda_i y^{s - s_i} x^{s_i}` modulo `{h_j : j > n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub s: u32,
    pub n: usize,
    /// `lambda_0, ..., lambda_n`.
    pub coefficients: Vec<Rational>,
    pub trace: Vec<RewriteStep>,
}

impl NormalForm {
    /// The nonzero coefficients by basis index.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NashConfig {
    /// Elements reduced past the point where the output is provably final.
    pub extra_indices: usize,
}

/// Normal-form computations over one semigroup, sharing its `h_m`.
#[derive(Clone, Debug)]
pub struct NashEngine {
    family: HFamily,
    config: NashConfig,
}

impl NashEngine {
    pub fn new(s: &NumericalSemigroup) -> Self {
        Self::with_config(s, NashConfig::default())
    }

    pub fn with_config(s: &NumericalSemigroup, config: NashConfig) -> Self {
        NashEngine { family: HFamily::new(s), config }
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        self.family.semigroup()
    }

    pub fn family(&mut self) -> &mut HFamily {
        &mut self.family
    }

    /// Rewrites `x^s` into the basis `x^{s_0}, ..., x^{s_n}`.
    ///
    /// The largest index `j > n` with a nonzero coefficient is eliminated
    /// with `h_j` until none remains. Homogeneity keeps every term of the
    /// form `x^{s_i} y^{s - s_i}`, so only the coefficients are stored.
    pub fn reduce_modulo(&mut self, n: usize, s: u32) -> Result<NormalForm> {
        let sg = self.family.semigroup().clone();
        let m = sg.index_of(s).ok_or_else(|| Error::InvalidArgument(format!("{s} is not an element of {sg}")))?;
        if m <= n {
            return Err(Error::InvalidArgument(format!("{s} = s_{m} does not exceed s_{n} = {}", sg.element(n))));
        }
        let mut coeffs = vec![Rational::zero(); m + 1];
        coeffs[m] = Rational::one();
        let mut trace = Vec::new();
        for j in (n + 1..=m).rev() {
            if coeffs[j].is_zero() {
                continue;
            }
            let lambda = coeffs[j].clone();
            let h = self.family.get(j)?;
            debug_assert_eq!(h.degree() + (s - h.degree()), s);
            for (i, c) in h.coefficients().iter().enumerate() {
                if !c.is_zero() {
                    coeffs[i] -= &lambda * c;
                }
            }
            debug_assert!(coeffs[j].is_zero());
            trace.push(RewriteStep { j, multiplier: lambda, y_shift: s - h.degree() });
        }
        coeffs.truncate(n + 1);
        Ok(NormalForm { s, n, coefficients: coeffs, trace })
    }

    /// Whether `x^s - sum lambda_i y^{s - s_i} x^{s_i}` equals the sum of the
    /// recorded multiples of the `h_j`.
    pub fn check_normal_form(&mut self, nf: &NormalForm) -> Result<bool> {
        let sg = self.family.semigroup().clone();
        let mut lhs = Poly::monomial(Rational::one(), nf.s, 0);
        for (i, c) in nf.nonzero() {
            let a = sg.element(i);
            lhs.add_term((a, nf.s - a), -c.clone());
        }
        let mut rhs = Poly::zero();
        for step in &nf.trace {
            let h = self.family.get(step.j)?;
            rhs = rhs + h.poly().shift(0, step.y_shift).scale(&step.multiplier);
        }
        Ok(lhs == rhs)
    }

    /// The simple `n`-th Nash blowup.
    ///
    /// Elements `s > s_n` are processed in increasing order. Once `s` reaches
    /// `conductor(out) + s_n`, every remaining difference `s - s_i` lies above
    /// the conductor of the output built so far, so the output is final.
    pub fn simple(&mut self, n: usize) -> Result<NashResult> {
        let result = self.simple_unchecked(n)?;
        check_result(&result, is_normal_simple(&result.input, n))?;
        Ok(result)
    }

    /// [`NashEngine::simple`] without comparing against the criterion.
    pub fn simple_unchecked(&mut self, n: usize) -> Result<NashResult> {
        let sg = self.family.semigroup().clone();
        let mut out = sg.clone();
        let mut provenance = Vec::new();
        let s_n = sg.element(n);
        let mut extra = None;
        let mut m = n + 1;
        loop {
            let s = sg.element(m);
            if extra.is_none() && s >= out.conductor() + s_n {
                extra = Some(self.config.extra_indices);
            }
            match extra {
                Some(0) => break,
                Some(ref mut k) => *k -= 1,
                None => {}
            }
            let candidates = (0..=n).any(|i| !out.contains((s - sg.element(i)) as i64));
            if candidates || extra.is_some() {
                let nf = self.reduce_modulo(n, s)?;
                let mut fresh = Vec::new();
                for (i, c) in nf.nonzero() {
                    let d = s - sg.element(i);
                    if !out.contains(d as i64) {
                        fresh.push(d);
                        provenance.push(ProvenanceRecord { s, i, exponent: d, coefficient: c.clone() });
                    }
                }
                if !fresh.is_empty() {
                    out = NumericalSemigroup::generated_by(out.generators().iter().copied().chain(fresh))
                        .expect("contains a cofinite monoid");
                }
            }
            m += 1;
        }
        Ok(NashResult { input: sg, kind: BlowupKind::Simple, n, output: out, provenance })
    }

    /// The flag `n`-th Nash blowup: the join of the simple ones up to `n`.
    pub fn flag(&mut self, n: usize) -> Result<NashResult> {
        let sg = self.family.semigroup().clone();
        let mut out = sg.clone();
        let mut provenance = Vec::new();
        for level in 0..=n {
            let r = self.simple(level)?;
            out = out.join(&r.output);
            provenance.extend(r.provenance);
        }
        let result = NashResult { input: sg.clone(), kind: BlowupKind::Flag, n, output: out, provenance };
        check_result(&result, is_normal_flag(&sg, n))?;
        Ok(result)
    }
}

fn check_result(r: &NashResult, criterion: bool) -> Result<()> {
    if !r.output.contains_semigroup(&r.input) {
        return Err(Error::CriterionMismatch(format!("{} output {} does not contain {}", r.kind, r.output, r.input)));
    }
    if r.output.is_natural() != criterion {
        return Err(Error::CriterionMismatch(format!(
            "{} blowup of {} at n = {} is {}, but the criterion says {}",
            r.kind,
            r.input,
            r.n,
            r.output,
            if criterion { "normal" } else { "not normal" }
        )));
    }
    Ok(())
}

pub fn nash_semigroup(s: &NumericalSemigroup, n: usize) -> Result<NashResult> {
    NashEngine::new(s).simple(n)
}

pub fn nash_semigroup_with(s: &NumericalSemigroup, n: usize, config: NashConfig) -> Result<NashResult> {
    NashEngine::with_config(s, config).simple(n)
}

pub fn flag_nash_semigroup(s: &NumericalSemigroup, n: usize) -> Result<NashResult> {
    NashEngine::new(s).flag(n)
}

fn require_positive(n: usize, kind: BlowupKind) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{kind} blowups are iterated at least once")));
    }
    Ok(())
}

/// `n` iterations of the classical Nash blowup.
pub fn iterated_classical(s: &NumericalSemigroup, n: usize) -> Result<NashResult> {
    require_positive(n, BlowupKind::IteratedClassical)?;
    let mut out = s.clone();
    for _ in 0..n {
        out = nash_semigroup(&out, 1)?.output;
    }
    Ok(NashResult { input: s.clone(), kind: BlowupKind::IteratedClassical, n, output: out, provenance: Vec::new() })
}

/// `n` iterations of the blowup of the reduced special point.
pub fn iterated_point(s: &NumericalSemigroup, n: usize) -> Result<NashResult> {
    require_positive(n, BlowupKind::IteratedPoint)?;
    let out = (0..n).fold(s.clone(), |acc, _| acc.point_blowup());
    Ok(NashResult { input: s.clone(), kind: BlowupKind::IteratedPoint, n, output: out, provenance: Vec::new() })
}

pub fn blowup(s: &NumericalSemigroup, n: usize, kind: BlowupKind) -> Result<NashResult> {
    match kind {
        BlowupKind::Simple => nash_semigroup(s, n),
        BlowupKind::Flag => flag_nash_semigroup(s, n),
        BlowupKind::IteratedClassical => iterated_classical(s, n),
        BlowupKind::IteratedPoint => iterated_point(s, n),
    }
}

/// `s_{n+1} - 1 in S`.
pub fn is_normal_simple(s: &NumericalSemigroup, n: usize) -> bool {
    s.contains(s.element(n + 1) as i64 - 1)
}

/// `s_m - 1 in S` for some `1 <= m <= n+1`.
pub fn is_normal_flag(s: &NumericalSemigroup, n: usize) -> bool {
    (1..=n + 1).any(|m| s.contains(s.element(m) as i64 - 1))
}

/// All four blowups of one semigroup for `n = 1..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupTable {
    pub input: NumericalSemigroup,
    pub n_max: usize,
    pub rows: Vec<BlowupRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupRow {
    pub kind: BlowupKind,
    /// Entry `k` is the blowup at `n = k + 1`.
    pub outputs: Vec<NumericalSemigroup>,
}

impl BlowupTable {
    pub fn compute(s: &NumericalSemigroup, n_max: usize) -> Result<Self> {
        let mut engine = NashEngine::new(s);
        let simple: Vec<NumericalSemigroup> =
            (0..=n_max).map(|n| engine.simple(n).map(|r| r.output)).collect::<Result<_>>()?;
        let flag: Vec<NumericalSemigroup> = (1..=n_max).map(|n| engine.flag(n).map(|r| r.output)).collect::<Result<_>>()?;
        let mut classical = Vec::with_capacity(n_max);
        let mut point = Vec::with_capacity(n_max);
        let (mut c, mut p) = (s.clone(), s.clone());
        for _ in 0..n_max {
            c = nash_semigroup(&c, 1)?.output;
            p = p.point_blowup();
            classical.push(c.clone());
            point.push(p.clone());
        }
        let rows = vec![
            BlowupRow { kind: BlowupKind::Simple, outputs: simple[1..].to_vec() },
            BlowupRow { kind: BlowupKind::Flag, outputs: flag },
            BlowupRow { kind: BlowupKind::IteratedClassical, outputs: classical },
            BlowupRow { kind: BlowupKind::IteratedPoint, outputs: point },
        ];
        Ok(BlowupTable { input: s.clone(), n_max, rows })
    }

    pub fn row(&self, kind: BlowupKind) -> &[NumericalSemigroup] {
        &self.rows.iter().find(|r| r.kind == kind).expect("every kind has a row").outputs
    }
}

impl fmt::Display for BlowupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut grid: Vec<Vec<String>> = Vec::new();
        grid.push(std::iter::once("n".to_string()).chain((1..=self.n_max).map(|n| n.to_string())).collect());
        for row in &self.rows {
            grid.push(
                std::iter::once(row.kind.label().to_string()).chain(row.outputs.iter().map(|s| s.to_string())).collect(),
            );
        }
        let widths: Vec<usize> =
            (0..=self.n_max).map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        for (k, row) in grid.iter().enumerate() {
            let cells: Vec<String> =
                row.iter().zip(&widths).map(|(cell, &w)| format!("{cell}{}", " ".repeat(w - cell.chars().count()))).collect();
            write!(f, "{}", cells.join(" | ").trim_end())?;
            if k + 1 < grid.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Computed against conjectured value semigroup for one level and mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRecord {
    pub semigroup: NumericalSemigroup,
    pub n: usize,
    pub mode: DifferenceMode,
    pub computed: NumericalSemigroup,
    pub conjectured: NumericalSemigroup,
    pub agree: bool,
}

/// Compares both blowups with the difference semigroups for `n <= n_max`.
pub fn conjecture_report(s: &NumericalSemigroup, n_max: usize) -> Result<Vec<ConjectureRecord>> {
    let mut engine = NashEngine::new(s);
    let mut out = Vec::new();
    let mut flag = s.clone();
    for n in 0..=n_max {
        let simple = engine.simple(n)?.output;
        flag = flag.join(&simple);
        for (mode, computed) in [(DifferenceMode::Simple, simple), (DifferenceMode::Flag, flag.clone())] {
            let conjectured = s.difference_semigroup(n, mode);
            let agree = computed == conjectured;
            out.push(ConjectureRecord { semigroup: s.clone(), n, mode, computed, conjectured, agree });
        }
    }
    Ok(out)
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

    #[test]
    fn one_step_reduction() {
        let mut e = NashEngine::new(&sg(&[5, 7]));
        let nf = e.reduce_modulo(2, 10).unwrap();
        assert_eq!(nf.coefficients, vec![q(3, 7), q(3, 1), q(-25, 7)]);
        assert_eq!(nf.trace.len(), 1);
        assert!(e.check_normal_form(&nf).unwrap());
    }

    #[test]
    fn two_step_reduction() {
        let mut e = NashEngine::new(&sg(&[2, 5]));
        let nf = e.reduce_modulo(1, 5).unwrap();
        assert_eq!(nf.coefficients, vec![q(3, 2), q(-5, 2)]);
        assert_eq!(nf.trace.len(), 2);
        assert!(e.check_normal_form(&nf).unwrap());
    }

    #[test]
    fn smooth_reduction_is_binomial() {
        let mut e = NashEngine::new(&NumericalSemigroup::natural());
        let nf = e.reduce_modulo(3, 4).unwrap();
        assert_eq!(nf.coefficients, vec![q(-1, 1), q(-4, 1), q(-6, 1), q(-4, 1)]);
    }

    #[test]
    fn reduction_preconditions() {
        let mut e = NashEngine::new(&sg(&[5, 7]));
        assert!(e.reduce_modulo(2, 11).is_err());
        assert!(e.reduce_modulo(2, 7).is_err());
    }

    #[test]
    fn table_of_five_seven() {
        let t = BlowupTable::compute(&sg(&[5, 7]), 5).unwrap();
        let show = |k| t.row(k).iter().map(|s: &NumericalSemigroup| s.to_string()).collect::<Vec<_>>().join(" ");
        assert_eq!(show(BlowupKind::Simple), "⟨2,5⟩ ⟨3,5,7⟩ ⟨2,5⟩ ⟨2,3⟩ ⟨1⟩");
        assert_eq!(show(BlowupKind::Flag), "⟨2,5⟩ ⟨2,3⟩ ⟨2,3⟩ ⟨2,3⟩ ⟨1⟩");
        assert_eq!(show(BlowupKind::IteratedClassical), "⟨2,5⟩ ⟨2,3⟩ ⟨1⟩ ⟨1⟩ ⟨1⟩");
        assert_eq!(show(BlowupKind::IteratedPoint), "⟨2,5⟩ ⟨2,3⟩ ⟨1⟩ ⟨1⟩ ⟨1⟩");
        let text = t.to_string();
        assert!(text.starts_with("n "));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn criteria() {
        let s = sg(&[3, 4]);
        assert!(!is_normal_simple(&s, 2));
        assert!(is_normal_simple(&s, 1));
        assert!(!is_normal_flag(&s, 0));
        assert!(is_normal_flag(&s, 1));
        let f = sg(&[5, 7]);
        assert!(!is_normal_flag(&f, 1));
        assert!(!is_normal_flag(&f, 4));
        assert!(is_normal_flag(&f, 5));
    }

    #[test]
    fn provenance_exponents_are_differences() {
        let s = sg(&[5, 7]);
        let r = nash_semigroup(&s, 2).unwrap();
        assert!(!r.provenance.is_empty());
        for p in &r.provenance {
            assert_eq!(p.exponent, p.s - s.element(p.i));
            assert!(p.i <= 2 && !p.coefficient.is_zero());
        }
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<NashResult>(&json).unwrap(), r);
    }

    #[test]
    fn iterated_kinds_need_one_step() {
        assert!(iterated_classical(&sg(&[5, 7]), 0).is_err());
        assert_eq!(iterated_point(&sg(&[5, 7]), 3).unwrap().output, NumericalSemigroup::natural());
    }

    #[test]
    fn conjecture_on_five_seven() {
        let rows = conjecture_report(&sg(&[5, 7]), 5).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|r| r.agree));
    }

    #[test]
    fn extra_indices_do_not_change_output() {
        for g in [&[5, 7][..], &[3, 4], &[4, 6, 9], &[2, 7]] {
            let s = sg(g);
            for n in 0..5 {
                let a = nash_semigroup(&s, n).unwrap().output;
                let b = nash_semigroup_with(&s, n, NashConfig { extra_indices: 3 }).unwrap().output;
                assert_eq!(a, b);
            }
        }
    }
}
