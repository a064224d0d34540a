//! Command results and their text form.
//!
//! Text is rendered only from these values, so a cached result prints the
//! same bytes as a fresh one.

use std::fmt;

use nashcurve::graph_ideal::HRecord;
use nashcurve::nash::{BlowupTable, ConjectureRecord, NashResult};
use nashcurve::verify::SuiteReport;
use nashcurve::{DifferenceMode, NumericalSemigroup};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Output {
    Semigroup(SemigroupInfo),
    H(HRecord),
    Nash(NashResult),
    Table(BlowupTable),
    Check(Verdict),
    Product(ProductReport),
    Conjecture(Vec<ConjectureRecord>),
    Verify(SuiteReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupInfo {
    pub semigroup: NumericalSemigroup,
    pub generators: Vec<u32>,
    pub multiplicity: u32,
    pub conductor: u32,
    pub frobenius: Option<u32>,
    pub genus: u32,
    pub gaps: Vec<u32>,
    pub small_elements: Vec<u32>,
}

impl SemigroupInfo {
    pub fn new(s: &NumericalSemigroup) -> Self {
        SemigroupInfo {
            semigroup: s.clone(),
            generators: s.generators().to_vec(),
            multiplicity: s.multiplicity(),
            conductor: s.conductor(),
            frobenius: s.frobenius(),
            genus: s.genus(),
            gaps: s.gaps(),
            small_elements: s.small_elements().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub semigroup: NumericalSemigroup,
    pub n: usize,
    pub mode: DifferenceMode,
    pub normal: bool,
    /// Value semigroup of the blowup, computed independently of the criterion.
    pub computed: NumericalSemigroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductReport {
    pub factors: Vec<String>,
    pub n: usize,
    pub mode: DifferenceMode,
    pub regular: bool,
    pub factorwise_simple: Vec<bool>,
    pub factorwise_flag: Vec<bool>,
    pub tangent_directions_independent: bool,
    pub t_minimal: usize,
    pub t_colength: usize,
    /// `T` does not contain the conductor region.
    pub t_misses_conductor: bool,
    /// Cluster identity colengths for levels `0..=n`, two factors only.
    pub cluster_colengths: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub bounds: String,
    pub semigroups: usize,
    pub records: usize,
    pub theorem_mismatches: usize,
    pub conjecture_disagreements: usize,
}

fn joined<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn mode_name(m: DifferenceMode) -> &'static str {
    match m {
        DifferenceMode::Simple => "simple",
        DifferenceMode::Flag => "flag",
    }
}

impl fmt::Display for SemigroupInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.semigroup)?;
        writeln!(f, "multiplicity: {}", self.multiplicity)?;
        writeln!(f, "conductor: {}", self.conductor)?;
        match self.frobenius {
            Some(fr) => writeln!(f, "frobenius: {fr}")?,
            None => writeln!(f, "frobenius: none")?,
        }
        writeln!(f, "genus: {}", self.genus)?;
        writeln!(f, "gaps: {}", joined(&self.gaps))?;
        writeln!(f, "elements below conductor: {}", joined(&self.small_elements))
    }
}

fn nash_text(f: &mut fmt::Formatter<'_>, r: &NashResult) -> fmt::Result {
    let label = r.kind.label();
    let label = label.strip_suffix('n').map_or(label.to_string(), |stem| format!("{stem}{}", r.n));
    writeln!(f, "{label}({}) = {}", r.input, r.output)?;
    for p in &r.provenance {
        writeln!(f, "  x^{}: coefficient {} on h_{}, adds {}", p.s, p.coefficient, p.i, p.exponent)?;
    }
    Ok(())
}

impl fmt::Display for ProductReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.regular { "regular" } else { "not regular" })?;
        writeln!(f, "factors: {}", self.factors.join(" x "))?;
        writeln!(f, "n: {}, mode: {}", self.n, mode_name(self.mode))?;
        writeln!(f, "factor-wise simple normal: {}", joined(&self.factorwise_simple))?;
        writeln!(f, "factor-wise flag normal: {}", joined(&self.factorwise_flag))?;
        writeln!(f, "tangent directions independent: {}", self.tangent_directions_independent)?;
        writeln!(f, "T: {} minimal elements, colength {}", self.t_minimal, self.t_colength)?;
        writeln!(f, "T misses conductor region: {}", self.t_misses_conductor)?;
        if let Some(c) = &self.cluster_colengths {
            writeln!(f, "cluster identity colengths: {} (all three sides agree)", joined(c))?;
        }
        Ok(())
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bounds {}: {} semigroups, {} records", self.bounds, self.semigroups, self.records)?;
        writeln!(f, "theorem mismatches: {}", self.theorem_mismatches)?;
        writeln!(f, "conjecture disagreements: {}", self.conjecture_disagreements)
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Semigroup(info) => info.fmt(f),
            Output::H(h) => writeln!(f, "{}", h.polynomial),
            Output::Nash(r) => nash_text(f, r),
            Output::Table(t) => writeln!(f, "{t}"),
            Output::Check(v) => writeln!(f, "{}", if v.normal { "normal" } else { "not normal" }),
            Output::Product(p) => p.fmt(f),
            Output::Conjecture(rows) => {
                for r in rows {
                    writeln!(
                        f,
                        "{} n={} {}: computed {}, conjectured {}{}",
                        r.semigroup,
                        r.n,
                        mode_name(r.mode),
                        r.computed,
                        r.conjectured,
                        if r.agree { "" } else { "  DISAGREE" }
                    )?;
                }
                let agree = rows.iter().filter(|r| r.agree).count();
                writeln!(f, "{agree}/{} agree", rows.len())
            }
            Output::Verify(r) => {
                writeln!(f, "{}: {}", r.suite, if r.passed { "PASS" } else { "FAIL" })?;
                for line in &r.lines {
                    writeln!(f, "{line}")?;
                }
                Ok(())
            }
        }
    }
}
