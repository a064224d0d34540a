//! Staircases: up-closed subsets of a product of numerical semigroups.
//!
//! A monomial ideal of `k[[t^{S_1}]] x ... x k[[t^{S_l}]]` is determined by
//! its set of exponents, an up-set for the order `t <= u` iff
//! `u - t in S_1 x ... x S_l`. Staircases store the minimal antichain of
//! that up-set. Intersections and complements are evaluated on a dense
//! bitset over a bounding box large enough to contain every minimal element
//! of the result.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semigroup::{DifferenceMode, NumericalSemigroup};

pub type Point = Vec<u32>;

/// Whether `u - t` lies in the product of the factors.
fn dominates(ambient: &[NumericalSemigroup], t: &[u32], u: &[u32]) -> bool {
    ambient.iter().zip(t.iter().zip(u)).all(|(s, (&a, &b))| b >= a && s.contains((b - a) as i64))
}

/// The minimal elements of `points` under the product order.
fn minimalize(ambient: &[NumericalSemigroup], mut points: Vec<Point>) -> Vec<Point> {
    points.sort();
    points.dedup();
    // A dominated point is never smaller in every coordinate than its
    // dominator, so sorting by coordinate sum lets each point be checked
    // against the survivors only.
    points.sort_by_key(|p| (p.iter().map(|&v| v as u64).sum::<u64>(), p.clone()));
    let mut keep: Vec<Point> = Vec::new();
    for p in points {
        if !keep.iter().any(|g| dominates(ambient, g, &p)) {
            keep.push(p);
        }
    }
    keep.sort();
    keep
}

/// A dense bitset over `[0, sizes[0]) x ... x [0, sizes[l-1])`.
///
/// Rows enumerate the first `l - 1` coordinates in mixed radix, the last
/// coordinate indexes bits within a row.
#[derive(Clone, Debug)]
pub(crate) struct Frame<'a> {
    ambient: &'a [NumericalSemigroup],
    sizes: Vec<u32>,
    strides: Vec<usize>,
    rows: usize,
    words: usize,
    tail: u64,
    /// Membership of the last factor, as a row.
    last_member: Vec<u64>,
    /// Whether each row's leading coordinates all lie in their factors.
    row_member: Vec<bool>,
}

type Grid = Vec<u64>;

impl<'a> Frame<'a> {
    pub(crate) fn new(ambient: &'a [NumericalSemigroup], sizes: Vec<u32>) -> Self {
        let l = ambient.len();
        assert!(l >= 1 && sizes.len() == l && sizes.iter().all(|&s| s >= 1));
        let mut strides = vec![0usize; l - 1];
        let mut acc = 1usize;
        for k in (0..l - 1).rev() {
            strides[k] = acc;
            acc *= sizes[k] as usize;
        }
        let rows = acc;
        let last = sizes[l - 1] as usize;
        let words = last.div_ceil(64);
        let tail = if last.is_multiple_of(64) { u64::MAX } else { (1u64 << (last % 64)) - 1 };
        let mut frame =
            Frame { ambient, sizes, strides, rows, words, tail, last_member: Vec::new(), row_member: Vec::new() };
        let mut lm = vec![0u64; words];
        for v in 0..last as u32 {
            if ambient[l - 1].contains(v as i64) {
                lm[v as usize / 64] |= 1 << (v % 64);
            }
        }
        frame.last_member = lm;
        frame.row_member = (0..rows)
            .map(|r| frame.row_coords(r).iter().zip(ambient).all(|(&v, s)| s.contains(v as i64)))
            .collect();
        frame
    }

    /// A box around `points` with room for a conductor and a multiplicity
    /// in each coordinate.
    pub(crate) fn around(ambient: &'a [NumericalSemigroup], points: &[&[u32]]) -> Self {
        let sizes = (0..ambient.len())
            .map(|k| {
                let top = points.iter().map(|p| p[k]).max().unwrap_or(0);
                top + ambient[k].conductor() + ambient[k].multiplicity() + 1
            })
            .collect();
        Frame::new(ambient, sizes)
    }

    fn dim(&self) -> usize {
        self.ambient.len()
    }

    fn row_coords(&self, r: usize) -> Vec<u32> {
        let mut rest = r;
        self.strides
            .iter()
            .map(|&st| {
                let v = rest / st;
                rest %= st;
                v as u32
            })
            .collect()
    }

    fn inside(&self, t: &[u32]) -> bool {
        t.iter().zip(&self.sizes).all(|(&v, &s)| v < s)
    }

    fn locate(&self, t: &[u32]) -> (usize, usize) {
        let l = self.dim();
        let r: usize = (0..l - 1).map(|k| t[k] as usize * self.strides[k]).sum();
        (r, t[l - 1] as usize)
    }

    pub(crate) fn empty(&self) -> Grid {
        vec![0; self.rows * self.words]
    }

    fn set(&self, g: &mut Grid, t: &[u32]) {
        if self.inside(t) {
            let (r, v) = self.locate(t);
            g[r * self.words + v / 64] |= 1 << (v % 64);
        }
    }

    /// `row |= row << shift`, truncated to the box.
    fn shift_or(&self, row: &mut [u64], shift: usize) {
        let (q, b) = (shift / 64, shift % 64);
        for i in (q..self.words).rev() {
            let mut add = row[i - q] << b;
            if b > 0 && i > q {
                add |= row[i - q - 1] >> (64 - b);
            }
            row[i] |= add;
        }
        row[self.words - 1] &= self.tail;
    }

    /// Closes a row under adding elements of the last factor.
    fn close_last(&self, row: &mut [u64]) {
        let last = self.sizes[self.dim() - 1] as usize;
        for &a in self.ambient[self.dim() - 1].generators() {
            let mut shift = a as usize;
            while shift < last {
                self.shift_or(row, shift);
                shift *= 2;
            }
        }
    }

    /// The up-set generated by `seeds`, each seed lying in the product.
    pub(crate) fn close(&self, mut g: Grid) -> Grid {
        let w = self.words;
        let l = self.dim();
        let mut row = vec![0u64; w];
        for r in 0..self.rows {
            let coords = self.row_coords(r);
            row.copy_from_slice(&g[r * w..(r + 1) * w]);
            for k in 0..l - 1 {
                for &a in self.ambient[k].generators() {
                    if a <= coords[k] {
                        let src = (r - a as usize * self.strides[k]) * w;
                        for i in 0..w {
                            row[i] |= g[src + i];
                        }
                    }
                }
            }
            self.close_last(&mut row);
            g[r * w..(r + 1) * w].copy_from_slice(&row);
        }
        g
    }

    pub(crate) fn closure_of(&self, seeds: &[Point]) -> Grid {
        let mut g = self.empty();
        for t in seeds {
            self.set(&mut g, t);
        }
        self.close(g)
    }

    /// The set given by a membership predicate on points of the product.
    pub(crate) fn grid_where(&self, mut pred: impl FnMut(&[u32]) -> bool) -> Grid {
        let mut g = self.empty();
        let l = self.dim();
        let mut t = vec![0u32; l];
        for r in 0..self.rows {
            if !self.row_member[r] {
                continue;
            }
            t[..l - 1].copy_from_slice(&self.row_coords(r));
            for v in 0..self.sizes[l - 1] {
                if self.ambient[l - 1].contains(v as i64) {
                    t[l - 1] = v;
                    if pred(&t) {
                        g[r * self.words + v as usize / 64] |= 1 << (v % 64);
                    }
                }
            }
        }
        g
    }

    pub(crate) fn minimal(&self, g: &Grid) -> Vec<Point> {
        let w = self.words;
        let l = self.dim();
        let mut out = Vec::new();
        let mut below = vec![0u64; w];
        for r in 0..self.rows {
            let cur = &g[r * w..(r + 1) * w];
            if cur.iter().all(|&x| x == 0) {
                continue;
            }
            let coords = self.row_coords(r);
            below.iter_mut().for_each(|x| *x = 0);
            for k in 0..l - 1 {
                for &a in self.ambient[k].generators() {
                    if a <= coords[k] {
                        let src = (r - a as usize * self.strides[k]) * w;
                        for i in 0..w {
                            below[i] |= g[src + i];
                        }
                    }
                }
            }
            for &a in self.ambient[l - 1].generators() {
                let (q, b) = (a as usize / 64, a as usize % 64);
                for i in q..w {
                    let mut s = cur[i - q] << b;
                    if b > 0 && i > q {
                        s |= cur[i - q - 1] >> (64 - b);
                    }
                    below[i] |= s;
                }
            }
            for i in 0..w {
                let mut bits = cur[i] & !below[i];
                while bits != 0 {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    let mut p = coords.clone();
                    p.push(i as u32 * 64 + b);
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    /// Points of the product inside the box that are not in `g`.
    pub(crate) fn complement(&self, g: &Grid) -> Vec<Point> {
        let w = self.words;
        let mut out = Vec::new();
        for r in 0..self.rows {
            if !self.row_member[r] {
                continue;
            }
            let coords = self.row_coords(r);
            for i in 0..w {
                let mut bits = self.last_member[i] & !g[r * w + i];
                while bits != 0 {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    let mut p = coords.clone();
                    p.push(i as u32 * 64 + b);
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    pub(crate) fn complement_count(&self, g: &Grid) -> usize {
        let w = self.words;
        (0..self.rows)
            .filter(|&r| self.row_member[r])
            .map(|r| (0..w).map(|i| (self.last_member[i] & !g[r * w + i]).count_ones() as usize).sum::<usize>())
            .sum()
    }
}

fn and(a: &Grid, b: &Grid) -> Grid {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn or(a: &Grid, b: &Grid) -> Grid {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

/// Pairwise sums of two antichains, closed up inside `frame`.
fn product_in(frame: &Frame<'_>, a: &[Point], b: &[Point]) -> Grid {
    let mut g = frame.empty();
    for p in a {
        for q in b {
            let s: Point = p.iter().zip(q).map(|(x, y)| x + y).collect();
            frame.set(&mut g, &s);
        }
    }
    frame.close(g)
}

/// An up-closed subset of `S_1 x ... x S_l`, stored by its minimal antichain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Staircase {
    ambient: Vec<NumericalSemigroup>,
    minimal: Vec<Point>,
}

impl Staircase {
    /// The up-set generated by `generators`, each a point of the product.
    pub fn new(ambient: Vec<NumericalSemigroup>, generators: Vec<Point>) -> Result<Self> {
        if ambient.is_empty() {
            return Err(Error::InvalidArgument("a staircase needs at least one factor".into()));
        }
        for g in &generators {
            if g.len() != ambient.len() {
                return Err(Error::InvalidArgument(format!("point {g:?} has the wrong dimension")));
            }
            if !g.iter().zip(&ambient).all(|(&v, s)| s.contains(v as i64)) {
                return Err(Error::InvalidArgument(format!("point {g:?} is not in the product")));
            }
        }
        let minimal = minimalize(&ambient, generators);
        Ok(Staircase { ambient, minimal })
    }

    /// Like [`Staircase::new`], rejecting up-sets with infinite complement.
    pub fn cofinite(ambient: Vec<NumericalSemigroup>, generators: Vec<Point>) -> Result<Self> {
        let s = Self::new(ambient, generators)?;
        if !s.is_cofinite() {
            return Err(Error::InfiniteComplement);
        }
        Ok(s)
    }

    /// The whole product, generated by the origin.
    pub fn whole(ambient: Vec<NumericalSemigroup>) -> Self {
        let l = ambient.len();
        Staircase { ambient, minimal: vec![vec![0; l]] }
    }

    fn from_grid(frame: &Frame<'_>, g: &Grid) -> Self {
        Staircase { ambient: frame.ambient.to_vec(), minimal: frame.minimal(g) }
    }

    pub fn ambient(&self) -> &[NumericalSemigroup] {
        &self.ambient
    }

    pub fn minimal(&self) -> &[Point] {
        &self.minimal
    }

    pub fn dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        t.len() == self.dim() && self.minimal.iter().any(|g| dominates(&self.ambient, g, t))
    }

    /// Whether every point of `other` lies in `self`.
    pub fn contains_staircase(&self, other: &Staircase) -> bool {
        other.minimal.iter().all(|g| self.contains(g))
    }

    /// Finite complement: each axis carries a minimal element.
    pub fn is_cofinite(&self) -> bool {
        (0..self.dim()).all(|k| self.axis_point(k).is_some())
    }

    fn axis_point(&self, k: usize) -> Option<u32> {
        self.minimal.iter().filter(|g| g.iter().enumerate().all(|(j, &v)| j == k || v == 0)).map(|g| g[k]).min()
    }

    fn complement_frame(&self) -> Result<Frame<'_>> {
        let sizes = (0..self.dim())
            .map(|k| self.axis_point(k).map(|a| a + self.ambient[k].conductor() + 1))
            .collect::<Option<Vec<u32>>>()
            .ok_or(Error::InfiniteComplement)?;
        Ok(Frame::new(&self.ambient, sizes))
    }

    /// Points of the product outside the staircase.
    pub fn complement(&self) -> Result<Vec<Point>> {
        let frame = self.complement_frame()?;
        Ok(frame.complement(&frame.closure_of(&self.minimal)))
    }

    pub fn colength(&self) -> Result<usize> {
        let frame = self.complement_frame()?;
        Ok(frame.complement_count(&frame.closure_of(&self.minimal)))
    }

    fn check_ambient(&self, other: &Staircase) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Ideal sum: the union of the up-sets.
    pub fn sum(&self, other: &Staircase) -> Result<Staircase> {
        self.check_ambient(other)?;
        let gens = self.minimal.iter().chain(&other.minimal).cloned().collect();
        Ok(Staircase { ambient: self.ambient.clone(), minimal: minimalize(&self.ambient, gens) })
    }

    pub fn intersection(&self, other: &Staircase) -> Result<Staircase> {
        self.check_ambient(other)?;
        let pts: Vec<&[u32]> = self.minimal.iter().chain(&other.minimal).map(|p| p.as_slice()).collect();
        let frame = Frame::around(&self.ambient, &pts);
        let g = and(&frame.closure_of(&self.minimal), &frame.closure_of(&other.minimal));
        Ok(Staircase::from_grid(&frame, &g))
    }

    /// Ideal product: generated by pairwise sums.
    pub fn product(&self, other: &Staircase) -> Result<Staircase> {
        self.check_ambient(other)?;
        let mut gens = Vec::with_capacity(self.minimal.len() * other.minimal.len());
        for p in &self.minimal {
            for q in &other.minimal {
                gens.push(p.iter().zip(q).map(|(x, y)| x + y).collect());
            }
        }
        Ok(Staircase { ambient: self.ambient.clone(), minimal: minimalize(&self.ambient, gens) })
    }

    /// The staircase `I x S_2 x ...` placing `self` (over one factor)
    /// in coordinate `k` of `ambient`.
    pub fn extend(&self, ambient: &[NumericalSemigroup], k: usize) -> Result<Staircase> {
        if self.dim() != 1 || ambient.get(k) != Some(&self.ambient[0]) {
            return Err(Error::AmbientMismatch);
        }
        let minimal = self
            .minimal
            .iter()
            .map(|p| {
                let mut t = vec![0; ambient.len()];
                t[k] = p[0];
                t
            })
            .collect();
        Ok(Staircase { ambient: ambient.to_vec(), minimal })
    }
}

impl fmt::Debug for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Staircase({:?}, {:?})", self.ambient, self.minimal)
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let amb: Vec<String> = self.ambient.iter().map(|s| s.to_string()).collect();
        let pts: Vec<String> = self
            .minimal
            .iter()
            .map(|p| format!("({})", p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}: {{{}}}", amb.join(" x "), pts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct StaircaseRecord {
    ambient: Vec<NumericalSemigroup>,
    minimal: Vec<Point>,
    colength: Option<usize>,
}

impl Serialize for Staircase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StaircaseRecord { ambient: self.ambient.clone(), minimal: self.minimal.clone(), colength: self.colength().ok() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Staircase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = StaircaseRecord::deserialize(d)?;
        let s = Staircase::new(r.ambient, r.minimal).map_err(serde::de::Error::custom)?;
        if r.colength.is_some() && s.colength().ok() != r.colength {
            return Err(serde::de::Error::custom("recorded colength does not match the staircase"));
        }
        Ok(s)
    }
}

/// `{s in S : s >= s_j}`, the ideal of values of order at least `s_j`.
pub fn order_ideal(s: &NumericalSemigroup, j: usize) -> Staircase {
    let sj = s.element(j);
    let top = sj + s.conductor() + s.multiplicity();
    let gens = (sj..=top).filter(|&v| s.contains(v as i64)).map(|v| vec![v]).collect();
    Staircase { ambient: vec![s.clone()], minimal: minimalize(std::slice::from_ref(s), gens) }
}

/// The special-fiber flag `a_1 > a_2 > ... > a_{n+1}` of one curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagCluster {
    semigroup: NumericalSemigroup,
    ideals: Vec<Staircase>,
}

impl FlagCluster {
    pub fn new(s: &NumericalSemigroup, n: usize) -> Self {
        FlagCluster { semigroup: s.clone(), ideals: (1..=n + 1).map(|j| order_ideal(s, j)).collect() }
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    /// `n`, the number of ideals minus one.
    pub fn level(&self) -> usize {
        self.ideals.len() - 1
    }

    /// `a_j` for `1 <= j <= n + 1`; `a_0` is the whole ring.
    pub fn ideal(&self, j: usize) -> Option<Staircase> {
        if j == 0 {
            Some(Staircase::whole(vec![self.semigroup.clone()]))
        } else {
            self.ideals.get(j - 1).cloned()
        }
    }

    pub fn ideals(&self) -> &[Staircase] {
        &self.ideals
    }
}

/// The common value of the three cluster expressions at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterIdentity {
    pub i: usize,
    pub staircase: Staircase,
    pub colength: usize,
    pub verified: bool,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

/// Checks the three descriptions of the level-`i` product cluster of two
/// flags for every `i <= i_max`, sharing one bounding box.
///
/// With `m_j = a_j x S_2` and `n_j = S_1 x b_j` (and `m_0`, `n_0` the whole
/// ring) the expressions are
/// `sum_{j=0}^{i+1} m_j n_{i+1-j}`, `sum_{j=0}^{i+1} m_j cap n_{i+1-j}` and
/// `bigcap_{j=1}^{i+1} (m_j + n_{i+2-j})`. All three must coincide, with
/// colength `binom(i+2, 2)`.
pub fn product_cluster_identities(u: &FlagCluster, v: &FlagCluster, i_max: usize) -> Result<Vec<ClusterIdentity>> {
    if i_max > u.level() || i_max > v.level() {
        return Err(Error::InvalidArgument(format!(
            "level {i_max} exceeds the flags ({} and {})",
            u.level(),
            v.level()
        )));
    }
    let ambient = vec![u.semigroup.clone(), v.semigroup.clone()];
    let top = |f: &FlagCluster| f.ideals[..=i_max].iter().flat_map(|a| a.minimal.iter().map(|p| p[0])).max().unwrap_or(0);
    let corner = [top(u), top(v)];
    let frame = Frame::around(&ambient, &[&corner]);
    let lift = |f: &FlagCluster, j: usize, k: usize| -> Vec<Point> {
        f.ideal(j)
            .expect("level checked")
            .minimal
            .iter()
            .map(|p| {
                let mut t = vec![0, 0];
                t[k] = p[0];
                t
            })
            .collect()
    };
    let m_gens: Vec<Vec<Point>> = (0..=i_max + 1).map(|j| lift(u, j, 0)).collect();
    let n_gens: Vec<Vec<Point>> = (0..=i_max + 1).map(|j| lift(v, j, 1)).collect();
    let m: Vec<Grid> = m_gens.iter().map(|g| frame.closure_of(g)).collect();
    let n: Vec<Grid> = n_gens.iter().map(|g| frame.closure_of(g)).collect();

    let mut out = Vec::with_capacity(i_max + 1);
    for i in 0..=i_max {
        let right = (0..=i + 1)
            .map(|j| product_in(&frame, &m_gens[j], &n_gens[i + 1 - j]))
            .reduce(|a, b| or(&a, &b))
            .expect("nonempty");
        let middle =
            (0..=i + 1).map(|j| and(&m[j], &n[i + 1 - j])).reduce(|a, b| or(&a, &b)).expect("nonempty");
        let left = (1..=i + 1).map(|j| or(&m[j], &n[i + 2 - j])).reduce(|a, b| and(&a, &b)).expect("nonempty");
        if right != middle || middle != left {
            let show = |g: &Grid| Staircase::from_grid(&frame, g).to_string();
            return Err(Error::IdentityViolation(format!(
                "level {i} over {} x {}: products {}, intersections {}, sums {}",
                u.semigroup,
                v.semigroup,
                show(&right),
                show(&middle),
                show(&left)
            )));
        }
        let colength = frame.complement_count(&left);
        let expected = binomial(i as u64 + 2, 2) as usize;
        if colength != expected {
            return Err(Error::IdentityViolation(format!(
                "level {i} over {} x {}: colength {colength}, expected {expected}",
                u.semigroup, v.semigroup
            )));
        }
        out.push(ClusterIdentity { i, staircase: Staircase::from_grid(&frame, &left), colength, verified: true });
    }
    Ok(out)
}

pub fn product_cluster_identity(u: &FlagCluster, v: &FlagCluster, i: usize) -> Result<ClusterIdentity> {
    let fu = FlagCluster { semigroup: u.semigroup.clone(), ideals: u.ideals[..=i.min(u.level())].to_vec() };
    let fv = FlagCluster { semigroup: v.semigroup.clone(), ideals: v.ideals[..=i.min(v.level())].to_vec() };
    Ok(product_cluster_identities(&fu, &fv, i)?.pop().expect("one level per index"))
}

fn check_factors(ss: &[NumericalSemigroup]) -> Result<()> {
    if ss.is_empty() {
        return Err(Error::InvalidArgument("at least one factor is required".into()));
    }
    Ok(())
}

/// Sum of enumeration indices of a point of the product.
fn index_sum(ss: &[NumericalSemigroup], t: &[u32]) -> usize {
    t.iter().zip(ss).map(|(&v, s)| s.index_of(v).expect("point of the product")).sum()
}

fn t_frame(ss: &[NumericalSemigroup], n: usize) -> Frame<'_> {
    Frame::new(ss, ss.iter().map(|s| s.element(n + 1) + s.conductor() + s.multiplicity() + 1).collect())
}

/// `T_{n+1}`: value tuples `(s_{1,m_1}, ..., s_{l,m_l})` with `sum m_i >= n+1`.
pub fn t_staircase(ss: &[NumericalSemigroup], n: usize) -> Result<Staircase> {
    check_factors(ss)?;
    let frame = t_frame(ss, n);
    let g = frame.grid_where(|t| index_sum(ss, t) > n);
    Ok(Staircase::from_grid(&frame, &g))
}

/// The special-fiber ideal `b_{n+1}`, generated by the initial monomials
/// `prod_i x_i^{s_{i,m_i}}` of the products `prod_i h_{i,m_i}` with
/// `sum m_i >= n+1`.
pub fn b_staircase(ss: &[NumericalSemigroup], n: usize) -> Result<Staircase> {
    check_factors(ss)?;
    let frame = t_frame(ss, n);
    let mut seeds = Vec::new();
    let mut idx = vec![0usize; ss.len()];
    // Odometer over index tuples whose values fit in the box.
    'outer: loop {
        if idx.iter().sum::<usize>() > n {
            seeds.push(idx.iter().zip(ss).map(|(&m, s)| s.element(m)).collect::<Point>());
        }
        for k in 0..ss.len() {
            idx[k] += 1;
            if ss[k].element(idx[k]) < frame.sizes[k] {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    Ok(Staircase::from_grid(&frame, &frame.closure_of(&seeds)))
}

/// `U = {t : t_k >= c_k}`, the exponents of the conductor ideal.
pub fn conductor_region(ss: &[NumericalSemigroup]) -> Result<Staircase> {
    check_factors(ss)?;
    let mut gens: Vec<Point> = vec![Vec::new()];
    for s in ss {
        let (c, e) = (s.conductor(), s.multiplicity());
        gens = gens.into_iter().flat_map(|p| (c..c + e).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    Ok(Staircase { ambient: ss.to_vec(), minimal: minimalize(ss, gens) })
}

/// `T ⊉ U`.
pub fn not_contained(t: &Staircase, u: &Staircase) -> Result<bool> {
    t.check_ambient(u)?;
    Ok(!t.contains_staircase(u))
}

/// Regularity of the simple or flag `n`-th Nash blowup of a product of
/// curves: every factor has some `1 <= m <= n+1` with `s_m - 1 in S`.
pub fn product_regular(ss: &[NumericalSemigroup], n: usize, mode: DifferenceMode) -> Result<bool> {
    check_factors(ss)?;
    if mode == DifferenceMode::Simple && ss.len() < 2 {
        return Err(Error::SimpleRequiresTwoFactors { factors: ss.len() });
    }
    Ok(ss.iter().all(|s| crate::nash::is_normal_flag(s, n)))
}

/// Whether the tangent direction of factor `i` kills the generator indexed
/// by `assignment`: `s_{i,m_i} - 1 not in S_i`.
pub fn xi_vanishes(ss: &[NumericalSemigroup], i: usize, assignment: &[usize]) -> Result<bool> {
    if assignment.len() != ss.len() || i >= ss.len() {
        return Err(Error::InvalidArgument(format!(
            "assignment {assignment:?} or factor {i} does not fit {} factors",
            ss.len()
        )));
    }
    let s = &ss[i];
    Ok(!s.contains(s.element(assignment[i]) as i64 - 1))
}

/// All `l`-tuples of non-negative integers summing to `total`.
pub fn compositions(l: usize, total: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if l == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(l - 1, total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Every tangent direction survives on some generator with `sum m_j = n+1`.
pub fn tangent_directions_independent(ss: &[NumericalSemigroup], n: usize) -> Result<bool> {
    check_factors(ss)?;
    let assignments = compositions(ss.len(), n + 1);
    for i in 0..ss.len() {
        let mut alive = false;
        for a in &assignments {
            if !xi_vanishes(ss, i, a)? {
                alive = true;
                break;
            }
        }
        if !alive {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Factor-wise against product regularity at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityRow {
    pub n: usize,
    pub factorwise: bool,
    pub product: bool,
    pub agree: bool,
}

/// Compares "each simple Nash blowup of a factor is regular" with the simple
/// criterion for the product, for `n <= n_max`.
pub fn compatibility_report(ss: &[NumericalSemigroup], n_max: usize) -> Result<Vec<CompatibilityRow>> {
    (0..=n_max)
        .map(|n| {
            let factorwise = ss.iter().all(|s| crate::nash::is_normal_simple(s, n));
            let product = product_regular(ss, n, DifferenceMode::Simple)?;
            Ok(CompatibilityRow { n, factorwise, product, agree: factorwise == product })
        })
        .collect()
}
