//! Diagrams `J ⊂ Z²` closed under `J + N² ⊂ J`, stored through their row minima
//! `M_j = min{i : (i, j) ∈ J}`.
//!
//! A profile keeps a finite window `M_{j_lo..=j_hi}` verbatim and describes the
//! rest with two symbolic tails. Each tail is a *rise* function `rise(t) >= 0`
//! with `rise(0) = 0`:
//!
//! ```text
//! M_{j_lo - t} = M_{j_lo} + rise_minus(t)      M_{j_hi + t} = M_{j_hi} - rise_plus(t)
//! ```
//!
//! so monotonicity across the window edges holds by construction.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Minus => "minus",
            Side::Plus => "plus",
        })
    }
}

/// An integer or one of the two infinities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => f.write_str("-inf"),
            ExtInt::PosInf => f.write_str("inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtInt::Finite(v) => s.serialize_i64(*v),
            other => s.collect_str(other),
        }
    }
}

/// Behaviour of `M_j` beyond one end of the window.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TailSpec {
    /// `M_j = +inf` (empty rows); minus side only.
    #[serde(rename = "empty")]
    EmptyRows,
    /// `M_j = -inf` (full rows); plus side only.
    #[serde(rename = "full")]
    FullRows,
    /// Rise `q` over every `period` steps: ceiling on the minus side, floor on the plus side.
    Periodic { period: i64, rise: i64 },
    /// Block `k` has length `base_len * ratio^k` and slope `slopes[k mod m]`,
    /// rasterised by rounding the exact cumulative rise (half up).
    #[serde(rename = "geometric")]
    GeometricBlocks {
        #[serde(with = "slope_list")]
        slopes: Vec<Rational64>,
        ratio: i64,
        base_len: i64,
    },
    /// The inverse staircase of a tail that sat on side `from` of another
    /// diagram; produced by [`DiagramProfile::transpose`].
    Mirrored { from: Side, of: Box<TailSpec> },
}

mod slope_list {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Rational64],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| format!("{}/{}", r.numer(), r.denom())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational64>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_slope(s).map_err(serde::de::Error::custom))
            .collect()
    }

    fn parse_slope(s: &str) -> std::result::Result<Rational64, String> {
        let bad = || format!("slope {s:?} is not of the form \"p/q\"");
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational64::new(n, d))
    }
}

impl TailSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            TailSpec::EmptyRows => "empty",
            TailSpec::FullRows => "full",
            TailSpec::Periodic { .. } => "periodic",
            TailSpec::GeometricBlocks { .. } => "geometric",
            TailSpec::Mirrored { .. } => "mirrored",
        }
    }

    fn is_infinite(&self) -> bool {
        matches!(self, TailSpec::EmptyRows | TailSpec::FullRows)
    }

    /// Finite-valued tail whose rise stays 0 forever.
    pub fn is_flat(&self) -> bool {
        matches!(self, TailSpec::Periodic { rise: 0, .. })
    }

    /// Finite-valued tail whose rise grows without bound.
    pub fn is_rising(&self) -> bool {
        !self.is_infinite() && !self.is_flat()
    }

    /// Gaps between consecutive drops are unbounded along this tail.
    pub fn has_unbounded_gaps(&self) -> bool {
        match self {
            TailSpec::Periodic { rise, .. } => *rise == 0,
            TailSpec::GeometricBlocks { slopes, .. } => slopes.iter().any(|s| s.is_zero()),
            _ => false,
        }
    }

    fn validate(&self, side: Side) -> Result<()> {
        match self {
            TailSpec::EmptyRows if side == Side::Plus => Err(Error::TailMismatch {
                side,
                kind: "empty",
            }),
            TailSpec::FullRows if side == Side::Minus => {
                Err(Error::TailMismatch { side, kind: "full" })
            }
            TailSpec::EmptyRows | TailSpec::FullRows => Ok(()),
            TailSpec::Periodic { period, rise } => {
                if *period < 1 {
                    return Err(Error::InvalidTail(format!(
                        "period must be >= 1, got {period}"
                    )));
                }
                if *rise < 0 {
                    return Err(Error::InvalidTail(format!("rise must be >= 0, got {rise}")));
                }
                Ok(())
            }
            TailSpec::GeometricBlocks {
                slopes,
                ratio,
                base_len,
            } => {
                if slopes.is_empty() {
                    return Err(Error::InvalidTail("slope list is empty".into()));
                }
                if let Some(s) = slopes.iter().find(|s| s.is_negative()) {
                    return Err(Error::InvalidTail(format!("negative slope {s}")));
                }
                if slopes.iter().all(|s| *s == slopes[0]) {
                    return Err(Error::DegenerateAllEqualSlopes);
                }
                if *ratio < 2 {
                    return Err(Error::InvalidTail(format!(
                        "ratio must be >= 2, got {ratio}"
                    )));
                }
                if *base_len < 1 {
                    return Err(Error::InvalidTail(format!(
                        "base_len must be >= 1, got {base_len}"
                    )));
                }
                Ok(())
            }
            TailSpec::Mirrored { from, of } => {
                if *from == side {
                    return Err(Error::TailMismatch {
                        side,
                        kind: "mirrored",
                    });
                }
                of.validate(*from)?;
                if !of.is_rising() || of.contains_zero_slope() {
                    return Err(Error::InvalidTail(
                        "a mirrored tail needs a source with strictly positive slopes".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    fn contains_zero_slope(&self) -> bool {
        match self {
            TailSpec::GeometricBlocks { slopes, .. } => slopes.iter().any(|s| s.is_zero()),
            TailSpec::Mirrored { of, .. } => of.contains_zero_slope(),
            _ => false,
        }
    }

    /// `rise(t)` for `t >= 0`; `None` means infinite.
    pub fn rise(&self, side: Side, t: i64) -> Option<i64> {
        debug_assert!(t >= 0);
        if t == 0 {
            return Some(0);
        }
        match self {
            TailSpec::EmptyRows | TailSpec::FullRows => None,
            TailSpec::Periodic { period, rise } => {
                let num = t as i128 * *rise as i128;
                let den = *period as i128;
                let v = match side {
                    Side::Minus => Integer::div_ceil(&num, &den),
                    Side::Plus => Integer::div_floor(&num, &den),
                };
                Some(v as i64)
            }
            TailSpec::GeometricBlocks {
                slopes,
                ratio,
                base_len,
            } => Some(geometric_rise(slopes, *ratio, *base_len, t)),
            TailSpec::Mirrored { from, of } => match from {
                Side::Minus => {
                    let base = of.count_le(Side::Minus, 0)?;
                    Some(of.count_le(Side::Minus, t)? - base)
                }
                Side::Plus => {
                    let base = of.first_ge(Side::Plus, 1)?;
                    Some(of.first_ge(Side::Plus, t + 1)? - base)
                }
            },
        }
    }

    /// `max{t >= 0 : rise(t) <= u}`; `None` when the rise never exceeds `u`.
    pub fn count_le(&self, side: Side, u: i64) -> Option<i64> {
        debug_assert!(u >= 0);
        match self {
            TailSpec::EmptyRows | TailSpec::FullRows => Some(0),
            TailSpec::Periodic { rise: 0, .. } => None,
            TailSpec::Periodic { period, rise } if side == Side::Minus => {
                Some((u as i128 * *period as i128 / *rise as i128) as i64)
            }
            _ => {
                let exceeds = |t: i64| self.rise(side, t).is_none_or(|r| r > u);
                // smallest t with rise(t) > u, minus one
                Some(search_first(exceeds) - 1)
            }
        }
    }

    /// `min{t >= 0 : rise(t) >= u}`; `None` when the rise never reaches `u`.
    pub fn first_ge(&self, side: Side, u: i64) -> Option<i64> {
        if u <= 0 {
            return Some(0);
        }
        match self {
            TailSpec::EmptyRows | TailSpec::FullRows => Some(1),
            TailSpec::Periodic { rise: 0, .. } => None,
            TailSpec::Periodic { period, rise } if side == Side::Plus => {
                Some(Integer::div_ceil(&(u as i128 * *period as i128), &(*rise as i128)) as i64)
            }
            _ => Some(search_first(|t| self.rise(side, t).is_none_or(|r| r >= u))),
        }
    }
}

/// Smallest `t >= 1` with `pred(t)`, for a monotone predicate that eventually holds.
fn search_first(pred: impl Fn(i64) -> bool) -> i64 {
    let mut hi = 1i64;
    while !pred(hi) {
        hi = hi.checked_mul(2).expect("tail search overflow");
    }
    let mut lo = hi / 2; // pred(lo) is false (or lo = 0)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn geometric_rise(slopes: &[Rational64], ratio: i64, base_len: i64, t: i64) -> i64 {
    let den = slopes
        .iter()
        .fold(1i128, |acc, s| acc.lcm(&(*s.denom() as i128)));
    let scaled = |k: usize| -> i128 {
        let s = slopes[k % slopes.len()];
        *s.numer() as i128 * (den / *s.denom() as i128)
    };
    let t = t as i128;
    let (mut start, mut len, mut acc, mut k) = (0i128, base_len as i128, 0i128, 0usize);
    while start + len < t {
        acc += scaled(k) * len;
        start += len;
        len *= ratio as i128;
        k += 1;
    }
    let target = acc + scaled(k) * (t - start);
    // round half up: floor(target/den + 1/2)
    Integer::div_floor(&(2 * target + den), &(2 * den)) as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    pub j_lo: i64,
    pub values: Vec<i64>,
}

/// Finite description of a diagram: verbatim window plus two tails.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramProfile {
    pub window: Window,
    pub minus_tail: TailSpec,
    pub plus_tail: TailSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DefectClass {
    NonNegative,
    NonPositive,
    DifferenceOfProjections,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WoldType {
    PureShift,
    MixedUnitaryAndShift,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub is_simple: bool,
    pub defect_class: DefectClass,
    pub wold_w: WoldType,
    pub wold_z: WoldType,
    pub j0: ExtInt,
    pub j1: ExtInt,
}

/// Inclusive lattice rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub i_min: i64,
    pub i_max: i64,
    pub j_min: i64,
    pub j_max: i64,
}

impl Rect {
    pub fn new(i_min: i64, i_max: i64, j_min: i64, j_max: i64) -> Rect {
        Rect {
            i_min,
            i_max,
            j_min,
            j_max,
        }
    }

    pub fn square(lo: i64, hi: i64) -> Rect {
        Rect::new(lo, hi, lo, hi)
    }

    /// `[ci - n/2, ci - n/2 + n] x [cj - n/2, cj - n/2 + n]`.
    pub fn centered(ci: i64, cj: i64, n: i64) -> Rect {
        let (i0, j0) = (ci - n / 2, cj - n / 2);
        Rect::new(i0, i0 + n, j0, j0 + n)
    }

    pub fn contains(&self, (i, j): (i64, i64)) -> bool {
        (self.i_min..=self.i_max).contains(&i) && (self.j_min..=self.j_max).contains(&j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorderReport {
    pub vb: Vec<(i64, i64)>,
    pub hb: Vec<(i64, i64)>,
    pub inner: Vec<(i64, i64)>,
    pub outer: Vec<(i64, i64)>,
    pub outer_nonempty: bool,
    pub inner_nonempty: bool,
}

impl DiagramProfile {
    pub fn new(j_lo: i64, values: Vec<i64>, minus_tail: TailSpec, plus_tail: TailSpec) -> Self {
        DiagramProfile {
            window: Window { j_lo, values },
            minus_tail,
            plus_tail,
        }
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn j_lo(&self) -> i64 {
        self.window.j_lo
    }

    pub fn j_hi(&self) -> i64 {
        self.window.j_lo + self.window.values.len() as i64 - 1
    }

    fn m_lo(&self) -> i64 {
        self.window.values[0]
    }

    fn m_hi(&self) -> i64 {
        *self.window.values.last().unwrap()
    }

    fn window_has_drop(&self) -> bool {
        self.window.values.windows(2).any(|w| w[0] > w[1])
    }

    pub fn tail(&self, side: Side) -> &TailSpec {
        match side {
            Side::Minus => &self.minus_tail,
            Side::Plus => &self.plus_tail,
        }
    }

    pub fn validate(&self) -> Result<StructureReport> {
        let values = &self.window.values;
        if values.is_empty() {
            return Err(Error::EmptyDiagramWindow);
        }
        for (k, w) in values.windows(2).enumerate() {
            if w[0] < w[1] {
                return Err(Error::MonotonicityViolation {
                    j: self.j_lo() + k as i64,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        self.minus_tail.validate(Side::Minus)?;
        self.plus_tail.validate(Side::Plus)?;
        Ok(self.structure())
    }

    fn structure(&self) -> StructureReport {
        let (outer, inner) = self.corner_flags();
        let defect_class = if !inner {
            DefectClass::NonNegative
        } else if !outer {
            DefectClass::NonPositive
        } else {
            DefectClass::DifferenceOfProjections
        };
        let wold = |mixed: bool| {
            if mixed {
                WoldType::MixedUnitaryAndShift
            } else {
                WoldType::PureShift
            }
        };
        StructureReport {
            is_simple: !inner,
            defect_class,
            wold_w: wold(self.plus_tail == TailSpec::FullRows),
            wold_z: wold(self.minus_tail.is_flat()),
            j0: match self.minus_tail {
                TailSpec::EmptyRows => ExtInt::Finite(self.j_lo()),
                _ => ExtInt::NegInf,
            },
            j1: match self.plus_tail {
                TailSpec::FullRows => ExtInt::Finite(self.j_hi()),
                _ => ExtInt::PosInf,
            },
        }
    }

    /// `(outer corners exist, inner corners exist)`, decided from the tails.
    fn corner_flags(&self) -> (bool, bool) {
        let drop = self.window_has_drop();
        let rising = self.minus_tail.is_rising() || self.plus_tail.is_rising();
        let outer = drop || rising || self.minus_tail == TailSpec::EmptyRows;
        let inner = drop || rising || self.plus_tail == TailSpec::FullRows;
        (outer, inner)
    }

    pub fn eval_m(&self, j: i64) -> ExtInt {
        let (j_lo, j_hi) = (self.j_lo(), self.j_hi());
        if j < j_lo {
            match self.minus_tail.rise(Side::Minus, j_lo - j) {
                Some(r) => ExtInt::Finite(self.m_lo() + r),
                None => ExtInt::PosInf,
            }
        } else if j > j_hi {
            match self.plus_tail.rise(Side::Plus, j - j_hi) {
                Some(r) => ExtInt::Finite(self.m_hi() - r),
                None => ExtInt::NegInf,
            }
        } else {
            ExtInt::Finite(self.window.values[(j - j_lo) as usize])
        }
    }

    /// Column minima `N_i = min{j : M_j <= i}`.
    pub fn eval_n(&self, i: i64) -> ExtInt {
        if i >= self.m_lo() {
            match self.minus_tail.count_le(Side::Minus, i - self.m_lo()) {
                Some(t) => ExtInt::Finite(self.j_lo() - t),
                None => ExtInt::NegInf,
            }
        } else if i >= self.m_hi() {
            let idx = self.window.values.partition_point(|&m| m > i);
            ExtInt::Finite(self.j_lo() + idx as i64)
        } else {
            match self.plus_tail.first_ge(Side::Plus, self.m_hi() - i) {
                Some(s) => ExtInt::Finite(self.j_hi() + s),
                None => ExtInt::PosInf,
            }
        }
    }

    pub fn contains(&self, (i, j): (i64, i64)) -> bool {
        self.eval_m(j) <= ExtInt::Finite(i)
    }

    /// `M'_j = M_{j - dj} + di`.
    pub fn translate(&self, di: i64, dj: i64) -> DiagramProfile {
        DiagramProfile {
            window: Window {
                j_lo: self.window.j_lo + dj,
                values: self.window.values.iter().map(|m| m + di).collect(),
            },
            minus_tail: self.minus_tail.clone(),
            plus_tail: self.plus_tail.clone(),
        }
    }

    /// Profile of the reflected diagram `{(j, i) : (i, j) ∈ J}`.
    pub fn transpose(&self) -> Result<DiagramProfile> {
        self.validate()?;
        for side in [Side::Minus, Side::Plus] {
            if self.tail(side).contains_zero_slope() {
                return Err(Error::UnsupportedTranspose(format!(
                    "{side} tail has a zero-slope block, whose mirror image would be vertical"
                )));
            }
        }
        let (m_lo, m_hi) = (self.m_lo(), self.m_hi());
        let (new_minus, i_lo) = match &self.plus_tail {
            TailSpec::FullRows => (TailSpec::Periodic { period: 1, rise: 0 }, m_hi - 1),
            TailSpec::Periodic { rise: 0, .. } => (TailSpec::EmptyRows, m_hi),
            TailSpec::Periodic { period, rise } => (
                TailSpec::Periodic {
                    period: *rise,
                    rise: *period,
                },
                m_hi - rise,
            ),
            other => (
                TailSpec::Mirrored {
                    from: Side::Plus,
                    of: Box::new(other.clone()),
                },
                m_hi - 1,
            ),
        };
        let (new_plus, i_hi) = match &self.minus_tail {
            TailSpec::EmptyRows => (TailSpec::Periodic { period: 1, rise: 0 }, m_lo),
            TailSpec::Periodic { rise: 0, .. } => (TailSpec::FullRows, m_lo - 1),
            TailSpec::Periodic { period, rise } => (
                TailSpec::Periodic {
                    period: *rise,
                    rise: *period,
                },
                m_lo,
            ),
            other => (
                TailSpec::Mirrored {
                    from: Side::Minus,
                    of: Box::new(other.clone()),
                },
                m_lo,
            ),
        };
        if i_lo > i_hi {
            return Err(Error::UnsupportedTranspose(
                "the reflected set has no finite column (diagram is a half-plane)".into(),
            ));
        }
        let values = (i_lo..=i_hi)
            .map(|i| {
                self.eval_n(i).finite().ok_or_else(|| {
                    Error::UnsupportedTranspose(format!("column minimum at i={i} is infinite"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let out = DiagramProfile::new(i_lo, values, new_minus, new_plus);
        out.validate()?;
        Ok(out)
    }

    /// Border and corner points inside `view`, plus global corner flags.
    pub fn borders(&self, view: Rect) -> BorderReport {
        let (outer_nonempty, inner_nonempty) = self.corner_flags();
        let mut report = BorderReport {
            vb: Vec::new(),
            hb: Vec::new(),
            inner: Vec::new(),
            outer: Vec::new(),
            outer_nonempty,
            inner_nonempty,
        };
        for j in view.j_min..=view.j_max {
            let (m, above) = (self.eval_m(j), self.eval_m(j - 1));
            if let ExtInt::Finite(mj) = m {
                if view.contains((mj, j)) {
                    report.vb.push((mj, j));
                    if above > m {
                        report.outer.push((mj, j));
                    }
                }
            }
            if let ExtInt::Finite(ma) = above {
                if m < above && view.contains((ma, j)) {
                    report.inner.push((ma, j));
                }
            }
            if m < above {
                let lo = m.finite().unwrap_or(i64::MIN).max(view.i_min);
                let hi = above.finite().map_or(i64::MAX, |a| a - 1).min(view.i_max);
                report.hb.extend((lo..=hi).map(|i| (i, j)));
            }
        }
        report
    }
}

impl fmt::Display for DiagramProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}
