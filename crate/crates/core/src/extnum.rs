//! Exact non-negative extended reals and the band test `a^q <= b <= a^p`.
//!
//! Exponents are exact; the query point `(a, b)` is a pair of floats. The
//! indeterminate forms `0^0` and `1^inf` count as satisfied, which makes a
//! single band formula cover all degenerate exponent values.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;

/// A value in `[0, inf]`: an exact rational or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtReal {
    Finite(BigRational),
    Infinity,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtReal::Finite(BigRational::one())
    }

    /// `num/den`; panics on a zero denominator or a negative value.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        assert!(!r.is_negative(), "extended reals are non-negative");
        ExtReal::Finite(r)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(r) if r.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExtReal::Finite(r) => Some(r),
            ExtReal::Infinity => None,
        }
    }

    /// `1/0 = inf`, `1/inf = 0`.
    pub fn reciprocal(&self) -> Self {
        match self {
            ExtReal::Infinity => ExtReal::zero(),
            ExtReal::Finite(r) if r.is_zero() => ExtReal::Infinity,
            ExtReal::Finite(r) => ExtReal::Finite(r.recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::Infinity => f64::INFINITY,
            ExtReal::Finite(r) => r.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// `base^self` for `base` in `[0, 1]`, with `0^0 = 1` and `1^inf = 1`.
    pub fn pow_of(&self, base: f64) -> f64 {
        match self {
            _ if self.is_zero() => 1.0,
            ExtReal::Infinity => {
                if base >= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            ExtReal::Finite(_) => base.powf(self.to_f64()),
        }
    }
}

impl From<BigRational> for ExtReal {
    fn from(r: BigRational) -> Self {
        ExtReal::from_rational(r)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Infinity, ExtReal::Infinity) => Ordering::Equal,
            (ExtReal::Infinity, _) => Ordering::Greater,
            (_, ExtReal::Infinity) => Ordering::Less,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Infinity => f.write_str("inf"),
            ExtReal::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    /// Accepts `inf`, `n` or `n/d`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(ExtReal::Infinity);
        }
        let bad = || Error::InvalidArgument(format!("not an extended real: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() || num.is_negative() || den.is_negative() {
            return Err(bad());
        }
        Ok(ExtReal::Finite(BigRational::new(num, den)))
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

impl Membership {
    pub fn as_str(self) -> &'static str {
        match self {
            Membership::Inside => "in",
            Membership::Boundary => "boundary",
            Membership::Outside => "out",
        }
    }

    /// Tri-state union: any Inside wins, then any Boundary.
    pub fn union<I: IntoIterator<Item = Membership>>(items: I) -> Membership {
        let mut best = Membership::Outside;
        for m in items {
            match m {
                Membership::Inside => return Membership::Inside,
                Membership::Boundary => best = Membership::Boundary,
                Membership::Outside => {}
            }
        }
        best
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Membership {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "in" => Ok(Membership::Inside),
            "boundary" => Ok(Membership::Boundary),
            "out" => Ok(Membership::Outside),
            _ => Err(Error::InvalidArgument(format!("unknown membership {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandMembership {
    pub state: Membership,
    pub tolerance_used: f64,
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfUnitInterval { name, value })
    }
}

/// Membership of `(a, b)` in `{a^q <= b <= a^p}` for `p <= q`.
pub fn band_member(a: f64, b: f64, p: &ExtReal, q: &ExtReal, tol: f64) -> Result<BandMembership> {
    if p > q {
        return Err(Error::InvertedBand {
            p: p.to_string(),
            q: q.to_string(),
        });
    }
    check_unit("a", a)?;
    check_unit("b", b)?;
    Ok(BandMembership {
        state: eval_band(a, b, p, q, tol),
        tolerance_used: tol,
    })
}

/// Band evaluation without the `p <= q` precondition.
///
/// Used directly for the middle band of the double-shift case, whose
/// exponents may come in either order. Inputs must already lie in `[0, 1]`.
pub fn eval_band(a: f64, b: f64, p: &ExtReal, q: &ExtReal, tol: f64) -> Membership {
    use Membership::*;
    let (p0, q0, pinf, qinf) = (p.is_zero(), q.is_zero(), p.is_infinite(), q.is_infinite());

    if p0 && qinf {
        return Inside;
    }
    if p0 && q0 {
        return if a == 0.0 || b == 1.0 {
            Inside
        } else {
            Outside
        };
    }
    if pinf && qinf {
        return if a == 1.0 || b == 0.0 {
            Inside
        } else {
            Outside
        };
    }
    if a == 0.0 {
        // a^p = 0 for p > 0, and a^q = 0 for any q > 0
        return if p0 {
            Inside
        } else if b == 0.0 {
            Boundary
        } else {
            Outside
        };
    }
    if b == 0.0 {
        // 0 >= a^q only for q = inf (a < 1), or the 1^inf convention at a = 1
        return if qinf { Inside } else { Outside };
    }

    let (la, lb) = (a.ln(), b.ln());
    let mut slack = f64::INFINITY;
    if !p0 {
        let upper = if pinf {
            if a == 1.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        } else {
            p.to_f64() * la - lb
        };
        slack = slack.min(upper);
    }
    if !qinf {
        slack = slack.min(lb - q.to_f64() * la);
    }
    if slack >= tol {
        Inside
    } else if slack <= -tol {
        Outside
    } else {
        Boundary
    }
}
