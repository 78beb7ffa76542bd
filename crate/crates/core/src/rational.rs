//! Exact rationals and the rationals extended by `-inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Greatest integer `<= r`.
pub fn floor(r: &Rational) -> i64 {
    Integer::div_floor(r.numer(), r.denom())
}

/// Least integer `>= r`.
pub fn ceil(r: &Rational) -> i64 {
    -Integer::div_floor(&-r.numer(), r.denom())
}

/// Fractional part in `[0, 1)`.
pub fn fract(r: &Rational) -> Rational {
    r - int(floor(r))
}

pub fn is_integer(r: &Rational) -> bool {
    *r.denom() == 1
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => s.parse::<i64>().map(int).map_err(|_| bad()),
    }
}

/// A rational number or `-inf`; `-inf` sorts below every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRational {
    NegInf,
    Finite(Rational),
}

impl ExtRational {
    pub fn finite(self) -> Option<Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::NegInf => None,
        }
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, ExtRational::NegInf)
    }

    /// Product with an integer coefficient. `-inf * 0 = 0`, `-inf * c = -inf`
    /// for `c > 0`, and `None` for `c < 0`.
    pub fn scale(self, c: i64) -> Option<ExtRational> {
        match self {
            ExtRational::Finite(r) => Some(ExtRational::Finite(r * c)),
            ExtRational::NegInf => match c.cmp(&0) {
                Ordering::Less => None,
                Ordering::Equal => Some(ExtRational::Finite(Rational::zero())),
                Ordering::Greater => Some(ExtRational::NegInf),
            },
        }
    }

    pub fn max(self, other: ExtRational) -> ExtRational {
        std::cmp::max(self, other)
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl From<i64> for ExtRational {
    fn from(n: i64) -> Self {
        ExtRational::Finite(int(n))
    }
}

impl Add for ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::NegInf,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => f.write_str("-inf"),
            ExtRational::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "-inf" {
            Ok(ExtRational::NegInf)
        } else {
            parse_rational(t).map(ExtRational::Finite)
        }
    }
}

/// Parse a comma-separated list, or a JSON-style array of quoted entries as
/// emitted by the CLI (`["1/2","1"]`).
pub fn parse_list<T, F>(s: &str, item: F) -> Result<Vec<T>>
where
    F: Fn(&str) -> Result<T>,
{
    let t = s.trim();
    let t = t
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|tok| item(tok.trim().trim_matches('"')))
        .collect()
}

pub fn parse_rationals(s: &str) -> Result<Vec<Rational>> {
    parse_list(s, parse_rational)
}

pub fn parse_ext_rationals(s: &str) -> Result<Vec<ExtRational>> {
    parse_list(s, |t| t.parse())
}
