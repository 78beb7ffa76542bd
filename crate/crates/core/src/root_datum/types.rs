use std::fmt;
use std::ops::{Deref, Index};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{ExtRational, Rational};

/// A point of `a_Q`, stored as its tuple of pairings `<omega_i, x>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct APoint(pub Vec<Rational>);

impl APoint {
    pub fn zero(n: usize) -> APoint {
        APoint(vec![Rational::from_integer(0); n])
    }

    pub fn from_ints(v: &[i64]) -> APoint {
        APoint(v.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn add(&self, other: &APoint) -> APoint {
        APoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &APoint) -> APoint {
        APoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn to_valuation(&self) -> ValuationVector {
        ValuationVector(self.0.iter().map(|&x| ExtRational::Finite(x)).collect())
    }
}

impl Deref for APoint {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for APoint {
    fn from(v: Vec<Rational>) -> Self {
        APoint(v)
    }
}

impl fmt::Display for APoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for APoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

/// A tuple in `Q~^l x Q^(n-l)`: coordinates may be `-inf` in the
/// semisimple slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuationVector(pub Vec<ExtRational>);

impl ValuationVector {
    pub fn from_ints(v: &[i64]) -> ValuationVector {
        ValuationVector(v.iter().map(|&x| ExtRational::from(x)).collect())
    }

    /// The finite point, if no coordinate is `-inf`.
    pub fn to_point(&self) -> Option<APoint> {
        self.0.iter().map(|x| x.finite()).collect::<Option<Vec<_>>>().map(APoint)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.finite().map_or(true, |r| r.is_integer()))
    }
}

impl Deref for ValuationVector {
    type Target = [ExtRational];
    fn deref(&self) -> &[ExtRational] {
        &self.0
    }
}

impl From<APoint> for ValuationVector {
    fn from(p: APoint) -> Self {
        p.to_valuation()
    }
}

impl fmt::Display for ValuationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for ValuationVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

/// A character of `A`, in the basis `omega_1, ..., omega_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight(vec![0; n])
    }

    pub fn basis(n: usize, i: usize) -> Weight {
        let mut v = vec![0; n];
        v[i] = 1;
        Weight(v)
    }

    /// `<lambda, x>` for a finite point.
    pub fn pair(&self, x: &[Rational]) -> Rational {
        self.0.iter().zip(x).map(|(&c, v)| v * c).sum()
    }
}

impl Deref for Weight {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

/// A subset of the simple roots (0-based indices), naming the standard
/// parabolic `P = MN` with `Delta_M = S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LeviDescriptor {
    mask: u64,
}

impl LeviDescriptor {
    pub const MAX_RANK: usize = 64;

    pub fn empty() -> Self {
        LeviDescriptor { mask: 0 }
    }

    pub fn full(l: usize) -> Self {
        LeviDescriptor::from_mask(if l >= 64 { u64::MAX } else { (1u64 << l) - 1 })
    }

    pub fn from_mask(mask: u64) -> Self {
        LeviDescriptor { mask }
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        LeviDescriptor {
            mask: idx.iter().fold(0, |m, &j| m | (1u64 << j)),
        }
    }

    /// Validated construction from 1-based indices, as used on the CLI.
    pub fn from_one_based(idx: &[usize], l: usize) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&j| j == 0 || j > l) {
            return Err(Error::Precondition(format!("simple root index {bad} out of range 1..={l}")));
        }
        Ok(Self::from_indices(&idx.iter().map(|j| j - 1).collect::<Vec<_>>()))
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn contains(self, j: usize) -> bool {
        j < 64 && self.mask & (1u64 << j) != 0
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&j| self.contains(j)).collect()
    }

    pub fn one_based(self) -> Vec<usize> {
        self.indices().into_iter().map(|j| j + 1).collect()
    }
}

impl fmt::Display for LeviDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for LeviDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.one_based())
    }
}
