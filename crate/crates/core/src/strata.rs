//! Newton strata: membership conditions, dimensions and codimensions.

use num_traits::Zero;
use serde::Serialize;

use crate::chamber::{self, NewtonPoint};
use crate::error::{Error, Result};
use crate::rational::{ceil, floor, fract, ExtRational, Rational};
use crate::root_datum::{RootDatum, ValuationVector};

/// The Newton point of the stratum containing an integral valuation vector.
pub fn stratum_of(d: &RootDatum, v: &ValuationVector) -> Result<NewtonPoint> {
    d.check_dim(v.len())?;
    if let Some(i) = v.iter().position(|x| matches!(x, ExtRational::Finite(r) if !r.is_integer())) {
        return Err(Error::NonIntegral(i + 1));
    }
    let r = chamber::retract(d, v)?;
    Ok(chamber::is_newton_point(d, &r.y).expect("retraction of an integral vector is a Newton point"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// One condition `val c_i REL bound`, with `i` 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub i: usize,
    pub rel: Relation,
    #[serde(serialize_with = "ser_rational")]
    pub bound: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// The system of conditions cutting out the open stratum of `mu`, or its
/// closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumConditions {
    pub mu: NewtonPoint,
    /// `I_mu`, 0-based.
    pub i_mu: Vec<usize>,
    pub closed: bool,
    pub conditions: Vec<Condition>,
}

impl StratumConditions {
    /// Does the valuation vector `v` satisfy every condition? Values are
    /// compared over the integers, so `<= b` means `<= floor(b)`.
    pub fn accepts(&self, v: &ValuationVector) -> bool {
        v.len() == self.conditions.len()
            && self.conditions.iter().zip(v.iter()).all(|(c, &x)| match c.rel {
                Relation::Le => x <= ExtRational::from(c.bound),
                Relation::Eq => x == ExtRational::from(c.bound),
            })
    }
}

pub fn stratum_conditions(d: &RootDatum, mu: &NewtonPoint, closed: bool) -> StratumConditions {
    let l = d.l();
    let i_mu: Vec<usize> = (0..l).filter(|&i| d.pair_root(i, &mu.point).is_zero()).collect();
    let conditions = (0..d.n())
        .map(|i| {
            let rel = if i < l && (closed || i_mu.contains(&i)) { Relation::Le } else { Relation::Eq };
            Condition { i: i + 1, rel, bound: mu.point[i] }
        })
        .collect();
    StratumConditions { mu: mu.clone(), i_mu, closed, conditions }
}

/// `sum_{i <= l} floor(<omega_i, mu>)`.
pub fn dim_leq(d: &RootDatum, mu: &NewtonPoint) -> i64 {
    mu.point[..d.l()].iter().map(floor).sum()
}

pub fn codim(d: &RootDatum, nu: &NewtonPoint, mu: &NewtonPoint) -> Result<i64> {
    if !d.leq(&nu.point, &mu.point) {
        return Err(Error::Precondition(format!("codim needs nu <= mu, got nu = {} and mu = {}", nu.point, mu.point)));
    }
    let c = dim_leq(d, mu) - dim_leq(d, nu);
    debug_assert!(c >= 0);
    Ok(c)
}

/// `sum_i ceil(<varpi_i, mu - nu>)` with `varpi_i` the fundamental weights
/// in `X^*(A)_Q`; `mu` must be an integral dominant coweight.
pub fn codim_chai(d: &RootDatum, nu: &NewtonPoint, mu: &[Rational]) -> Result<i64> {
    d.check_dim(mu.len())?;
    if !mu.iter().all(|r| r.is_integer()) || !d.is_dominant(mu) {
        return Err(Error::Precondition("codim_chai needs an integral dominant mu".into()));
    }
    if !d.leq(&nu.point, mu) {
        return Err(Error::Precondition("codim_chai needs nu <= mu".into()));
    }
    Ok(d
        .fundamental_weights()
        .iter()
        .map(|w| {
            let p: Rational = w.iter().zip(mu.iter().zip(nu.point.iter())).map(|(a, (m, n))| a * (m - n)).sum();
            ceil(&p)
        })
        .sum())
}

/// `d_G(nu) = sum_{i <= l} fr(<omega_i, nu>)`.
pub fn d_g(d: &RootDatum, nu: &NewtonPoint) -> Rational {
    nu.point[..d.l()].iter().map(fract).sum()
}

/// `<rho', nu>` with `rho' = sum_{i <= l} omega_i`.
pub fn rho_prime_pairing(d: &RootDatum, nu: &NewtonPoint) -> Rational {
    nu.point[..d.l()].iter().sum()
}

/// `d_G(nu)` and `d_M(nu)` computed in the Levi datum of `nu`'s own face.
pub fn d_levi_values(d: &RootDatum, nu: &NewtonPoint) -> (Rational, Rational) {
    let m = d.levi(nu.levi);
    let y = d.to_levi_coords(&nu.point, nu.levi);
    let d_m: Rational = y[..m.l()].iter().map(fract).sum();
    (d_g(d, nu), d_m)
}

pub fn d_levi_check(d: &RootDatum, nu: &NewtonPoint) -> bool {
    let (a, b) = d_levi_values(d, nu);
    a == b
}
