//! Sums of monomials `c pi^v` with rational exponents, evaluation of the
//! orbit sums `c_i` on torus points, and the classical Newton polygon.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::chamber;
use crate::error::{Error, Result};
use crate::rational::{parse_rational, ExtRational, Rational};
use crate::root_datum::{APoint, RootDatum, ValuationVector, Weight};

/// A finite sum `sum_v c_v pi^v`, keyed by exponent. `val(pi) = -1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<Rational, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Rational::one(), Rational::zero())
    }

    pub fn monomial(coeff: Rational, exp: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_monomial(&self) -> Option<(Rational, Rational)> {
        match self.terms.iter().next() {
            Some((&v, &c)) if self.terms.len() == 1 => Some((c, v)),
            _ => None,
        }
    }

    /// `-min v`, or `-inf` for the zero polynomial.
    pub fn val(&self) -> ExtRational {
        self.terms.keys().next().map_or(ExtRational::NegInf, |v| ExtRational::Finite(-v))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (v, c) in &other.terms {
            let e = terms.entry(*v).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(v);
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(v, c)| (*v, -c)).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (v, c) in &self.terms {
            for (w, e) in &other.terms {
                out = out.add(&LaurentPoly::monomial(c * e, v + w));
            }
        }
        out
    }

    pub fn invert_monomial(&self) -> Result<LaurentPoly> {
        let (c, v) = self
            .as_monomial()
            .ok_or_else(|| Error::Precondition(format!("cannot invert the non-monomial {self}")))?;
        Ok(LaurentPoly::monomial(c.recip(), -v))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(v, c)| Monomial { coeff: *c, exp: *v }.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (v, c) in &self.terms {
            seq.serialize_element(&[c.to_string(), v.to_string()])?;
        }
        seq.end()
    }
}

/// `coeff * pi^exp` with `coeff != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub coeff: Rational,
    pub exp: Rational,
}

impl Monomial {
    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::monomial(self.coeff, self.exp)
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial { coeff: self.coeff * other.coeff, exp: self.exp + other.exp }
    }

    pub fn pow(self, k: i64) -> Monomial {
        let k32 = i32::try_from(k).expect("exponent fits in i32");
        Monomial { coeff: self.coeff.pow(k32), exp: self.exp * k }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*pi^({})", self.coeff, self.exp)
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Accepts `c*pi^(v)`, `c*pi^v`, `c*pi`, `pi^(v)`, `-pi^(v)` and `c`.
    fn from_str(s: &str) -> Result<Monomial> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad monomial {s:?}"));
        let (coeff_part, pi_part) = match t.find("pi") {
            Some(k) => (&t[..k], Some(&t[k + 2..])),
            None => (&t[..], None),
        };
        let coeff_part = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
        let coeff = match (coeff_part, pi_part.is_some()) {
            ("", true) | ("+", true) => Rational::one(),
            ("-", true) => -Rational::one(),
            ("", false) => return Err(bad()),
            (c, _) => parse_rational(c)?,
        };
        let exp = match pi_part {
            None => Rational::zero(),
            Some("") => Rational::one(),
            Some(rest) => {
                let rest = rest.strip_prefix('^').ok_or_else(bad)?;
                let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
                parse_rational(rest)?
            }
        };
        if coeff.is_zero() {
            return Err(Error::Parse(format!("zero coefficient in {s:?}: torus coordinates must be invertible")));
        }
        Ok(Monomial { coeff, exp })
    }
}

/// A point `a` of `A(F)`, given by the values `omega_i(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    pub values: Vec<Monomial>,
}

impl TorusPoint {
    pub fn one(n: usize) -> TorusPoint {
        TorusPoint { values: vec![Monomial { coeff: Rational::one(), exp: Rational::zero() }; n] }
    }

    /// Common denominator `N` of the exponents.
    pub fn denominator(&self) -> i64 {
        self.values.iter().fold(1, |acc, m| acc.lcm(m.exp.denom()))
    }

    pub fn mul(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint { values: self.values.iter().zip(&other.values).map(|(a, b)| a.mul(*b)).collect() }
    }

    /// The point `w a`, with `lambda(w a) = (w^{-1} lambda)(a)`.
    pub fn act(&self, d: &RootDatum, w: &crate::root_datum::WeylElement) -> TorusPoint {
        let inv = w.inverse(d.generators());
        let values = (0..d.n())
            .map(|i| {
                let wl = inv.act_on_weight(w, &Weight::basis(d.n(), i));
                eval_char(&wl, self)
            })
            .collect();
        TorusPoint { values }
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for TorusPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<TorusPoint> {
        let s = s.trim();
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
        let values = inner
            .split(',')
            .map(|tok| tok.trim().trim_matches('"').parse())
            .collect::<Result<Vec<Monomial>>>()?;
        Ok(TorusPoint { values })
    }
}

/// `lambda(a) = prod_i omega_i(a)^{lambda_i}`.
pub fn eval_char(lambda: &[i64], a: &TorusPoint) -> Monomial {
    lambda
        .iter()
        .zip(&a.values)
        .fold(Monomial { coeff: Rational::one(), exp: Rational::zero() }, |acc, (&k, m)| acc.mul(m.pow(k)))
}

/// `nu_a` with `<lambda, nu_a> = val lambda(a)`.
pub fn nu_a(a: &TorusPoint) -> APoint {
    APoint(a.values.iter().map(|m| -m.exp).collect())
}

/// `c_i(a) = sum over W omega_i of e^lambda(a)`, and the valuations `d_c`.
pub fn eval_c(d: &RootDatum, a: &TorusPoint) -> Result<(Vec<LaurentPoly>, ValuationVector)> {
    d.check_dim(a.values.len())?;
    let mut values = Vec::with_capacity(d.n());
    for i in 0..d.n() {
        let orbit = d.weyl_orbit(&Weight::basis(d.n(), i))?;
        let c = orbit.iter().fold(LaurentPoly::zero(), |acc, lam| acc.add(&eval_char(lam, a).to_poly()));
        values.push(c);
    }
    let d_c = ValuationVector(values.iter().map(LaurentPoly::val).collect());
    Ok((values, d_c))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RnuReport {
    pub a: String,
    pub d_c: ValuationVector,
    pub nu_a: APoint,
    pub nu_dom: APoint,
    pub r_d_c: APoint,
    /// `r(d_c)` equals the dominant representative of `nu_a`.
    pub equal: bool,
    /// `val c_i <= <omega_i, nu_dom>` everywhere, with equality off `I_M`.
    pub inequalities: bool,
    /// Off `I_M`, a single orbit term attains the maximal valuation.
    pub strict: bool,
    pub pass: bool,
}

pub fn check_thm_rnu(d: &RootDatum, a: &TorusPoint) -> Result<RnuReport> {
    let (_, d_c) = eval_c(d, a)?;
    let nu = nu_a(a);
    let (nu_dom, _) = d.dominant_rep(&nu);
    let r = chamber::retract(d, &d_c)?;
    let equal = r.y == nu_dom;
    let face = chamber::face_of(d, &nu_dom);
    let mut inequalities = true;
    let mut strict = true;
    for i in 0..d.n() {
        let bound = ExtRational::Finite(nu_dom[i]);
        let off_face = i >= d.l() || !face.contains(i);
        inequalities &= d_c[i] <= bound;
        if off_face {
            inequalities &= d_c[i] == bound;
            let orbit = d.weyl_orbit(&Weight::basis(d.n(), i))?;
            let attaining = orbit.iter().filter(|lam| -eval_char(lam, a).exp == nu_dom[i]).count();
            strict &= attaining == 1;
        }
    }
    Ok(RnuReport {
        a: a.to_string(),
        d_c,
        nu_a: nu,
        pass: equal && inequalities && strict,
        nu_dom,
        r_d_c: r.y,
        equal,
        inequalities,
        strict,
    })
}

/// Shape of randomly generated torus points.
#[derive(Clone, Debug)]
pub struct RandomConfig {
    /// Exponents are drawn from `(1/N) Z` with `N` from this list.
    pub denominators: Vec<i64>,
    /// Numerators lie in `[-bound * N, bound * N]`.
    pub bound: i64,
    pub coefficients: Vec<Rational>,
    /// Probability of a point built to make orbit terms cancel.
    pub cancellation_rate: f64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            denominators: vec![1, 2, 3],
            bound: 3,
            coefficients: [1, -1, 2, -2, 3].iter().map(|&c| Rational::from_integer(c)).collect(),
            cancellation_rate: 0.5,
        }
    }
}

pub fn random_torus_point<R: Rng>(d: &RootDatum, rng: &mut R, cfg: &RandomConfig) -> TorusPoint {
    if rng.gen_bool(cfg.cancellation_rate) {
        return cancelling_torus_point(d, rng, cfg);
    }
    let n_den = *cfg.denominators.choose(rng).expect("non-empty denominators");
    let values = (0..d.n())
        .map(|_| Monomial {
            coeff: *cfg.coefficients.choose(rng).expect("non-empty coefficients"),
            exp: Rational::new(rng.gen_range(-cfg.bound * n_den..=cfg.bound * n_den), n_den),
        })
        .collect();
    TorusPoint { values }
}

/// A point whose `nu_a` lies on random walls of the chamber, with signs
/// chosen so that `alpha_j(a) = -1` on as many of those walls as possible,
/// then moved by a random Weyl group element.
pub fn cancelling_torus_point<R: Rng>(d: &RootDatum, rng: &mut R, cfg: &RandomConfig) -> TorusPoint {
    let (n, l) = (d.n(), d.l());
    let n_den = *cfg.denominators.choose(rng).expect("non-empty denominators");
    let walls: Vec<bool> = (0..l).map(|_| rng.gen_bool(0.6)).collect();
    // dominant nu: pairings b_j >= 0, zero on the walls, then torus part
    let pairings: Vec<Rational> = walls
        .iter()
        .map(|&w| if w { Rational::zero() } else { Rational::new(rng.gen_range(1..=cfg.bound * n_den), n_den) })
        .collect();
    let mut nu = d.point_with_root_pairings(&pairings);
    for i in l..n {
        nu.0[i] = Rational::new(rng.gen_range(-cfg.bound * n_den..=cfg.bound * n_den), n_den);
    }
    // exponents must lie in (1/N') Z for some N'; nu already does
    let mut best_signs = vec![false; n];
    let mut best_score = -1i64;
    for _ in 0..32 {
        let signs: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let score = (0..l)
            .filter(|&j| walls[j])
            .filter(|&j| (0..n).filter(|&i| signs[i]).map(|i| d.alpha()[i][j]).sum::<i64>().rem_euclid(2) == 1)
            .count() as i64;
        if score > best_score {
            best_score = score;
            best_signs = signs;
        }
    }
    let a = TorusPoint {
        values: (0..n)
            .map(|i| Monomial { coeff: if best_signs[i] { -Rational::one() } else { Rational::one() }, exp: -nu[i] })
            .collect(),
    };
    let word: Vec<usize> = (0..rng.gen_range(0..=2 * l + 1)).filter_map(|_| (l > 0).then(|| rng.gen_range(0..l))).collect();
    let w = word.iter().fold(crate::root_datum::WeylElement::identity(n), |acc, &j| acc.compose(&d.reflection(j)));
    a.act(d, &w)
}

/// Slopes (decreasing) of the upper concave hull of `(0, 0)`, the finite
/// `(i, d_i)` and `(n, d_n)`.
pub fn classical_newton_slopes(d: &[ExtRational]) -> Result<Vec<Rational>> {
    let n = d.len();
    if n == 0 {
        return Err(Error::Parse("empty valuation tuple".into()));
    }
    if d[n - 1].is_neg_inf() {
        return Err(Error::NegInfNotAllowed(n));
    }
    let mut pts: Vec<(i64, Rational)> = vec![(0, Rational::zero())];
    for (i, v) in d.iter().enumerate() {
        if let ExtRational::Finite(x) = v {
            pts.push((i as i64 + 1, *x));
        }
    }
    let mut hull: Vec<(i64, Rational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or below the segment a -> p
            let lhs = (b.1 - a.1) * Rational::from_integer(p.0 - a.0);
            let rhs = (p.1 - a.1) * Rational::from_integer(b.0 - a.0);
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut slopes = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let s = (w[1].1 - w[0].1) / Rational::from_integer(w[1].0 - w[0].0);
        for _ in w[0].0..w[1].0 {
            slopes.push(s);
        }
    }
    Ok(slopes)
}
