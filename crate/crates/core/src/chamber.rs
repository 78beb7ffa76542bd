//! The retraction onto the dominant chamber, Newton points and their poset.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::rational::{ceil, floor, is_integer, ExtRational, Rational};
use crate::root_datum::{APoint, LeviDescriptor, RootDatum, ValuationVector};

/// Largest semisimple rank accepted by the subset enumerations.
pub const SUBSET_RANK_GUARD: usize = 8;

/// Largest number of lattice points scanned by [`newton_points_below`].
pub const ENUMERATION_GUARD: usize = 1_000_000;

/// A dominant point `y` lying in `a_P^+` for the parabolic of `levi`,
/// together with an integral `lift` satisfying `p_M(lift) = y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NewtonPoint {
    pub point: APoint,
    pub levi: LeviDescriptor,
    pub lift: Vec<i64>,
}

impl Serialize for NewtonPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NewtonPoint", 3)?;
        st.serialize_field("point", &self.point)?;
        st.serialize_field("levi", &self.levi)?;
        st.serialize_field("lift", &self.lift)?;
        st.end()
    }
}

/// Result of [`retract`]: the point `y = r(d)` and the unique `S` with
/// `y` in `a_P^+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retraction {
    pub y: APoint,
    pub levi: LeviDescriptor,
}

fn check_subset_rank(d: &RootDatum) -> Result<()> {
    if d.l() > SUBSET_RANK_GUARD {
        return Err(Error::RankBound(format!(
            "semisimple rank {} exceeds the subset enumeration limit {SUBSET_RANK_GUARD}",
            d.l()
        )));
    }
    Ok(())
}

/// The set of walls `j` with `<alpha_j, y> = 0`.
pub fn face_of(d: &RootDatum, y: &[Rational]) -> LeviDescriptor {
    let idx: Vec<usize> = (0..d.l()).filter(|&j| d.pair_root(j, y).is_zero()).collect();
    LeviDescriptor::from_indices(&idx)
}

/// `y` lies in `a_P^+`: zero on the walls in `s`, strictly positive elsewhere.
pub fn in_open_face(d: &RootDatum, y: &[Rational], s: LeviDescriptor) -> bool {
    (0..d.l()).all(|j| {
        let p = d.pair_root(j, y);
        if s.contains(j) {
            p.is_zero()
        } else {
            p > Rational::zero()
        }
    })
}

/// Replace `d` by the finite vector `d'` with `d'_i = max(d_i - g_i, 0) + g_i`
/// on the first `l` coordinates, where `g = x_G` is the central point with
/// the torus coordinates of `d`. `-inf` maps to `g_i`.
pub fn finite_ize(d: &RootDatum, v: &ValuationVector) -> Result<APoint> {
    d.check_dim(v.len())?;
    let l = d.l();
    let mut torus = Vec::with_capacity(d.n() - l);
    for (i, x) in v.iter().enumerate().skip(l) {
        torus.push(x.finite().ok_or(Error::NegInfNotAllowed(i + 1))?);
    }
    let g = d.central_point(&torus);
    let mut out = g.0.clone();
    for i in 0..l {
        if let ExtRational::Finite(x) = v[i] {
            if x > g[i] {
                out[i] = x;
            }
        }
    }
    Ok(APoint(out))
}

/// All subsets `S` for which `y = p_M(x, S)` lies in `a_P^+` and `x <= y`.
/// For finite `x` there is exactly one.
pub fn retract_candidates(d: &RootDatum, x: &[Rational]) -> Result<Vec<(LeviDescriptor, APoint)>> {
    d.check_dim(x.len())?;
    check_subset_rank(d)?;
    let mut found = Vec::new();
    for mask in 0..1u64 << d.l() {
        let s = LeviDescriptor::from_mask(mask);
        let y = d.p_m(x, s);
        if in_open_face(d, &y, s) && d.leq(x, &y) {
            found.push((s, y));
        }
    }
    Ok(found)
}

/// The retraction `r` onto the dominant chamber, extended to `-inf` entries
/// in the first `l` coordinates.
pub fn retract(d: &RootDatum, v: &ValuationVector) -> Result<Retraction> {
    let x = finite_ize(d, v)?;
    let mut found = retract_candidates(d, &x)?;
    assert_eq!(found.len(), 1, "retraction of {x} is not unique: {found:?}");
    let (levi, y) = found.pop().unwrap();
    Ok(Retraction { y, levi })
}

pub fn retract_point(d: &RootDatum, x: &[Rational]) -> Result<Retraction> {
    retract(d, &APoint(x.to_vec()).to_valuation())
}

/// Any integer `m` at or below this bound can replace every `-inf` in `v`
/// without changing the retraction.
pub fn neg_inf_bound(d: &RootDatum, v: &ValuationVector) -> Result<i64> {
    let g = finite_ize(d, &ValuationVector(
        v.iter().enumerate().map(|(i, &x)| if i < d.l() { ExtRational::NegInf } else { x }).collect(),
    ))?;
    let mut bound = i64::MAX;
    for i in 0..d.l() {
        if v[i].is_neg_inf() {
            bound = bound.min(floor(&g[i]));
        }
    }
    Ok(bound)
}

/// Nearest-point projection onto the dominant chamber for the `W`-invariant
/// form of [`RootDatum::gram_matrix`], by enumeration of faces and the KKT
/// conditions. Face systems are solved once and reused.
#[derive(Clone, Debug)]
pub struct ClosestPoint {
    /// `alpha_j^# = G^{-1} alpha_j`.
    sharp: Vec<Vec<Rational>>,
    /// Per face `T` (by mask): `T` and the inverse of `(<alpha_k, alpha_j^#>)_{k,j in T}`.
    faces: Vec<(Vec<usize>, QMatrix)>,
}

impl ClosestPoint {
    pub fn new(d: &RootDatum) -> Result<ClosestPoint> {
        check_subset_rank(d)?;
        let gram_inv = linalg::inverse(&d.gram_matrix()).expect("the Gram matrix is positive definite");
        let sharp: Vec<Vec<Rational>> = (0..d.l())
            .map(|j| {
                let a: Vec<Rational> = d.alpha().iter().map(|r| Rational::from_integer(r[j])).collect();
                linalg::mat_vec(&gram_inv, &a)
            })
            .collect();
        let faces = (0..1u64 << d.l())
            .map(|mask| {
                let t = LeviDescriptor::from_mask(mask).indices();
                let h: QMatrix = t.iter().map(|&k| t.iter().map(|&j| d.pair_root(k, &sharp[j])).collect()).collect();
                let inv = if t.is_empty() { Vec::new() } else { linalg::inverse(&h).expect("face system is regular") };
                (t, inv)
            })
            .collect();
        Ok(ClosestPoint { sharp, faces })
    }

    pub fn project(&self, d: &RootDatum, x: &[Rational]) -> APoint {
        for (t, inv) in &self.faces {
            let rhs: Vec<Rational> = t.iter().map(|&k| -d.pair_root(k, x)).collect();
            let lambda = if t.is_empty() { Vec::new() } else { linalg::mat_vec(inv, &rhs) };
            if lambda.iter().any(|c| *c < Rational::zero()) {
                continue;
            }
            let mut y = x.to_vec();
            for (&j, c) in t.iter().zip(&lambda) {
                for (yi, si) in y.iter_mut().zip(&self.sharp[j]) {
                    *yi += c * si;
                }
            }
            if d.is_dominant(&y) {
                return APoint(y);
            }
        }
        unreachable!("the KKT system has a solution on some face")
    }
}

/// The closest dominant point to `x`; see [`ClosestPoint`].
pub fn retract_closest(d: &RootDatum, x: &[Rational]) -> Result<APoint> {
    d.check_dim(x.len())?;
    Ok(ClosestPoint::new(d)?.project(d, x))
}

/// Recognize `y` as an element of `N_G`, returning its certificate.
pub fn is_newton_point(d: &RootDatum, y: &[Rational]) -> Option<NewtonPoint> {
    if y.len() != d.n() || !d.is_dominant(y) {
        return None;
    }
    let s = face_of(d, y);
    let mut lift = Vec::with_capacity(d.n());
    for (i, v) in y.iter().enumerate() {
        if i < d.l() && s.contains(i) {
            lift.push(floor(v));
        } else if is_integer(v) {
            lift.push(v.to_integer());
        } else {
            return None;
        }
    }
    let check: Vec<Rational> = lift.iter().map(|&m| Rational::from_integer(m)).collect();
    assert_eq!(d.p_m(&check, s).0, y, "lift certificate failed");
    Some(NewtonPoint { point: APoint(y.to_vec()), levi: s, lift })
}

/// Every `nu` in `N_G` with `nu <= mu`, sorted by coordinates.
pub fn newton_points_below(d: &RootDatum, mu: &NewtonPoint) -> Result<Vec<NewtonPoint>> {
    newton_points_below_guarded(d, mu, ENUMERATION_GUARD)
}

pub fn newton_points_below_guarded(d: &RootDatum, mu: &NewtonPoint, guard: usize) -> Result<Vec<NewtonPoint>> {
    check_subset_rank(d)?;
    let l = d.l();
    let g = d.central_point(&mu.point[l..]);
    let mut scanned = 0usize;
    let mut out = Vec::new();
    for mask in 0..1u64 << l {
        let s = LeviDescriptor::from_mask(mask);
        let free: Vec<usize> = (0..l).filter(|&i| !s.contains(i)).collect();
        let ranges: Vec<(i64, i64)> = free.iter().map(|&i| (ceil(&g[i]), floor(&mu.point[i]))).collect();
        if ranges.iter().any(|(lo, hi)| lo > hi) {
            continue;
        }
        let size = ranges.iter().try_fold(1usize, |acc, (lo, hi)| acc.checked_mul((hi - lo + 1) as usize));
        scanned = match size.and_then(|z| z.checked_add(scanned)) {
            Some(z) if z <= guard => z,
            _ => return Err(Error::Guard { what: "Newton point enumeration", limit: guard }),
        };
        let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            let mut x = mu.point.0.clone();
            for i in s.indices() {
                x[i] = Rational::zero();
            }
            for (&i, &c) in free.iter().zip(&cur) {
                x[i] = Rational::from_integer(c);
            }
            let y = d.p_m(&x, s);
            if in_open_face(d, &y, s) && d.leq(&y, &mu.point) {
                out.push(is_newton_point(d, &y).expect("box points are Newton points"));
            }
            // odometer
            let mut k = 0;
            while k < cur.len() && cur[k] == ranges[k].1 {
                cur[k] = ranges[k].0;
                k += 1;
            }
            if k == cur.len() {
                break;
            }
            cur[k] += 1;
        }
    }
    out.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(out)
}

/// Covering relations `(i, j)` with `points[i] < points[j]`, sorted.
pub fn hasse(d: &RootDatum, points: &[NewtonPoint]) -> Vec<(usize, usize)> {
    let lt = |i: usize, j: usize| i != j && points[i].point != points[j].point && d.leq(&points[i].point, &points[j].point);
    let n = points.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// `GL_n` slopes `nu_i = x_i - x_{i-1}`, when `d` is `GL_n`.
pub fn slopes(d: &RootDatum, x: &[Rational]) -> Option<Vec<Rational>> {
    d.gl_rank()?;
    let mut prev = Rational::zero();
    Some(
        x.iter()
            .map(|&v| {
                let s = v - prev;
                prev = v;
                s
            })
            .collect(),
    )
}

/// Inverse of [`slopes`]: partial sums.
pub fn from_slopes(nu: &[Rational]) -> APoint {
    let mut acc = Rational::zero();
    APoint(
        nu.iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect(),
    )
}

/// Node label: slope tuple for `GL_n`, coordinates otherwise.
pub fn point_label(d: &RootDatum, x: &[Rational]) -> String {
    let v = slopes(d, x).unwrap_or_else(|| x.to_vec());
    let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(","))
}

/// DOT rendering of the Hasse diagram, edges from smaller to larger.
pub fn hasse_dot(d: &RootDatum, points: &[NewtonPoint]) -> String {
    let mut s = String::from("digraph newton {\n");
    for (i, p) in points.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", point_label(d, &p.point));
    }
    for (i, j) in hasse(d, points) {
        let _ = writeln!(s, "  n{i} -> n{j};");
    }
    s.push_str("}\n");
    s
}

/// The point with `<alpha_j, y> = 1` on every wall, scaled: handy regular point.
pub fn regular_point(d: &RootDatum) -> APoint {
    d.point_with_root_pairings(&vec![Rational::one(); d.l()])
}
