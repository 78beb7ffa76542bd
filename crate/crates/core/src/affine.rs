//! The extended affine Weyl group `X_*(A) x| W`, its length-zero elements
//! and the invariants attached to `Lambda_G`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::chamber;
use crate::linalg;
use crate::lattice::ZMatrix;
use crate::rational::{fract, Rational};
use crate::root_datum::{int_identity, int_mat_mul, positive_roots, APoint, RootDatum, WeylElement};
use crate::strata;

/// `v -> linear * v + translation`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineWeylElement {
    pub translation: Vec<i64>,
    pub linear: WeylElement,
}

impl AffineWeylElement {
    pub fn identity(n: usize) -> Self {
        AffineWeylElement { translation: vec![0; n], linear: WeylElement::identity(n) }
    }

    pub fn translation(mu: &[i64]) -> Self {
        AffineWeylElement { translation: mu.to_vec(), linear: WeylElement::identity(mu.len()) }
    }

    pub fn apply(&self, v: &[Rational]) -> APoint {
        let mut y = self.linear.apply(v);
        for (a, &t) in y.0.iter_mut().zip(&self.translation) {
            *a += Rational::from_integer(t);
        }
        y
    }

    /// `(mu, w)(mu', w') = (mu + w mu', w w')`.
    pub fn compose(&self, other: &AffineWeylElement) -> AffineWeylElement {
        let wm = self.linear.apply_int(&other.translation);
        AffineWeylElement {
            translation: self.translation.iter().zip(wm).map(|(a, b)| a + b).collect(),
            linear: self.linear.compose(&other.linear),
        }
    }

    /// Same group element, ignoring the stored words.
    pub fn same_as(&self, other: &AffineWeylElement) -> bool {
        self.translation == other.translation && self.linear.matrix == other.linear.matrix
    }
}

/// An element of `Lambda_G = Z^n / <e_1, ..., e_l>`, given by an integral lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaGElement {
    pub lift: Vec<i64>,
}

impl LambdaGElement {
    /// The element with lift `(0, ..., 0, class)`.
    pub fn from_class(d: &RootDatum, class: &[i64]) -> Self {
        let mut lift = vec![0; d.l()];
        lift.extend_from_slice(class);
        LambdaGElement { lift }
    }

    pub fn class(&self, d: &RootDatum) -> Vec<i64> {
        self.lift[d.l()..].to_vec()
    }

    pub fn same_class(&self, d: &RootDatum, other: &LambdaGElement) -> bool {
        self.class(d) == other.class(d)
    }

    pub fn add(&self, other: &LambdaGElement) -> LambdaGElement {
        LambdaGElement { lift: self.lift.iter().zip(&other.lift).map(|(a, b)| a + b).collect() }
    }

    /// The same class with `shift` added to the first `l` coordinates.
    pub fn relift(&self, shift: &[i64]) -> LambdaGElement {
        let mut lift = self.lift.clone();
        for (a, b) in lift.iter_mut().zip(shift) {
            *a += b;
        }
        LambdaGElement { lift }
    }

    /// `p_G` of the lift: the central Newton point of the class.
    pub fn newton_point(&self, d: &RootDatum) -> chamber::NewtonPoint {
        let x: Vec<Rational> = self.lift.iter().map(|&m| Rational::from_integer(m)).collect();
        let y = d.p_m(&x, crate::root_datum::LeviDescriptor::full(d.l()));
        chamber::is_newton_point(d, &y).expect("p_G of an integral point is a Newton point")
    }
}

/// An affine function `v -> <lambda, v> + k` on `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub lambda: Vec<i64>,
    pub k: i64,
}

impl AffineRoot {
    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.lambda.iter().zip(v).map(|(&a, x)| x * a).sum::<Rational>() + Rational::from_integer(self.k)
    }
}

/// Simple affine roots, base alcove and the matching reflections.
#[derive(Clone, Debug)]
pub struct AffineData {
    /// `alpha_1, ..., alpha_l`, then `1 - theta_c` for each component.
    pub roots: Vec<AffineRoot>,
    pub reflections: Vec<AffineWeylElement>,
    /// Highest roots in simple-root coordinates, per component.
    pub highest: Vec<Vec<i64>>,
    pub coxeter: Vec<usize>,
    pub base_point: APoint,
}

impl AffineData {
    pub fn new(d: &RootDatum) -> AffineData {
        let (n, l) = (d.n(), d.l());
        let sym = d.root_length_factors();
        let mut roots: Vec<AffineRoot> = (0..l).map(|j| AffineRoot { lambda: d.simple_root(j).0, k: 0 }).collect();
        let mut reflections: Vec<AffineWeylElement> = (0..l)
            .map(|j| AffineWeylElement { translation: vec![0; n], linear: d.reflection(j) })
            .collect();
        let mut highest = Vec::new();
        let mut coxeter = Vec::new();
        let mut pairings = vec![Rational::zero(); l];
        let cartan = d.cartan();
        for comp in d.components() {
            let sub: ZMatrix = comp.nodes.iter().map(|&a| comp.nodes.iter().map(|&b| cartan[a][b]).collect()).collect();
            let theta_local = positive_roots(&sub).pop().expect("a component has roots");
            let mut theta = vec![0i64; l];
            for (&node, &c) in comp.nodes.iter().zip(&theta_local) {
                theta[node] = c;
            }
            let h = theta.iter().sum::<i64>() as usize + 1;
            // theta as a character, and its coroot
            let theta_w: Vec<i64> = (0..n).map(|i| (0..l).map(|j| theta[j] * d.alpha()[i][j]).sum()).collect();
            let d_theta: Rational = (0..l)
                .flat_map(|i| (0..l).map(move |j| (i, j)))
                .map(|(i, j)| sym[i] * Rational::from_integer(theta[i] * theta[j] * d.alpha()[i][j]))
                .sum::<Rational>()
                / Rational::from_integer(2);
            let mut theta_check = vec![0i64; n];
            for j in 0..l {
                let c = Rational::from_integer(theta[j]) * sym[j] / d_theta;
                assert!(c.is_integer(), "theta coroot is integral");
                theta_check[j] = c.to_integer();
            }
            let pair: i64 = theta_w.iter().zip(&theta_check).map(|(a, b)| a * b).sum();
            assert_eq!(pair, 2);
            let matrix: ZMatrix = (0..n)
                .map(|i| (0..n).map(|k| i64::from(i == k) - theta_check[i] * theta_w[k]).collect())
                .collect();
            let linear = d.weyl_element(&matrix).expect("s_theta lies in W");
            roots.push(AffineRoot { lambda: theta_w.iter().map(|c| -c).collect(), k: 1 });
            reflections.push(AffineWeylElement { translation: theta_check, linear });
            for &j in &comp.nodes {
                pairings[j] = Rational::new(1, h as i64 + 1);
            }
            highest.push(theta);
            coxeter.push(h);
        }
        let base_point = d.point_with_root_pairings(&pairings);
        AffineData { roots, reflections, highest, coxeter, base_point }
    }

    pub fn in_base_alcove(&self, v: &[Rational]) -> bool {
        self.roots.iter().all(|a| a.eval(v) > Rational::zero())
    }

    /// Image `a o x^{-1}` of an affine root under `x`.
    pub fn transform_root(&self, d: &RootDatum, x: &AffineWeylElement, a: &AffineRoot) -> AffineRoot {
        let inv = x.linear.inverse(d.generators());
        let n = d.n();
        let lambda: Vec<i64> = (0..n).map(|k| (0..n).map(|i| a.lambda[i] * inv.matrix[i][k]).sum()).collect();
        let shift: i64 = lambda.iter().zip(&x.translation).map(|(a, b)| a * b).sum();
        AffineRoot { lambda, k: a.k - shift }
    }

    /// Does `x` permute the simple affine roots?
    pub fn stabilizes_base_alcove(&self, d: &RootDatum, x: &AffineWeylElement) -> bool {
        let mut images: Vec<AffineRoot> = self.roots.iter().map(|a| self.transform_root(d, x, a)).collect();
        let mut orig = self.roots.clone();
        images.sort();
        orig.sort();
        images == orig
    }
}

/// Greedy descent into the base alcove: left-multiply by the reflection in
/// the lowest-index simple affine root that is negative at `x p0`.
/// Returns the reduced element and the indices used, in order.
pub fn alcove_reduce(d: &RootDatum, data: &AffineData, x: &AffineWeylElement) -> (AffineWeylElement, Vec<usize>) {
    let mut cur = x.clone();
    let mut word = Vec::new();
    loop {
        let p = cur.apply(&data.base_point);
        let Some(i) = data.roots.iter().position(|a| a.eval(&p) < Rational::zero()) else {
            break;
        };
        let next = data.reflections[i].compose(&cur);
        let q = next.apply(&data.base_point);
        assert!(data.roots[i].eval(&q) > Rational::zero(), "reflection crosses the wall");
        cur = next;
        word.push(i);
    }
    let linear = d.weyl_element(&cur.linear.matrix).expect("linear part lies in W");
    cur.linear = linear;
    (cur, word)
}

/// The section `s(nu)`: the unique element of `t_lift W_aff` fixing the
/// base alcove.
pub fn section_s(d: &RootDatum, data: &AffineData, nu: &LambdaGElement) -> AffineWeylElement {
    alcove_reduce(d, data, &AffineWeylElement::translation(&nu.lift)).0
}

pub fn w_nu(d: &RootDatum, data: &AffineData, nu: &LambdaGElement) -> WeylElement {
    section_s(d, data, nu).linear
}

/// `dim a - dim a^{w}`.
pub fn defect_of(w: &WeylElement) -> usize {
    let n = w.dim();
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from_integer(w.matrix[i][j] - i64::from(i == j))).collect())
        .collect();
    linalg::rank(&m)
}

pub fn defect(d: &RootDatum, data: &AffineData, nu: &LambdaGElement) -> usize {
    defect_of(&w_nu(d, data, nu))
}

/// `chi_i(nu) = fr(<omega_i, p_G(lift)>)`, for `i = 1..n` (0-based here).
pub fn chi(d: &RootDatum, nu: &LambdaGElement) -> Vec<Rational> {
    nu.newton_point(d).point.iter().map(fract).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub nu: Vec<i64>,
    /// 1-based simple reflection indices.
    pub w_word: Vec<usize>,
    pub defect: usize,
    #[serde(rename = "d_G", serialize_with = "ser_rational")]
    pub d_g: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub chi_sum: Rational,
    pub pass: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Compare `d_G(nu)` with half the defect, and twice the sum of the `chi_i`
/// with the defect.
pub fn verify_d_equals_half_defect(d: &RootDatum, data: &AffineData, nu: &LambdaGElement) -> DefectReport {
    let x0 = section_s(d, data, nu);
    let def = defect_of(&x0.linear);
    let d_g = strata::d_g(d, &nu.newton_point(d));
    let chi_sum: Rational = chi(d, nu).iter().sum();
    let half = Rational::new(def as i64, 2);
    let pass = d_g == half && chi_sum == half && data.stabilizes_base_alcove(d, &x0);
    DefectReport {
        nu: nu.class(d),
        w_word: x0.linear.word.iter().map(|j| j + 1).collect(),
        defect: def,
        d_g,
        chi_sum,
        pass,
    }
}

/// Coefficients (constant term first) of `det(T - w)`, from the traces of
/// the powers of `w` and Newton's identities.
pub fn char_poly(w: &WeylElement) -> Vec<i64> {
    let n = w.dim();
    let mut traces = Vec::with_capacity(n);
    let mut p = w.matrix.clone();
    for _ in 0..n {
        traces.push((0..n).map(|i| p[i][i] as i128).sum::<i128>());
        p = int_mat_mul(&p, &w.matrix);
    }
    // e_k = (1/k) sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    let mut e = vec![1i128];
    for k in 1..=n {
        let mut s = 0i128;
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            s += sign * e[k - i] * traces[i - 1];
        }
        assert_eq!(s % k as i128, 0);
        e.push(s / k as i128);
    }
    // det(T - w) = sum_k (-1)^k e_k T^{n-k}
    let mut coeffs = vec![0i64; n + 1];
    for (k, ek) in e.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs[n - k] = i64::try_from(sign * ek).expect("characteristic polynomial coefficient fits in i64");
    }
    coeffs
}

fn poly_divmod(a: &[i64], b: &[i64]) -> (Vec<i64>, Vec<i64>) {
    // b is monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![0], r);
    }
    let mut q = vec![0i64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj;
        }
    }
    r.truncate(db.max(1));
    (q, r)
}

/// The `d`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic(d: usize) -> Vec<i64> {
    let mut p = vec![0i64; d + 1];
    p[0] = -1;
    p[d] = 1;
    for e in 1..d {
        if d % e == 0 {
            p = poly_divmod(&p, &cyclotomic(e)).0;
        }
    }
    p
}

pub fn euler_phi(d: usize) -> usize {
    (1..=d).filter(|&k| k.gcd(&d) == 1).count()
}

/// Multiplicity of each cyclotomic factor of `det(T - w)`.
pub fn cyclotomic_factorization(w: &WeylElement) -> BTreeMap<usize, usize> {
    let order = w.order(1 << 20).expect("Weyl group elements have finite order");
    let mut p = char_poly(w);
    let mut out = BTreeMap::new();
    for dd in (1..=order).filter(|k| order % k == 0) {
        let phi = cyclotomic(dd);
        loop {
            let (q, r) = poly_divmod(&p, &phi);
            if r.iter().any(|&c| c != 0) || p.len() < phi.len() {
                break;
            }
            *out.entry(dd).or_insert(0) += 1;
            p = q;
        }
    }
    assert_eq!(p, vec![1], "characteristic polynomial is a product of cyclotomic factors");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharReport {
    pub nu: Vec<i64>,
    /// `(d, m)`: `Phi_d` divides the characteristic polynomial `m` times.
    pub cyclotomic: Vec<(usize, usize)>,
    pub chi: Vec<String>,
    pub pass: bool,
}

/// Every eigenvalue `exp(2 pi i k/d)` of `w_nu` occurs as often as the
/// value `k/d` among the `chi_i(nu)`.
pub fn reflection_char_multiset_check(d: &RootDatum, data: &AffineData, nu: &LambdaGElement) -> CharReport {
    let w = w_nu(d, data, nu);
    let factors = cyclotomic_factorization(&w);
    let chis = chi(d, nu);
    let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
    for c in &chis {
        *counts.entry(*c).or_insert(0) += 1;
    }
    let mut pass = true;
    for (&dd, &m) in &factors {
        let with_den = chis.iter().filter(|c| *c.denom() as usize == dd).count();
        pass &= with_den == euler_phi(dd) * m;
        for k in (0..dd).filter(|&k| k.gcd(&dd) == 1) {
            let key = if dd == 1 { Rational::zero() } else { Rational::new(k as i64, dd as i64) };
            pass &= counts.get(&key).copied().unwrap_or(0) == m;
        }
    }
    pass &= chis.iter().all(|c| factors.contains_key(&(*c.denom() as usize)));
    CharReport {
        nu: nu.class(d),
        cyclotomic: factors.into_iter().collect(),
        chi: chis.iter().map(|c| c.to_string()).collect(),
        pass,
    }
}

/// Every class of `Lambda_G / X_*(A_G)`, as elements with canonical lifts.
pub fn component_classes(d: &RootDatum) -> Vec<LambdaGElement> {
    d.component_group().classes().iter().map(|c| LambdaGElement::from_class(d, c)).collect()
}

/// The identity matrix as a Weyl element of `d`.
pub fn identity_element(d: &RootDatum) -> WeylElement {
    WeylElement { matrix: int_identity(d.n()), word: Vec::new() }
}

/// `w^k`.
pub fn power(w: &WeylElement, k: usize) -> WeylElement {
    let mut out = WeylElement { matrix: int_identity(w.dim()), word: Vec::new() };
    for _ in 0..k {
        out = out.compose(w);
    }
    out
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::rational::{int, rat};

    fn g(s: &str) -> RootDatum {
        s.parse().unwrap()
    }

    /// Brute force: all `(mu, w)` with `mu` in a box and fixed torus part
    /// that send the base point into the base alcove.
    fn stabilizers(d: &RootDatum, data: &AffineData, class: &[i64], radius: i64) -> Vec<AffineWeylElement> {
        let mut group = vec![int_identity(d.n())];
        let mut k = 0;
        while k < group.len() {
            for s in d.generators() {
                let m = int_mat_mul(s, &group[k]);
                if !group.contains(&m) {
                    group.push(m);
                }
            }
            k += 1;
        }
        let l = d.l();
        let mut out = Vec::new();
        let mut v = vec![-radius; l];
        loop {
            let mut mu = v.clone();
            mu.extend_from_slice(class);
            for m in &group {
                let x = AffineWeylElement { translation: mu.clone(), linear: WeylElement { matrix: m.clone(), word: vec![] } };
                if data.in_base_alcove(&x.apply(&data.base_point)) {
                    out.push(x);
                }
            }
            let mut i = 0;
            while i < l && v[i] == radius {
                v[i] = -radius;
                i += 1;
            }
            if i == l {
                break;
            }
            v[i] += 1;
        }
        out
    }

    #[test]
    fn affine_data_of_small_types() {
        let d = g("G2");
        let data = AffineData::new(&d);
        assert_eq!(data.coxeter, vec![6]);
        assert_eq!(data.highest, vec![vec![3, 2]]);
        assert!(data.in_base_alcove(&data.base_point));
        let d = g("GL3*B2");
        let data = AffineData::new(&d);
        assert_eq!(data.coxeter, vec![3, 4]);
        assert_eq!(data.roots.len(), 6);
        assert!(data.in_base_alcove(&data.base_point));
        for r in &data.reflections {
            assert!(r.compose(r).same_as(&AffineWeylElement::identity(d.n())));
        }
        let e8 = AffineData::new(&g("E8"));
        assert_eq!(e8.coxeter, vec![30]);
    }

    #[test]
    fn reflections_fix_their_walls() {
        for grp in ["GL4", "B3", "C3", "G2", "F4", "Gext(D4)"] {
            let d = g(grp);
            let data = AffineData::new(&d);
            for (a, s) in data.roots.iter().zip(&data.reflections) {
                let img = data.transform_root(&d, s, a);
                assert_eq!(img, AffineRoot { lambda: a.lambda.iter().map(|c| -c).collect(), k: -a.k }, "{grp}");
            }
        }
    }

    #[test]
    fn alcove_reduce_examples() {
        let gl2 = g("GL2");
        let data = AffineData::new(&gl2);
        let (x0, word) = alcove_reduce(&gl2, &data, &AffineWeylElement::identity(2));
        assert!(x0.same_as(&AffineWeylElement::identity(2)) && word.is_empty());

        let nu = LambdaGElement { lift: vec![1, 1] };
        let x0 = section_s(&gl2, &data, &nu);
        assert_eq!(x0.linear.word, vec![0]);
        let brute = stabilizers(&gl2, &data, &[1], 4);
        assert_eq!(brute.len(), 1);
        assert!(brute[0].same_as(&x0));

        let central = AffineWeylElement::translation(&[1, 2]);
        let (x0, word) = alcove_reduce(&gl2, &data, &central);
        assert!(x0.same_as(&central) && word.is_empty());
    }

    #[test]
    fn gl3_slope_one_third_is_coxeter() {
        let gl3 = g("GL3");
        let data = AffineData::new(&gl3);
        let nu = LambdaGElement::from_class(&gl3, &[1]);
        let w = w_nu(&gl3, &data, &nu);
        assert_eq!(w.order(10), Some(3));
        assert_eq!(w.word.len(), 2);
        let brute = stabilizers(&gl3, &data, &[1], 3);
        assert_eq!(brute.len(), 1);
        assert!(brute[0].same_as(&section_s(&gl3, &data, &nu)));
        assert!(w_nu(&gl3, &data, &LambdaGElement::from_class(&gl3, &[0])).is_identity());
    }

    #[test]
    fn stabilizers_match_brute_force() {
        for (grp, radius) in [("Gext(B2)", 3), ("Gext(C3)", 3), ("Gext(A3)", 3), ("GL2*GL2", 3)] {
            let d = g(grp);
            let data = AffineData::new(&d);
            for nu in component_classes(&d) {
                let brute = stabilizers(&d, &data, &nu.class(&d), radius);
                assert_eq!(brute.len(), 1, "{grp}");
                assert!(brute[0].same_as(&section_s(&d, &data, &nu)));
            }
        }
    }

    #[test]
    fn defect_examples() {
        let gl2 = g("GL2");
        let data = AffineData::new(&gl2);
        assert_eq!(defect(&gl2, &data, &LambdaGElement::from_class(&gl2, &[0])), 0);
        assert_eq!(defect(&gl2, &data, &LambdaGElement::from_class(&gl2, &[1])), 1);
        for n in 2..=6usize {
            let d = g(&format!("GL{n}"));
            let data = AffineData::new(&d);
            for k in 0..n as i64 {
                let nu = LambdaGElement::from_class(&d, &[k]);
                let w = w_nu(&d, &data, &nu);
                assert_eq!(defect_of(&w), n - cycles_in_slope_basis(&w), "GL{n} k={k}");
                assert_eq!(defect_of(&w), n - (k as usize).gcd(&n));
            }
        }
    }

    /// Conjugate `w` to slope coordinates, where `W = S_n` permutes the
    /// basis, and count the cycles of that permutation.
    fn cycles_in_slope_basis(w: &WeylElement) -> usize {
        let n = w.dim();
        // slopes = D x with D the difference operator
        let dm: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| int(i64::from(i == j) - i64::from(j + 1 == i))).collect()).collect();
        let dinv = linalg::inverse(&dm).unwrap();
        let wq = linalg::from_int(&w.matrix);
        let p = linalg::mat_mul(&dm, &linalg::mat_mul(&wq, &dinv));
        let perm: Vec<usize> = (0..n)
            .map(|j| {
                let col: Vec<Rational> = (0..n).map(|i| p[i][j]).collect();
                assert_eq!(col.iter().filter(|c| !c.is_zero()).count(), 1);
                col.iter().position(|c| *c == int(1)).unwrap()
            })
            .collect();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for s in 0..n {
            if !seen[s] {
                cycles += 1;
                let mut k = s;
                while !seen[k] {
                    seen[k] = true;
                    k = perm[k];
                }
            }
        }
        cycles
    }

    #[test]
    fn defect_and_char_reports() {
        let gl4 = g("GL4");
        let data = AffineData::new(&gl4);
        let r = verify_d_equals_half_defect(&gl4, &data, &LambdaGElement::from_class(&gl4, &[1]));
        assert!(r.pass);
        assert_eq!(r.d_g, rat(3, 2));
        assert_eq!(r.defect, 3);
        let r0 = verify_d_equals_half_defect(&gl4, &data, &LambdaGElement::from_class(&gl4, &[0]));
        assert!(r0.pass && r0.defect == 0 && r0.d_g == int(0));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["d_G"], "3/2");
        assert_eq!(json["nu"], serde_json::json!([1]));

        let e6 = g("Gext(E6)");
        let data = AffineData::new(&e6);
        for nu in component_classes(&e6) {
            let r = verify_d_equals_half_defect(&e6, &data, &nu);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn char_poly_and_cyclotomics() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);

        let gl2 = g("GL2");
        let data = AffineData::new(&gl2);
        let w = w_nu(&gl2, &data, &LambdaGElement::from_class(&gl2, &[1]));
        assert_eq!(char_poly(&w), vec![-1, 0, 1]);
        assert_eq!(cyclotomic_factorization(&w).into_iter().collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
        let r = reflection_char_multiset_check(&gl2, &data, &LambdaGElement::from_class(&gl2, &[1]));
        assert!(r.pass);
        assert_eq!(r.chi, vec!["1/2", "0"]);

        let gl3 = g("GL3");
        let data = AffineData::new(&gl3);
        let r = reflection_char_multiset_check(&gl3, &data, &LambdaGElement::from_class(&gl3, &[1]));
        assert!(r.pass);
        assert_eq!(r.cyclotomic, vec![(1, 1), (3, 1)]);
        let mut chis = r.chi.clone();
        chis.sort();
        assert_eq!(chis, vec!["0", "1/3", "2/3"]);

        let id = identity_element(&g("GL4"));
        assert_eq!(char_poly(&id), vec![1, -4, 6, -4, 1]);
    }

    #[test]
    fn char_poly_matches_determinant() {
        // det(T - w) at integer T versus exact rational determinant
        let d = g("F4");
        let w = d.reflection(0).compose(&d.reflection(1)).compose(&d.reflection(2)).compose(&d.reflection(3));
        let p = char_poly(&w);
        for t in -3i64..=3 {
            let m: Vec<Vec<Rational>> = (0..4)
                .map(|i| (0..4).map(|j| int(i64::from(i == j) * t - w.matrix[i][j])).collect())
                .collect();
            let det = det(&m);
            let val: i64 = p.iter().enumerate().map(|(k, c)| c * t.pow(k as u32)).sum();
            assert_eq!(det, int(val));
        }
        // Coxeter element of F4 has order 12
        assert_eq!(cyclotomic_factorization(&w).into_iter().collect::<Vec<_>>(), vec![(12, 1)]);
    }

    fn det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<Rational>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| *v).collect()).collect();
                let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    #[test]
    fn chi_patterns() {
        for n in 2..=7usize {
            let d = g(&format!("GL{n}"));
            for k in 0..n as i64 {
                let c = chi(&d, &LambdaGElement::from_class(&d, &[k]));
                for i in 0..n - 1 {
                    assert_eq!(c[i], fract(&(c[0] * int(i as i64 + 1))));
                }
                assert_eq!(c[n - 1], int(0));
            }
            // chi_1 generates: the class of 1 gets order n
            let c1 = chi(&d, &LambdaGElement::from_class(&d, &[1]))[0];
            assert_eq!(*c1.denom(), n as i64);
        }
        let e6 = g("Gext(E6)");
        for nu in component_classes(&e6) {
            let c = chi(&e6, &nu);
            assert_eq!(c[1], int(0));
            assert_eq!(c[3], int(0));
            assert_eq!(c[0], c[4]);
            assert_eq!(c[2], c[5]);
            if !c[0].is_zero() {
                assert_ne!(c[0], c[2]);
                assert_eq!(c[0] + c[2], int(1));
            }
        }
    }

    #[test]
    fn stabilizer_postcondition_e_types() {
        for grp in ["Gext(E6)", "Gext(E7)", "Gext(D5)", "Gext(D4)"] {
            let d = g(grp);
            let data = AffineData::new(&d);
            for nu in component_classes(&d) {
                let x0 = section_s(&d, &data, &nu);
                assert!(data.stabilizes_base_alcove(&d, &x0), "{grp}");
                assert_eq!(&x0.translation[d.l()..], &nu.lift[d.l()..]);
                let r = reflection_char_multiset_check(&d, &data, &nu);
                assert!(r.pass, "{grp} {r:?}");
            }
        }
    }

    #[test]
    fn weight_transform_preserves_pairing() {
        let d = g("Gext(C3)");
        let data = AffineData::new(&d);
        let nu = LambdaGElement::from_class(&d, &[1]);
        let x0 = section_s(&d, &data, &nu);
        let p = vec![rat(1, 3), rat(-2, 5), rat(7, 2), int(2)];
        for a in &data.roots {
            let img = data.transform_root(&d, &x0, a);
            assert_eq!(img.eval(&x0.apply(&p)), a.eval(&p));
        }
    }

    proptest! {
        #[test]
        fn lift_independence_and_homomorphism(k1 in 0i64..4, k2 in 0i64..4, s1 in proptest::collection::vec(-4i64..5, 3), s2 in proptest::collection::vec(-4i64..5, 3)) {
            let d = g("GL4");
            let data = AffineData::new(&d);
            let a = LambdaGElement::from_class(&d, &[k1]);
            let b = LambdaGElement::from_class(&d, &[k2]);
            let a2 = a.relift(&s1);
            let b2 = b.relift(&s2);
            let sa = section_s(&d, &data, &a);
            prop_assert!(sa.same_as(&section_s(&d, &data, &a2)));
            let sb = section_s(&d, &data, &b2);
            let sab = section_s(&d, &data, &a.add(&b));
            prop_assert!(sab.same_as(&sa.compose(&sb)));
            let order = d.component_group().order() as usize;
            prop_assert!(power(&sa.linear, order).is_identity());
        }
    }
}
