//! Root data with simply connected derived group, in the `omega`-basis.
//!
//! A point `x` of `a` is stored as `(<omega_1, x>, ..., <omega_n, x>)`. In
//! these coordinates the simple coroots are the standard basis vectors
//! `e_1, ..., e_l`, so dominance and the order `<=` are coordinate tests.

mod cartan;
mod parse;
mod types;
mod weyl;

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, smith_invariants, Sublattice, ZMatrix};
use crate::linalg::{self, QMatrix};
use crate::rational::{ExtRational, Rational};

pub use cartan::{classify, dynkin_components, positive_roots, symmetrizer, validate_cartan, CartanType, Family};
pub use types::{APoint, LeviDescriptor, ValuationVector, Weight};
pub use weyl::WeylElement;
pub(crate) use weyl::{int_identity, int_mat_mul};

/// Largest rank accepted by the parser.
pub const MAX_RANK: usize = 32;

/// Default bound on the size of an enumerated Weyl orbit.
pub const ORBIT_GUARD: usize = 1_000_000;

/// Projection tables are precomputed for every subset only up to this
/// semisimple rank.
const PROJECTOR_TABLE_RANK: usize = 10;

/// An irreducible factor of the root system: its type label and the
/// (0-based) simple-root indices it occupies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub label: String,
    pub nodes: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Projector {
    idx: Vec<usize>,
    /// `(A_SS^T)^{-1}`
    inv: QMatrix,
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    n: usize,
    l: usize,
    /// `n x l`; column `j` is `alpha_j` in the `omega`-basis.
    alpha: ZMatrix,
    components: Vec<Component>,
    label: String,
    gl_rank: Option<usize>,
    generators: Vec<ZMatrix>,
    symmetrizer: Vec<Rational>,
    projectors: OnceLock<Vec<Projector>>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.l == other.l && self.alpha == other.alpha
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Validates the Cartan block and assembles a datum. `alpha` is `n x l`.
    pub fn new(alpha: ZMatrix, n: usize, components: Vec<Component>, label: impl Into<String>) -> Result<Self> {
        if alpha.len() != n {
            return Err(Error::Dimension { expected: n, got: alpha.len() });
        }
        let l = alpha.first().map_or(0, Vec::len);
        if l > n {
            return Err(Error::InvalidCartan(format!("semisimple rank {l} exceeds rank {n}")));
        }
        if n > MAX_RANK + 8 || l > MAX_RANK {
            return Err(Error::RankBound(format!("n = {n}, l = {l}")));
        }
        if alpha.iter().any(|r| r.len() != l) {
            return Err(Error::InvalidCartan("ragged root matrix".into()));
        }
        let cartan: ZMatrix = alpha[..l].to_vec();
        validate_cartan(&cartan)?;
        let covered: usize = components.iter().map(|c| c.nodes.len()).sum();
        if covered != l {
            return Err(Error::InvalidCartan("components do not cover the simple roots".into()));
        }
        let generators = (0..l)
            .map(|j| {
                (0..n)
                    .map(|r| (0..n).map(|c| i64::from(r == c) - if r == j { alpha[c][j] } else { 0 }).collect())
                    .collect()
            })
            .collect();
        let symmetrizer = symmetrizer(&cartan);
        Ok(RootDatum {
            n,
            l,
            alpha,
            components,
            label: label.into(),
            gl_rank: None,
            generators,
            symmetrizer,
            projectors: OnceLock::new(),
        })
    }

    /// The simply connected datum of an irreducible type.
    pub fn simple(t: CartanType) -> RootDatum {
        let a = t.cartan_matrix();
        let l = a.len();
        RootDatum::new(a, l, vec![Component { label: t.to_string(), nodes: (0..l).collect() }], t.to_string())
            .expect("tabulated Cartan matrix is valid")
    }

    /// Simple type plus a rank-one torus; the extension row is `m`.
    pub fn extension(t: CartanType, m: &[i64]) -> Result<RootDatum> {
        let mut a = t.cartan_matrix();
        let l = a.len();
        if m.len() != l {
            return Err(Error::Dimension { expected: l, got: m.len() });
        }
        a.push(m.to_vec());
        let m_str: Vec<String> = m.iter().map(ToString::to_string).collect();
        RootDatum::new(
            a,
            l + 1,
            vec![Component { label: t.to_string(), nodes: (0..l).collect() }],
            format!("Gext({t};m={})", m_str.join(",")),
        )
    }

    /// `Gext(t)` with `m = -e_j0`, `j0` the first node giving the largest
    /// component group.
    pub fn extension_preset(t: CartanType) -> RootDatum {
        let l = t.rank;
        let mut best: Option<(i64, RootDatum)> = None;
        for j in 0..l {
            let mut m = vec![0; l];
            m[j] = -1;
            let d = RootDatum::extension(t, &m).expect("valid extension");
            let order = d.component_group().order();
            if best.as_ref().map_or(true, |(o, _)| order > *o) {
                best = Some((order, d));
            }
        }
        best.expect("rank >= 1").1
    }

    pub fn torus(k: usize) -> RootDatum {
        let mut d = RootDatum::new(vec![Vec::new(); k], k, Vec::new(), format!("T{k}")).expect("torus");
        if k == 1 {
            d.gl_rank = Some(1);
        }
        d
    }

    /// `GL_n` with `omega_i = 1^i 0^(n-i)`.
    pub fn gl(n: usize) -> Result<RootDatum> {
        if n == 0 {
            return Err(Error::InvalidCartan("GL0".into()));
        }
        let mut d = if n == 1 {
            RootDatum::torus(1)
        } else {
            let mut m = vec![0; n - 1];
            m[n - 2] = -1;
            RootDatum::extension(CartanType::new(Family::A, n - 1)?, &m)?
        };
        d.label = format!("GL{n}");
        d.gl_rank = Some(n);
        Ok(d)
    }

    /// Direct product; semisimple coordinates of all factors come first.
    pub fn product(factors: &[RootDatum]) -> Result<RootDatum> {
        if factors.len() == 1 {
            return Ok(factors[0].clone());
        }
        let n: usize = factors.iter().map(|f| f.n).sum();
        let l: usize = factors.iter().map(|f| f.l).sum();
        let mut alpha = vec![vec![0i64; l]; n];
        let mut components = Vec::new();
        let (mut so, mut to) = (0, l);
        for f in factors {
            let row = |i: usize| if i < f.l { so + i } else { to + i - f.l };
            for i in 0..f.n {
                for j in 0..f.l {
                    alpha[row(i)][so + j] = f.alpha[i][j];
                }
            }
            for c in &f.components {
                components.push(Component {
                    label: c.label.clone(),
                    nodes: c.nodes.iter().map(|&j| j + so).collect(),
                });
            }
            so += f.l;
            to += f.n - f.l;
        }
        let label: Vec<&str> = factors.iter().map(|f| f.label.as_str()).collect();
        RootDatum::new(alpha, n, components, label.join("*"))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn alpha(&self) -> &ZMatrix {
        &self.alpha
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// `Some(n)` when this is the standard `GL_n` datum.
    pub fn gl_rank(&self) -> Option<usize> {
        self.gl_rank
    }

    pub fn cartan(&self) -> ZMatrix {
        self.alpha[..self.l].to_vec()
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        Weight(self.alpha.iter().map(|r| r[j]).collect())
    }

    pub fn generators(&self) -> &[ZMatrix] {
        &self.generators
    }

    pub fn reflection(&self, j: usize) -> WeylElement {
        WeylElement { matrix: self.generators[j].clone(), word: vec![j] }
    }

    /// `(alpha_i, alpha_i) / 2`, shortest roots normalized to 1 per factor.
    pub fn root_length_factors(&self) -> &[Rational] {
        &self.symmetrizer
    }

    pub fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::Dimension { expected: self.n, got: len });
        }
        Ok(())
    }

    /// `<alpha_j, x>`.
    pub fn pair_root(&self, j: usize, x: &[Rational]) -> Rational {
        self.alpha.iter().zip(x).map(|(r, v)| v * r[j]).sum()
    }

    pub fn root_pairings(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.l).map(|j| self.pair_root(j, x)).collect()
    }

    /// `<lambda, x>` with `-inf` absorption.
    pub fn pair(&self, lambda: &Weight, x: &ValuationVector) -> Result<ExtRational> {
        self.check_dim(lambda.len())?;
        self.check_dim(x.len())?;
        let mut acc = ExtRational::from(0);
        for (i, (&c, &v)) in lambda.iter().zip(x.iter()).enumerate() {
            let term = v.scale(c).ok_or(Error::NegInfTimesNegative { index: i + 1, coeff: c })?;
            acc = acc + term;
        }
        Ok(acc)
    }

    pub fn is_dominant(&self, x: &[Rational]) -> bool {
        (0..self.l).all(|j| self.pair_root(j, x) >= Rational::zero())
    }

    /// `x <= y`: `y - x` is a non-negative combination of simple coroots.
    pub fn leq(&self, x: &[Rational], y: &[Rational]) -> bool {
        (0..self.n).all(|i| if i < self.l { x[i] <= y[i] } else { x[i] == y[i] })
    }

    /// The dominant point `y = w x` of the `W`-orbit of `x`.
    pub fn dominant_rep(&self, x: &[Rational]) -> (APoint, WeylElement) {
        let mut y = APoint(x.to_vec());
        let mut w = WeylElement::identity(self.n);
        while let Some(j) = (0..self.l).find(|&j| self.pair_root(j, &y) < Rational::zero()) {
            let s = self.reflection(j);
            y = s.apply(&y);
            w = s.compose(&w);
        }
        (y, w)
    }

    /// `s_j lambda = lambda - <lambda, alpha_j^vee> alpha_j`.
    pub fn reflect_weight(&self, j: usize, lambda: &Weight) -> Weight {
        let c = lambda[j];
        Weight(lambda.iter().zip(&self.alpha).map(|(&x, r)| x - c * r[j]).collect())
    }

    pub fn weyl_orbit(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        self.weyl_orbit_guarded(lambda, ORBIT_GUARD)
    }

    /// Exact orbit by breadth-first closure, sorted.
    pub fn weyl_orbit_guarded(&self, lambda: &Weight, guard: usize) -> Result<Vec<Weight>> {
        self.check_dim(lambda.len())?;
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(mu) = queue.pop_front() {
            for j in 0..self.l {
                if mu[j] == 0 {
                    continue;
                }
                let r = self.reflect_weight(j, &mu);
                if !seen.contains(&r) {
                    if seen.len() >= guard {
                        return Err(Error::Guard { what: "Weyl orbit size", limit: guard });
                    }
                    seen.insert(r.clone());
                    queue.push_back(r);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    fn build_projector(&self, s: LeviDescriptor) -> Projector {
        let idx = s.indices();
        let at: QMatrix = idx
            .iter()
            .map(|&k| idx.iter().map(|&j| Rational::from_integer(self.alpha[j][k])).collect())
            .collect();
        let inv = linalg::inverse(&at).expect("principal Cartan submatrix is invertible");
        Projector { idx, inv }
    }

    fn projector(&self, s: LeviDescriptor) -> std::borrow::Cow<'_, Projector> {
        if self.l <= PROJECTOR_TABLE_RANK {
            let table = self.projectors.get_or_init(|| {
                (0..1u64 << self.l).map(|m| self.build_projector(LeviDescriptor::from_mask(m))).collect()
            });
            std::borrow::Cow::Borrowed(&table[s.mask() as usize])
        } else {
            std::borrow::Cow::Owned(self.build_projector(s))
        }
    }

    /// Projection `p_M` onto `a_M = {x : <alpha_j, x> = 0, j in S}` along
    /// the span of the coroots in `S`.
    pub fn p_m(&self, x: &[Rational], s: LeviDescriptor) -> APoint {
        let mut y = x.to_vec();
        if s.is_empty() {
            return APoint(y);
        }
        let p = self.projector(s);
        let b: Vec<Rational> = p.idx.iter().map(|&k| self.pair_root(k, x)).collect();
        let c = linalg::mat_vec(&p.inv, &b);
        for (&j, cj) in p.idx.iter().zip(c) {
            y[j] -= cj;
        }
        APoint(y)
    }

    /// The central point `x_G` with prescribed torus coordinates.
    pub fn central_point(&self, torus: &[Rational]) -> APoint {
        let mut x = vec![Rational::zero(); self.l];
        x.extend_from_slice(torus);
        self.p_m(&x, LeviDescriptor::full(self.l))
    }

    /// `l x (n-l)` matrix `g` with `<omega_i, x_G(t)> = sum_k g[i][k] t_k`.
    pub fn central_map(&self) -> QMatrix {
        let t = self.n - self.l;
        let cols: Vec<APoint> = (0..t)
            .map(|k| {
                let mut e = vec![Rational::zero(); t];
                e[k] = Rational::one();
                self.central_point(&e)
            })
            .collect();
        (0..self.l).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }

    /// The fundamental weights `varpi_i` as elements of `X^*(A)_Q`: dual to
    /// the coroots and vanishing on `a_G`.
    pub fn fundamental_weights(&self) -> Vec<Vec<Rational>> {
        let g = self.central_map();
        (0..self.l)
            .map(|i| {
                let mut w = vec![Rational::zero(); self.n];
                w[i] = Rational::one();
                for k in 0..self.n - self.l {
                    w[self.l + k] = -g[i][k];
                }
                w
            })
            .collect()
    }

    /// Gram matrix of a `W`-invariant inner product in `omega`-coordinates:
    /// the coroot form `(alpha_i^vee, alpha_j^vee) = A_ij / d_j` on the
    /// semisimple part, the identity on torus coordinates, orthogonal sum.
    pub fn gram_matrix(&self) -> QMatrix {
        let (n, l) = (self.n, self.l);
        let g = self.central_map();
        // coordinates (c, t) of x = sum c_j e_j + x_G(t)
        let mut lmap = vec![vec![Rational::zero(); n]; n];
        for i in 0..l {
            lmap[i][i] = Rational::one();
            for k in 0..n - l {
                lmap[i][l + k] = -g[i][k];
            }
        }
        for k in l..n {
            lmap[k][k] = Rational::one();
        }
        let mut form = vec![vec![Rational::zero(); n]; n];
        for i in 0..l {
            for j in 0..l {
                form[i][j] = Rational::from_integer(self.alpha[i][j]) / self.symmetrizer[j];
            }
        }
        for k in l..n {
            form[k][k] = Rational::one();
        }
        linalg::mat_mul(&linalg::transpose(&lmap), &linalg::mat_mul(&form, &lmap))
    }

    /// A regular dominant point: `<alpha_j, x> = 1` for all `j`, zero torus part.
    pub fn rho_check(&self) -> APoint {
        let b = vec![Rational::one(); self.l];
        self.point_with_root_pairings(&b)
    }

    /// The point of `a_sc` (zero torus coordinates) with prescribed
    /// pairings against the simple roots.
    pub fn point_with_root_pairings(&self, b: &[Rational]) -> APoint {
        let at: QMatrix = (0..self.l)
            .map(|k| (0..self.l).map(|j| Rational::from_integer(self.alpha[j][k])).collect())
            .collect();
        let c = linalg::solve(&at, b).expect("Cartan matrix is invertible");
        let mut x = c;
        x.resize(self.n, Rational::zero());
        APoint(x)
    }

    /// Recover a word for a Weyl group matrix. Returns `None` if `matrix` is
    /// not in `W`.
    pub fn weyl_element(&self, matrix: &ZMatrix) -> Option<WeylElement> {
        let w = WeylElement { matrix: matrix.clone(), word: Vec::new() };
        let p = self.rho_check();
        let (y, u) = self.dominant_rep(&w.apply(&p));
        if y != p {
            return None;
        }
        let inv = u.inverse(&self.generators);
        (inv.matrix == *matrix).then_some(inv)
    }

    /// `levi(S)`: same `omega`-basis, simple roots restricted to `S` and
    /// coordinates reordered so that `S` comes first.
    pub fn levi(&self, s: LeviDescriptor) -> RootDatum {
        let order = self.levi_order(s);
        let idx = s.indices();
        let alpha: ZMatrix = order.iter().map(|&i| idx.iter().map(|&j| self.alpha[i][j]).collect()).collect();
        let block: ZMatrix = alpha[..idx.len()].to_vec();
        let components = dynkin_components(&block)
            .into_iter()
            .map(|nodes| {
                let sub: ZMatrix = nodes.iter().map(|&a| nodes.iter().map(|&b| block[a][b]).collect()).collect();
                Component { label: classify(&sub), nodes }
            })
            .collect();
        RootDatum::new(alpha, self.n, components, format!("levi({};{})", self.label, s))
            .expect("Levi of a valid datum is valid")
    }

    /// `order[k]` is the coordinate of `self` that becomes coordinate `k`
    /// of `levi(S)`.
    pub fn levi_order(&self, s: LeviDescriptor) -> Vec<usize> {
        let mut order = s.indices();
        order.extend((0..self.l).filter(|&j| !s.contains(j)));
        order.extend(self.l..self.n);
        order
    }

    pub fn to_levi_coords(&self, x: &[Rational], s: LeviDescriptor) -> APoint {
        APoint(self.levi_order(s).iter().map(|&i| x[i]).collect())
    }

    /// Structure of `Lambda_G / X_*(A_G)`.
    pub fn component_group(&self) -> ComponentGroup {
        let t = self.n - self.l;
        let roots_t: ZMatrix = (0..self.l).map(|j| self.alpha.iter().map(|r| r[j]).collect()).collect();
        let kernel = integer_kernel(&roots_t, self.n);
        debug_assert_eq!(kernel.len(), t);
        let projected: Vec<Vec<i64>> = kernel.iter().map(|v| v[self.l..].to_vec()).collect();
        let as_matrix: ZMatrix = (0..t).map(|i| projected.iter().map(|v| v[i]).collect()).collect();
        let invariant_factors = smith_invariants(&as_matrix).into_iter().filter(|&d| d != 1).collect();
        let sublattice = Sublattice::new(t, &projected).expect("X_*(A_G) has full rank in Lambda_G");
        ComponentGroup { invariant_factors, sublattice }
    }
}

impl std::str::FromStr for RootDatum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_group(s)
    }
}

/// `Lambda_G / X_*(A_G)` with canonical class representatives. Elements of
/// `Lambda_G = Z^n / <e_1..e_l>` are written by their torus coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGroup {
    pub invariant_factors: Vec<i64>,
    sublattice: Sublattice,
}

impl ComponentGroup {
    pub fn order(&self) -> i64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// One torus-coordinate vector per element.
    pub fn classes(&self) -> Vec<Vec<i64>> {
        self.sublattice.coset_representatives()
    }

    pub fn reduce(&self, torus: &[i64]) -> Vec<i64> {
        self.sublattice.reduce(torus)
    }
}

/// Re-choice of extensions `omega_i <- omega_i + lambda_i` (`i <= l`),
/// `lambda_i in X^*(D)` given by its coordinates in `omega_{l+1..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionChange {
    pub lambda: Vec<Vec<i64>>,
}

impl ExtensionChange {
    pub fn apply_datum(&self, d: &RootDatum) -> Result<RootDatum> {
        let (n, l) = (d.n, d.l);
        if self.lambda.len() != l || self.lambda.iter().any(|r| r.len() != n - l) {
            return Err(Error::Dimension { expected: l * (n - l), got: self.lambda.iter().map(Vec::len).sum() });
        }
        let mut alpha = d.alpha.clone();
        for k in 0..n - l {
            for j in 0..l {
                alpha[l + k][j] -= (0..l).map(|i| self.lambda[i][k] * d.alpha[i][j]).sum::<i64>();
            }
        }
        RootDatum::new(alpha, n, d.components.clone(), format!("{}+ext", d.label))
    }

    pub fn apply_point(&self, d: &RootDatum, x: &[Rational]) -> APoint {
        let l = d.l;
        APoint(
            (0..d.n)
                .map(|i| {
                    if i < l {
                        x[i] + (0..d.n - l).map(|k| x[l + k] * self.lambda[i][k]).sum::<Rational>()
                    } else {
                        x[i]
                    }
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests;
