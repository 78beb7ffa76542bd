//! Cartan matrices in Bourbaki numbering and the root systems they generate.
//!
//! Convention: `cartan[i][j] = <alpha_j, alpha_i^vee>`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::ZMatrix;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// An irreducible Cartan type such as `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidCartan(format!("no simple type {family:?}{rank}")));
        }
        if rank > super::MAX_RANK {
            return Err(Error::RankBound(format!("{family:?}{rank} exceeds rank {}", super::MAX_RANK)));
        }
        Ok(CartanType { family, rank })
    }

    /// Squared root lengths (scaled to integers) and the off-diagonal
    /// entries of the symmetric form on simple roots.
    fn form(&self) -> (Vec<i64>, Vec<(usize, usize, i64)>) {
        let l = self.rank;
        let chain = |upto: usize, b: i64| -> Vec<(usize, usize, i64)> {
            (0..upto.saturating_sub(1)).map(|i| (i, i + 1, b)).collect()
        };
        match self.family {
            Family::A => (vec![2; l], chain(l, -1)),
            Family::B => {
                let mut len = vec![4; l];
                len[l - 1] = 2;
                (len, chain(l, -2))
            }
            Family::C => {
                let mut len = vec![2; l];
                len[l - 1] = 4;
                let mut edges = chain(l - 1, -1);
                edges.push((l - 2, l - 1, -2));
                (len, edges)
            }
            Family::D => {
                let mut edges = chain(l - 1, -1);
                edges.push((l - 3, l - 1, -1));
                (vec![2; l], edges)
            }
            Family::E => {
                // 1-3-4-5-6-7-8 with 2 attached to 4
                let mut edges = vec![(0, 2, -1), (1, 3, -1)];
                edges.extend((2..l - 1).map(|i| (i, i + 1, -1)));
                (vec![2; l], edges)
            }
            Family::F => (vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)]),
            Family::G => (vec![2, 6], vec![(0, 1, -3)]),
        }
    }

    pub fn cartan_matrix(&self) -> ZMatrix {
        let l = self.rank;
        let (len, edges) = self.form();
        let mut b = vec![vec![0i64; l]; l];
        for i in 0..l {
            b[i][i] = len[i];
        }
        for (i, j, v) in edges {
            b[i][j] = v;
            b[j][i] = v;
        }
        (0..l)
            .map(|i| (0..l).map(|j| 2 * b[i][j] / b[i][i]).collect())
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Parse(format!("unknown simple type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// Reflection closure of the simple roots; returns the positive roots in
/// simple-root coordinates, sorted by height then lexicographically.
pub fn positive_roots(cartan: &ZMatrix) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..l {
        let mut e = vec![0; l];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..l {
            let pairing: i64 = (0..l).map(|j| beta[j] * cartan[i][j]).sum();
            let mut r = beta.clone();
            r[i] -= pairing;
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
    pos.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    pos
}

/// Connected components of the Dynkin diagram, each sorted.
pub fn dynkin_components(cartan: &ZMatrix) -> Vec<Vec<usize>> {
    let l = cartan.len();
    let mut comp = vec![usize::MAX; l];
    let mut out = Vec::new();
    for start in 0..l {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut nodes = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < nodes.len() {
            let i = nodes[k];
            for j in 0..l {
                if comp[j] == usize::MAX && cartan[i][j] != 0 {
                    comp[j] = id;
                    nodes.push(j);
                }
            }
            k += 1;
        }
        nodes.sort_unstable();
        out.push(nodes);
    }
    out
}

/// Positive `d_i` with `d_i A_ij = d_j A_ji`, normalized per component so
/// the shortest simple roots get `d = 1`. `d_i = (alpha_i, alpha_i) / 2`.
pub fn symmetrizer(cartan: &ZMatrix) -> Vec<Rational> {
    let l = cartan.len();
    let mut d = vec![Rational::zero(); l];
    for nodes in dynkin_components(cartan) {
        d[nodes[0]] = Rational::from_integer(1);
        let mut stack = vec![nodes[0]];
        while let Some(i) = stack.pop() {
            for &j in &nodes {
                if cartan[i][j] != 0 && i != j && d[j].is_zero() {
                    d[j] = d[i] * Rational::new(cartan[i][j], cartan[j][i]);
                    stack.push(j);
                }
            }
        }
        let min = nodes.iter().map(|&i| d[i]).min().expect("non-empty component");
        for &i in &nodes {
            d[i] /= min;
        }
    }
    d
}

/// Checks the axioms of a (generalized) Cartan matrix of finite type:
/// diagonal 2, non-positive off-diagonal, symmetric zero pattern,
/// symmetrizable, finite root system.
pub fn validate_cartan(cartan: &ZMatrix) -> Result<()> {
    let l = cartan.len();
    for i in 0..l {
        if cartan[i].len() != l {
            return Err(Error::InvalidCartan("not square".into()));
        }
        if cartan[i][i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
        }
        for j in 0..l {
            if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                return Err(Error::InvalidCartan(format!("bad off-diagonal pair ({}, {})", i + 1, j + 1)));
            }
        }
    }
    let d = symmetrizer(cartan);
    for i in 0..l {
        for j in 0..l {
            if d[i] * cartan[i][j] != d[j] * cartan[j][i] {
                return Err(Error::InvalidCartan("not symmetrizable".into()));
            }
        }
    }
    // positive definiteness of the symmetrized form via leading minors
    let sym: Vec<Vec<Rational>> = (0..l)
        .map(|i| (0..l).map(|j| d[i] * cartan[i][j]).collect())
        .collect();
    if !positive_definite(&sym) {
        return Err(Error::InvalidCartan("not of finite type".into()));
    }
    Ok(())
}

fn positive_definite(m: &[Vec<Rational>]) -> bool {
    // Gaussian elimination without pivoting; all pivots must be positive.
    let n = m.len();
    let mut a = m.to_vec();
    for k in 0..n {
        if a[k][k] <= Rational::zero() {
            return false;
        }
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let sub = f * a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    true
}

/// Identify the type of an irreducible Cartan matrix up to relabeling.
pub fn classify(cartan: &ZMatrix) -> String {
    let l = cartan.len();
    let npos = positive_roots(cartan).len();
    let d = symmetrizer(cartan);
    let simply_laced = d.iter().all(|x| *x == d[0]);
    let family = if simply_laced {
        if npos == l * (l + 1) / 2 {
            "A"
        } else if npos == l * (l - 1) {
            "D"
        } else {
            "E"
        }
    } else {
        let long = d.iter().filter(|&&x| x == *d.iter().max().unwrap()).count();
        match (l, npos) {
            (2, 6) => "G",
            (4, 24) if long == 2 => "F",
            _ if long == l - 1 => "B",
            _ => "C",
        }
    };
    format!("{family}{l}")
}
