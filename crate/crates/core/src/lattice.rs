//! Integer lattice algorithms: kernels, column Hermite form, Smith invariants.

pub type ZMatrix = Vec<Vec<i64>>;

fn cols(m: &ZMatrix) -> usize {
    m.first().map_or(0, Vec::len)
}

fn col_axpy(m: &mut ZMatrix, dst: usize, src: usize, q: i64) {
    for row in m.iter_mut() {
        row[dst] -= q * row[src];
    }
}

fn col_swap(m: &mut ZMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn col_negate(m: &mut ZMatrix, a: usize) {
    for row in m.iter_mut() {
        row[a] = -row[a];
    }
}

/// Column-style echelon form. Returns `(h, v)` with `m * v = h`, `v`
/// unimodular, and `h` lower echelon: the first `rank` columns carry the
/// pivots (positive, strictly increasing rows) and the rest are zero.
pub fn column_echelon(m: &ZMatrix) -> (ZMatrix, ZMatrix, usize) {
    let n = cols(m);
    let mut h = m.clone();
    let mut v: ZMatrix = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut piv = 0;
    for i in 0..h.len() {
        if piv == n {
            break;
        }
        loop {
            // smallest nonzero |entry| in row i among columns piv..n
            let best = (piv..n)
                .filter(|&c| h[i][c] != 0)
                .min_by_key(|&c| h[i][c].abs());
            let Some(b) = best else { break };
            col_swap(&mut h, piv, b);
            col_swap(&mut v, piv, b);
            let p = h[i][piv];
            let mut done = true;
            for c in piv + 1..n {
                if h[i][c] != 0 {
                    let q = h[i][c].div_euclid(p);
                    col_axpy(&mut h, c, piv, q);
                    col_axpy(&mut v, c, piv, q);
                    if h[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[i][piv] != 0 {
            if h[i][piv] < 0 {
                col_negate(&mut h, piv);
                col_negate(&mut v, piv);
            }
            piv += 1;
        }
    }
    (h, v, piv)
}

/// Basis (as column vectors, returned as a list) of `{x in Z^n : m x = 0}`.
pub fn integer_kernel(m: &ZMatrix, n: usize) -> Vec<Vec<i64>> {
    if m.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let (_, v, rank) = column_echelon(m);
    (rank..n).map(|c| v.iter().map(|row| row[c]).collect()).collect()
}

/// Nonzero invariant factors (all `>= 1`, each dividing the next).
pub fn smith_invariants(m: &ZMatrix) -> Vec<i64> {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let rows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(ncols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..ncols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let p = a[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_euclid(p);
            if q != 0 {
                for j in t..ncols {
                    a[i][j] -= q * a[t][j];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..ncols {
            let q = a[t][j].div_euclid(p);
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility condition on the remaining block
        let bad = (t + 1..rows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
        if let Some(i) = bad {
            for j in t..ncols {
                let x = a[i][j];
                a[t][j] += x;
            }
            continue;
        }
        out.push(i64::try_from(p.abs()).expect("invariant factor overflow"));
        t += 1;
    }
    out
}

/// A full-rank sublattice `L` of `Z^m` in lower-triangular Hermite form,
/// giving canonical representatives of `Z^m / L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    /// Lower-triangular basis columns with positive diagonal.
    basis: ZMatrix,
}

impl Sublattice {
    /// `generators` are column vectors of length `m`; they must span a
    /// full-rank sublattice.
    pub fn new(m: usize, generators: &[Vec<i64>]) -> Option<Sublattice> {
        if m == 0 {
            return Some(Sublattice { basis: Vec::new() });
        }
        let mat: ZMatrix = (0..m)
            .map(|i| generators.iter().map(|g| g[i]).collect())
            .collect();
        let (h, _, rank) = column_echelon(&mat);
        if rank < m || (0..m).any(|i| h[i][i] == 0) {
            return None;
        }
        let mut basis: ZMatrix = h.iter().map(|row| row[..m].to_vec()).collect();
        // reduce below-diagonal entries so the form is canonical
        for j in 0..m {
            for i in j + 1..m {
                let d = basis[i][i];
                let q = basis[i][j].div_euclid(d);
                if q != 0 {
                    for r in 0..m {
                        basis[r][j] -= q * basis[r][i];
                    }
                }
            }
        }
        Some(Sublattice { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| self.basis[i][i]).collect()
    }

    /// Index `[Z^m : L]`.
    pub fn index(&self) -> i64 {
        self.diagonal().iter().product()
    }

    /// Canonical representative of `v + L`, with `0 <= r_i < diag_i`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut r = v.to_vec();
        for i in 0..self.dim() {
            let q = r[i].div_euclid(self.basis[i][i]);
            if q != 0 {
                for (k, x) in r.iter_mut().enumerate().skip(i) {
                    *x -= q * self.basis[k][i];
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// All canonical representatives, in lexicographic order.
    pub fn coset_representatives(&self) -> Vec<Vec<i64>> {
        let diag = self.diagonal();
        let mut out = vec![Vec::new()];
        for d in diag {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }
}
