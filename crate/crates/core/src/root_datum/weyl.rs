use std::fmt;

use crate::lattice::ZMatrix;
use crate::rational::Rational;

use super::types::{APoint, Weight};

/// An element of `W`, as an integer matrix acting on `omega`-coordinates of
/// points, together with a word in the simple reflections (matrix =
/// `S[word[0]] * S[word[1]] * ...`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: ZMatrix,
    pub word: Vec<usize>,
}

pub(crate) fn int_mat_mul(a: &ZMatrix, b: &ZMatrix) -> ZMatrix {
    let n = b.len();
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..m).map(|j| (0..n).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

pub(crate) fn int_identity(n: usize) -> ZMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { matrix: int_identity(n), word: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == int_identity(self.dim())
    }

    pub fn apply(&self, x: &[Rational]) -> APoint {
        APoint(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(x).map(|(&a, b)| b * a).sum())
                .collect(),
        )
    }

    pub fn apply_int(&self, x: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// `self * other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { matrix: int_mat_mul(&self.matrix, &other.matrix), word }
    }

    /// Inverse; generators are involutions so the word is reversed.
    pub fn inverse(&self, generators: &[ZMatrix]) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        let n = self.dim();
        let matrix = word.iter().fold(int_identity(n), |m, &j| int_mat_mul(&m, &generators[j]));
        WeylElement { matrix, word }
    }

    /// Contragredient action on characters: `<w lambda, w x> = <lambda, x>`.
    pub fn act_on_weight(&self, inverse: &WeylElement, lambda: &Weight) -> Weight {
        // (w lambda)_k = sum_i lambda_i (w^{-1})_{ik}
        let n = self.dim();
        Weight((0..n).map(|k| (0..n).map(|i| lambda[i] * inverse.matrix[i][k]).sum()).collect())
    }

    /// Multiplicative order (smallest `k >= 1` with `w^k = 1`), bounded by `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let id = int_identity(self.dim());
        let mut p = self.matrix.clone();
        for k in 1..=limit {
            if p == id {
                return Some(k);
            }
            p = int_mat_mul(&p, &self.matrix);
        }
        None
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim()).map(|i| self.matrix[i][i]).sum()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.word.iter().map(|j| format!("s{}", j + 1)).collect();
        f.write_str(&parts.join("·"))
    }
}
