//! Dense permutations of `{0, .., n-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation stored as its image table: `p[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Builds a permutation from an image table, or `None` if the table is
    /// not a bijection of `{0, .., len-1}`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        if is_permutation(&images) {
            Some(Perm(images))
        } else {
            None
        }
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n(), other.n());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Order of the permutation in the symmetric group.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    /// Pushes basis vectors around: `e_i ↦ e_{p(i)}`, so the output has
    /// `out[p(i)] = v[i]`.
    pub fn apply_to_coords(&self, v: &[i64]) -> Vec<i64> {
        debug_assert_eq!(self.n(), v.len());
        let mut out = vec![0; v.len()];
        for (i, &c) in v.iter().enumerate() {
            out[self.0[i]] = c;
        }
        out
    }

    /// All permutations of `{0, .., n-1}` in lexicographic order of their
    /// image tables.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fill(&mut out, &mut images, &mut used, n);
        out
    }
}

fn fill(out: &mut Vec<Perm>, images: &mut Vec<usize>, used: &mut Vec<bool>, n: usize) {
    if images.len() == n {
        out.push(Perm(images.clone()));
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            images.push(i);
            fill(out, images, used, n);
            images.pop();
            used[i] = false;
        }
    }
}

/// Whether `images` is a bijection of `{0, .., len-1}`.
pub fn is_permutation(images: &[usize]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    for &i in images {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({:?})", self.0)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", strs.join(" "))
    }
}
