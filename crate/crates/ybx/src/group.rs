//! Finite groups as Cayley tables.

use std::fmt;

use crate::perm::Perm;
use crate::solution::{check_square, TableError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    Table(TableError),
    NoIdentity,
    NotAssociative { a: usize, b: usize, c: usize },
    NoInverse { g: usize },
    /// A supplied map was expected to be an automorphism of the group.
    NotAutomorphism { index: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::Table(e) => write!(f, "{e}"),
            GroupError::NoIdentity => write!(f, "table has no two-sided identity"),
            GroupError::NotAssociative { a, b, c } => {
                write!(f, "associativity fails at ({a}, {b}, {c})")
            }
            GroupError::NoInverse { g } => write!(f, "element {g} has no inverse"),
            GroupError::NotAutomorphism { index } => {
                write!(f, "map {index} is not an automorphism")
            }
        }
    }
}

impl std::error::Error for GroupError {}

impl From<TableError> for GroupError {
    fn from(e: TableError) -> Self {
        GroupError::Table(e)
    }
}

/// A finite group on `{0, .., order-1}` with a verified Cayley table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Verifies all group axioms on construction.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(TableError::Empty.into());
        }
        check_square(&table, "table", n)?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or(GroupError::NoInverse { g })?;
            inverses[g] = inv;
        }
        Ok(FiniteGroup { order: n, table, identity, inverses, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table).expect("cyclic table")
    }

    /// The Klein four group, multiplication by xor of indices.
    pub fn klein_four() -> Self {
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        FiniteGroup::from_table(table)
            .expect("klein table")
            .with_labels(vec!["e".into(), "a".into(), "b".into(), "ab".into()])
    }

    /// The symmetric group on `k` letters; elements are the permutations
    /// in lexicographic order, product is composition (right factor acts
    /// first).
    pub fn symmetric(k: usize) -> Self {
        let perms = Perm::all(k);
        let index = |p: &Perm| perms.binary_search(p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index(&p.compose(q))).collect())
            .collect();
        let labels = perms.iter().map(|p| p.to_string()).collect();
        FiniteGroup::from_table(table).expect("symmetric group table").with_labels(labels)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut table = vec![vec![0; n]; n];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        FiniteGroup::from_table(table).expect("product table")
    }

    /// `G ⋉_θ H` with `(g, h)(g', h') = (gg', h·θ_g(h'))`; each `θ_g` must
    /// be an automorphism of `H` and `θ` a homomorphism.
    pub fn semidirect_product(
        g: &FiniteGroup,
        h: &FiniteGroup,
        theta: &[Perm],
    ) -> Result<Self, GroupError> {
        if theta.len() != g.order {
            return Err(TableError::SizeMismatch { alpha_rows: g.order, beta_rows: theta.len() }.into());
        }
        for (i, t) in theta.iter().enumerate() {
            if !h.is_automorphism(t) {
                return Err(GroupError::NotAutomorphism { index: i });
            }
        }
        for a in 0..g.order {
            for b in 0..g.order {
                if theta[g.mul(a, b)] != theta[a].compose(&theta[b]) {
                    return Err(GroupError::NotAutomorphism { index: g.mul(a, b) });
                }
            }
        }
        let n = g.order * h.order;
        let idx = |x: usize, y: usize| x * h.order + y;
        let mut table = vec![vec![0; n]; n];
        for x1 in 0..g.order {
            for y1 in 0..h.order {
                for x2 in 0..g.order {
                    for y2 in 0..h.order {
                        table[idx(x1, y1)][idx(x2, y2)] =
                            idx(g.mul(x1, x2), h.mul(y1, theta[x1].apply(y2)));
                    }
                }
            }
        }
        FiniteGroup::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.n() == self.order
            && (0..self.order).all(|a| {
                (0..self.order).all(|b| p.apply(self.mul(a, b)) == self.mul(p.apply(a), p.apply(b)))
            })
    }

    /// Brute-force isomorphism test; intended for small orders.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        if self.order != other.order {
            return false;
        }
        let mut self_orders: Vec<usize> = (0..self.order).map(|g| self.element_order(g)).collect();
        let mut other_orders: Vec<usize> = (0..other.order).map(|g| other.element_order(g)).collect();
        self_orders.sort_unstable();
        other_orders.sort_unstable();
        if self_orders != other_orders {
            return false;
        }
        Perm::all(self.order).iter().any(|p| {
            (0..self.order).all(|a| {
                (0..self.order)
                    .all(|b| p.apply(self.mul(a, b)) == other.mul(p.apply(a), p.apply(b)))
            })
        })
    }

    /// Evaluates a signed word under an assignment of group elements to
    /// generators.
    pub fn eval_word(&self, word: &[crate::word::Letter], images: &[usize]) -> usize {
        let mut acc = self.identity;
        for l in word {
            let img = images[l.gen];
            let img = if l.inverse { self.inv(img) } else { img };
            acc = self.mul(acc, img);
        }
        acc
    }
}
