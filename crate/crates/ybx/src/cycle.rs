//! Cycle sets, their actions, and the correspondence with symmetric
//! solutions.
//!
//! A cycle set is a binary operation `x · y` with
//! `(x·y)·(x·z) = (y·x)·(y·z)`; writing `ℓ_x(y) = x·y`, it corresponds to
//! a symmetric solution via `R(x, y) = (ℓ_{ℓ_y⁻¹(x)}(y), ℓ_y⁻¹(x))` and
//! back via `x·y = β_x⁻¹(y)`.

use std::fmt;

use crate::constructions::ConstructionError;
use crate::perm::{is_permutation, Perm};
use crate::solution::{check_square, FiniteSolution, TableError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleSetError {
    Table(TableError),
    /// The defining identity fails at the witness triple.
    AxiomFails { x: usize, y: usize, z: usize },
}

impl fmt::Display for CycleSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleSetError::Table(e) => write!(f, "{e}"),
            CycleSetError::AxiomFails { x, y, z } => {
                write!(f, "cycle-set axiom fails at ({x}, {y}, {z})")
            }
        }
    }
}

impl std::error::Error for CycleSetError {}

impl From<TableError> for CycleSetError {
    fn from(e: TableError) -> Self {
        CycleSetError::Table(e)
    }
}

/// A finite cycle set; the axiom is enforced at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleSet {
    n: usize,
    table: Vec<Vec<usize>>,
}

impl CycleSet {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, CycleSetError> {
        let n = table.len();
        if n == 0 {
            return Err(TableError::Empty.into());
        }
        check_square(&table, "table", n)?;
        if let Some((x, y, z)) = axiom_failure(&table) {
            return Err(CycleSetError::AxiomFails { x, y, z });
        }
        Ok(CycleSet { n, table })
    }

    /// The trivial cycle set `x·y = y`.
    pub fn trivial(n: usize) -> Self {
        CycleSet { n, table: vec![(0..n).collect(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `x · y`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Left multiplication `ℓ_x`, if bijective.
    pub fn left_mul(&self, x: usize) -> Option<Perm> {
        Perm::from_images(self.table[x].clone())
    }

    /// Non-degenerate: every `ℓ_x` bijective and `x ↦ x·x` bijective. Both
    /// are needed by the correspondence formula, which inverts `ℓ`.
    pub fn is_nondegenerate(&self) -> bool {
        (0..self.n).all(|x| is_permutation(&self.table[x]))
            && is_permutation(&(0..self.n).map(|x| self.table[x][x]).collect::<Vec<_>>())
    }
}

fn axiom_failure(table: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let n = table.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = table[table[x][y]][table[x][z]];
                let rhs = table[table[y][x]][table[y][z]];
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// `x·y = β_x⁻¹(y)`; requires a symmetric solution.
pub fn to_cycle_set(s: &FiniteSolution) -> Result<CycleSet, ConstructionError> {
    if !s.is_symmetric() {
        return Err(ConstructionError::NotSymmetric);
    }
    let n = s.n();
    let table: Vec<Vec<usize>> = (0..n).map(|x| s.beta_perm(x).inverse().into_images()).collect();
    Ok(CycleSet::new(table).expect("symmetric solutions induce cycle sets"))
}

/// `R(x, y) = (ℓ_{ℓ_y⁻¹(x)}(y), ℓ_y⁻¹(x))`; requires a non-degenerate
/// cycle set.
pub fn from_cycle_set(c: &CycleSet) -> Result<FiniteSolution, ConstructionError> {
    if !c.is_nondegenerate() {
        return Err(ConstructionError::DegenerateCycleSet);
    }
    let n = c.n();
    let inv: Vec<Perm> = (0..n).map(|x| c.left_mul(x).unwrap().inverse()).collect();
    let mut alpha = vec![vec![0; n]; n];
    let mut beta = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let k = inv[y].apply(x);
            alpha[x][y] = c.op(k, y);
            beta[y][x] = k;
        }
    }
    Ok(FiniteSolution::from_tables_unchecked(alpha, beta))
}

/// Which condition of a cycle action failed, with a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleActionDefect {
    /// `π_x(s·t) ≠ π_x(s)·π_x(t)`.
    NotMorphism { x: usize, s: usize, t: usize },
    /// `π_{y·x} π_y ≠ π_{x·y} π_x` at `s`.
    NotCompatible { x: usize, y: usize, s: usize },
    /// `π_x` is not a permutation of `S`.
    NotPermutation { x: usize },
}

impl fmt::Display for CycleActionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CycleActionDefect::NotMorphism { x, s, t } => {
                write!(f, "pi[{x}] is not a cycle morphism: breaks at ({s}, {t})")
            }
            CycleActionDefect::NotCompatible { x, y, s } => {
                write!(f, "action condition fails at x={x}, y={y}, s={s}")
            }
            CycleActionDefect::NotPermutation { x } => {
                write!(f, "pi[{x}] is not a permutation")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleActionError {
    Table(TableError),
    Invalid(CycleActionDefect),
    Degenerate,
}

impl fmt::Display for CycleActionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleActionError::Table(e) => write!(f, "{e}"),
            CycleActionError::Invalid(d) => write!(f, "invalid cycle action: {d}"),
            CycleActionError::Degenerate => write!(f, "cycle sets of an action must be non-degenerate"),
        }
    }
}

impl std::error::Error for CycleActionError {}

impl From<TableError> for CycleActionError {
    fn from(e: TableError) -> Self {
        CycleActionError::Table(e)
    }
}

/// An action `π` of a cycle set `X` on a cycle set `S`:
/// `pi[x][s] = π_x(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleAction {
    x: CycleSet,
    s: CycleSet,
    pi: Vec<Vec<usize>>,
}

impl CycleAction {
    pub fn new(x: CycleSet, s: CycleSet, pi: Vec<Vec<usize>>) -> Result<Self, CycleActionError> {
        if pi.len() != x.n() {
            return Err(TableError::SizeMismatch { alpha_rows: x.n(), beta_rows: pi.len() }.into());
        }
        for (i, row) in pi.iter().enumerate() {
            if row.len() != s.n() {
                return Err(TableError::RaggedRow {
                    table: "pi",
                    row: i,
                    len: row.len(),
                    expected: s.n(),
                }
                .into());
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= s.n() {
                    return Err(TableError::OutOfRange {
                        table: "pi",
                        row: i,
                        col: j,
                        value: v,
                        n: s.n(),
                    }
                    .into());
                }
            }
        }
        Ok(CycleAction { x, s, pi })
    }

    pub fn base(&self) -> &CycleSet {
        &self.x
    }

    pub fn fiber(&self) -> &CycleSet {
        &self.s
    }

    /// `π_x(s)`.
    pub fn pi(&self, x: usize, s: usize) -> usize {
        self.pi[x][s]
    }

    pub fn pi_rows(&self) -> &[Vec<usize>] {
        &self.pi
    }

    pub fn pi_perm(&self, x: usize) -> Option<Perm> {
        Perm::from_images(self.pi[x].clone())
    }

    /// Checks the three defining conditions exhaustively.
    pub fn validate(&self) -> Result<(), CycleActionDefect> {
        let nx = self.x.n();
        let ns = self.s.n();
        for x in 0..nx {
            if !is_permutation(&self.pi[x]) {
                return Err(CycleActionDefect::NotPermutation { x });
            }
        }
        for x in 0..nx {
            for s in 0..ns {
                for t in 0..ns {
                    if self.pi[x][self.s.op(s, t)] != self.s.op(self.pi[x][s], self.pi[x][t]) {
                        return Err(CycleActionDefect::NotMorphism { x, s, t });
                    }
                }
            }
        }
        for x in 0..nx {
            for y in 0..nx {
                for s in 0..ns {
                    let lhs = self.pi[self.x.op(y, x)][self.pi[y][s]];
                    let rhs = self.pi[self.x.op(x, y)][self.pi[x][s]];
                    if lhs != rhs {
                        return Err(CycleActionDefect::NotCompatible { x, y, s });
                    }
                }
            }
        }
        Ok(())
    }

    fn checked(&self) -> Result<(), CycleActionError> {
        self.validate().map_err(CycleActionError::Invalid)?;
        if !self.x.is_nondegenerate() || !self.s.is_nondegenerate() {
            return Err(CycleActionError::Degenerate);
        }
        Ok(())
    }

    /// Index of the pair `(x, s)` in the product, enumerated fiber-fast.
    pub fn pair_index(&self, x: usize, s: usize) -> usize {
        x * self.s.n() + s
    }
}

/// The semi-direct product cycle structure on `X × S`:
/// `(x,s)·(y,t) = (x·y, π_{x·y}(s)·π_{y·x}(t))`.
pub fn cycleset_semidirect(a: &CycleAction) -> Result<CycleSet, CycleActionError> {
    a.checked()?;
    let (nx, ns) = (a.base().n(), a.fiber().n());
    let n = nx * ns;
    let mut table = vec![vec![0; n]; n];
    for x in 0..nx {
        for s in 0..ns {
            for y in 0..nx {
                for t in 0..ns {
                    let gamma = a.fiber().op(a.pi(a.base().op(x, y), s), a.pi(a.base().op(y, x), t));
                    table[a.pair_index(x, s)][a.pair_index(y, t)] =
                        a.pair_index(a.base().op(x, y), gamma);
                }
            }
        }
    }
    CycleSet::new(table).map_err(|e| match e {
        CycleSetError::Table(t) => CycleActionError::Table(t),
        CycleSetError::AxiomFails { .. } => {
            unreachable!("semi-direct product of a valid action satisfies the axiom")
        }
    })
}

/// The solution on `X × S` built directly from the component solutions:
/// `R((x,s),(y,t)) = ((α_x(y), α̃_s(π_x(t))), (β_y(x), π_{α_x(y)}⁻¹(β̃_{π_x(t)}(s))))`.
pub fn semidirect_solution(a: &CycleAction) -> Result<FiniteSolution, CycleActionError> {
    a.checked()?;
    let rx = from_cycle_set(a.base()).expect("checked non-degenerate");
    let rs = from_cycle_set(a.fiber()).expect("checked non-degenerate");
    let (nx, ns) = (a.base().n(), a.fiber().n());
    let pi_inv: Vec<Perm> = (0..nx).map(|x| a.pi_perm(x).unwrap().inverse()).collect();
    let n = nx * ns;
    let mut alpha = vec![vec![0; n]; n];
    let mut beta = vec![vec![0; n]; n];
    for x in 0..nx {
        for s in 0..ns {
            for y in 0..nx {
                for t in 0..ns {
                    let p = a.pair_index(x, s);
                    let q = a.pair_index(y, t);
                    let ax_y = rx.alpha(x, y);
                    let pt = a.pi(x, t);
                    alpha[p][q] = a.pair_index(ax_y, rs.alpha(s, pt));
                    beta[q][p] = a.pair_index(rx.beta(y, x), pi_inv[ax_y].apply(rs.beta(pt, s)));
                }
            }
        }
    }
    Ok(FiniteSolution::from_tables_unchecked(alpha, beta))
}

/// The commutation relation: the solution of the product cycle set equals
/// the product of the component solutions, pointwise.
pub fn check_commutation(a: &CycleAction) -> Result<bool, CycleActionError> {
    let via_cycle_set = from_cycle_set(&cycleset_semidirect(a)?)
        .expect("semi-direct product of non-degenerate cycle sets is non-degenerate");
    let direct = semidirect_solution(a)?;
    Ok(via_cycle_set == direct)
}
