//! Finite set-theoretic Yang-Baxter solutions and their verifiers.
//!
//! A solution on `X = {0, .., n-1}` is a pair of tables `alpha`, `beta`
//! encoding `R(x, y) = (α_x(y), β_y(x))`. Both tables are indexed
//! subscript-first: `alpha[x][y] = α_x(y)` and `beta[y][x] = β_y(x)`.

use std::fmt;

use crate::perm::{is_permutation, Perm};
use crate::word::Letter;

/// A candidate set-theoretic solution: `R(x, y) = (α_x(y), β_y(x))`.
///
/// Construction only enforces table shape (square, entries in range,
/// `n ≥ 1`); the semantic checks live in [`FiniteSolution::validate`] and
/// [`FiniteSolution::check_ybe`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSolution {
    n: usize,
    alpha: Vec<Vec<usize>>,
    beta: Vec<Vec<usize>>,
}

/// Shape errors for square lookup tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableError {
    Empty,
    RaggedRow { table: &'static str, row: usize, len: usize, expected: usize },
    OutOfRange { table: &'static str, row: usize, col: usize, value: usize, n: usize },
    SizeMismatch { alpha_rows: usize, beta_rows: usize },
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::Empty => write!(f, "tables must be non-empty (n ≥ 1)"),
            TableError::RaggedRow { table, row, len, expected } => {
                write!(f, "{table} row {row} has length {len}, expected {expected}")
            }
            TableError::OutOfRange { table, row, col, value, n } => {
                write!(f, "{table}[{row}][{col}] = {value} is out of range for n = {n}")
            }
            TableError::SizeMismatch { alpha_rows, beta_rows } => {
                write!(f, "alpha has {alpha_rows} rows but beta has {beta_rows}")
            }
        }
    }
}

impl std::error::Error for TableError {}

pub(crate) fn check_square(table: &[Vec<usize>], name: &'static str, n: usize) -> Result<(), TableError> {
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(TableError::RaggedRow { table: name, row: i, len: row.len(), expected: n });
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(TableError::OutOfRange { table: name, row: i, col: j, value: v, n });
            }
        }
    }
    Ok(())
}

/// Which verifier [`FiniteSolution::check_ybe`] runs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckMethod {
    /// The braid identity on all n³ triples.
    Braid,
    /// The three pointwise conditions equivalent to the braid identity.
    Lemma,
}

/// First failing condition found by a verifier, with a witness triple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum YbeFailure {
    Braid { x: usize, y: usize, z: usize },
    LemmaI { x: usize, y: usize, z: usize },
    LemmaII { x: usize, y: usize, z: usize },
    LemmaIII { x: usize, y: usize, z: usize },
}

impl fmt::Display for YbeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            YbeFailure::Braid { x, y, z } => write!(f, "braid relation fails at ({x}, {y}, {z})"),
            YbeFailure::LemmaI { x, y, z } => write!(f, "left-action condition (i) fails at ({x}, {y}, {z})"),
            YbeFailure::LemmaII { x, y, z } => write!(f, "right-action condition (ii) fails at ({x}, {y}, {z})"),
            YbeFailure::LemmaIII { x, y, z } => write!(f, "compatibility condition (iii) fails at ({x}, {y}, {z})"),
        }
    }
}

/// A degenerate row: some `α_x` or `β_y` is not a bijection.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DegenerateRow {
    Alpha { x: usize },
    Beta { y: usize },
}

/// Outcome of the structural and equational checks.
///
/// [`FiniteSolution::validate`] fills only the structural fields
/// (`is_bijective`, `is_nondegenerate`, `degenerate_row`) and leaves the
/// equational ones false; [`FiniteSolution::check_ybe`] fills everything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    /// `R` is a bijection of `X²`.
    pub is_bijective: bool,
    /// Every `α_x` and `β_y` is a bijection of `X`.
    pub is_nondegenerate: bool,
    pub degenerate_row: Option<DegenerateRow>,
    pub is_ybe: bool,
    pub failed_condition: Option<YbeFailure>,
    /// `R² = id` on `X²`.
    pub is_involutive: bool,
    /// Non-degenerate involutive solution of the braid identity.
    pub is_symmetric: bool,
}

impl SolutionReport {
    /// Structural validity: `R` bijective and both tables non-degenerate.
    pub fn is_valid(&self) -> bool {
        self.is_bijective && self.is_nondegenerate
    }
}

impl FiniteSolution {
    pub fn new(alpha: Vec<Vec<usize>>, beta: Vec<Vec<usize>>) -> Result<Self, TableError> {
        let n = alpha.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if beta.len() != n {
            return Err(TableError::SizeMismatch { alpha_rows: n, beta_rows: beta.len() });
        }
        check_square(&alpha, "alpha", n)?;
        check_square(&beta, "beta", n)?;
        Ok(FiniteSolution { n, alpha, beta })
    }

    /// The flip `R(x, y) = (y, x)`.
    pub fn flip(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        FiniteSolution { n, alpha: vec![id.clone(); n], beta: vec![id; n] }
    }

    /// The cyclic-shift solution `R(x, y) = (y+1, x-1)` modulo `n`. It is
    /// symmetric for every `n`; `cyclic_shift(3)` is the standard
    /// three-element sample used throughout the tests.
    pub fn cyclic_shift(n: usize) -> Self {
        let fwd: Vec<usize> = (0..n).map(|y| (y + 1) % n).collect();
        let bwd: Vec<usize> = (0..n).map(|x| (x + n - 1) % n).collect();
        FiniteSolution { n, alpha: vec![fwd; n], beta: vec![bwd; n] }
    }

    /// The permutation solution `R(x, y) = (f(y), g(x))`; a YBE solution
    /// exactly when `f` and `g` commute.
    pub fn permutation_solution(f: &Perm, g: &Perm) -> Self {
        let n = f.n();
        assert_eq!(n, g.n());
        FiniteSolution {
            n,
            alpha: vec![f.images().to_vec(); n],
            beta: vec![g.images().to_vec(); n],
        }
    }

    pub(crate) fn from_tables_unchecked(alpha: Vec<Vec<usize>>, beta: Vec<Vec<usize>>) -> Self {
        let n = alpha.len();
        FiniteSolution { n, alpha, beta }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `α_x(y)`.
    pub fn alpha(&self, x: usize, y: usize) -> usize {
        self.alpha[x][y]
    }

    /// `β_y(x)`.
    pub fn beta(&self, y: usize, x: usize) -> usize {
        self.beta[y][x]
    }

    pub fn alpha_rows(&self) -> &[Vec<usize>] {
        &self.alpha
    }

    pub fn beta_rows(&self) -> &[Vec<usize>] {
        &self.beta
    }

    /// `R(x, y) = (α_x(y), β_y(x))`.
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.alpha[x][y], self.beta[y][x])
    }

    /// `α_x` as a permutation. Panics if the row is degenerate; callers
    /// must hold a validated solution.
    pub fn alpha_perm(&self, x: usize) -> Perm {
        Perm::from_images(self.alpha[x].clone()).expect("alpha row of a validated solution")
    }

    /// `β_y` as a permutation.
    pub fn beta_perm(&self, y: usize) -> Perm {
        Perm::from_images(self.beta[y].clone()).expect("beta row of a validated solution")
    }

    /// `α_x⁻¹(y)`.
    pub fn alpha_inv(&self, x: usize, y: usize) -> usize {
        self.alpha[x].iter().position(|&v| v == y).expect("alpha row of a validated solution")
    }

    /// `β_y⁻¹(x)`.
    pub fn beta_inv(&self, y: usize, x: usize) -> usize {
        self.beta[y].iter().position(|&v| v == x).expect("beta row of a validated solution")
    }

    /// Conjugates the solution by a relabeling `p` of `X`.
    pub fn relabel(&self, p: &Perm) -> FiniteSolution {
        let n = self.n;
        let mut alpha = vec![vec![0; n]; n];
        let mut beta = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                alpha[p.apply(x)][p.apply(y)] = p.apply(self.alpha[x][y]);
                beta[p.apply(y)][p.apply(x)] = p.apply(self.beta[y][x]);
            }
        }
        FiniteSolution { n, alpha, beta }
    }

    /// Structural checks: every row a bijection and `R` a bijection of
    /// pairs. Does not touch the braid relation.
    pub fn validate(&self) -> SolutionReport {
        let mut degenerate_row = None;
        for x in 0..self.n {
            if !is_permutation(&self.alpha[x]) {
                degenerate_row = Some(DegenerateRow::Alpha { x });
                break;
            }
        }
        if degenerate_row.is_none() {
            for y in 0..self.n {
                if !is_permutation(&self.beta[y]) {
                    degenerate_row = Some(DegenerateRow::Beta { y });
                    break;
                }
            }
        }
        let mut seen = vec![false; self.n * self.n];
        let mut bijective = true;
        'outer: for x in 0..self.n {
            for y in 0..self.n {
                let (u, v) = self.apply(x, y);
                let idx = u * self.n + v;
                if seen[idx] {
                    bijective = false;
                    break 'outer;
                }
                seen[idx] = true;
            }
        }
        SolutionReport {
            is_bijective: bijective,
            is_nondegenerate: degenerate_row.is_none(),
            degenerate_row,
            is_ybe: false,
            failed_condition: None,
            is_involutive: false,
            is_symmetric: false,
        }
    }

    fn braid_failure(&self) -> Option<YbeFailure> {
        // Both sides of the braid identity, with the first factor acting on
        // the last two coordinates.
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if self.braid_lhs(x, y, z) != self.braid_rhs(x, y, z) {
                        return Some(YbeFailure::Braid { x, y, z });
                    }
                }
            }
        }
        None
    }

    fn braid_lhs(&self, x: usize, y: usize, z: usize) -> (usize, usize, usize) {
        let (a, b) = self.apply(y, z);
        let (c, d) = self.apply(x, a);
        let (e, f) = self.apply(d, b);
        (c, e, f)
    }

    fn braid_rhs(&self, x: usize, y: usize, z: usize) -> (usize, usize, usize) {
        let (a, b) = self.apply(x, y);
        let (c, d) = self.apply(b, z);
        let (e, f) = self.apply(a, c);
        (e, f, d)
    }

    fn lemma_failure(&self) -> Option<YbeFailure> {
        let n = self.n;
        // (i): α_x α_y = α_{α_x(y)} α_{β_y(x)} pointwise.
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.alpha[x][self.alpha[y][z]];
                    let rhs = self.alpha[self.alpha[x][y]][self.alpha[self.beta[y][x]][z]];
                    if lhs != rhs {
                        return Some(YbeFailure::LemmaI { x, y, z });
                    }
                }
            }
        }
        // (ii): β_y β_x = β_{β_y(x)} β_{α_x(y)} pointwise.
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.beta[y][self.beta[x][z]];
                    let rhs = self.beta[self.beta[y][x]][self.beta[self.alpha[x][y]][z]];
                    if lhs != rhs {
                        return Some(YbeFailure::LemmaII { x, y, z });
                    }
                }
            }
        }
        // (iii): β_{α_{β_y(x)}(z)}(α_x(y)) = α_{β_{α_y(z)}(x)}(β_z(y)).
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.beta[self.alpha[self.beta[y][x]][z]][self.alpha[x][y]];
                    let rhs = self.alpha[self.beta[self.alpha[y][z]][x]][self.beta[z][y]];
                    if lhs != rhs {
                        return Some(YbeFailure::LemmaIII { x, y, z });
                    }
                }
            }
        }
        None
    }

    pub fn involutive_failure(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                let (u, v) = self.apply(x, y);
                if self.apply(u, v) != (x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Runs the selected verifier and assembles the full report. The two
    /// methods agree on every input table; the tests check this
    /// exhaustively for n ≤ 3.
    pub fn check_ybe(&self, method: CheckMethod) -> SolutionReport {
        let mut report = self.validate();
        report.failed_condition = match method {
            CheckMethod::Braid => self.braid_failure(),
            CheckMethod::Lemma => self.lemma_failure(),
        };
        report.is_ybe = report.failed_condition.is_none();
        report.is_involutive = self.involutive_failure().is_none();
        report.is_symmetric = report.is_ybe && report.is_involutive && report.is_nondegenerate;
        report
    }

    /// Shortcut for `check_ybe(Braid).is_ybe` plus structural validity.
    pub fn is_ybe(&self) -> bool {
        let r = self.validate();
        r.is_valid() && self.braid_failure().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_ybe(CheckMethod::Braid).is_symmetric
    }

    /// `φ_R(x, y) = α_y(β_{α_x⁻¹(y)}(x))`.
    pub fn phi(&self, x: usize, y: usize) -> usize {
        self.alpha[y][self.beta[self.alpha_inv(x, y)][x]]
    }

    /// `ψ_R(x, y) = β_x(α_{β_y⁻¹(x)}(y))`.
    pub fn psi(&self, x: usize, y: usize) -> usize {
        self.beta[x][self.alpha[self.beta_inv(y, x)][y]]
    }

    /// Composes `α` generator by generator along a signed word; the word
    /// acts through the left action of the structure group.
    pub fn alpha_word(&self, w: &[Letter]) -> Result<Perm, crate::word::WordError> {
        let mut p = Perm::identity(self.n);
        for l in w {
            if l.gen >= self.n {
                return Err(crate::word::WordError::LetterOutOfRange {
                    letter: crate::word::to_signed(&[*l])[0],
                    generators: self.n,
                });
            }
            let a = self.alpha_perm(l.gen);
            let a = if l.inverse { a.inverse() } else { a };
            p = p.compose(&a);
        }
        Ok(p)
    }

    /// Checks `φ(α_g(x), α_g(y)) = α_g(φ(x, y))` for every generator `g`
    /// and pair `(x, y)`; returns the first violating `(g, x, y)`.
    /// Generator-level truth suffices because `α` is an action.
    pub fn phi_equivariance_failure(&self) -> Option<(usize, usize, usize)> {
        for g in 0..self.n {
            for x in 0..self.n {
                for y in 0..self.n {
                    let lhs = self.phi(self.alpha[g][x], self.alpha[g][y]);
                    let rhs = self.alpha[g][self.phi(x, y)];
                    if lhs != rhs {
                        return Some((g, x, y));
                    }
                }
            }
        }
        None
    }

    /// Searches for a relabeling `h` with `R'(h×h) = (h×h)R`, i.e. a
    /// Yang-Baxter isomorphism onto `other`. Backtracks over partial
    /// bijections, pruning as soon as a constraint closes.
    pub fn find_isomorphism(&self, other: &FiniteSolution) -> Option<Perm> {
        if self.n != other.n {
            return None;
        }
        let n = self.n;
        let mut h = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_isomorphism(other, &mut h, &mut used, 0) {
            return Perm::from_images(h);
        }
        None
    }

    fn extend_isomorphism(
        &self,
        other: &FiniteSolution,
        h: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let n = self.n;
        if next == n {
            return true;
        }
        'candidate: for img in 0..n {
            if used[img] {
                continue;
            }
            h[next] = img;
            used[img] = true;
            // Check every pair whose constraints are now fully determined.
            for x in 0..=next {
                for y in 0..=next {
                    let a = self.alpha[x][y];
                    if h[a] != usize::MAX && other.alpha[h[x]][h[y]] != h[a]
                        || h[a] == usize::MAX && used[other.alpha[h[x]][h[y]]]
                    {
                        used[img] = false;
                        h[next] = usize::MAX;
                        continue 'candidate;
                    }
                    let b = self.beta[y][x];
                    if h[b] != usize::MAX && other.beta[h[y]][h[x]] != h[b]
                        || h[b] == usize::MAX && used[other.beta[h[y]][h[x]]]
                    {
                        used[img] = false;
                        h[next] = usize::MAX;
                        continue 'candidate;
                    }
                }
            }
            if self.extend_isomorphism(other, h, used, next + 1) {
                return true;
            }
            used[img] = false;
            h[next] = usize::MAX;
        }
        false
    }

    /// The lexicographically least relabeling of the solution over all n!
    /// bijections. Two solutions are isomorphic exactly when their
    /// canonical forms coincide.
    pub fn canonical_form(&self) -> FiniteSolution {
        let mut best: Option<FiniteSolution> = None;
        for p in Perm::all(self.n) {
            let cand = self.relabel(&p);
            match &best {
                None => best = Some(cand),
                Some(b) => {
                    if cand < *b {
                        best = Some(cand);
                    }
                }
            }
        }
        best.expect("n >= 1")
    }
}

impl fmt::Debug for FiniteSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSolution(n={}, alpha={:?}, beta={:?})", self.n, self.alpha, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::from_signed;

    /// n = 2 candidate that fails the braid relation: identity alphas,
    /// `β_0 = id`, `β_1 = swap`.
    pub(crate) fn ns2() -> FiniteSolution {
        FiniteSolution::new(
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn flip_is_all_valid() {
        let r = FiniteSolution::flip(2).validate();
        assert!(r.is_valid());
    }

    #[test]
    fn constant_alpha_row_is_degenerate_with_witness() {
        let s = FiniteSolution::new(
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        let r = s.validate();
        assert!(!r.is_nondegenerate);
        assert_eq!(r.degenerate_row, Some(DegenerateRow::Alpha { x: 0 }));
    }

    #[test]
    fn cyclic_shift_three_is_valid_and_bijective() {
        let r = FiniteSolution::cyclic_shift(3).validate();
        assert!(r.is_valid());
    }

    #[test]
    fn nondegenerate_rows_do_not_force_pair_bijectivity() {
        // All rows permutations, yet R collides on pairs.
        let s = FiniteSolution::new(
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let r = s.validate();
        assert!(r.is_nondegenerate);
        assert!(!r.is_bijective);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert_eq!(FiniteSolution::new(vec![], vec![]), Err(TableError::Empty));
        assert!(matches!(
            FiniteSolution::new(vec![vec![0, 1], vec![0]], vec![vec![0, 1], vec![0, 1]]),
            Err(TableError::RaggedRow { .. })
        ));
        assert!(matches!(
            FiniteSolution::new(vec![vec![0, 2], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]),
            Err(TableError::OutOfRange { .. })
        ));
    }

    #[test]
    fn flip_satisfies_the_braid_identity() {
        let r = FiniteSolution::flip(2).check_ybe(CheckMethod::Braid);
        assert!(r.is_ybe);
        assert!(r.is_involutive);
        assert!(r.is_symmetric);
    }

    #[test]
    fn ns2_fails_condition_two_at_x0_y1() {
        let r = ns2().check_ybe(CheckMethod::Lemma);
        assert!(!r.is_ybe);
        assert_eq!(r.failed_condition, Some(YbeFailure::LemmaII { x: 0, y: 1, z: 0 }));
        // Braid agrees on the verdict.
        assert!(!ns2().check_ybe(CheckMethod::Braid).is_ybe);
    }

    #[test]
    fn cyclic_shift_three_is_symmetric() {
        let r = FiniteSolution::cyclic_shift(3).check_ybe(CheckMethod::Braid);
        assert!(r.is_ybe && r.is_involutive && r.is_symmetric);
        let r = FiniteSolution::cyclic_shift(3).check_ybe(CheckMethod::Lemma);
        assert!(r.is_ybe && r.is_symmetric);
    }

    #[test]
    fn phi_is_first_projection_on_flip_and_cyclic_shift() {
        for s in [FiniteSolution::flip(3), FiniteSolution::cyclic_shift(3)] {
            for x in 0..3 {
                for y in 0..3 {
                    assert_eq!(s.phi(x, y), x);
                }
            }
        }
    }

    #[test]
    fn alpha_word_composes_generators() {
        let s = FiniteSolution::cyclic_shift(3);
        let sigma = s.alpha_perm(0);
        assert!(s.alpha_word(&[]).unwrap().is_identity());
        assert_eq!(s.alpha_word(&from_signed(&[1], 3).unwrap()).unwrap(), sigma);
        let w = from_signed(&[1, 2], 3).unwrap();
        let two_step = s.alpha_word(&w).unwrap();
        assert_eq!(two_step, sigma.compose(&sigma));
        // Condition (i) rewrites the word: α_{x0} α_{x1} = α_{α_0(1)} α_{β_1(0)}.
        let a = s.alpha(0, 1);
        let b = s.beta(1, 0);
        let rewritten = s
            .alpha_word(&from_signed(&[(a + 1) as i64, (b + 1) as i64], 3).unwrap())
            .unwrap();
        assert_eq!(two_step, rewritten);
        assert!(s.alpha_word(&from_signed(&[4], 9).unwrap()).is_err());
    }

    #[test]
    fn phi_equivariance_holds_on_samples() {
        assert_eq!(FiniteSolution::flip(3).phi_equivariance_failure(), None);
        assert_eq!(FiniteSolution::cyclic_shift(3).phi_equivariance_failure(), None);
    }

    #[test]
    fn isomorphism_search_finds_relabelings_and_rejects_flip() {
        let p3 = FiniteSolution::cyclic_shift(3);
        let id = p3.find_isomorphism(&p3).unwrap();
        assert!(p3.relabel(&id) == p3);
        assert!(p3.find_isomorphism(&FiniteSolution::flip(3)).is_none());
        let swap = Perm::from_images(vec![1, 0, 2]).unwrap();
        let relabeled = p3.relabel(&swap);
        let h = p3.find_isomorphism(&relabeled).unwrap();
        assert_eq!(p3.relabel(&h), relabeled);
    }

    #[test]
    fn flip_finds_identity_isomorphism() {
        let f = FiniteSolution::flip(2);
        let h = f.find_isomorphism(&f).unwrap();
        assert!(h.is_identity());
    }

    #[test]
    fn canonical_form_is_idempotent_and_relabeling_invariant() {
        let p3 = FiniteSolution::cyclic_shift(3);
        let c = p3.canonical_form();
        assert_eq!(c.canonical_form(), c);
        for p in Perm::all(3) {
            assert_eq!(p3.relabel(&p).canonical_form(), c);
        }
        assert_eq!(FiniteSolution::flip(3).canonical_form(), FiniteSolution::flip(3));
    }
}
