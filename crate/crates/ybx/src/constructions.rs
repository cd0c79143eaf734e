//! Solution-to-solution constructions: dual, the two derived solutions,
//! and the symmetry equivalence report.

use std::fmt;

use crate::solution::FiniteSolution;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DerivedSide {
    Right,
    Left,
}

/// Errors for constructions with semantic preconditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionError {
    NotSymmetric,
    DegenerateCycleSet,
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::NotSymmetric => write!(f, "solution is not symmetric"),
            ConstructionError::DegenerateCycleSet => write!(f, "cycle set is degenerate"),
        }
    }
}

impl std::error::Error for ConstructionError {}

/// The dual solution `R°(x, y) = (β_x(y), α_y(x))`: the two tables swap
/// roles.
pub fn dual(s: &FiniteSolution) -> FiniteSolution {
    FiniteSolution::from_tables_unchecked(s.beta_rows().to_vec(), s.alpha_rows().to_vec())
}

/// The derived solutions. `Right` is `R'(x, y) = (y, φ_R(x, y))`; `Left`
/// is `'R(x, y) = (ψ_R(x, y), x)`.
pub fn derived(s: &FiniteSolution, side: DerivedSide) -> FiniteSolution {
    let n = s.n();
    let id: Vec<usize> = (0..n).collect();
    match side {
        DerivedSide::Right => {
            let mut beta = vec![vec![0; n]; n];
            for y in 0..n {
                for x in 0..n {
                    beta[y][x] = s.phi(x, y);
                }
            }
            FiniteSolution::from_tables_unchecked(vec![id; n], beta)
        }
        DerivedSide::Left => {
            let mut alpha = vec![vec![0; n]; n];
            for x in 0..n {
                for y in 0..n {
                    alpha[x][y] = s.psi(x, y);
                }
            }
            FiniteSolution::from_tables_unchecked(alpha, vec![id; n])
        }
    }
}

/// Five equivalent symmetry criteria, evaluated independently. For every
/// YBE solution they all agree; `all_agree` is asserted across the test
/// suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsiEquivalenceReport {
    /// `R` is symmetric.
    pub symmetric: bool,
    /// The two derived solutions coincide.
    pub derived_sides_equal: bool,
    /// The dual is symmetric.
    pub dual_symmetric: bool,
    /// `φ_R(x, y) = x` for all pairs; makes every derived-group relation a
    /// commutator.
    pub phi_trivial: bool,
    /// Same criterion for the dual.
    pub dual_phi_trivial: bool,
}

impl PsiEquivalenceReport {
    pub fn all_agree(&self) -> bool {
        let flags = [
            self.symmetric,
            self.derived_sides_equal,
            self.dual_symmetric,
            self.phi_trivial,
            self.dual_phi_trivial,
        ];
        flags.iter().all(|&f| f == flags[0])
    }
}

pub fn psi_equivalence_report(s: &FiniteSolution) -> PsiEquivalenceReport {
    let n = s.n();
    let d = dual(s);
    let phi_trivial = (0..n).all(|x| (0..n).all(|y| s.phi(x, y) == x));
    let dual_phi_trivial = (0..n).all(|x| (0..n).all(|y| d.phi(x, y) == x));
    PsiEquivalenceReport {
        symmetric: s.is_symmetric(),
        derived_sides_equal: derived(s, DerivedSide::Right) == derived(s, DerivedSide::Left),
        dual_symmetric: d.is_symmetric(),
        phi_trivial,
        dual_phi_trivial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use crate::solution::CheckMethod;

    #[test]
    fn dual_of_flip_is_flip() {
        let f = FiniteSolution::flip(3);
        assert_eq!(dual(&f), f);
    }

    #[test]
    fn dual_of_cyclic_shift_swaps_the_shift() {
        let p3 = FiniteSolution::cyclic_shift(3);
        let d = dual(&p3);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(d.apply(x, y), ((y + 2) % 3, (x + 1) % 3));
            }
        }
        assert!(d.is_ybe());
        assert_eq!(dual(&d), p3);
    }

    #[test]
    fn derived_of_flip_is_flip() {
        let f = FiniteSolution::flip(2);
        assert_eq!(derived(&f, DerivedSide::Right), f);
        assert_eq!(derived(&f, DerivedSide::Left), f);
    }

    #[test]
    fn derived_right_of_cyclic_shift_is_flip() {
        let p3 = FiniteSolution::cyclic_shift(3);
        assert_eq!(derived(&p3, DerivedSide::Right), FiniteSolution::flip(3));
    }

    #[test]
    fn trivial_beta_makes_right_derived_equal_dual() {
        // Any solution with β = id: R(x, y) = (f(y), x) for f commuting data.
        let f = Perm::from_images(vec![1, 0, 2]).unwrap();
        let id = Perm::identity(3);
        let s = FiniteSolution::permutation_solution(&f, &id);
        assert!(s.is_ybe());
        assert_eq!(derived(&s, DerivedSide::Right), dual(&s));
    }

    #[test]
    fn psi_report_flags_agree_on_named_fixtures() {
        let all_true = psi_equivalence_report(&FiniteSolution::cyclic_shift(3));
        assert!(all_true.all_agree() && all_true.symmetric);
        let flip = psi_equivalence_report(&FiniteSolution::flip(4));
        assert!(flip.all_agree() && flip.symmetric);
        // A non-involutive n = 2 solution: R(x, y) = (swap(y), x).
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let s = FiniteSolution::permutation_solution(&swap, &Perm::identity(2));
        assert!(s.check_ybe(CheckMethod::Braid).is_ybe);
        let r = psi_equivalence_report(&s);
        assert!(r.all_agree());
        assert!(!r.symmetric && !r.derived_sides_equal && !r.dual_symmetric);
        assert!(!r.phi_trivial && !r.dual_phi_trivial);
    }

    #[test]
    fn psi_of_dual_transposes_phi() {
        for s in [
            FiniteSolution::flip(3),
            FiniteSolution::cyclic_shift(3),
            FiniteSolution::cyclic_shift(4),
        ] {
            let d = dual(&s);
            for x in 0..s.n() {
                for y in 0..s.n() {
                    assert_eq!(d.psi(x, y), s.phi(y, x));
                }
            }
        }
    }
}
