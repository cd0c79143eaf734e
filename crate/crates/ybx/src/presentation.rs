//! Finitely presented groups attached to solutions: the structure group,
//! its cycle-set form, the derived group, and their computable shadows
//! (abelianization and finite permutation quotients).
//!
//! The word problem is not solved here for general presentations; exact
//! equality checks for symmetric solutions live in [`crate::lattice`].

use std::fmt;

use num_bigint::BigInt;

use crate::constructions::ConstructionError;
use crate::cycle::{from_cycle_set, to_cycle_set, CycleAction, CycleActionError};
use crate::group::FiniteGroup;
use crate::lattice::SymmetricEngine;
use crate::perm::Perm;
use crate::snf::{free_rank, invariant_factors, lattice_contains, IntegerMatrix};
use crate::solution::FiniteSolution;
use crate::word::{
    cyclic_reduce, exponent_vector, free_reduce, least_rotation, Letter, Word, WordError,
};

/// Generators `0..generator_count` with relator words. Relators are
/// freely and cyclically reduced; empty relators are dropped and exact
/// duplicates removed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self, WordError> {
        let mut normalized: Vec<Word> = Vec::new();
        for r in relators {
            for l in &r {
                if l.gen >= generator_count {
                    return Err(WordError::LetterOutOfRange {
                        letter: crate::word::to_signed(&[*l])[0],
                        generators: generator_count,
                    });
                }
            }
            let reduced = cyclic_reduce(&free_reduce(&r));
            if reduced.is_empty() {
                continue;
            }
            if !normalized.contains(&reduced) {
                normalized.push(reduced);
            }
        }
        Ok(Presentation { generator_count, relators: normalized })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.relators.len(), self.generator_count);
        for (i, r) in self.relators.iter().enumerate() {
            for (j, c) in exponent_vector(r, self.generator_count).into_iter().enumerate() {
                m.set(i, j, BigInt::from(c));
            }
        }
        m
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PresentationKind {
    /// `x y = α_x(y) β_y(x)` over all pairs.
    Standard,
    /// `(y·x) y = (x·y) x` over the associated cycle set; symmetric
    /// solutions only.
    CycleForm,
    /// The derived group: `x • y = y • φ_R(x, y)`.
    Derived,
}

/// Builds the presentation of the chosen group of a solution.
pub fn structure_presentation(
    s: &FiniteSolution,
    kind: PresentationKind,
) -> Result<Presentation, ConstructionError> {
    let n = s.n();
    let mut relators = Vec::with_capacity(n * n);
    match kind {
        PresentationKind::Standard => {
            for x in 0..n {
                for y in 0..n {
                    relators.push(vec![
                        Letter::new(x),
                        Letter::new(y),
                        Letter::inv(s.beta(y, x)),
                        Letter::inv(s.alpha(x, y)),
                    ]);
                }
            }
        }
        PresentationKind::CycleForm => {
            let c = to_cycle_set(s)?;
            for x in 0..n {
                for y in 0..n {
                    relators.push(vec![
                        Letter::new(c.op(y, x)),
                        Letter::new(y),
                        Letter::inv(x),
                        Letter::inv(c.op(x, y)),
                    ]);
                }
            }
        }
        PresentationKind::Derived => {
            for x in 0..n {
                for y in 0..n {
                    relators.push(vec![
                        Letter::new(x),
                        Letter::new(y),
                        Letter::inv(s.phi(x, y)),
                        Letter::inv(y),
                    ]);
                }
            }
        }
    }
    Ok(Presentation::new(n, relators).expect("letters in range by construction"))
}

/// Invariant factors of the abelianized group: divisibility chain first,
/// trailing zeros for the free rank.
pub fn abelianization(p: &Presentation) -> Vec<BigInt> {
    invariant_factors(&p.relation_matrix())
}

/// Checks that reversing every structure-group relator lands on a
/// defining relator of the dual's structure group, witnessing the
/// anti-isomorphism on generators. Length-4 relators make a one-step
/// membership check (up to free and cyclic reduction and rotation)
/// sufficient.
pub fn check_dual_antiisomorphism(s: &FiniteSolution) -> bool {
    let d = crate::constructions::dual(s);
    let dual_relators: Vec<Word> = structure_presentation(&d, PresentationKind::Standard)
        .expect("standard presentations always exist")
        .relators()
        .iter()
        .map(|r| least_rotation(&cyclic_reduce(r)))
        .collect();
    let source = structure_presentation(s, PresentationKind::Standard)
        .expect("standard presentations always exist");
    source.relators().iter().all(|r| {
        // The anti-homomorphism fixes generators and reverses products, so
        // a relator maps to its reversal with signs kept.
        let reversed: Word = r.iter().rev().copied().collect();
        let reduced = cyclic_reduce(&free_reduce(&reversed));
        reduced.is_empty() || dual_relators.contains(&least_rotation(&reduced))
    })
}

/// Index of the first relator whose image under `generator ↦ images[g]`
/// is not the identity of `target`; `None` means the assignment extends
/// to a homomorphism.
pub fn hom_extension_failure(
    p: &Presentation,
    target: &FiniteGroup,
    images: &[usize],
) -> Option<usize> {
    assert_eq!(images.len(), p.generator_count(), "one image per generator");
    p.relators()
        .iter()
        .position(|r| target.eval_word(r, images) != target.identity())
}

pub fn hom_extends(p: &Presentation, target: &FiniteGroup, images: &[usize]) -> bool {
    hom_extension_failure(p, target, images).is_none()
}

/// Verifies the two relation-level identities under which a cycle-set
/// action extends to an action of the base structure group on the fiber
/// structure group: the base relators act trivially through `π`, and the
/// fiber-side word identity `π_x(s·t) π_x(s) = π_x(t·s) π_x(t)` holds
/// exactly (decided in the affine model of the fiber solution).
pub fn check_action_extension(a: &CycleAction) -> Result<bool, CycleActionError> {
    a.validate().map_err(CycleActionError::Invalid)?;
    let rx = from_cycle_set(a.base()).map_err(|_| CycleActionError::Degenerate)?;
    let rs = from_cycle_set(a.fiber()).map_err(|_| CycleActionError::Degenerate)?;
    let pi: Vec<Perm> = (0..a.base().n())
        .map(|x| a.pi_perm(x).expect("validated action rows are permutations"))
        .collect();

    // Base side: every cycle-form relator of the base group evaluates to
    // the identity permutation of S under x ↦ π_x.
    let base_pres = structure_presentation(&rx, PresentationKind::CycleForm)
        .expect("solutions from cycle sets are symmetric");
    for r in base_pres.relators() {
        let mut acc = Perm::identity(a.fiber().n());
        for l in r {
            let p = if l.inverse { pi[l.gen].inverse() } else { pi[l.gen].clone() };
            acc = acc.compose(&p);
        }
        if !acc.is_identity() {
            return Ok(false);
        }
    }

    // Fiber side: the two-letter words agree in the fiber structure group.
    let engine = SymmetricEngine::new(rs).expect("fiber solution is symmetric");
    let ns = a.fiber().n();
    for x in 0..a.base().n() {
        for s in 0..ns {
            for t in 0..ns {
                let w1 = vec![Letter::new(a.pi(x, a.fiber().op(s, t))), Letter::new(a.pi(x, s))];
                let w2 = vec![Letter::new(a.pi(x, a.fiber().op(t, s))), Letter::new(a.pi(x, t))];
                if !engine.words_equal(&w1, &w2).expect("letters in range") {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Comparison of the structure group of a semi-direct product solution
/// against the semi-direct product of the structure groups.
#[derive(Clone, Debug)]
pub struct PiHomReport {
    /// The generator map `(x, s) ↦ x·s` kills every source relator in both
    /// computable shadows.
    pub extends: bool,
    pub rank_source: usize,
    pub rank_target: usize,
    pub source_factors: Vec<BigInt>,
    pub target_factors: Vec<BigInt>,
}

/// Presentation of `G_X ⋉ G_S` on generators `X ⊔ S`: relators of both
/// structure groups plus `x s x⁻¹ = π_x(s)`.
fn semidirect_group_presentation(
    a: &CycleAction,
    rx: &FiniteSolution,
    rs: &FiniteSolution,
) -> Presentation {
    let nx = a.base().n();
    let ns = a.fiber().n();
    let mut relators: Vec<Word> = Vec::new();
    let px = structure_presentation(rx, PresentationKind::Standard).unwrap();
    relators.extend(px.relators().iter().cloned());
    let ps = structure_presentation(rs, PresentationKind::Standard).unwrap();
    for r in ps.relators() {
        relators.push(r.iter().map(|l| Letter { gen: l.gen + nx, inverse: l.inverse }).collect());
    }
    for x in 0..nx {
        for s in 0..ns {
            relators.push(vec![
                Letter::new(x),
                Letter::new(nx + s),
                Letter::inv(x),
                Letter::inv(nx + a.pi(x, s)),
            ]);
        }
    }
    Presentation::new(nx + ns, relators).expect("letters in range")
}

/// Certifies the canonical homomorphism from the structure group of the
/// semi-direct product solution to the semi-direct product of structure
/// groups, at the abelianized level and in the permutation quotient on
/// `X ⊔ S`, and reports both abelianization free ranks.
pub fn check_pi_homomorphism(a: &CycleAction) -> Result<PiHomReport, CycleActionError> {
    let product = crate::cycle::semidirect_solution(a)?;
    let rx = from_cycle_set(a.base()).expect("checked by semidirect_solution");
    let rs = from_cycle_set(a.fiber()).expect("checked by semidirect_solution");
    let nx = a.base().n();
    let ns = a.fiber().n();

    let source = structure_presentation(&product, PresentationKind::Standard).unwrap();
    let target = semidirect_group_presentation(a, &rx, &rs);
    let target_matrix = target.relation_matrix();

    // Images of source generators: (x, s) ↦ the two-letter word x·s over
    // X ⊔ S. Inverse letters reverse the pair.
    let map_word = |w: &Word| -> Word {
        let mut out = Word::with_capacity(2 * w.len());
        for l in w {
            let x = l.gen / ns;
            let s = nx + l.gen % ns;
            if l.inverse {
                out.push(Letter::inv(s));
                out.push(Letter::inv(x));
            } else {
                out.push(Letter::new(x));
                out.push(Letter::new(s));
            }
        }
        out
    };

    // Permutation quotient on Ω = X ⊔ S: x acts by (α_x, π_x), s by
    // (id, α̃_s).
    let omega = nx + ns;
    let rep: Vec<Perm> = (0..nx + ns)
        .map(|g| {
            let mut images: Vec<usize> = (0..omega).collect();
            if g < nx {
                for i in 0..nx {
                    images[i] = rx.alpha(g, i);
                }
                for j in 0..ns {
                    images[nx + j] = nx + a.pi(g, j);
                }
            } else {
                for j in 0..ns {
                    images[nx + j] = nx + rs.alpha(g - nx, j);
                }
            }
            Perm::from_images(images).expect("rows of validated data are permutations")
        })
        .collect();
    let eval_rep = |w: &Word| -> Perm {
        let mut acc = Perm::identity(omega);
        for l in w {
            let p = if l.inverse { rep[l.gen].inverse() } else { rep[l.gen].clone() };
            acc = acc.compose(&p);
        }
        acc
    };
    // The representation must kill the target relators for the quotient
    // check to be meaningful.
    debug_assert!(target.relators().iter().all(|r| eval_rep(r).is_identity()));

    let mut extends = true;
    for r in source.relators() {
        let image = map_word(r);
        let v: Vec<BigInt> =
            exponent_vector(&image, nx + ns).into_iter().map(BigInt::from).collect();
        if !lattice_contains(&target_matrix, &v) {
            extends = false;
        }
        if !eval_rep(&image).is_identity() {
            extends = false;
        }
    }

    let source_factors = abelianization(&source);
    let target_factors = abelianization(&target);
    Ok(PiHomReport {
        extends,
        rank_source: free_rank(&source_factors),
        rank_target: free_rank(&target_factors),
        source_factors,
        target_factors,
    })
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} generators | {} relators>", self.generator_count, self.relators.len())
    }
}
