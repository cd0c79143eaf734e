//! Exact word-problem engine for symmetric solutions.
//!
//! For a symmetric solution the derived structure group is the free
//! abelian group `ℤ^X`, and the structure group embeds in `Aff(ℤ^X)` via
//! a bijective 1-cocycle `b` with `b(x) = e_x` on generators. A group
//! element is therefore an exact pair `(v, λ_v)`: an integer vector and
//! its linear part, a permutation of `X` acting diagonally on `ℤ^X`. Two
//! words are equal in the structure group exactly when they fold to the
//! same pair.

use std::fmt;

use crate::perm::Perm;
use crate::solution::FiniteSolution;
use crate::word::Letter;

/// A structure-group element in the affine model: cocycle vector plus
/// linear part. The linear part is redundant (it is determined by `v`)
/// but carried to keep group operations O(n).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeElement {
    pub v: Vec<i64>,
    pub lam: Perm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineError {
    NotSymmetric,
    DimensionMismatch { expected: usize, got: usize },
    Word(crate::word::WordError),
    NotYbHomomorphism { x: usize, y: usize },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::NotSymmetric => write!(f, "solution is not symmetric"),
            EngineError::DimensionMismatch { expected, got } => {
                write!(f, "vector length {got} does not match n = {expected}")
            }
            EngineError::Word(e) => write!(f, "{e}"),
            EngineError::NotYbHomomorphism { x, y } => {
                write!(f, "map is not a YB-homomorphism: breaks at ({x}, {y})")
            }
        }
    }
}

impl std::error::Error for EngineError {}

impl From<crate::word::WordError> for EngineError {
    fn from(e: crate::word::WordError) -> Self {
        EngineError::Word(e)
    }
}

/// A peeling step chosen while evaluating `λ_v`; see
/// [`SymmetricEngine::lambda_of_with`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Peel {
    /// Strip a leading generator `x`: requires `v[x] ≥ 1`.
    Positive(usize),
    /// Strip a leading inverse generator targeting coordinate `j`:
    /// requires `v[j] ≤ -1`.
    Negative(usize),
}

/// Word-problem engine bound to one symmetric solution.
pub struct SymmetricEngine {
    solution: FiniteSolution,
    alpha: Vec<Perm>,
    alpha_inv: Vec<Perm>,
    /// `diag_inv[j]` is the generator `x` with `α_x⁻¹(x) = j`, i.e. the
    /// inverse of the cycle-set diagonal; it drives the negative peel.
    diag_inv: Vec<usize>,
}

impl SymmetricEngine {
    pub fn new(solution: FiniteSolution) -> Result<Self, EngineError> {
        if !solution.is_symmetric() {
            return Err(EngineError::NotSymmetric);
        }
        let n = solution.n();
        let alpha: Vec<Perm> = (0..n).map(|x| solution.alpha_perm(x)).collect();
        let alpha_inv: Vec<Perm> = alpha.iter().map(Perm::inverse).collect();
        let mut diag_inv = vec![usize::MAX; n];
        for x in 0..n {
            diag_inv[alpha_inv[x].apply(x)] = x;
        }
        debug_assert!(diag_inv.iter().all(|&x| x != usize::MAX), "diagonal map is bijective");
        Ok(SymmetricEngine { solution, alpha, alpha_inv, diag_inv })
    }

    pub fn solution(&self) -> &FiniteSolution {
        &self.solution
    }

    pub fn n(&self) -> usize {
        self.solution.n()
    }

    pub fn identity(&self) -> LatticeElement {
        LatticeElement { v: vec![0; self.n()], lam: Perm::identity(self.n()) }
    }

    /// The generator `x` as a lattice element: `(e_x, α_x)`.
    pub fn generator(&self, x: usize) -> LatticeElement {
        let mut v = vec![0; self.n()];
        v[x] = 1;
        LatticeElement { v, lam: self.alpha[x].clone() }
    }

    fn check_len(&self, v: &[i64]) -> Result<(), EngineError> {
        if v.len() != self.n() {
            return Err(EngineError::DimensionMismatch { expected: self.n(), got: v.len() });
        }
        Ok(())
    }

    /// Evaluates the linear part `λ_v` by repeatedly stripping a leading
    /// (inverse) generator, using the deterministic choice: the least
    /// strictly positive coordinate, else the least strictly negative one.
    pub fn lambda_of(&self, v: &[i64]) -> Result<Perm, EngineError> {
        self.lambda_of_with(v, |v| {
            if let Some(x) = v.iter().position(|&c| c > 0) {
                Peel::Positive(x)
            } else {
                let j = v.iter().position(|&c| c < 0).expect("nonzero vector has a coordinate");
                Peel::Negative(j)
            }
        })
    }

    /// Same as [`Self::lambda_of`] but with an arbitrary choice of valid
    /// peel at every step; the result does not depend on the choices (the
    /// cocycle is bijective, so `λ_v` is a function of `v`), and the tests
    /// randomize over them.
    pub fn lambda_of_with(
        &self,
        v: &[i64],
        mut choose: impl FnMut(&[i64]) -> Peel,
    ) -> Result<Perm, EngineError> {
        self.check_len(v)?;
        let mut v = v.to_vec();
        // Collect the generator word g = l_1 l_2 …  while peeling from the
        // left; λ_v is the composite of the letters' alphas in order.
        let mut lam = Perm::identity(self.n());
        while v.iter().any(|&c| c != 0) {
            match choose(&v) {
                Peel::Positive(x) => {
                    assert!(v[x] > 0, "positive peel needs v[{x}] ≥ 1");
                    // v = e_x + α_x(w)  ⟹  w = α_x⁻¹(v - e_x)
                    v[x] -= 1;
                    v = self.alpha_inv[x].apply_to_coords(&v);
                    lam = lam.compose(&self.alpha[x]);
                }
                Peel::Negative(j) => {
                    assert!(v[j] < 0, "negative peel needs v[{j}] ≤ -1");
                    // With x = diag_inv[j]: v = -e_j + α_x⁻¹(w)
                    //   ⟹  w = α_x(v + e_j) = α_x(v) + e_x.
                    let x = self.diag_inv[j];
                    v[j] += 1;
                    v = self.alpha[x].apply_to_coords(&v);
                    lam = lam.compose(&self.alpha_inv[x]);
                }
            }
        }
        Ok(lam)
    }

    /// Promotes a bare vector to a lattice element.
    pub fn element(&self, v: &[i64]) -> Result<LatticeElement, EngineError> {
        Ok(LatticeElement { v: v.to_vec(), lam: self.lambda_of(v)? })
    }

    /// `(v, λ)(w, μ) = (v + λ(w), λ∘μ)`.
    pub fn mul(&self, a: &LatticeElement, b: &LatticeElement) -> Result<LatticeElement, EngineError> {
        self.check_len(&a.v)?;
        self.check_len(&b.v)?;
        let moved = a.lam.apply_to_coords(&b.v);
        let v = a.v.iter().zip(moved.iter()).map(|(x, y)| x + y).collect();
        Ok(LatticeElement { v, lam: a.lam.compose(&b.lam) })
    }

    /// `(v, λ)⁻¹ = (-λ⁻¹(v), λ⁻¹)`.
    pub fn inv(&self, a: &LatticeElement) -> Result<LatticeElement, EngineError> {
        self.check_len(&a.v)?;
        let li = a.lam.inverse();
        let v = li.apply_to_coords(&a.v).iter().map(|&c| -c).collect();
        Ok(LatticeElement { v, lam: li })
    }

    /// Folds a signed word through the cocycle law
    /// `b(gh) = b(g) + λ_{b(g)}(b(h))` with `b(x) = e_x`. Two words are
    /// equal in the structure group exactly when they fold to equal
    /// elements.
    pub fn cocycle_vector(&self, word: &[Letter]) -> Result<LatticeElement, EngineError> {
        let mut acc = self.identity();
        for l in word {
            if l.gen >= self.n() {
                return Err(crate::word::WordError::LetterOutOfRange {
                    letter: crate::word::to_signed(&[*l])[0],
                    generators: self.n(),
                }
                .into());
            }
            let g = self.generator(l.gen);
            let g = if l.inverse { self.inv(&g)? } else { g };
            acc = self.mul(&acc, &g)?;
        }
        Ok(acc)
    }

    /// Decides equality of two words in the structure group.
    pub fn words_equal(&self, a: &[Letter], b: &[Letter]) -> Result<bool, EngineError> {
        Ok(self.cocycle_vector(a)? == self.cocycle_vector(b)?)
    }

    /// Evaluates the induced solution on the whole structure group,
    /// transported to `ℤ^X`:
    /// `R̄(v, w) = (λ_v(w), b(ᾱ_v(w)⁻¹ · v · w))`. Restricted to basis
    /// vectors it reproduces the original solution.
    pub fn universal_extension(&self, v: &[i64], w: &[i64]) -> Result<(Vec<i64>, Vec<i64>), EngineError> {
        let ev = self.element(v)?;
        let ew = self.element(w)?;
        let u = ev.lam.apply_to_coords(w);
        let eu = self.element(&u)?;
        let t = self.mul(&self.mul(&self.inv(&eu)?, &ev)?, &ew)?;
        Ok((u, t.v))
    }
}

/// Equivariance report for the group maps induced by a YB-homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    /// Every standard relator of the source maps to the identity of the
    /// target group.
    pub relators_killed: bool,
    /// `h_A(b(g)) = b(h_G(g))` on all checked words.
    pub cocycle_intertwined: bool,
    /// `h(λ^X_g(x)) = λ^Y_{h_G(g)}(h(x))` on all checked words.
    pub alpha_intertwined: bool,
    pub words_checked: usize,
}

impl HomReport {
    pub fn all_hold(&self) -> bool {
        self.relators_killed && self.cocycle_intertwined && self.alpha_intertwined
    }
}

/// Configuration for [`induced_hom_maps`]: exhaustive up to `max_len`,
/// then `samples` random words of length `sample_len`.
#[derive(Clone, Copy, Debug)]
pub struct HomCheckConfig {
    pub max_len: usize,
    pub samples: usize,
    pub sample_len: usize,
    pub seed: u64,
}

impl Default for HomCheckConfig {
    fn default() -> Self {
        HomCheckConfig { max_len: 4, samples: 500, sample_len: 10, seed: 0x9b5_cafe }
    }
}

/// Linear extension of a point map: `e_x ↦ e_{h(x)}`.
pub fn linear_extension(h: &[usize], v: &[i64], target_n: usize) -> Vec<i64> {
    let mut out = vec![0i64; target_n];
    for (x, &c) in v.iter().enumerate() {
        out[h[x]] += c;
    }
    out
}

/// Verifies that a YB-homomorphism `h : X → Y` induces group maps
/// `h_G`, `h_A` intertwining the two affine models: relator images die in
/// the target, the cocycles commute with `h` (words up to
/// `cfg.max_len` exhaustively, plus random samples), and the linear parts
/// intertwine on the basis.
pub fn induced_hom_maps(
    src: &SymmetricEngine,
    dst: &SymmetricEngine,
    h: &[usize],
    cfg: &HomCheckConfig,
) -> Result<HomReport, EngineError> {
    use rand::{Rng, SeedableRng};

    let nx = src.n();
    let ny = dst.n();
    assert_eq!(h.len(), nx, "point map must cover the source set");
    // E:alphainv — the defining identities of a YB-homomorphism.
    for x in 0..nx {
        for y in 0..nx {
            let alpha_ok = dst.solution().alpha(h[x], h[y]) == h[src.solution().alpha(x, y)];
            let beta_ok = dst.solution().beta(h[y], h[x]) == h[src.solution().beta(y, x)];
            if !alpha_ok || !beta_ok {
                return Err(EngineError::NotYbHomomorphism { x, y });
            }
        }
    }

    let map_word = |w: &[Letter]| -> Vec<Letter> {
        w.iter().map(|l| Letter { gen: h[l.gen], inverse: l.inverse }).collect()
    };

    let mut relators_killed = true;
    let pres = crate::presentation::structure_presentation(
        src.solution(),
        crate::presentation::PresentationKind::Standard,
    )
    .expect("symmetric solutions have standard presentations");
    for r in pres.relators() {
        let image = dst.cocycle_vector(&map_word(r))?;
        if image != dst.identity() {
            relators_killed = false;
        }
    }

    let mut cocycle_intertwined = true;
    let mut alpha_intertwined = true;
    let mut words_checked = 0;

    let mut check_word = |w: &[Letter]| -> Result<(), EngineError> {
        let src_el = src.cocycle_vector(w)?;
        let dst_el = dst.cocycle_vector(&map_word(w))?;
        if linear_extension(h, &src_el.v, ny) != dst_el.v {
            cocycle_intertwined = false;
        }
        for x in 0..nx {
            if h[src_el.lam.apply(x)] != dst_el.lam.apply(h[x]) {
                alpha_intertwined = false;
            }
        }
        words_checked += 1;
        Ok(())
    };

    // Exhaustive over signed words up to the cap.
    let letters: Vec<Letter> = (0..nx)
        .flat_map(|g| [Letter::new(g), Letter::inv(g)])
        .collect();
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    check_word(&[])?;
    for _ in 0..cfg.max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let mut ext = w.clone();
                ext.push(*l);
                check_word(&ext)?;
                next.push(ext);
            }
        }
        frontier = next;
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let w: Vec<Letter> =
            (0..cfg.sample_len).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
        check_word(&w)?;
    }

    Ok(HomReport { relators_killed, cocycle_intertwined, alpha_intertwined, words_checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::from_signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn engine(s: FiniteSolution) -> SymmetricEngine {
        SymmetricEngine::new(s).unwrap()
    }

    fn p3() -> SymmetricEngine {
        engine(FiniteSolution::cyclic_shift(3))
    }

    #[test]
    fn rejects_non_symmetric_solutions() {
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let s = FiniteSolution::permutation_solution(&swap, &Perm::identity(2));
        assert!(matches!(SymmetricEngine::new(s), Err(EngineError::NotSymmetric)));
    }

    #[test]
    fn lambda_is_identity_on_flip() {
        let e = engine(FiniteSolution::flip(3));
        assert!(e.lambda_of(&[3, -2, 5]).unwrap().is_identity());
    }

    #[test]
    fn lambda_on_generators_and_sums() {
        let e = p3();
        let sigma = e.solution().alpha_perm(0);
        assert_eq!(e.lambda_of(&[1, 0, 0]).unwrap(), sigma);
        // e_0 + e_1 = b(x_0 x_0): peel e_0, then w = σ⁻¹(e_1) = e_0.
        assert_eq!(e.lambda_of(&[1, 1, 0]).unwrap(), sigma.compose(&sigma));
        // Cross-check against the word route b(x_0 x_0) = e_0 + σ(e_0).
        let w = from_signed(&[1, 1], 3).unwrap();
        let el = e.cocycle_vector(&w).unwrap();
        assert_eq!(el.v, vec![1, 1, 0]);
        assert_eq!(el.lam, sigma.compose(&sigma));
    }

    #[test]
    fn group_ops_satisfy_the_axioms() {
        let e = p3();
        let sigma = e.solution().alpha_perm(0);
        let a = e.generator(0);
        let b = e.generator(1);
        let ab = e.mul(&a, &b).unwrap();
        assert_eq!(ab.v, vec![1, 0, 1]);
        assert_eq!(ab.lam, sigma.compose(&sigma));
        let id = e.identity();
        assert_eq!(e.mul(&a, &id).unwrap(), a);
        assert_eq!(e.mul(&id, &a).unwrap(), a);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            let el = e.element(&v).unwrap();
            let inv = e.inv(&el).unwrap();
            assert_eq!(e.mul(&el, &inv).unwrap(), id);
            assert_eq!(e.mul(&inv, &el).unwrap(), id);
        }
    }

    #[test]
    fn empty_word_is_identity_and_letters_are_checked() {
        let e = p3();
        assert_eq!(e.cocycle_vector(&[]).unwrap(), e.identity());
        assert!(e.cocycle_vector(&from_signed(&[4], 9).unwrap()).is_err());
    }

    #[test]
    fn lambda_cocycle_law_random() {
        let e = p3();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            let w: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            let lv = e.lambda_of(&v).unwrap();
            let lw = e.lambda_of(&w).unwrap();
            let sum: Vec<i64> =
                v.iter().zip(lv.apply_to_coords(&w)).map(|(a, b)| a + b).collect();
            assert_eq!(e.lambda_of(&sum).unwrap(), lv.compose(&lw));
        }
    }

    #[test]
    fn peeling_order_does_not_matter() {
        let e = p3();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            let reference = e.lambda_of(&v).unwrap();
            let random_order = e
                .lambda_of_with(&v, |v| {
                    let mut options: Vec<Peel> = Vec::new();
                    for (i, &c) in v.iter().enumerate() {
                        if c > 0 {
                            options.push(Peel::Positive(i));
                        } else if c < 0 {
                            options.push(Peel::Negative(i));
                        }
                    }
                    options[rng.gen_range(0..options.len())]
                })
                .unwrap();
            assert_eq!(random_order, reference, "peel order changed lambda at {v:?}");
        }
    }

    #[test]
    fn extension_restricts_to_the_solution() {
        let e = p3();
        for x in 0..3 {
            for y in 0..3 {
                let mut ex = vec![0i64; 3];
                ex[x] = 1;
                let mut ey = vec![0i64; 3];
                ey[y] = 1;
                let (u, t) = e.universal_extension(&ex, &ey).unwrap();
                let (a, b) = e.solution().apply(x, y);
                let mut ea = vec![0i64; 3];
                ea[a] = 1;
                let mut eb = vec![0i64; 3];
                eb[b] = 1;
                assert_eq!(u, ea);
                assert_eq!(t, eb);
            }
        }
    }

    #[test]
    fn extension_of_flip_is_flip_on_vectors() {
        let e = engine(FiniteSolution::flip(2));
        let (u, t) = e.universal_extension(&[3, -1], &[0, 2]).unwrap();
        assert_eq!(u, vec![0, 2]);
        assert_eq!(t, vec![3, -1]);
    }

    #[test]
    fn induced_maps_on_identity_and_collapse() {
        let src = p3();
        let report =
            induced_hom_maps(&src, &p3(), &[0, 1, 2], &HomCheckConfig { samples: 50, ..Default::default() })
                .unwrap();
        assert!(report.all_hold());

        let point = engine(FiniteSolution::flip(1));
        let report = induced_hom_maps(
            &src,
            &point,
            &[0, 0, 0],
            &HomCheckConfig { samples: 50, ..Default::default() },
        )
        .unwrap();
        assert!(report.all_hold());

        // A non-homomorphism is rejected.
        let err = induced_hom_maps(
            &src,
            &engine(FiniteSolution::flip(3)),
            &[0, 1, 2],
            &HomCheckConfig::default(),
        );
        assert!(matches!(err, Err(EngineError::NotYbHomomorphism { .. })));
    }
}
