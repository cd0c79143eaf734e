//! Persistent catalog of classified solutions.
//!
//! Entries are keyed by a content identifier: the SHA-256 of the
//! canonical form's serialized bytes. Identifiers are therefore stable
//! across runs and machines, and re-classifying a superset never changes
//! existing entries.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::enumerate::{enumerate_solutions, EnumOptions, SolutionFilter};
use crate::json::SolutionDoc;
use crate::presentation::{abelianization, structure_presentation, PresentationKind};
use crate::snf::factors_display;
use crate::solution::{CheckMethod, FiniteSolution};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub n: usize,
    pub solution: SolutionDoc,
    pub involutive: bool,
    pub symmetric: bool,
    /// Invariant factors of the abelianized structure group, as decimal
    /// strings: torsion first, one "0" per free rank.
    pub structure_group_factors: Vec<String>,
    pub structure_group: String,
    pub derived_group_factors: Vec<String>,
    pub derived_group: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Default)]
pub struct CatalogDoc {
    pub entries: Vec<CatalogEntry>,
}

/// Content identifier of a solution: SHA-256 over the canonical form's
/// JSON bytes.
pub fn solution_id(canonical: &FiniteSolution) -> String {
    let doc = SolutionDoc::of(canonical);
    let bytes = serde_json::to_vec(&doc).expect("solution docs serialize");
    let digest = Sha256::digest(&bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn entry_for(canonical: FiniteSolution) -> CatalogEntry {
    let id = solution_id(&canonical);
    let report = canonical.check_ybe(CheckMethod::Braid);
    let gx = abelianization(&structure_presentation(&canonical, PresentationKind::Standard).unwrap());
    let ax = abelianization(&structure_presentation(&canonical, PresentationKind::Derived).unwrap());
    CatalogEntry {
        id,
        n: canonical.n(),
        solution: SolutionDoc::of(&canonical),
        involutive: report.is_involutive,
        symmetric: report.is_symmetric,
        structure_group_factors: gx.iter().map(|d| d.to_string()).collect(),
        structure_group: factors_display(&gx),
        derived_group_factors: ax.iter().map(|d| d.to_string()).collect(),
        derived_group: factors_display(&ax),
    }
}

/// Enumerates all solutions on `n` elements, deduplicates by canonical
/// form, and returns one entry per isomorphism class, sorted by
/// `(n, id)`.
pub fn classify(n: usize, jobs: usize) -> CatalogDoc {
    let outcome = enumerate_solutions(
        n,
        &EnumOptions { filter: SolutionFilter::All, jobs, ..Default::default() },
    );
    let mut canonical: Vec<FiniteSolution> =
        outcome.solutions.iter().map(FiniteSolution::canonical_form).collect();
    canonical.sort();
    canonical.dedup();
    let mut entries: Vec<CatalogEntry> = canonical.into_iter().map(entry_for).collect();
    entries.sort_by(|a, b| (a.n, &a.id).cmp(&(b.n, &b.id)));
    assert!(
        entries.windows(2).all(|w| w[0].id != w[1].id),
        "catalog identifiers must be collision-free"
    );
    CatalogDoc { entries }
}

/// Merges new entries into an existing catalog: entries with known ids
/// are kept as they are, new ones are inserted, and the result is sorted
/// by `(n, id)`.
pub fn merge(existing: CatalogDoc, new: CatalogDoc) -> CatalogDoc {
    let mut entries = existing.entries;
    for entry in new.entries {
        if !entries.iter().any(|e| e.id == entry.id) {
            entries.push(entry);
        }
    }
    entries.sort_by(|a, b| (a.n, &a.id).cmp(&(b.n, &b.id)));
    CatalogDoc { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_stable_and_distinct() {
        let a = FiniteSolution::flip(2).canonical_form();
        let b = FiniteSolution::cyclic_shift(3).canonical_form();
        assert_eq!(solution_id(&a), solution_id(&a));
        assert_ne!(solution_id(&a), solution_id(&b));
    }

    #[test]
    fn classification_is_idempotent() {
        let one = classify(2, 1);
        let two = classify(2, 1);
        assert_eq!(one, two);
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&two).unwrap()
        );
    }

    #[test]
    fn n2_has_four_isomorphism_classes() {
        // Four labeled solutions on two elements, each fixed by both
        // relabelings, so four classes; two of them symmetric.
        let doc = classify(2, 1);
        assert_eq!(doc.entries.len(), 4);
        assert_eq!(doc.entries.iter().filter(|e| e.symmetric).count(), 2);
    }

    #[test]
    fn merging_a_superset_keeps_existing_ids() {
        let small = classify(2, 1);
        let big = merge(small.clone(), classify(3, 1));
        for e in &small.entries {
            assert!(big.entries.iter().any(|x| x.id == e.id));
        }
        let again = merge(big.clone(), classify(2, 1));
        assert_eq!(big, again);
    }
}
