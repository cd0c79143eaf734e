//! JSON documents for every object the tools exchange. All formats are
//! tagged with a `type` field, 0-indexed, and float-free; presentations
//! use 1-indexed signed integers for letters.

use serde::{Deserialize, Serialize};

use crate::affine::AffineAction;
use crate::cycle::{CycleAction, CycleSet};
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::presentation::Presentation;
use crate::solution::FiniteSolution;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type")]
pub enum Document {
    #[serde(rename = "solution")]
    Solution(SolutionDoc),
    #[serde(rename = "cycle_set")]
    CycleSet(CycleSetDoc),
    #[serde(rename = "cycle_action")]
    CycleAction(CycleActionDoc),
    #[serde(rename = "group")]
    Group(GroupDoc),
    #[serde(rename = "affine")]
    Affine(AffineDoc),
    #[serde(rename = "presentation")]
    Presentation(PresentationDoc),
    #[serde(rename = "lift")]
    Lift(LiftDoc),
    #[serde(rename = "catalog")]
    Catalog(crate::catalog::CatalogDoc),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SolutionDoc {
    pub n: usize,
    pub alpha: Vec<Vec<usize>>,
    pub beta: Vec<Vec<usize>>,
}

impl SolutionDoc {
    pub fn of(s: &FiniteSolution) -> Self {
        SolutionDoc { n: s.n(), alpha: s.alpha_rows().to_vec(), beta: s.beta_rows().to_vec() }
    }

    pub fn build(&self) -> Result<FiniteSolution, crate::solution::TableError> {
        if self.alpha.len() != self.n || self.beta.len() != self.n {
            return Err(crate::solution::TableError::SizeMismatch {
                alpha_rows: self.alpha.len(),
                beta_rows: self.beta.len(),
            });
        }
        FiniteSolution::new(self.alpha.clone(), self.beta.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CycleSetDoc {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl CycleSetDoc {
    pub fn of(c: &CycleSet) -> Self {
        CycleSetDoc { n: c.n(), table: c.table().to_vec() }
    }

    pub fn build(&self) -> Result<CycleSet, crate::cycle::CycleSetError> {
        CycleSet::new(self.table.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CycleActionDoc {
    #[serde(rename = "X")]
    pub x: CycleSetDoc,
    #[serde(rename = "S")]
    pub s: CycleSetDoc,
    pub pi: Vec<Vec<usize>>,
}

impl CycleActionDoc {
    pub fn of(a: &CycleAction) -> Self {
        CycleActionDoc {
            x: CycleSetDoc::of(a.base()),
            s: CycleSetDoc::of(a.fiber()),
            pi: a.pi_rows().to_vec(),
        }
    }

    pub fn build(&self) -> Result<CycleAction, Box<dyn std::error::Error>> {
        let x = self.x.build()?;
        let s = self.s.build()?;
        Ok(CycleAction::new(x, s, self.pi.clone())?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupDoc {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
}

impl GroupDoc {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupDoc {
            order: g.order(),
            table: g.table().to_vec(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, crate::group::GroupError> {
        let g = FiniteGroup::from_table(self.table.clone())?;
        Ok(match &self.labels {
            Some(l) if l.len() == self.order => g.with_labels(l.clone()),
            _ => g,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AffineDoc {
    pub group: GroupDoc,
    pub target: GroupDoc,
    /// One permutation of the target per group element.
    pub pi: Vec<Vec<usize>>,
    pub b: Vec<usize>,
}

impl AffineDoc {
    pub fn of(r: &AffineAction) -> Self {
        AffineDoc {
            group: GroupDoc::of(r.source()),
            target: GroupDoc::of(r.target()),
            pi: r.pi_parts().iter().map(|p| p.images().to_vec()).collect(),
            b: r.b_map().to_vec(),
        }
    }

    pub fn build(&self) -> Result<AffineAction, Box<dyn std::error::Error>> {
        let source = self.group.build()?;
        let target = self.target.build()?;
        let pi = self
            .pi
            .iter()
            .map(|images| Perm::from_images(images.clone()))
            .collect::<Option<Vec<Perm>>>()
            .ok_or("pi rows must be permutations of the target")?;
        Ok(AffineAction::new(source, target, pi, self.b.clone())?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PresentationDoc {
    pub generators: usize,
    /// 1-indexed signed generator encoding.
    pub relators: Vec<Vec<i64>>,
}

impl PresentationDoc {
    pub fn of(p: &Presentation) -> Self {
        PresentationDoc {
            generators: p.generator_count(),
            relators: p.relators().iter().map(|w| crate::word::to_signed(w)).collect(),
        }
    }

    pub fn build(&self) -> Result<Presentation, crate::word::WordError> {
        let relators = self
            .relators
            .iter()
            .map(|ints| crate::word::from_signed(ints, self.generators))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(self.generators, relators)
    }
}

/// Inputs of the lifting construction: a regular affine action, the group
/// to lift to, the action `sigma` on it, and the homomorphism `theta`
/// into the target.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LiftDoc {
    pub rho: AffineDoc,
    pub h: GroupDoc,
    pub sigma: Vec<Vec<usize>>,
    pub theta: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LatticeElementDoc {
    pub v: Vec<i64>,
    pub lam: Vec<usize>,
}

impl LatticeElementDoc {
    pub fn of(el: &crate::lattice::LatticeElement) -> Self {
        LatticeElementDoc { v: el.v.clone(), lam: el.lam.images().to_vec() }
    }
}

pub fn to_pretty_string(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

pub fn from_str(text: &str) -> Result<Document, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solution_round_trip() {
        let s = FiniteSolution::cyclic_shift(3);
        let doc = Document::Solution(SolutionDoc::of(&s));
        let text = to_pretty_string(&doc);
        assert!(text.contains("\"type\": \"solution\""));
        match from_str(&text).unwrap() {
            Document::Solution(d) => assert_eq!(d.build().unwrap(), s),
            other => panic!("wrong tag: {other:?}"),
        }
    }

    #[test]
    fn affine_round_trip() {
        let g = FiniteGroup::cyclic(2);
        let r = AffineAction::new(g.clone(), g, vec![Perm::identity(2); 2], vec![0, 1]).unwrap();
        let doc = Document::Affine(AffineDoc::of(&r));
        let text = to_pretty_string(&doc);
        match from_str(&text).unwrap() {
            Document::Affine(d) => assert_eq!(d.build().unwrap(), r),
            other => panic!("wrong tag: {other:?}"),
        }
    }

    #[test]
    fn presentation_uses_signed_letters() {
        let p = crate::presentation::structure_presentation(
            &FiniteSolution::flip(2),
            crate::presentation::PresentationKind::Standard,
        )
        .unwrap();
        let doc = PresentationDoc::of(&p);
        assert_eq!(doc.relators, vec![vec![1, 2, -1, -2], vec![2, 1, -2, -1]]);
        assert_eq!(doc.build().unwrap(), p);
    }

    #[test]
    fn malformed_documents_error_cleanly() {
        assert!(from_str("{\"type\":\"solution\",\"n\":1}").is_err());
        let bad = "{\"type\":\"solution\",\"n\":2,\"alpha\":[[0,1],[0,1]],\"beta\":[[0,1],[0,2]]}";
        match from_str(bad).unwrap() {
            Document::Solution(d) => assert!(d.build().is_err()),
            other => panic!("wrong tag: {other:?}"),
        }
    }
}
