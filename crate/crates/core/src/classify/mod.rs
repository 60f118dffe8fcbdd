//! IFI / IC group classes (plain, strong and weak) as decision procedures
//! over the characteristic lattice, with the closed-form IFI criterion.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::group::GroupShape;
use crate::invariance::{CharacteristicLattice, GroupContext, LatticeEntry, SubgroupSummary};

/// Evidence for a negative verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub reason: String,
    pub subgroups: Vec<SubgroupSummary>,
}

impl Witness {
    fn new<'a>(reason: &str, entries: impl IntoIterator<Item = &'a LatticeEntry>) -> Self {
        Witness {
            reason: reason.to_string(),
            subgroups: entries
                .into_iter()
                .map(|e| SubgroupSummary::of(&e.subgroup))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ifi: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ic: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongly_ifi: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongly_ic: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char_eq_fi: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub shape: GroupShape,
    pub is_ifi: bool,
    pub is_ic: bool,
    pub is_strongly_ifi: bool,
    pub is_strongly_ic: bool,
    pub is_weakly_ic: bool,
    pub criterion_ifi: bool,
    pub char_eq_fi: bool,
    pub witnesses: Witnesses,
}

/// All entries other than `{0}` and `G` share one isomorphism type. On
/// failure the witness is the first such entry paired with the first later
/// entry of a different type.
fn nontrivial_isomorphic<'a>(
    entries: impl Iterator<Item = &'a LatticeEntry>,
) -> (bool, Option<Witness>) {
    let mut first: Option<&LatticeEntry> = None;
    for e in entries.filter(|e| !e.subgroup.is_trivial() && !e.subgroup.is_whole()) {
        match first {
            None => first = Some(e),
            Some(f) if f.iso_type != e.iso_type => {
                return (false, Some(Witness::new("non-isomorphic pair", [f, e])));
            }
            _ => {}
        }
    }
    (true, None)
}

/// Every nonzero entry is isomorphic to `G`. The witness is the first that is not.
fn nonzero_isomorphic<'a>(
    shape: &GroupShape,
    mut entries: impl Iterator<Item = &'a LatticeEntry>,
) -> (bool, Option<Witness>) {
    match entries.find(|e| !e.subgroup.is_trivial() && e.iso_type != *shape) {
        Some(e) => (false, Some(Witness::new("not isomorphic to G", [e]))),
        None => (true, None),
    }
}

pub fn classify_ifi(lattice: &CharacteristicLattice) -> (bool, Option<Witness>) {
    nontrivial_isomorphic(lattice.fully_invariant())
}

pub fn classify_ic(lattice: &CharacteristicLattice) -> (bool, Option<Witness>) {
    nontrivial_isomorphic(lattice.characteristic())
}

/// `(strongly IFI, strongly IC)`, each with its witness.
pub fn classify_strongly(
    lattice: &CharacteristicLattice,
) -> ((bool, Option<Witness>), (bool, Option<Witness>)) {
    (
        nonzero_isomorphic(&lattice.shape, lattice.fully_invariant()),
        nonzero_isomorphic(&lattice.shape, lattice.characteristic()),
    )
}

/// Some proper characteristic subgroup is isomorphic to `G`. Never true for
/// a finite group, but decided from the lattice rather than assumed.
pub fn classify_weakly_ic(lattice: &CharacteristicLattice) -> bool {
    lattice
        .characteristic()
        .any(|e| !e.subgroup.is_whole() && e.iso_type == *lattice.shape)
}

/// Closed form: `pG = 0`, or `p²G = 0` with `r(G) = r(pG)`. For a finite
/// p-group that is all exponents 1 or all exponents 2.
pub fn ifi_criterion(shape: &GroupShape) -> bool {
    let ks = shape.exponents();
    ks.iter().all(|&k| k == 1) || ks.iter().all(|&k| k == 2)
}

pub fn classify_lattice(lattice: &CharacteristicLattice) -> ClassificationVerdict {
    let (is_ifi, ifi_w) = classify_ifi(lattice);
    let (is_ic, ic_w) = classify_ic(lattice);
    let ((s_ifi, s_ifi_w), (s_ic, s_ic_w)) = classify_strongly(lattice);
    let non_fi = lattice.characteristic().find(|e| !e.fully_invariant);
    ClassificationVerdict {
        shape: (*lattice.shape).clone(),
        is_ifi,
        is_ic,
        is_strongly_ifi: s_ifi,
        is_strongly_ic: s_ic,
        is_weakly_ic: classify_weakly_ic(lattice),
        criterion_ifi: ifi_criterion(&lattice.shape),
        char_eq_fi: non_fi.is_none(),
        witnesses: Witnesses {
            ifi: ifi_w,
            ic: ic_w,
            strongly_ifi: s_ifi_w,
            strongly_ic: s_ic_w,
            char_eq_fi: non_fi.map(|e| Witness::new("characteristic, not fully invariant", [e])),
        },
    }
}

pub fn classify(shape: &Arc<GroupShape>) -> ClassificationVerdict {
    classify_lattice(&GroupContext::new(Arc::clone(shape)).lattice())
}

#[cfg(test)]
mod tests;
