use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::endo::{aut_generators, stability_test_set, EndoMatrix};
use crate::group::GroupShape;
use crate::lattice::{SpanBuilder, Subgroup};

/// Per-shape data shared by the invariance tests: automorphism generators,
/// the single-entry stability set and the `Aut(G)`-orbits on the carrier.
pub struct GroupContext {
    shape: Arc<GroupShape>,
    aut_gens: Vec<EndoMatrix>,
    test_set: Vec<EndoMatrix>,
    orbits: OnceLock<Vec<Vec<usize>>>,
}

impl GroupContext {
    pub fn new(shape: Arc<GroupShape>) -> Self {
        let aut_gens = aut_generators(&shape);
        let test_set = stability_test_set(&shape);
        GroupContext {
            shape,
            aut_gens,
            test_set,
            orbits: OnceLock::new(),
        }
    }

    pub fn shape(&self) -> &Arc<GroupShape> {
        &self.shape
    }

    pub fn aut_generators(&self) -> &[EndoMatrix] {
        &self.aut_gens
    }

    pub fn stability_test_set(&self) -> &[EndoMatrix] {
        &self.test_set
    }

    /// `α(H) ⊆ H` for every automorphism generator. For finite `H` inclusion
    /// forces equality, so stability under the generators is stability under
    /// all of `Aut(G)`.
    pub fn is_characteristic(&self, h: &Subgroup) -> bool {
        self.aut_gens
            .iter()
            .all(|a| h.is_stable_under(|x| a.apply_idx(x)))
    }

    /// `e(H) ⊆ H` for every single-entry map `E_ij`.
    pub fn is_fully_invariant(&self, h: &Subgroup) -> bool {
        self.test_set
            .iter()
            .all(|e| h.is_stable_under(|x| e.apply_idx(x)))
    }

    /// Orbits of `Aut(G)` on the nonzero elements, each ascending, ordered by
    /// their least element.
    pub fn orbits(&self) -> &[Vec<usize>] {
        self.orbits.get_or_init(|| {
            let n = self.shape.order() as usize;
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for g in &self.aut_gens {
                for x in 1..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply_idx(x)));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
            let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
            for x in 1..n {
                let r = find(&mut parent, x);
                by_root[r].push(x);
            }
            by_root.into_iter().filter(|o| !o.is_empty()).collect()
        })
    }

    /// `End(G)·x`, the least fully invariant subgroup containing `x`: the span
    /// of the images `E_ij(x)`.
    pub fn endomorphic_span(&self, x: usize) -> Subgroup {
        let imgs: Vec<usize> = self.test_set.iter().map(|e| e.apply_idx(x)).collect();
        Subgroup::span_indices(&self.shape, &imgs)
    }

    /// All characteristic subgroups, in canonical order.
    ///
    /// A characteristic subgroup is a union of orbits, and adjoining a whole
    /// orbit to one yields another. Walking up from `{0}` by orbit adjunction
    /// therefore reaches every characteristic subgroup.
    pub fn enumerate_characteristic(&self) -> Vec<Subgroup> {
        let orbits = self.orbits();
        self.walk(|h| {
            orbits
                .iter()
                .filter(|o| !h.get(o[0]))
                .map(|o| {
                    let mut b = SpanBuilder::from_bits(h.clone());
                    for &x in o {
                        b.extend(&self.shape, x);
                    }
                    b.into_bits()
                })
                .collect()
        })
    }

    /// All fully invariant subgroups, in canonical order, by the same walk
    /// with `H ↦ H + End(G)·x`.
    pub fn enumerate_fully_invariant(&self) -> Vec<Subgroup> {
        let reps: Vec<usize> = self.orbits().iter().map(|o| o[0]).collect();
        self.walk(|h| {
            reps.iter()
                .filter(|&&x| !h.get(x))
                .map(|&x| {
                    let mut b = SpanBuilder::from_bits(h.clone());
                    for e in &self.test_set {
                        b.extend(&self.shape, e.apply_idx(x));
                    }
                    b.into_bits()
                })
                .collect()
        })
    }

    fn walk(&self, step: impl Fn(&Bits) -> Vec<Bits>) -> Vec<Subgroup> {
        let start = Subgroup::trivial(&self.shape).members().clone();
        let mut seen: HashSet<Bits> = HashSet::from([start.clone()]);
        let mut frontier = vec![start];
        while let Some(h) = frontier.pop() {
            for k in step(&h) {
                if seen.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut out: Vec<Subgroup> = seen
            .into_iter()
            .map(|b| Subgroup::from_bits(&self.shape, b))
            .collect();
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }

    /// Characteristic subgroups with their fully-invariant flags and types.
    pub fn lattice(&self) -> CharacteristicLattice {
        let entries = self
            .enumerate_characteristic()
            .into_iter()
            .map(|h| LatticeEntry {
                fully_invariant: self.is_fully_invariant(&h),
                iso_type: h.iso_type(),
                subgroup: h,
            })
            .collect();
        CharacteristicLattice {
            shape: Arc::clone(&self.shape),
            entries,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeEntry {
    pub subgroup: Subgroup,
    pub fully_invariant: bool,
    pub iso_type: GroupShape,
}

/// The characteristic subgroups of one shape, computed once and shared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicLattice {
    pub shape: Arc<GroupShape>,
    pub entries: Vec<LatticeEntry>,
}

impl CharacteristicLattice {
    pub fn characteristic(&self) -> impl Iterator<Item = &LatticeEntry> {
        self.entries.iter()
    }

    pub fn fully_invariant(&self) -> impl Iterator<Item = &LatticeEntry> {
        self.entries.iter().filter(|e| e.fully_invariant)
    }

    /// Every characteristic subgroup is fully invariant.
    pub fn char_equals_fi(&self) -> bool {
        self.entries.iter().all(|e| e.fully_invariant)
    }
}

/// Serializable view of a subgroup: order, canonical generators and type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSummary {
    pub order: u64,
    pub generators: Vec<Vec<u64>>,
    pub iso_type: GroupShape,
}

impl SubgroupSummary {
    pub fn of(h: &Subgroup) -> Self {
        SubgroupSummary {
            order: h.order(),
            generators: h.generators().iter().map(|g| g.coords().to_vec()).collect(),
            iso_type: h.iso_type(),
        }
    }
}
