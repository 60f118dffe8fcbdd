use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupShape};

/// Incremental closure: a subgroup as membership bits plus a member list,
/// grown one element at a time by adjoining cosets.
#[derive(Clone)]
pub(crate) struct SpanBuilder {
    bits: Bits,
    list: Vec<usize>,
}

impl SpanBuilder {
    pub(crate) fn trivial(order: usize) -> Self {
        let mut bits = Bits::new(order);
        bits.set(0);
        SpanBuilder {
            bits,
            list: vec![0],
        }
    }

    pub(crate) fn from_bits(bits: Bits) -> Self {
        let list = bits.ones().collect();
        SpanBuilder { bits, list }
    }

    #[inline]
    pub(crate) fn contains(&self, idx: usize) -> bool {
        self.bits.get(idx)
    }

    /// Replaces `H` with `H + <g>`.
    pub(crate) fn extend(&mut self, shape: &GroupShape, g: usize) {
        if self.bits.get(g) {
            return;
        }
        let base = self.list.len();
        let mut cur = g;
        while !self.bits.get(cur) {
            for t in 0..base {
                let e = shape.add_idx(self.list[t], cur);
                self.bits.set(e);
                self.list.push(e);
            }
            cur = shape.add_idx(cur, g);
        }
    }

    pub(crate) fn into_bits(self) -> Bits {
        self.bits
    }
}

/// A subgroup of a finite abelian p-group, stored as a membership bit-vector
/// over the dense element index.
#[derive(Clone)]
pub struct Subgroup {
    shape: Arc<GroupShape>,
    members: Bits,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {}, gens {:?})",
            self.order(),
            self.generators()
        )
    }
}

impl Subgroup {
    pub(crate) fn from_bits(shape: &Arc<GroupShape>, members: Bits) -> Self {
        debug_assert_eq!(members.len(), shape.order() as usize);
        Subgroup {
            shape: Arc::clone(shape),
            members,
            generators: OnceLock::new(),
        }
    }

    pub fn trivial(shape: &Arc<GroupShape>) -> Self {
        Self::from_bits(
            shape,
            SpanBuilder::trivial(shape.order() as usize).into_bits(),
        )
    }

    pub fn whole(shape: &Arc<GroupShape>) -> Self {
        let gens: Vec<usize> = (0..shape.rank()).map(|i| shape.basis_idx(i)).collect();
        Self::span_indices(shape, &gens)
    }

    /// Least subgroup containing `gens`.
    pub fn span(shape: &Arc<GroupShape>, gens: &[GroupElement]) -> Result<Self> {
        let idx = gens
            .iter()
            .map(|g| shape.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::span_indices(shape, &idx))
    }

    pub fn span_indices(shape: &Arc<GroupShape>, gens: &[usize]) -> Self {
        let mut b = SpanBuilder::trivial(shape.order() as usize);
        for &g in gens {
            b.extend(shape, g);
        }
        Self::from_bits(shape, b.into_bits())
    }

    pub fn shape(&self) -> &Arc<GroupShape> {
        &self.shape
    }

    pub fn members(&self) -> &Bits {
        &self.members
    }

    pub fn order(&self) -> u64 {
        self.members.count() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.shape.order()
    }

    #[inline]
    pub fn contains_idx(&self, idx: usize) -> bool {
        self.members.get(idx)
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        Ok(self.members.get(self.shape.index_of(x)?))
    }

    pub fn member_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.members
            .ones()
            .map(|i| self.shape.element_at(i))
            .collect()
    }

    /// Lexicographically least minimal generating set, by dense index.
    ///
    /// Greedy over members in index order, skipping anything already in
    /// `pH + <chosen>`; the chosen elements form a basis of `H/pH`.
    pub fn generator_indices(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let p = self.shape.prime();
            let mut frattini = Bits::new(self.members.len());
            for h in self.members.ones() {
                frattini.set(self.shape.scale_idx(p, h));
            }
            let mut b = SpanBuilder::from_bits(frattini);
            let mut gens = Vec::new();
            for h in self.members.ones() {
                if !b.contains(h) {
                    gens.push(h);
                    b.extend(&self.shape, h);
                }
            }
            gens
        })
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.generator_indices()
            .iter()
            .map(|&i| self.shape.element_at(i))
            .collect()
    }

    fn same_shape(&self, other: &Subgroup) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                expected: self.shape.to_string(),
                found: other.shape.to_string(),
            });
        }
        Ok(())
    }

    /// `other ⊆ self`.
    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool> {
        self.same_shape(other)?;
        Ok(other.members.is_subset(&self.members))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_shape(other)?;
        Ok(Self::from_bits(
            &self.shape,
            self.members.and(&other.members),
        ))
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_shape(other)?;
        let mut b = SpanBuilder::from_bits(self.members.clone());
        for &g in other.generator_indices() {
            b.extend(&self.shape, g);
        }
        Ok(Self::from_bits(&self.shape, b.into_bits()))
    }

    /// `self + <gs>`.
    pub fn extended_by(&self, gs: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut b = SpanBuilder::from_bits(self.members.clone());
        for g in gs {
            b.extend(&self.shape, g);
        }
        Self::from_bits(&self.shape, b.into_bits())
    }

    /// Image under an additive map given on dense indices; only the generators are mapped.
    pub fn image_under(&self, target: &Arc<GroupShape>, f: impl Fn(usize) -> usize) -> Subgroup {
        let imgs: Vec<usize> = self.generator_indices().iter().map(|&g| f(g)).collect();
        Self::span_indices(target, &imgs)
    }

    /// True when `f(H) ⊆ H` for an additive `f`; checking generators suffices.
    pub fn is_stable_under(&self, f: impl Fn(usize) -> usize) -> bool {
        self.generator_indices()
            .iter()
            .all(|&g| self.members.get(f(g)))
    }

    /// Canonical order: by size, then by ascending member lists compared lexicographically.
    pub fn canonical_cmp(&self, other: &Subgroup) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.ones().cmp(other.members.ones()))
    }

    /// Isomorphism type of `H`, computed inside `H`.
    ///
    /// With `c_n = |(p^n H)[p]|`, the number of cyclic summands of exponent
    /// `n + 1` is `log_p c_n − log_p c_{n+1}`. The zero subgroup maps to the
    /// empty partition.
    pub fn iso_type(&self) -> GroupShape {
        let shape = &self.shape;
        let p = shape.prime();
        let mut layer: Vec<usize> = self.members.ones().collect();
        let mut socle_logs = Vec::new();
        loop {
            let socle = layer
                .iter()
                .filter(|&&x| shape.scale_idx(p, x) == 0)
                .count() as u64;
            socle_logs.push(log_p(socle, p));
            if layer.len() == 1 {
                break;
            }
            let mut next = Bits::new(self.members.len());
            for &x in &layer {
                next.set(shape.scale_idx(p, x));
            }
            layer = next.ones().collect();
        }
        let mut exponents = Vec::new();
        for n in 0..socle_logs.len() - 1 {
            let f = socle_logs[n] - socle_logs[n + 1];
            exponents.extend(std::iter::repeat_n(n as u32 + 1, f as usize));
        }
        if exponents.is_empty() {
            GroupShape::trivial(p)
        } else {
            GroupShape::with_cap(p, &exponents, u64::MAX)
                .expect("subgroup of a valid shape has a valid shape")
        }
    }
}

fn log_p(mut n: u64, p: u64) -> u32 {
    let mut l = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        l += 1;
    }
    l
}
