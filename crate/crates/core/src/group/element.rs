use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupShape;
use crate::error::{Error, Result};

/// Coordinate vector of residues, one per cyclic summand.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// p-height of an element: a natural number, or `Infinite` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(n) => write!(f, "{n}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Height {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Height::Finite(n) => s.serialize_u32(*n),
            Height::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Heights of `x, px, p²x, ...`, stopping at the first infinite entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UlmSequence(Vec<Height>);

impl UlmSequence {
    pub fn heights(&self) -> &[Height] {
        &self.0
    }

    /// Entry `j`, padded with infinity past the stored terminator.
    pub fn get(&self, j: usize) -> Height {
        self.0.get(j).copied().unwrap_or(Height::Infinite)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise `self ≤ other`.
    pub fn le_pointwise(&self, other: &UlmSequence) -> bool {
        let n = self.len().max(other.len());
        (0..n).all(|j| self.get(j) <= other.get(j))
    }
}

impl PartialOrd for UlmSequence {
    /// Pointwise partial order.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.le_pointwise(other), other.le_pointwise(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

fn p_valuation(mut c: u64, p: u64) -> u32 {
    let mut v = 0;
    while c.is_multiple_of(p) {
        c /= p;
        v += 1;
    }
    v
}

impl GroupShape {
    /// Builds an element, reducing every coordinate modulo its cyclic order.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::ElementLength {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(self.radices())
                .map(|(&c, &r)| c.rem_euclid(r as i64) as u64)
                .collect(),
        })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Canonical generator of summand `i`.
    pub fn basis(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        GroupElement { coords }
    }

    pub fn element_at(&self, idx: usize) -> GroupElement {
        GroupElement {
            coords: self.decode(idx),
        }
    }

    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.check(x)?;
        Ok(self.encode(&x.coords))
    }

    /// Every element in dense-index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(|i| self.element_at(i))
    }

    pub(crate) fn check(&self, x: &GroupElement) -> Result<()> {
        if x.coords.len() != self.rank() {
            return Err(Error::ElementLength {
                expected: self.rank(),
                found: x.coords.len(),
            });
        }
        if x.coords.iter().zip(self.radices()).any(|(&c, &r)| c >= r) {
            return Err(Error::ShapeMismatch {
                expected: self.to_string(),
                found: format!("{:?}", x.coords),
            });
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(self.radices())
                .map(|((&a, &b), &r)| (a + b) % r)
                .collect(),
        })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(self.radices())
                .map(|(&a, &r)| (r - a) % r)
                .collect(),
        })
    }

    pub fn scalar_mul(&self, c: i64, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(self.radices())
                .map(|(&a, &r)| {
                    let c = c.rem_euclid(r as i64) as u64;
                    (c * a) % r
                })
                .collect(),
        })
    }

    /// Order of `x`: the least power of p annihilating every coordinate.
    pub fn element_order(&self, x: &GroupElement) -> Result<u64> {
        self.check(x)?;
        Ok(self.pow_p(self.log_order_of_coords(&x.coords)))
    }

    fn log_order_of_coords(&self, coords: &[u64]) -> u32 {
        coords
            .iter()
            .zip(self.exponents())
            .filter(|(&c, _)| c != 0)
            .map(|(&c, &k)| k - p_valuation(c, self.prime()))
            .max()
            .unwrap_or(0)
    }

    /// `log_p` of the order of the element at dense index `idx`.
    pub fn log_order_idx(&self, idx: usize) -> u32 {
        let mut m = 0;
        for i in 0..self.rank() {
            let c = self.digit(idx, i);
            if c != 0 {
                m = m.max(self.exponents()[i] - p_valuation(c, self.prime()));
            }
        }
        m
    }

    /// Largest n with `x ∈ p^n G`; infinite exactly for zero.
    pub fn height(&self, x: &GroupElement) -> Result<Height> {
        self.check(x)?;
        Ok(self.height_of_coords(&x.coords))
    }

    fn height_of_coords(&self, coords: &[u64]) -> Height {
        coords
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| p_valuation(c, self.prime()))
            .min()
            .map_or(Height::Infinite, Height::Finite)
    }

    pub fn height_idx(&self, idx: usize) -> Height {
        self.height_of_coords(&self.decode(idx))
    }

    pub fn ulm_sequence(&self, x: &GroupElement) -> Result<UlmSequence> {
        self.check(x)?;
        Ok(self.ulm_sequence_idx(self.encode(&x.coords)))
    }

    pub fn ulm_sequence_idx(&self, idx: usize) -> UlmSequence {
        let mut seq = Vec::new();
        let mut cur = idx;
        loop {
            let h = self.height_idx(cur);
            seq.push(h);
            if h == Height::Infinite {
                break;
            }
            cur = self.scale_idx(self.prime(), cur);
        }
        UlmSequence(seq)
    }

    /// Ulm–Kaplansky invariants `f_0, f_1, ...`: `f_n` counts summands of exponent `n + 1`.
    pub fn ulm_invariants(&self) -> Vec<usize> {
        let mut f = vec![0; self.max_exponent() as usize];
        for &k in self.exponents() {
            f[k as usize - 1] += 1;
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_z8() -> GroupShape {
        GroupShape::new(2, &[1, 3]).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let g = z2_z8();
        let x = g.element(&[1, 2]).unwrap();
        let y = g.element(&[1, 6]).unwrap();
        assert_eq!(g.add(&x, &y).unwrap(), g.zero());
        assert_eq!(g.scalar_mul(2, &x).unwrap(), g.element(&[0, 4]).unwrap());
        assert_eq!(
            g.neg(&g.element(&[0, 3]).unwrap()).unwrap(),
            g.element(&[0, 5]).unwrap()
        );
        assert_eq!(g.element(&[-1, 9]).unwrap().coords(), &[1, 1]);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let g = z2_z8();
        let h = GroupShape::new(2, &[1, 1, 1]).unwrap();
        let x = h.zero();
        assert!(matches!(
            g.add(&g.zero(), &x),
            Err(Error::ElementLength { .. })
        ));
        assert!(g.element(&[1]).is_err());
        let big = GroupShape::new(2, &[4, 4])
            .unwrap()
            .element(&[9, 0])
            .unwrap();
        assert!(matches!(g.neg(&big), Err(Error::ShapeMismatch { .. })));
    }

    fn brute_order(g: &GroupShape, x: &GroupElement) -> u64 {
        let mut m = 1u64;
        while !g.scalar_mul(m as i64, x).unwrap().is_zero() {
            m *= g.prime();
        }
        m
    }

    #[test]
    fn element_order_examples() {
        let g = z2_z8();
        let x = g.element(&[1, 2]).unwrap();
        assert_eq!(brute_order(&g, &x), 4);
        assert_eq!(g.element_order(&x).unwrap(), 4);
        assert_eq!(g.element_order(&g.zero()).unwrap(), 1);
        assert_eq!(g.element_order(&g.basis(1)).unwrap(), 8);
    }

    #[test]
    fn height_examples() {
        let g = z2_z8();
        assert_eq!(
            g.height(&g.element(&[0, 4]).unwrap()).unwrap(),
            Height::Finite(2)
        );
        assert_eq!(g.height(&g.zero()).unwrap(), Height::Infinite);
        assert_eq!(
            g.height(&g.element(&[1, 2]).unwrap()).unwrap(),
            Height::Finite(0)
        );
    }

    #[test]
    fn height_matches_power_subgroup_membership() {
        for g in [z2_z8(), GroupShape::new(3, &[1, 2]).unwrap()] {
            let p = g.prime() as i64;
            for x in g.elements() {
                let mut brute = Height::Infinite;
                if !x.is_zero() {
                    let mut n = 0;
                    loop {
                        let pn = p.pow(n + 1);
                        let hit = g.elements().any(|y| g.scalar_mul(pn, &y).unwrap() == x);
                        if !hit {
                            break;
                        }
                        n += 1;
                    }
                    brute = Height::Finite(n);
                }
                assert_eq!(g.height(&x).unwrap(), brute, "{x:?}");
            }
        }
    }

    #[test]
    fn ulm_sequence_examples() {
        use Height::*;
        let g = z2_z8();
        let seq = |c: &[i64]| g.ulm_sequence(&g.element(c).unwrap()).unwrap();
        assert_eq!(seq(&[1, 2]).heights(), &[Finite(0), Finite(2), Infinite]);
        assert_eq!(seq(&[0, 0]).heights(), &[Infinite]);
        assert_eq!(
            seq(&[0, 1]).heights(),
            &[Finite(0), Finite(1), Finite(2), Infinite]
        );
    }

    #[test]
    fn ulm_invariant_examples() {
        let f = |p, ks: &[u32]| GroupShape::new(p, ks).unwrap().ulm_invariants();
        assert_eq!(f(2, &[1, 3]), vec![1, 0, 1]);
        assert_eq!(f(2, &[1, 2]), vec![1, 1]);
        assert_eq!(f(3, &[2, 2]), vec![0, 2]);
    }

    #[test]
    fn ulm_partial_order() {
        use Height::*;
        let a = UlmSequence(vec![Finite(0), Finite(2), Infinite]);
        let b = UlmSequence(vec![Finite(1), Infinite]);
        assert!(a.le_pointwise(&b));
        assert!(a < b);
        let c = UlmSequence(vec![Finite(1), Finite(2), Infinite]);
        assert_eq!(b.partial_cmp(&c), Some(Ordering::Greater));
    }
}
