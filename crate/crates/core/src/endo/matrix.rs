use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupShape};

/// An endomorphism of `⊕ Z(p^{k_i})` as an `n × n` coefficient matrix.
///
/// Entry `(i, j)` is the map from summand `j` to summand `i` sending
/// `a_j ↦ c_ij · p^{max(0, k_i − k_j)} · a_i`, with `c_ij` reduced modulo
/// `p^{min(k_i, k_j)}`, the order of `Hom(Z(p^{k_j}), Z(p^{k_i}))`. With
/// entries reduced, distinct matrices induce distinct maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EndoMatrix {
    shape: Arc<GroupShape>,
    entries: Vec<u64>,
    /// `c_ij · p^{max(0, k_i − k_j)} mod p^{k_i}`, the multiplier actually applied.
    effective: Vec<u64>,
}

impl fmt::Debug for EndoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.shape.rank();
        let rows: Vec<&[u64]> = self.entries.chunks(n.max(1)).collect();
        write!(f, "EndoMatrix({}, {:?})", self.shape, rows)
    }
}

/// Modulus of entry `(i, j)`.
pub fn entry_modulus(shape: &GroupShape, i: usize, j: usize) -> u64 {
    let k = shape.exponents();
    shape.pow_p(k[i].min(k[j]))
}

/// Scale `p^{max(0, k_i − k_j)}` baked into entry `(i, j)`.
pub fn entry_scale(shape: &GroupShape, i: usize, j: usize) -> u64 {
    let k = shape.exponents();
    shape.pow_p(k[i].saturating_sub(k[j]))
}

impl EndoMatrix {
    /// Builds a matrix from row-major coefficients, reducing each one.
    pub fn new(shape: &Arc<GroupShape>, coeffs: &[i64]) -> Result<Self> {
        let n = shape.rank();
        if coeffs.len() != n * n {
            return Err(Error::ElementLength {
                expected: n * n,
                found: coeffs.len(),
            });
        }
        let entries = (0..n * n)
            .map(|t| {
                let m = entry_modulus(shape, t / n, t % n) as i64;
                coeffs[t].rem_euclid(m) as u64
            })
            .collect();
        Ok(Self::from_reduced(shape, entries))
    }

    pub(crate) fn from_reduced(shape: &Arc<GroupShape>, entries: Vec<u64>) -> Self {
        let n = shape.rank();
        let effective = (0..n * n)
            .map(|t| {
                let (i, j) = (t / n, t % n);
                entries[t] * entry_scale(shape, i, j) % shape.radix(i)
            })
            .collect();
        EndoMatrix {
            shape: Arc::clone(shape),
            entries,
            effective,
        }
    }

    pub fn identity(shape: &Arc<GroupShape>) -> Self {
        let n = shape.rank();
        let entries = (0..n * n).map(|t| u64::from(t / n == t % n)).collect();
        Self::from_reduced(shape, entries)
    }

    pub fn zero(shape: &Arc<GroupShape>) -> Self {
        let n = shape.rank();
        Self::from_reduced(shape, vec![0; n * n])
    }

    /// `E_ij`: the canonical scaled generator map from summand `j` to summand `i`.
    pub fn single_entry(shape: &Arc<GroupShape>, i: usize, j: usize) -> Self {
        let n = shape.rank();
        let mut entries = vec![0; n * n];
        entries[i * n + j] = 1;
        Self::from_reduced(shape, entries)
    }

    /// The endomorphism sending generator `a_j` to the element with dense index `images[j]`.
    pub fn from_images(shape: &Arc<GroupShape>, images: &[usize]) -> Result<Self> {
        let n = shape.rank();
        if images.len() != n {
            return Err(Error::ElementLength {
                expected: n,
                found: images.len(),
            });
        }
        let mut entries = vec![0; n * n];
        for (j, &y) in images.iter().enumerate() {
            if shape.log_order_idx(y) > shape.exponents()[j] {
                return Err(Error::InvalidImage { index: j });
            }
            for i in 0..n {
                let v = shape.digit(y, i);
                let scale = entry_scale(shape, i, j);
                debug_assert_eq!(v % scale, 0);
                entries[i * n + j] = (v / scale) % entry_modulus(shape, i, j);
            }
        }
        Ok(Self::from_reduced(shape, entries))
    }

    pub fn shape(&self) -> &Arc<GroupShape> {
        &self.shape
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.shape.rank() + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    fn same_shape(&self, other: &EndoMatrix) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                expected: self.shape.to_string(),
                found: other.shape.to_string(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        let idx = self.shape.index_of(x)?;
        Ok(self.shape.element_at(self.apply_idx(idx)))
    }

    #[inline]
    pub fn apply_idx(&self, x: usize) -> usize {
        let shape = &*self.shape;
        let n = shape.rank();
        let mut digits = [0u64; 64];
        shape.decode_into(x, &mut digits[..n]);
        let mut out = 0u64;
        for i in 0..n {
            let r = shape.radix(i);
            let row = &self.effective[i * n..(i + 1) * n];
            let mut acc = 0u64;
            for (c, d) in row.iter().zip(&digits[..n]) {
                acc = (acc + c * d) % r;
            }
            out += acc * shape.stride(i);
        }
        out as usize
    }

    /// Dense indices of the images of the summand generators; identifies the induced map.
    pub fn image_key(&self) -> Vec<u32> {
        (0..self.shape.rank())
            .map(|j| self.apply_idx(self.shape.basis_idx(j)) as u32)
            .collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &EndoMatrix) -> Result<EndoMatrix> {
        self.same_shape(other)?;
        let images: Vec<usize> = (0..self.shape.rank())
            .map(|j| self.apply_idx(other.apply_idx(self.shape.basis_idx(j))))
            .collect();
        EndoMatrix::from_images(&self.shape, &images)
    }

    /// Pointwise sum of endomorphisms.
    pub fn matrix_add(&self, other: &EndoMatrix) -> Result<EndoMatrix> {
        self.same_shape(other)?;
        let n = self.shape.rank();
        let entries = (0..n * n)
            .map(|t| {
                (self.entries[t] + other.entries[t]) % entry_modulus(&self.shape, t / n, t % n)
            })
            .collect();
        Ok(Self::from_reduced(&self.shape, entries))
    }

    /// Automorphism test: every diagonal block of equal-exponent summands is
    /// invertible modulo p.
    pub fn is_automorphism(&self) -> bool {
        let p = self.shape.prime();
        self.shape.layers().iter().all(|(_, idx)| {
            let block: Vec<Vec<u64>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.entry(i, j) % p).collect())
                .collect();
            invertible_mod_p(block, p)
        })
    }

    /// Bijectivity of the induced map, checked on the whole carrier.
    pub fn is_bijective(&self) -> bool {
        let n = self.shape.order() as usize;
        let mut hit = crate::bits::Bits::new(n);
        (0..n).all(|x| hit.insert(self.apply_idx(x)))
    }
}

fn invertible_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> bool {
    let n = m.len();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return false;
        };
        m.swap(col, piv);
        let inv = mod_inverse(m[col][col], p);
        for r in col + 1..n {
            let f = m[r][col] * inv % p;
            if f == 0 {
                continue;
            }
            let pivot = m[col].clone();
            for (v, &q) in m[r].iter_mut().zip(&pivot).skip(col) {
                *v = (*v + p * p - f * q % p) % p;
            }
        }
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime and small: Fermat.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}
