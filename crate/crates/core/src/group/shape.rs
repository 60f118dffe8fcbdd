use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::{DEFAULT_CARRIER_CAP, MAX_CARRIER};
use crate::error::{Error, Result};

/// A finite abelian p-group `Z(p^k1) ⊕ ... ⊕ Z(p^kn)`, named by its prime and
/// ascending exponent partition.
///
/// Elements are addressed by a dense mixed-radix index: coordinate `i` has
/// weight `stride[i] = p^(k_0 + ... + k_{i-1})`. The empty partition is
/// reserved for the trivial group and only arises as the isomorphism type of
/// the zero subgroup.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupShape {
    prime: u64,
    exponents: Vec<u32>,
    radices: Vec<u64>,
    strides: Vec<u64>,
    order: u64,
}

/// Trial division; desk-scale primes only.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GroupShape {
    /// Builds a shape under the default carrier cap.
    pub fn new(prime: u64, exponents: &[u32]) -> Result<Self> {
        Self::with_cap(prime, exponents, DEFAULT_CARRIER_CAP)
    }

    pub fn with_cap(prime: u64, exponents: &[u32], cap: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if exponents.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if exponents.contains(&0) {
            return Err(Error::ZeroExponent);
        }
        let log_order: u32 = exponents.iter().sum();
        let cap = cap.min(MAX_CARRIER);
        match prime.checked_pow(log_order) {
            Some(order) if order <= cap => {}
            _ => {
                return Err(Error::CarrierCapExceeded {
                    prime,
                    log_order,
                    cap,
                })
            }
        }
        let mut sorted = exponents.to_vec();
        sorted.sort_unstable();
        Ok(Self::build(prime, sorted))
    }

    /// The zero group, used as the isomorphism type of `{0}`.
    pub fn trivial(prime: u64) -> Self {
        Self::build(prime, Vec::new())
    }

    fn build(prime: u64, exponents: Vec<u32>) -> Self {
        let radices: Vec<u64> = exponents.iter().map(|&k| prime.pow(k)).collect();
        let mut strides = Vec::with_capacity(radices.len());
        let mut acc = 1u64;
        for &r in &radices {
            strides.push(acc);
            acc *= r;
        }
        GroupShape {
            prime,
            exponents,
            radices,
            strides,
            order: acc,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Number of cyclic summands.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Largest exponent, i.e. `p^e` is the exponent of the group; 0 for the trivial group.
    pub fn max_exponent(&self) -> u32 {
        self.exponents.last().copied().unwrap_or(0)
    }

    /// Cyclic order `p^{k_i}` of summand `i`.
    #[inline]
    pub fn radix(&self, i: usize) -> u64 {
        self.radices[i]
    }

    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    #[inline]
    pub fn stride(&self, i: usize) -> u64 {
        self.strides[i]
    }

    pub fn pow_p(&self, e: u32) -> u64 {
        self.prime.pow(e)
    }

    /// Distinct exponents present, ascending, with the summand indices carrying each.
    pub fn layers(&self) -> Vec<(u32, Vec<usize>)> {
        let mut out: Vec<(u32, Vec<usize>)> = Vec::new();
        for (i, &k) in self.exponents.iter().enumerate() {
            match out.last_mut() {
                Some((last, idx)) if *last == k => idx.push(i),
                _ => out.push((k, vec![i])),
            }
        }
        out
    }

    /// True when some exponent between 1 and the maximum is missing.
    pub fn is_sparse(&self) -> bool {
        let layers = self.layers();
        layers.len() != self.max_exponent() as usize
    }

    /// The shape with every summand duplicated (`λ ⊔ λ`).
    pub fn doubled(&self) -> Result<Self> {
        let mut ex = self.exponents.clone();
        ex.extend_from_slice(&self.exponents);
        Self::with_cap(self.prime, &ex, u64::MAX)
    }

    /// Sub-shape on the given summand indices (in the given order, then canonicalized).
    pub fn select(&self, summands: &[usize]) -> Self {
        let mut ex: Vec<u32> = summands.iter().map(|&i| self.exponents[i]).collect();
        ex.sort_unstable();
        Self::build(self.prime, ex)
    }

    /// Dense index of reduced coordinates.
    #[inline]
    pub fn encode(&self, coords: &[u64]) -> usize {
        let mut idx = 0u64;
        for (c, s) in coords.iter().zip(&self.strides) {
            idx += c * s;
        }
        idx as usize
    }

    #[inline]
    pub fn decode_into(&self, idx: usize, out: &mut [u64]) {
        let mut rest = idx as u64;
        for (o, &r) in out.iter_mut().zip(&self.radices) {
            *o = rest % r;
            rest /= r;
        }
    }

    pub fn decode(&self, idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.rank()];
        self.decode_into(idx, &mut out);
        out
    }

    /// Coordinate `i` of the element with dense index `idx`.
    #[inline]
    pub fn digit(&self, idx: usize, i: usize) -> u64 {
        (idx as u64 / self.strides[i]) % self.radices[i]
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        for (&r, &s) in self.radices.iter().zip(&self.strides) {
            let d = (a % r + b % r) % r;
            out += d * s;
            a /= r;
            b /= r;
        }
        out as usize
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        let mut a = a as u64;
        let mut out = 0u64;
        for (&r, &s) in self.radices.iter().zip(&self.strides) {
            let d = a % r;
            out += ((r - d) % r) * s;
            a /= r;
        }
        out as usize
    }

    /// `c · a` for a non-negative multiplier.
    #[inline]
    pub fn scale_idx(&self, c: u64, a: usize) -> usize {
        let mut a = a as u64;
        let mut out = 0u64;
        for (&r, &s) in self.radices.iter().zip(&self.strides) {
            let d = a % r;
            out += ((c % r) * d % r) * s;
            a /= r;
        }
        out as usize
    }

    /// Dense index of the canonical generator of summand `i`.
    pub fn basis_idx(&self, i: usize) -> usize {
        self.strides[i] as usize
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.prime)?;
        for (i, k) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupShape({self})")
    }
}

/// Parses `"p:k1,k2,..."`; exponents may come in any order.
impl FromStr for GroupShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, ks) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected 'p:k1,...,kn', got {s:?}")))?;
        let prime = p
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad prime {p:?}")))?;
        let exponents = parse_partition(ks)?;
        GroupShape::new(prime, &exponents)
    }
}

/// Parses a comma-separated exponent list such as `"1,3"`.
pub fn parse_partition(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Err(Error::EmptyPartition);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent {t:?}")))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct ShapeRepr {
    prime: u64,
    exponents: Vec<u32>,
}

impl Serialize for GroupShape {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ShapeRepr {
            prime: self.prime,
            exponents: self.exponents.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupShape {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ShapeRepr::deserialize(d)?;
        if repr.exponents.is_empty() {
            if !is_prime(repr.prime) {
                return Err(serde::de::Error::custom(Error::NotPrime(repr.prime)));
            }
            return Ok(GroupShape::trivial(repr.prime));
        }
        GroupShape::with_cap(repr.prime, &repr.exponents, MAX_CARRIER)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_shape_examples() {
        let s = GroupShape::new(2, &[1, 3]).unwrap();
        assert_eq!(s.order(), 16);
        assert_eq!(s.rank(), 2);
        assert_eq!(GroupShape::new(3, &[1]).unwrap().order(), 3);
        assert_eq!(GroupShape::new(2, &[3, 1]).unwrap().exponents(), &[1, 3]);
    }

    #[test]
    fn make_shape_errors() {
        assert_eq!(GroupShape::new(4, &[1]), Err(Error::NotPrime(4)));
        assert_eq!(GroupShape::new(1, &[1]), Err(Error::NotPrime(1)));
        assert_eq!(GroupShape::new(2, &[]), Err(Error::EmptyPartition));
        assert_eq!(GroupShape::new(2, &[0, 1]), Err(Error::ZeroExponent));
        assert!(matches!(
            GroupShape::new(2, &[17]),
            Err(Error::CarrierCapExceeded { .. })
        ));
        assert!(GroupShape::with_cap(2, &[17], 1 << 17).is_ok());
        assert!(matches!(
            GroupShape::new(3, &[60]),
            Err(Error::CarrierCapExceeded { .. })
        ));
    }

    #[test]
    fn text_format_round_trip() {
        let s: GroupShape = "2:3,1".parse().unwrap();
        assert_eq!(s.to_string(), "2:1,3");
        assert_eq!(s.to_string().parse::<GroupShape>().unwrap(), s);
        assert!("2".parse::<GroupShape>().is_err());
        assert!("2:".parse::<GroupShape>().is_err());
        assert!("x:1".parse::<GroupShape>().is_err());
        assert_eq!("9:1".parse::<GroupShape>(), Err(Error::NotPrime(9)));
    }

    #[test]
    fn layers_and_sparsity() {
        let s = GroupShape::new(2, &[1, 1, 3]).unwrap();
        assert_eq!(s.layers(), vec![(1, vec![0, 1]), (3, vec![2])]);
        assert!(s.is_sparse());
        assert!(!GroupShape::new(2, &[1, 2, 2]).unwrap().is_sparse());
        assert!(GroupShape::new(2, &[2, 2]).unwrap().is_sparse());
    }

    #[test]
    fn dense_index_round_trip() {
        let s = GroupShape::new(3, &[1, 2]).unwrap();
        for idx in 0..s.order() as usize {
            let c = s.decode(idx);
            assert_eq!(s.encode(&c), idx);
            assert_eq!(s.add_idx(idx, s.neg_idx(idx)), 0);
        }
    }

    #[test]
    fn serde_round_trip() {
        let s = GroupShape::new(5, &[2, 1]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"prime":5,"exponents":[1,2]}"#);
        assert_eq!(serde_json::from_str::<GroupShape>(&json).unwrap(), s);
        let t: GroupShape = serde_json::from_str(r#"{"prime":5,"exponents":[]}"#).unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.order(), 1);
    }
}
