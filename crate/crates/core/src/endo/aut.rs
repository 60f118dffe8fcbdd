use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::matrix::EndoMatrix;
use crate::error::{Error, Result};
use crate::group::GroupShape;

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Generators of the unit group `(Z/p^k)^*`, identity omitted.
///
/// Odd p: the smallest primitive root modulo `p^k`. For p = 2: `{−1, 5}` when
/// k ≥ 3, `{−1}` when k = 2, nothing when k = 1.
pub fn unit_generators(p: u64, k: u32) -> Vec<u64> {
    let m = p.pow(k);
    if p == 2 {
        return match k {
            1 => vec![],
            2 => vec![m - 1],
            _ => vec![m - 1, 5],
        };
    }
    let phi = p.pow(k - 1) * (p - 1);
    let factors = prime_factors(phi);
    let g = (2..m)
        .find(|&g| g % p != 0 && factors.iter().all(|&q| pow_mod(g, phi / q, m) != 1))
        .expect("(Z/p^k)^* is cyclic for odd p");
    vec![g]
}

/// A generating set of `Aut(G)`: diagonal unit multiplications per summand,
/// transpositions of equal-exponent summands, and the transvections
/// `I + E_ij` for every ordered pair `i ≠ j`.
pub fn aut_generators(shape: &Arc<GroupShape>) -> Vec<EndoMatrix> {
    let n = shape.rank();
    let p = shape.prime();
    let ident: Vec<i64> = (0..n * n).map(|t| i64::from(t / n == t % n)).collect();
    let mut gens = Vec::new();
    for i in 0..n {
        for u in unit_generators(p, shape.exponents()[i]) {
            let mut c = ident.clone();
            c[i * n + i] = u as i64;
            gens.push(EndoMatrix::new(shape, &c).expect("square"));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if shape.exponents()[i] == shape.exponents()[j] {
                let mut c = ident.clone();
                c[i * n + i] = 0;
                c[j * n + j] = 0;
                c[i * n + j] = 1;
                c[j * n + i] = 1;
                gens.push(EndoMatrix::new(shape, &c).expect("square"));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut c = ident.clone();
                c[i * n + j] = 1;
                gens.push(EndoMatrix::new(shape, &c).expect("square"));
            }
        }
    }
    gens
}

/// The `n²` single-entry maps `E_ij`. Every endomorphism is a coefficient
/// combination of them, so a subgroup is fully invariant exactly when it is
/// stable under each.
pub fn stability_test_set(shape: &Arc<GroupShape>) -> Vec<EndoMatrix> {
    let n = shape.rank();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| EndoMatrix::single_entry(shape, i, j))
        .collect()
}

/// Closure of `gens` under composition, keyed by the induced map's action on
/// the summand generators. Fails once more than `cap` maps are found.
pub fn closure(
    shape: &Arc<GroupShape>,
    gens: &[EndoMatrix],
    cap: usize,
) -> Result<HashSet<Vec<u32>>> {
    let id = EndoMatrix::identity(shape);
    let mut seen = HashSet::new();
    seen.insert(id.image_key());
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let c = g.compose(&m)?;
            if seen.insert(c.image_key()) {
                if seen.len() > cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                queue.push_back(c);
            }
        }
    }
    Ok(seen)
}
