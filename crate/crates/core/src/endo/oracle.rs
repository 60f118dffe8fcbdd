//! Brute-force endomorphism and automorphism oracles.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::matrix::{entry_modulus, EndoMatrix};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::GroupShape;

/// `|End(G)| = Π_{i,j} p^{min(k_i, k_j)}`.
pub fn endo_count(shape: &GroupShape) -> u128 {
    let n = shape.rank();
    let mut total = 1u128;
    for i in 0..n {
        for j in 0..n {
            total = total.saturating_mul(entry_modulus(shape, i, j) as u128);
        }
    }
    total
}

fn check_cap(shape: &GroupShape, cap: u128) -> Result<()> {
    let count = endo_count(shape);
    if count > cap {
        return Err(Error::OracleCapExceeded { count, cap });
    }
    Ok(())
}

/// Every endomorphism matrix exactly once, as a mixed-radix counter over entries.
pub fn enumerate_all_endos(
    shape: &Arc<GroupShape>,
    cap: u128,
) -> Result<impl Iterator<Item = EndoMatrix>> {
    check_cap(shape, cap)?;
    let n = shape.rank();
    let moduli: Vec<u64> = (0..n * n)
        .map(|t| entry_modulus(shape, t / n, t % n))
        .collect();
    let shape = Arc::clone(shape);
    let mut next = Some(vec![0u64; n * n]);
    Ok(std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut carried = true;
        for (e, &m) in succ.iter_mut().zip(&moduli) {
            *e += 1;
            if *e < m {
                carried = false;
                break;
            }
            *e = 0;
        }
        if !carried {
            next = Some(succ);
        }
        Some(EndoMatrix::from_reduced(&shape, cur))
    }))
}

/// Result of the exhaustive automorphism search.
#[derive(Debug, Clone)]
pub struct AutomorphismSearch {
    pub count: u128,
    /// Image keys of every automorphism, when at most `collect_limit` were found.
    pub keys: Option<HashSet<Vec<u32>>>,
}

/// Exhaustive search over all endomorphisms for the bijective ones.
///
/// An endomorphism is fixed by the images `y_j` of the summand generators,
/// each ranging over `G[p^{k_j}]`. Choices are made one generator at a time;
/// a partial choice is abandoned as soon as its restriction to
/// `<a_0, ..., a_j>` has a nonzero kernel, which for a finite p-group happens
/// exactly when the socle images `p^{k_i − 1} y_i` become linearly dependent.
///
/// The number of completions of a partial choice depends only on the span of
/// its socle images, so the count is taken over that search tree with the
/// subtree totals memoised by span. The tree is walked leaf by leaf only to
/// collect keys, and only when the count is at most `collect_limit`.
pub fn exhaustive_automorphisms(
    shape: &Arc<GroupShape>,
    cap: u128,
    collect_limit: usize,
) -> Result<AutomorphismSearch> {
    check_cap(shape, cap)?;
    let n = shape.rank();
    let p = shape.prime();
    let order = shape.order() as usize;
    // Socle coordinates: digit i of a socle element is c_i / p^{k_i − 1}.
    let socle_size = (p as usize).pow(n as u32);
    let socle_index = |y: usize| -> usize {
        let mut s = 0usize;
        let mut w = 1usize;
        for i in 0..n {
            let d = shape.digit(y, i) / shape.pow_p(shape.exponents()[i] - 1);
            s += d as usize * w;
            w *= p as usize;
        }
        s
    };
    let candidates: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|j| {
            let k = shape.exponents()[j];
            (0..order)
                .filter(|&y| shape.log_order_idx(y) <= k)
                .map(|y| (y, socle_index(shape.scale_idx(shape.pow_p(k - 1), y))))
                .collect()
        })
        .collect();
    let multiplicity: Vec<Vec<u128>> = candidates
        .iter()
        .map(|c| {
            let mut m = vec![0u128; socle_size];
            for &(_, s) in c {
                m[s] += 1;
            }
            m
        })
        .collect();
    let mut search = Search {
        p: p as usize,
        n,
        candidates,
        multiplicity,
        memo: vec![HashMap::new(); n],
        images: vec![0; n],
        keys: HashSet::new(),
    };
    let mut span = Bits::new(socle_size);
    span.set(0);
    let count = search.count(0, &span);
    let keys = if count <= collect_limit as u128 {
        search.collect(0, &span);
        Some(search.keys)
    } else {
        None
    };
    Ok(AutomorphismSearch { count, keys })
}

struct Search {
    p: usize,
    n: usize,
    candidates: Vec<Vec<(usize, usize)>>,
    multiplicity: Vec<Vec<u128>>,
    memo: Vec<HashMap<Bits, u128>>,
    images: Vec<usize>,
    keys: HashSet<Vec<u32>>,
}

impl Search {
    fn socle_add(&self, a: usize, b: usize) -> usize {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.n {
            out += ((a % self.p + b % self.p) % self.p) * w;
            a /= self.p;
            b /= self.p;
            w *= self.p;
        }
        out
    }

    fn adjoin(&self, span: &Bits, s: usize) -> Bits {
        let mut next = span.clone();
        let members: Vec<usize> = span.ones().collect();
        let mut mult = s;
        for _ in 1..self.p {
            for &t in &members {
                next.set(self.socle_add(t, mult));
            }
            mult = self.socle_add(mult, s);
        }
        next
    }

    fn count(&mut self, level: usize, span: &Bits) -> u128 {
        if level == self.n {
            return 1;
        }
        if let Some(&c) = self.memo[level].get(span) {
            return c;
        }
        let mut total = 0u128;
        for s in 0..self.multiplicity[level].len() {
            let m = self.multiplicity[level][s];
            if m == 0 || span.get(s) {
                continue;
            }
            let next = self.adjoin(span, s);
            total += m * self.count(level + 1, &next);
        }
        self.memo[level].insert(span.clone(), total);
        total
    }

    fn collect(&mut self, level: usize, span: &Bits) {
        if level == self.n {
            self.keys
                .insert(self.images.iter().map(|&y| y as u32).collect());
            return;
        }
        for c in 0..self.candidates[level].len() {
            let (y, s) = self.candidates[level][c];
            if span.get(s) {
                continue;
            }
            self.images[level] = y;
            let next = self.adjoin(span, s);
            self.collect(level + 1, &next);
        }
    }
}
