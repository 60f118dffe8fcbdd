use std::sync::Arc;

use serde_json::{json, Value};

use super::ShapeData;
use crate::classify::{classify_lattice, ifi_criterion};
use crate::error::Result;
use crate::group::GroupShape;
use crate::invariance::{
    is_fully_transitive, kaplansky_2group_predicate, power_of_summands, project_onto,
    projection_profile, GroupContext, SubgroupSummary,
};
use crate::lattice::Subgroup;

/// Largest `|λ ⊔ λ|` for the doubling claims.
pub const DOUBLED_ORDER_LIMIT: u64 = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    InScope,
    /// Recorded so the registry lists it, never run.
    OutOfScope,
}

pub type Checker = fn(&ShapeData) -> Result<Vec<Value>>;

pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub scope: Scope,
    pub note: Option<&'static str>,
    pub applies: fn(&GroupShape) -> bool,
    /// Shapes on which the checked statement is an adaptation of the original.
    pub adapted: fn(&GroupShape) -> bool,
    pub check: Checker,
}

fn always(_: &GroupShape) -> bool {
    true
}

fn never(_: &GroupShape) -> bool {
    false
}

fn is_two(g: &GroupShape) -> bool {
    g.prime() == 2
}

fn is_odd(g: &GroupShape) -> bool {
    g.prime() != 2
}

fn doubling_fits(g: &GroupShape) -> bool {
    g.order()
        .checked_mul(g.order())
        .is_some_and(|o| o <= DOUBLED_ORDER_LIMIT)
}

fn small_exponents(g: &GroupShape) -> bool {
    g.exponents().iter().all(|&k| k <= 2)
}

fn example_shape(g: &GroupShape) -> bool {
    g.prime() == 2 && matches!(g.exponents(), [1, k] if k % 2 == 1 && (3..=9).contains(k))
}

fn sparse(g: &GroupShape) -> bool {
    g.is_sparse()
}

fn out_of_scope(_: &ShapeData) -> Result<Vec<Value>> {
    Ok(Vec::new())
}

fn summary(h: &Subgroup) -> Value {
    json!(SubgroupSummary::of(h))
}

static CLAIMS: &[Claim] = &[
    Claim {
        id: "prop-2.26",
        statement: "A finite abelian 2-group has all characteristic subgroups fully invariant \
                    iff at most two Ulm invariants equal one, and two such are consecutive.",
        scope: Scope::InScope,
        note: None,
        applies: is_two,
        adapted: never,
        check: check_ulm_predicate,
    },
    Claim {
        id: "thm-2.5-i",
        statement: "A p-group is IFI iff pG = 0, or p²G = 0 with r(G) = r(pG).",
        scope: Scope::InScope,
        note: None,
        applies: always,
        adapted: never,
        check: check_ifi_criterion,
    },
    Claim {
        id: "thm-2.5-ii",
        statement: "A p-group is strongly IFI (and strongly IC) iff it is elementary.",
        scope: Scope::InScope,
        note: None,
        applies: always,
        adapted: never,
        check: check_strongly_elementary,
    },
    Claim {
        id: "thm-2.1",
        statement: "G ⊕ G is IFI iff G is IC.",
        scope: Scope::InScope,
        note: Some("checked at multiplicity 2 for |G ⊕ G| ≤ 1024"),
        applies: doubling_fits,
        adapted: never,
        check: check_doubling_ifi_ic,
    },
    Claim {
        id: "prop-2.15",
        statement: "Every characteristic subgroup of G ⊕ G is fully invariant.",
        scope: Scope::InScope,
        note: Some("checked for |G ⊕ G| ≤ 1024"),
        applies: doubling_fits,
        adapted: never,
        check: check_doubling_char_fi,
    },
    Claim {
        id: "lemma-2.14",
        statement: "For G = A ⊕ B and H characteristic, f(π_A(H)) ⊆ H for every \
                    f: A → B, and π_A(H) is characteristic in A.",
        scope: Scope::InScope,
        note: Some("every split of the ordered partition into a prefix and a suffix, both ways"),
        applies: always,
        adapted: never,
        check: check_split_projections,
    },
    Claim {
        id: "lemma-2.17",
        statement: "For H characteristic, ⊕(H ∩ G_i) and ⊕π_i(H) are characteristic.",
        scope: Scope::InScope,
        note: None,
        applies: always,
        adapted: never,
        check: check_summand_constructions,
    },
    Claim {
        id: "lemma-2.25",
        statement: "A characteristic H has π_k(H) = p^{n_k}B_k with n_k ≤ n_{k+r} ≤ n_k + r; \
                    if n_k < k then p^{n_k+r}B_{k+r} ⊆ H; if r(B_k) ≥ 2 then π_k(H) ⊆ H.",
        scope: Scope::InScope,
        note: Some(
            "adapted statement on sparse partitions: constraints over present exponents only",
        ),
        applies: always,
        adapted: sparse,
        check: check_projection_profiles,
    },
    Claim {
        id: "sec-2.1-lemma",
        statement: "If p²G = 0, every characteristic subgroup is fully invariant.",
        scope: Scope::InScope,
        note: None,
        applies: small_exponents,
        adapted: never,
        check: check_char_eq_fi,
    },
    Claim {
        id: "prop-2.16",
        statement: "A bounded p-group is not weakly IC.",
        scope: Scope::InScope,
        note: Some("bounded-case instance: finite groups have no proper subgroup isomorphic to G"),
        applies: always,
        adapted: never,
        check: check_weakly_ic,
    },
    Claim {
        id: "example-2.18",
        statement: "<a_1 + 2^i a_2> is characteristic in Z(2) ⊕ Z(2^{2i+1}).",
        scope: Scope::InScope,
        note: Some("i = 1..4"),
        applies: example_shape,
        adapted: never,
        check: check_example_family,
    },
    Claim {
        id: "remark-2.17",
        statement:
            "For odd p, G = A ⊕ B and H characteristic, a member a + b of H gives 2a ∈ H ∩ A.",
        scope: Scope::InScope,
        note: None,
        applies: is_odd,
        adapted: never,
        check: check_odd_split_doubling,
    },
    Claim {
        id: "definition-implications",
        statement: "Strongly IC implies IC and strongly IFI; IC implies IFI.",
        scope: Scope::InScope,
        note: None,
        applies: always,
        adapted: never,
        check: check_implications,
    },
    Claim {
        id: "odd-p-char-eq-fi",
        statement: "For odd p, every characteristic subgroup is fully invariant.",
        scope: Scope::InScope,
        note: Some("exploratory: a violation is a finding, not a defect"),
        applies: is_odd,
        adapted: never,
        check: check_char_eq_fi,
    },
    Claim {
        id: "fully-transitive",
        statement: "Finite abelian p-groups are fully transitive.",
        scope: Scope::InScope,
        note: Some("classical result, checked as a consistency test"),
        applies: always,
        adapted: never,
        check: check_fully_transitive,
    },
    Claim {
        id: "thm-2.5-i-torsion-free",
        statement: "Torsion-free IFI/IC groups are homogeneous of idempotent type.",
        scope: Scope::OutOfScope,
        note: Some("torsion-free groups are not finite"),
        applies: never,
        adapted: never,
        check: out_of_scope,
    },
    Claim {
        id: "thm-2.5-i-divisible",
        statement: "Divisible groups in the IFI classification.",
        scope: Scope::OutOfScope,
        note: Some("nonzero divisible groups are not finite"),
        applies: never,
        adapted: never,
        check: out_of_scope,
    },
    Claim {
        id: "thm-2.1-ipi",
        statement: "The IPI clause of the G^(m) equivalence.",
        scope: Scope::OutOfScope,
        note: Some("the class is not defined in the source"),
        applies: never,
        adapted: never,
        check: out_of_scope,
    },
    Claim {
        id: "lemma-2.27-2.30",
        statement: "Separable-group lemmas.",
        scope: Scope::OutOfScope,
        note: Some("concern unbounded groups"),
        applies: never,
        adapted: never,
        check: out_of_scope,
    },
];

pub fn claims() -> &'static [Claim] {
    CLAIMS
}

pub fn claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

fn check_ulm_predicate(d: &ShapeData) -> Result<Vec<Value>> {
    let lattice = d.lattice();
    let eq = lattice.char_equals_fi();
    let pred = kaplansky_2group_predicate(d.shape())?;
    if eq == pred {
        return Ok(Vec::new());
    }
    let witness = lattice
        .characteristic()
        .find(|e| !e.fully_invariant)
        .map(|e| summary(&e.subgroup));
    Ok(vec![json!({
        "char_eq_fi": eq,
        "predicate": pred,
        "ulm_invariants": d.shape().ulm_invariants(),
        "subgroup": witness,
    })])
}

fn check_ifi_criterion(d: &ShapeData) -> Result<Vec<Value>> {
    let v = classify_lattice(d.lattice());
    let crit = ifi_criterion(d.shape());
    Ok(if v.is_ifi == crit {
        Vec::new()
    } else {
        vec![json!({"is_ifi": v.is_ifi, "criterion": crit, "witness": v.witnesses.ifi})]
    })
}

fn check_strongly_elementary(d: &ShapeData) -> Result<Vec<Value>> {
    let v = classify_lattice(d.lattice());
    let elementary = d.shape().exponents().iter().all(|&k| k == 1);
    let mut out = Vec::new();
    if v.is_strongly_ifi != elementary {
        out.push(json!({"strongly_ifi": v.is_strongly_ifi, "elementary": elementary}));
    }
    if v.is_strongly_ic != elementary {
        out.push(json!({"strongly_ic": v.is_strongly_ic, "elementary": elementary}));
    }
    Ok(out)
}

fn check_doubling_ifi_ic(d: &ShapeData) -> Result<Vec<Value>> {
    let ic = classify_lattice(d.lattice()).is_ic;
    let doubled = Arc::new(d.shape().doubled()?);
    let ifi2 = classify_lattice(&d.lattice_of(Arc::clone(&doubled))).is_ifi;
    Ok(if ic == ifi2 {
        Vec::new()
    } else {
        vec![json!({"ic": ic, "doubled": doubled.to_string(), "doubled_ifi": ifi2})]
    })
}

fn check_doubling_char_fi(d: &ShapeData) -> Result<Vec<Value>> {
    let doubled = Arc::new(d.shape().doubled()?);
    let lattice = d.lattice_of(Arc::clone(&doubled));
    Ok(lattice
        .characteristic()
        .filter(|e| !e.fully_invariant)
        .take(1)
        .map(|e| json!({"doubled": doubled.to_string(), "subgroup": summary(&e.subgroup)}))
        .collect())
}

fn check_char_eq_fi(d: &ShapeData) -> Result<Vec<Value>> {
    Ok(d.lattice()
        .characteristic()
        .filter(|e| !e.fully_invariant)
        .map(|e| json!({"characteristic_not_fully_invariant": summary(&e.subgroup)}))
        .collect())
}

fn check_weakly_ic(d: &ShapeData) -> Result<Vec<Value>> {
    let shape = d.shape();
    Ok(d.lattice()
        .characteristic()
        .filter(|e| !e.subgroup.is_whole() && e.iso_type == **shape)
        .map(|e| json!({"proper_characteristic_isomorphic_to_g": summary(&e.subgroup)}))
        .collect())
}

fn check_example_family(d: &ShapeData) -> Result<Vec<Value>> {
    let g = d.shape();
    let i = (g.exponents()[1] - 1) / 2;
    let h = Subgroup::span(g, &[g.element(&[1, 1 << i])?])?;
    Ok(if d.ctx.is_characteristic(&h) {
        Vec::new()
    } else {
        vec![json!({"i": i, "subgroup": summary(&h)})]
    })
}

fn check_implications(d: &ShapeData) -> Result<Vec<Value>> {
    let v = classify_lattice(d.lattice());
    let ok = (!v.is_strongly_ic || (v.is_ic && v.is_strongly_ifi)) && (!v.is_ic || v.is_ifi);
    Ok(if ok { Vec::new() } else { vec![json!(v)] })
}

fn check_fully_transitive(d: &ShapeData) -> Result<Vec<Value>> {
    Ok(if is_fully_transitive(&d.ctx) {
        Vec::new()
    } else {
        vec![json!({"fully_transitive": false})]
    })
}

/// `(A, B)` summand index sets for every prefix/suffix split, both ways round.
fn splits(rank: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for t in 1..rank {
        let pre: Vec<usize> = (0..t).collect();
        let suf: Vec<usize> = (t..rank).collect();
        out.push((pre.clone(), suf.clone()));
        out.push((suf, pre));
    }
    out
}

/// Re-indexes a subgroup supported on `summands` into the shape `sub`.
fn restrict(h: &Subgroup, summands: &[usize], sub: &Arc<GroupShape>) -> Subgroup {
    let g = h.shape();
    // `select` sorts exponents; summands are ascending already, so order is kept.
    let gens: Vec<usize> = h
        .generator_indices()
        .iter()
        .map(|&x| {
            let coords: Vec<u64> = summands.iter().map(|&i| g.digit(x, i)).collect();
            sub.encode(&coords)
        })
        .collect();
    Subgroup::span_indices(sub, &gens)
}

fn check_split_projections(d: &ShapeData) -> Result<Vec<Value>> {
    let g = d.shape();
    let chars: Vec<&Subgroup> = d.lattice().characteristic().map(|e| &e.subgroup).collect();
    let mut out = Vec::new();
    for (a, b) in splits(g.rank()) {
        let a_shape = Arc::new(g.select(&a));
        let a_ctx = GroupContext::new(Arc::clone(&a_shape));
        let homs: Vec<_> = b
            .iter()
            .flat_map(|&i| a.iter().map(move |&j| (i, j)))
            .map(|(i, j)| crate::endo::EndoMatrix::single_entry(g, i, j))
            .collect();
        for h in &chars {
            let proj = project_onto(h, &a);
            for f in &homs {
                let inside = proj
                    .generator_indices()
                    .iter()
                    .all(|&x| h.contains_idx(f.apply_idx(x)));
                if !inside {
                    out.push(
                        json!({"a": a, "b": b, "subgroup": summary(h), "failure": "f(π_A(H)) ⊄ H"}),
                    );
                }
            }
            if !a_ctx.is_characteristic(&restrict(&proj, &a, &a_shape)) {
                out.push(json!({"a": a, "b": b, "subgroup": summary(h), "failure": "π_A(H) not characteristic in A"}));
            }
        }
    }
    Ok(out)
}

fn check_summand_constructions(d: &ShapeData) -> Result<Vec<Value>> {
    let g = d.shape();
    let mut out = Vec::new();
    for e in d.lattice().characteristic() {
        let h = &e.subgroup;
        let intersections: Vec<usize> = (0..g.rank())
            .flat_map(|i| {
                h.member_indices()
                    .filter(move |&x| (0..g.rank()).all(|j| j == i || g.digit(x, j) == 0))
            })
            .collect();
        let inner = Subgroup::span_indices(g, &intersections);
        let projections: Vec<usize> = (0..g.rank())
            .flat_map(|i| {
                h.generator_indices()
                    .iter()
                    .map(move |&x| (g.digit(x, i) * g.stride(i)) as usize)
            })
            .collect();
        let outer = Subgroup::span_indices(g, &projections);
        for (name, s) in [("⊕(H ∩ G_i)", &inner), ("⊕π_i(H)", &outer)] {
            if !d.ctx.is_characteristic(s) {
                out.push(
                    json!({"subgroup": summary(h), "construction": name, "result": summary(s)}),
                );
            }
        }
    }
    Ok(out)
}

fn check_projection_profiles(d: &ShapeData) -> Result<Vec<Value>> {
    let g = d.shape();
    let layers = g.layers();
    let mut out = Vec::new();
    for e in d.lattice().characteristic() {
        let h = &e.subgroup;
        let prof = match projection_profile(&d.ctx, h) {
            Ok(p) => p,
            Err(err) => {
                out.push(json!({"subgroup": summary(h), "failure": err.to_string()}));
                continue;
            }
        };
        if !prof.is_admissible() {
            out.push(json!({"subgroup": summary(h), "failure": "inequalities", "profile": prof.n_values}));
        }
        for (a, (k, idx)) in layers.iter().enumerate() {
            let nk = prof.n(*k).unwrap_or(*k);
            if nk < *k {
                for (k2, idx2) in &layers[a + 1..] {
                    let r = k2 - k;
                    let part = power_of_summands(g, idx2, nk + r);
                    if !h.contains_subgroup(&part)? {
                        out.push(json!({"subgroup": summary(h), "failure": "p^{n_k+r}B_{k+r} ⊄ H", "k": k, "r": r}));
                    }
                }
            }
            if idx.len() >= 2 && !h.contains_subgroup(&project_onto(h, idx))? {
                out.push(json!({"subgroup": summary(h), "failure": "π_k(H) ⊄ H", "k": k}));
            }
        }
    }
    Ok(out)
}

fn check_odd_split_doubling(d: &ShapeData) -> Result<Vec<Value>> {
    let g = d.shape();
    let mut out = Vec::new();
    for (a, _) in splits(g.rank()) {
        for e in d.lattice().characteristic() {
            let h = &e.subgroup;
            let bad = h.member_indices().find(|&x| {
                let pa: usize = a
                    .iter()
                    .map(|&i| (g.digit(x, i) * g.stride(i)) as usize)
                    .sum();
                pa != 0 && !h.contains_idx(g.scale_idx(2, pa))
            });
            if let Some(x) = bad {
                out.push(json!({"a": a, "subgroup": summary(h), "member": g.decode(x)}));
            }
        }
    }
    Ok(out)
}
