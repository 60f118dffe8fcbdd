//! Exhaustive claim verification over corpora of small p-groups.

mod claims;
mod crosscheck;

pub use claims::{claim, claims, Claim, Scope, DOUBLED_ORDER_LIMIT};
pub use crosscheck::{oracle_crosscheck, CROSSCHECK_ID};

use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cache::Cache;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::GroupShape;
use crate::invariance::{CharacteristicLattice, GroupContext};

/// Stored witnesses per claim report; the total is always counted.
pub const MAX_WITNESSES: usize = 16;

/// Every partition `λ` with `p^{Σλ} ≤ max_order`, ordered by number of parts
/// and then lexicographically.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub prime: u64,
    pub max_order: u64,
    pub shapes: Vec<Arc<GroupShape>>,
}

impl Corpus {
    pub fn empty(prime: u64) -> Self {
        Corpus {
            prime,
            max_order: 1,
            shapes: Vec::new(),
        }
    }
}

fn partitions(total: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if total == 0 {
        let mut p = prefix.clone();
        p.reverse();
        out.push(p);
        return;
    }
    for part in (1..=max_part.min(total)).rev() {
        prefix.push(part);
        partitions(total - part, part, prefix, out);
        prefix.pop();
    }
}

pub fn build_corpus(prime: u64, max_order: u64, carrier_cap: u64) -> Result<Corpus> {
    if !crate::group::is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    if max_order > carrier_cap {
        return Err(Error::CarrierCapExceeded {
            prime,
            log_order: max_order.ilog(prime),
            cap: carrier_cap,
        });
    }
    let max_log = if max_order == 0 {
        0
    } else {
        max_order.ilog(prime)
    };
    let mut parts = Vec::new();
    for total in 1..=max_log {
        partitions(total, total, &mut Vec::new(), &mut parts);
    }
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let shapes = parts
        .iter()
        .map(|ks| GroupShape::with_cap(prime, ks, carrier_cap).map(Arc::new))
        .collect::<Result<_>>()?;
    Ok(Corpus {
        prime,
        max_order,
        shapes,
    })
}

/// Per-shape data shared by every checker run on that shape.
pub struct ShapeData<'a> {
    pub ctx: GroupContext,
    lattice: OnceLock<CharacteristicLattice>,
    cache: Option<&'a Cache>,
    pub caps: Caps,
}

impl<'a> ShapeData<'a> {
    pub fn new(shape: Arc<GroupShape>, cache: Option<&'a Cache>, caps: Caps) -> Self {
        ShapeData {
            ctx: GroupContext::new(shape),
            lattice: OnceLock::new(),
            cache,
            caps,
        }
    }

    pub fn shape(&self) -> &Arc<GroupShape> {
        self.ctx.shape()
    }

    pub fn lattice(&self) -> &CharacteristicLattice {
        self.lattice.get_or_init(|| match self.cache {
            Some(c) => c.lattice(&self.ctx),
            None => self.ctx.lattice(),
        })
    }

    /// Lattice of another shape (e.g. `λ ⊔ λ`), through the cache when present.
    pub fn lattice_of(&self, shape: Arc<GroupShape>) -> CharacteristicLattice {
        let ctx = GroupContext::new(shape);
        match self.cache {
            Some(c) => c.lattice(&ctx),
            None => ctx.lattice(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Adapted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub shape: String,
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub prime: u64,
    pub max_order: u64,
    pub shapes_checked: usize,
    pub status: Status,
    pub violations: Vec<Violation>,
    pub total_violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub runtime_ms: u64,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Accumulates per-shape outcomes, in corpus order, into a report.
pub(crate) struct ReportBuilder {
    report: ClaimReport,
    runtime: Duration,
    adapted: bool,
}

impl ReportBuilder {
    pub(crate) fn new(id: &str, corpus: &Corpus, note: Option<&str>) -> Self {
        ReportBuilder {
            report: ClaimReport {
                claim_id: id.to_string(),
                prime: corpus.prime,
                max_order: corpus.max_order,
                shapes_checked: 0,
                status: Status::Pass,
                violations: Vec::new(),
                total_violations: 0,
                note: note.map(str::to_string),
                runtime_ms: 0,
            },
            runtime: Duration::ZERO,
            adapted: false,
        }
    }

    pub(crate) fn add(&mut self, shape: &GroupShape, out: ShapeOutcome) {
        self.report.shapes_checked += 1;
        self.runtime += out.runtime;
        self.adapted |= out.adapted;
        for witness in out.violations {
            self.report.total_violations += 1;
            if self.report.violations.len() < MAX_WITNESSES {
                self.report.violations.push(Violation {
                    shape: shape.to_string(),
                    witness,
                });
            }
        }
    }

    pub(crate) fn finish(mut self) -> ClaimReport {
        self.report.status = if self.report.total_violations > 0 {
            Status::Fail
        } else if self.adapted {
            Status::Adapted
        } else {
            Status::Pass
        };
        self.report.runtime_ms = self.runtime.as_millis() as u64;
        self.report
    }
}

pub(crate) struct ShapeOutcome {
    pub violations: Vec<Value>,
    pub adapted: bool,
    pub runtime: Duration,
}

/// Options for a verification run.
#[derive(Clone, Copy)]
pub struct VerifyOptions<'a> {
    pub jobs: usize,
    pub cache: Option<&'a Cache>,
    pub caps: Caps,
}

impl Default for VerifyOptions<'_> {
    fn default() -> Self {
        VerifyOptions {
            jobs: 1,
            cache: None,
            caps: Caps::default(),
        }
    }
}

/// Resolves `"all"` or a comma-separated list of ids against the registry.
pub fn resolve_claims(spec: &str) -> Result<Vec<&'static Claim>> {
    if spec.trim() == "all" {
        return Ok(claims()
            .iter()
            .filter(|c| c.scope == Scope::InScope)
            .collect());
    }
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|id| match claim(id) {
            Some(c) if c.scope == Scope::InScope => Ok(c),
            _ => Err(Error::UnknownClaim(id.to_string())),
        })
        .collect()
}

pub fn verify_claim(id: &str, corpus: &Corpus) -> Result<ClaimReport> {
    let c = claim(id)
        .filter(|c| c.scope == Scope::InScope)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))?;
    Ok(verify_claims(&[c], corpus, VerifyOptions::default())?.remove(0))
}

/// Runs every claim on every applicable shape. Shapes are processed in
/// parallel on `jobs` threads; reports are merged in corpus order.
pub fn verify_claims(
    selected: &[&'static Claim],
    corpus: &Corpus,
    opts: VerifyOptions,
) -> Result<Vec<ClaimReport>> {
    let run_shape = |shape: &Arc<GroupShape>| -> Result<Vec<Option<ShapeOutcome>>> {
        let data = ShapeData::new(Arc::clone(shape), opts.cache, opts.caps);
        selected
            .iter()
            .map(|c| {
                if !(c.applies)(shape) {
                    return Ok(None);
                }
                let t = Instant::now();
                let violations = (c.check)(&data)?;
                Ok(Some(ShapeOutcome {
                    violations,
                    adapted: (c.adapted)(shape),
                    runtime: t.elapsed(),
                }))
            })
            .collect()
    };
    let per_shape: Vec<Vec<Option<ShapeOutcome>>> = if opts.jobs <= 1 {
        corpus.shapes.iter().map(run_shape).collect::<Result<_>>()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(|| {
                corpus
                    .shapes
                    .par_iter()
                    .map(run_shape)
                    .collect::<Result<_>>()
            })?
    };
    let mut builders: Vec<ReportBuilder> = selected
        .iter()
        .map(|c| ReportBuilder::new(c.id, corpus, c.note))
        .collect();
    for (shape, outcomes) in corpus.shapes.iter().zip(per_shape) {
        for (b, out) in builders.iter_mut().zip(outcomes) {
            if let Some(out) = out {
                b.add(shape, out);
            }
        }
    }
    Ok(builders.into_iter().map(ReportBuilder::finish).collect())
}

/// Re-runs one claim's checker on a single shape.
pub fn check_shape(id: &str, shape: &Arc<GroupShape>) -> Result<Vec<Value>> {
    let c = claim(id).ok_or_else(|| Error::UnknownClaim(id.to_string()))?;
    (c.check)(&ShapeData::new(Arc::clone(shape), None, Caps::default()))
}

#[cfg(test)]
mod tests;
