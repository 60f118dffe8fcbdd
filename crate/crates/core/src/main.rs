use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use charsub::cache::Cache;
use charsub::classify::{classify_lattice, ClassificationVerdict};
use charsub::config::{jobs_from_env, Caps};
use charsub::group::{parse_partition, GroupShape};
use charsub::harness::{
    build_corpus, claims, oracle_crosscheck, resolve_claims, verify_claims, ClaimReport, Scope,
    VerifyOptions,
};
use charsub::invariance::{GroupContext, SubgroupSummary};
use charsub::lattice::{enumerate_subgroups, Subgroup};
use charsub::Error;

#[derive(Parser)]
#[command(
    name = "charsub",
    version,
    about = "Characteristic and fully invariant subgroups of finite abelian p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the IFI / IC group classes of one group.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List subgroups of one group.
    Enumerate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Kind::Characteristic)]
        kind: Kind,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check registered claims over every group up to an order bound.
    Verify {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// `all` or a comma-separated list of claim ids.
        #[arg(long, default_value = "all")]
        claims: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the internal shortcuts against brute-force oracles.
    Crosscheck {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List registered claims.
    Claims {
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long = "p")]
    prime: u64,
    /// Cyclic exponents, e.g. `1,3` for Z(p) ⊕ Z(p^3); any order.
    #[arg(long)]
    partition: String,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long = "p")]
    prime: u64,
    #[arg(long)]
    max_order: u64,
    /// Worker threads (default: CHARSUB_JOBS or 1).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, conflicts_with = "table")]
    json: bool,
    #[arg(long)]
    table: bool,
    /// Directory for cached lattices.
    #[arg(long)]
    cache: Option<std::path::PathBuf>,
}

impl OutputArgs {
    fn cache(&self) -> Option<Cache> {
        self.cache.as_ref().map(Cache::open)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    All,
    Characteristic,
    FullyInvariant,
}

#[derive(Serialize)]
struct EnumeratedSubgroup {
    #[serde(flatten)]
    summary: SubgroupSummary,
    characteristic: bool,
    fully_invariant: bool,
}

/// Failure of a command, mapped onto the exit code.
enum Failure {
    Error(Error),
    Violations,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_cap() {
        3
    } else {
        match e {
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

fn build_shape(g: &GroupArgs, caps: &Caps) -> charsub::Result<Arc<GroupShape>> {
    let ks = parse_partition(&g.partition)?;
    Ok(Arc::new(GroupShape::with_cap(g.prime, &ks, caps.carrier)?))
}

fn print_json(v: &impl Serialize) {
    // Round-trip through `Value` so object keys come out sorted.
    let v = serde_json::to_value(v).expect("serializable");
    println!(
        "{}",
        serde_json::to_string_pretty(&v).expect("serializable")
    );
}

fn verdict_table(v: &ClassificationVerdict) {
    println!("group          {}", v.shape);
    for (name, val) in [
        ("ifi", v.is_ifi),
        ("ic", v.is_ic),
        ("strongly_ifi", v.is_strongly_ifi),
        ("strongly_ic", v.is_strongly_ic),
        ("weakly_ic", v.is_weakly_ic),
        ("criterion_ifi", v.criterion_ifi),
        ("char_eq_fi", v.char_eq_fi),
    ] {
        println!("{name:<14} {val}");
    }
}

fn subgroup_table(list: &[EnumeratedSubgroup]) {
    println!(
        "{:>8}  {:<6} {:<6} {:<16} generators",
        "order", "char", "fi", "type"
    );
    for s in list {
        let gens: Vec<String> = s
            .summary
            .generators
            .iter()
            .map(|g| {
                format!(
                    "({})",
                    g.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        println!(
            "{:>8}  {:<6} {:<6} {:<16} {}",
            s.summary.order,
            s.characteristic,
            s.fully_invariant,
            s.summary.iso_type.to_string(),
            gens.join(" ")
        );
    }
}

fn report_table(reports: &[ClaimReport]) {
    println!(
        "{:<26} {:<8} {:>7} {:>10} {:>10}",
        "claim", "status", "shapes", "violations", "ms"
    );
    for r in reports {
        let status = serde_json::to_value(r.status).unwrap();
        println!(
            "{:<26} {:<8} {:>7} {:>10} {:>10}",
            r.claim_id,
            status.as_str().unwrap_or_default(),
            r.shapes_checked,
            r.total_violations,
            r.runtime_ms
        );
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let caps = Caps::from_env();
    match cli.command {
        Command::Classify { group, out } => {
            let shape = build_shape(&group, &caps)?;
            let ctx = GroupContext::new(shape);
            let lattice = match out.cache() {
                Some(c) => c.lattice(&ctx),
                None => ctx.lattice(),
            };
            let v = classify_lattice(&lattice);
            if out.table {
                verdict_table(&v);
            } else {
                print_json(&v);
            }
        }
        Command::Enumerate { group, kind, out } => {
            let shape = build_shape(&group, &caps)?;
            let ctx = GroupContext::new(Arc::clone(&shape));
            let entry = |h: &Subgroup, ch: bool, fi: bool| EnumeratedSubgroup {
                summary: SubgroupSummary::of(h),
                characteristic: ch,
                fully_invariant: fi,
            };
            let list: Vec<EnumeratedSubgroup> = match kind {
                Kind::All => enumerate_subgroups(&shape, caps.enumeration)?
                    .iter()
                    .map(|h| entry(h, ctx.is_characteristic(h), ctx.is_fully_invariant(h)))
                    .collect(),
                Kind::Characteristic | Kind::FullyInvariant => {
                    let lattice = match out.cache() {
                        Some(c) => c.lattice(&ctx),
                        None => ctx.lattice(),
                    };
                    lattice
                        .entries
                        .iter()
                        .filter(|e| matches!(kind, Kind::Characteristic) || e.fully_invariant)
                        .map(|e| entry(&e.subgroup, true, e.fully_invariant))
                        .collect()
                }
            };
            if out.table {
                subgroup_table(&list);
            } else {
                print_json(&json!({"shape": *shape, "subgroups": list}));
            }
        }
        Command::Verify {
            corpus,
            claims: spec,
            out,
        } => {
            let selected = resolve_claims(&spec)?;
            let c = build_corpus(corpus.prime, corpus.max_order, caps.carrier)?;
            let cache = out.cache();
            let opts = VerifyOptions {
                jobs: corpus.jobs.or_else(jobs_from_env).unwrap_or(1),
                cache: cache.as_ref(),
                caps,
            };
            let reports = verify_claims(&selected, &c, opts)?;
            emit_reports(&reports, out.table);
            if reports.iter().any(|r| !r.passed()) {
                return Err(Failure::Violations);
            }
        }
        Command::Crosscheck { corpus, out } => {
            let c = build_corpus(corpus.prime, corpus.max_order, caps.carrier)?;
            let opts = VerifyOptions {
                jobs: corpus.jobs.or_else(jobs_from_env).unwrap_or(1),
                cache: None,
                caps,
            };
            let report = oracle_crosscheck(&c, opts)?;
            emit_reports(std::slice::from_ref(&report), out.table);
            if !report.passed() {
                return Err(Failure::Violations);
            }
        }
        Command::Claims { out } => {
            let list: Vec<Value> = claims()
                .iter()
                .map(|c| {
                    json!({
                        "claim_id": c.id,
                        "statement": c.statement,
                        "in_scope": c.scope == Scope::InScope,
                        "note": c.note,
                    })
                })
                .collect();
            if out.table {
                for c in claims() {
                    let scope = if c.scope == Scope::InScope {
                        ""
                    } else {
                        " (out of scope)"
                    };
                    println!("{:<26} {}{}", c.id, c.statement, scope);
                }
            } else {
                print_json(&list);
            }
        }
    }
    Ok(())
}

/// JSON mode writes one compact report per line.
fn emit_reports(reports: &[ClaimReport], table: bool) {
    if table {
        report_table(reports);
        return;
    }
    for r in reports {
        let v = serde_json::to_value(r).expect("serializable");
        println!("{}", serde_json::to_string(&v).expect("serializable"));
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
