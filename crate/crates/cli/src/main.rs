//! `clusterclass`: command-line front end.
//!
//! Indices on the command line and in reports are 1-based. Output is JSON
//! with sorted keys (or an indented text rendering of the same data).
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clusterclass::catalog::{verify_tables, Family};
use clusterclass::factor::{column_gcd, exchange_polynomial, k_factors, z_factors};
use clusterclass::io::{
    class_group_value, factoriality_value, k_factor_value, label_value, ledger_value,
    parse_seed, partition_value, seed_to_value,
};
use clusterclass::matrix::{
    build_quiver, mutation_class_with_guard, normalize_isolated, DEFAULT_CANON_GUARD,
};
use clusterclass::{
    class_group, has_principal_coefficients, is_factorial, partner_partition, prime_ledger,
    source_freezing_reduction, BaseRing, ClusterError, FreezingReport, SeedMatrix,
};
use serde_json::{json, Value};

const GUARD_ENV: &str = "CLUSTERCLASS_CANON_GUARD";

#[derive(Parser)]
#[command(name = "clusterclass", version, about = "Class groups of acyclic cluster algebras")]
struct Cli {
    /// Base ring: Z, Q, algclosed or custom:<orders>.
    #[arg(long, global = true, default_value = "Z", value_parser = parse_ring)]
    ring: BaseRing,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Over a field, drop isolated exchangeable indices before analysis.
    #[arg(long, global = true)]
    normalize_isolated: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct SeedArg {
    /// Seed JSON file, `-` for stdin, inline JSON, or `catalog:<family>`.
    #[arg(long)]
    seed: String,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a seed and echo it with its symmetrizer.
    Validate(SeedArg),
    /// Apply mutations in the given directions, left to right.
    Mutate {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long = "at", value_parser = clap::value_parser!(u64).range(1..))]
        at: Vec<u64>,
    },
    /// Arcs of the ice quiver.
    Quiver(SeedArg),
    /// Whether the exchangeable part of the quiver has no oriented cycle.
    Acyclic(SeedArg),
    /// Mutation class up to relabeling, explored breadth first.
    Class {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Partner sets.
    Partners(SeedArg),
    /// Irreducible factors of every exchange polynomial.
    Factors(SeedArg),
    /// Height-1 primes over the initial exchangeable variables.
    Ledger(SeedArg),
    /// Class-group rank by formula and Smith normal form.
    Rank(SeedArg),
    /// Factoriality criterion with witness.
    Factorial(SeedArg),
    /// Named seed families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Sweep the Dynkin and extended Dynkin tables (same as `catalog verify`).
    Verify(VerifyArgs),
    /// Reduction for non-invertible frozen variables.
    FreezeReport {
        #[command(flatten)]
        seed: SeedArg,
        /// Non-invertible frozen vertices (1-based, between n+1 and n+m).
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
        noninv: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Emit the seed of a family, e.g. `catalog build D 4` or `catalog build A~ 2 2`.
    Build {
        family: String,
        params: Vec<String>,
    },
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    max: usize,
}

fn parse_ring(s: &str) -> Result<BaseRing, String> {
    s.parse().map_err(|e: ClusterError| e.to_string())
}

/// A failure reported as a structured error object.
struct Failure {
    code: &'static str,
    message: String,
    detail: Value,
}

impl From<ClusterError> for Failure {
    fn from(e: ClusterError) -> Self {
        let code = e.code();
        let (message, detail) = match &e {
            ClusterError::NotSignSkewSymmetric { i, j } => (
                format!(
                    "entries b[{0}][{1}] and b[{1}][{0}] violate sign-skew-symmetry",
                    i + 1,
                    j + 1
                ),
                json!({"i": i + 1, "j": j + 1}),
            ),
            ClusterError::NotSkewSymmetrizable { cycle } => {
                let cycle: Vec<usize> = cycle.iter().map(|c| c + 1).collect();
                (
                    format!("principal part is not skew-symmetrizable (inconsistent cycle {cycle:?})"),
                    json!({"cycle": cycle}),
                )
            }
            ClusterError::IndexOutOfRange { index, n } => (
                format!("index {} is not exchangeable (n = {n})", index + 1),
                json!({"index": index + 1, "n": n}),
            ),
            ClusterError::IsolatedIndexOverField { index } => (
                format!(
                    "index {} is isolated; isolated indices must be frozen over a field \
                     (use --normalize-isolated)",
                    index + 1
                ),
                json!({"index": index + 1}),
            ),
            ClusterError::IndexNotFrozen { index } => (
                format!("index {} is not frozen", index + 1),
                json!({"index": index + 1}),
            ),
            ClusterError::GcdTooLarge { index } => (
                format!("column gcd of index {} does not fit in 64 bits", index + 1),
                json!({"index": index + 1}),
            ),
            ClusterError::ShapeMismatch { rows, cols, found } => (
                e.to_string(),
                json!({"rows": rows, "cols": cols, "found": found}),
            ),
            ClusterError::TooLargeForCanonicalization { size, guard } => (
                e.to_string(),
                json!({"size": size, "guard": guard, "env": GUARD_ENV}),
            ),
            ClusterError::TorsionDetected { factors } => {
                (e.to_string(), json!({"invariant_factors": factors}))
            }
            ClusterError::RankMismatch { formula, snf } => {
                (e.to_string(), json!({"formula": formula, "snf": snf}))
            }
            ClusterError::FactorialityMismatch { criterion, rank } => {
                (e.to_string(), json!({"criterion": criterion, "rank": rank}))
            }
            ClusterError::UnsupportedFamilyParameter { family, reason } => {
                (e.to_string(), json!({"family": family, "reason": reason}))
            }
            ClusterError::PartnerSetTooLarge { size, limit } => {
                (e.to_string(), json!({"size": size, "limit": limit}))
            }
            _ => (e.to_string(), json!({})),
        };
        Failure {
            code,
            message,
            detail,
        }
    }
}

fn io_failure(message: String) -> Failure {
    Failure {
        code: "io_error",
        message,
        detail: json!({}),
    }
}

fn load_seed(source: &str) -> Result<SeedMatrix, Failure> {
    let trimmed = source.trim_start();
    if let Some(spec) = trimmed.strip_prefix("catalog:") {
        return Ok(spec.parse::<Family>()?.build()?);
    }
    let text = if trimmed.starts_with('{') {
        source.to_string()
    } else if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| io_failure(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| io_failure(format!("cannot read {source}: {e}")))?
    };
    Ok(parse_seed(&text)?)
}

fn canon_guard() -> Result<usize, String> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{GUARD_ENV} must be a nonnegative integer, got '{v}'")),
        Err(_) => Ok(DEFAULT_CANON_GUARD),
    }
}

struct Context {
    ring: BaseRing,
    normalize: bool,
}

impl Context {
    /// Load a seed, dropping isolated indices over a field when requested.
    fn analysis_seed(&self, arg: &SeedArg) -> Result<(SeedMatrix, Vec<usize>), Failure> {
        let seed = load_seed(&arg.seed)?;
        if !self.normalize {
            return Ok((seed, Vec::new()));
        }
        let (seed, report) = normalize_isolated(&seed, &self.ring);
        Ok((seed, report.removed.iter().map(|i| i + 1).collect()))
    }
}

fn with_removed(mut v: Value, removed: &[usize], normalize: bool) -> Value {
    if normalize {
        v["removed_isolated"] = json!(removed);
    }
    v
}

fn run(cli: Cli, guard: usize) -> Result<Value, Failure> {
    let ctx = Context {
        ring: cli.ring.clone(),
        normalize: cli.normalize_isolated,
    };
    let ring = &ctx.ring;
    let value = match cli.command {
        Command::Validate(arg) => {
            let seed = load_seed(&arg.seed)?;
            let mut v = seed_to_value(&seed);
            v["symmetrizer"] = json!(seed
                .symmetrizer()
                .iter()
                .map(|d| clusterclass::io::bigint_to_value(d))
                .collect::<Vec<_>>());
            v
        }
        Command::Mutate { seed, at } => {
            let mut s = load_seed(&seed.seed)?;
            for i in at {
                s = s.mutate(i as usize - 1)?;
            }
            seed_to_value(&s)
        }
        Command::Quiver(arg) => {
            let seed = load_seed(&arg.seed)?;
            let quiver = build_quiver(&seed);
            let arcs: Vec<Value> = quiver
                .arcs()
                .map(|(s, t, k)| {
                    json!({"source": s + 1, "target": t + 1, "count": clusterclass::io::bigint_to_value(k)})
                })
                .collect();
            let frozen: Vec<usize> = (seed.n() + 1..=seed.num_rows()).collect();
            json!({"n": seed.n(), "m": seed.m(), "frozen": frozen, "arcs": arcs})
        }
        Command::Acyclic(arg) => {
            let seed = load_seed(&arg.seed)?;
            json!({"acyclic": seed.is_acyclic()})
        }
        Command::Class { seed, cap } => {
            let s = load_seed(&seed.seed)?;
            let class = mutation_class_with_guard(&s, cap, guard)?;
            let seeds: Vec<Value> = class
                .seeds
                .iter()
                .map(|c| {
                    let rep = c.to_seed();
                    let mut v = seed_to_value(&rep);
                    v["acyclic"] = json!(rep.is_acyclic());
                    v
                })
                .collect();
            json!({
                "complete": class.complete,
                "size": class.len(),
                "contains_acyclic": class.contains_acyclic(),
                "seeds": seeds,
            })
        }
        Command::Partners(arg) => {
            let (seed, removed) = ctx.analysis_seed(&arg)?;
            let partition = partner_partition(&seed, ring)?;
            with_removed(
                json!({"ring": ring.to_string(), "blocks": partition_value(&partition)}),
                &removed,
                ctx.normalize,
            )
        }
        Command::Factors(arg) => {
            let (seed, removed) = ctx.analysis_seed(&arg)?;
            let polys = (0..seed.n())
                .map(|i| {
                    let p = exchange_polynomial(&seed, i, ring)?;
                    let labels: Vec<Value> = z_factors(&p).iter().map(label_value).collect();
                    let k: Vec<Value> = k_factors(&p, ring)?.iter().map(k_factor_value).collect();
                    Ok(json!({
                        "index": i + 1,
                        "gcd": column_gcd(&seed, i)?,
                        "constant_two": p.is_constant_two(),
                        "z_factors": labels,
                        "k_factors": k,
                    }))
                })
                .collect::<Result<Vec<_>, ClusterError>>()?;
            with_removed(
                json!({"ring": ring.to_string(), "polynomials": polys}),
                &removed,
                ctx.normalize,
            )
        }
        Command::Ledger(arg) => {
            let (seed, removed) = ctx.analysis_seed(&arg)?;
            with_removed(ledger_value(&prime_ledger(&seed, ring)?), &removed, ctx.normalize)
        }
        Command::Rank(arg) => {
            let (seed, removed) = ctx.analysis_seed(&arg)?;
            let report = class_group(&seed, ring)?;
            let mut v = class_group_value(&report, None);
            v["ring"] = json!(ring.to_string());
            with_removed(v, &removed, ctx.normalize)
        }
        Command::Factorial(arg) => {
            let (seed, removed) = ctx.analysis_seed(&arg)?;
            let mut v = factoriality_value(&is_factorial(&seed, ring)?);
            v["principal_coefficients"] = json!(has_principal_coefficients(&seed));
            v["ring"] = json!(ring.to_string());
            with_removed(v, &removed, ctx.normalize)
        }
        Command::Catalog { action } => match action {
            CatalogAction::Build { family, params } => {
                let spec = if params.is_empty() {
                    family
                } else {
                    format!("{family}:{}", params.join(","))
                };
                let family: Family = spec.parse()?;
                let mut v = seed_to_value(&family.build()?);
                v["family"] = json!(family.to_string());
                v
            }
            CatalogAction::Verify(args) => verify(ring, args.max),
        },
        Command::Verify(args) => verify(ring, args.max),
        Command::FreezeReport { seed, noninv } => {
            let (s, removed) = ctx.analysis_seed(&seed)?;
            let zero_based: Vec<usize> = noninv.iter().map(|&k| k as usize - 1).collect();
            let v = match source_freezing_reduction(&s, &zero_based, ring)? {
                FreezingReport::Applies { class_group } => json!({
                    "applies": true,
                    "statement": "every non-invertible frozen row is non-positive: the cluster \
                                  algebra equals its upper cluster algebra and has the class \
                                  group of the seed with all frozen variables invertible",
                    "class_group": class_group_value(&class_group, None),
                }),
                FreezingReport::Unavailable { row, column } => json!({
                    "applies": false,
                    "row": row + 1,
                    "column": column + 1,
                    "statement": "a non-invertible frozen row has a positive entry; it is not \
                                  known whether non-invertible frozen variables are always prime, \
                                  so no class group is reported",
                }),
            };
            with_removed(v, &removed, ctx.normalize)
        }
    };
    Ok(value)
}

fn verify(ring: &BaseRing, max: usize) -> Value {
    serde_json::to_value(verify_tables(ring, max)).expect("report serializes")
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_inline(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_inline(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{v}"),
        Format::Text => {
            let mut out = String::new();
            render_text(v, 0, &mut out);
            print!("{out}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guard = match canon_guard() {
        Ok(g) => g,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let format = cli.format;
    match run(cli, guard) {
        Ok(v) => {
            emit(&v, format);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let v = json!({"error": {"code": f.code, "message": f.message, "detail": f.detail}});
            emit(&v, format);
            ExitCode::from(1)
        }
    }
}
