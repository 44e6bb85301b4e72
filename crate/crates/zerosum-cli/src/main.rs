//! zerosum-lab command line: exact weighted zero-sum constants, statement
//! verification, conjecture scanning, witnesses and constructions.
//!
//! Exit codes: 0 success (findings included), 1 verification mismatch,
//! 2 search cap or time limit exceeded, 3 invalid input.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zerosum_cli::cache::{self, Cache};
use zerosum_cli::report::{self, VerifyRecord};
use zerosum_cli::scan::{self, WeightPolicy};
use zerosum_cli::suites::{self, Suite, SuiteOpts};
use zerosum_lab::algebra::{poly_divides_check, troi_polynomial};
use zerosum_lab::constructions::{self, ClaimedBadness, ExtremalClaim};
use zerosum_lab::engine;
use zerosum_lab::group::parse_u64_list;
use zerosum_lab::sequence::Sequence;
use zerosum_lab::solver::{self, ConstantKind, SearchConfig};
use zerosum_lab::weights::{WeightFamily, WeightSet};
use zerosum_lab::{Error, GroupSpec};

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_INVALID: u8 = 3;

#[derive(Parser)]
#[command(name = "zerosum-lab", version, about = "Exact weighted zero-sum constants over finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Clone)]
struct GlobalArgs {
    /// Write a JSON report/result to this path
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write a CSV report to this path
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Longest bad sequence accepted before giving up (default 4|G|+8)
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Time limit per compute task in seconds; 0 disables (default 60)
    #[arg(long, global = true)]
    time_limit: Option<u64>,
    /// Worker threads (default: all cores); 1 disables parallelism
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON-lines result cache path
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Seed for all randomized choices
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Re-verify up to 50 random cache hits against fresh computation
    #[arg(long, global = true)]
    audit_cache: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one constant for a (group, weights) pair
    Compute {
        #[arg(long)]
        group: String,
        #[arg(long)]
        weights: String,
        /// dA | ZS | sA | D
        #[arg(long)]
        kind: String,
    },
    /// Run a verification suite
    Verify {
        /// thm1 | thm2 | cor12 | sec4 | thm3 | lemma11 | lemma12 | thm4 | cor31
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        max_p: Option<u64>,
        #[arg(long)]
        max_d: Option<u32>,
        #[arg(long, default_value_t = 200)]
        trials: u32,
    },
    /// Scan the identity ZS_A(G) = |G| - 1 + d_A(G)
    Conjecture {
        /// Sweep cyclic groups Z_2 .. Z_n
        #[arg(long)]
        max_n: Option<u64>,
        /// Additional group (factor list), repeatable
        #[arg(long)]
        group: Vec<String>,
        /// all-subsets | families | random:\<k\>
        #[arg(long, default_value = "families")]
        policy: String,
    },
    /// List weight sets violating d_A(G) <= ceil(D(G)/|A|)
    Openproblem {
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        group: Vec<String>,
        #[arg(long, default_value = "families")]
        policy: String,
    },
    /// Canonical witness for one sequence, or "none"
    Witness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        weights: String,
        /// Elements separated by ';' (residues by ','); ',' also separates
        /// elements for cyclic groups
        #[arg(long)]
        sequence: String,
        /// Require exactly this many terms
        #[arg(long)]
        m: Option<usize>,
    },
    /// Generate a lower-bound sequence and validate its claim
    Construct {
        /// cor12a | cor12b..e | cor12f | cor12g | thm2i | thm2ii | thm2iii
        #[arg(long)]
        statement: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
    },
    /// Build the vanishing polynomial on a support set
    Poly {
        #[arg(long)]
        p: u64,
        /// Exponent set including 0, e.g. 0,2,3
        #[arg(long)]
        b: String,
    },
    /// Check the fixed-length transfer implication on one instance
    Lemma {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        weights: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::SearchCapExceeded { .. } | Error::TimeLimitExceeded { .. } => EXIT_CAP,
        _ => EXIT_INVALID,
    }
}

fn search_config(g: &GlobalArgs) -> SearchConfig {
    SearchConfig {
        max_length_cap: g.cap,
        time_limit: match g.time_limit {
            Some(0) => None,
            Some(secs) => Some(Duration::from_secs(secs)),
            None => Some(Duration::from_secs(60)),
        },
        parallel_branching: g.threads != Some(1),
    }
}

fn open_cache(g: &GlobalArgs) -> Cache {
    match &g.cache {
        Some(path) => Cache::open(path),
        None => Cache::in_memory(),
    }
}

fn parse_group(s: &str) -> Result<GroupSpec, Error> {
    s.parse()
}

fn parse_weights(group: &GroupSpec, s: &str) -> Result<WeightSet, Error> {
    s.parse::<WeightFamily>()?.resolve(group.exponent())
}

fn run(cli: Cli) -> Result<u8, Error> {
    if let Some(threads) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .ok();
    }
    let cfg = search_config(&cli.global);
    match cli.cmd {
        Cmd::Compute {
            ref group,
            ref weights,
            ref kind,
        } => cmd_compute(&cli.global, &cfg, group, weights, kind),
        Cmd::Verify {
            ref suite,
            max_n,
            max_p,
            max_d,
            trials,
        } => cmd_verify(&cli.global, &cfg, suite, max_n, max_p, max_d, trials),
        Cmd::Conjecture {
            max_n,
            ref group,
            ref policy,
        } => cmd_conjecture(&cli.global, &cfg, max_n, group, policy),
        Cmd::Openproblem {
            max_n,
            ref group,
            ref policy,
        } => cmd_openproblem(&cli.global, &cfg, max_n, group, policy),
        Cmd::Witness {
            ref group,
            ref weights,
            ref sequence,
            m,
        } => cmd_witness(&cli.global, group, weights, sequence, m),
        Cmd::Construct {
            ref statement,
            p,
            d,
            r,
            n,
            a,
        } => cmd_construct(statement, p, d, r, n, a),
        Cmd::Poly { p, ref b } => cmd_poly(p, b),
        Cmd::Lemma { n, d, ref weights } => cmd_lemma(&cfg, n, d, weights),
    }
}

fn cmd_compute(
    global: &GlobalArgs,
    cfg: &SearchConfig,
    group: &str,
    weights: &str,
    kind: &str,
) -> Result<u8, Error> {
    let group = parse_group(group)?;
    let weights = parse_weights(&group, weights)?;
    let kind = ConstantKind::parse(kind)?;
    let mut cache = open_cache(global);

    let key = cache::canonical_key(&group, &weights, kind);
    let (json, cached) = match cache.get(&key) {
        Some(entry) => (
            solver::ResultJson {
                group: group.factors().to_vec(),
                weights: weights.values().to_vec(),
                kind: kind.as_str().to_string(),
                value: entry.value.value,
                extremal: entry.value.extremal.clone(),
                nodes: entry.value.nodes,
                elapsed_ms: entry.value.elapsed_ms,
                cap_hit: false,
            },
            true,
        ),
        None => {
            let res = solver::compute(kind, &group, &weights, cfg)?;
            let _ = cache.put(cache::entry_from_result(&group, &weights, &res));
            (res.to_json(&group, &weights), false)
        }
    };

    println!("group     {group}");
    println!(
        "weights   {weights}{}",
        weights
            .family_tag()
            .map(|t| format!(" ({t})"))
            .unwrap_or_default()
    );
    println!("kind      {kind}");
    println!("value     {}", json.value);
    let extremal: Vec<String> = json
        .extremal
        .iter()
        .map(|e| {
            e.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    println!("extremal  {}", if extremal.is_empty() { "(empty)".into() } else { extremal.join(";") });
    println!("nodes     {}", json.nodes);
    println!("elapsed   {} ms{}", json.elapsed_ms, if cached { " (cached)" } else { "" });
    if let Some(path) = &global.json {
        std::fs::write(path, serde_json::to_string_pretty(&json).map_err(io_err)?)
            .map_err(|e| Error::InvalidParam(format!("cannot write json: {e}")))?;
    }
    audit_cache_if_requested(global, cfg, &mut cache)
}

fn io_err(e: serde_json::Error) -> Error {
    Error::InvalidParam(format!("serialization failure: {e}"))
}

fn write_reports(global: &GlobalArgs, records: &[VerifyRecord]) -> Result<(), Error> {
    if let Some(path) = &global.json {
        report::write_json(path, records)
            .map_err(|e| Error::InvalidParam(format!("cannot write json: {e}")))?;
    }
    if let Some(path) = &global.csv {
        report::write_csv(path, records)
            .map_err(|e| Error::InvalidParam(format!("cannot write csv: {e}")))?;
    }
    Ok(())
}

fn audit_cache_if_requested(
    global: &GlobalArgs,
    cfg: &SearchConfig,
    cache: &mut Cache,
) -> Result<u8, Error> {
    if !global.audit_cache {
        return Ok(EXIT_OK);
    }
    let mut keys = cache.keys();
    let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
    for i in (1..keys.len()).rev() {
        keys.swap(i, rng.gen_range(0..=i));
    }
    keys.truncate(50);
    let mut mismatches = 0;
    for key in keys {
        let Some(entry) = cache.get(&key) else { continue };
        let group = GroupSpec::new(&key.group)?;
        let weights = WeightSet::new(&key.weights, group.exponent())?;
        let kind = ConstantKind::parse(&key.kind)?;
        let fresh = solver::compute(kind, &group, &weights, cfg)?;
        if fresh.value != entry.value.value {
            eprintln!(
                "cache audit mismatch: {key:?} cached {} fresh {}",
                entry.value.value, fresh.value
            );
            mismatches += 1;
        }
    }
    Ok(if mismatches > 0 { EXIT_MISMATCH } else { EXIT_OK })
}

fn cmd_verify(
    global: &GlobalArgs,
    cfg: &SearchConfig,
    suite: &str,
    max_n: Option<u64>,
    max_p: Option<u64>,
    max_d: Option<u32>,
    trials: u32,
) -> Result<u8, Error> {
    let suite: Suite = suite.parse()?;
    let opts = SuiteOpts {
        max_n,
        max_p,
        max_d,
        trials,
        seed: global.seed,
        cfg: cfg.clone(),
    };
    let mut cache = open_cache(global);
    let records = suites::run_suite(suite, &opts, &mut cache)?;
    let mut mismatches = 0;
    for r in &records {
        println!("{}", r.line());
        if !r.matched {
            mismatches += 1;
        }
    }
    println!(
        "suite {}: {} records, {} mismatches",
        suite.name(),
        records.len(),
        mismatches
    );
    write_reports(global, &records)?;
    let audit = audit_cache_if_requested(global, cfg, &mut cache)?;
    Ok(if mismatches > 0 || audit != EXIT_OK {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    })
}

fn scan_groups(max_n: Option<u64>, groups: &[String]) -> Result<Vec<GroupSpec>, Error> {
    let mut out = Vec::new();
    if let Some(max_n) = max_n {
        for n in 2..=max_n {
            out.push(GroupSpec::cyclic(n)?);
        }
    }
    for g in groups {
        out.push(parse_group(g)?);
    }
    if out.is_empty() {
        return Err(Error::InvalidParam(
            "give --max-n and/or at least one --group".into(),
        ));
    }
    Ok(out)
}

fn cmd_conjecture(
    global: &GlobalArgs,
    cfg: &SearchConfig,
    max_n: Option<u64>,
    groups: &[String],
    policy: &str,
) -> Result<u8, Error> {
    let groups = scan_groups(max_n, groups)?;
    let policy: WeightPolicy = policy.parse()?;
    let rows = scan::conjecture_scan(&groups, policy, global.seed, cfg)?;
    for row in &rows {
        let status = match row.status {
            scan::ScanStatus::Holds => "holds",
            scan::ScanStatus::Fails => "FAILS",
            scan::ScanStatus::Inconclusive => "inconclusive",
        };
        println!(
            "G={:<8} A={:<24} dA={:<4} ZS={:<4} predicted={:<4} {status}",
            row.group,
            row.weights,
            row.da.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
            row.zs.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
            row.predicted.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
        );
    }
    let summary = scan::summarize(&rows);
    println!(
        "conjecture scan: {} holds, {} fails, {} inconclusive",
        summary.holds, summary.fails, summary.inconclusive
    );
    if summary.fails > 0 {
        println!("counterexample candidates above are findings; exit stays 0");
    }
    if let Some(path) = &global.json {
        let payload = serde_json::json!({ "rows": rows, "summary": summary });
        std::fs::write(path, serde_json::to_string_pretty(&payload).map_err(io_err)?)
            .map_err(|e| Error::InvalidParam(format!("cannot write json: {e}")))?;
    }
    Ok(EXIT_OK)
}

fn cmd_openproblem(
    global: &GlobalArgs,
    cfg: &SearchConfig,
    max_n: Option<u64>,
    groups: &[String],
    policy: &str,
) -> Result<u8, Error> {
    let groups = scan_groups(max_n, groups)?;
    let policy: WeightPolicy = policy.parse()?;
    let rows = scan::openproblem_scan(&groups, policy, global.seed, cfg)?;
    let flagged: Vec<&scan::OpenProblemRow> = rows.iter().filter(|r| r.flagged).collect();
    for row in &rows {
        if row.flagged {
            println!(
                "G={:<8} A={:<24} dA={} > ceil(D/|A|)={} (D={})  FLAGGED",
                row.group, row.weights, row.da, row.bound, row.davenport
            );
        }
    }
    println!(
        "open-problem scan: {} of {} weight sets violate the bound",
        flagged.len(),
        rows.len()
    );
    if let Some(path) = &global.json {
        let payload = serde_json::json!({ "rows": rows });
        std::fs::write(path, serde_json::to_string_pretty(&payload).map_err(io_err)?)
            .map_err(|e| Error::InvalidParam(format!("cannot write json: {e}")))?;
    }
    Ok(EXIT_OK)
}

fn cmd_witness(
    global: &GlobalArgs,
    group: &str,
    weights: &str,
    sequence: &str,
    m: Option<usize>,
) -> Result<u8, Error> {
    let group = parse_group(group)?;
    let weights = parse_weights(&group, weights)?;
    let s = Sequence::parse(&group, sequence)?;
    let witness = match m {
        None => engine::find_weighted_zero_subsequence(&group, &weights, &s)?,
        Some(m) => engine::find_fixed_length_zero_subsequence(&group, &weights, &s, m)?,
    };
    match witness {
        None => println!("none"),
        Some(w) => {
            let json = serde_json::to_string(&w.to_json()).map_err(io_err)?;
            println!("{json}");
            if let Some(path) = &global.json {
                std::fs::write(path, &json)
                    .map_err(|e| Error::InvalidParam(format!("cannot write json: {e}")))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_construct(
    statement: &str,
    p: Option<u64>,
    d: Option<u32>,
    r: Option<u64>,
    n: Option<u64>,
    a: Option<u64>,
) -> Result<u8, Error> {
    let need = |v: Option<u64>, name: &str| {
        v.ok_or_else(|| Error::InvalidParam(format!("--{name} required for this statement")))
    };
    let d_or_1 = d.unwrap_or(1);
    let claims: Vec<ExtremalClaim> = match statement {
        "cor12a" => vec![constructions::basis_sequence(need(p, "p")?, d_or_1)?],
        "cor12b" | "cor12c" | "cor12d" | "cor12e" => {
            let all = constructions::qr_lower_sequence(need(p, "p")?, d_or_1)?;
            let filtered: Vec<ExtremalClaim> = all
                .into_iter()
                .filter(|c| c.source == statement)
                .collect();
            if filtered.is_empty() {
                return Err(Error::EmptyWeightSet(statement.into()));
            }
            filtered
        }
        "cor12f" => vec![constructions::pair_sequence(need(p, "p")?, d_or_1, None)?],
        "cor12g" => vec![constructions::repeated_basis_sequence(
            need(p, "p")?,
            d_or_1,
            need(r, "r")?,
        )?],
        "thm2i" => vec![constructions::single_weight_sequence(
            need(n, "n")?,
            need(a, "a")?,
        )?],
        "thm2ii" => vec![constructions::powers_of_two_sequence(
            need(n, "n")?,
            a.unwrap_or(1),
        )?],
        "thm2iii" => vec![constructions::prime_products_sequence(need(n, "n")?)?],
        other => {
            return Err(Error::InvalidParam(format!(
                "no construction for statement {other:?}"
            )))
        }
    };
    for claim in &claims {
        let valid = claim.validate()?;
        println!("statement {}", claim.source);
        println!(
            "sequence  {}",
            if claim.sequence.is_empty() {
                "(empty)".to_string()
            } else {
                claim.sequence.to_string()
            }
        );
        println!("weights   {}", claim.weights);
        match claim.badness {
            ClaimedBadness::ZeroSumFree => println!("claim     zero-sum free"),
            ClaimedBadness::NoExactLength { m } => println!("claim     no exact-length-{m} zero sum"),
        }
        println!("verdict   {}", if valid { "valid" } else { "INVALID" });
    }
    Ok(EXIT_OK)
}

fn cmd_poly(p: u64, b: &str) -> Result<u8, Error> {
    let b = parse_u64_list(b)?;
    let f = troi_polynomial(&b, p)?;
    let r = b.iter().filter(|&&x| x != 0).collect::<std::collections::HashSet<_>>().len();
    println!("f(x) = {f}  over F_{p}");
    let (divisible, cofactor) = poly_divides_check(&f, r as u32);
    println!("(1-x)^{r} divides f: {divisible}");
    if let Some(cof) = cofactor {
        println!("cofactor F(x) = {cof}");
    }
    println!("f(0) = {}", f.eval(0));
    Ok(EXIT_OK)
}

fn cmd_lemma(cfg: &SearchConfig, n: u64, d: u32, weights: &str) -> Result<u8, Error> {
    let group = GroupSpec::new(&vec![n; d as usize])?;
    let weights = parse_weights(&group, weights)?;
    let rec = solver::lemma31_check(n, d, &weights, cfg)?;
    println!("G = Z_{n}^{d}, A = {weights}");
    println!("d_A = {}  s_A = {}  ZS_A = {}", rec.da, rec.sa, rec.zs);
    println!(
        "hypothesis s_A = d_A + n - 1: {}",
        if rec.hypothesis_holds { "holds" } else { "fails (instance vacuous)" }
    );
    println!(
        "conclusion ZS_A = d_A + n^d - 1: {}",
        if rec.conclusion_holds { "holds" } else { "fails" }
    );
    println!(
        "implication: {}",
        if rec.implication_holds { "verified" } else { "VIOLATED" }
    );
    Ok(if rec.implication_holds { EXIT_OK } else { EXIT_MISMATCH })
}
