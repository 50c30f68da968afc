use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use exa_core::construct::{build_klikk, build_star_k, build_triangle_k, build_unique_kab};
use exa_core::game::{solve, sweep_small_patterns, Cost, SolverOptions};
use exa_core::oracle::{
    ex_oracle, exa_oracle, exa_prime_oracle, exa_set_oracle, triangle_free_non_bipartite, zeta_with_witness,
    SearchOptions,
};
use exa_core::partition::{is_unique_partition, mup_series_check, mup_with_budget, PartitionPair, DEFAULT_MUP_NODES};
use exa_core::verify::{run_suite, Suite, VerifyOptions, DEFAULT_SEED};
use exa_core::{count_copies, Error, Graph, GraphFamily};

#[derive(Parser)]
#[command(
    name = "exa",
    version,
    about = "Exact extremal numbers, constructions, partitions and query games on small graphs"
)]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Wall-clock budget for exhaustive searches, in seconds.
    #[arg(long, global = true)]
    budget: Option<f64>,
    /// Seed for randomized re-checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count copies of a pattern in a host graph.
    Count {
        /// Host graph as graph6 or @file.
        #[arg(long)]
        host: String,
        /// Pattern graph as graph6 or @file.
        #[arg(long)]
        pattern: String,
    },
    /// Exhaustive extremal searches.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        #[command(flatten)]
        args: OracleArgs,
    },
    /// Explicit extremal constructions with recounted contracts.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Partition pair for `kab`, e.g. `1,1/2` (default: an optimal one).
        #[arg(long)]
        partition: Option<String>,
    },
    /// Unique partitions and mup.
    Mup {
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        /// Check one partition pair, e.g. `3,3/13,13,13,13,1`.
        #[arg(long)]
        check: Option<String>,
        /// Tabulate mup(n, C) for C < n <= n-max.
        #[arg(long, value_name = "C")]
        series: Option<u32>,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
        /// Print the series table as CSV.
        #[arg(long)]
        csv: bool,
        /// Branch-and-bound node limit.
        #[arg(long, default_value_t = DEFAULT_MUP_NODES)]
        max_nodes: u64,
    },
    /// Exact minimax values of the edge-query game.
    Game {
        #[arg(value_enum)]
        kind: GameKind,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long)]
        family: Option<String>,
        /// Disable the vertex-permutation reduction.
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long, default_value_t = SolverOptions::default().max_states)]
        max_states: u64,
    },
    /// Run named check suites.
    Verify {
        /// Suite name or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Ex,
    Exa,
    ExaSet,
    ExaPrime,
    Zeta,
    Brouwer,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    k: Option<u64>,
    /// Allowed counts for `exa-set`, comma separated.
    #[arg(long, value_delimiter = ',')]
    set: Vec<u64>,
    /// Pattern for `zeta`, as graph6 or @file.
    #[arg(long)]
    graph: Option<String>,
    /// Allow orders above 8.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Klikk,
    Triangle,
    Kab,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameKind {
    #[value(name = "L")]
    L,
    #[value(name = "x")]
    X,
    #[value(name = "xprime")]
    XPrime,
    #[value(name = "sweep")]
    Sweep,
}

enum Failure {
    Usage(String),
    Unsolved(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsolved(_) => Failure::Unsolved(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// What a command produced: the document and its exit status.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Unsolved(msg)) => {
            eprintln!("unsolved: {msg}");
            ExitCode::from(2)
        }
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn read_graph(arg: &str) -> Result<Graph, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            let body = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            body.lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .ok_or_else(|| Failure::Usage(format!("{path}: no graph found")))?
                .to_string()
        }
        None => arg.to_string(),
    };
    Ok(exa_core::graph6::decode(&text)?)
}

fn read_family(arg: Option<&String>) -> Result<GraphFamily, Failure> {
    Ok(need(arg, "family")?.parse()?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let search = SearchOptions {
        budget: cli.budget.map(Duration::from_secs_f64),
        allow_large: matches!(&cli.command, Command::Oracle { args, .. } if args.allow_large),
    };
    match &cli.command {
        Command::Count { host, pattern } => {
            let (h, f) = (read_graph(host)?, read_graph(pattern)?);
            let c = count_copies(&h, &f).value();
            Ok(Outcome::ok(
                format!("{c}\n"),
                json!({ "host": h, "pattern": f, "copies": c }),
            ))
        }
        Command::Oracle { kind, args } => oracle(*kind, args, &search),
        Command::Construct {
            kind,
            n,
            r,
            k,
            a,
            b,
            partition,
        } => {
            let rep = match kind {
                ConstructKind::Klikk => build_klikk(need(*n, "n")?, need(*r, "r")?)?,
                ConstructKind::Triangle => build_triangle_k(need(*n, "n")?, need(*k, "k")?)?,
                ConstructKind::Star => build_star_k(need(*n, "n")?, need(*r, "r")?, need(*k, "k")?)?,
                ConstructKind::Kab => {
                    let (a, b) = (need(*a, "a")?, need(*b, "b")?);
                    let pp = match partition {
                        Some(s) => s.parse()?,
                        None => exa_core::partition::mup(a as u32, b as u32)?
                            .witness
                            .ok_or_else(|| Failure::Usage(format!("({a}, {b}) has no unique partition")))?,
                    };
                    build_unique_kab(a, b, &pp)?
                }
            };
            let text = format!(
                "{}\nedges {} (expected {}), copies {} (expected {}), {}\n",
                rep.graph,
                rep.actual_edges,
                rep.expected_edges,
                rep.actual_copies,
                rep.expected_copies,
                if rep.ok { "ok" } else { "MISMATCH" }
            );
            let code = if rep.ok { 0 } else { 3 };
            Ok(Outcome {
                text,
                json: to_value(&rep),
                code,
            })
        }
        Command::Mup {
            a,
            b,
            check,
            series,
            n_max,
            csv,
            max_nodes,
        } => {
            if let Some(c) = series {
                let rep = mup_series_check(*c, *n_max)?;
                let text = if *csv {
                    rep.to_csv()
                } else {
                    let mut t = rep.to_csv();
                    t.push_str(&format!(
                        "nu {}, divisor property {}, stable from {}\n",
                        rep.nu,
                        rep.divisor_property,
                        rep.stable_from.map_or("-".to_string(), |s| s.to_string())
                    ));
                    t
                };
                let code = if !rep.unsolved.is_empty() { 2 } else { 0 };
                return Ok(Outcome {
                    text,
                    json: to_value(&rep),
                    code,
                });
            }
            let (a, b) = (need(*a, "a")?, need(*b, "b")?);
            if let Some(s) = check {
                let pp: PartitionPair = s.parse()?;
                let unique = is_unique_partition(a, b, &pp)?;
                return Ok(Outcome::ok(
                    format!("unique={unique}\n"),
                    json!({ "a": a, "b": b, "partition": pp, "unique": unique }),
                ));
            }
            let res = mup_with_budget(a, b, *max_nodes)?;
            let w = res.witness.as_ref().map_or("-".to_string(), ToString::to_string);
            Ok(Outcome::ok(
                format!("mup({a}, {b}) = {} witness {w}\n", res.value),
                to_value(&res),
            ))
        }
        Command::Game {
            kind,
            n,
            family,
            no_symmetry,
            max_states,
        } => {
            if let GameKind::Sweep = kind {
                let rows = sweep_small_patterns(*n)?;
                let mut text = String::from("pattern n exa1 exa1' L x x' x_gap x'_gap\n");
                for r in &rows {
                    text.push_str(&format!(
                        "{} {} {} {} {} {} {} {} {}\n",
                        r.pattern, r.n, r.exa1, r.exa1_prime, r.l, r.x, r.x_prime, r.x_gap, r.x_prime_gap
                    ));
                }
                return Ok(Outcome::ok(text, to_value(&rows)));
            }
            let cost = match kind {
                GameKind::L => Cost::L,
                GameKind::X => Cost::X,
                _ => Cost::XPrime,
            };
            let fam = read_family(family.as_ref())?;
            let gv = solve(
                *n,
                &fam,
                cost,
                SolverOptions {
                    symmetry: !no_symmetry,
                    max_states: *max_states,
                },
            )?;
            let moves: Vec<String> = gv.first_moves.iter().map(|(u, v)| format!("{u}{v}")).collect();
            let text = match gv.value {
                Some(v) => format!("{cost}({n}, {fam}) = {v}\nfirst moves: {}\n", moves.join(" ")),
                None => format!("{cost}({n}, {fam}) unsolved after {} states\n", gv.states_explored),
            };
            let json = json!({
                "value": gv.value,
                "first_moves": gv.first_moves,
                "states_explored": gv.states_explored,
                "complete": gv.complete,
            });
            Ok(Outcome {
                text,
                json,
                code: if gv.complete { 0 } else { 2 },
            })
        }
        Command::Verify { suite, n_max } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let opts = VerifyOptions {
                n_max: *n_max,
                seed: cli.seed,
                budget: search.budget,
            };
            let mut text = String::new();
            let mut docs = Vec::new();
            let mut passed = true;
            for s in suites {
                let rep = run_suite(s, &opts)?;
                passed &= rep.passed;
                text.push_str(&rep.to_text());
                docs.push(to_value(&rep));
            }
            let json = if docs.len() == 1 {
                docs.pop().unwrap_or(Value::Null)
            } else {
                Value::Array(docs)
            };
            Ok(Outcome {
                text,
                json,
                code: if passed { 0 } else { 3 },
            })
        }
    }
}

fn oracle(kind: OracleKind, args: &OracleArgs, search: &SearchOptions) -> Result<Outcome, Failure> {
    let result = |r: exa_core::oracle::OracleResult, label: String| {
        let text = match (r.value, &r.witness) {
            (Some(v), Some(w)) => format!("{label} = {v}\nwitness {w}\n"),
            _ => format!("{label}: no qualifying graph\n"),
        };
        let text = if r.complete {
            text
        } else {
            format!("{text}(incomplete: budget exhausted)\n")
        };
        let json = json!({
            "value": r.value,
            "witness_graph6": r.witness,
            "explored": r.explored,
            "complete": r.complete,
        });
        Outcome {
            text,
            json,
            code: if r.complete { 0 } else { 2 },
        }
    };
    match kind {
        OracleKind::Zeta => {
            let g = read_graph(need(args.graph.as_ref(), "graph")?)?;
            let (z, attach) = zeta_with_witness(&g)?;
            Ok(Outcome::ok(
                format!("zeta = {z}\n"),
                json!({ "graph": g, "value": z, "attachment": attach }),
            ))
        }
        OracleKind::Brouwer => {
            let n = need(args.n, "n")?;
            Ok(result(
                triangle_free_non_bipartite(n, search)?,
                format!("triangle-free non-bipartite max edges on {n}"),
            ))
        }
        OracleKind::Ex => {
            let (n, fam) = (need(args.n, "n")?, read_family(args.family.as_ref())?);
            Ok(result(ex_oracle(n, &fam, search)?, format!("ex({n}, {fam})")))
        }
        OracleKind::Exa => {
            let (n, fam, k) = (
                need(args.n, "n")?,
                read_family(args.family.as_ref())?,
                need(args.k, "k")?,
            );
            Ok(result(exa_oracle(n, k, &fam, search)?, format!("exa_{k}({n}, {fam})")))
        }
        OracleKind::ExaSet => {
            let (n, fam) = (need(args.n, "n")?, read_family(args.family.as_ref())?);
            if args.set.is_empty() {
                return Err(Failure::Usage("missing --set".into()));
            }
            let set: Vec<String> = args.set.iter().map(u64::to_string).collect();
            Ok(result(
                exa_set_oracle(n, &args.set, &fam, search)?,
                format!("exa_{{{}}}({n}, {fam})", set.join(",")),
            ))
        }
        OracleKind::ExaPrime => {
            let (n, fam) = (need(args.n, "n")?, read_family(args.family.as_ref())?);
            let r = exa_prime_oracle(n, &fam, search)?;
            let text = match (r.value, &r.witness, &r.member) {
                (Some(v), Some(w), Some(m)) => format!("exa'_1({n}, {fam}) = {v}\nwitness {w} member {m}\n"),
                _ => format!("exa'_1({n}, {fam}): no qualifying graph\n"),
            };
            let json = json!({
                "value": r.value,
                "witness_graph6": r.witness,
                "member_graph6": r.member,
                "explored": r.explored,
                "complete": r.complete,
            });
            Ok(Outcome {
                text,
                json,
                code: if r.complete { 0 } else { 2 },
            })
        }
    }
}
