use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linset_core::classify::{find_swap_projectivity, is_pseudoregulus_type, Budgets, Check};
use linset_core::endos::Endo;
use linset_core::fields::FieldTower;
use linset_core::ringline::RingPoint;
use linset_core::Error;
use linset_workbench::census::census;
use linset_workbench::checks;
use linset_workbench::{Context, LinearSetReport};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "linset", version, about = "Linear sets on PG(1, q^t) through the projective line over End_q(F_{q^t})")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TowerArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Degree of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Degree of F_{q^t} over F_q.
    #[arg(long)]
    t: u32,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Replace every search limit by N candidates.
    #[arg(long, value_name = "N")]
    budget: Option<u128>,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        match self.budget {
            Some(n) => Budgets {
                beta_scan: n,
                pgl_scan: n,
                swap_search: n,
            },
            None => Budgets::default(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Show the moduli and sizes of a field tower.
    Tower {
        #[command(flatten)]
        tower: TowerArgs,
    },
    /// One row per endomorphism β, for E(1, β).
    Census {
        #[command(flatten)]
        tower: TowerArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
    },
    /// Linear set report and pseudoregulus verdict for E(1, β).
    Classify {
        #[command(flatten)]
        tower: TowerArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// β in the `Q:` or `M:` text form.
        #[arg(long)]
        beta: String,
    },
    /// Run checks; one JSON report per line.
    Verify {
        #[command(flatten)]
        tower: TowerArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// A check id, or `all`.
        #[arg(long)]
        prop: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Include wall time in the reports.
        #[arg(long)]
        timings: bool,
    },
    /// Search for a projectivity mapping L_T onto L'_T for T = E(1, β).
    SwapSearch {
        #[command(flatten)]
        tower: TowerArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        beta: String,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn error_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::NotScattered => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn make_tower(a: &TowerArgs) -> Result<FieldTower, Error> {
    FieldTower::new(a.p, a.e, a.t)
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn check_json<W>(c: &Check<W>, show: impl Fn(&W) -> String) -> serde_json::Value {
    match c {
        Check::Found(w) => json!({ "found": true, "witness": show(w) }),
        Check::Absent => json!({ "found": false }),
        Check::Skipped(r) => json!({ "skipped": r }),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Tower { tower } => {
            let t = make_tower(&tower)?;
            print_json(&json!({
                "p": t.p(),
                "e": t.e(),
                "q": t.q(),
                "t": t.t(),
                "order": t.order(),
                "base_modulus": t.base().modulus(),
                "modulus": t.modulus().iter().map(|&c| t.encode_base(c)).collect::<Vec<_>>(),
                "primitive": t.encode(t.primitive()),
                "tables": t.has_tables(),
            }));
            Ok(0)
        }
        Command::Census { tower, budget, out } => {
            let ctx = Context::new(make_tower(&tower)?, budget.budgets(), 0);
            let rows = census(&ctx)?;
            match out {
                Format::Csv => {
                    println!("{}", linset_workbench::CensusRow::CSV_HEADER);
                    for r in &rows {
                        println!("{}", r.csv());
                    }
                }
                Format::Json => print_json(&rows),
            }
            Ok(0)
        }
        Command::Classify { tower, budget, beta } => {
            let t = make_tower(&tower)?;
            let point = RingPoint::graph(&t, &Endo::decode(&t, &beta)?);
            let report = LinearSetReport::new(&t, &point);
            let verdict = if report.scattered {
                let v = is_pseudoregulus_type(&t, &point, &budget.budgets())?;
                json!({
                    "pseudoregulus": v.pseudoregulus,
                    "equivalence": v.witness_equiv.map(|k| k.encode(&t)),
                    "cyclic": check_json(&v.cyclic, |k| k.encode(&t)),
                    "swap": check_json(&v.swap, |s| s.encode(&t).replace('\n', "/")),
                    "consistent": v.consistent(),
                })
            } else {
                serde_json::Value::Null
            };
            print_json(&json!({ "linear_set_report": report, "verdict": verdict }));
            Ok(0)
        }
        Command::Verify {
            tower,
            budget,
            prop,
            seed,
            timings,
        } => {
            let ids: Vec<&str> = if prop == "all" {
                checks::ids().collect()
            } else if checks::lookup(&prop).is_some() {
                vec![prop.as_str()]
            } else {
                eprintln!("unknown check {prop:?}; known: all, {}", checks::ids().collect::<Vec<_>>().join(", "));
                return Ok(EXIT_USAGE);
            };
            let ctx = Context::new(make_tower(&tower)?, budget.budgets(), seed);
            let mut code = 0;
            for id in ids {
                let r = checks::run(id, &ctx, timings).expect("known id");
                println!("{}", serde_json::to_string(&r).expect("serializable"));
                if r.failed() {
                    code = EXIT_FAIL;
                } else if r.skipped_for_budget() && code == 0 {
                    code = EXIT_BUDGET;
                }
            }
            Ok(code)
        }
        Command::SwapSearch { tower, budget, beta } => {
            let t = make_tower(&tower)?;
            let point = RingPoint::graph(&t, &Endo::decode(&t, &beta)?);
            match find_swap_projectivity(&t, &point, &budget.budgets())? {
                Some(phi) => {
                    print_json(&json!({ "found": true, "matrix": phi.encode(&t).replace('\n', "/") }));
                    Ok(0)
                }
                None => {
                    print_json(&json!({ "found": false }));
                    Ok(EXIT_FAIL)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("LINSET_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
