use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rfg_core::arith::{k_int, psi};
use rfg_core::grig::{self, verify_deep, witness_deep};
use rfg_core::harness::{
    compute_growth, k_cached, verify_suite, Cache, Element, GroupId, Suite, Variant,
};
use rfg_core::quotsearch::SearchConfig;
use rfg_core::slk::{least_detecting_prime_power, order_slk_mod, witness_elementary};
use rfg_core::Result;

#[derive(Parser)]
#[command(
    name = "rfg",
    version,
    about = "Residual finiteness growth of small groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute k of one element.
    Kval {
        #[arg(long)]
        group: GroupId,
        #[arg(long)]
        element: String,
        #[arg(long, default_value = "any")]
        variant: Variant,
        /// Largest symmetric group degree scanned.
        #[arg(long)]
        qmax: Option<usize>,
    },
    /// Tabulate F(n) for n = 1..=radius.
    Growth {
        #[arg(long)]
        group: GroupId,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        method: String,
        /// Output file; `.json` selects JSON, anything else CSV. Stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        qmax: Option<usize>,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long)]
        suite: Suite,
    },
    /// Print a constructed witness element and its measured properties.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessChoice,
        #[arg(long)]
        n: u64,
        /// Matrix size for `elementary`.
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessChoice {
    Lcm,
    Elementary,
    GrigDeep,
}

fn config(qmax: Option<usize>) -> SearchConfig {
    let mut c = SearchConfig::default();
    if let Some(q) = qmax {
        c.q_max = q;
    }
    c
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Kval {
            group,
            element,
            variant,
            qmax,
        } => {
            let cache = Cache::from_env()?;
            let el = Element::parse(&group, &element)?;
            let v = k_cached(&group, &el, variant, &config(qmax), Some(&cache))?;
            println!("k = {}", v.k);
            println!("status = {}", v.label);
            if let Some(lower) = &v.lower {
                println!("lower = {lower}");
            }
            println!("witness = {}", v.witness.encode());
        }
        Command::Growth {
            group,
            radius,
            method,
            out,
            qmax,
        } => {
            let cache = Cache::from_env()?;
            let table = compute_growth(&group, radius, &method, &config(qmax), Some(&cache))?;
            let json = out
                .as_ref()
                .is_some_and(|p| p.extension().is_some_and(|e| e == "json"));
            let text = if json {
                serde_json::to_string_pretty(&table.to_json()).expect("table serializes") + "\n"
            } else {
                table.to_csv()
            };
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Verify { suite } => {
            let cache = Cache::from_env()?;
            let report = verify_suite(suite, Some(&cache));
            println!("{}", report.to_json());
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Witness { kind, n, k } => match kind {
            WitnessChoice::Lcm => {
                let m = psi(n);
                let (q, w) = k_int(&BigInt::from(m.clone()))?;
                println!("element = {m}");
                println!("k = {q}");
                println!("witness = {}", w.encode());
            }
            WitnessChoice::Elementary => {
                let g = witness_elementary(k, n)?;
                let q = least_detecting_prime_power(&g)?;
                println!("element = {}", g.encode());
                println!("least detecting prime power = {q}");
                println!("congruence quotient order = {}", order_slk_mod(k, q)?);
                println!("exceeds n = {}", q > n);
            }
            WitnessChoice::GrigDeep => {
                let w = witness_deep(n as usize)?;
                println!("element = {}", w.word);
                println!("length = {}", w.word.len());
                println!("depth = {}", grig::depth(&w.word)?);
                println!(
                    "trivial sections at level {n} = {}",
                    verify_deep(&w.word, n as usize)
                );
                let steps: Vec<String> = w.steps.iter().map(|s| format!("{s:?}")).collect();
                println!("construction = {}", steps.join(" "));
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
