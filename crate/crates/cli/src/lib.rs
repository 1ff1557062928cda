//! Command-line query tool over the exact probability library: parse a
//! distribution expression plus a query action, evaluate exactly, print
//! lowest-terms rationals or JSON.

pub mod ast;
pub mod eval;
pub mod parse;
mod selfcheck;

use std::io::Read;

use clap::Parser;

use eval::{evaluate, Options};
use parse::parse;

/// Exit codes: 0 success, 2 parse error, 3 evaluation error.
#[derive(Parser, Debug)]
#[command(name = "finprob", version, about = "Query exact finitely-supported probability distributions")]
struct Cli {
    /// Query text, e.g. 'binomial(3, 1/3) | pmf(1)'; use '-' to read it
    /// from stdin
    query: Option<String>,

    /// Emit structured JSON instead of plain text
    #[arg(long)]
    json: bool,

    /// Override the default iteration bound of the approximated
    /// distributions (geometric, and negative_binomial without an explicit
    /// fuel argument)
    #[arg(long)]
    fuel: Option<u64>,

    /// Seed for --selfcheck's randomized property demos
    #[arg(long)]
    seed: Option<u64>,

    /// Run a short randomized demo of the library's algebraic laws and
    /// exit
    #[arg(long)]
    selfcheck: bool,
}

pub fn run() -> i32 {
    let cli = Cli::parse();

    if cli.selfcheck {
        let seed = cli.seed.unwrap_or(0);
        return match selfcheck::run(seed) {
            Ok(report) => {
                println!("{report}");
                0
            }
            Err(message) => {
                eprintln!("self-check failed: {message}");
                3
            }
        };
    }

    let Some(raw) = cli.query else {
        eprintln!("no query given; try 'binomial(3, 1/3) | pmf(1)'");
        return 2;
    };
    let text = if raw == "-" {
        let mut buffer = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut buffer) {
            eprintln!("failed to read stdin: {e}");
            return 2;
        }
        buffer
    } else {
        raw
    };

    let query = match parse(text.trim()) {
        Ok(q) => q,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };

    let options = Options { fuel: cli.fuel };
    match evaluate(&query, &options) {
        Ok(value) => {
            if cli.json {
                println!("{}", value.render_json());
            } else {
                println!("{}", value.render_text());
            }
            0
        }
        Err(e) => {
            eprintln!("evaluation error: {e}");
            3
        }
    }
}
