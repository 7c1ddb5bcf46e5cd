use std::fmt::Display;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use serde::Serialize;

mod hyp;
mod strata;
mod surface;
mod symp;
mod word;

/// Exact computations with hyperelliptic mapping class groups.
#[derive(Parser, Debug)]
#[command(name = "hymcg", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Topological types and quotients by the involution.
    #[command(subcommand)]
    Surface(surface::Cmd),
    /// Chain twist words and the Weierstrass permutation action.
    #[command(subcommand)]
    Word(word::Cmd),
    /// The symplectic representation over Z and Z/m.
    #[command(subcommand)]
    Symp(symp::Cmd),
    /// Curve complexes of the punctured sphere modulo the mapping class group.
    #[command(subcommand)]
    Strata(strata::Cmd),
    /// Lifting sphere multicurves through the branched double cover.
    #[command(subcommand)]
    Hyp(hyp::Cmd),
}

/// Outcome of a successful invocation. `Failed` means a boolean check came out false.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

impl Status {
    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Failed
        }
    }
}

pub fn emit<T: Serialize + ?Sized>(json: bool, value: &T, text: impl Display) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        println!("{text}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Status> {
    let json = cli.json;
    match cli.command {
        Command::Surface(cmd) => surface::run(cmd, json),
        Command::Word(cmd) => word::run(cmd, json),
        Command::Symp(cmd) => symp::run(cmd, json),
        Command::Strata(cmd) => strata::run(cmd, json),
        Command::Hyp(cmd) => hyp::run(cmd, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
