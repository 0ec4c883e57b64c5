//! The `asevo` command-line pipeline: ingest, metrics, fit, generate,
//! tunnel and report. Every command writes CSV outputs plus a
//! `manifest.json` holding its resolved configuration and content hashes.

pub mod args;
pub mod commands;
pub mod manifest;
pub mod plots;

use anyhow::Result;

pub use args::{Cli, Command};

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Ingest(a) => commands::ingest(a),
        Command::Metrics(a) => commands::metrics(a),
        Command::Fit(a) => commands::fit(a),
        Command::Generate(a) => commands::generate(a),
        Command::Tunnel(a) => commands::tunnel(a),
        Command::Report(a) => commands::report(a),
    }
}
