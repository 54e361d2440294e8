mod cache;
mod commands;
mod config;
mod status;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use commands::Output;
use config::{Cli, Command, Format};
use status::Failure;

fn init_logging(verbose: u8, quiet: bool) {
    let level = match (quiet, verbose) {
        (true, _) => log::LevelFilter::Warn,
        (false, 0) => log::LevelFilter::Info,
        (false, 1) => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_env("LONESIEVE_LOG")
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();
}

fn dispatch(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Sieve(a) => commands::sieve::run(a),
        Command::AnalyzeSplitting(a) => commands::splitting::run(a),
        Command::Lineq(a) => commands::lineq::run(a),
        Command::CurveValidate(a) => commands::geometry::curve_validate(a),
        Command::Points(a) => commands::geometry::points(a),
        Command::Sym2(a) => commands::geometry::sym2(a),
        Command::FixedPoints(a) => commands::geometry::fixed_points(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(cli.common.verbose, cli.common.quiet);
    match dispatch(cli.command) {
        Ok(out) => {
            let body = match cli.common.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
                Format::Text => out.text,
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.status.code() as u8)
        }
        Err(f) => {
            log::error!("{f}");
            ExitCode::from(f.status.code() as u8)
        }
    }
}
