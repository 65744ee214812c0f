//! Command-line front end for the quintic mirror toolkit.
//!
//! Every subcommand produces a result envelope — inputs, payload, and a
//! list of named self-checks — rendered as JSON (default), CSV, or plain
//! text. Exit codes are part of the contract:
//!
//! * `0` — the command ran and every check passed,
//! * `1` — usage error (bad flags, unwritable output path),
//! * `2` — the command ran but a verification check failed.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

mod cache;
mod cli;
mod commands;
mod envelope;
mod svg;

use cache::{resolve_cache_dir, Failure};
use cli::{Cli, Command, Format};
use commands::GlobalConfig;
use envelope::CommandOutput;

/// Runs the CLI against an explicit argument list and explicit output
/// streams. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };

    if cli.command.name() == "instantons" && cli.order == 0 {
        let _ = writeln!(
            err,
            "error: `instantons` needs --order of at least 1; degree-zero maps are not curves"
        );
        return 1;
    }

    let cfg = GlobalConfig {
        order: cli.order,
        format_name: cli.format.name(),
        cache_dir: resolve_cache_dir(cli.cache_dir.as_deref()),
        fail_on_nonintegral: cli.fail_on_nonintegral,
    };

    let result: Result<CommandOutput, Failure> = match &cli.command {
        Command::Periods => commands::run_periods(&cfg),
        Command::MirrorMap => commands::run_mirror_map(&cfg),
        Command::Yukawa => commands::run_yukawa(&cfg),
        Command::Instantons => commands::run_instantons(&cfg),
        Command::Monodromy { check } => commands::run_monodromy(&cfg, *check),
        Command::Fan {
            step,
            verify,
            emit_slice_svg,
        } => commands::run_fan(&cfg, *step, *verify, emit_slice_svg.as_deref()),
    };

    match result {
        Ok(output) => {
            let rendered = match cli.format {
                Format::Json => output.write_json(out),
                Format::Csv => output.write_csv(out),
                Format::Text => output.write_text(out),
            };
            if rendered.is_err() {
                return 1;
            }
            if output.envelope.all_passed() {
                0
            } else {
                2
            }
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.exit
        }
    }
}

/// Entry point used by the binary: real process arguments and streams.
pub fn run_cli() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("mirrorkit").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn help_goes_to_stdout_with_exit_zero() {
        let (code, out, err) = capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("yukawa"));
        assert!(err.is_empty());
    }

    #[test]
    fn unknown_flag_is_a_usage_error() {
        let (code, out, err) = capture(&["yukawa", "--frobnicate"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("--frobnicate"));
    }

    #[test]
    fn instantons_at_order_zero_is_a_usage_error() {
        let (code, out, err) = capture(&["instantons", "--order", "0"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("--order"));
    }

    #[test]
    fn version_prints_the_package_version() {
        let (code, out, _) = capture(&["--version"]);
        assert_eq!(code, 0);
        assert!(out.contains(env!("CARGO_PKG_VERSION")));
    }
}
