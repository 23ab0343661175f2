use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hmcoh_cli::args::{Cli, Format};
use hmcoh_cli::run::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    let text = match cli.common.format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(report.status.exit_code() as u8)
}
