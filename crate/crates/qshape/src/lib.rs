//! JSON formats, reports and the command implementations behind the
//! `qshape` binary.

pub mod chain;
pub mod cli;
pub mod commands;
pub mod format;
pub mod random;
pub mod report;

use clap::Parser;

/// Parses `args` (program name first), runs the command and returns the
/// exit code with the text for stdout and stderr.
pub fn run(args: &[String]) -> (i32, String, String) {
    let cli = match cli::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, if code == 0 { e.to_string() } else { String::new() }, if code == 0 { String::new() } else { e.to_string() });
        }
    };
    let argv: Vec<String> = args.iter().skip(1).cloned().collect();
    let (report, res) = commands::execute(&cli.command, &argv);
    let text = report.render(cli.format);
    let (code, err) = match res {
        Ok(()) => (0, String::new()),
        Err(e) => (e.exit_code(), format!("{e}\n")),
    };
    if cli.output != "-" {
        if let Err(e) = std::fs::write(&cli.output, &text) {
            return (1, String::new(), format!("io error: {}: {e}\n", cli.output));
        }
        return (code, String::new(), err);
    }
    (code, text, err)
}
