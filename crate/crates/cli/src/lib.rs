//! Script driver for the `corecalc` engine: a line-oriented script
//! language, command execution, and text or JSON Lines output.

pub mod emit;
pub mod exec;
pub mod script;

pub use exec::{execute, Options, Record};
pub use script::{parse_session, Command, ScriptError, Session};

/// Exit status when a script fails to parse.
pub const EXIT_SCRIPT_ERROR: i32 = 2;
/// Exit status when some command failed.
pub const EXIT_COMMAND_ERROR: i32 = 1;

/// Everything a run writes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

/// Parses and runs a script, rendering results as text or JSON Lines.
pub fn run_script(text: &str, opts: &Options, json: bool) -> RunOutput {
    let (session, commands) = match parse_session(text) {
        Ok(parsed) => parsed,
        Err(e) => {
            let stdout = if json {
                format!("{}\n", emit::script_error_json(&e))
            } else {
                String::new()
            };
            return RunOutput {
                stdout,
                stderr: format!("{}\n", emit::script_error_text(&e)),
                status: EXIT_SCRIPT_ERROR,
            };
        }
    };
    let records = execute(&session, &commands, opts);
    let mut stdout = String::new();
    let mut stderr = String::new();
    for r in &records {
        if json {
            stdout.push_str(&emit::json_line(&session, r));
            stdout.push('\n');
        } else {
            for line in emit::text_lines(r) {
                stdout.push_str(&line);
                stdout.push('\n');
            }
        }
        if let Some(e) = emit::text_error(r) {
            stderr.push_str(&e);
            stderr.push('\n');
        }
    }
    let failed = records.iter().any(|r| r.outcome.is_err());
    RunOutput {
        stdout,
        stderr,
        status: if failed { EXIT_COMMAND_ERROR } else { 0 },
    }
}
