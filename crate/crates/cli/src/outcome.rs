//! Reports and the exit-code contract: 0 true, 1 false, 2 bad input, 3 inconsistent.

use std::process::ExitCode;

use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Inconsistent(String),
}

impl From<homlie::Error> for CliError {
    fn from(e: homlie::Error) -> Self {
        match e {
            homlie::Error::Inconsistent(m) => CliError::Inconsistent(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit(&self) -> ExitCode {
        match self {
            CliError::Input(m) => {
                eprintln!("error: {m}");
                ExitCode::from(2)
            }
            CliError::Inconsistent(m) => {
                eprintln!("internal consistency failure: {m}");
                ExitCode::from(3)
            }
        }
    }
}

/// A finished command: verdict plus both renderings.
pub struct Outcome {
    pub ok: bool,
    pub human: String,
    pub json: String,
}

impl Outcome {
    pub fn new<T: Serialize>(ok: bool, human: String, report: &T) -> Self {
        Outcome { ok, human, json: homlie::io::to_json(report) }
    }

    /// Commands whose only output is data.
    pub fn data<T: Serialize>(report: &T) -> Self {
        let json = homlie::io::to_json(report);
        Outcome { ok: true, human: json.clone(), json }
    }

    pub fn emit(&self, json: bool) -> ExitCode {
        let text = if json { &self.json } else { &self.human };
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
        ExitCode::from(if self.ok { 0 } else { 1 })
    }
}

pub type Run = Result<Outcome, CliError>;
