//! Exit-code-carrying errors with structured JSON rendering.
//!
//! Codes: 2 validation, 3 engine, 64 usage, 65 parse. Parse errors are
//! malformed files or payloads; validation errors are well-formed inputs
//! that violate an invariant; engine errors come from the operation itself.

use serde::Serialize;

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub path: String,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: i32,
    message: &'a str,
    path: &'a str,
}

#[derive(Serialize)]
struct ErrorOut<'a> {
    error: ErrorBody<'a>,
}

impl CliError {
    pub fn parse(path: &str, message: impl ToString) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.to_string(),
            path: path.to_string(),
        }
    }

    pub fn validation(path: &str, message: impl ToString) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.to_string(),
            path: path.to_string(),
        }
    }

    pub fn engine(path: &str, message: impl ToString) -> Self {
        CliError {
            code: EXIT_ENGINE,
            message: message.to_string(),
            path: path.to_string(),
        }
    }

    pub fn usage(message: impl ToString) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.to_string(),
            path: String::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ErrorOut {
            error: ErrorBody {
                code: self.code,
                message: &self.message,
                path: &self.path,
            },
        })
        .expect("error body serializes")
    }
}

pub type CliResult<T> = Result<T, CliError>;
