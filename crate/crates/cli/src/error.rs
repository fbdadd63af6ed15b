use std::io;

use quadrica::bounds::BoundsError;
use quadrica::chow::ClassError;
use quadrica::diophantine::DiophantineError;
use quadrica::double_points::DoublePointError;
use quadrica::line::LineError;
use quadrica::schubert::SchubertError;

pub const CHECK_FAILED: u8 = 1;
pub const USAGE: u8 = 2;
pub const MALFORMED_NUMBER: u8 = 3;
pub const IO: u8 = 4;
pub const MALFORMED_DOCUMENT: u8 = 5;
pub const DOMAIN: u8 = 6;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn number(text: &str) -> Self {
        Self::new(MALFORMED_NUMBER, format!("malformed number {text:?}"))
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::new(IO, e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::new(IO, e.to_string())
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        let code = match e {
            BoundsError::Catalog(_) | BoundsError::UnknownHypothesis(_) => MALFORMED_DOCUMENT,
            _ => DOMAIN,
        };
        Self::new(code, e.to_string())
    }
}

impl From<LineError> for CliError {
    fn from(e: LineError) -> Self {
        let code = match e {
            LineError::BadNumber(_) => MALFORMED_NUMBER,
            LineError::Document(_)
            | LineError::IndexOutOfRange { .. }
            | LineError::DuplicateEntry { .. }
            | LineError::NotSymmetric => MALFORMED_DOCUMENT,
            _ => DOMAIN,
        };
        Self::new(code, e.to_string())
    }
}

macro_rules! domain_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::new(DOMAIN, e.to_string())
            }
        })*
    };
}

domain_error!(ClassError, DiophantineError, DoublePointError, SchubertError);
