use std::fmt;

use renyi_bounds::Error;

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Validation(String),
    Numerical(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Validation(_) => 3,
            Failure::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(s) => write!(f, "input: {s}"),
            Failure::Validation(s) => write!(f, "validation: {s}"),
            Failure::Numerical(s) => write!(f, "numerical: {s}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NotNormalized(_) | Error::InvalidSchmidt(_) | Error::InvalidState(_) => {
                Failure::Validation(msg)
            }
            Error::Numerical(_)
            | Error::NoTangency { .. }
            | Error::DegenerateTangency { .. }
            | Error::Refinement { .. } => Failure::Numerical(msg),
            Error::DimensionMismatch { .. }
            | Error::InvalidDims { .. }
            | Error::InvalidAlpha(_)
            | Error::OutOfRange { .. }
            | Error::TooLarge(_)
            | Error::DecompositionTooSmall { .. }
            | Error::UnsupportedBranchAlpha(_)
            | Error::Format(_) => Failure::Input(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}
