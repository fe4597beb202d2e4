//! Error type shared by every module of the crate.

use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    PoleAtOne,
    Parse(String),
    NotGcm(String),
    NotSymmetrizable,
    NotFiniteType,
    NotIndecomposable,
    IndexSetTooLarge(usize),
    HeightCapExceeded { height: usize, cap: usize },
    InvalidCharacter,
    DegeneratePair,
    NotAdmissible(String),
    InvalidParameters(String),
    ComponentNotFound(String),
    UnsupportedCase(String),
    NoSquareRootInField,
    NotUnoriented,
    NotInSpan(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::PoleAtOne => write!(f, "element has a pole at q = 1"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::NotGcm(m) => write!(f, "not a generalized Cartan matrix: {m}"),
            Error::NotSymmetrizable => write!(f, "matrix is not symmetrizable"),
            Error::NotFiniteType => write!(f, "subset is not of finite type"),
            Error::NotIndecomposable => write!(f, "Cartan matrix is not indecomposable"),
            Error::IndexSetTooLarge(n) => write!(f, "index set of size {n} exceeds the cap"),
            Error::HeightCapExceeded { height, cap } => {
                write!(f, "weight height {height} exceeds the cap {cap}")
            }
            Error::InvalidCharacter => write!(f, "character takes the value zero"),
            Error::DegeneratePair => write!(f, "pair with X = I has no quantum involution"),
            Error::NotAdmissible(m) => write!(f, "pair is not admissible: {m}"),
            Error::InvalidParameters(m) => write!(f, "invalid parameters: {m}"),
            Error::ComponentNotFound(m) => write!(f, "coproduct component not found: {m}"),
            Error::UnsupportedCase(m) => write!(f, "unsupported case: {m}"),
            Error::NoSquareRootInField => write!(f, "no square root in Q(i)(q)"),
            Error::NotUnoriented => write!(f, "GIM is not unoriented"),
            Error::NotInSpan(m) => write!(f, "element not in span: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
