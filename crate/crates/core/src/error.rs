use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must live in the same ambient space do not.
    DimensionMismatch { expected: usize, found: usize },
    /// A requested degree is above the configured degree cap.
    DegreeCap { degree: usize, cap: usize },
    /// The tensor-word space in the requested degree is too large for a dense
    /// representation.
    AmbientTooLarge {
        degree: usize,
        ambient: usize,
        limit: usize,
    },
    /// An index (generator, word letter, basis element) is out of range.
    IndexOutOfRange { index: usize, bound: usize },
    /// Finite fields of characteristic two are excluded.
    EvenCharacteristic { q: u64 },
    /// The requested field order is not an odd prime power.
    NotPrimePower { q: u64 },
    /// The field is too large to enumerate element by element.
    FieldTooLarge { q: u64, limit: u64 },
    /// A hom table disagrees with the Hilbert function of a presentation.
    HilbertMismatch { degree: usize, table: u64, algebra: usize },
    /// Two comodules are over different coalgebras.
    CoalgebraMismatch,
    /// A comodule failed validation; the string names the first failure.
    InvalidComodule(String),
    /// The product of two coalgebra elements left the coalgebra.
    NotClosedUnderProduct { degree: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "ambient dimension mismatch: expected {expected}, found {found}")
            }
            Error::DegreeCap { degree, cap } => {
                write!(f, "degree {degree} exceeds the configured cap {cap}")
            }
            Error::AmbientTooLarge { degree, ambient, limit } => write!(
                f,
                "tensor space in degree {degree} has dimension {ambient}, above the dense limit {limit}"
            ),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (must be < {bound})")
            }
            Error::EvenCharacteristic { q } => {
                write!(f, "field order {q} has characteristic 2")
            }
            Error::NotPrimePower { q } => write!(f, "{q} is not an odd prime power"),
            Error::FieldTooLarge { q, limit } => {
                write!(f, "field order {q} is above the enumeration limit {limit}")
            }
            Error::HilbertMismatch { degree, table, algebra } => write!(
                f,
                "hom table and presentation disagree in degree {degree}: table has {table}, algebra has {algebra}"
            ),
            Error::CoalgebraMismatch => f.write_str("comodules are over different coalgebras"),
            Error::InvalidComodule(reason) => write!(f, "invalid comodule: {reason}"),
            Error::NotClosedUnderProduct { degree } => write!(
                f,
                "product of coalgebra elements leaves the coalgebra in degree {degree}"
            ),
        }
    }
}

impl core::error::Error for Error {}
