use alloc::string::String;
use core::fmt;

/// Why a multiplication table was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidError {
    /// `(i*j)*k != i*(j*k)`; the first failing triple in index order.
    NonAssociative(usize, usize, usize),
    /// The designated identity fails against this element.
    BadIdentity(usize),
    DuplicateName(String),
    /// Table is not `n x n` or mentions an element outside the carrier.
    NotTotal,
    UnknownIdentity(String),
    Empty,
}

impl fmt::Display for MonoidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidError::NonAssociative(i, j, k) => {
                write!(f, "table is not associative at triple ({i}, {j}, {k})")
            }
            MonoidError::BadIdentity(i) => {
                write!(f, "designated identity is not two-sided at element {i}")
            }
            MonoidError::DuplicateName(n) => write!(f, "duplicate element name {n:?}"),
            MonoidError::NotTotal => write!(f, "multiplication table is not total"),
            MonoidError::UnknownIdentity(n) => write!(f, "identity {n:?} is not an element"),
            MonoidError::Empty => write!(f, "a monoid needs at least one element"),
        }
    }
}

impl core::error::Error for MonoidError {}

/// Why an action table was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActError {
    /// `1a != a`.
    IdentityLawFail(usize),
    /// Left: `s(ta) != (st)a`. Right: `(as)t != a(st)`.
    CompatibilityFail(usize, usize, usize),
    EmptyCarrier,
    DuplicateName(String),
    NotTotal,
    MonoidMismatch,
}

impl fmt::Display for ActError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActError::IdentityLawFail(a) => write!(f, "identity law fails at element {a}"),
            ActError::CompatibilityFail(s, t, a) => {
                write!(f, "compatibility law fails for s={s}, t={t}, a={a}")
            }
            ActError::EmptyCarrier => write!(f, "an act must have a non-empty carrier"),
            ActError::DuplicateName(n) => write!(f, "duplicate carrier name {n:?}"),
            ActError::NotTotal => write!(f, "action table is not total"),
            ActError::MonoidMismatch => write!(f, "acts are over different monoids"),
        }
    }
}

impl core::error::Error for ActError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorError {
    /// The first factor must be a right act and the second a left act.
    SideMismatch,
    MonoidMismatch,
    ElementNotFound(usize),
    /// A skeleton needs an even, non-zero number of entries.
    BadSkeleton(usize),
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::SideMismatch => {
                write!(f, "tensor product needs a right act on the left and a left act on the right")
            }
            TensorError::MonoidMismatch => write!(f, "acts are over different monoids"),
            TensorError::ElementNotFound(i) => write!(f, "element {i} is not in the act"),
            TensorError::BadSkeleton(n) => {
                write!(f, "a skeleton needs a positive even number of entries, got {n}")
            }
        }
    }
}

impl core::error::Error for TensorError {}
