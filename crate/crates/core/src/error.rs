use thiserror::Error;

/// Errors reported by the fallible operations of this crate.
///
/// Out-of-range *positions* (e.g. `rank` past the end of a bit vector) are
/// contract violations and panic instead; everything a caller cannot cheaply
/// validate up front is reported through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input text was empty; every structure here needs at least one symbol.
    #[error("input text is empty")]
    EmptyText,

    /// A select query asked for a higher rank than the vector holds.
    #[error("select{} out of range: k = {k}, vector holds {available} {}-bits", *bit as u8, *bit as u8)]
    SelectOutOfRange { bit: bool, k: usize, available: usize },

    /// A symbol code at or beyond the effective alphabet size.
    #[error("symbol code {code} out of range: effective alphabet has {sigma} symbols")]
    CodeOutOfRange { code: u16, sigma: usize },

    /// An occurrence rank of zero or larger than the symbol's occurrence count.
    #[error("occurrence rank {k} out of range: symbol code {code} occurs {occurrences} times")]
    OccurrenceOutOfRange { code: u16, k: usize, occurrences: usize },

    /// A matrix-level position paired with a symbol whose node does not
    /// contain that position.
    #[error("position {pos} on level {level} lies outside the node of symbol code {code}")]
    SymbolNodeMismatch { level: usize, pos: usize, code: u16 },

    /// Packed words carry set bits beyond the declared bit length.
    #[error("packed words carry nonzero bits beyond the declared length of {len}")]
    NonzeroPadBits { len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
