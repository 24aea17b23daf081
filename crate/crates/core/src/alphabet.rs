//! Byte histograms, the effective-alphabet transform, the `C` array of
//! cumulative symbol counts, and bit reversal.
//!
//! Input texts are raw byte sequences. Before anything is built the text is
//! recoded onto the *effective* alphabet: the `sigma` distinct bytes that
//! actually occur, mapped order-preservingly onto codes `0..sigma`. The code
//! domain is then padded to the next power of two `2^height` (the padding
//! codes never occur; they sort after every real code), so every structure
//! above works on fixed-width `height`-bit codes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Occurrence counts per input byte. Only bytes that occur are present.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Histogram {
    counts: BTreeMap<u8, usize>,
}

impl Histogram {
    pub fn new(text: &[u8]) -> Self {
        let mut table = [0usize; 256];
        for &b in text {
            table[b as usize] += 1;
        }
        Self {
            counts: (0..=255).filter(|&b| table[b as usize] > 0).map(|b| (b, table[b as usize])).collect(),
        }
    }

    /// Occurrences of `symbol`, zero if it never occurs.
    pub fn count(&self, symbol: u8) -> usize {
        self.counts.get(&symbol).copied().unwrap_or(0)
    }

    /// Number of distinct occurring bytes.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Total number of counted positions.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Occurring bytes in increasing order.
    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        self.counts.keys().copied()
    }

    /// `(symbol, count)` pairs in increasing symbol order.
    pub fn iter(&self) -> impl Iterator<Item = (u8, usize)> + '_ {
        self.counts.iter().map(|(&s, &c)| (s, c))
    }
}

/// A text recoded onto its effective alphabet.
///
/// ```
/// use wvlt::alphabet::EffectiveText;
///
/// let text = EffectiveText::from_bytes(b"wavelettree")?;
/// assert_eq!(text.codes(), [6, 0, 5, 1, 2, 1, 4, 4, 3, 1, 1]);
/// assert_eq!(text.sigma_effective(), 7);
/// assert_eq!(text.sigma_padded(), 8);
/// assert_eq!(text.height(), 3);
/// assert_eq!(text.decode(), b"wavelettree");
/// # Ok::<(), wvlt::Error>(())
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveText {
    codes: Vec<u16>,
    decode_table: Vec<u8>,
    sigma_padded: usize,
    height: usize,
}

impl EffectiveText {
    /// Recode `text` onto codes `0..sigma_effective`, preserving byte order.
    ///
    /// The height is forced to at least one bit, so a unary text still gets
    /// one real level (`sigma_padded == 2`). Empty input is an error: there
    /// is nothing to index and no meaningful height.
    pub fn from_bytes(text: &[u8]) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyText);
        }
        let histogram = Histogram::new(text);
        let decode_table: Vec<u8> = histogram.symbols().collect();
        let mut code_of = [0u16; 256];
        for (code, &sym) in decode_table.iter().enumerate() {
            code_of[sym as usize] = code as u16;
        }
        let codes = text.iter().map(|&b| code_of[b as usize]).collect();
        let height = (decode_table.len().next_power_of_two().trailing_zeros() as usize).max(1);
        Ok(Self {
            codes,
            decode_table,
            sigma_padded: 1 << height,
            height,
        })
    }

    /// The effective codes, one per text position.
    pub fn codes(&self) -> &[u16] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Number of distinct occurring bytes.
    pub fn sigma_effective(&self) -> usize {
        self.decode_table.len()
    }

    /// Code domain size after padding to a power of two.
    pub fn sigma_padded(&self) -> usize {
        self.sigma_padded
    }

    /// Code width in bits; the number of levels of the structures built on
    /// this text.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Sorted table mapping each effective code back to its byte.
    pub fn decode_table(&self) -> &[u8] {
        &self.decode_table
    }

    /// The code of `symbol`, if the byte occurs in the text.
    pub fn code_of(&self, symbol: u8) -> Option<u16> {
        self.decode_table.binary_search(&symbol).ok().map(|c| c as u16)
    }

    /// The byte behind an effective code.
    pub fn symbol(&self, code: u16) -> u8 {
        self.decode_table[code as usize]
    }

    /// Maps the codes back to the original byte text.
    pub fn decode(&self) -> Vec<u8> {
        self.codes.iter().map(|&c| self.decode_table[c as usize]).collect()
    }
}

/// Cumulative code counts: `get(x)` is the number of text positions holding
/// a code `< x`, for `x` in `0..=sigma_padded`.
///
/// `get(0) == 0` and `get(sigma_padded) == n`. Consecutive entries differ by
/// the occurrence count of the code between them, and since padding codes
/// never occur the top entries all repeat `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CArray {
    entries: Vec<usize>,
}

impl CArray {
    pub fn new(text: &EffectiveText) -> Self {
        let mut entries = vec![0usize; text.sigma_padded() + 1];
        for &code in text.codes() {
            entries[code as usize + 1] += 1;
        }
        for x in 1..entries.len() {
            entries[x] += entries[x - 1];
        }
        Self { entries }
    }

    /// Wraps precomputed entries (e.g. read back from an index file).
    /// `entries[0]` must be zero, the sequence non-decreasing, and the
    /// length a power of two plus one.
    pub fn from_entries(entries: Vec<usize>) -> Self {
        assert!(entries.len() >= 3, "C array needs at least sigma_padded = 2");
        assert!((entries.len() - 1).is_power_of_two(), "C array length must be a power of two plus one");
        assert_eq!(entries[0], 0, "C array must start at zero");
        assert!(entries.windows(2).all(|w| w[0] <= w[1]), "C array must be non-decreasing");
        Self { entries }
    }

    /// Number of text positions with a code `< x`.
    pub fn get(&self, x: usize) -> usize {
        self.entries[x]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `sigma_padded`, the code-domain size this array covers.
    pub fn sigma_padded(&self) -> usize {
        self.entries.len() - 1
    }

    /// Total text length.
    pub fn text_len(&self) -> usize {
        *self.entries.last().unwrap()
    }

    /// Occurrences of `code`.
    pub fn occurrences(&self, code: u16) -> usize {
        self.entries[code as usize + 1] - self.entries[code as usize]
    }
}

/// Reverses the `width` low bits of `value`.
///
/// `bitrev` is an involution and, for fixed `width`, a permutation of
/// `0..2^width`.
///
/// ```
/// use wvlt::alphabet::bitrev;
///
/// assert_eq!(bitrev(3, 0b011), 0b110);
/// assert_eq!(bitrev(2, 1), 2);
/// ```
pub fn bitrev(width: usize, value: usize) -> usize {
    let bits = usize::BITS as usize;
    assert!(width >= 1 && width <= bits, "bitrev width {width} out of range");
    assert!(
        width == bits || value < 1 << width,
        "value {value} does not fit in {width} bits"
    );
    value.reverse_bits() >> (bits - width)
}
