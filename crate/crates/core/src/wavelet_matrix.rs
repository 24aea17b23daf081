//! Wavelet matrices.
//!
//! A wavelet matrix stores the same per-node bit sequences as the levelwise
//! wavelet tree, but on each level the nodes are concatenated in *bit
//! reversal permutation* order of their rank instead of left-to-right.
//! Equivalently — and this is how the constructor works — each level's
//! sequence arises from the previous one by a stable partition: all
//! positions whose previous bit was 0 move to the front, the 1-positions
//! follow, both groups keeping their relative order. No tree topology is
//! consulted at all; a single counter per level, the number of 0-bits
//! `zero_count(level)`, replaces the node boundaries during queries.
//!
//! The partition constructor carries the full codes along, so unlike the
//! tree constructor it knows the symbol behind every bit it writes. Its
//! write stream therefore goes through a [`SymbolBitSink`], which receives
//! `(level, pos, bit, code)` — the symbol is what makes the redirection in
//! [`crate::translate::build_wt_via_wm`] possible in the first place.

use crate::alphabet::EffectiveText;
use crate::bitvec::{BitBuffer, LevelBits, RankSelectBitVector};
use crate::error::{Error, Result};

/// Receiver of the wavelet matrix constructor's bit writes. Every write
/// carries the code it belongs to; there is no symbol-less variant.
pub trait SymbolBitSink {
    fn set_bit(&mut self, level: usize, pos: usize, bit: bool, code: u16);
}

impl SymbolBitSink for LevelBits {
    fn set_bit(&mut self, level: usize, pos: usize, bit: bool, _code: u16) {
        self.set(level, pos, bit);
    }
}

/// Runs the stable-partition wavelet matrix constructor over `text`,
/// emitting every bit of every level exactly once into `sink` together with
/// the code it came from.
pub fn build_into<S: SymbolBitSink>(text: &EffectiveText, sink: &mut S) {
    let height = text.height();
    let mut current: Vec<u16> = text.codes().to_vec();
    let mut next: Vec<u16> = Vec::with_capacity(current.len());
    for level in 0..height {
        let shift = height - 1 - level;
        for (pos, &code) in current.iter().enumerate() {
            sink.set_bit(level, pos, code >> shift & 1 == 1, code);
        }
        if level + 1 == height {
            break;
        }
        next.clear();
        next.extend(current.iter().filter(|&&c| c >> shift & 1 == 0));
        next.extend(current.iter().filter(|&&c| c >> shift & 1 == 1));
        std::mem::swap(&mut current, &mut next);
    }
}

/// A wavelet matrix with rank/select-indexed level bit vectors.
///
/// Answers exactly the same queries as [`crate::WaveletTree`], over the same
/// effective codes.
///
/// ```
/// use wvlt::{EffectiveText, WaveletMatrix};
///
/// let text = EffectiveText::from_bytes(b"wavelettree")?;
/// let wm = WaveletMatrix::new(&text);
/// let e = text.code_of(b'e').unwrap();
/// assert_eq!(wm.rank(e, 10)?, 4);
/// assert_eq!(wm.select(e, 2)?, 5);
/// # Ok::<(), wvlt::Error>(())
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletMatrix {
    levels: Vec<RankSelectBitVector>,
    /// Number of 0-bits per level; the boundary between the 0-block and the
    /// 1-block of the next level.
    zero_counts: Vec<usize>,
    sigma_effective: usize,
    height: usize,
    n: usize,
}

impl WaveletMatrix {
    pub fn new(text: &EffectiveText) -> Self {
        let mut out = LevelBits::new(text.height(), text.len());
        build_into(text, &mut out);
        Self::from_level_buffers(out.into_buffers(), text.sigma_effective())
    }

    /// Assembles a matrix from already-built level buffers. The zero counts
    /// are recomputed from the buffers, so two ways of arriving at the same
    /// bits always compare equal.
    pub fn from_level_buffers(levels: Vec<BitBuffer>, sigma_effective: usize) -> Self {
        let height = levels.len();
        assert!(height >= 1, "a wavelet matrix has at least one level");
        let n = levels[0].len();
        assert!(levels.iter().all(|l| l.len() == n), "levels must share the text length");
        assert!(sigma_effective >= 1 && sigma_effective <= 1 << height);
        let zero_counts = levels.iter().map(|l| l.len() - l.count_ones()).collect();
        Self {
            levels: levels.into_iter().map(RankSelectBitVector::new).collect(),
            zero_counts,
            sigma_effective,
            height,
            n,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn sigma_effective(&self) -> usize {
        self.sigma_effective
    }

    pub fn level(&self, level: usize) -> &RankSelectBitVector {
        &self.levels[level]
    }

    pub fn levels(&self) -> &[RankSelectBitVector] {
        &self.levels
    }

    /// Number of 0-bits on `level`.
    pub fn zero_count(&self, level: usize) -> usize {
        self.zero_counts[level]
    }

    pub fn zero_counts(&self) -> &[usize] {
        &self.zero_counts
    }

    /// The code at text position `i`.
    pub fn access(&self, i: usize) -> u16 {
        assert!(i < self.n, "position {i} out of range for length {}", self.n);
        let mut pos = i;
        let mut code = 0u16;
        for (level, bits) in self.levels.iter().enumerate() {
            let bit = bits.get(pos);
            code = code << 1 | bit as u16;
            // Descend: a 0-bit lands among the zeros of the next level, a
            // 1-bit lands after all of them.
            pos = if bit {
                self.zero_counts[level] + bits.rank1(pos) - 1
            } else {
                bits.rank0(pos) - 1
            };
        }
        code
    }

    /// Occurrences of `code` in text positions `0..=i`.
    pub fn rank(&self, code: u16, i: usize) -> Result<usize> {
        self.check_code(code)?;
        assert!(i < self.n, "position {i} out of range for length {}", self.n);
        let (start, end) = self.descend(code, 0, i + 1);
        Ok(end - start)
    }

    /// Text position of the `k`-th occurrence of `code`, `k >= 1`.
    pub fn select(&self, code: u16, k: usize) -> Result<usize> {
        self.check_code(code)?;
        let (start, end) = self.descend(code, 0, self.n);
        let occurrences = end - start;
        if k == 0 || k > occurrences {
            return Err(Error::OccurrenceOutOfRange { code, k, occurrences });
        }
        let mut pos = start + k - 1;
        for level in (0..self.height).rev() {
            let bits = &self.levels[level];
            let bit = code >> (self.height - 1 - level) & 1 == 1;
            pos = if bit {
                bits.select1(pos - self.zero_counts[level] + 1)
            } else {
                bits.select0(pos + 1)
            }
            .expect("descent offsets stay within the level");
        }
        Ok(pos)
    }

    /// Maps the half-open position interval `[start, end)` down the path of
    /// `code`, returning its image on the virtual leaf level.
    fn descend(&self, code: u16, start: usize, end: usize) -> (usize, usize) {
        let mut s = start;
        let mut e = end;
        for (level, bits) in self.levels.iter().enumerate() {
            let bit = code >> (self.height - 1 - level) & 1 == 1;
            if bit {
                let z = self.zero_counts[level];
                s = z + bits.rank1_exclusive(s);
                e = z + bits.rank1_exclusive(e);
            } else {
                s = bits.rank0_exclusive(s);
                e = bits.rank0_exclusive(e);
            }
        }
        (s, e)
    }

    fn check_code(&self, code: u16) -> Result<()> {
        if (code as usize) < self.sigma_effective {
            Ok(())
        } else {
            Err(Error::CodeOutOfRange {
                code,
                sigma: self.sigma_effective,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::WaveletTree;

    fn running_example() -> (EffectiveText, WaveletMatrix) {
        let text = EffectiveText::from_bytes(b"wavelettree").unwrap();
        let wm = WaveletMatrix::new(&text);
        (text, wm)
    }

    fn level_string(wm: &WaveletMatrix, level: usize) -> String {
        wm.level(level).bits().iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    #[test]
    fn running_example_levels() {
        let (_, wm) = running_example();
        assert_eq!(wm.height(), 3);
        assert_eq!(wm.len(), 11);
        // The first two levels coincide with the wavelet tree's; level 2
        // concatenates the tree's nodes in bit-reversed order 0, 2, 1, 3.
        assert_eq!(level_string(&wm, 0), "10100011000");
        assert_eq!(level_string(&wm, 1), "00101001000");
        assert_eq!(level_string(&wm, 2), "01111100010");
        assert_eq!(wm.zero_counts(), [7, 8, 5]);
    }

    #[test]
    fn zero_counts_match_rank0_at_the_end(){
        let (_, wm) = running_example();
        for level in 0..wm.height() {
            assert_eq!(wm.zero_count(level), wm.level(level).rank0(wm.len() - 1));
        }
    }

    #[test]
    fn first_two_levels_match_the_tree() {
        for text in [&b"wavelettree"[..], b"mississippi", b"translation"] {
            let text = EffectiveText::from_bytes(text).unwrap();
            let wt = WaveletTree::new(&text);
            let wm = WaveletMatrix::new(&text);
            for level in 0..2.min(text.height()) {
                assert_eq!(wt.level(level).bits(), wm.level(level).bits());
            }
        }
    }

    #[test]
    fn per_level_one_counts_match_the_tree() {
        let text = EffectiveText::from_bytes(b"wavelettree").unwrap();
        let wt = WaveletTree::new(&text);
        let wm = WaveletMatrix::new(&text);
        for level in 0..text.height() {
            assert_eq!(wt.level(level).count_ones(), wm.level(level).count_ones());
        }
    }

    #[test]
    fn queries_running_example() {
        let (text, wm) = running_example();
        assert_eq!(wm.access(0), 6); // 'w'
        let e = text.code_of(b'e').unwrap();
        assert_eq!(wm.rank(e, 10), Ok(4));
        assert_eq!(wm.select(e, 2), Ok(5));
        for (i, &code) in text.codes().iter().enumerate() {
            assert_eq!(wm.access(i), code);
        }
    }

    #[test]
    fn queries_agree_with_the_tree() {
        let text = EffectiveText::from_bytes(b"abracadabra").unwrap();
        let wt = WaveletTree::new(&text);
        let wm = WaveletMatrix::new(&text);
        for i in 0..text.len() {
            assert_eq!(wt.access(i), wm.access(i));
            for code in 0..text.sigma_effective() as u16 {
                assert_eq!(wt.rank(code, i), wm.rank(code, i));
            }
        }
        for code in 0..text.sigma_effective() as u16 {
            for k in 1..=occurrences_of(&text, code) {
                assert_eq!(wt.select(code, k), wm.select(code, k));
            }
        }
    }

    fn occurrences_of(text: &EffectiveText, code: u16) -> usize {
        text.codes().iter().filter(|&&c| c == code).count()
    }

    #[test]
    fn query_errors_name_the_bound() {
        let (_, wm) = running_example();
        assert_eq!(wm.rank(9, 0), Err(Error::CodeOutOfRange { code: 9, sigma: 7 }));
        assert_eq!(
            wm.select(1, 5),
            Err(Error::OccurrenceOutOfRange { code: 1, k: 5, occurrences: 4 })
        );
    }

    #[test]
    fn unary_text_matches_the_tree_exactly() {
        let text = EffectiveText::from_bytes(b"aaa").unwrap();
        let wt = WaveletTree::new(&text);
        let wm = WaveletMatrix::new(&text);
        assert_eq!(wt.level(0).bits(), wm.level(0).bits());
        assert_eq!(wm.zero_count(0), 3);
        assert_eq!(wm.access(1), 0);
        assert_eq!(wm.rank(0, 2), Ok(3));
        assert_eq!(wm.select(0, 1), Ok(0));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn access_past_the_end_panics() {
        running_example().1.access(11);
    }
}
