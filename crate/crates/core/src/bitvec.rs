//! Plain bit buffers and rank/select-indexed bit vectors.
//!
//! [`BitBuffer`] is a mutable, fixed-length sequence of bits packed LSB-first
//! into `u64` words; it is the build target of every constructor in this
//! crate. [`RankSelectBitVector`] freezes a buffer and adds the usual
//! counting queries on top:
//!
//! * `rank1(i)` / `rank0(i)` count matching bits in `B[0..=i]` — note the
//!   **inclusive** upper end, so `rank1(i) + rank0(i) == i + 1`.
//! * `select1(k)` / `select0(k)` return the position of the `k`-th matching
//!   bit, counting from `k = 1`.
//!
//! Rank is answered from cumulative counts per 512-bit block plus a popcount
//! scan inside the block. Select starts from the sampled position of every
//! 8192-th matching bit, narrows to a block by binary search, and finishes
//! with an in-block scan.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// Bits per rank block (8 words).
pub const RANK_BLOCK_BITS: usize = 512;

const WORDS_PER_BLOCK: usize = RANK_BLOCK_BITS / WORD_BITS;

/// Every `SELECT_SAMPLE_RATE`-th 1-bit (and 0-bit) position is sampled as a
/// select starting point.
pub const SELECT_SAMPLE_RATE: usize = 8192;

/// A fixed-length bit sequence packed LSB-first into 64-bit words.
///
/// Bit `i` lives in word `i / 64` at bit `i % 64`. Bits at or beyond the
/// length are kept zero in the final word, so equal buffers are also
/// word-for-word equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitBuffer {
    len: usize,
    words: Vec<u64>,
}

impl BitBuffer {
    /// An all-zero buffer of `len` bits.
    pub fn new(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Reassembles a buffer from packed words, e.g. read back from disk.
    ///
    /// Fails with [`Error::NonzeroPadBits`] if the word count does not match
    /// `len` or a bit at or beyond `len` is set.
    pub fn from_words(words: Vec<u64>, len: usize) -> Result<Self> {
        if words.len() != len.div_ceil(WORD_BITS) {
            return Err(Error::NonzeroPadBits { len });
        }
        let tail = len % WORD_BITS;
        if tail != 0 && words[words.len() - 1] >> tail != 0 {
            return Err(Error::NonzeroPadBits { len });
        }
        Ok(Self { len, words })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if bit {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    /// Appends one bit, growing the buffer.
    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD_BITS) {
            self.words.push(0);
        }
        self.len += 1;
        if bit {
            self.set(self.len - 1, true);
        }
    }

    /// The packed words, LSB-first, trailing pad bits zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl FromIterator<bool> for BitBuffer {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut buf = Self::new(0);
        for bit in iter {
            buf.push(bit);
        }
        buf
    }
}

/// One bit buffer per level, all of the same length — the mutable shape of a
/// levelwise wavelet tree or wavelet matrix under construction, and the
/// target every bit sink ultimately writes into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelBits {
    levels: Vec<BitBuffer>,
}

impl LevelBits {
    pub fn new(height: usize, len: usize) -> Self {
        Self {
            levels: (0..height).map(|_| BitBuffer::new(len)).collect(),
        }
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn len(&self) -> usize {
        self.levels.first().map_or(0, BitBuffer::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn set(&mut self, level: usize, pos: usize, bit: bool) {
        self.levels[level].set(pos, bit);
    }

    pub fn get(&self, level: usize, pos: usize) -> bool {
        self.levels[level].get(pos)
    }

    pub fn level(&self, level: usize) -> &BitBuffer {
        &self.levels[level]
    }

    pub fn into_buffers(self) -> Vec<BitBuffer> {
        self.levels
    }
}

/// An immutable bit vector with constant-time rank and fast select.
///
/// ```
/// use wvlt::bitvec::{BitBuffer, RankSelectBitVector};
///
/// let bits: BitBuffer = [true, false, true, true].into_iter().collect();
/// let v = RankSelectBitVector::new(bits);
/// assert_eq!(v.rank1(2), 2); // ones in B[0..=2]
/// assert_eq!(v.select1(3), Ok(3)); // position of the third 1-bit
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSelectBitVector {
    bits: BitBuffer,
    /// `block_ranks[b]` = ones in `[0, b * RANK_BLOCK_BITS)`; one sentinel
    /// entry past the last block holds the total.
    block_ranks: Vec<usize>,
    /// Position of the `(s * SELECT_SAMPLE_RATE + 1)`-th 1-bit.
    select1_samples: Vec<usize>,
    /// Position of the `(s * SELECT_SAMPLE_RATE + 1)`-th 0-bit.
    select0_samples: Vec<usize>,
    ones: usize,
}

impl RankSelectBitVector {
    pub fn new(bits: BitBuffer) -> Self {
        Self::with_build_steps(bits).0
    }

    /// Builds the index and also reports how many elementary build steps it
    /// took (one per word scanned plus one per select sample stored), so
    /// callers can assert construction cost.
    pub fn with_build_steps(bits: BitBuffer) -> (Self, u64) {
        let len = bits.len();
        let n_blocks = len.div_ceil(RANK_BLOCK_BITS);
        let mut block_ranks = Vec::with_capacity(n_blocks + 1);
        block_ranks.push(0);
        let mut select1_samples = Vec::new();
        let mut select0_samples = Vec::new();
        let mut ones = 0usize;
        let mut zeros = 0usize;
        let mut steps = 0u64;

        for (wi, &word) in bits.words().iter().enumerate() {
            steps += 1;
            let base = wi * WORD_BITS;
            let valid = (len - base).min(WORD_BITS);
            let word_zeros = if valid == WORD_BITS {
                !word
            } else {
                !word & ((1u64 << valid) - 1)
            };
            let c1 = word.count_ones() as usize;
            let c0 = valid - c1;
            steps += collect_samples(word, c1, ones, base, &mut select1_samples);
            steps += collect_samples(word_zeros, c0, zeros, base, &mut select0_samples);
            ones += c1;
            zeros += c0;
            if (wi + 1) % WORDS_PER_BLOCK == 0 {
                block_ranks.push(ones);
            }
        }
        while block_ranks.len() < n_blocks + 1 {
            block_ranks.push(ones);
        }

        let v = Self {
            bits,
            block_ranks,
            select1_samples,
            select0_samples,
            ones,
        };
        (v, steps)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn bits(&self) -> &BitBuffer {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len() - self.ones
    }

    /// Ones in `B[0..=i]`. Panics if `i >= len`.
    pub fn rank1(&self, i: usize) -> usize {
        assert!(
            i < self.len(),
            "rank position {i} out of range for length {}",
            self.len()
        );
        let block = i / RANK_BLOCK_BITS;
        let mut r = self.block_ranks[block];
        let target_word = i / WORD_BITS;
        for w in block * WORDS_PER_BLOCK..target_word {
            r += self.bits.words()[w].count_ones() as usize;
        }
        let within = i % WORD_BITS;
        let mask = if within == WORD_BITS - 1 {
            !0u64
        } else {
            (1u64 << (within + 1)) - 1
        };
        r + (self.bits.words()[target_word] & mask).count_ones() as usize
    }

    /// Zeros in `B[0..=i]`. Panics if `i >= len`.
    pub fn rank0(&self, i: usize) -> usize {
        i + 1 - self.rank1(i)
    }

    /// Ones in the half-open prefix `B[0..end)`, `end <= len`.
    pub(crate) fn rank1_exclusive(&self, end: usize) -> usize {
        if end == 0 {
            0
        } else {
            self.rank1(end - 1)
        }
    }

    /// Zeros in the half-open prefix `B[0..end)`, `end <= len`.
    pub(crate) fn rank0_exclusive(&self, end: usize) -> usize {
        if end == 0 {
            0
        } else {
            self.rank0(end - 1)
        }
    }

    /// Position of the `k`-th 1-bit, `k >= 1`.
    pub fn select1(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.ones {
            return Err(Error::SelectOutOfRange {
                bit: true,
                k,
                available: self.ones,
            });
        }
        let sample = self.select1_samples[(k - 1) / SELECT_SAMPLE_RATE];
        let lo = sample / RANK_BLOCK_BITS;
        let hi = match self.select1_samples.get((k - 1) / SELECT_SAMPLE_RATE + 1) {
            Some(&next) => next / RANK_BLOCK_BITS,
            None => self.block_ranks.len() - 2,
        };
        // First block b in [lo, hi] whose cumulative count reaches k.
        let off = self.block_ranks[lo + 1..hi + 2].partition_point(|&r| r < k);
        let block = lo + off;
        let mut remaining = k - self.block_ranks[block];
        let word_hi = self.bits.words().len().min((block + 1) * WORDS_PER_BLOCK);
        for w in block * WORDS_PER_BLOCK..word_hi {
            let word = self.bits.words()[w];
            let c = word.count_ones() as usize;
            if remaining <= c {
                return Ok(w * WORD_BITS + select_in_word(word, remaining));
            }
            remaining -= c;
        }
        unreachable!("select1 block scan ran past its block");
    }

    /// Position of the `k`-th 0-bit, `k >= 1`.
    pub fn select0(&self, k: usize) -> Result<usize> {
        let zeros = self.count_zeros();
        if k == 0 || k > zeros {
            return Err(Error::SelectOutOfRange {
                bit: false,
                k,
                available: zeros,
            });
        }
        let sample = self.select0_samples[(k - 1) / SELECT_SAMPLE_RATE];
        let mut lo = sample / RANK_BLOCK_BITS;
        let mut hi = match self.select0_samples.get((k - 1) / SELECT_SAMPLE_RATE + 1) {
            Some(&next) => next / RANK_BLOCK_BITS,
            None => self.block_ranks.len() - 2,
        };
        // First block whose cumulative zero count reaches k.
        let zeros_before = |b: usize| (b * RANK_BLOCK_BITS).min(self.len()) - self.block_ranks[b];
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if zeros_before(mid + 1) >= k {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let block = lo;
        let mut remaining = k - zeros_before(block);
        let word_hi = self.bits.words().len().min((block + 1) * WORDS_PER_BLOCK);
        for w in block * WORDS_PER_BLOCK..word_hi {
            let base = w * WORD_BITS;
            let valid = (self.len() - base).min(WORD_BITS);
            let word_zeros = if valid == WORD_BITS {
                !self.bits.words()[w]
            } else {
                !self.bits.words()[w] & ((1u64 << valid) - 1)
            };
            let c = word_zeros.count_ones() as usize;
            if remaining <= c {
                return Ok(base + select_in_word(word_zeros, remaining));
            }
            remaining -= c;
        }
        unreachable!("select0 block scan ran past its block");
    }
}

/// Position of the `r`-th set bit within `word`, `1 <= r <= popcount(word)`.
fn select_in_word(mut word: u64, r: usize) -> usize {
    for _ in 1..r {
        word &= word - 1;
    }
    word.trailing_zeros() as usize
}

/// Pushes the positions of sampled set bits of `word` (those whose overall
/// rank `t` satisfies `t % SELECT_SAMPLE_RATE == 1`) and returns how many
/// were stored. `seen` is the number of set bits before this word.
fn collect_samples(word: u64, count: usize, seen: usize, base: usize, out: &mut Vec<usize>) -> u64 {
    if count == 0 {
        return 0;
    }
    let mut stored = 0;
    let mut target = (seen / SELECT_SAMPLE_RATE) * SELECT_SAMPLE_RATE + 1;
    if target <= seen {
        target += SELECT_SAMPLE_RATE;
    }
    while target <= seen + count {
        out.push(base + select_in_word(word, target - seen));
        stored += 1;
        target += SELECT_SAMPLE_RATE;
    }
    stored
}
