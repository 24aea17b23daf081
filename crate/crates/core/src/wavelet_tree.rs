//! Levelwise (pointerless) wavelet trees.
//!
//! Conceptually the wavelet tree over a text of `height`-bit codes is a
//! perfect binary tree: the root holds the most significant bit of every
//! code in text order, its left child handles the codes whose top bit is 0,
//! the right child the rest, and so on. The levelwise representation stores
//! one bit vector per level, the bits of all `2^level` nodes concatenated in
//! node-rank order, so node boundaries are exactly the cumulative code
//! counts of the `C` array.
//!
//! Construction is by prefix counting: one pass per level that looks up each
//! position's node start in `C` and advances a per-node write cursor. The
//! pass itself only ever says "set bit `pos` of level `level` to `bit`" —
//! that write stream is routed through a [`LevelBitSink`], so the same
//! constructor can fill a plain buffer or be redirected somewhere else
//! entirely (see [`crate::translate`]).

use crate::alphabet::{CArray, EffectiveText};
use crate::bitvec::{BitBuffer, LevelBits, RankSelectBitVector};
use crate::error::{Error, Result};

/// Receiver of the wavelet tree constructor's bit writes.
pub trait LevelBitSink {
    fn set_bit(&mut self, level: usize, pos: usize, bit: bool);
}

impl LevelBitSink for LevelBits {
    fn set_bit(&mut self, level: usize, pos: usize, bit: bool) {
        self.set(level, pos, bit);
    }
}

/// Runs the levelwise wavelet tree constructor over `text`, emitting every
/// bit of every level exactly once into `sink`.
pub fn build_into<S: LevelBitSink>(text: &EffectiveText, c: &CArray, sink: &mut S) {
    let height = text.height();
    for level in 0..height {
        let shift = height - level;
        // Write cursor per node, starting at the node's boundary in C.
        let mut next: Vec<usize> = (0..1usize << level).map(|v| c.get(v << shift)).collect();
        for &code in text.codes() {
            let node = (code as usize) >> shift;
            let pos = next[node];
            next[node] += 1;
            sink.set_bit(level, pos, code >> (shift - 1) & 1 == 1);
        }
    }
}

/// Size of node `v` on `level`: the number of text positions whose code has
/// the node's `level`-bit prefix. `level == height` addresses the virtual
/// leaf level, where the size is the occurrence count of code `v`.
pub fn node_size(c: &CArray, height: usize, level: usize, v: usize) -> usize {
    assert!(level <= height, "level {level} out of range for height {height}");
    assert!(v < 1 << level, "node {v} out of range on level {level}");
    let shift = height - level;
    c.get((v + 1) << shift) - c.get(v << shift)
}

/// A levelwise wavelet tree with rank/select-indexed level bit vectors.
///
/// Queries speak effective codes (see [`EffectiveText`]); callers translate
/// back to bytes through the decode table.
///
/// ```
/// use wvlt::{EffectiveText, WaveletTree};
///
/// let text = EffectiveText::from_bytes(b"wavelettree")?;
/// let wt = WaveletTree::new(&text);
/// let e = text.code_of(b'e').unwrap();
/// assert_eq!(wt.access(0), text.code_of(b'w').unwrap());
/// assert_eq!(wt.rank(e, 10)?, 4);
/// assert_eq!(wt.select(e, 2)?, 5);
/// # Ok::<(), wvlt::Error>(())
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletTree {
    levels: Vec<RankSelectBitVector>,
    c_array: CArray,
    sigma_effective: usize,
    height: usize,
    n: usize,
}

impl WaveletTree {
    pub fn new(text: &EffectiveText) -> Self {
        let c = CArray::new(text);
        let mut out = LevelBits::new(text.height(), text.len());
        build_into(text, &c, &mut out);
        Self::from_level_buffers(out.into_buffers(), c, text.sigma_effective())
    }

    /// Assembles a tree from already-built level buffers, e.g. produced by a
    /// redirected constructor or read back from disk.
    pub fn from_level_buffers(levels: Vec<BitBuffer>, c_array: CArray, sigma_effective: usize) -> Self {
        let height = levels.len();
        assert!(height >= 1, "a wavelet tree has at least one level");
        let n = levels[0].len();
        assert!(levels.iter().all(|l| l.len() == n), "levels must share the text length");
        assert_eq!(c_array.sigma_padded(), 1 << height, "C array does not match the height");
        assert_eq!(c_array.text_len(), n, "C array does not match the text length");
        assert!(sigma_effective >= 1 && sigma_effective <= 1 << height);
        Self {
            levels: levels.into_iter().map(RankSelectBitVector::new).collect(),
            c_array,
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

    pub fn c_array(&self) -> &CArray {
        &self.c_array
    }

    pub fn level(&self, level: usize) -> &RankSelectBitVector {
        &self.levels[level]
    }

    pub fn levels(&self) -> &[RankSelectBitVector] {
        &self.levels
    }

    /// Size of node `v` on `level` (see [`node_size`]).
    pub fn node_size(&self, level: usize, v: usize) -> usize {
        node_size(&self.c_array, self.height, level, v)
    }

    /// The code at text position `i`.
    pub fn access(&self, i: usize) -> u16 {
        assert!(i < self.n, "position {i} out of range for length {}", self.n);
        let mut node = 0usize;
        let mut pos = i;
        let mut code = 0u16;
        for (level, bits) in self.levels.iter().enumerate() {
            let shift = self.height - level;
            let start = self.c_array.get(node << shift);
            let bit = bits.get(pos);
            code = code << 1 | bit as u16;
            node = node << 1 | bit as usize;
            let child_start = self.c_array.get(node << (shift - 1));
            pos = if bit {
                child_start + bits.rank1_exclusive(pos) - bits.rank1_exclusive(start)
            } else {
                child_start + bits.rank0_exclusive(pos) - bits.rank0_exclusive(start)
            };
        }
        code
    }

    /// Occurrences of `code` in text positions `0..=i`.
    pub fn rank(&self, code: u16, i: usize) -> Result<usize> {
        self.check_code(code)?;
        assert!(i < self.n, "position {i} out of range for length {}", self.n);
        let mut node = 0usize;
        let mut end = i + 1;
        for (level, bits) in self.levels.iter().enumerate() {
            let shift = self.height - level;
            let start = self.c_array.get(node << shift);
            let bit = code >> (shift - 1) & 1 == 1;
            node = node << 1 | bit as usize;
            let child_start = self.c_array.get(node << (shift - 1));
            end = if bit {
                child_start + bits.rank1_exclusive(end) - bits.rank1_exclusive(start)
            } else {
                child_start + bits.rank0_exclusive(end) - bits.rank0_exclusive(start)
            };
        }
        Ok(end - self.c_array.get(node))
    }

    /// Text position of the `k`-th occurrence of `code`, `k >= 1`.
    pub fn select(&self, code: u16, k: usize) -> Result<usize> {
        self.check_code(code)?;
        let occurrences = self.c_array.occurrences(code);
        if k == 0 || k > occurrences {
            return Err(Error::OccurrenceOutOfRange { code, k, occurrences });
        }
        // Start on the virtual leaf level and climb back to the root.
        let mut pos = self.c_array.get(code as usize) + k - 1;
        for level in (0..self.height).rev() {
            let bits = &self.levels[level];
            let shift = self.height - level;
            let node_start = self.c_array.get((code as usize) >> shift << shift);
            let child_start = self.c_array.get((code as usize) >> (shift - 1) << (shift - 1));
            let offset = pos - child_start;
            let bit = code >> (shift - 1) & 1 == 1;
            pos = if bit {
                bits.select1(bits.rank1_exclusive(node_start) + offset + 1)
            } else {
                bits.select0(bits.rank0_exclusive(node_start) + offset + 1)
            }
            .expect("child offset stays within its parent node");
        }
        Ok(pos)
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
