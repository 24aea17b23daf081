//! Constant-time position translation between wavelet tree and wavelet
//! matrix level bit vectors, and constructor adapters built on it.
//!
//! On every level both structures hold the same bits, only the nodes are
//! concatenated in different orders: rank order for the tree, bit-reversed
//! rank order for the matrix. A [`Locator`] makes that correspondence
//! computable in constant time per position. It precomputes, in `O(n +
//! sigma)` time and `o(n)` extra space beyond the `C` array:
//!
//! * `leaf_starts` — a rank-indexed bit vector marking, for each effective
//!   symbol, the starting position of its node on the virtual leaf level
//!   (i.e. the distinct values of `C`). One rank query recovers the node
//!   containing any tree position.
//! * `matrix_node_ends` — per level, the running total of node sizes taken
//!   in bit-reversed order: exactly where each node ends inside the matrix
//!   level.
//!
//! [`Locator::tree_to_matrix`] maps a tree position to its matrix position
//! by splitting it into (node, offset) and re-basing the offset on the
//! node's matrix start. [`Locator::matrix_to_tree`] is the inverse, with one
//! caveat: a matrix position alone does not identify its node, so the caller
//! must say which symbol the bit belongs to. That is also why
//! [`build_wt_via_wm`] leans on the matrix constructor's symbol-aware write
//! stream, while [`build_wm_via_wt`] needs no symbols at all.

use crate::alphabet::{bitrev, CArray, EffectiveText};
use crate::bitvec::{BitBuffer, LevelBits, RankSelectBitVector};
use crate::error::{Error, Result};
use crate::wavelet_matrix::{self, SymbolBitSink, WaveletMatrix};
use crate::wavelet_tree::{self, LevelBitSink, WaveletTree};

/// Precomputed tables for constant-time position translation.
///
/// ```
/// use wvlt::{CArray, EffectiveText, Locator};
///
/// let text = EffectiveText::from_bytes(b"wavelettree")?;
/// let locator = Locator::new(&text, CArray::new(&text));
/// // Bit 9 of tree level 2 sits at bit 7 of the matrix level...
/// assert_eq!(locator.tree_to_matrix(2, 9), 7);
/// // ...and knowing its symbol 't' (code 4), the way back:
/// assert_eq!(locator.matrix_to_tree(2, 7, 4), Ok(9));
/// # Ok::<(), wvlt::Error>(())
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Locator {
    c_array: CArray,
    /// Concatenated per-level running node-size totals in matrix node
    /// order; level `l` occupies `2^l - 1 .. 2^(l+1) - 1`.
    matrix_node_ends: Vec<usize>,
    /// Marks the leaf-level start position of every effective symbol.
    leaf_starts: RankSelectBitVector,
    sigma_effective: usize,
    height: usize,
    n: usize,
}

impl Locator {
    pub fn new(text: &EffectiveText, c_array: CArray) -> Self {
        Self::with_build_steps(text, c_array).0
    }

    /// Builds the locator and reports its elementary build steps (word
    /// scans, bit writes, node visits), so construction cost stays
    /// checkable: the count grows linearly in `n` and `sigma`, never with
    /// `n * height`.
    pub fn with_build_steps(text: &EffectiveText, c_array: CArray) -> (Self, u64) {
        let n = text.len();
        let height = text.height();
        let sigma_effective = text.sigma_effective();
        assert_eq!(c_array.sigma_padded(), text.sigma_padded());
        assert_eq!(c_array.text_len(), n);
        let mut steps = 0u64;

        // Every effective symbol occurs, so its C entry lies strictly below
        // n and no two coincide: exactly sigma_effective bits get set.
        let mut starts = BitBuffer::new(n);
        steps += starts.words().len() as u64;
        for code in 0..sigma_effective {
            starts.set(c_array.get(code), true);
            steps += 1;
        }
        let (leaf_starts, index_steps) = RankSelectBitVector::with_build_steps(starts);
        steps += index_steps;

        let mut matrix_node_ends = Vec::with_capacity(text.sigma_padded() - 1);
        for level in 0..height {
            let shift = height - level;
            let mut end = 0usize;
            for u in 0..1usize << level {
                let v = rev(level, u);
                end += c_array.get((v + 1) << shift) - c_array.get(v << shift);
                matrix_node_ends.push(end);
                steps += 1;
            }
        }

        let locator = Self {
            c_array,
            matrix_node_ends,
            leaf_starts,
            sigma_effective,
            height,
            n,
        };
        (locator, steps)
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

    pub fn c_array(&self) -> &CArray {
        &self.c_array
    }

    /// The marked leaf-level node starts.
    pub fn leaf_starts(&self) -> &RankSelectBitVector {
        &self.leaf_starts
    }

    /// Running end positions of the nodes of `level` in matrix order.
    pub fn matrix_node_ends(&self, level: usize) -> &[usize] {
        assert!(level < self.height, "level {level} out of range");
        &self.matrix_node_ends[(1 << level) - 1..(2 << level) - 1]
    }

    /// Rank of the tree node containing tree position `pos` on `level`.
    ///
    /// One rank query on `leaf_starts` finds the leaf node below `pos`;
    /// truncating its rank to `level` bits walks up to the ancestor.
    pub fn tree_node(&self, level: usize, pos: usize) -> usize {
        assert!(level < self.height, "level {level} out of range");
        assert!(pos < self.n, "position {pos} out of range for length {}", self.n);
        (self.leaf_starts.rank1(pos) - 1) >> (self.height - level)
    }

    /// Start of tree node `v` inside its level: a single `C` lookup.
    pub fn tree_node_start(&self, level: usize, v: usize) -> usize {
        assert!(level < self.height, "level {level} out of range");
        assert!(v < 1 << level, "node {v} out of range on level {level}");
        self.c_array.get(v << (self.height - level))
    }

    /// Offset of tree position `pos` within its node.
    pub fn tree_offset(&self, level: usize, pos: usize) -> usize {
        pos - self.tree_node_start(level, self.tree_node(level, pos))
    }

    /// Rank of the matrix node holding `code`'s bits on `level`: the bit
    /// reversal of the corresponding tree node's rank.
    pub fn matrix_node(&self, level: usize, code: u16) -> usize {
        assert!(level < self.height, "level {level} out of range");
        assert!(
            (code as usize) < self.sigma_effective,
            "code {code} out of range for effective alphabet of {}",
            self.sigma_effective
        );
        rev(level, self.tree_node(level, self.c_array.get(code as usize)))
    }

    /// Start of matrix node `u` inside its level.
    pub fn matrix_node_start(&self, level: usize, u: usize) -> usize {
        assert!(level < self.height, "level {level} out of range");
        assert!(u < 1 << level, "node {u} out of range on level {level}");
        if u == 0 {
            0
        } else {
            self.matrix_node_ends(level)[u - 1]
        }
    }

    /// Offset of matrix position `pos` within the node of `code`.
    pub fn matrix_offset(&self, level: usize, pos: usize, code: u16) -> usize {
        let start = self.matrix_node_start(level, self.matrix_node(level, code));
        assert!(pos >= start, "position {pos} precedes the node of code {code} on level {level}");
        pos - start
    }

    /// Matrix position of the bit at tree position `pos` on `level`.
    /// Constant time: one rank query and three lookups.
    pub fn tree_to_matrix(&self, level: usize, pos: usize) -> usize {
        let v = self.tree_node(level, pos);
        let offset = pos - self.tree_node_start(level, v);
        self.matrix_node_start(level, rev(level, v)) + offset
    }

    /// Tree position of the bit at matrix position `pos` on `level`, given
    /// the symbol `code` the bit belongs to.
    ///
    /// The symbol is genuinely required: without it the node containing
    /// `pos` cannot be identified. If `pos` lies outside the node of `code`
    /// the pair is inconsistent and an error is returned.
    pub fn matrix_to_tree(&self, level: usize, pos: usize, code: u16) -> Result<usize> {
        assert!(pos < self.n, "position {pos} out of range for length {}", self.n);
        let u = self.matrix_node(level, code);
        let start = self.matrix_node_start(level, u);
        let end = self.matrix_node_ends(level)[u];
        if pos < start || pos >= end {
            return Err(Error::SymbolNodeMismatch { level, pos, code });
        }
        let v = rev(level, u);
        Ok(self.tree_node_start(level, v) + (pos - start))
    }
}

/// Bit reversal of a node rank; level 0 has the single rank 0, which the
/// general reversal cannot express (zero width).
fn rev(level: usize, rank: usize) -> usize {
    if level == 0 {
        0
    } else {
        bitrev(level, rank)
    }
}

/// Builds a [`WaveletMatrix`] by running the *tree* constructor and
/// rewriting every write position through [`Locator::tree_to_matrix`].
/// The result is identical to [`WaveletMatrix::new`], zero counts included.
pub fn build_wm_via_wt(text: &EffectiveText) -> WaveletMatrix {
    let c_array = CArray::new(text);
    let locator = Locator::new(text, c_array.clone());
    let mut sink = TreeToMatrixSink {
        locator: &locator,
        out: LevelBits::new(text.height(), text.len()),
    };
    wavelet_tree::build_into(text, &c_array, &mut sink);
    WaveletMatrix::from_level_buffers(sink.out.into_buffers(), text.sigma_effective())
}

/// Builds a [`WaveletTree`] by running the *matrix* constructor and
/// rewriting every write position through [`Locator::matrix_to_tree`],
/// which consumes the symbol the constructor hands along with each bit.
/// The result is identical to [`WaveletTree::new`].
pub fn build_wt_via_wm(text: &EffectiveText) -> WaveletTree {
    let c_array = CArray::new(text);
    let locator = Locator::new(text, c_array.clone());
    let mut sink = MatrixToTreeSink {
        locator: &locator,
        out: LevelBits::new(text.height(), text.len()),
    };
    wavelet_matrix::build_into(text, &mut sink);
    WaveletTree::from_level_buffers(sink.out.into_buffers(), c_array, text.sigma_effective())
}

struct TreeToMatrixSink<'a> {
    locator: &'a Locator,
    out: LevelBits,
}

impl LevelBitSink for TreeToMatrixSink<'_> {
    fn set_bit(&mut self, level: usize, pos: usize, bit: bool) {
        self.out.set(level, self.locator.tree_to_matrix(level, pos), bit);
    }
}

struct MatrixToTreeSink<'a> {
    locator: &'a Locator,
    out: LevelBits,
}

impl SymbolBitSink for MatrixToTreeSink<'_> {
    fn set_bit(&mut self, level: usize, pos: usize, bit: bool, code: u16) {
        let tree_pos = self
            .locator
            .matrix_to_tree(level, pos, code)
            .expect("matrix constructor writes stay inside their symbol's node");
        self.out.set(level, tree_pos, bit);
    }
}
