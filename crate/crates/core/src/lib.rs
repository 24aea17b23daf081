//! Wavelet trees and wavelet matrices over byte texts, plus constant-time
//! position translation between their level bit vectors.
//!
//! Both structures answer `access`, `rank` and `select` over a sequence in
//! `O(height)` time; they store the *same* bits per level and differ only in
//! how each level concatenates its nodes. The [`translate`] module exploits
//! that: a small [`Locator`] maps any bit position of one layout to the
//! other in constant time, which is enough to run the wavelet *tree*
//! constructor and obtain a wavelet *matrix* (or vice versa) by rewriting
//! write positions on the fly.
//!
//! ```
//! use wvlt::{translate, EffectiveText, WaveletMatrix, WaveletTree};
//!
//! let text = EffectiveText::from_bytes(b"wavelettree")?;
//! let wt = WaveletTree::new(&text);
//! let wm = WaveletMatrix::new(&text);
//!
//! let e = text.code_of(b'e').unwrap();
//! assert_eq!(wt.rank(e, 10)?, wm.rank(e, 10)?);
//!
//! // Each constructor can also be driven through the other's layout:
//! assert_eq!(translate::build_wm_via_wt(&text), wm);
//! assert_eq!(translate::build_wt_via_wm(&text), wt);
//! # Ok::<(), wvlt::Error>(())
//! ```

pub mod alphabet;
pub mod bitvec;
pub mod error;
pub mod oracle;
pub mod translate;
pub mod wavelet_matrix;
pub mod wavelet_tree;

pub use alphabet::{bitrev, CArray, EffectiveText, Histogram};
pub use bitvec::{BitBuffer, LevelBits, RankSelectBitVector};
pub use error::{Error, Result};
pub use translate::{build_wm_via_wt, build_wt_via_wm, Locator};
pub use wavelet_matrix::WaveletMatrix;
pub use wavelet_tree::WaveletTree;
