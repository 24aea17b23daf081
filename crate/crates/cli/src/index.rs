//! The on-disk index format.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic   4 bytes  "WVLT"
//! version 1 byte   currently 1
//! kind    1 byte   0 = wavelet tree, 1 = wavelet matrix
//! n, sigma_effective, sigma_padded, height   4 x u64
//! decode_table     sigma_effective bytes (strictly increasing)
//! c_array          (sigma_padded + 1) x u64
//! level bits       height levels, ceil(n / 64) words each, LSB-first
//! zero counts      height x u64, matrix kind only
//! ```
//!
//! Only the raw level bits are stored; the rank/select acceleration is
//! rebuilt on load. Reading validates every structural invariant it can,
//! so a corrupt file is reported instead of producing a broken index.

use std::io::{self, Read, Write};

use thiserror::Error;
use wvlt::{BitBuffer, CArray, WaveletMatrix, WaveletTree};

pub const MAGIC: [u8; 4] = *b"WVLT";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Tree = 0,
    Matrix = 1,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Tree => "tree",
            Kind::Matrix => "matrix",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Tree(WaveletTree),
    Matrix(WaveletMatrix),
}

/// An index as held in memory: the queryable structure plus the alphabet
/// metadata needed to speak original bytes at the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Index {
    pub decode_table: Vec<u8>,
    pub c_array: CArray,
    pub structure: Structure,
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("unsupported index version {0}")]
    UnsupportedVersion(u8),
    #[error("unknown structure kind byte {0}")]
    BadKind(u8),
    #[error("corrupt index: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn corrupt<T>(msg: impl Into<String>) -> Result<T, ReadError> {
    Err(ReadError::Corrupt(msg.into()))
}

impl Index {
    pub fn kind(&self) -> Kind {
        match self.structure {
            Structure::Tree(_) => Kind::Tree,
            Structure::Matrix(_) => Kind::Matrix,
        }
    }

    pub fn n(&self) -> usize {
        self.c_array.text_len()
    }

    pub fn sigma_effective(&self) -> usize {
        self.decode_table.len()
    }

    pub fn sigma_padded(&self) -> usize {
        self.c_array.sigma_padded()
    }

    pub fn height(&self) -> usize {
        self.levels().len()
    }

    pub fn levels(&self) -> &[wvlt::RankSelectBitVector] {
        match &self.structure {
            Structure::Tree(wt) => wt.levels(),
            Structure::Matrix(wm) => wm.levels(),
        }
    }

    pub fn code_of(&self, symbol: u8) -> Option<u16> {
        self.decode_table.binary_search(&symbol).ok().map(|c| c as u16)
    }

    pub fn symbol(&self, code: u16) -> u8 {
        self.decode_table[code as usize]
    }

    /// The original byte at text position `i`.
    pub fn access(&self, i: usize) -> u8 {
        let code = match &self.structure {
            Structure::Tree(wt) => wt.access(i),
            Structure::Matrix(wm) => wm.access(i),
        };
        self.symbol(code)
    }

    pub fn rank(&self, code: u16, i: usize) -> wvlt::Result<usize> {
        match &self.structure {
            Structure::Tree(wt) => wt.rank(code, i),
            Structure::Matrix(wm) => wm.rank(code, i),
        }
    }

    pub fn select(&self, code: u16, k: usize) -> wvlt::Result<usize> {
        match &self.structure {
            Structure::Tree(wt) => wt.select(code, k),
            Structure::Matrix(wm) => wm.select(code, k),
        }
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(&MAGIC)?;
        w.write_all(&[VERSION, self.kind() as u8])?;
        for value in [self.n(), self.sigma_effective(), self.sigma_padded(), self.height()] {
            w.write_all(&(value as u64).to_le_bytes())?;
        }
        w.write_all(&self.decode_table)?;
        for &entry in self.c_array.entries() {
            w.write_all(&(entry as u64).to_le_bytes())?;
        }
        for level in self.levels() {
            for &word in level.bits().words() {
                w.write_all(&word.to_le_bytes())?;
            }
        }
        if let Structure::Matrix(wm) = &self.structure {
            for &z in wm.zero_counts() {
                w.write_all(&(z as u64).to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self, ReadError> {
        let mut magic = [0u8; 4];
        read_exact(r, &mut magic)?;
        if magic != MAGIC {
            return Err(ReadError::BadMagic);
        }
        let version = read_u8(r)?;
        if version != VERSION {
            return Err(ReadError::UnsupportedVersion(version));
        }
        let kind = match read_u8(r)? {
            0 => Kind::Tree,
            1 => Kind::Matrix,
            byte => return Err(ReadError::BadKind(byte)),
        };
        let n = read_u64(r)? as usize;
        let sigma_effective = read_u64(r)? as usize;
        let sigma_padded = read_u64(r)? as usize;
        let height = read_u64(r)? as usize;

        if n == 0 {
            return corrupt("text length is zero");
        }
        if !(1..=8).contains(&height) || sigma_padded != 1 << height {
            return corrupt(format!("height {height} and sigma_padded {sigma_padded} do not fit"));
        }
        if sigma_effective == 0 || sigma_effective > sigma_padded {
            return corrupt(format!("sigma_effective {sigma_effective} out of range"));
        }

        let mut decode_table = vec![0u8; sigma_effective];
        read_exact(r, &mut decode_table)?;
        if !decode_table.windows(2).all(|w| w[0] < w[1]) {
            return corrupt("decode table is not strictly increasing");
        }

        let mut entries = Vec::with_capacity(sigma_padded + 1);
        for _ in 0..=sigma_padded {
            entries.push(read_u64(r)? as usize);
        }
        if entries[0] != 0 || entries.windows(2).any(|w| w[0] > w[1]) {
            return corrupt("cumulative counts are not a non-decreasing sequence from zero");
        }
        if entries[sigma_padded] != n {
            return corrupt("cumulative counts do not sum to the text length");
        }
        for code in 0..sigma_padded {
            let occurs = entries[code + 1] > entries[code];
            if occurs != (code < sigma_effective) {
                return corrupt(format!("code {code} breaks the effective-alphabet invariant"));
            }
        }
        let c_array = CArray::from_entries(entries);

        let words_per_level = n.div_ceil(64);
        let mut levels = Vec::with_capacity(height);
        for level in 0..height {
            let mut words = Vec::with_capacity(words_per_level);
            for _ in 0..words_per_level {
                words.push(read_u64(r)?);
            }
            match BitBuffer::from_words(words, n) {
                Ok(buffer) => levels.push(buffer),
                Err(_) => return corrupt(format!("level {level} has nonzero pad bits")),
            }
        }

        let structure = match kind {
            Kind::Tree => Structure::Tree(WaveletTree::from_level_buffers(levels, c_array.clone(), sigma_effective)),
            Kind::Matrix => {
                let mut zero_counts = Vec::with_capacity(height);
                for _ in 0..height {
                    zero_counts.push(read_u64(r)? as usize);
                }
                let wm = WaveletMatrix::from_level_buffers(levels, sigma_effective);
                if zero_counts != wm.zero_counts() {
                    return corrupt("stored zero counts do not match the level bits");
                }
                Structure::Matrix(wm)
            }
        };

        let mut probe = [0u8; 1];
        if r.read(&mut probe)? != 0 {
            return corrupt("trailing data after the index");
        }

        Ok(Self {
            decode_table,
            c_array,
            structure,
        })
    }
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<(), ReadError> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == io::ErrorKind::UnexpectedEof {
            ReadError::Corrupt("file is truncated".into())
        } else {
            ReadError::Io(e)
        }
    })
}

fn read_u8<R: Read>(r: &mut R) -> Result<u8, ReadError> {
    let mut buf = [0u8; 1];
    read_exact(r, &mut buf)?;
    Ok(buf[0])
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64, ReadError> {
    let mut buf = [0u8; 8];
    read_exact(r, &mut buf)?;
    Ok(u64::from_le_bytes(buf))
}
