//! Library side of the `wvlt` command line tool: the index file format and
//! the self-check battery. The binary in `main.rs` is a thin shell over
//! these, and the integration tests exercise them directly.

pub mod index;
pub mod verify;
