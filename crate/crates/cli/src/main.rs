//! `wvlt` — build, query and inspect wavelet tree / wavelet matrix indexes.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad arguments, out-of-range
//! queries), 2 for data errors (unreadable or corrupt files, empty input,
//! failed verification).

use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wvlt::{translate, CArray, EffectiveText, Locator, WaveletMatrix, WaveletTree};
use wvlt_cli::index::{Index, Structure};
use wvlt_cli::verify;

#[derive(Parser)]
#[command(name = "wvlt", version, about = "Wavelet tree / wavelet matrix indexes over byte texts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a raw byte text.
    Build {
        /// File holding the text, read as raw bytes.
        input: PathBuf,
        /// Where to write the index.
        output: PathBuf,
        /// Which structure to build.
        #[arg(long, value_enum, default_value_t = StructureKind::Tree)]
        structure: StructureKind,
        /// Drive the construction through the other layout's constructor,
        /// rewriting every write position on the fly. The resulting file is
        /// byte-identical to a direct build.
        #[arg(long)]
        via_translate: bool,
    },
    /// Answer a single query against an index file.
    Query {
        /// Index file produced by `build`.
        index: PathBuf,
        #[command(subcommand)]
        query: QueryKind,
    },
    /// Print an index file in readable form.
    Dump {
        /// Index file produced by `build`.
        index: PathBuf,
    },
    /// Map one level-bit position between the tree and matrix layouts.
    Translate {
        /// File holding the text, read as raw bytes.
        input: PathBuf,
        /// Level of the position.
        #[arg(long)]
        level: usize,
        /// Position within the level's bit vector.
        #[arg(long)]
        pos: usize,
        /// Map a matrix position back to a tree position. The inverse needs
        /// to know which symbol's bit sits at the position, so --symbol is
        /// required.
        #[arg(long, requires = "symbol")]
        inverse: bool,
        /// Symbol owning the bit: a single character or 0xNN.
        #[arg(long)]
        symbol: Option<String>,
    },
    /// Build every structure from a text file and cross-check them against
    /// slow reference implementations.
    Verify {
        /// File holding the text, read as raw bytes.
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureKind {
    Tree,
    Matrix,
}

#[derive(Subcommand)]
enum QueryKind {
    /// Print the symbol at position i.
    Access { i: usize },
    /// Count occurrences of a symbol in positions 0..=i.
    Rank { symbol: String, i: usize },
    /// Print the position of the k-th occurrence of a symbol (k is 1-based).
    Select { symbol: String, k: usize },
}

enum CliError {
    /// Arguments that cannot be satisfied: exit 1.
    Usage(String),
    /// Broken input data or failed verification: exit 2.
    Data(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Build { input, output, structure, via_translate } => {
            cmd_build(&input, &output, structure, via_translate)
        }
        Command::Query { index, query } => cmd_query(&index, query),
        Command::Dump { index } => cmd_dump(&index),
        Command::Translate { input, level, pos, inverse, symbol } => {
            cmd_translate(&input, level, pos, inverse, symbol.as_deref())
        }
        Command::Verify { input } => cmd_verify(&input),
    }
}

fn cmd_build(
    input: &Path,
    output: &Path,
    structure: StructureKind,
    via_translate: bool,
) -> Result<(), CliError> {
    let text = read_text(input)?;
    let c_array = CArray::new(&text);
    let structure = match (structure, via_translate) {
        (StructureKind::Tree, false) => Structure::Tree(WaveletTree::new(&text)),
        (StructureKind::Tree, true) => Structure::Tree(translate::build_wt_via_wm(&text)),
        (StructureKind::Matrix, false) => Structure::Matrix(WaveletMatrix::new(&text)),
        (StructureKind::Matrix, true) => Structure::Matrix(translate::build_wm_via_wt(&text)),
    };
    let index = Index {
        decode_table: text.decode_table().to_vec(),
        c_array,
        structure,
    };
    let file = fs::File::create(output)
        .map_err(|e| CliError::Data(format!("cannot create {}: {e}", output.display())))?;
    let mut writer = io::BufWriter::new(file);
    index
        .write_to(&mut writer)
        .and_then(|()| writer.flush())
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", output.display())))
}

fn cmd_query(path: &Path, query: QueryKind) -> Result<(), CliError> {
    let index = load_index(path)?;
    match query {
        QueryKind::Access { i } => {
            check_position(i, index.n())?;
            println!("{}", display_symbol(index.access(i)));
        }
        QueryKind::Rank { symbol, i } => {
            let code = required_code(&index, &symbol)?;
            check_position(i, index.n())?;
            let count = index.rank(code, i).map_err(|e| CliError::Usage(e.to_string()))?;
            println!("{count}");
        }
        QueryKind::Select { symbol, k } => {
            let code = required_code(&index, &symbol)?;
            let pos = index.select(code, k).map_err(|e| CliError::Usage(e.to_string()))?;
            println!("{pos}");
        }
    }
    Ok(())
}

fn cmd_dump(path: &Path) -> Result<(), CliError> {
    let index = load_index(path)?;
    let mut out = String::new();
    out.push_str(&format!("kind: {}\n", index.kind().as_str()));
    out.push_str(&format!("n: {}\n", index.n()));
    out.push_str(&format!("sigma: {}\n", index.sigma_effective()));
    out.push_str(&format!("sigma_padded: {}\n", index.sigma_padded()));
    out.push_str(&format!("height: {}\n", index.height()));
    let alphabet: Vec<String> = index.decode_table.iter().map(|&b| display_symbol(b)).collect();
    out.push_str(&format!("alphabet: {}\n", alphabet.join(" ")));
    let entries: Vec<String> = index.c_array.entries().iter().map(|e| e.to_string()).collect();
    out.push_str(&format!("C: {}\n", entries.join(" ")));
    for (level, bits) in index.levels().iter().enumerate() {
        let line: String = (0..index.n()).map(|i| if bits.get(i) { '1' } else { '0' }).collect();
        out.push_str(&format!("level {level}: {line}\n"));
    }
    if let Structure::Matrix(wm) = &index.structure {
        let z: Vec<String> = wm.zero_counts().iter().map(|z| z.to_string()).collect();
        out.push_str(&format!("z: {}\n", z.join(" ")));
    }
    print!("{out}");
    Ok(())
}

fn cmd_translate(
    input: &Path,
    level: usize,
    pos: usize,
    inverse: bool,
    symbol: Option<&str>,
) -> Result<(), CliError> {
    let text = read_text(input)?;
    if level >= text.height() {
        return Err(CliError::Usage(format!(
            "level {level} out of range: the structure has {} levels",
            text.height()
        )));
    }
    check_position(pos, text.len())?;
    let locator = Locator::new(&text, CArray::new(&text));
    if inverse {
        let symbol = symbol.expect("clap enforces --symbol with --inverse");
        let byte = parse_symbol(symbol)?;
        let code = text.code_of(byte).ok_or_else(|| absent_symbol(byte))?;
        let i = locator
            .matrix_to_tree(level, pos, code)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let u = locator.matrix_node(level, code);
        let q = locator.matrix_node_start(level, u);
        println!("tree position: {i}");
        println!("matrix node: {u}");
        println!("node start: {q}");
        println!("offset: {}", pos - q);
    } else {
        let j = locator.tree_to_matrix(level, pos);
        let v = locator.tree_node(level, pos);
        let p = locator.tree_node_start(level, v);
        println!("matrix position: {j}");
        println!("tree node: {v}");
        println!("node start: {p}");
        println!("offset: {}", pos - p);
    }
    Ok(())
}

fn cmd_verify(input: &Path) -> Result<(), CliError> {
    let bytes = read_bytes(input)?;
    let reports = verify::run(&bytes)
        .map_err(|e| CliError::Data(format!("{}: {e}", input.display())))?;
    let mut first_failure = None;
    for report in &reports {
        match &report.failure {
            None => println!("{}: ok", report.name),
            Some(msg) => {
                println!("{}: FAILED ({msg})", report.name);
                first_failure.get_or_insert_with(|| format!("{} ({msg})", report.name));
            }
        }
    }
    match first_failure {
        None => {
            println!("all checks passed");
            Ok(())
        }
        Some(failure) => Err(CliError::Data(format!("verification failed: {failure}"))),
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<EffectiveText, CliError> {
    let bytes = read_bytes(path)?;
    EffectiveText::from_bytes(&bytes)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_index(path: &Path) -> Result<Index, CliError> {
    let file = fs::File::open(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut reader = io::BufReader::new(file);
    Index::read_from(&mut reader)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn check_position(i: usize, n: usize) -> Result<(), CliError> {
    if i < n {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "position {i} out of range: the text has {n} positions"
        )))
    }
}

fn required_code(index: &Index, symbol: &str) -> Result<u16, CliError> {
    let byte = parse_symbol(symbol)?;
    index.code_of(byte).ok_or_else(|| absent_symbol(byte))
}

fn absent_symbol(byte: u8) -> CliError {
    CliError::Usage(format!(
        "symbol {} does not occur in the indexed text",
        display_symbol(byte)
    ))
}

/// Accepts a symbol argument as a single character or as `0xNN`.
fn parse_symbol(s: &str) -> Result<u8, CliError> {
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        if let Ok(byte) = u8::from_str_radix(hex, 16) {
            return Ok(byte);
        }
    } else {
        let mut chars = s.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if (c as u32) < 256 {
                return Ok(c as u8);
            }
        }
    }
    Err(CliError::Usage(format!(
        "invalid symbol {s:?}: expected a single byte character or 0xNN"
    )))
}

/// Renders a byte the way `access` answers are printed: printable ASCII as
/// itself, everything else escaped.
fn display_symbol(byte: u8) -> String {
    std::ascii::escape_default(byte).to_string()
}
