//! End-to-end tests of the `wvlt` binary, driving it the way a user would
//! and pinning the exact bytes, outputs and exit codes it must produce.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;
use wvlt_cli::index::Index;

fn wvlt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wvlt"))
        .args(args)
        .output()
        .expect("the binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("the process should exit, not be killed")
}

/// A scratch directory holding the running-example text and a path helper.
struct Playground {
    dir: TempDir,
}

impl Playground {
    fn new() -> Self {
        let dir = tempfile::tempdir().expect("tempdir");
        fs::write(dir.path().join("text"), b"wavelettree").unwrap();
        Self { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_owned()
    }

    fn build(&self, kind: &str, output: &str, extra: &[&str]) -> Output {
        let mut args = vec![
            "build".to_owned(),
            self.arg("text"),
            self.arg(output),
            "--structure".to_owned(),
            kind.to_owned(),
        ];
        args.extend(extra.iter().map(|s| s.to_string()));
        let strs: Vec<&str> = args.iter().map(String::as_str).collect();
        wvlt(&strs)
    }
}

fn le_word(bytes: &[u8], offset: usize) -> u64 {
    u64::from_le_bytes(bytes[offset..offset + 8].try_into().unwrap())
}

#[test]
fn build_writes_the_documented_binary_layout() {
    let pg = Playground::new();
    assert_eq!(exit_code(&pg.build("tree", "t.idx", &[])), 0);
    assert_eq!(exit_code(&pg.build("matrix", "m.idx", &[])), 0);

    let tree = fs::read(pg.path("t.idx")).unwrap();
    assert_eq!(&tree[0..4], b"WVLT");
    assert_eq!(tree[4], 1, "version");
    assert_eq!(tree[5], 0, "tree kind byte");
    assert_eq!(le_word(&tree, 6), 11, "n");
    assert_eq!(le_word(&tree, 14), 7, "sigma_effective");
    assert_eq!(le_word(&tree, 22), 8, "sigma_padded");
    assert_eq!(le_word(&tree, 30), 3, "height");
    assert_eq!(&tree[38..45], b"aelrtvw");
    let c: Vec<u64> = (0..9).map(|x| le_word(&tree, 45 + 8 * x)).collect();
    assert_eq!(c, [0, 1, 5, 6, 7, 9, 10, 11, 11]);
    assert_eq!(le_word(&tree, 117), 197, "level 0 = 10100011000");
    assert_eq!(le_word(&tree, 125), 148, "level 1 = 00101001000");
    assert_eq!(le_word(&tree, 133), 222, "level 2 = 01111011000");
    assert_eq!(tree.len(), 141);

    let matrix = fs::read(pg.path("m.idx")).unwrap();
    assert_eq!(matrix[5], 1, "matrix kind byte");
    assert_eq!(&matrix[..5], &tree[..5]);
    assert_eq!(&matrix[6..117], &tree[6..117], "header and C array agree");
    assert_eq!(le_word(&matrix, 117), 197);
    assert_eq!(le_word(&matrix, 125), 148);
    assert_eq!(le_word(&matrix, 133), 574, "level 2 = 01111100010");
    let z: Vec<u64> = (0..3).map(|l| le_word(&matrix, 141 + 8 * l)).collect();
    assert_eq!(z, [7, 8, 5]);
    assert_eq!(matrix.len(), 165);
}

#[test]
fn translated_builds_are_byte_identical() {
    let pg = Playground::new();
    for kind in ["tree", "matrix"] {
        assert_eq!(exit_code(&pg.build(kind, "direct.idx", &[])), 0);
        assert_eq!(exit_code(&pg.build(kind, "adapted.idx", &["--via-translate"])), 0);
        let direct = fs::read(pg.path("direct.idx")).unwrap();
        let adapted = fs::read(pg.path("adapted.idx")).unwrap();
        assert_eq!(direct, adapted, "{kind} build must not depend on the constructor route");
    }
}

#[test]
fn empty_input_is_a_data_error() {
    let pg = Playground::new();
    fs::write(pg.path("empty"), b"").unwrap();
    let out = wvlt(&["build", &pg.arg("empty"), &pg.arg("out.idx")]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("empty"), "stderr: {}", stderr(&out));
    let out = wvlt(&["verify", &pg.arg("empty")]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn queries_answer_the_running_example() {
    let pg = Playground::new();
    pg.build("tree", "t.idx", &[]);
    pg.build("matrix", "m.idx", &[]);
    for idx in ["t.idx", "m.idx"] {
        let access = wvlt(&["query", &pg.arg(idx), "access", "0"]);
        assert_eq!(exit_code(&access), 0);
        assert_eq!(stdout(&access), "w\n");

        let rank = wvlt(&["query", &pg.arg(idx), "rank", "e", "10"]);
        assert_eq!(stdout(&rank), "4\n");

        let select = wvlt(&["query", &pg.arg(idx), "select", "e", "2"]);
        assert_eq!(stdout(&select), "5\n");

        // The same symbol can be spelled as a hex byte.
        let hex = wvlt(&["query", &pg.arg(idx), "rank", "0x65", "10"]);
        assert_eq!(stdout(&hex), "4\n");
    }
}

#[test]
fn out_of_range_queries_are_usage_errors_naming_the_bound() {
    let pg = Playground::new();
    pg.build("tree", "t.idx", &[]);

    let access = wvlt(&["query", &pg.arg("t.idx"), "access", "11"]);
    assert_eq!(exit_code(&access), 1);
    assert!(stderr(&access).contains("11 positions"), "stderr: {}", stderr(&access));

    let select = wvlt(&["query", &pg.arg("t.idx"), "select", "e", "5"]);
    assert_eq!(exit_code(&select), 1);
    assert!(stderr(&select).contains("occurs 4 times"), "stderr: {}", stderr(&select));

    let zero = wvlt(&["query", &pg.arg("t.idx"), "select", "e", "0"]);
    assert_eq!(exit_code(&zero), 1);

    let absent = wvlt(&["query", &pg.arg("t.idx"), "rank", "z", "5"]);
    assert_eq!(exit_code(&absent), 1);
    assert!(stderr(&absent).contains("does not occur"), "stderr: {}", stderr(&absent));

    let bad_symbol = wvlt(&["query", &pg.arg("t.idx"), "rank", "ab", "5"]);
    assert_eq!(exit_code(&bad_symbol), 1);
}

#[test]
fn translate_prints_the_worked_example() {
    let pg = Playground::new();
    let forward = wvlt(&["translate", &pg.arg("text"), "--level", "2", "--pos", "9"]);
    assert_eq!(exit_code(&forward), 0);
    assert_eq!(
        stdout(&forward),
        "matrix position: 7\ntree node: 2\nnode start: 7\noffset: 2\n"
    );

    let inverse = wvlt(&[
        "translate", &pg.arg("text"), "--level", "2", "--pos", "9", "--inverse", "--symbol", "r",
    ]);
    assert_eq!(exit_code(&inverse), 0);
    assert_eq!(
        stdout(&inverse),
        "tree position: 6\nmatrix node: 2\nnode start: 8\noffset: 1\n"
    );

    // Level 0 holds a single node in both layouts: the identity map.
    let level0 = wvlt(&["translate", &pg.arg("text"), "--level", "0", "--pos", "5"]);
    assert_eq!(exit_code(&level0), 0);
    assert!(stdout(&level0).starts_with("matrix position: 5\n"));
}

#[test]
fn translate_rejects_bad_arguments() {
    let pg = Playground::new();
    let no_symbol = wvlt(&["translate", &pg.arg("text"), "--level", "2", "--pos", "9", "--inverse"]);
    assert_eq!(exit_code(&no_symbol), 1);

    let bad_level = wvlt(&["translate", &pg.arg("text"), "--level", "3", "--pos", "0"]);
    assert_eq!(exit_code(&bad_level), 1);
    assert!(stderr(&bad_level).contains("3 levels"));

    let bad_pos = wvlt(&["translate", &pg.arg("text"), "--level", "0", "--pos", "11"]);
    assert_eq!(exit_code(&bad_pos), 1);

    // Position 2 on level 2 belongs to symbol 'e', not 'r': the inverse is
    // only defined for the symbol whose bit sits there.
    let mismatch = wvlt(&[
        "translate", &pg.arg("text"), "--level", "2", "--pos", "2", "--inverse", "--symbol", "r",
    ]);
    assert_eq!(exit_code(&mismatch), 1);
    assert!(stderr(&mismatch).contains("outside the node"));
}

#[test]
fn verify_passes_on_well_formed_texts() {
    let pg = Playground::new();
    let out = wvlt(&["verify", &pg.arg("text")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches(": ok").count(), 8, "stdout: {text}");
    assert!(text.ends_with("all checks passed\n"));

    fs::write(pg.path("one"), b"x").unwrap();
    assert_eq!(exit_code(&wvlt(&["verify", &pg.arg("one")])), 0);

    fs::write(pg.path("unary"), b"yyyyyyy").unwrap();
    assert_eq!(exit_code(&wvlt(&["verify", &pg.arg("unary")])), 0);
}

#[test]
fn dump_prints_the_level_bits() {
    let pg = Playground::new();
    pg.build("matrix", "m.idx", &[]);
    let out = wvlt(&["dump", &pg.arg("m.idx")]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "kind: matrix\n\
         n: 11\n\
         sigma: 7\n\
         sigma_padded: 8\n\
         height: 3\n\
         alphabet: a e l r t v w\n\
         C: 0 1 5 6 7 9 10 11 11\n\
         level 0: 10100011000\n\
         level 1: 00101001000\n\
         level 2: 01111100010\n\
         z: 7 8 5\n"
    );

    pg.build("tree", "t.idx", &[]);
    let out = wvlt(&["dump", &pg.arg("t.idx")]);
    let text = stdout(&out);
    assert!(text.starts_with("kind: tree\n"));
    assert!(text.contains("level 2: 01111011000\n"));
    assert!(!text.contains("z:"), "tree indexes carry no zero counts");
}

#[test]
fn corrupt_indexes_are_data_errors() {
    let pg = Playground::new();
    pg.build("matrix", "m.idx", &[]);
    let good = fs::read(pg.path("m.idx")).unwrap();

    let corruptions: Vec<(&str, Vec<u8>)> = vec![
        ("bad magic", {
            let mut b = good.clone();
            b[0] = b'X';
            b
        }),
        ("bad version", {
            let mut b = good.clone();
            b[4] = 9;
            b
        }),
        ("bad kind", {
            let mut b = good.clone();
            b[5] = 3;
            b
        }),
        ("truncated", good[..good.len() - 5].to_vec()),
        ("trailing bytes", {
            let mut b = good.clone();
            b.push(0);
            b
        }),
        ("pad bits set", {
            let mut b = good.clone();
            b[117 + 4] = 0xff; // bits 32.. of level 0, past n = 11
            b
        }),
        ("zero counts disagree", {
            let mut b = good.clone();
            b[141] = 6;
            b
        }),
    ];
    for (what, bytes) in corruptions {
        let path = pg.path("broken.idx");
        fs::write(&path, bytes).unwrap();
        let out = wvlt(&["dump", path.to_str().unwrap()]);
        assert_eq!(exit_code(&out), 2, "{what} must be rejected");
        let out = wvlt(&["query", path.to_str().unwrap(), "access", "0"]);
        assert_eq!(exit_code(&out), 2, "{what} must be rejected by query too");
    }
}

#[test]
fn index_files_round_trip_for_random_texts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d5);
    let pg = Playground::new();
    for case in 0..40 {
        let n = rng.gen_range(1..=512);
        let sigma = rng.gen_range(1..=32u16);
        let bytes: Vec<u8> = (0..n).map(|_| rng.gen_range(0..sigma) as u8).collect();
        fs::write(pg.path("rand"), &bytes).unwrap();
        for kind in ["tree", "matrix"] {
            let out = wvlt(&["build", &pg.arg("rand"), &pg.arg("rand.idx"), "--structure", kind]);
            assert_eq!(exit_code(&out), 0, "case {case}");
            let written = fs::read(pg.path("rand.idx")).unwrap();
            let index = Index::read_from(&mut written.as_slice()).unwrap();
            let mut rewritten = Vec::new();
            index.write_to(&mut rewritten).unwrap();
            assert_eq!(rewritten, written, "case {case}: round trip must be stable");
        }
    }
}

#[test]
fn reads_arbitrary_paths() {
    let pg = Playground::new();
    let nested = pg.dir.path().join("a dir with spaces");
    fs::create_dir(&nested).unwrap();
    let text_path: &Path = &nested.join("täxt");
    fs::write(text_path, b"mississippi").unwrap();
    let idx = nested.join("out.idx");
    let out = wvlt(&["build", text_path.to_str().unwrap(), idx.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let access = wvlt(&["query", idx.to_str().unwrap(), "access", "4"]);
    assert_eq!(stdout(&access), "i\n");
}
