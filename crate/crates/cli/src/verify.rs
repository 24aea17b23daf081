//! Self-checks behind the `verify` subcommand.
//!
//! Every check builds what it needs from the raw input independently and
//! compares against a slow reference, so a bug in one code path cannot
//! silently vouch for itself. The reports carry the first divergence found,
//! naming the level and position, which is usually enough to reproduce a
//! failure in a unit test.

use wvlt::oracle::{naive_position_map, naive_wm, naive_wt, NodeDecomposition};
use wvlt::{translate, CArray, EffectiveText, Locator, WaveletMatrix, WaveletTree};

pub struct CheckReport {
    pub name: &'static str,
    pub failure: Option<String>,
}

impl CheckReport {
    fn passed(name: &'static str) -> Self {
        Self { name, failure: None }
    }

    fn failed(name: &'static str, failure: String) -> Self {
        Self { name, failure: Some(failure) }
    }

    fn from(name: &'static str, outcome: Result<(), String>) -> Self {
        match outcome {
            Ok(()) => Self::passed(name),
            Err(failure) => Self::failed(name, failure),
        }
    }
}

/// Run the whole battery over `bytes`. Fails (as opposed to reporting
/// failures) only when no structure can be built at all, i.e. empty input.
pub fn run(bytes: &[u8]) -> wvlt::Result<Vec<CheckReport>> {
    let text = EffectiveText::from_bytes(bytes)?;
    let c_array = CArray::new(&text);
    let wt = WaveletTree::new(&text);
    let wm = WaveletMatrix::new(&text);
    let locator = Locator::new(&text, c_array);
    let decomposition = NodeDecomposition::new(&text);

    Ok(vec![
        CheckReport::from("alphabet round trip", check_alphabet(bytes, &text)),
        CheckReport::from("tree bits", check_tree_bits(&text, &wt)),
        CheckReport::from("matrix bits", check_matrix_bits(&text, &wm)),
        CheckReport::from("tree-built matrix", check_adapted_matrix(&text, &wm)),
        CheckReport::from("matrix-built tree", check_adapted_tree(&text, &wt)),
        CheckReport::from("translation bijectivity", check_bijectivity(&text, &locator)),
        CheckReport::from(
            "translation round trip",
            check_round_trip(&text, &locator, &decomposition),
        ),
        CheckReport::from("query agreement", check_queries(&text, &wt, &wm)),
    ])
}

fn check_alphabet(bytes: &[u8], text: &EffectiveText) -> Result<(), String> {
    let decoded = text.decode();
    if decoded != bytes {
        let at = decoded
            .iter()
            .zip(bytes)
            .position(|(a, b)| a != b)
            .unwrap_or(decoded.len().min(bytes.len()));
        return Err(format!("decode diverges from the input at position {at}"));
    }
    for (code, &byte) in text.decode_table().iter().enumerate() {
        if text.code_of(byte) != Some(code as u16) {
            return Err(format!("byte {byte} does not map back to code {code}"));
        }
    }
    Ok(())
}

fn first_bit_mismatch(levels: &[wvlt::RankSelectBitVector], expected: &[Vec<bool>]) -> Result<(), String> {
    if levels.len() != expected.len() {
        return Err(format!("expected {} levels, built {}", expected.len(), levels.len()));
    }
    for (level, reference) in expected.iter().enumerate() {
        for (pos, &bit) in reference.iter().enumerate() {
            if levels[level].get(pos) != bit {
                return Err(format!("bit mismatch at level {level}, position {pos}"));
            }
        }
    }
    Ok(())
}

fn check_tree_bits(text: &EffectiveText, wt: &WaveletTree) -> Result<(), String> {
    first_bit_mismatch(wt.levels(), &naive_wt(text))
}

fn check_matrix_bits(text: &EffectiveText, wm: &WaveletMatrix) -> Result<(), String> {
    let (bits, zero_counts) = naive_wm(text);
    first_bit_mismatch(wm.levels(), &bits)?;
    if wm.zero_counts() != zero_counts {
        return Err(format!(
            "zero counts {:?} do not match the reference {:?}",
            wm.zero_counts(),
            zero_counts
        ));
    }
    Ok(())
}

fn check_adapted_matrix(text: &EffectiveText, wm: &WaveletMatrix) -> Result<(), String> {
    let adapted = translate::build_wm_via_wt(text);
    if &adapted != wm {
        for level in 0..wm.height() {
            for pos in 0..wm.len() {
                if adapted.level(level).get(pos) != wm.level(level).get(pos) {
                    return Err(format!("bit mismatch at level {level}, position {pos}"));
                }
            }
        }
        return Err("structures differ outside the level bits".into());
    }
    Ok(())
}

fn check_adapted_tree(text: &EffectiveText, wt: &WaveletTree) -> Result<(), String> {
    let adapted = translate::build_wt_via_wm(text);
    if &adapted != wt {
        for level in 0..wt.height() {
            for pos in 0..wt.len() {
                if adapted.level(level).get(pos) != wt.level(level).get(pos) {
                    return Err(format!("bit mismatch at level {level}, position {pos}"));
                }
            }
        }
        return Err("structures differ outside the level bits".into());
    }
    Ok(())
}

fn check_bijectivity(text: &EffectiveText, locator: &Locator) -> Result<(), String> {
    let n = text.len();
    for level in 0..text.height() {
        let mut seen = vec![false; n];
        for pos in 0..n {
            let mapped = locator.tree_to_matrix(level, pos);
            let reference = naive_position_map(text, level, pos);
            if mapped != reference {
                return Err(format!(
                    "level {level}, tree position {pos} maps to {mapped}, reference says {reference}"
                ));
            }
            if seen[mapped] {
                return Err(format!("level {level}: matrix position {mapped} hit twice"));
            }
            seen[mapped] = true;
        }
    }
    Ok(())
}

fn check_round_trip(
    text: &EffectiveText,
    locator: &Locator,
    decomposition: &NodeDecomposition,
) -> Result<(), String> {
    for level in 0..text.height() {
        for pos in 0..text.len() {
            let code = text.codes()[decomposition.text_position(level, pos)];
            let mapped = locator.tree_to_matrix(level, pos);
            match locator.matrix_to_tree(level, mapped, code) {
                Ok(back) if back == pos => {}
                Ok(back) => {
                    return Err(format!(
                        "level {level}, tree position {pos} comes back as {back}"
                    ))
                }
                Err(e) => {
                    return Err(format!(
                        "level {level}, tree position {pos} does not invert: {e}"
                    ))
                }
            }
        }
    }
    Ok(())
}

fn check_queries(text: &EffectiveText, wt: &WaveletTree, wm: &WaveletMatrix) -> Result<(), String> {
    let codes = text.codes();
    let n = text.len();
    for (i, &code) in codes.iter().enumerate() {
        if wt.access(i) != code {
            return Err(format!("tree access({i}) is not the text symbol"));
        }
        if wm.access(i) != code {
            return Err(format!("matrix access({i}) is not the text symbol"));
        }
    }
    for code in 0..text.sigma_effective() as u16 {
        let mut count = 0usize;
        let mut occurrence = 0usize;
        for (i, &symbol) in codes.iter().enumerate() {
            if symbol == code {
                count += 1;
                occurrence += 1;
                let tree = wt.select(code, occurrence);
                let matrix = wm.select(code, occurrence);
                if tree != Ok(i) || matrix != Ok(i) {
                    return Err(format!(
                        "select(code {code}, {occurrence}) is {tree:?} / {matrix:?}, expected {i}"
                    ));
                }
            }
            // Rank is monotone, so spot checks at every occurrence plus a
            // coarse grid keep large inputs affordable without losing the
            // positions where the value changes.
            if symbol == code || i % 64 == 0 || i == n - 1 {
                let tree = wt.rank(code, i);
                let matrix = wm.rank(code, i);
                if tree != Ok(count) || matrix != Ok(count) {
                    return Err(format!(
                        "rank(code {code}, {i}) is {tree:?} / {matrix:?}, expected {count}"
                    ));
                }
            }
        }
        let beyond = wt.select(code, count + 1);
        if beyond.is_ok() || beyond != wm.select(code, count + 1) {
            return Err(format!("select past the last occurrence of code {code} succeeded"));
        }
    }
    Ok(())
}
