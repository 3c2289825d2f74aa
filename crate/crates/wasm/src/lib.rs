//! WebAssembly entry points for the static demo page.
//!
//! Each export takes plain strings and returns a JSON document. Failures are
//! reported as `{"error": "..."}` so the page never has to catch exceptions.

use pedlex::corpus::{Upos, WordList};
use pedlex::similarity::{align_lists_detailed, AlignOptions};
use pedlex::{
    normalize_ipa, ped_with_trace, tokenize, DistanceConfig, EditOp, FeatureInventory, MannerDistanceTable, PhoneMetric,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn metric(literal_vowel_branch: bool) -> PhoneMetric {
    let cfg = DistanceConfig { literal_vowel_branch, ..DistanceConfig::default() };
    PhoneMetric::new(cfg, MannerDistanceTable::default()).expect("default table is valid")
}

fn respond(result: pedlex::Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn op_json(op: &EditOp) -> Value {
    match op {
        EditOp::Match { label } => json!({ "op": "match", "from": label, "to": label, "cost": 0.0 }),
        EditOp::Substitute { from, to, cost } => json!({ "op": "sub", "from": from, "to": to, "cost": cost }),
        EditOp::Delete { label } => json!({ "op": "del", "from": label, "to": null, "cost": 1.0 }),
        EditOp::Insert { label } => json!({ "op": "ins", "from": null, "to": label, "cost": 1.0 }),
    }
}

/// Distance between two IPA words with the aligned edit script.
#[wasm_bindgen]
pub fn word_distance(a: &str, b: &str, literal_vowel_branch: bool) -> String {
    respond((|| {
        let inv = FeatureInventory::default_inventory();
        let (pa, pb) = (tokenize(a.trim(), &inv)?, tokenize(b.trim(), &inv)?);
        let r = ped_with_trace(&pa, &pb, &metric(literal_vowel_branch));
        let ops: Vec<Value> = r.ops.unwrap_or_default().iter().map(op_json).collect();
        Ok(json!({
            "a": pa.labels().collect::<Vec<_>>(),
            "b": pb.labels().collect::<Vec<_>>(),
            "distance": r.distance,
            "normalized": r.normalized,
            "ops": ops,
        }))
    })())
}

/// Pairwise phone distances over whitespace-separated symbols.
#[wasm_bindgen]
pub fn phone_matrix(symbols: &str, literal_vowel_branch: bool) -> String {
    respond((|| {
        let inv = FeatureInventory::default_inventory();
        let m = metric(literal_vowel_branch);
        let phones = symbols
            .split_whitespace()
            .map(|s| {
                let label = normalize_ipa(s);
                inv.lookup(&label).cloned().ok_or(pedlex::Error::UnknownSymbol { text: label, offset: 0 })
            })
            .collect::<pedlex::Result<Vec<_>>>()?;
        let rows: Vec<Vec<f64>> = phones.iter().map(|a| phones.iter().map(|b| m.between(a, b)).collect()).collect();
        Ok(json!({
            "labels": phones.iter().map(|p| p.label.as_str()).collect::<Vec<_>>(),
            "distances": rows,
        }))
    })())
}

fn parse_lines(lang: &str, text: &str) -> WordList {
    let mut list = WordList::new(lang, Upos::Noun);
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        list.insert(line, Some(line));
    }
    list
}

/// Greedy list similarity between two newline-separated IPA word lists.
#[wasm_bindgen]
pub fn compare_lists(a: &str, b: &str, min_size: u32) -> String {
    respond((|| {
        let inv = FeatureInventory::default_inventory();
        let opts = AlignOptions { min_size: min_size.max(1) as usize, ..AlignOptions::default() };
        let al = align_lists_detailed(&parse_lines("a", a), &parse_lines("b", b), &inv, &metric(false), &opts)?;
        let pairs: Vec<Value> =
            al.pairs.iter().map(|p| json!({ "from": p.from, "to": p.to, "distance": p.distance })).collect();
        Ok(json!({
            "mu_psi": al.cell.mu_psi,
            "size_a": al.cell.size_a,
            "size_b": al.cell.size_b,
            "skipped": al.cell.skipped_reason,
            "pairs": pairs,
        }))
    })())
}
