#![allow(dead_code)]

use pedlex::{phonetic_difference, FeatureInventory, Phone, PhoneMetric, PhoneticString};
use rand::Rng;

/// Minimum over every edit script, enumerated recursively without memoization.
/// Costs are accumulated from the start of the strings so each script's total
/// is summed in the same order a left-to-right DP would use.
pub fn exhaustive_ped(a: &[Phone], b: &[Phone], metric: &PhoneMetric) -> f64 {
    fn go(a: &[Phone], b: &[Phone], i: usize, j: usize, acc: f64, metric: &PhoneMetric) -> f64 {
        if i == a.len() && j == b.len() {
            return acc;
        }
        let mut best = f64::INFINITY;
        if i < a.len() && j < b.len() {
            let c = phonetic_difference(&a[i], &b[j], &metric.config, &metric.manner);
            best = best.min(go(a, b, i + 1, j + 1, acc + c, metric));
        }
        if i < a.len() {
            best = best.min(go(a, b, i + 1, j, acc + 1.0, metric));
        }
        if j < b.len() {
            best = best.min(go(a, b, i, j + 1, acc + 1.0, metric));
        }
        best
    }
    go(a, b, 0, 0, 0.0, metric)
}

pub fn random_word<R: Rng>(rng: &mut R, inv: &FeatureInventory, min_len: usize, max_len: usize) -> PhoneticString {
    let len = rng.random_range(min_len..=max_len);
    let phones = inv.phones();
    let mut w = PhoneticString::empty();
    for _ in 0..len {
        w.push(phones[rng.random_range(0..phones.len())].clone());
    }
    w
}

/// Words drawn from a small alphabet so random pairs share many phones.
pub fn random_word_from<R: Rng>(rng: &mut R, alphabet: &[Phone], min_len: usize, max_len: usize) -> PhoneticString {
    let len = rng.random_range(min_len..=max_len);
    let mut w = PhoneticString::empty();
    for _ in 0..len {
        w.push(alphabet[rng.random_range(0..alphabet.len())].clone());
    }
    w
}

pub fn alphabet(inv: &FeatureInventory, labels: &[&str]) -> Vec<Phone> {
    labels.iter().map(|l| inv.lookup(l).unwrap().clone()).collect()
}

pub const SMALL_ALPHABET: &[&str] =
    &["p", "b", "t", "d", "k", "s", "ʃ", "m", "n", "l", "r", "a", "a:", "i", "u", "e", "ə", "ɒ"];

pub fn fixture(path: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(path)
}
