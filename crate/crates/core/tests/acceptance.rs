//! Acceptance criteria. Runs without the test harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use pedlex::corpus::{read_wordlist, Upos, WordList};
use pedlex::ped::normalized_ped_counted;
use pedlex::similarity::{align_lists_detailed, build_matrix, AlignOptions};
use pedlex::{
    levenshtein, normalized_ped, pdc, pdv, ped_bounded, ped_distance, tokenize, FeatureInventory, Features, PedStats,
    PhoneMetric, PhoneticString,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Ctx {
    inv: FeatureInventory,
    metric: PhoneMetric,
}

impl Ctx {
    fn word(&self, s: &str) -> PhoneticString {
        tokenize(s, &self.inv).unwrap()
    }

    fn vowel(&self, l: &str) -> pedlex::VowelFeatures {
        match self.inv.lookup(l).unwrap().features {
            Features::Vowel(v) => v,
            _ => panic!("{l} is not a vowel"),
        }
    }

    fn consonant(&self, l: &str) -> pedlex::ConsonantFeatures {
        match self.inv.lookup(l).unwrap().features {
            Features::Consonant(c) => c,
            _ => panic!("{l} is not a consonant"),
        }
    }

    fn pdc(&self, a: &str, b: &str) -> f64 {
        pdc(&self.consonant(a), &self.consonant(b), &self.metric.config, &self.metric.manner)
    }
}

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, fail: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(fail)
    }
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

fn c1_vowel_goldens(ctx: &Ctx) -> Outcome {
    let cfg = &ctx.metric.config;
    let cases = [("ɒ", "a:", 0.667), ("a:", "e", 0.223), ("ə", "æ", 0.277)];
    let mut notes = Vec::new();
    let mut ok = true;
    for (a, b, expected) in cases {
        let t = Instant::now();
        let d = pdv(&ctx.vowel(a), &ctx.vowel(b), cfg);
        let elapsed = t.elapsed();
        ok &= within(d, expected, 0.002) && elapsed < Duration::from_millis(1);
        notes.push(format!("{a}-{b}={d:.4} (expected {expected})"));
    }
    let msg = notes.join(", ");
    check(ok, msg.clone(), msg)
}

fn c2_consonant_goldens(ctx: &Ctx) -> Outcome {
    let fp = ctx.pdc("f", "p");
    let pb = ctx.pdc("p", "b");
    let td = ctx.pdc("t", "d");
    let shs = ctx.pdc("ʃ", "s");
    let pz = ctx.pdc("p", "z");
    let ok = within(fp, 0.100, 0.002)
        && within(pb, 0.200, 0.002)
        && within(td, 0.200, 0.002)
        && (td - 0.217).abs() <= 0.05
        && (shs - 0.267).abs() <= 0.15
        && (pz - 0.35).abs() <= 0.15;
    let msg = format!(
        "f-p={fp:.4} p-b={pb:.4} t-d={td:.4} (expected 0.217, dev {:.3}) ʃ-s={shs:.4} (expected 0.267, dev {:.3}) p-z={pz:.4} (expected 0.35, dev {:.3})",
        (td - 0.217).abs(),
        (shs - 0.267).abs(),
        (pz - 0.35).abs()
    );
    check(ok, msg.clone(), msg)
}

fn c3_word_goldens(ctx: &Ctx) -> Outcome {
    let d = |a: &str, b: &str| ped_distance(&ctx.word(a), &ctx.word(b), &ctx.metric);
    let vater = d("fa:tər", "pedær");
    let shalom = d("ʃəlɒm", "səla:m");
    let pen = d("pɛn", "bɛnd");
    let ok = within(vater, 0.800, 0.005)
        && (vater - 0.817).abs() <= 0.05
        && (shalom - 0.934).abs() <= 0.15
        && within(pen, 1.200, 0.002)
        && pen > 1.0
        && pen < 2.0;
    let msg =
        format!("fa:tər/pedær={vater:.4} (expected 0.817) ʃəlɒm/səla:m={shalom:.4} (expected 0.934) pɛn/bɛnd={pen:.4}");
    check(ok, msg.clone(), msg)
}

fn c4_oracle_equivalence(ctx: &Ctx) -> Outcome {
    let t = Instant::now();
    let small = alphabet(&ctx.inv, SMALL_ALPHABET);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    for k in 0..1000 {
        let (a, b) = if k % 2 == 0 {
            (random_word(&mut rng, &ctx.inv, 0, 6), random_word(&mut rng, &ctx.inv, 0, 6))
        } else {
            (random_word_from(&mut rng, &small, 0, 6), random_word_from(&mut rng, &small, 0, 6))
        };
        let dp = ped_distance(&a, &b, &ctx.metric);
        if dp.to_bits() != exhaustive_ped(a.phones(), b.phones(), &ctx.metric).to_bits() {
            mismatches += 1;
        }
    }
    let elapsed = t.elapsed();
    check(
        mismatches == 0 && elapsed < Duration::from_secs(10),
        format!("1000 pairs exact, {elapsed:.2?}"),
        format!("{mismatches} mismatches, {elapsed:.2?}"),
    )
}

fn c5_property_suite(ctx: &Ctx) -> Outcome {
    let small = alphabet(&ctx.inv, SMALL_ALPHABET);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut failures: Vec<String> = Vec::new();
    for k in 0..10_000 {
        let (a, b) = if k % 2 == 0 {
            (random_word(&mut rng, &ctx.inv, 0, 8), random_word(&mut rng, &ctx.inv, 0, 8))
        } else {
            (random_word_from(&mut rng, &small, 0, 8), random_word_from(&mut rng, &small, 0, 8))
        };
        let d = ped_distance(&a, &b, &ctx.metric);
        let n = normalized_ped(&a, &b, &ctx.metric);
        let (m, l) = (a.len(), b.len());
        let mut fail = |what: &str| failures.push(format!("{what}: {} / {}", a.source_text(), b.source_text()));
        if d.to_bits() != ped_distance(&b, &a, &ctx.metric).to_bits() {
            fail("symmetry");
        }
        if !(0.0..=m.max(l) as f64).contains(&d) {
            fail("range");
        }
        if d < m.abs_diff(l) as f64 {
            fail("length lower bound");
        }
        if d > levenshtein(&a, &b) {
            fail("levenshtein dominance");
        }
        if !(0.0..=1.0).contains(&n) {
            fail("normalized range");
        }
        let bound = (k % 10) as f64 / 10.0;
        let full = normalized_ped_counted(&a, &b, &ctx.metric, &mut PedStats::default());
        match ped_bounded(&a, &b, &ctx.metric, bound, &mut PedStats::default()) {
            Some(v) if v.to_bits() != full.to_bits() => fail("pruned != unpruned"),
            None if full <= bound => fail("pruned wrongly"),
            _ => {}
        }
    }
    check(
        failures.is_empty(),
        "10000 pairs: symmetry, range, |Δlen| bound, Levenshtein dominance, normalized range, pruning exact".into(),
        format!("{} failures, first: {}", failures.len(), failures.first().cloned().unwrap_or_default()),
    )
}

fn pronoun_list(lang: &str) -> WordList {
    read_wordlist(fixture(&format!("pronouns/{lang}_PRON.tsv"))).unwrap()
}

fn c6_similarity_properties(ctx: &Ctx) -> Outcome {
    let ur = pronoun_list("ur");
    let opts = AlignOptions::default();
    let self_cell = align_lists_detailed(&ur, &ur, &ctx.inv, &ctx.metric, &opts).unwrap().cell;

    let tiny = WordList::from_pairs("xx", Upos::Pron, [("a", "ab"), ("c", "cd")]);
    let skipped = align_lists_detailed(&tiny, &ur, &ctx.inv, &ctx.metric, &opts).unwrap().cell;

    let lists = vec![pronoun_list("ur"), pronoun_list("hi"), pronoun_list("ar"), tiny];
    let one = build_matrix(&lists, &ctx.inv, &ctx.metric, &opts, 1).unwrap().to_csv();
    let eight = build_matrix(&lists, &ctx.inv, &ctx.metric, &opts, 8).unwrap().to_csv();

    let ok = ur.len() == 20
        && self_cell.mu_psi == Some(0.0)
        && skipped.mu_psi.is_none()
        && skipped.skipped_reason.is_some()
        && one == eight;
    check(
        ok,
        format!("μΨ(ur,ur)=0 on 20 words; 2-word list skipped; jobs 1 vs 8 CSV identical ({} bytes)", one.len()),
        format!("self={:?} skipped={:?} identical={}", self_cell.mu_psi, skipped.skipped_reason, one == eight),
    )
}

fn c7_pronoun_ordering(ctx: &Ctx) -> Outcome {
    let (ur, hi, ar) = (pronoun_list("ur"), pronoun_list("hi"), pronoun_list("ar"));
    let opts = AlignOptions::default();
    let cell = |a: &WordList, b: &WordList| {
        align_lists_detailed(a, b, &ctx.inv, &ctx.metric, &opts).unwrap().cell.mu_psi.unwrap()
    };
    let ur_hi = cell(&ur, &hi);
    let ur_ar = cell(&ur, &ar);
    let msg = format!("μΨ(ur,hi)={ur_hi:.4} μΨ(ur,ar)={ur_ar:.4}");
    check(ur_hi < ur_ar, msg.clone(), msg)
}

fn c8_performance(ctx: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let small = alphabet(&ctx.inv, SMALL_ALPHABET);
    let make = |lang: &str, rng: &mut ChaCha8Rng| {
        let mut list = WordList::new(lang, Upos::Noun);
        while list.len() < 1000 {
            let w = random_word_from(rng, &small, 3, 9);
            let ipa = w.source_text().to_string();
            list.insert(&ipa, Some(&ipa));
        }
        list
    };
    let a = make("xa", &mut rng);
    let b = make("xb", &mut rng);
    let mean_len = a.entries().iter().map(|e| tokenize(e.ipa.as_ref().unwrap(), &ctx.inv).unwrap().len()).sum::<usize>()
        as f64
        / a.len() as f64;

    let t = Instant::now();
    let pruned = align_lists_detailed(&a, &b, &ctx.inv, &ctx.metric, &AlignOptions::default()).unwrap();
    let pruned_time = t.elapsed();
    let unpruned_opts = AlignOptions { prune: false, ..AlignOptions::default() };
    let unpruned = align_lists_detailed(&a, &b, &ctx.inv, &ctx.metric, &unpruned_opts).unwrap();

    let (pc, uc) = (pruned.stats.ped.cells, unpruned.stats.ped.cells);
    let same = pruned.cell.mu_psi.map(f64::to_bits) == unpruned.cell.mu_psi.map(f64::to_bits);
    let msg = format!(
        "1000x1000 words (mean {mean_len:.2} tokens): pruned {pruned_time:.2?}, DP cells {pc} vs {uc} unpruned ({:.1}%), μΨ identical={same}",
        100.0 * pc as f64 / uc as f64
    );
    check(pruned_time < Duration::from_secs(30) && pc < uc && same, msg.clone(), msg)
}

fn main() {
    let ctx = Ctx { inv: FeatureInventory::default_inventory(), metric: PhoneMetric::default() };
    type Check = fn(&Ctx) -> Outcome;
    let criteria: [(&str, Check); 8] = [
        ("1 vowel goldens", c1_vowel_goldens),
        ("2 consonant goldens", c2_consonant_goldens),
        ("3 word goldens", c3_word_goldens),
        ("4 oracle equivalence", c4_oracle_equivalence),
        ("5 property suite", c5_property_suite),
        ("6 similarity properties", c6_similarity_properties),
        ("7 pronoun similarity ordering", c7_pronoun_ordering),
        ("8 performance and pruning", c8_performance),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run(&ctx) {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
