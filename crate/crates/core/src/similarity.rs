//! Greedy word-list alignment under normalized phonetic edit distance and
//! the part-of-speech by language-pair similarity matrix.
//!
//! Each word of the shorter list takes its nearest unused word of the longer
//! list; the mean of those normalized distances is the cell value. The
//! shorter list is visited in sorted IPA order and ties go to the
//! lexicographically smallest candidate, so results are reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Upos, WordList};
use crate::distance::PhoneMetric;
use crate::error::{Error, Result};
use crate::inventory::FeatureInventory;
use crate::ipa::{tokenize, PhoneticString};
use crate::ped::{normalize, normalized_ped_counted, ped_bounded, PedStats};

pub const DEFAULT_MIN_SIZE: usize = 5;

pub const CSV_HEADER: &str = "lang_a,lang_b,pos,mu_psi,size_a,size_b,skipped";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ListOrder {
    /// Shorter list visited in sorted IPA order.
    #[default]
    Sorted,
    /// Sorted, then shuffled with the given seed; exposes order sensitivity.
    Shuffle(u64),
}

impl std::str::FromStr for ListOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "sorted" {
            return Ok(ListOrder::Sorted);
        }
        s.strip_prefix("shuffle:")
            .and_then(|seed| seed.parse().ok())
            .map(ListOrder::Shuffle)
            .ok_or_else(|| Error::Invalid(format!("order must be 'sorted' or 'shuffle:<seed>', got '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlignOptions {
    pub min_size: usize,
    pub order: ListOrder,
    pub prune: bool,
    /// Drop words with symbols missing from the inventory instead of failing.
    pub skip_unknown: bool,
}

impl Default for AlignOptions {
    fn default() -> Self {
        AlignOptions { min_size: DEFAULT_MIN_SIZE, order: ListOrder::Sorted, prune: true, skip_unknown: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityCell {
    pub lang_a: String,
    pub lang_b: String,
    pub pos: Upos,
    pub mu_psi: Option<f64>,
    pub size_a: usize,
    pub size_b: usize,
    pub skipped_reason: Option<String>,
}

impl SimilarityCell {
    fn row(&self, sep: char) -> String {
        let mu = self.mu_psi.map(|m| format!("{m:.4}")).unwrap_or_default();
        let skipped = self.skipped_reason.as_deref().unwrap_or("");
        [
            self.lang_a.as_str(),
            self.lang_b.as_str(),
            self.pos.as_str(),
            &mu,
            &self.size_a.to_string(),
            &self.size_b.to_string(),
            skipped,
        ]
        .join(&sep.to_string())
    }

    pub fn csv_row(&self) -> String {
        self.row(',')
    }

    pub fn tsv_row(&self) -> String {
        self.row('\t')
    }
}

/// One greedy match: a word of the shorter list and the word it consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchedPair {
    pub from: String,
    pub to: String,
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AlignStats {
    pub ped: PedStats,
    /// Candidates skipped on the length lower bound alone.
    pub length_skipped: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    pub cell: SimilarityCell,
    pub pairs: Vec<MatchedPair>,
    pub stats: AlignStats,
}

/// A word list with every IPA string tokenized.
#[derive(Debug, Clone)]
pub struct PreparedList {
    pub language: String,
    pub pos: Upos,
    /// Sorted by (IPA, lemma).
    words: Vec<(String, PhoneticString)>,
}

impl PreparedList {
    pub fn new(list: &WordList, inv: &FeatureInventory, skip_unknown: bool) -> Result<Self> {
        if !list.is_empty() && !list.has_ipa() {
            return Err(Error::MissingIpa { language: list.language.clone(), pos: list.pos.to_string() });
        }
        let mut words = Vec::with_capacity(list.len());
        for entry in list.entries() {
            let Some(ipa) = &entry.ipa else {
                log::warn!("{}/{}: '{}' has no IPA; skipped", list.language, list.pos, entry.lemma);
                continue;
            };
            match tokenize(ipa, inv) {
                Ok(phones) => words.push((entry.lemma.clone(), phones)),
                Err(e @ Error::UnknownSymbol { .. }) if skip_unknown => {
                    log::warn!("{}/{}: dropped '{}': {e}", list.language, list.pos, entry.lemma);
                }
                Err(e) => return Err(e),
            }
        }
        words.sort_by(|a, b| a.1.source_text().cmp(b.1.source_text()).then_with(|| a.0.cmp(&b.0)));
        Ok(PreparedList { language: list.language.clone(), pos: list.pos, words })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Aligns two word lists and returns their similarity cell.
pub fn align_lists(
    a: &WordList,
    b: &WordList,
    inv: &FeatureInventory,
    metric: &PhoneMetric,
    opts: &AlignOptions,
) -> Result<SimilarityCell> {
    Ok(align_lists_detailed(a, b, inv, metric, opts)?.cell)
}

pub fn align_lists_detailed(
    a: &WordList,
    b: &WordList,
    inv: &FeatureInventory,
    metric: &PhoneMetric,
    opts: &AlignOptions,
) -> Result<Alignment> {
    let pa = PreparedList::new(a, inv, opts.skip_unknown)?;
    let pb = PreparedList::new(b, inv, opts.skip_unknown)?;
    align_prepared(&pa, &pb, metric, opts)
}

pub fn align_prepared(
    a: &PreparedList,
    b: &PreparedList,
    metric: &PhoneMetric,
    opts: &AlignOptions,
) -> Result<Alignment> {
    if a.pos != b.pos {
        return Err(Error::Invalid(format!("cannot compare {} {} with {} {}", a.language, a.pos, b.language, b.pos)));
    }
    let mut cell = SimilarityCell {
        lang_a: a.language.clone(),
        lang_b: b.language.clone(),
        pos: a.pos,
        mu_psi: None,
        size_a: a.len(),
        size_b: b.len(),
        skipped_reason: None,
    };
    let smallest = a.len().min(b.len());
    if smallest < opts.min_size {
        cell.skipped_reason =
            Some(if smallest == 0 { "empty list".to_string() } else { format!("list smaller than {}", opts.min_size) });
        return Ok(Alignment { cell, pairs: Vec::new(), stats: AlignStats::default() });
    }

    let a_first = match a.len().cmp(&b.len()) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.language <= b.language,
    };
    let (short, long) = if a_first { (a, b) } else { (b, a) };

    let mut order: Vec<usize> = (0..short.len()).collect();
    if let ListOrder::Shuffle(seed) = opts.order {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    let mut greedy = Greedy::new(long);
    let mut stats = AlignStats::default();
    let mut total = 0.0;
    let mut pairs = Vec::with_capacity(short.len());
    for &i in &order {
        let word = &short.words[i].1;
        let (idx, d) = if opts.prune {
            greedy.nearest_pruned(word, metric, &mut stats)
        } else {
            greedy.nearest_exhaustive(word, metric, &mut stats)
        };
        greedy.consume(idx);
        total += d;
        pairs.push(MatchedPair {
            from: word.source_text().to_string(),
            to: long.words[idx].1.source_text().to_string(),
            distance: d,
        });
    }
    let mu = total / short.len() as f64;
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Invariant(format!("mean distance {mu} outside [0, 1]")));
    }
    cell.mu_psi = Some(mu);
    Ok(Alignment { cell, pairs, stats })
}

/// Remaining candidates of the longer list, bucketed by token length.
struct Greedy<'a> {
    words: &'a [(String, PhoneticString)],
    used: Vec<bool>,
    by_len: BTreeMap<usize, Vec<usize>>,
}

impl<'a> Greedy<'a> {
    fn new(list: &'a PreparedList) -> Self {
        let mut by_len: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, (_, w)) in list.words.iter().enumerate() {
            by_len.entry(w.len()).or_default().push(i);
        }
        Greedy { words: &list.words, used: vec![false; list.words.len()], by_len }
    }

    fn consume(&mut self, idx: usize) {
        assert!(!self.used[idx], "candidate {idx} consumed twice");
        self.used[idx] = true;
        let len = self.words[idx].1.len();
        let bucket = self.by_len.get_mut(&len).expect("bucket exists");
        let pos = bucket.binary_search(&idx).expect("index in bucket");
        bucket.remove(pos);
        if bucket.is_empty() {
            self.by_len.remove(&len);
        }
    }

    fn better(d: f64, idx: usize, best: Option<(usize, f64)>) -> bool {
        match best {
            None => true,
            Some((bi, bd)) => d < bd || (d == bd && idx < bi),
        }
    }

    fn nearest_exhaustive(&self, word: &PhoneticString, metric: &PhoneMetric, stats: &mut AlignStats) -> (usize, f64) {
        let mut best = None;
        for (idx, (_, cand)) in self.words.iter().enumerate() {
            if self.used[idx] {
                continue;
            }
            let d = normalized_ped_counted(word, cand, metric, &mut stats.ped);
            if Self::better(d, idx, best) {
                best = Some((idx, d));
            }
        }
        best.expect("longer list has a remaining candidate")
    }

    fn nearest_pruned(&self, word: &PhoneticString, metric: &PhoneMetric, stats: &mut AlignStats) -> (usize, f64) {
        let m = word.len();
        let mut buckets: Vec<(f64, usize)> =
            self.by_len.keys().map(|&n| (normalize(m.abs_diff(n) as f64, m, n), n)).collect();
        buckets.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));

        let mut best: Option<(usize, f64)> = None;
        for (k, &(bound, n)) in buckets.iter().enumerate() {
            let bucket = &self.by_len[&n];
            if best.is_some_and(|(_, bd)| bound > bd) {
                stats.length_skipped += buckets[k..].iter().map(|(_, n)| self.by_len[n].len() as u64).sum::<u64>();
                break;
            }
            for &idx in bucket {
                let limit = best.map_or(f64::INFINITY, |(_, bd)| bd);
                if let Some(d) = ped_bounded(word, &self.words[idx].1, metric, limit, &mut stats.ped) {
                    if Self::better(d, idx, best) {
                        best = Some((idx, d));
                    }
                }
            }
        }
        best.expect("longer list has a remaining candidate")
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportMetadata {
    pub inventory_source: String,
    pub config: String,
    /// Seconds since the Unix epoch; left unset by [`build_matrix`].
    pub created_unix: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityReport {
    pub cells: Vec<SimilarityCell>,
    pub metadata: ReportMetadata,
}

impl SimilarityReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            let _ = writeln!(out, "{}", c.csv_row());
        }
        out
    }

    pub fn to_long_tsv(&self) -> String {
        let mut out = CSV_HEADER.replace(',', "\t");
        out.push('\n');
        for c in &self.cells {
            let _ = writeln!(out, "{}", c.tsv_row());
        }
        out
    }

    pub fn computed(&self) -> impl Iterator<Item = &SimilarityCell> {
        self.cells.iter().filter(|c| c.mu_psi.is_some())
    }

    pub fn get(&self, a: &str, b: &str, pos: Upos) -> Option<&SimilarityCell> {
        self.cells
            .iter()
            .find(|c| c.pos == pos && ((c.lang_a == a && c.lang_b == b) || (c.lang_a == b && c.lang_b == a)))
    }
}

/// Canonical task list: for every tag, every unordered pair of lists with
/// that tag, ordered by (lang_a, lang_b, tag).
fn matrix_tasks(lists: &[WordList]) -> Vec<(usize, usize)> {
    let mut tasks = Vec::new();
    for pos in Upos::ALL {
        let mut members: Vec<usize> = (0..lists.len()).filter(|&i| lists[i].pos == pos).collect();
        members.sort_by(|&x, &y| lists[x].language.cmp(&lists[y].language));
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                tasks.push((i, j));
            }
        }
    }
    tasks.sort_by(|&(a1, b1), &(a2, b2)| {
        (&lists[a1].language, &lists[b1].language, lists[a1].pos, a1, b1).cmp(&(
            &lists[a2].language,
            &lists[b2].language,
            lists[a2].pos,
            a2,
            b2,
        ))
    });
    tasks
}

/// Similarity cells for every unordered pair of lists sharing a tag.
/// Results do not depend on `jobs`.
pub fn build_matrix(
    lists: &[WordList],
    inv: &FeatureInventory,
    metric: &PhoneMetric,
    opts: &AlignOptions,
    jobs: usize,
) -> Result<SimilarityReport> {
    let metadata = ReportMetadata {
        inventory_source: inv.source().to_string(),
        config: format!("{:?}", metric.config),
        created_unix: None,
    };
    let tasks = matrix_tasks(lists);
    if tasks.is_empty() {
        log::warn!("no two word lists share a part-of-speech tag; report is empty");
        return Ok(SimilarityReport { cells: Vec::new(), metadata });
    }
    let prepared = lists.iter().map(|l| PreparedList::new(l, inv, opts.skip_unknown)).collect::<Result<Vec<_>>>()?;
    let run = |&(i, j): &(usize, usize)| align_prepared(&prepared[i], &prepared[j], metric, opts).map(|a| a.cell);
    let cells = run_tasks(&tasks, jobs, run)?;
    Ok(SimilarityReport { cells, metadata })
}

#[cfg(feature = "parallel")]
fn run_tasks<F>(tasks: &[(usize, usize)], jobs: usize, run: F) -> Result<Vec<SimilarityCell>>
where
    F: Fn(&(usize, usize)) -> Result<SimilarityCell> + Sync + Send,
{
    use rayon::prelude::*;
    if jobs <= 1 {
        return tasks.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Invariant(format!("worker pool: {e}")))?;
    pool.install(|| tasks.par_iter().map(run).collect())
}

#[cfg(not(feature = "parallel"))]
fn run_tasks<F>(tasks: &[(usize, usize)], _jobs: usize, run: F) -> Result<Vec<SimilarityCell>>
where
    F: Fn(&(usize, usize)) -> Result<SimilarityCell>,
{
    tasks.iter().map(run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(lang: &str, ipas: &[&str]) -> WordList {
        WordList::from_pairs(lang, Upos::Pron, ipas.iter().map(|s| (*s, *s)))
    }

    fn setup() -> (FeatureInventory, PhoneMetric) {
        (FeatureInventory::default_inventory(), PhoneMetric::default())
    }

    #[test]
    fn self_similarity_is_zero() {
        let (inv, m) = setup();
        let l = list("ur", &["ham", "tum", "vo", "je", "ap", "kja"]);
        let cell = align_lists(&l, &l, &inv, &m, &AlignOptions::default()).unwrap();
        assert_eq!(cell.mu_psi, Some(0.0));
    }

    #[test]
    fn small_lists_skipped() {
        let (inv, m) = setup();
        let a = list("x", &["ab", "cd"]);
        let b = list("y", &["ab", "cd", "ef", "gh", "ij", "kl"]);
        let cell = align_lists(&a, &b, &inv, &m, &AlignOptions::default()).unwrap();
        assert_eq!(cell.mu_psi, None);
        assert_eq!(cell.skipped_reason.as_deref(), Some("list smaller than 5"));
        let opts = AlignOptions { min_size: 2, ..AlignOptions::default() };
        assert!(align_lists(&a, &b, &inv, &m, &opts).unwrap().mu_psi.is_some());
    }

    #[test]
    fn empty_list_skipped_with_reason() {
        let (inv, m) = setup();
        let a = WordList::new("x", Upos::Pron);
        let b = list("y", &["ab", "cd", "ef", "gh", "ij"]);
        let cell = align_lists(&a, &b, &inv, &m, &AlignOptions::default()).unwrap();
        assert_eq!(cell.skipped_reason.as_deref(), Some("empty list"));
    }

    #[test]
    fn missing_ipa_is_error() {
        let (inv, m) = setup();
        let a = WordList::from_lemmas("x", Upos::Pron, ["a", "b", "c", "d", "e"]);
        let b = list("y", &["ab", "cd", "ef", "gh", "ij"]);
        assert!(matches!(align_lists(&a, &b, &inv, &m, &AlignOptions::default()), Err(Error::MissingIpa { .. })));
    }

    #[test]
    fn unknown_symbols_fatal_or_skipped() {
        let (inv, m) = setup();
        let a = list("x", &["ab", "cd", "ef", "gh", "ij", "k☃"]);
        assert!(matches!(align_lists(&a, &a, &inv, &m, &AlignOptions::default()), Err(Error::UnknownSymbol { .. })));
        let opts = AlignOptions { skip_unknown: true, ..AlignOptions::default() };
        let cell = align_lists(&a, &a, &inv, &m, &opts).unwrap();
        assert_eq!(cell.size_a, 5);
    }

    #[test]
    fn each_candidate_used_once() {
        let (inv, m) = setup();
        let a = list("x", &["pa", "pa:", "ba", "ma", "na"]);
        let b = list("y", &["pa", "ta", "ka", "sa", "la", "ra"]);
        let al = align_lists_detailed(&a, &b, &inv, &m, &AlignOptions::default()).unwrap();
        let mut targets: Vec<&str> = al.pairs.iter().map(|p| p.to.as_str()).collect();
        targets.sort();
        targets.dedup();
        assert_eq!(targets.len(), 5);
    }

    #[test]
    fn pos_mismatch_rejected() {
        let (inv, m) = setup();
        let a = list("x", &["pa"]);
        let b = WordList::from_pairs("y", Upos::Verb, [("pa", "pa")]);
        assert!(align_lists(&a, &b, &inv, &m, &AlignOptions::default()).is_err());
    }

    #[test]
    fn order_parsing() {
        assert_eq!("sorted".parse::<ListOrder>().unwrap(), ListOrder::Sorted);
        assert_eq!("shuffle:42".parse::<ListOrder>().unwrap(), ListOrder::Shuffle(42));
        assert!("shuffle:x".parse::<ListOrder>().is_err());
    }

    #[test]
    fn matrix_counts_and_csv() {
        let (inv, m) = setup();
        let words = ["ham", "tum", "vo", "je", "ap", "kja"];
        let lists = vec![list("ur", &words), list("hi", &words), list("ar", &["ana", "anta", "huwa", "hija", "nahnu"])];
        let r = build_matrix(&lists, &inv, &m, &AlignOptions::default(), 1).unwrap();
        assert_eq!(r.cells.len(), 3);
        assert_eq!(r.get("ur", "hi", Upos::Pron).unwrap().mu_psi, Some(0.0));
        let csv = r.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 4);
        assert_eq!(r.cells[0].lang_a, "ar");
    }

    #[test]
    fn matrix_without_shared_tags_is_empty() {
        let (inv, m) = setup();
        let lists = vec![list("ur", &["ham"]), WordList::from_pairs("hi", Upos::Verb, [("ja", "ja")])];
        let r = build_matrix(&lists, &inv, &m, &AlignOptions::default(), 1).unwrap();
        assert!(r.cells.is_empty());
    }
}
