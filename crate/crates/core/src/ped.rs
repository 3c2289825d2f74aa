//! Phonetic edit distance: unit insertion and deletion, substitution priced
//! by [`PhoneMetric`].
//!
//! The DP keeps two rolling rows. [`ped_bounded`] abandons a computation as
//! soon as every cell of a row, divided by the longer length, exceeds the
//! caller's bound; step costs are non-negative, so a row minimum is a lower
//! bound on the final value and pruning never changes a returned result.

use std::fmt;

use crate::distance::PhoneMetric;
use crate::inventory::Phone;
use crate::ipa::PhoneticString;

const INDEL_COST: f64 = 1.0;

/// One step of an aligned edit script.
#[derive(Debug, Clone, PartialEq)]
pub enum EditOp {
    Match { label: String },
    Substitute { from: String, to: String, cost: f64 },
    Delete { label: String },
    Insert { label: String },
}

impl EditOp {
    pub fn cost(&self) -> f64 {
        match self {
            EditOp::Match { .. } => 0.0,
            EditOp::Substitute { cost, .. } => *cost,
            EditOp::Delete { .. } | EditOp::Insert { .. } => INDEL_COST,
        }
    }
}

impl fmt::Display for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditOp::Match { label } => write!(f, "match\t{label}\t{label}\t{:.3}", 0.0),
            EditOp::Substitute { from, to, cost } => write!(f, "sub\t{from}\t{to}\t{cost:.3}"),
            EditOp::Delete { label } => write!(f, "del\t{label}\t-\t{INDEL_COST:.3}"),
            EditOp::Insert { label } => write!(f, "ins\t-\t{label}\t{INDEL_COST:.3}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PedResult {
    pub distance: f64,
    /// `distance / max(len)`; 0 when both strings are empty.
    pub normalized: f64,
    pub ops: Option<Vec<EditOp>>,
}

/// Counters for DP work, used to measure pruning.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PedStats {
    pub calls: u64,
    pub cells: u64,
    pub abandoned: u64,
}

impl PedStats {
    pub fn merge(&mut self, other: PedStats) {
        self.calls += other.calls;
        self.cells += other.cells;
        self.abandoned += other.abandoned;
    }
}

pub fn normalize(distance: f64, len_a: usize, len_b: usize) -> f64 {
    let longest = len_a.max(len_b);
    if longest == 0 {
        0.0
    } else {
        distance / longest as f64
    }
}

/// Rolling-row DP. Rows run over the longer string so the row buffers are
/// `O(min(m, n))`.
fn dp(
    source: &[Phone],
    target: &[Phone],
    metric: &PhoneMetric,
    bound: Option<f64>,
    stats: &mut PedStats,
) -> Option<f64> {
    stats.calls += 1;
    let (rows, cols) = if source.len() >= target.len() { (source, target) } else { (target, source) };
    let longest = rows.len().max(1) as f64;
    let mut prev: Vec<f64> = (0..=cols.len()).map(|j| j as f64 * INDEL_COST).collect();
    let mut cur = vec![0.0; cols.len() + 1];
    for (i, r) in rows.iter().enumerate() {
        cur[0] = (i + 1) as f64 * INDEL_COST;
        let mut row_min = cur[0];
        for (j, c) in cols.iter().enumerate() {
            let sub = prev[j] + metric.between(r, c);
            let del = prev[j + 1] + INDEL_COST;
            let ins = cur[j] + INDEL_COST;
            let v = sub.min(del).min(ins);
            cur[j + 1] = v;
            row_min = row_min.min(v);
        }
        stats.cells += cols.len() as u64;
        std::mem::swap(&mut prev, &mut cur);
        if let Some(bound) = bound {
            if row_min / longest > bound {
                stats.abandoned += 1;
                return None;
            }
        }
    }
    Some(prev[cols.len()])
}

/// Raw phonetic edit distance.
pub fn ped_distance(source: &PhoneticString, target: &PhoneticString, metric: &PhoneMetric) -> f64 {
    dp(source.phones(), target.phones(), metric, None, &mut PedStats::default()).expect("unbounded DP always completes")
}

/// Distance and normalized distance, without an edit script.
pub fn ped(source: &PhoneticString, target: &PhoneticString, metric: &PhoneMetric) -> PedResult {
    let distance = ped_distance(source, target, metric);
    PedResult { distance, normalized: normalize(distance, source.len(), target.len()), ops: None }
}

pub fn normalized_ped(source: &PhoneticString, target: &PhoneticString, metric: &PhoneMetric) -> f64 {
    ped(source, target, metric).normalized
}

/// Normalized distance if it can be at most `bound`; `None` once the DP
/// proves the normalized distance exceeds `bound`. A returned value is
/// bit-identical to [`normalized_ped`].
pub fn ped_bounded(
    source: &PhoneticString,
    target: &PhoneticString,
    metric: &PhoneMetric,
    bound: f64,
    stats: &mut PedStats,
) -> Option<f64> {
    dp(source.phones(), target.phones(), metric, Some(bound), stats).map(|d| normalize(d, source.len(), target.len()))
}

/// Like [`normalized_ped`] but counts DP work.
pub fn normalized_ped_counted(
    source: &PhoneticString,
    target: &PhoneticString,
    metric: &PhoneMetric,
    stats: &mut PedStats,
) -> f64 {
    let d = dp(source.phones(), target.phones(), metric, None, stats).expect("unbounded");
    normalize(d, source.len(), target.len())
}

/// Full-matrix DP with backtracking. Ties prefer substitution, then
/// deletion, then insertion.
pub fn ped_with_trace(source: &PhoneticString, target: &PhoneticString, metric: &PhoneMetric) -> PedResult {
    let (a, b) = (source.phones(), target.phones());
    let (m, n) = (a.len(), b.len());
    let w = n + 1;
    let mut table = vec![0.0; (m + 1) * w];
    for (j, cell) in table[..w].iter_mut().enumerate() {
        *cell = j as f64 * INDEL_COST;
    }
    for i in 1..=m {
        table[i * w] = i as f64 * INDEL_COST;
        for j in 1..=n {
            let sub = table[(i - 1) * w + j - 1] + metric.between(&a[i - 1], &b[j - 1]);
            let del = table[(i - 1) * w + j] + INDEL_COST;
            let ins = table[i * w + j - 1] + INDEL_COST;
            table[i * w + j] = sub.min(del).min(ins);
        }
    }

    let mut ops = Vec::with_capacity(m.max(n));
    let (mut i, mut j) = (m, n);
    while i > 0 || j > 0 {
        let here = table[i * w + j];
        if i > 0 && j > 0 {
            let cost = metric.between(&a[i - 1], &b[j - 1]);
            if table[(i - 1) * w + j - 1] + cost == here {
                ops.push(if a[i - 1].label == b[j - 1].label {
                    EditOp::Match { label: a[i - 1].label.clone() }
                } else {
                    EditOp::Substitute { from: a[i - 1].label.clone(), to: b[j - 1].label.clone(), cost }
                });
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if i > 0 && table[(i - 1) * w + j] + INDEL_COST == here {
            ops.push(EditOp::Delete { label: a[i - 1].label.clone() });
            i -= 1;
        } else {
            ops.push(EditOp::Insert { label: b[j - 1].label.clone() });
            j -= 1;
        }
    }
    ops.reverse();

    let distance = table[m * w + n];
    PedResult { distance, normalized: normalize(distance, m, n), ops: Some(ops) }
}

/// Unit-cost Levenshtein distance over phone labels.
pub fn levenshtein(source: &PhoneticString, target: &PhoneticString) -> f64 {
    let (a, b) = (source.phones(), target.phones());
    let mut prev: Vec<f64> = (0..=b.len()).map(|j| j as f64).collect();
    let mut cur = vec![0.0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = (i + 1) as f64;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + if x.label == y.label { 0.0 } else { 1.0 };
            cur[j + 1] = sub.min(prev[j + 1] + 1.0).min(cur[j] + 1.0);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}
