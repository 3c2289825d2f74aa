//! Sound-to-sound distances: vowel distance, consonant distance, and the
//! dispatcher used as the substitution cost of the edit distance.

use std::path::Path;

use crate::error::{Error, Result};
use crate::inventory::{ConsonantFeatures, Features, Manner, Phone, VowelFeatures};

/// Bundled manner distance table.
pub const DEFAULT_MANNER_TABLE: &str = include_str!("../data/manner.tsv");

const WEIGHT_SUM_EPS: f64 = 1e-12;

/// Weights and switches for [`pdv`] and [`pdc`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceConfig {
    pub vowel_nonbinary_weight: f64,
    pub vowel_binary_weight: f64,
    pub consonant_pm_weight: f64,
    pub voiced_weight: f64,
    /// Weight of the remaining consonant features (aspirated, airflow, pharyngeal).
    pub beta: f64,
    /// Place+manner distance above which minor features are ignored.
    pub alpha: f64,
    /// Use the threshold-branching vowel formula instead of the uniform one.
    pub literal_vowel_branch: bool,
    pub cross_type_cost: f64,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        DistanceConfig {
            vowel_nonbinary_weight: 2.0 / 3.0,
            vowel_binary_weight: 1.0 / 3.0,
            consonant_pm_weight: 2.0 / 3.0,
            voiced_weight: 1.0 / 5.0,
            beta: 1.0 - 2.0 / 3.0 - 1.0 / 5.0,
            alpha: 0.5,
            literal_vowel_branch: false,
            cross_type_cost: 1.0,
        }
    }
}

impl DistanceConfig {
    pub fn validate(&self) -> Result<()> {
        let weights = [
            ("vowel_nonbinary_weight", self.vowel_nonbinary_weight),
            ("vowel_binary_weight", self.vowel_binary_weight),
            ("consonant_pm_weight", self.consonant_pm_weight),
            ("voiced_weight", self.voiced_weight),
            ("beta", self.beta),
            ("cross_type_cost", self.cross_type_cost),
        ];
        for (name, w) in weights {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::Invalid(format!("{name}={w} must lie in [0, 1]")));
            }
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::Invalid(format!("alpha={} must lie in (0, 1]", self.alpha)));
        }
        let sum = self.consonant_pm_weight + self.voiced_weight + self.beta;
        if (sum - 1.0).abs() > WEIGHT_SUM_EPS {
            return Err(Error::Invalid(format!("consonant weights must sum to 1, got {sum}")));
        }
        Ok(())
    }
}

/// Symmetric manner-to-manner distance lookup with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct MannerDistanceTable {
    entries: [[f64; 8]; 8],
}

impl MannerDistanceTable {
    /// Parses `manner1  manner2  distance` rows. Every unordered pair of
    /// distinct manners must be listed; diagonal rows are optional but must be 0.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut entries = [[f64::NAN; 8]; 8];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 0.0;
        }
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').map(str::trim).filter(|f| !f.is_empty()).collect();
            if fields.len() != 3 {
                return Err(Error::parse(source, lineno, "expected: manner1 manner2 distance"));
            }
            let a: Manner = fields[0].parse().map_err(|m: String| Error::parse(source, lineno, m))?;
            let b: Manner = fields[1].parse().map_err(|m: String| Error::parse(source, lineno, m))?;
            let d: f64 =
                fields[2].parse().map_err(|_| Error::parse(source, lineno, format!("bad distance '{}'", fields[2])))?;
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::parse(source, lineno, format!("distance {d} outside [0, 1]")));
            }
            let (i, j) = (a.index(), b.index());
            if i == j {
                if d != 0.0 {
                    return Err(Error::parse(source, lineno, format!("{a}/{a} must be 0")));
                }
                continue;
            }
            let prev = entries[i][j];
            if !prev.is_nan() && prev != d {
                return Err(Error::parse(
                    source,
                    lineno,
                    format!("{a}/{b} given twice with different values ({prev} and {d})"),
                ));
            }
            entries[i][j] = d;
            entries[j][i] = d;
        }
        let missing: Vec<String> = Manner::ALL
            .iter()
            .enumerate()
            .flat_map(|(i, a)| Manner::ALL[i + 1..].iter().map(move |b| (*a, *b)))
            .filter(|(a, b)| entries[a.index()][b.index()].is_nan())
            .map(|(a, b)| format!("{a}/{b}"))
            .collect();
        if !missing.is_empty() {
            return Err(Error::Invalid(format!("{source}: manner table is missing pairs: {}", missing.join(", "))));
        }
        Ok(MannerDistanceTable { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        MannerDistanceTable::parse(&text, &path.display().to_string())
    }

    #[inline]
    pub fn get(&self, a: Manner, b: Manner) -> f64 {
        self.entries[a.index()][b.index()]
    }
}

impl Default for MannerDistanceTable {
    fn default() -> Self {
        MannerDistanceTable::parse(DEFAULT_MANNER_TABLE, "bundled:manner.tsv").expect("bundled manner table is valid")
    }
}

/// Distance between two vowels, in `[0, 1]`.
pub fn pdv(w: &VowelFeatures, x: &VowelFeatures, cfg: &DistanceConfig) -> f64 {
    let open_back = (w.open - x.open).abs() + (w.back - x.back).abs();
    let rounded = (w.rounded - x.rounded).abs();
    if cfg.literal_vowel_branch {
        if open_back > 0.5 {
            (open_back + rounded) / 3.0
        } else {
            (open_back + 1.0) / 3.0
        }
    } else {
        // Mean of the three per-feature distances: the two chart axes carry
        // vowel_nonbinary_weight between them, rounding carries the rest.
        let nonbinary = open_back / 2.0;
        cfg.vowel_nonbinary_weight * nonbinary + cfg.vowel_binary_weight * rounded
    }
}

/// Distance between two consonants, in `[0, 1]`.
pub fn pdc(w: &ConsonantFeatures, x: &ConsonantFeatures, cfg: &DistanceConfig, xi: &MannerDistanceTable) -> f64 {
    let place_manner = xi.get(w.manner, x.manner) + (w.place - x.place).abs();
    if place_manner > cfg.alpha {
        return place_manner.min(1.0);
    }
    let voiced = (w.voiced - x.voiced).abs();
    let rest =
        ((w.aspirated - x.aspirated).abs() + (w.airflow - x.airflow).abs() + (w.pharyngeal - x.pharyngeal).abs()) / 3.0;
    place_manner * cfg.consonant_pm_weight + voiced * cfg.voiced_weight + rest * cfg.beta
}

/// Substitution cost between two phones. Identical labels cost 0; a vowel
/// never substitutes cheaply for a consonant.
pub fn phonetic_difference(a: &Phone, b: &Phone, cfg: &DistanceConfig, xi: &MannerDistanceTable) -> f64 {
    if a.label == b.label {
        return 0.0;
    }
    match (&a.features, &b.features) {
        (Features::Vowel(v), Features::Vowel(w)) => pdv(v, w, cfg),
        (Features::Consonant(c), Features::Consonant(d)) => pdc(c, d, cfg, xi),
        _ => cfg.cross_type_cost,
    }
}

/// A distance configuration paired with its manner table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhoneMetric {
    pub config: DistanceConfig,
    pub manner: MannerDistanceTable,
}

impl PhoneMetric {
    pub fn new(config: DistanceConfig, manner: MannerDistanceTable) -> Result<Self> {
        config.validate()?;
        Ok(PhoneMetric { config, manner })
    }

    #[inline]
    pub fn between(&self, a: &Phone, b: &Phone) -> f64 {
        phonetic_difference(a, b, &self.config, &self.manner)
    }
}
