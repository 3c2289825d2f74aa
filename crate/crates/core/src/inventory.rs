//! Articulatory feature model and the IPA symbol inventory.
//!
//! Vowels are points on the vowel chart (`open`, `back`) plus `rounded`.
//! Consonants carry a continuous place of articulation, one of eight manner
//! rows, and four minor features. The inventory is a plain tab-separated
//! file so new languages can be added without touching code:
//!
//! ```text
//! i    v  0     0     0
//! ʃ    c  fricative  0.45  0  0  0  0
//! ```

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ipa::normalize_ipa;

/// Bundled default inventory.
pub const DEFAULT_INVENTORY: &str = include_str!("../data/inventory.tsv");

/// Height labels, close to open.
pub const OPEN_GRID: [f64; 7] = [0.0, 0.17, 0.33, 0.50, 0.67, 0.83, 1.0];
/// Backness labels, front to back.
pub const BACK_GRID: [f64; 5] = [0.0, 0.25, 0.50, 0.75, 1.0];
/// Airflow values: pulmonic, implosive, ejective.
pub const AIRFLOW_VALUES: [f64; 3] = [0.0, 0.5, 1.0];

const GRID_EPS: f64 = 1e-9;

fn on_grid(value: f64, grid: &[f64]) -> bool {
    grid.iter().any(|g| (g - value).abs() < GRID_EPS)
}

/// Manner of articulation, in consonant-chart row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Manner {
    Plosive,
    Nasal,
    Trill,
    TapFlap,
    Fricative,
    LateralFricative,
    Approximant,
    LateralApproximant,
}

impl Manner {
    pub const ALL: [Manner; 8] = [
        Manner::Plosive,
        Manner::Nasal,
        Manner::Trill,
        Manner::TapFlap,
        Manner::Fricative,
        Manner::LateralFricative,
        Manner::Approximant,
        Manner::LateralApproximant,
    ];

    /// Row index in the consonant chart.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Manner::Plosive => "plosive",
            Manner::Nasal => "nasal",
            Manner::Trill => "trill",
            Manner::TapFlap => "tap-flap",
            Manner::Fricative => "fricative",
            Manner::LateralFricative => "lateral-fricative",
            Manner::Approximant => "approximant",
            Manner::LateralApproximant => "lateral-approximant",
        }
    }
}

impl fmt::Display for Manner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Manner {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Manner::ALL.iter().copied().find(|m| m.name() == s).ok_or_else(|| format!("unknown manner '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VowelFeatures {
    pub open: f64,
    pub back: f64,
    pub rounded: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsonantFeatures {
    pub place: f64,
    pub manner: Manner,
    pub voiced: f64,
    pub aspirated: f64,
    pub airflow: f64,
    pub pharyngeal: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Features {
    Vowel(VowelFeatures),
    Consonant(ConsonantFeatures),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhoneType {
    Consonant,
    Vowel,
}

/// One IPA sound with its feature bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct Phone {
    pub label: String,
    pub features: Features,
}

impl Phone {
    pub fn vowel(label: impl Into<String>, open: f64, back: f64, rounded: f64) -> Self {
        Phone { label: label.into(), features: Features::Vowel(VowelFeatures { open, back, rounded }) }
    }

    pub fn consonant(label: impl Into<String>, features: ConsonantFeatures) -> Self {
        Phone { label: label.into(), features: Features::Consonant(features) }
    }

    pub fn phone_type(&self) -> PhoneType {
        match self.features {
            Features::Vowel(_) => PhoneType::Vowel,
            Features::Consonant(_) => PhoneType::Consonant,
        }
    }

    pub fn is_vowel(&self) -> bool {
        self.phone_type() == PhoneType::Vowel
    }

    fn to_row(&self) -> String {
        match &self.features {
            Features::Vowel(v) => format!("{}\tv\t{}\t{}\t{}", self.label, v.open, v.back, v.rounded),
            Features::Consonant(c) => format!(
                "{}\tc\t{}\t{}\t{}\t{}\t{}\t{}",
                self.label, c.manner, c.place, c.voiced, c.aspirated, c.airflow, c.pharyngeal
            ),
        }
    }
}

/// Immutable mapping from IPA label to [`Phone`].
#[derive(Debug, Clone)]
pub struct FeatureInventory {
    phones: Vec<Phone>,
    by_label: HashMap<String, usize>,
    max_label_chars: usize,
    source: String,
}

impl PartialEq for FeatureInventory {
    fn eq(&self, other: &Self) -> bool {
        self.phones == other.phones
    }
}

impl FeatureInventory {
    /// Builds an inventory from phones, validating every feature invariant.
    pub fn from_phones(phones: Vec<Phone>, source: impl Into<String>) -> Result<Self> {
        let source = source.into();
        if phones.is_empty() {
            return Err(Error::Invalid(format!("{source}: inventory must be non-empty")));
        }
        let mut by_label = HashMap::with_capacity(phones.len());
        let mut max_label_chars = 0;
        for (i, phone) in phones.iter().enumerate() {
            validate_phone(phone).map_err(|m| Error::Invalid(format!("{source}: {m}")))?;
            if by_label.insert(phone.label.clone(), i).is_some() {
                return Err(Error::Invalid(format!("{source}: duplicate label '{}'", phone.label)));
            }
            max_label_chars = max_label_chars.max(phone.label.chars().count());
        }
        Ok(FeatureInventory { phones, by_label, max_label_chars, source })
    }

    /// Parses the tab-separated inventory format.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut phones = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let phone = parse_row(line).map_err(|m| Error::parse(source, lineno, m))?;
            validate_phone(&phone).map_err(|m| Error::parse(source, lineno, m))?;
            if let Some(prev) = seen.insert(phone.label.clone(), lineno) {
                return Err(Error::parse(
                    source,
                    lineno,
                    format!("duplicate label '{}' (first defined on line {prev})", phone.label),
                ));
            }
            phones.push(phone);
        }
        FeatureInventory::from_phones(phones, source)
    }

    pub fn default_inventory() -> Self {
        FeatureInventory::parse(DEFAULT_INVENTORY, "bundled:inventory.tsv").expect("bundled inventory is valid")
    }

    pub fn lookup(&self, label: &str) -> Option<&Phone> {
        self.by_label.get(label).map(|&i| &self.phones[i])
    }

    pub fn contains(&self, label: &str) -> bool {
        self.by_label.contains_key(label)
    }

    pub fn phones(&self) -> &[Phone] {
        &self.phones
    }

    pub fn len(&self) -> usize {
        self.phones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phones.is_empty()
    }

    /// Longest label length in code points; bounds the tokenizer's lookahead.
    pub fn max_label_chars(&self) -> usize {
        self.max_label_chars
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Serializes back to the file format, one row per phone in load order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for phone in &self.phones {
            out.push_str(&phone.to_row());
            out.push('\n');
        }
        out
    }
}

/// Reads and validates an inventory file.
pub fn load_inventory(path: impl AsRef<Path>) -> Result<FeatureInventory> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    FeatureInventory::parse(&text, &path.display().to_string())
}

fn parse_num(field: &str, name: &str) -> Result<f64, String> {
    let v: f64 = field.trim().parse().map_err(|_| format!("{name}: '{field}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("{name}: '{field}' is not finite"));
    }
    Ok(v)
}

fn parse_row(line: &str) -> Result<Phone, String> {
    let fields: Vec<&str> = line.split('\t').map(str::trim).filter(|f| !f.is_empty()).collect();
    let label = normalize_ipa(fields.first().ok_or("empty row")?);
    let label = label.as_str();
    match fields.get(1).copied() {
        Some("v") => {
            if fields.len() != 5 {
                return Err(format!("vowel row needs 5 fields (label v open back rounded), got {}", fields.len()));
            }
            Ok(Phone::vowel(
                label,
                parse_num(fields[2], "open")?,
                parse_num(fields[3], "back")?,
                parse_num(fields[4], "rounded")?,
            ))
        }
        Some("c") => {
            if fields.len() != 8 {
                return Err(format!(
                    "consonant row needs 8 fields (label c manner place voiced aspirated airflow pharyngeal), got {}",
                    fields.len()
                ));
            }
            Ok(Phone::consonant(
                label,
                ConsonantFeatures {
                    manner: fields[2].parse()?,
                    place: parse_num(fields[3], "place")?,
                    voiced: parse_num(fields[4], "voiced")?,
                    aspirated: parse_num(fields[5], "aspirated")?,
                    airflow: parse_num(fields[6], "airflow")?,
                    pharyngeal: parse_num(fields[7], "pharyngeal")?,
                },
            ))
        }
        Some(other) => Err(format!("type must be 'v' or 'c', got '{other}'")),
        None => Err(format!("row for '{label}' has no type")),
    }
}

fn binary(value: f64, name: &str, label: &str) -> Result<(), String> {
    if value == 0.0 || value == 1.0 {
        Ok(())
    } else {
        Err(format!("{label}: {name} must be 0 or 1, got {value}"))
    }
}

fn validate_phone(phone: &Phone) -> Result<(), String> {
    let label = phone.label.as_str();
    if label.is_empty() {
        return Err("empty label".into());
    }
    if label.chars().any(char::is_whitespace) {
        return Err(format!("label '{label}' contains whitespace"));
    }
    match &phone.features {
        Features::Vowel(v) => {
            if !on_grid(v.open, &OPEN_GRID) {
                return Err(format!("{label}: open={} is not a vowel-chart height", v.open));
            }
            if !on_grid(v.back, &BACK_GRID) {
                return Err(format!("{label}: back={} is not a vowel-chart backness", v.back));
            }
            binary(v.rounded, "rounded", label)
        }
        Features::Consonant(c) => {
            if !(c.place > 0.0 && c.place < 1.0) {
                return Err(format!("{label}: place={} must lie in (0, 1)", c.place));
            }
            binary(c.voiced, "voiced", label)?;
            binary(c.aspirated, "aspirated", label)?;
            binary(c.pharyngeal, "pharyngeal", label)?;
            if !on_grid(c.airflow, &AIRFLOW_VALUES) {
                return Err(format!("{label}: airflow must be 0, 0.5 or 1, got {}", c.airflow));
            }
            Ok(())
        }
    }
}
