//! Greedy longest-match tokenization of IPA text into phones.

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};
use crate::inventory::{FeatureInventory, Phone};

/// Canonical length suffix. The IPA length mark `ː` is folded onto it.
pub const LENGTH_MARK: char = ':';

/// NFC-normalizes `text` and folds `ː` onto the ASCII colon.
pub fn normalize_ipa(text: &str) -> String {
    text.nfc().map(|c| if c == 'ː' { LENGTH_MARK } else { c }).collect()
}

/// A word as a sequence of resolved phones.
#[derive(Debug, Clone, PartialEq)]
pub struct PhoneticString {
    phones: Vec<Phone>,
    source_text: String,
}

impl PhoneticString {
    pub fn new(phones: Vec<Phone>) -> Self {
        let source_text = phones.iter().map(|p| p.label.as_str()).collect();
        PhoneticString { phones, source_text }
    }

    pub fn empty() -> Self {
        PhoneticString::new(Vec::new())
    }

    pub fn phones(&self) -> &[Phone] {
        &self.phones
    }

    /// Length in sounds.
    pub fn len(&self) -> usize {
        self.phones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phones.is_empty()
    }

    /// Normalized source text; equals the concatenated phone labels.
    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.phones.iter().map(|p| p.label.as_str())
    }

    pub fn push(&mut self, phone: Phone) {
        self.source_text.push_str(&phone.label);
        self.phones.push(phone);
    }
}

/// Splits `text` into inventory phones, always taking the longest label that
/// matches at the current position.
///
/// Offsets in [`Error::UnknownSymbol`] count code points of the normalized text.
pub fn tokenize(text: &str, inv: &FeatureInventory) -> Result<PhoneticString> {
    let normalized = normalize_ipa(text);
    let chars: Vec<char> = normalized.chars().collect();
    if let Some(offset) = chars.iter().position(|c| c.is_whitespace()) {
        return Err(Error::Invalid(format!("whitespace at offset {offset} inside IPA word \"{normalized}\"")));
    }

    let mut phones = Vec::with_capacity(chars.len());
    let mut pos = 0;
    let mut candidate = String::new();
    while pos < chars.len() {
        let longest = inv.max_label_chars().min(chars.len() - pos);
        let mut matched = None;
        for len in (1..=longest).rev() {
            candidate.clear();
            candidate.extend(&chars[pos..pos + len]);
            if let Some(phone) = inv.lookup(&candidate) {
                matched = Some((phone, len));
                break;
            }
        }
        let (phone, len) = matched.ok_or_else(|| Error::UnknownSymbol { text: normalized.clone(), offset: pos })?;
        phones.push(phone.clone());
        pos += len;
    }
    Ok(PhoneticString { phones, source_text: normalized })
}
