use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

use super::wordlist::{Upos, WordList};

const COLUMNS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineWarning {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    /// One list per observed target tag, in tag order; lemmas sorted.
    pub lists: Vec<WordList>,
    pub sentences: usize,
    pub warnings: Vec<LineWarning>,
}

/// Collects the lemmas of each target tag from a CoNLL-U file.
///
/// Multiword-token ranges (`1-2`) and empty nodes (`1.1`) are skipped.
/// Lines with the wrong column count are reported and skipped. `filter`
/// restricts the tags; an empty filter keeps all ten.
pub fn extract_wordlists(path: impl AsRef<Path>, language: &str, filter: &[Upos]) -> Result<Extraction> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    extract_wordlists_from_str(&text, language, filter, &path.display().to_string())
}

pub fn extract_wordlists_from_str(text: &str, language: &str, filter: &[Upos], source: &str) -> Result<Extraction> {
    let mut by_tag: BTreeMap<Upos, WordList> = BTreeMap::new();
    let mut warnings = Vec::new();
    let mut sentences = 0;
    let mut in_sentence = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if in_sentence {
                sentences += 1;
                in_sentence = false;
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != COLUMNS {
            warnings.push(LineWarning {
                line: idx + 1,
                message: format!("expected {COLUMNS} columns, found {}", cols.len()),
            });
            continue;
        }
        in_sentence = true;
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        let Ok(tag) = cols[3].parse::<Upos>() else {
            continue;
        };
        if !filter.is_empty() && !filter.contains(&tag) {
            continue;
        }
        by_tag.entry(tag).or_insert_with(|| WordList::new(language, tag)).insert(cols[2], None);
    }
    if in_sentence {
        sentences += 1;
    }
    for w in &warnings {
        log::warn!("{source}:{}: {}; line skipped", w.line, w.message);
    }
    if sentences == 0 {
        return Err(Error::Invalid(format!("{source}: no sentences found")));
    }

    let lists = by_tag
        .into_values()
        .filter(|l| !l.is_empty())
        .map(|mut l| {
            l.sort();
            l
        })
        .collect();
    Ok(Extraction { lists, sentences, warnings })
}
