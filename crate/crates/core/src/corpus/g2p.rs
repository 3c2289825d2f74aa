use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

use super::wordlist::WordList;

pub const DEFAULT_DEVANAGARI_TABLE: &str = include_str!("../../data/g2p_devanagari.tsv");
pub const DEFAULT_PERSO_ARABIC_TABLE: &str = include_str!("../../data/g2p_perso_arabic.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Script {
    PersoArabic,
    Devanagari,
}

impl Script {
    pub fn name(self) -> &'static str {
        match self {
            Script::PersoArabic => "perso-arabic",
            Script::Devanagari => "devanagari",
        }
    }

    /// Script conventionally used for a language id, if known.
    pub fn of_language(lang: &str) -> Option<Script> {
        match lang.to_ascii_lowercase().as_str() {
            "ar" | "ara" | "arabic" | "fa" | "fas" | "per" | "persian" | "ur" | "urd" | "urdu" => {
                Some(Script::PersoArabic)
            }
            "hi" | "hin" | "hindi" | "mr" | "mar" | "marathi" | "sa" | "san" | "sanskrit" => Some(Script::Devanagari),
            _ => None,
        }
    }

    fn of_char(c: char) -> Option<Script> {
        match c as u32 {
            0x0600..=0x06FF | 0x0750..=0x077F | 0x08A0..=0x08FF | 0xFB50..=0xFDFF | 0xFE70..=0xFEFF => {
                Some(Script::PersoArabic)
            }
            0x0900..=0x097F | 0xA8E0..=0xA8FF => Some(Script::Devanagari),
            _ => None,
        }
    }

    pub fn default_table(self) -> G2pTable {
        let (text, source) = match self {
            Script::PersoArabic => (DEFAULT_PERSO_ARABIC_TABLE, "bundled:g2p_perso_arabic.tsv"),
            Script::Devanagari => (DEFAULT_DEVANAGARI_TABLE, "bundled:g2p_devanagari.tsv"),
        };
        G2pTable::parse(text, source).expect("bundled G2P table is valid")
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Script {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perso-arabic" | "arabic" => Ok(Script::PersoArabic),
            "devanagari" => Ok(Script::Devanagari),
            _ => Err(Error::Invalid(format!("unknown script '{s}' (expected perso-arabic or devanagari)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G2pRule {
    pub grapheme: String,
    /// Empty deletes the grapheme.
    pub ipa: String,
    /// Languages this rule is restricted to; `None` applies everywhere.
    pub languages: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default)]
struct Slot {
    generic: Option<String>,
    overrides: Vec<(Vec<String>, String)>,
}

impl Slot {
    fn resolve(&self, lang: &str) -> Option<&str> {
        self.overrides
            .iter()
            .find(|(langs, _)| langs.iter().any(|l| l == lang))
            .map(|(_, ipa)| ipa.as_str())
            .or(self.generic.as_deref())
    }

    fn resolve_override(&self, lang: &str) -> bool {
        self.overrides.iter().any(|(langs, _)| langs.iter().any(|l| l == lang))
    }
}

/// Ordered longest-match grapheme-to-IPA rules for one script.
#[derive(Debug, Clone)]
pub struct G2pTable {
    pub script: Script,
    rules: Vec<G2pRule>,
    slots: HashMap<String, Slot>,
    max_grapheme_chars: usize,
    source: String,
}

impl G2pTable {
    /// Parses `grapheme  ipa  [lang,lang...]` rows. A `# script=<name>`
    /// comment must declare the script.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut script = None;
        let mut rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim_end_matches('\r');
            if let Some(comment) = line.trim_start().strip_prefix('#') {
                if let Some(name) = comment.trim().strip_prefix("script=") {
                    script =
                        Some(name.trim().parse::<Script>().map_err(|e| Error::parse(source, lineno, e.to_string()))?);
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(Error::parse(source, lineno, "expected: grapheme<TAB>ipa[<TAB>languages]"));
            }
            let grapheme: String = fields[0].trim().nfc().collect();
            if grapheme.is_empty() {
                return Err(Error::parse(source, lineno, "empty grapheme"));
            }
            let languages = fields
                .get(2)
                .map(|f| f.split(',').map(|l| l.trim().to_string()).filter(|l| !l.is_empty()).collect::<Vec<_>>())
                .filter(|v| !v.is_empty());
            rules.push((lineno, G2pRule { grapheme, ipa: fields[1].trim().nfc().collect(), languages }));
        }
        let script = script.ok_or_else(|| Error::parse(source, 1, "missing '# script=<name>' declaration"))?;

        let mut slots: HashMap<String, Slot> = HashMap::new();
        let mut max_grapheme_chars = 0;
        for (lineno, rule) in &rules {
            let slot = slots.entry(rule.grapheme.clone()).or_default();
            match &rule.languages {
                None => {
                    if slot.generic.is_some() {
                        return Err(Error::parse(source, *lineno, format!("duplicate rule for '{}'", rule.grapheme)));
                    }
                    slot.generic = Some(rule.ipa.clone());
                }
                Some(langs) => {
                    if let Some(l) = langs.iter().find(|l| slot.resolve_override(l)) {
                        return Err(Error::parse(
                            source,
                            *lineno,
                            format!("duplicate '{}' rule for language {l}", rule.grapheme),
                        ));
                    }
                    slot.overrides.push((langs.clone(), rule.ipa.clone()));
                }
            }
            max_grapheme_chars = max_grapheme_chars.max(rule.grapheme.chars().count());
        }
        Ok(G2pTable {
            script,
            rules: rules.into_iter().map(|(_, r)| r).collect(),
            slots,
            max_grapheme_chars,
            source: source.to_string(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        G2pTable::parse(&text, &path.display().to_string())
    }

    pub fn rules(&self) -> &[G2pRule] {
        &self.rules
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Converts one word, scanning left to right and taking the longest
    /// grapheme rule applicable to `lang` at each position.
    ///
    /// Returns the first unmapped character on failure.
    pub fn convert_word(&self, word: &str, lang: &str) -> Result<String, char> {
        let chars: Vec<char> = word.nfc().collect();
        let mut out = String::new();
        let mut pos = 0;
        let mut key = String::new();
        while pos < chars.len() {
            let longest = self.max_grapheme_chars.min(chars.len() - pos);
            let mut hit = None;
            for len in (1..=longest).rev() {
                key.clear();
                key.extend(&chars[pos..pos + len]);
                if let Some(ipa) = self.slots.get(&key).and_then(|s| s.resolve(lang)) {
                    hit = Some((ipa, len));
                    break;
                }
            }
            let (ipa, len) = hit.ok_or(chars[pos])?;
            out.push_str(ipa);
            pos += len;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DroppedWord {
    pub lemma: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct G2pOutcome {
    /// Converted words only, each with IPA.
    pub list: WordList,
    pub dropped: Vec<DroppedWord>,
}

/// Fills in IPA for every lemma. Words with unmapped graphemes, or whose
/// conversion is empty after vowel omission, are dropped and reported once.
pub fn g2p_convert(words: &WordList, table: &G2pTable) -> Result<G2pOutcome> {
    check_script(words, table)?;
    let mut list = WordList::new(words.language.clone(), words.pos);
    let mut dropped = Vec::new();
    for entry in words.entries() {
        match table.convert_word(&entry.lemma, &words.language) {
            Ok(ipa) if ipa.is_empty() => dropped
                .push(DroppedWord { lemma: entry.lemma.clone(), reason: "empty IPA after vowel omission".into() }),
            Ok(ipa) => {
                list.insert(&entry.lemma, Some(&ipa));
            }
            Err(c) => dropped.push(DroppedWord {
                lemma: entry.lemma.clone(),
                reason: format!("unmapped grapheme '{c}' (U+{:04X})", c as u32),
            }),
        }
    }
    for d in &dropped {
        log::info!("{}/{}: dropped '{}': {}", words.language, words.pos, d.lemma, d.reason);
    }
    if list.is_empty() && !words.is_empty() {
        log::warn!("{}/{}: every word was dropped by G2P", words.language, words.pos);
    }
    Ok(G2pOutcome { list, dropped })
}

fn check_script(words: &WordList, table: &G2pTable) -> Result<()> {
    let mismatch = || Error::ScriptMismatch {
        table: table.script.to_string(),
        list: format!("{} ({})", words.language, other(table.script)),
    };
    if let Some(s) = Script::of_language(&words.language) {
        if s != table.script {
            return Err(mismatch());
        }
    }
    let (mut same, mut different) = (0usize, 0usize);
    for c in words.lemmas().flat_map(str::chars) {
        match Script::of_char(c) {
            Some(s) if s == table.script => same += 1,
            Some(_) => different += 1,
            None => {}
        }
    }
    if different > same {
        return Err(mismatch());
    }
    Ok(())
}

fn other(s: Script) -> Script {
    match s {
        Script::PersoArabic => Script::Devanagari,
        Script::Devanagari => Script::PersoArabic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Upos;

    #[test]
    fn devanagari_drops_short_vowels() {
        let t = Script::Devanagari.default_table();
        assert_eq!(t.convert_word("पिता", "hi").unwrap(), "pt̪a");
        assert_eq!(t.convert_word("किताब", "hi").unwrap(), "kt̪ab");
        assert_eq!(t.convert_word("ि", "hi").unwrap(), "");
    }

    #[test]
    fn devanagari_nukta_longest_match() {
        let t = Script::Devanagari.default_table();
        // Precomposed U+095B decomposes under NFC to ज + nukta.
        assert_eq!(t.convert_word("\u{095B}", "hi").unwrap(), "z");
        assert_eq!(t.convert_word("ज", "hi").unwrap(), "dʒ");
    }

    #[test]
    fn arabic_writes_long_vowels_only() {
        let t = Script::PersoArabic.default_table();
        assert_eq!(t.convert_word("سلام", "ar").unwrap(), "sla:m");
        assert_eq!(t.convert_word("سَلام", "ar").unwrap(), "sla:m");
    }

    #[test]
    fn language_overrides() {
        let t = Script::PersoArabic.default_table();
        assert_eq!(t.convert_word("ثابت", "ar").unwrap(), "θa:bt");
        assert_eq!(t.convert_word("ثابت", "ur").unwrap(), "sa:bt");
        assert_eq!(t.convert_word("ثابت", "fa").unwrap(), "sa:bt");
        assert_eq!(t.convert_word("کھانا", "ur").unwrap(), "kʰa:na:");
    }

    #[test]
    fn unmapped_and_empty_words_dropped() {
        let t = Script::Devanagari.default_table();
        let list = WordList::from_lemmas("hi", Upos::Noun, ["पिता", "ि", "पx"]);
        let out = g2p_convert(&list, &t).unwrap();
        assert_eq!(out.list.len(), 1);
        assert_eq!(out.list.entries()[0].ipa.as_deref(), Some("pt̪a"));
        assert_eq!(out.dropped.len(), 2);
        assert!(out.dropped.iter().any(|d| d.lemma == "ि" && d.reason.contains("empty")));
        assert!(out.dropped.iter().any(|d| d.lemma == "पx" && d.reason.contains("unmapped")));
    }

    #[test]
    fn script_mismatch() {
        let t = Script::Devanagari.default_table();
        let urdu = WordList::from_lemmas("ur", Upos::Pron, ["ہم"]);
        assert!(matches!(g2p_convert(&urdu, &t), Err(Error::ScriptMismatch { .. })));
        let unknown_lang = WordList::from_lemmas("xx", Upos::Pron, ["ہم", "تم"]);
        assert!(matches!(g2p_convert(&unknown_lang, &t), Err(Error::ScriptMismatch { .. })));
    }

    #[test]
    fn table_parsing_errors() {
        assert!(G2pTable::parse("a\tb\n", "t").is_err());
        assert!(G2pTable::parse("# script=devanagari\nक\tk\nक\tq\n", "t").is_err());
        assert!(G2pTable::parse("# script=devanagari\nक\tk\thi\nक\tq\thi,mr\n", "t").is_err());
        assert!(G2pTable::parse("# script=klingon\n", "t").is_err());
        let ok = G2pTable::parse("# script=devanagari\nक\tk\nक\tq\thi\n", "t").unwrap();
        assert_eq!(ok.convert_word("क", "hi").unwrap(), "q");
        assert_eq!(ok.convert_word("क", "mr").unwrap(), "k");
    }

    #[test]
    fn deterministic() {
        let t = Script::PersoArabic.default_table();
        let a = t.convert_word("پاکستان", "ur");
        assert_eq!(a, t.convert_word("پاکستان", "ur"));
    }
}
