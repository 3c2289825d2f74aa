use std::fmt;
use std::path::Path;
use std::str::FromStr;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// The ten part-of-speech tags compared across languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Upos {
    Adp,
    Aux,
    Cconj,
    Sconj,
    Det,
    Part,
    Pron,
    Noun,
    Propn,
    Verb,
}

impl Upos {
    pub const ALL: [Upos; 10] = [
        Upos::Adp,
        Upos::Aux,
        Upos::Cconj,
        Upos::Sconj,
        Upos::Det,
        Upos::Part,
        Upos::Pron,
        Upos::Noun,
        Upos::Propn,
        Upos::Verb,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Upos::Adp => "ADP",
            Upos::Aux => "AUX",
            Upos::Cconj => "CCONJ",
            Upos::Sconj => "SCONJ",
            Upos::Det => "DET",
            Upos::Part => "PART",
            Upos::Pron => "PRON",
            Upos::Noun => "NOUN",
            Upos::Propn => "PROPN",
            Upos::Verb => "VERB",
        }
    }
}

impl fmt::Display for Upos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Upos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Upos::ALL
            .iter()
            .copied()
            .find(|u| u.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("'{s}' is not one of the target UPOS tags")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WordEntry {
    pub lemma: String,
    pub ipa: Option<String>,
}

/// Lemmas of one part of speech in one language, de-duplicated after NFC.
#[derive(Debug, Clone, PartialEq)]
pub struct WordList {
    pub language: String,
    pub pos: Upos,
    entries: Vec<WordEntry>,
}

impl WordList {
    pub fn new(language: impl Into<String>, pos: Upos) -> Self {
        WordList { language: language.into(), pos, entries: Vec::new() }
    }

    /// Builds a list from lemmas without IPA; duplicates and empties are dropped.
    pub fn from_lemmas<I, S>(language: impl Into<String>, pos: Upos, lemmas: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut list = WordList::new(language, pos);
        for l in lemmas {
            list.insert(l.as_ref(), None);
        }
        list
    }

    /// Builds a list of `(lemma, ipa)` pairs.
    pub fn from_pairs<I, S, T>(language: impl Into<String>, pos: Upos, pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut list = WordList::new(language, pos);
        for (l, i) in pairs {
            list.insert(l.as_ref(), Some(i.as_ref()));
        }
        list
    }

    /// Adds a lemma. Returns false if it was empty, `_`, or already present.
    pub fn insert(&mut self, lemma: &str, ipa: Option<&str>) -> bool {
        let lemma: String = lemma.trim().nfc().collect();
        if lemma.is_empty() || lemma == "_" || self.entries.iter().any(|e| e.lemma == lemma) {
            return false;
        }
        let ipa = ipa.map(str::trim).filter(|s| !s.is_empty()).map(str::to_string);
        self.entries.push(WordEntry { lemma, ipa });
        true
    }

    pub fn entries(&self) -> &[WordEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.lemma.as_str())
    }

    pub fn has_ipa(&self) -> bool {
        self.entries.iter().any(|e| e.ipa.is_some())
    }

    /// Sorts entries by lemma so output files do not depend on corpus order.
    pub fn sort(&mut self) {
        self.entries.sort();
    }

    pub fn header(&self) -> String {
        format!("# lang={} pos={}", self.language, self.pos)
    }

    /// Word-list file text: header, then `lemma<TAB>ipa` rows.
    pub fn to_file_string(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for e in &self.entries {
            out.push_str(&e.lemma);
            if let Some(ipa) = &e.ipa {
                out.push('\t');
                out.push_str(ipa);
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (language, pos) = loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((i, l)) => {
                    break parse_header(l)
                        .ok_or_else(|| Error::parse(source, i + 1, "expected header '# lang=<id> pos=<TAG>'"))??
                }
                None => return Err(Error::parse(source, 1, "empty word-list file")),
            }
        };
        let mut list = WordList::new(language, pos);
        for (i, line) in lines {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let lemma = fields.next().unwrap_or("");
            let ipa = fields.next();
            if fields.next().is_some() {
                return Err(Error::parse(source, i + 1, "expected 'lemma<TAB>ipa'"));
            }
            if !list.insert(lemma, ipa) {
                log::debug!("{source}:{}: lemma '{lemma}' ignored (empty or duplicate)", i + 1);
            }
        }
        Ok(list)
    }
}

/// Parses `# lang=<id> pos=<TAG>`. `None` if the line is not a header at all.
fn parse_header(line: &str) -> Option<Result<(String, Upos)>> {
    let body = line.trim().strip_prefix('#')?;
    let mut lang = None;
    let mut pos = None;
    for kv in body.split_whitespace() {
        match kv.split_once('=') {
            Some(("lang", v)) => lang = Some(v.to_string()),
            Some(("pos", v)) => pos = Some(v.to_string()),
            _ => {}
        }
    }
    let (lang, pos) = (lang?, pos?);
    if lang.is_empty() {
        return Some(Err(Error::Invalid("empty language id in header".into())));
    }
    Some(pos.parse().map(|p| (lang, p)))
}

pub fn read_wordlist(path: impl AsRef<Path>) -> Result<WordList> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    WordList::parse(&text, &path.display().to_string())
}
