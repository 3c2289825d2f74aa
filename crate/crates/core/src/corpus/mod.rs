//! Corpus ingestion: CoNLL-U lemma lists, word-list files, and rule-based
//! orthographic conversion to IPA.

mod conllu;
mod g2p;
mod wordlist;

pub use conllu::{extract_wordlists, extract_wordlists_from_str, Extraction, LineWarning};
pub use g2p::{g2p_convert, DroppedWord, G2pOutcome, G2pRule, G2pTable, Script};
pub use wordlist::{read_wordlist, Upos, WordEntry, WordList};
