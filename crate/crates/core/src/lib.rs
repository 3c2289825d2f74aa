//! Phonetic edit distance over articulatory features, and part-of-speech
//! lexical similarity between languages.
//!
//! The pipeline runs from CoNLL-U lemma lists ([`corpus`]) through
//! orthographic IPA conversion, tokenization against a feature inventory
//! ([`inventory`], [`ipa`]), sound distances ([`distance`]) and the weighted
//! edit distance ([`ped`]) to greedy list alignment ([`similarity`]).
//!
//! ```
//! use pedlex::{tokenize, FeatureInventory, PhoneMetric, ped};
//!
//! let inv = FeatureInventory::default_inventory();
//! let metric = PhoneMetric::default();
//! let a = tokenize("pɛn", &inv).unwrap();
//! let b = tokenize("bɛnd", &inv).unwrap();
//! let r = ped(&a, &b, &metric);
//! assert!((r.distance - 1.2).abs() < 1e-9);
//! ```

pub mod corpus;
pub mod distance;
pub mod error;
pub mod inventory;
pub mod ipa;
pub mod ped;
pub mod similarity;

pub use distance::{pdc, pdv, phonetic_difference, DistanceConfig, MannerDistanceTable, PhoneMetric};
pub use error::{Error, Result};
pub use inventory::{
    load_inventory, ConsonantFeatures, FeatureInventory, Features, Manner, Phone, PhoneType, VowelFeatures,
};
pub use ipa::{normalize_ipa, tokenize, PhoneticString};
pub use ped::{
    levenshtein, normalized_ped, ped, ped_bounded, ped_distance, ped_with_trace, EditOp, PedResult, PedStats,
};
pub use similarity::{
    align_lists, align_lists_detailed, build_matrix, AlignOptions, Alignment, ListOrder, SimilarityCell,
    SimilarityReport,
};
