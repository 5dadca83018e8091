//! Conjugacy classes in free products of finite cyclic groups, stored as
//! canonical cyclic words.

mod parse;
mod signature;
mod word;

pub use parse::{parse_raw, parse_word};
pub use signature::{OrbifoldSignature, MAX_ORDER};
pub use word::{conjugacy_equal, words_up_to, CyclicWord, Letter};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator {generator} is out of range for a signature with {rank} orbifold points")]
    SignatureMismatch { generator: usize, rank: usize },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("parse error at position {position} in {input:?}: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("word is not canonical: {0}")]
    NotCanonical(String),
}
