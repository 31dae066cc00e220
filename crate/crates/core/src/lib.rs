//! Garside normal forms, Nielsen–Thurston classification, SL₂(ℕ) matrices
//! and pseudo-Anosov dilatations for braids on three strands.
//!
//! ```
//! use b3lab::{garside, words::parse_word};
//!
//! let w = parse_word("aB").unwrap();
//! let c = garside::classify(&w, None).unwrap();
//! assert_eq!(c.kind(), "pseudo-anosov");
//! assert_eq!(c.matrix().unwrap().to_string(), "[[1,1],[1,2]]");
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod garside;
mod ser;
pub mod sl2;
pub mod traintrack;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
