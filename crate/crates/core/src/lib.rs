//! Exact enumeration of non-crossing pairings on bitstrings.
//!
//! A non-crossing pairing of a bitstring `S` matches every `1` with a `0` so
//! that no two matched pairs interleave when the positions are drawn around a
//! circle. This crate counts such pairings (`phi`) through several independent
//! routes and checks the known identities and bounds between them:
//!
//! * [`bitstring`]: words, run profiles, symmetries and lattice-path heights.
//! * [`pairing`]: pairings as objects, exhaustive enumeration, a naive oracle
//!   and the first-return pairing of a Catalan word.
//! * [`phi`]: the memoized run recurrence, the symmetrized count `phi_star`,
//!   closed forms, Fuss-Catalan numbers and the generating-function fixpoint.
//! * [`trees`]: plane trees, Catalan degree sequences, labels, permutation
//!   labelings and tree polynomials.
//! * [`catalan_words`]: Catalan words, domination and the bijections between
//!   pairings, labeled trees and Catalan words.
//! * [`bounds`]: lower and upper bounds, the Fuss-Catalan maximality check and
//!   searches for the two open conjectures.
//! * [`ginibre`]: Monte-Carlo mixed moments of Ginibre matrices.
//! * [`verify`]: the sweep suites driven by the command-line tool.

pub mod bitstring;
pub mod bounds;
pub mod catalan_words;
pub mod error;
pub mod ginibre;
pub mod matching;
pub mod pairing;
pub mod phi;
pub mod trees;
pub mod verify;

pub use bitstring::{RunProfile, Symmetry, Word};
pub use error::{Error, Result};
pub use pairing::Pairing;
pub use phi::{fuss_catalan, phi, phi_star, PhiEngine};

/// Exact, arbitrary-precision nonnegative count.
pub type Count = num_bigint::BigUint;

/// Serde adapter writing a [`Count`] as a decimal string.
pub mod count_serde {
    use super::Count;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Count, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Count, D::Error> {
        let text = String::deserialize(d)?;
        Count::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal count: {text:?}")))
    }

    /// Same as the parent module, for `Option<Count>`.
    pub mod option {
        use super::Count;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(value: &Option<Count>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&v.to_str_radix(10)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Count>, D::Error> {
            let text: Option<String> = Option::deserialize(d)?;
            text.map(|t| {
                Count::parse_bytes(t.as_bytes(), 10)
                    .ok_or_else(|| serde::de::Error::custom(format!("not a decimal count: {t:?}")))
            })
            .transpose()
        }
    }
}
