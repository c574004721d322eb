use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ShuffleParams;

/// A deck of labeled cards; position 0 is the top of the stack. Labels are
/// non-negative integers and a larger value outranks a smaller one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Deck {
    labels: Vec<u32>,
}

impl Deck {
    pub fn new(labels: Vec<u32>) -> Self {
        Deck { labels }
    }

    /// A deck of `n` copies of one label.
    pub fn constant(n: usize, label: u32) -> Self {
        Deck {
            labels: vec![label; n],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn check_len(&self, params: &ShuffleParams) -> Result<()> {
        if self.labels.len() == params.n_cards {
            Ok(())
        } else {
            Err(Error::DeckLengthMismatch {
                expected: params.n_cards,
                actual: self.labels.len(),
            })
        }
    }
}

impl From<Vec<u32>> for Deck {
    fn from(labels: Vec<u32>) -> Self {
        Deck::new(labels)
    }
}

impl std::ops::Index<usize> for Deck {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.labels[i]
    }
}

/// Decks print as a digit string when every label is a single digit, and as
/// comma-separated integers otherwise.
impl fmt::Display for Deck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.iter().all(|&v| v <= 9) {
            for &v in &self.labels {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.labels.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Deck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::DeckParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(parse_err("empty string"));
        }
        let labels = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|e| parse_err(&format!("bad label {part:?}: {e}")))
                })
                .collect::<Result<Vec<u32>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| parse_err(&format!("non-digit character {c:?}")))
                })
                .collect::<Result<Vec<u32>>>()?
        };
        Ok(Deck { labels })
    }
}

impl Serialize for Deck {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Deck {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
