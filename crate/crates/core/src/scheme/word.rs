use serde::{Deserialize, Serialize};

use super::{Scheme, SchemeError, WindowTable};

/// A product `g1 ∘ g2 ∘ … ∘ gk`, applied rightmost first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    pub factors: Vec<Scheme>,
}

impl Word {
    pub fn new(factors: Vec<Scheme>) -> Word {
        Word { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn apply(&self, x: i64) -> Result<i64, SchemeError> {
        self.factors.iter().rev().try_fold(x, |y, g| g.apply(y))
    }

    /// `self ∘ other`.
    pub fn then_after(mut self, other: Word) -> Word {
        self.factors.extend(other.factors);
        self
    }

    pub fn window(&self, n_window: u64) -> Result<WindowTable, SchemeError> {
        WindowTable::tabulate(n_window, |x| self.apply(x))
    }

    pub fn from_json(text: &str) -> Result<Word, SchemeError> {
        let raw: Word = serde_json::from_str(text).map_err(|e| SchemeError::Json(e.to_string()))?;
        let mut factors = Vec::with_capacity(raw.factors.len());
        for g in raw.factors {
            factors.push(Scheme::from_json(&g.to_json())?);
        }
        Ok(Word { factors })
    }
}

pub fn word_apply(w: &Word, x: i64) -> Result<i64, SchemeError> {
    w.apply(x)
}
