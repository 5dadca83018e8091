//! Finite linear combinations of free loops, the degree-zero equivariant
//! homology `k[C]` of the loop stack.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclic_words::{parse_word, CyclicWord, OrbifoldSignature, WordError};
use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinationError {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("invalid combination JSON: {0}")]
    Json(String),
}

/// Scalars a [`LoopCombination`] can carry.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Add<Output = Self> + Mul<Output = Self>
{
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;
    fn is_negative(&self) -> bool;
}

impl Coefficient for i64 {
    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => n.as_i64(),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        }
    }

    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl Coefficient for Rational {
    fn to_json(&self) -> Value {
        if self.is_integer() {
            if let Ok(n) = self.to_integer().to_string().parse::<i64>() {
                return json!(n);
            }
        }
        json!(self.to_string())
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => n.as_i64().map(crate::linalg::q),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        }
    }

    fn is_negative(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
}

/// `sum c_w * w` over canonical words `w`, with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopCombination<C = i64> {
    signature: OrbifoldSignature,
    terms: BTreeMap<CyclicWord, C>,
}

impl<C: Coefficient> LoopCombination<C> {
    pub fn zero(signature: OrbifoldSignature) -> Self {
        LoopCombination { signature, terms: BTreeMap::new() }
    }

    /// `c * w`, validating that `w` is canonical over `signature`.
    pub fn monomial(signature: OrbifoldSignature, word: CyclicWord, c: C) -> Result<Self, CombinationError> {
        let mut out = Self::zero(signature);
        out.add_term(word, c)?;
        Ok(out)
    }

    /// Builds a combination from raw words, normalizing each one.
    pub fn from_raw_terms(
        signature: OrbifoldSignature,
        terms: &[(C, Vec<(usize, i64)>)],
    ) -> Result<Self, CombinationError> {
        let mut out = Self::zero(signature);
        for (c, raw) in terms {
            let w = CyclicWord::normalize(raw, &out.signature)?;
            out.add_term(w, c.clone())?;
        }
        Ok(out)
    }

    pub fn signature(&self) -> &OrbifoldSignature {
        &self.signature
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &CyclicWord) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, word: CyclicWord, c: C) -> Result<(), CombinationError> {
        word.validate(&self.signature)?;
        self.add_term_unchecked(word, c);
        Ok(())
    }

    /// Adds `c * word` for a word known to be canonical over this signature.
    pub(crate) fn add_term_unchecked(&mut self, word: CyclicWord, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&word) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(word, sum);
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CombinationError> {
        self.check_signature(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term_unchecked(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add_scaled(&mut self, c: &C, other: &Self) -> Result<(), CombinationError> {
        self.check_signature(other)?;
        for (w, d) in &other.terms {
            self.add_term_unchecked(w.clone(), c.clone() * d.clone());
        }
        Ok(())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.signature.clone());
        for (w, d) in &self.terms {
            out.add_term_unchecked(w.clone(), c.clone() * d.clone());
        }
        out
    }

    pub fn negate(&self) -> Self {
        self.scale(&-C::one())
    }

    fn check_signature(&self, other: &Self) -> Result<(), CombinationError> {
        if self.signature != other.signature {
            return Err(CombinationError::SignatureMismatch {
                left: self.signature.to_string(),
                right: other.signature.to_string(),
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| json!({ "coefficient": c.to_json(), "word": w.display_for_rank(self.signature.rank()) }))
            .collect();
        json!({ "schema": 1, "orders": self.signature.orders(), "terms": terms })
    }

    /// Inverse of [`to_json`](Self::to_json). Words are re-normalized, so
    /// non-canonical spellings are accepted and repeated words are summed.
    pub fn from_json(v: &Value) -> Result<Self, CombinationError> {
        let bad = |m: &str| CombinationError::Json(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        match obj.get("schema").and_then(Value::as_u64) {
            Some(1) => {}
            _ => return Err(bad("missing or unsupported \"schema\" (expected 1)")),
        }
        let orders = obj
            .get("orders")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("\"orders\" must be an array"))?
            .iter()
            .map(|o| o.as_u64().and_then(|n| u32::try_from(n).ok()))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| bad("orders must be non-negative integers"))?;
        let sig = OrbifoldSignature::new(orders)?;
        let mut out = Self::zero(sig);
        let terms = obj.get("terms").and_then(Value::as_array).ok_or_else(|| bad("\"terms\" must be an array"))?;
        for t in terms {
            let c = t.get("coefficient").and_then(C::from_json).ok_or_else(|| bad("bad coefficient"))?;
            let w = t.get("word").and_then(Value::as_str).ok_or_else(|| bad("term word must be a string"))?;
            let word = parse_word(w, &out.signature)?;
            out.add_term_unchecked(word, c);
        }
        Ok(out)
    }
}

/// Terms in canonical-word order, e.g. `−1·abaabb +1·abbaab`; the zero
/// combination prints as `0`.
impl<C: Coefficient> fmt::Display for LoopCombination<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let rank = self.signature.rank();
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if c.is_negative() {
                write!(f, "\u{2212}{}\u{00b7}{}", -c.clone(), w.display_for_rank(rank))?;
            } else {
                write!(f, "+{}\u{00b7}{}", c, w.display_for_rank(rank))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qq;

    fn sig(s: &str) -> OrbifoldSignature {
        s.parse().unwrap()
    }

    fn word(s: &str, sg: &OrbifoldSignature) -> CyclicWord {
        parse_word(s, sg).unwrap()
    }

    #[test]
    fn cancellation_and_accumulation() {
        let s = sig("3,4");
        let w = word("aab", &s);
        let x = LoopCombination::monomial(s.clone(), w.clone(), 1i64).unwrap();
        assert!(x.add(&x.negate()).unwrap().is_zero());
        let two = x.scale(&2);
        let three = x.scale(&3);
        let five = two.add(&three).unwrap();
        assert_eq!(five.coefficient(&w), 5);
        assert_eq!(five.len(), 1);
    }

    #[test]
    fn relation_collapses_terms_over_2_4() {
        // bab^2a^2 and b^2aba^2 both reduce to b^3 once a^2 = 1.
        let s = sig("2,4");
        let x = LoopCombination::from_raw_terms(
            s,
            &[(1i64, vec![(2, 1), (1, 1), (2, 2), (1, 2)]), (-1, vec![(2, 2), (1, 1), (2, 1), (1, 2)])],
        )
        .unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn scaling_identities() {
        let s = sig("3,4");
        let w1 = word("ab", &s);
        let w2 = word("aab", &s);
        let mut x = LoopCombination::monomial(s.clone(), w1.clone(), 1i64).unwrap();
        x.add_term(w2.clone(), -1).unwrap();
        assert!(x.scale(&0).is_zero());
        assert_eq!(x.scale(&1), x);
        let y = x.scale(&-1);
        assert_eq!(y.coefficient(&w1), -1);
        assert_eq!(y.coefficient(&w2), 1);
    }

    #[test]
    fn mismatched_signatures() {
        let x = LoopCombination::<i64>::zero(sig("3,4"));
        let y = LoopCombination::<i64>::zero(sig("2,4"));
        assert!(matches!(x.add(&y), Err(CombinationError::SignatureMismatch { .. })));
    }

    #[test]
    fn rejects_non_canonical_words() {
        let s = sig("3,4");
        let other = sig("3,2");
        let w = word("bbb", &s);
        let mut x = LoopCombination::<i64>::zero(other);
        assert!(x.add_term(w, 1).is_err());
    }

    #[test]
    fn display_format() {
        let s = sig("3,4");
        let mut x = LoopCombination::<i64>::zero(s.clone());
        assert_eq!(x.to_string(), "0");
        x.add_term(word("babbaa", &s), 1).unwrap();
        x.add_term(word("bbabaa", &s), -1).unwrap();
        assert_eq!(x.to_string(), "\u{2212}1\u{00b7}abaabb +1\u{00b7}abbaab");
    }

    #[test]
    fn json_round_trip() {
        let s = sig("3,4");
        let mut x = LoopCombination::<i64>::zero(s.clone());
        x.add_term(word("ab", &s), 7).unwrap();
        x.add_term(word("aabbb", &s), -2).unwrap();
        let v = x.to_json();
        assert_eq!(v["schema"], 1);
        assert_eq!(LoopCombination::<i64>::from_json(&v).unwrap(), x);

        let mut r = LoopCombination::<Rational>::zero(s.clone());
        r.add_term(word("ab", &s), qq(-3, 4)).unwrap();
        r.add_term(word("b", &s), qq(2, 1)).unwrap();
        let back = LoopCombination::<Rational>::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn json_errors() {
        let bad = [
            json!([]),
            json!({"orders": [2, 3], "terms": []}),
            json!({"schema": 2, "orders": [2, 3], "terms": []}),
            json!({"schema": 1, "orders": [1], "terms": []}),
            json!({"schema": 1, "orders": [2, 3], "terms": [{"coefficient": 1, "word": "abc"}]}),
            json!({"schema": 1, "orders": [2, 3], "terms": [{"coefficient": "x", "word": "ab"}]}),
        ];
        for v in bad {
            assert!(LoopCombination::<i64>::from_json(&v).is_err(), "{v}");
        }
    }
}
