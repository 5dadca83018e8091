use std::fmt;

use super::{OrbifoldSignature, WordError};

/// A power `a_i^e` of one generator, with `1 <= e <= n_i - 1`.
///
/// The derived order (generator index, then exponent) is the letter order
/// used to pick canonical rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub exponent: u32,
}

/// A free homotopy class of loops on the orbifold disk: a conjugacy class in
/// `Z/n_1 * ... * Z/n_r`, stored as its canonical cyclic word.
///
/// Invariants: no two cyclically adjacent letters share a generator, every
/// exponent is reduced and nonzero, and the letters form the least rotation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// The trivial free loop.
    pub fn empty() -> Self {
        CyclicWord { letters: Vec::new() }
    }

    /// Reduces `raw` modulo the cone relations and cyclic conjugation.
    ///
    /// Exponents may be any integers; they are reduced mod `n_i`.
    pub fn normalize(raw: &[(usize, i64)], sig: &OrbifoldSignature) -> Result<Self, WordError> {
        let mut stack: Vec<Letter> = Vec::with_capacity(raw.len());
        for &(generator, exponent) in raw {
            let n = sig.order(generator)? as i64;
            push_reduced(&mut stack, generator, exponent.rem_euclid(n) as u32, n as u32);
        }
        // The stack is freely reduced; now merge across the seam until the
        // first and last letters differ.
        while stack.len() > 1 && stack[0].generator == stack[stack.len() - 1].generator {
            let last = stack.pop().unwrap();
            let n = sig.order(last.generator)?;
            let e = (stack[0].exponent + last.exponent) % n;
            if e == 0 {
                stack.remove(0);
            } else {
                stack[0].exponent = e;
            }
        }
        let start = least_rotation(&stack);
        stack.rotate_left(start);
        Ok(CyclicWord { letters: stack })
    }

    /// Normalizes a word given as single-generator occurrences.
    pub fn from_generators(gens: &[usize], sig: &OrbifoldSignature) -> Result<Self, WordError> {
        let raw: Vec<(usize, i64)> = gens.iter().map(|&g| (g, 1)).collect();
        Self::normalize(&raw, sig)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of unit occurrences, i.e. the sum of exponents.
    pub fn expanded_len(&self) -> usize {
        self.letters.iter().map(|l| l.exponent as usize).sum()
    }

    /// Each `a_i^e` becomes `e` consecutive occurrences of `i`.
    pub fn expand(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.expanded_len());
        for l in &self.letters {
            out.extend(std::iter::repeat_n(l.generator, l.exponent as usize));
        }
        out
    }

    /// Raw `(generator, exponent)` pairs of the canonical representative.
    pub fn to_raw(&self) -> Vec<(usize, i64)> {
        self.letters.iter().map(|l| (l.generator, l.exponent as i64)).collect()
    }

    /// Checks that every letter is valid for `sig` and the invariants hold.
    pub fn validate(&self, sig: &OrbifoldSignature) -> Result<(), WordError> {
        for l in &self.letters {
            let n = sig.order(l.generator)?;
            if l.exponent == 0 || l.exponent >= n {
                return Err(WordError::NotCanonical(format!(
                    "exponent {} out of range for generator {} of order {n}",
                    l.exponent, l.generator
                )));
            }
        }
        let renormalized = CyclicWord::normalize(&self.to_raw(), sig)?;
        if renormalized != *self {
            return Err(WordError::NotCanonical(format!("{self} is not in canonical form")));
        }
        Ok(())
    }

    /// Formats the word in the CLI grammar for a signature of rank `rank`.
    pub fn display_for_rank(&self, rank: usize) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for l in &self.letters {
            if rank <= 26 {
                let c = (b'a' + (l.generator - 1) as u8) as char;
                for _ in 0..l.exponent {
                    s.push(c);
                }
            } else if l.exponent == 1 {
                s.push_str(&format!("g{}", l.generator));
            } else {
                s.push_str(&format!("g{}^{}", l.generator, l.exponent));
            }
        }
        s
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self.letters.iter().map(|l| l.generator).max().unwrap_or(0);
        f.write_str(&self.display_for_rank(rank))
    }
}

/// Conjugacy test for two words already normalized over `sig`.
pub fn conjugacy_equal(w1: &CyclicWord, w2: &CyclicWord, sig: &OrbifoldSignature) -> Result<bool, WordError> {
    w1.validate(sig)?;
    w2.validate(sig)?;
    Ok(w1 == w2)
}

/// Every conjugacy class whose canonical word has expanded length at most
/// `max_len`, in sorted order. Includes the trivial class.
pub fn words_up_to(sig: &OrbifoldSignature, max_len: usize) -> Vec<CyclicWord> {
    let r = sig.rank();
    let mut found = std::collections::BTreeSet::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for gens in layer {
            if let Ok(w) = CyclicWord::from_generators(&gens, sig) {
                found.insert(w);
            }
            for g in 1..=r {
                let mut longer = gens.clone();
                longer.push(g);
                next.push(longer);
            }
        }
        layer = next;
    }
    found.into_iter().collect()
}

fn push_reduced(stack: &mut Vec<Letter>, generator: usize, exponent: u32, order: u32) {
    if exponent == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.generator == generator => {
            let e = (top.exponent + exponent) % order;
            if e == 0 {
                stack.pop();
            } else {
                top.exponent = e;
            }
        }
        _ => stack.push(Letter { generator, exponent }),
    }
}

/// Start index of the lexicographically least rotation (Booth's algorithm).
pub(crate) fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut fail: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = fail[j - k - 1];
        while i != -1 && at(j) != at(k + i as usize + 1) {
            if at(j) < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && at(j) != at(k) {
            if at(j) < at(k) {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(orders: &[u32]) -> OrbifoldSignature {
        OrbifoldSignature::new(orders.to_vec()).unwrap()
    }

    fn w(raw: &[(usize, i64)], s: &OrbifoldSignature) -> CyclicWord {
        CyclicWord::normalize(raw, s).unwrap()
    }

    #[test]
    fn cone_relation_collapses_a_squared() {
        let s = sig(&[2, 4]);
        let word = w(&[(1, 1), (1, 1), (2, 1)], &s);
        assert_eq!(word.letters(), &[Letter { generator: 2, exponent: 1 }]);
        assert_eq!(word.to_string(), "b");
    }

    #[test]
    fn empty_input_is_trivial_loop() {
        let s = sig(&[3, 4]);
        assert!(w(&[], &s).is_empty());
        assert_eq!(w(&[], &s).to_string(), "1");
    }

    #[test]
    fn rotations_agree() {
        let s = sig(&[3, 4]);
        let x = w(&[(2, 1), (1, 1), (2, 1), (2, 1)], &s);
        let y = w(&[(2, 1), (2, 1), (1, 1), (2, 1)], &s);
        assert_eq!(x, y);
    }

    #[test]
    fn merges_adjacent_powers() {
        let s = sig(&[3, 4]);
        assert_eq!(w(&[(1, 1), (1, 1)], &s).letters(), &[Letter { generator: 1, exponent: 2 }]);
    }

    #[test]
    fn negative_exponents_reduce() {
        let s = sig(&[3, 4]);
        assert_eq!(w(&[(1, -1)], &s).letters(), &[Letter { generator: 1, exponent: 2 }]);
        assert!(w(&[(1, 1), (2, 3), (2, -3), (1, -1)], &s).is_empty());
    }

    #[test]
    fn seam_merge_cascades() {
        // a b a^2 b^3 with b^4 = 1, a^3 = 1 -> cyclically collapses to nothing.
        let s = sig(&[3, 4]);
        assert!(w(&[(2, 1), (1, 1), (1, 2), (2, 3)], &s).is_empty());
        // a b a over (3,4) is conjugate to a^2 b.
        let x = w(&[(1, 1), (2, 1), (1, 1)], &s);
        assert_eq!(x, w(&[(1, 2), (2, 1)], &s));
    }

    #[test]
    fn out_of_range_generator() {
        let s = sig(&[3, 4]);
        assert!(matches!(
            CyclicWord::normalize(&[(3, 1)], &s),
            Err(WordError::SignatureMismatch { generator: 3, rank: 2 })
        ));
    }

    #[test]
    fn conjugacy_examples() {
        let s = sig(&[3, 4]);
        let ab = w(&[(1, 1), (2, 1)], &s);
        let ba = w(&[(2, 1), (1, 1)], &s);
        let a2b = w(&[(1, 2), (2, 1)], &s);
        assert!(conjugacy_equal(&ab, &ba, &s).unwrap());
        assert!(!conjugacy_equal(&ab, &a2b, &s).unwrap());
        let bab2 = w(&[(2, 1), (1, 1), (2, 2)], &s);
        let b2ab = w(&[(2, 2), (1, 1), (2, 1)], &s);
        assert!(conjugacy_equal(&bab2, &b2ab, &s).unwrap());
    }

    #[test]
    fn expand_examples() {
        let s = sig(&[3, 4]);
        assert_eq!(w(&[(1, 2), (2, 1)], &s).expand(), vec![1, 1, 2]);
        assert_eq!(w(&[(1, 1), (2, 3)], &s).expand(), vec![1, 2, 2, 2]);
        assert!(w(&[], &s).expand().is_empty());
    }

    #[test]
    fn least_rotation_matches_brute_force() {
        let cases: &[&[u8]] = &[b"banana", b"aaa", b"abab", b"baab", b"cabcab", b"z", b"bbbab"];
        for s in cases {
            let k = least_rotation(s);
            let rot: Vec<u8> = s[k..].iter().chain(&s[..k]).copied().collect();
            let best = (0..s.len())
                .map(|i| s[i..].iter().chain(&s[..i]).copied().collect::<Vec<u8>>())
                .min()
                .unwrap();
            assert_eq!(rot, best, "input {:?}", std::str::from_utf8(s));
        }
    }

    #[test]
    fn validate_rejects_non_canonical() {
        let s = sig(&[3, 4]);
        let good = w(&[(2, 1), (1, 2)], &s);
        assert!(good.validate(&s).is_ok());
        let bad = CyclicWord { letters: vec![Letter { generator: 2, exponent: 1 }, Letter { generator: 1, exponent: 2 }] };
        assert!(matches!(bad.validate(&s), Err(WordError::NotCanonical(_))));
        let wrong_sig = sig(&[3, 2]);
        assert!(w(&[(2, 3)], &s).validate(&wrong_sig).is_err());
    }

    #[test]
    fn small_enumeration() {
        let s = sig(&[2, 3]);
        let words = words_up_to(&s, 2);
        let shown: Vec<String> = words.iter().map(|w| w.display_for_rank(2)).collect();
        assert_eq!(words.len(), 5, "{shown:?}");
        assert!(words.iter().all(|w| w.expanded_len() <= 2));
        assert!(words.contains(&CyclicWord::empty()));
    }
}
