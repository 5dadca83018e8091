use super::{CyclicWord, OrbifoldSignature, WordError};

/// Parses a word in the loop grammar into raw `(generator, exponent)` pairs
/// without reducing it.
///
/// Tokens are `g<i>` or `g<i>^<e>` (the exponent may be negative), or a
/// single letter `a..z` standing for `g1..g26`, also optionally followed by
/// `^<e>`. A `g` immediately followed by a digit always starts a `g<i>`
/// token. The strings `""` and `"1"` denote the empty word.
pub fn parse_raw(input: &str) -> Result<Vec<(usize, i64)>, WordError> {
    if input.is_empty() || input == "1" {
        return Ok(Vec::new());
    }
    let bytes = input.as_bytes();
    let err = |position: usize, message: String| WordError::Parse { input: input.to_string(), position, message };
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let generator = if c == b'g' && bytes.get(pos + 1).is_some_and(u8::is_ascii_digit) {
            let start = pos + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            let g: usize = input[start..end]
                .parse()
                .map_err(|_| err(start, "generator index too large".into()))?;
            if g == 0 {
                return Err(err(start, "generator indices start at 1".into()));
            }
            pos = end;
            g
        } else if c.is_ascii_lowercase() {
            pos += 1;
            (c - b'a') as usize + 1
        } else {
            let ch = input[pos..].chars().next().unwrap_or('?');
            return Err(err(pos, format!("unexpected character {ch:?}")));
        };
        let mut exponent = 1i64;
        if bytes.get(pos) == Some(&b'^') {
            let start = pos + 1;
            let mut end = start;
            if bytes.get(end) == Some(&b'-') {
                end += 1;
            }
            let digits = end;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end == digits {
                return Err(err(start, "expected an integer exponent after '^'".into()));
            }
            exponent = input[start..end]
                .parse()
                .map_err(|_| err(start, "exponent out of range".into()))?;
            pos = end;
        }
        out.push((generator, exponent));
    }
    Ok(out)
}

/// Parses and normalizes a word over `sig`.
///
/// Letter shorthand is only accepted when the signature has at most 26
/// points.
pub fn parse_word(input: &str, sig: &OrbifoldSignature) -> Result<CyclicWord, WordError> {
    if !sig.uses_letters() {
        if let Some(p) = input.bytes().position(|c| c.is_ascii_lowercase() && c != b'g') {
            return Err(WordError::Parse {
                input: input.to_string(),
                position: p,
                message: "letter shorthand needs at most 26 orbifold points".into(),
            });
        }
    }
    CyclicWord::normalize(&parse_raw(input)?, sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_and_tokens_agree() {
        assert_eq!(parse_raw("aab").unwrap(), vec![(1, 1), (1, 1), (2, 1)]);
        assert_eq!(parse_raw("g1^2g2").unwrap(), vec![(1, 2), (2, 1)]);
        assert_eq!(parse_raw("g12^-3").unwrap(), vec![(12, -3)]);
        assert_eq!(parse_raw("b^3a").unwrap(), vec![(2, 3), (1, 1)]);
    }

    #[test]
    fn g_without_digit_is_seventh_letter() {
        assert_eq!(parse_raw("gg1").unwrap(), vec![(7, 1), (1, 1)]);
        assert_eq!(parse_raw("g").unwrap(), vec![(7, 1)]);
    }

    #[test]
    fn empty_forms() {
        assert!(parse_raw("").unwrap().is_empty());
        assert!(parse_raw("1").unwrap().is_empty());
    }

    #[test]
    fn error_positions() {
        let pos = |s: &str| match parse_raw(s) {
            Err(WordError::Parse { position, .. }) => position,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos("ab?"), 2);
        assert_eq!(pos("a^"), 2);
        assert_eq!(pos("g0"), 1);
        assert_eq!(pos("A"), 0);
        assert_eq!(pos("a b"), 1);
        assert_eq!(pos("a^-"), 2);
    }

    #[test]
    fn parse_word_normalizes() {
        let sig: OrbifoldSignature = "2,4".parse().unwrap();
        assert_eq!(parse_word("aab", &sig).unwrap().to_string(), "b");
        assert!(matches!(parse_word("abc", &sig), Err(WordError::SignatureMismatch { generator: 3, .. })));
    }

    #[test]
    fn shorthand_rejected_for_large_rank() {
        let sig = OrbifoldSignature::new(vec![2; 27]).unwrap();
        assert!(parse_word("g27g1", &sig).is_ok());
        assert!(matches!(parse_word("g1b", &sig), Err(WordError::Parse { position: 2, .. })));
    }
}
