#![no_main]

use libfuzzer_sys::fuzz_target;
use orbibracket::cyclic_words::{parse_raw, parse_word, CyclicWord, OrbifoldSignature};

// Input: `<orders>\n<word>`.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (orders, word) = text.split_once('\n').unwrap_or(("2,3", text));
    let _ = parse_raw(word);
    let Ok(sig) = orders.parse::<OrbifoldSignature>() else { return };
    let Ok(w) = parse_word(word, &sig) else { return };
    w.validate(&sig).expect("parsed words are canonical");
    let shown = w.display_for_rank(sig.rank());
    assert_eq!(parse_word(&shown, &sig).expect("printed words reparse"), w);
    assert_eq!(CyclicWord::normalize(&w.to_raw(), &sig).unwrap(), w);
    assert_eq!(CyclicWord::from_generators(&w.expand(), &sig).unwrap(), w);
});
