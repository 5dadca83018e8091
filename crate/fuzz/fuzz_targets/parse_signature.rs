#![no_main]

use libfuzzer_sys::fuzz_target;
use orbibracket::cyclic_words::OrbifoldSignature;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(sig) = text.parse::<OrbifoldSignature>() else { return };
    assert!(sig.orders().iter().all(|&n| n >= 2));
    let again: OrbifoldSignature = sig.to_string().parse().expect("printed signatures reparse");
    assert_eq!(again, sig);
});
