#![no_main]

use libfuzzer_sys::fuzz_target;
use orbibracket::linalg::Rational;
use orbibracket::loop_module::LoopCombination;
use serde_json::Value;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<Value>(data) else { return };
    if let Ok(c) = LoopCombination::<i64>::from_json(&v) {
        let back = LoopCombination::<i64>::from_json(&c.to_json()).expect("serialized combinations reload");
        assert_eq!(back, c);
        let _ = c.to_string();
    }
    if let Ok(c) = LoopCombination::<Rational>::from_json(&v) {
        let back = LoopCombination::<Rational>::from_json(&c.to_json()).expect("serialized combinations reload");
        assert_eq!(back, c);
    }
});
