#![no_main]

use libfuzzer_sys::fuzz_target;
use orbibracket::graded_bv::load_gysin_json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = load_gysin_json(text) else { return };
    let again = load_gysin_json(&g.to_json().to_string()).expect("serialized sequences reload");
    assert_eq!(again, g);
    if g.h_dim() <= 4 && g.bv().dim() <= 6 {
        let _ = g.check_antisymmetry();
    }
});
