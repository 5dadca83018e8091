#![no_main]

use libfuzzer_sys::fuzz_target;
use orbibracket::graded_bv::{check_bv_identity, check_leibniz, load_bv_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(a) = load_bv_json(text) else { return };
    let again = load_bv_json(&a.to_json().to_string()).expect("serialized algebras reload");
    assert_eq!(again, a);
    if a.dim() <= 6 {
        assert_eq!(check_bv_identity(&a).passed(), check_leibniz(&a).passed());
    }
});
