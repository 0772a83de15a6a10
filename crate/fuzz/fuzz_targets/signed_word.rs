#![no_main]

use hurwitz::parse::parse_signed_word;
use hurwitz::Alphabet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let a = Alphabet::from_names(["x", "y", "z"]).unwrap();
    if let Ok(w) = parse_signed_word(text, &a) {
        assert_eq!(parse_signed_word(&a.show_signed(&w), &a).unwrap(), w);
    }
});
