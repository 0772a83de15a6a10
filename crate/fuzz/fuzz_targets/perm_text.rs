#![no_main]

use hurwitz::backends::{parse_perm_text, PermBackend};
use hurwitz::Alphabet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_perm_text(text);
    let a = Alphabet::from_names(["x", "y", "z"]).unwrap();
    let _ = PermBackend::from_text(text, &a);
});
