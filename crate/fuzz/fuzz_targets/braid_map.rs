#![no_main]

use hurwitz::backends::parse_braid_map;
use hurwitz::Alphabet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&strands, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let a = Alphabet::from_names(["x", "y", "z"]).unwrap();
    let _ = parse_braid_map(text, usize::from(strands % 8) + 1, &a);
});
