#![no_main]

use hurwitz::BraidWord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&strands, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let strands = usize::from(strands % 12) + 1;
    if let Ok(b) = BraidWord::parse(text, strands) {
        assert_eq!(BraidWord::parse(&b.to_string(), strands).unwrap(), b);
    }
});
