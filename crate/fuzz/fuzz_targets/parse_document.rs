#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = hurwitz::parse::parse_document(text) {
        let again = hurwitz::parse::parse_document(&doc.to_text()).expect("serialized document parses");
        assert_eq!(again, doc);
    }
});
