#![no_main]

use hurwitz::backends::{BackendError, BackendSpec};
use hurwitz::Alphabet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = BackendSpec::parse(text) {
        let a = Alphabet::from_names(["x", "y"]).unwrap();
        let _ = spec.build(&a, |path| Err(BackendError::Spec(path.to_string())));
    }
});
