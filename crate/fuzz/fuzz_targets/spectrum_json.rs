#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = cayspec::Spectrum::from_json(text) {
            let back = cayspec::Spectrum::from_json(&spec.to_json()).unwrap();
            assert_eq!(back, spec);
        }
    }
});
