#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(group) = cayspec::grammar::parse_group(text) {
            let again = cayspec::grammar::parse_group(&group.to_string()).unwrap();
            assert_eq!(again, group);
        }
    }
});
