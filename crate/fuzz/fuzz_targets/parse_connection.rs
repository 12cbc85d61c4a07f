#![no_main]

use libfuzzer_sys::fuzz_target;

// first line is the group, the rest is the connection set
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (group, conn) = text.split_once('\n').unwrap_or((text, ""));
    let Ok(group) = cayspec::grammar::parse_group(group) else { return };
    if group.order() > 1 << 16 {
        return;
    }
    if let Ok(s) = cayspec::grammar::parse_connection_with_limit(&group, conn, 1 << 12) {
        for g in s.realized() {
            assert!(group.contains(&g));
            assert_ne!(g, group.identity());
        }
    }
});
