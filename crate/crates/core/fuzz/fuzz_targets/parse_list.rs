#![no_main]

use cbabc::harness::parse_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_list::<f64>(text);
    if let Ok(items) = parse_list::<u64>(text) {
        assert!(!items.is_empty());
    }
});
