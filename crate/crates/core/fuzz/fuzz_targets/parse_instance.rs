#![no_main]

use cbabc::TspInstance;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = TspInstance::parse(text) {
        // Whatever parses must survive a write/read round trip unchanged.
        let again = TspInstance::parse(&inst.to_text()).expect("round trip parses");
        assert_eq!(inst.cities(), again.cities());
    }
});
