#![no_main]
use libfuzzer_sys::fuzz_target;
use ortho_core::exact::{parse_rat, rat_str};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = parse_rat(s) {
            // canonical rendering must round-trip
            let again = parse_rat(&rat_str(&r)).expect("canonical form parses");
            assert_eq!(again, r);
        }
    }
});
