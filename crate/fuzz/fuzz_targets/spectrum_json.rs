#![no_main]
use libfuzzer_sys::fuzz_target;
use ortho_core::orbit::validate_spectrum_file;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = validate_spectrum_file(s);
    }
});
