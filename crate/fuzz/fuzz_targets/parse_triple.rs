#![no_main]
use libfuzzer_sys::fuzz_target;
use ortho_core::geometry::OrthoTriple;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(t) = OrthoTriple::parse(s) {
            // accepted triples satisfy the cosh-length invariant
            for x in t.entries() {
                assert!(*x > ortho_core::exact::rat_int(1));
            }
        }
    }
});
