#![no_main]

use libfuzzer_sys::fuzz_target;
use spectral_duality::algebra::{fmt_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(r) = parse_rational(text) else { return };
    assert_eq!(parse_rational(&fmt_rational(&r)).as_ref(), Ok(&r));
});
