#![no_main]

use libfuzzer_sys::fuzz_target;
use spectral_duality::algebra::BiPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    let Ok(poly) = BiPoly::from_json(&value) else { return };
    assert_eq!(BiPoly::from_json(&poly.to_json()).as_ref(), Ok(&poly));
});
