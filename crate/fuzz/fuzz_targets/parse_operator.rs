#![no_main]

use libfuzzer_sys::fuzz_target;
use spectral_duality::expr::{elaborate, operator_to_expr, parse_operator};
use spectral_duality::modrep::Carrier;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(tree) = parse_operator(text) else { return };
    let printed = tree.to_string();
    assert_eq!(parse_operator(&printed).as_ref(), Ok(&tree), "{printed}");
    let Ok(op) = elaborate(&tree, Carrier::PolyInZ) else { return };
    let canonical = operator_to_expr(&op);
    let again = parse_operator(&canonical.to_string()).expect("canonical text parses");
    assert_eq!(elaborate(&again, op.carrier()).as_ref(), Ok(&op));
});
