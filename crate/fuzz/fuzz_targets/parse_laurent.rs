//! Laurent polynomial grammar: no panics, and the printed form parses back.

#![no_main]

use floerdim::parse::laurent;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(poly) = laurent(data) else { return };
    let text = poly.to_string();
    assert_eq!(laurent(&text).as_ref(), Ok(&poly), "{text}");
    let _ = poly.is_symmetric();
    let _ = poly.abs_sum();
});
