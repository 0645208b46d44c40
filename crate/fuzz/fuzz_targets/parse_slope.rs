//! Slope grammar `y/x`: no panics, canonical printing round-trips, and bypass
//! children of moderate slopes stay additive.

#![no_main]

use floerdim::slope::{additive, bypass_children, lattice_triangle_ok, Slope};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(s) = data.parse::<Slope>() else { return };
    assert_eq!(s.to_string().parse::<Slope>(), Ok(s));
    if s.x.abs() <= 1 << 20 && s.y.abs() <= 1 << 20 && s != (Slope { x: 1, y: 0 }) {
        let (a, b) = bypass_children(s);
        assert!(additive(a, b, s) && lattice_triangle_ok(a, b, s), "{s} -> {a}, {b}");
    }
});
