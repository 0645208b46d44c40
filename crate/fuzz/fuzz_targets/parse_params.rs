//! `W(p,q,r,s)` / `K(p,q,k)` grammar: no panics, printing round-trips, and
//! small diagrams build into a valid strand model.

#![no_main]

use floerdim::diagram::{build, OneOneParams};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(w) = data.parse::<OneOneParams>() else { return };
    assert_eq!(w.to_string().parse::<OneOneParams>(), Ok(w));
    assert_eq!(w.mirror().mirror(), w);
    if w.p <= 64 {
        let model = build(w);
        model.validate().expect("built model is valid");
        assert_eq!(model.strands.len() as i64, w.p);
        let _ = floerdim::bypass::certify(w);
    }
});
