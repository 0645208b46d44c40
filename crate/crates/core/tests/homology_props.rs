use std::collections::BTreeSet;

use floerdim::diagram::{build, OneOneParams};
use floerdim::homology::*;
use floerdim::laurent::LaurentPoly;
use num_integer::Integer;

fn t(a: i64, b: i64) -> TorusKnotParams {
    TorusKnotParams::new(a, b).unwrap()
}

/// `t^{-g}((1 - t) Σ_{s ∈ S, s < 2g} t^s + t^{2g})` for the semigroup `S = aN + bN`.
fn semigroup_alexander(a: i64, b: i64) -> LaurentPoly {
    let g = (a - 1) * (b - 1) / 2;
    let mut sg = BTreeSet::new();
    for i in 0..=2 * g / a.max(1) + 1 {
        for j in 0..=2 * g / b.max(1) + 1 {
            if a * i + b * j < 2 * g {
                sg.insert(a * i + b * j);
            }
        }
    }
    let mut poly = LaurentPoly::monomial(2 * g, 1);
    for s in sg {
        poly.add_term(s, 1);
        poly.add_term(s + 1, -1);
    }
    poly.shift(-g)
}

#[test]
fn torus_polynomials_match_semigroup_oracle() {
    for a in 1..=11 {
        for b in a..=13 {
            if a.gcd(&b) != 1 {
                continue;
            }
            let d = torus_alexander(t(a, b)).unwrap();
            assert_eq!(d, semigroup_alexander(a, b), "T({a},{b})");
            // multiplying back recovers (t^{ab} - 1)(t - 1)
            let m = |e| &LaurentPoly::monomial(e, 1) - &LaurentPoly::one();
            let lhs = &(&d.shift(torus_genus(t(a, b))) * &m(a)) * &m(b);
            assert_eq!(lhs, &m(a * b) * &m(1));
            assert_eq!(torus_alexander(t(b, a)).unwrap(), d);
        }
    }
}

#[test]
fn khi_tables_are_absolute_coefficients() {
    for a in 2..=9 {
        for b in a + 1..=9 {
            if a.gcd(&b) != 1 {
                continue;
            }
            let d = torus_alexander(t(a, b)).unwrap();
            let dims = khi_torus_dims(t(a, b)).unwrap();
            assert!(d.is_symmetric() && dims.is_symmetric());
            assert_eq!(d.eval_one().abs(), 1);
            assert_eq!(d.max_exp(), Some(torus_genus(t(a, b))));
            assert_eq!(dims.total as i64, d.abs_sum());
            for (e, c) in d.terms() {
                assert_eq!(dims.get(e), c.unsigned_abs());
            }
            // torus knot coefficients alternate in sign and are ±1
            assert!(d.terms().all(|(_, c)| c.abs() == 1));
        }
    }
}

#[test]
fn s3_diagrams_have_symmetric_euler_characteristic() {
    for wp in OneOneParams::all(9) {
        let m = build(wp);
        if !m.is_connected() || m.lens_order().unwrap() != 1 {
            continue;
        }
        let table = alexander_gradings(&m).unwrap();
        let euler = table.euler.clone().unwrap();
        assert!(euler.is_symmetric(), "{wp}: {euler}");
        assert_eq!(euler.eval_one(), 1);
        let dims = table.absolute().unwrap();
        assert!(dims.is_symmetric());
        assert_eq!(dims.total as i64, hfk_rank(wp).unwrap());
        // the signed count can only cancel, never exceed the rank
        assert!(euler.abs_sum() <= wp.p);
    }
}

#[test]
fn lens_space_gradings_split_into_classes() {
    for wp in OneOneParams::all(8) {
        let m = build(wp);
        let Ok(order) = m.lens_order() else { continue };
        if order <= 1 || !m.is_connected() {
            continue;
        }
        let table = alexander_gradings(&m).unwrap();
        assert!(table.relative && table.euler.is_none());
        let total: u64 = table.classes.values().map(|c| c.total).sum();
        assert_eq!(total as i64, wp.p);
    }
}

#[test]
fn trefoil_realizations_agree_with_khi() {
    let target = torus_alexander(t(2, 3)).unwrap();
    let khi = khi_torus_dims(t(2, 3)).unwrap();
    let hits = find_realization(&target, 6).unwrap();
    assert!(!hits.is_empty());
    for wp in &hits {
        let table = alexander_gradings(&build(*wp)).unwrap();
        assert_eq!(table.absolute(), Some(&khi), "{wp}");
        let report = floer_simple_check(&build(*wp)).unwrap();
        assert_eq!(report.hfk_rank, 3);
    }
}

#[test]
fn floer_simple_for_simple_knots() {
    for p in 1..=10 {
        for q in 0..p {
            for k in 0..p {
                let m = build(OneOneParams::simple(p, q, k).unwrap());
                if m.is_connected() {
                    assert!(floer_simple_check(&m).unwrap().simple);
                }
            }
        }
    }
}
