//! Facts documents for the exact-triangle solver: malformed JSON and
//! oversized or overflowing systems must come back as errors, not panics.

#![no_main]

use floerdim::triangle::{brute_force, triangle_solve, Facts, GoalStatus, System};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(facts) = Facts::from_json(data) else { return };
    let Ok(report) = triangle_solve(&facts) else { return };
    assert_eq!(report.goals.len(), facts.goals.len());
    if report.contradiction.is_some() {
        return;
    }
    // the solver is sound: whatever it derives holds in every small solution
    let small = System::compile(&facts).is_ok_and(|s| s.var_count() <= 8);
    if let Some(e) = small.then(|| brute_force(&facts, 2).ok()).flatten() {
        for (g, &holds) in report.goals.iter().zip(&e.goal_holds) {
            if g.status == GoalStatus::Derived {
                assert!(holds, "{}", g.label);
            }
        }
    }
});
