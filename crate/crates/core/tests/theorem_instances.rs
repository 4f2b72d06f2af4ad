//! Every admissible instance of the three hull theorems with n ≤ 30.

mod common;

use common::recipes;
use hullforge::code::DEFAULT_SUBSET_BUDGET;
use hullforge::constructions::{build_hull_tgrs, FamilyParams, HullOptions, HullRecipe};
use hullforge::grs::{classify_tgrs, TwistParams};

#[test]
fn predicted_hulls_hold_everywhere() {
    let mut built = 0;
    let mut classified = 0;
    for (recipe, ks) in recipes() {
        for k in ks {
            for r in 0..k {
                let c = match build_hull_tgrs(&recipe, k, r, HullOptions::default()) {
                    Ok(c) => c,
                    // coset counts outside the admissible range are rejected by the builder
                    Err(hullforge::Error::Precondition(_)) if matches!(recipe, HullRecipe::HermitianTgrs { family: FamilyParams::Coset { .. }, .. }) => continue,
                    Err(e) => panic!("{recipe:?} k={k} r={r}: {e}"),
                };
                let rep = c.code.hull_report(c.form()).unwrap();
                assert_eq!(rep.gram, rep.intersection);
                assert_eq!(rep.gram, c.expected_hull, "{recipe:?} k={k} r={r}");
                built += 1;
                if r == 0 {
                    let d = c.code.distance_class(DEFAULT_SUBSET_BUDGET).unwrap();
                    let tw = TwistParams::new(k, c.eta).unwrap();
                    assert_eq!(classify_tgrs(&c.points, &tw).unwrap(), d.class, "{recipe:?} k={k}");
                    classified += 1;
                }
            }
        }
    }
    assert!(built > 200, "only {built} instances");
    assert!(classified > 50);
}
