//! Extension, puncturing and flexible-hull invariants on every admissible
//! roots and coset family with n ≤ 30.

use hullforge::code::DistanceClass;
use hullforge::constructions::{
    delta_profile, family_limits, flex_base, rl_extend, scale_to_hull, FlexLength, LambdaPolicy,
};
use hullforge::eaqecc::{admissible_families, QTheorem};
use hullforge::grs::subset_sums;
use hullforge::{Felt, Form};

const BUDGET: u64 = 300_000;

#[test]
fn extension_puncturing_and_flexible_hulls() {
    let mut families = 0;
    let mut codes = 0;
    let mut classified = 0;
    let mut skipped = Vec::new();
    for q in [4u32, 5, 7, 8, 9, 13] {
        let mut fams = admissible_families(QTheorem::Q2, q, 30).unwrap();
        fams.extend(admissible_families(QTheorem::Q3, q, 30).unwrap());
        fams.dedup_by(|a, b| a.points.alpha() == b.points.alpha());
        for fam in &fams {
            families += 1;
            let n = fam.n();
            let lim = family_limits(fam).unwrap();
            let unit = fam.field().scaling_unit(Form::Hermitian, false).unwrap();
            for k in 1..=lim.big_k {
                let tag = format!("q={q} {:?} k'={k}", fam.params);
                // admissibility alone does not force a diagonal Gram matrix
                if delta_profile(fam, k).is_err() {
                    skipped.push(tag);
                    continue;
                }
                let bases: Vec<_> = [FlexLength::N, FlexLength::NPlus1, FlexLength::NPlus2]
                    .into_iter()
                    .filter(|&l| k >= 2 || l != FlexLength::NPlus2)
                    .map(|l| flex_base(fam, k, l).unwrap())
                    .collect();
                let stated = k - bases[0].profile.count(k);
                assert_eq!(bases[0].hull, stated, "{tag}: GRS hull");

                if k >= 2 {
                    let ext = rl_extend(fam, k, LambdaPolicy::Free, LambdaPolicy::Free).unwrap();
                    let punct = ext.code.puncture(&[n, n + 1]).unwrap();
                    assert!(punct.same_code(&bases[0].code).unwrap(), "{tag}: punctured extension");
                    assert_eq!(punct.hull_dim(Form::Hermitian).unwrap(), stated, "{tag}");
                    // dropping the λ₁ column leaves the length n+1 code
                    let one = ext.code.puncture(&[n]).unwrap();
                    assert!(one.same_code(&bases[1].code).unwrap(), "{tag}: single puncture");
                }

                // with δ = 0 the extension is MDS iff no (k'−1)-subset of points sums to 0
                let zero_sum = k >= 2 && subset_sums(fam.field(), fam.points.alpha(), k - 1).unwrap().contains(&Felt::ZERO);
                for base in &bases {
                    let want = match base.length {
                        FlexLength::NPlus2 if zero_sum => DistanceClass::Amds,
                        _ => DistanceClass::Mds,
                    };
                    let class = base.code.distance_class(BUDGET).unwrap().class;
                    if class != DistanceClass::Unknown {
                        assert_eq!(class, want, "{tag} {:?}", base.length);
                        classified += 1;
                    }
                    assert!(base.hull <= base.stated_hull, "{tag} {:?}", base.length);
                    for j in 0..=base.hull {
                        let c = scale_to_hull(base, j, unit).unwrap();
                        let rep = c.code.hull_report(Form::Hermitian).unwrap();
                        assert_eq!((rep.gram, rep.intersection), (j, j), "{tag} {:?} j={j}", base.length);
                        codes += 1;
                    }
                }
            }
        }
    }
    assert_eq!(skipped, ["q=8 Coset { big_n: 3, t: 5 } k'=6"]);
    assert!(families >= 15, "only {families} families");
    assert!(codes > 1000 && classified > 100, "{codes} codes, {classified} classified");
}
