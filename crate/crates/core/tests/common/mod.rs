//! Admissible theorem instances shared by the integration tests.

use hullforge::constructions::{FamilyParams, HullRecipe};

const QS: [u32; 6] = [4, 5, 7, 8, 9, 13];
const MAX_N: usize = 30;

pub fn recipes() -> Vec<(HullRecipe, Vec<usize>)> {
    let mut out = Vec::new();
    for q in QS {
        let qu = q as usize;
        if q % 2 == 0 {
            for n in (3..=MAX_N).filter(|&n| (qu - 1).is_multiple_of(n - 1)) {
                out.push((HullRecipe::QEven { q, n }, (1..=n / 2).collect()));
            }
        } else {
            for n in 1..=(qu - 2).min(MAX_N) {
                let ks = (1..=n).filter(|&k| n == 2 * k + 1 || k < n / 2).collect();
                out.push((HullRecipe::QOdd { q, n }, ks));
            }
        }
        let order = qu * qu;
        let mut fams: Vec<FamilyParams> = (3..=MAX_N)
            .filter(|&n| (order - 1).is_multiple_of(n - 1))
            .map(|n| FamilyParams::Roots { n })
            .collect();
        fams.extend((1..qu).filter(|t| t * qu <= MAX_N).map(|t| FamilyParams::Affine { t }));
        for big_n in (1..order).filter(|d| (order - 1).is_multiple_of(*d)) {
            for t in 1..qu {
                let p = FamilyParams::Coset { big_n, t };
                if p.length(qu) <= MAX_N {
                    fams.push(p);
                }
            }
        }
        for family in fams {
            let n = family.length(qu);
            out.push((HullRecipe::HermitianTgrs { q, family }, (1..=n / (qu + 1)).collect()));
        }
    }
    out
}
