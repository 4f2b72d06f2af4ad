//! TGRS codes with a prescribed Euclidean or Hermitian hull dimension.
//!
//! All three settings share one recipe: multipliers `v` with `u = v²` (or
//! `u = v^{q+1}`), then the first `r` multipliers are scaled by a unit `a`
//! whose square (or norm) is not 1. Each scaled coordinate forces the hull
//! polynomials to vanish there, which drops the hull by one.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::{DistanceClass, LinearCode};
use crate::constructions::families::{build_eval_family, solve_multipliers, FamilyParams};
use crate::error::{Error, Result};
use crate::field::{make_field_of_order, make_quadratic_extension, Felt, Field};
use crate::grs::{pick_eta, tgrs_generator, EtaConstraint, EvalVector, TwistParams};
use crate::Form;

/// Which hull theorem a TGRS recipe follows.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "thm", rename_all = "kebab-case")]
pub enum HullRecipe {
    /// Euclidean over GF(q), q even, points the roots of `x^n − x`.
    QEven { q: u32, n: usize },
    /// Euclidean over GF(q²), q odd, points drawn from GF(q) \ {0, 1}.
    QOdd { q: u32, n: usize },
    /// Hermitian over GF(q²) on one of the three families.
    HermitianTgrs { q: u32, family: FamilyParams },
}

impl HullRecipe {
    pub fn form(&self) -> Form {
        match self {
            HullRecipe::HermitianTgrs { .. } => Form::Hermitian,
            _ => Form::Euclidean,
        }
    }

    pub fn q(&self) -> u32 {
        match *self {
            HullRecipe::QEven { q, .. } | HullRecipe::QOdd { q, .. } | HullRecipe::HermitianTgrs { q, .. } => q,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            HullRecipe::QEven { .. } => "q-even",
            HullRecipe::QOdd { .. } => "q-odd",
            HullRecipe::HermitianTgrs { .. } => "hermitian-tgrs",
        }
    }
}

/// How η is chosen where the theorem leaves it free.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EtaPolicy {
    /// Smallest admissible exponent.
    #[default]
    Smallest,
    /// Smallest admissible η giving an MDS code.
    Mds,
    /// Smallest admissible η giving an AMDS code.
    Amds,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullOptions {
    pub eta: EtaPolicy,
    /// Restrict the Hermitian scaling unit to GF(q).
    pub strict_unit: bool,
}

/// A built TGRS code together with everything needed to rebuild it.
#[derive(Clone, Debug)]
pub struct HullTgrs {
    pub recipe: HullRecipe,
    pub k: usize,
    pub r: usize,
    pub points: EvalVector,
    /// Multipliers after scaling the first `r` coordinates.
    pub multipliers: Vec<Felt>,
    pub eta: Felt,
    pub unit: Felt,
    pub expected_hull: usize,
    /// Distance class implied by the subset-sum test.
    pub predicted_class: DistanceClass,
    pub code: LinearCode,
}

impl HullTgrs {
    pub fn form(&self) -> Form {
        self.recipe.form()
    }

    pub fn n(&self) -> usize {
        self.points.n()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.points.field()
    }
}

/// The first `n` points of GF(q) \ {0, 1} in ascending exponent order,
/// swapping the largest for the next candidate until the sum is nonzero.
pub fn odd_q_points(field: &Field, q: u32, n: usize) -> Result<Vec<Felt>> {
    let pool: Vec<Felt> = field
        .nonzero()
        .filter(|&x| x.log().unwrap() % (q + 1) == 0 && x != Felt::ONE)
        .collect();
    if n == 0 || n > pool.len() {
        return Err(Error::Precondition(format!("need 1 ≤ n ≤ q − 2 = {}", pool.len())));
    }
    let mut pts = pool[..n].to_vec();
    let mut next = n;
    while field.sum(pts.iter().copied()).is_zero() {
        if next == pool.len() {
            return Err(Error::Precondition("no point set with nonzero sum".into()));
        }
        pts[n - 1] = pool[next];
        next += 1;
    }
    Ok(pts)
}

fn check_kr(k: usize, r: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if r >= k {
        return Err(Error::Precondition(format!("r = {r} must be below k = {k}")));
    }
    Ok(())
}

/// Builds the code, measures its hull both ways, and checks the prediction.
pub fn build_hull_tgrs(recipe: &HullRecipe, k: usize, r: usize, opts: HullOptions) -> Result<HullTgrs> {
    check_kr(k, r)?;
    let form = recipe.form();
    let (field, points, base_v, expected, constraint): (Arc<Field>, EvalVector, Vec<Felt>, usize, EtaConstraint) =
        match *recipe {
            HullRecipe::QEven { q, n } => {
                if q % 2 == 1 {
                    return Err(Error::Precondition(format!("q = {q} is not even")));
                }
                if k > n / 2 {
                    return Err(Error::Precondition(format!("k = {k} exceeds ⌊n/2⌋ = {}", n / 2)));
                }
                let f = make_field_of_order(q)?;
                let fam = build_eval_family(&f, FamilyParams::Roots { n }, Form::Euclidean)?;
                (f, fam.points, fam.multipliers, k - r, EtaConstraint::None)
            }
            HullRecipe::QOdd { q, n } => {
                if q % 2 == 0 {
                    return Err(Error::Precondition(format!("q = {q} is not odd")));
                }
                let expected = if n == 2 * k + 1 {
                    k - r - 1
                } else if n >= 2 && k < n / 2 {
                    k - r
                } else {
                    return Err(Error::Precondition(format!(
                        "need k ≤ ⌊n/2⌋ − 1 or n = 2k + 1, got n = {n}, k = {k}"
                    )));
                };
                let f = make_quadratic_extension(q)?;
                let pts = EvalVector::new(&f, odd_q_points(&f, q, n)?)?;
                let v = solve_multipliers(&pts, Form::Euclidean)?;
                (f, pts, v, expected, EtaConstraint::None)
            }
            HullRecipe::HermitianTgrs { q, family } => {
                let f = make_quadratic_extension(q)?;
                let fam = build_eval_family(&f, family, Form::Hermitian)?;
                let n = fam.n();
                let q1 = q as usize + 1;
                if k > n / q1 {
                    return Err(Error::Precondition(format!("k = {k} exceeds ⌊n/(q+1)⌋ = {}", n / q1)));
                }
                // The twisted term x^{k-1} + ηx^k raised to the q-th power
                // lands on the dual's twisted pair once k(q+1) ≥ n − 1,
                // and then only the untwisted part survives in the hull.
                let expected = if k * q1 + 2 <= n { k - r } else { k - 1 - r };
                (f, fam.points, fam.multipliers, expected, EtaConstraint::AntiHermitian)
            }
        };

    let eta = match *recipe {
        HullRecipe::QOdd { .. } => f_eta_odd(&field, points.s())?,
        _ => match opts.eta {
            EtaPolicy::Smallest => match constraint {
                EtaConstraint::None => Felt::ONE,
                EtaConstraint::AntiHermitian => field.find_eta()?,
            },
            EtaPolicy::Mds => pick_eta(&field, points.alpha(), k, DistanceClass::Mds, constraint)?,
            EtaPolicy::Amds => pick_eta(&field, points.alpha(), k, DistanceClass::Amds, constraint)?,
        },
    };
    let unit = field.scaling_unit(form, opts.strict_unit)?;
    let mut v = base_v;
    for x in v.iter_mut().take(r) {
        *x = field.mul(*x, unit);
    }
    let tw = TwistParams::new(k, eta)?;
    let predicted_class = crate::grs::classify_tgrs(&points, &tw)?;
    let code = LinearCode::new(tgrs_generator(&points, &v, &tw)?)?;
    let measured = code.hull_dim(form)?;
    if measured != expected {
        return Err(Error::HullMismatch {
            predicted: expected,
            measured,
        });
    }
    Ok(HullTgrs {
        recipe: *recipe,
        k,
        r,
        points,
        multipliers: v,
        eta,
        unit,
        expected_hull: expected,
        predicted_class,
        code,
    })
}

/// `η = −2 / s(α)`
fn f_eta_odd(f: &Field, s: Felt) -> Result<Felt> {
    f.div(f.neg(f.from_int(2)), s)
}
