//! Evaluation sets with `s(α) = 0` and their self-dual multipliers.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::grs::EvalVector;
use crate::Form;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    RootsOfUnityPlusZero,
    AffineGrid,
    CosetUnion,
}

/// Parameters of an evaluation family.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyParams {
    /// Roots of `x^n − x`.
    Roots { n: usize },
    /// `a_i β + a_j` for `i < t`, all `j`; `n = t q`.
    Affine { t: usize },
    /// `U_N ∪ γ U_N ∪ … ∪ γ^t U_N ∪ {0}`; `n = (t + 1) N + 1`.
    Coset {
        #[serde(rename = "N")]
        big_n: usize,
        t: usize,
    },
}

impl FamilyParams {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyParams::Roots { .. } => FamilyKind::RootsOfUnityPlusZero,
            FamilyParams::Affine { .. } => FamilyKind::AffineGrid,
            FamilyParams::Coset { .. } => FamilyKind::CosetUnion,
        }
    }

    /// Length of the realized point set, before any validation.
    pub fn length(&self, q: usize) -> usize {
        match *self {
            FamilyParams::Roots { n } => n,
            FamilyParams::Affine { t } => t * q,
            FamilyParams::Coset { big_n, t } => (t + 1) * big_n + 1,
        }
    }
}

/// Realized evaluation family with multipliers `v` solving `u_i = v_i²`
/// (Euclidean) or `u_i = v_i^{q+1}` (Hermitian).
#[derive(Clone, Debug)]
pub struct EvalFamily {
    pub params: FamilyParams,
    pub form: Form,
    /// Order of the field the inner product is taken over: `q` for the
    /// Hermitian form on GF(q²), the full field order otherwise.
    pub q: u32,
    pub points: EvalVector,
    pub multipliers: Vec<Felt>,
}

impl EvalFamily {
    pub fn kind(&self) -> FamilyKind {
        self.params.kind()
    }

    pub fn n(&self) -> usize {
        self.points.n()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.points.field()
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn base_q(field: &Field, form: Form) -> Result<u32> {
    match form {
        Form::Euclidean => Ok(field.order()),
        Form::Hermitian => field.subfield_order().ok_or(Error::NotQuadratic),
    }
}

/// Builds the point set, checks `s(α) = 0`, and solves for multipliers.
pub fn build_eval_family(field: &Arc<Field>, params: FamilyParams, form: Form) -> Result<EvalFamily> {
    let q = base_q(field, form)? as usize;
    let order = field.order() as usize;
    let mut pts: Vec<Felt> = match params {
        FamilyParams::Roots { n } => {
            // n = 2 gives {0, 1}, whose sum is not zero
            if n < 3 || !(order - 1).is_multiple_of(n - 1) {
                return Err(Error::Precondition(format!(
                    "roots family needs n ≥ 3 and (n−1) | {} but n = {n}",
                    order - 1
                )));
            }
            if form == Form::Euclidean && q % 2 == 1 {
                return Err(Error::Precondition("Euclidean roots family needs q even".into()));
            }
            let step = ((order - 1) / (n - 1)) as i64;
            (0..n as i64 - 1).map(|j| field.theta_pow(j * step)).chain([Felt::ZERO]).collect()
        }
        FamilyParams::Affine { t } => {
            if form != Form::Hermitian {
                return Err(Error::Precondition("affine grid is a Hermitian family".into()));
            }
            if t == 0 || t > q - 1 {
                return Err(Error::Precondition(format!("affine grid needs 1 ≤ t ≤ {}", q - 1)));
            }
            let mut sub: Vec<Felt> = field.nonzero().filter(|&x| x.log().unwrap() % (q as u32 + 1) == 0).collect();
            sub.insert(0, Felt::ZERO);
            let beta = field.theta();
            sub[..t]
                .iter()
                .flat_map(|&ai| sub.iter().map(move |&aj| (ai, aj)))
                .map(|(ai, aj)| field.add(field.mul(ai, beta), aj))
                .collect()
        }
        FamilyParams::Coset { big_n, t } => {
            if form != Form::Hermitian {
                return Err(Error::Precondition("coset union is a Hermitian family".into()));
            }
            if big_n == 0 || !(order - 1).is_multiple_of(big_n) {
                return Err(Error::Precondition(format!("coset family needs N | {}", order - 1)));
            }
            let n1 = gcd(big_n, q + 1);
            let n2 = big_n / n1;
            let t_max = ((q - 1) / n2).saturating_sub(2);
            if t == 0 || t > t_max {
                return Err(Error::Precondition(format!(
                    "coset count t = {t} outside 1..={t_max} (n₂ = {n2})"
                )));
            }
            let gamma = ((q + 1) / n1) as i64;
            let step = ((order - 1) / big_n) as i64;
            (0..=t as i64)
                .flat_map(|j| (0..big_n as i64).map(move |s| j * gamma + s * step))
                .map(|e| field.theta_pow(e))
                .chain([Felt::ZERO])
                .collect()
        }
    };
    pts.sort();
    let points = EvalVector::new(field, pts)?;
    if !points.s().is_zero() {
        return Err(Error::Invariant("family points do not sum to zero".into()));
    }
    let multipliers = solve_multipliers(&points, form)?;
    Ok(EvalFamily {
        params,
        form,
        q: q as u32,
        points,
        multipliers,
    })
}

/// `v_i` with `v_i² = u_i` or `v_i^{q+1} = c u_i`.
///
/// `c = 1` whenever every `u_i` lies in GF(q). On the affine grid with odd
/// `q` and even `t` the `u_i` share the factor `(β^q − β)^{1−t}`, which is
/// outside GF(q); then `c = u_1^{-1}`. A common scalar does not change the
/// dual GRS code, so the hull analysis is unaffected.
pub fn solve_multipliers(points: &EvalVector, form: Form) -> Result<Vec<Felt>> {
    let f = points.field();
    let u = points.u();
    let scale = match form {
        Form::Hermitian if !u.iter().all(|&x| f.in_subfield(x).unwrap_or(false)) => f.inv(u[0])?,
        _ => Felt::ONE,
    };
    u.iter()
        .map(|&x| match form {
            Form::Euclidean => f.sqrt(x),
            Form::Hermitian => f.norm_root(f.mul(scale, x)),
        })
        .collect()
}

/// `1 / P'_U(x)` for the coset union, from `P_U = x Π_j (x^N − c_j)` with
/// `c_j = γ^{jN}`.
pub fn coset_u_closed_form(field: &Field, big_n: usize, t: usize, points: &[Felt]) -> Result<Vec<Felt>> {
    let q = field.subfield_order().ok_or(Error::NotQuadratic)? as i64;
    let n1 = gcd(big_n, q as usize + 1) as i64;
    let gamma = field.theta_pow((q + 1) / n1);
    let c: Vec<Felt> = (0..=t as u64).map(|j| field.pow_u(gamma, j * big_n as u64)).collect();
    let nn = field.from_int(big_n as i64);
    points
        .iter()
        .map(|&x| {
            let d = if x.is_zero() {
                field.product(c.iter().map(|&cj| field.neg(cj)))
            } else {
                let xn = field.pow_u(x, big_n as u64);
                let j = c.iter().position(|&cj| cj == xn).ok_or(Error::Precondition(
                    "point outside the coset union".into(),
                ))?;
                let rest = field.product(c.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &ci)| field.sub(xn, ci)));
                field.mul(field.mul(nn, xn), rest)
            };
            field.inv(d)
        })
        .collect()
}
