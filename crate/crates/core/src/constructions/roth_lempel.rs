//! Roth-Lempel typed extensions of Hermitian self-orthogonal GRS codes.
//!
//! `G_K = (L_K | R)` where `L_K` generates `GRS_K(α, v)` on a roots or coset
//! family and `R` is `n`-by-2 with `λ₁` at row `K−2`, `λ₂` at row `K−1`
//! (0-based) and zeros elsewhere. Rows of `L_K` are pairwise orthogonal, so
//! `G_K G_K†` is diagonal and the hull is `K` minus its support size.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::constructions::families::{gcd, EvalFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::grs::grs_generator;
use crate::matrix::Mat;
use crate::Form;

/// Dimension limits for the extension pipeline.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KLimits {
    pub n: usize,
    pub q: usize,
    /// `⌊(n+q−1)/(q+1)⌋`, the self-orthogonal GRS range.
    pub k: usize,
    /// Smallest positive `k₀` with `(n−1) | k₀(q+1)`.
    pub k0: usize,
    pub i_min: usize,
    /// `k + i_min + 1`
    #[serde(rename = "K")]
    pub big_k: usize,
    /// `(n−1) | k(q+1)`
    pub divides_k: bool,
    /// `(n−1) | (K−1)(q+1)`
    pub divides_k_minus_1: bool,
    /// `(n−1) | (K−2)(q+1)`
    pub divides_k_minus_2: bool,
}

impl KLimits {
    /// The hull the extension theorem states for `G_K` under free λ.
    pub fn theorem_hull(&self, delta_count: usize) -> Option<usize> {
        let drop = 2 - self.divides_k_minus_1 as usize - self.divides_k_minus_2 as usize;
        self.big_k.checked_sub(delta_count + drop)
    }
}

/// Needs `n` odd and `n ≥ q + 2`. The roots-family condition
/// `(n−1) | (q²−1)` is checked separately by [`k_limits_roots`].
pub fn k_limits(n: usize, q: usize) -> Result<KLimits> {
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("n = {n} must be odd")));
    }
    let k = (n + q - 1) / (q + 1);
    let half = (n.checked_sub(q).ok_or_else(|| Error::Precondition(format!("n = {n} below q = {q}")))?) / 2;
    let i_min = half
        .checked_sub(k)
        .ok_or_else(|| Error::Precondition(format!("⌊(n−q)/2⌋ = {half} below k = {k}")))?
        .min(q - 1);
    let big_k = k + i_min + 1;
    let m = n - 1;
    let div = |j: usize| (j * (q + 1)).is_multiple_of(m);
    Ok(KLimits {
        n,
        q,
        k,
        k0: m / gcd(m, q + 1),
        i_min,
        big_k,
        divides_k: div(k),
        divides_k_minus_1: div(big_k - 1),
        divides_k_minus_2: big_k >= 2 && div(big_k - 2),
    })
}

pub fn k_limits_roots(n: usize, q: usize) -> Result<KLimits> {
    if n < 2 || !(q * q - 1).is_multiple_of(n - 1) {
        return Err(Error::Precondition(format!("(n−1) ∤ (q²−1) for n = {n}, q = {q}")));
    }
    k_limits(n, q)
}

/// Limits for a family, checking the family-specific theorem conditions:
/// `(n−1) | k(q+1)` for roots, `(n−1) | k(q+1)` or `(n−1) | (k+1)(q+1)` for
/// cosets.
pub fn family_limits(fam: &EvalFamily) -> Result<KLimits> {
    let (n, q) = (fam.n(), fam.q as usize);
    let lim = match fam.kind() {
        FamilyKind::RootsOfUnityPlusZero => k_limits_roots(n, q)?,
        FamilyKind::CosetUnion => k_limits(n, q)?,
        FamilyKind::AffineGrid => {
            return Err(Error::Precondition("extensions use the roots or coset family".into()))
        }
    };
    let ok = match fam.kind() {
        FamilyKind::RootsOfUnityPlusZero => lim.divides_k,
        _ => lim.divides_k || ((lim.k + 1) * (q + 1)) % (n - 1) == 0,
    };
    if !ok {
        return Err(Error::Precondition(format!(
            "(n−1) ∤ k(q+1) for n = {n}, q = {q}, k = {}",
            lim.k
        )));
    }
    Ok(lim)
}

/// Hermitian self-products of the GRS rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaProfile {
    /// `δ_j = ⟨g_{j+1}, g_{j+1}⟩_H`
    pub deltas: Vec<Felt>,
    /// `{j : δ_j ≠ 0}`
    pub support: Vec<usize>,
}

impl DeltaProfile {
    /// `♯Δ` over the first `rows` rows.
    pub fn count(&self, rows: usize) -> usize {
        self.support.iter().filter(|&&j| j < rows).count()
    }
}

fn require_hermitian(fam: &EvalFamily) -> Result<()> {
    if fam.form != Form::Hermitian {
        return Err(Error::Precondition("needs a Hermitian family".into()));
    }
    Ok(())
}

/// Diagonal of `G G†` for `GRS_K`; fails if any off-diagonal entry is nonzero.
pub fn delta_profile(fam: &EvalFamily, big_k: usize) -> Result<DeltaProfile> {
    require_hermitian(fam)?;
    let g = grs_generator(fam.field(), fam.points.alpha(), &fam.multipliers, big_k)?;
    profile_of(&g)
}

fn profile_of(g: &Mat) -> Result<DeltaProfile> {
    let gram = g.gram(Form::Hermitian)?;
    for i in 0..gram.rows() {
        for j in 0..gram.cols() {
            if i != j && !gram.get(i, j).is_zero() {
                return Err(Error::Invariant(format!("rows {i} and {j} are not orthogonal")));
            }
        }
    }
    let deltas: Vec<Felt> = (0..gram.rows()).map(|i| gram.get(i, i)).collect();
    let support = deltas.iter().enumerate().filter(|(_, d)| !d.is_zero()).map(|(j, _)| j).collect();
    Ok(DeltaProfile { deltas, support })
}

/// How λ is picked for one of the two extra columns.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaPolicy {
    /// Smallest-exponent nonzero λ with `λ^{q+1} ≠ −δ` at its row.
    #[default]
    Free,
    /// A root of `λ^{q+1} = −δ` (needs `δ ≠ 0`), cancelling the row's
    /// self-product and raising the hull by one.
    Boundary,
    /// An explicit value.
    Value(Felt),
}

fn choose_lambda(f: &Field, q: u32, delta: Felt, policy: LambdaPolicy) -> Result<Felt> {
    let target = f.neg(delta);
    match policy {
        LambdaPolicy::Free => f
            .nonzero()
            .find(|&l| f.pow_u(l, q as u64 + 1) != target)
            .ok_or_else(|| Error::Precondition("no free λ".into())),
        LambdaPolicy::Boundary => {
            if delta.is_zero() {
                return Err(Error::Precondition("boundary λ needs δ ≠ 0 at its row".into()));
            }
            f.norm_root(target)
        }
        LambdaPolicy::Value(l) => {
            if l.is_zero() || !f.contains(l) {
                return Err(Error::Precondition("λ must be a nonzero field element".into()));
            }
            Ok(l)
        }
    }
}

/// An `[n+2, K]` extension.
#[derive(Clone, Debug)]
pub struct RlExtension {
    pub big_k: usize,
    pub lambda1: Felt,
    pub lambda2: Felt,
    pub delta: Felt,
    pub profile: DeltaProfile,
    /// Hull from the diagonal Gram matrix.
    pub predicted_hull: usize,
    pub code: LinearCode,
}

/// `(L_K | R)`; `K ≥ 2` and `K ≤ n`. The measured hull must equal the
/// diagonal-Gram prediction.
pub fn rl_extend(fam: &EvalFamily, big_k: usize, l1: LambdaPolicy, l2: LambdaPolicy) -> Result<RlExtension> {
    require_hermitian(fam)?;
    let n = fam.n();
    if big_k < 2 || big_k > n {
        return Err(Error::Precondition(format!("K = {big_k} outside 2..={n}")));
    }
    let f = fam.field();
    let l = grs_generator(f, fam.points.alpha(), &fam.multipliers, big_k)?;
    let profile = profile_of(&l)?;
    let d1 = profile.deltas[big_k - 2];
    let d2 = profile.deltas[big_k - 1];
    let lambda1 = choose_lambda(f, fam.q, d1, l1)?;
    let lambda2 = choose_lambda(f, fam.q, d2, l2)?;
    let mut r = Mat::zeros(f, big_k, 2);
    r.set(big_k - 2, 0, lambda1);
    r.set(big_k - 1, 1, lambda2);
    let code = LinearCode::new(l.hstack(&r)?)?;

    let q1 = fam.q as u64 + 1;
    let cell = |d: Felt, lam: Felt| !f.add(d, f.pow_u(lam, q1)).is_zero();
    let rank = profile.count(big_k - 2) + cell(d1, lambda1) as usize + cell(d2, lambda2) as usize;
    let predicted_hull = big_k - rank;
    let measured = code.hull_dim(Form::Hermitian)?;
    if measured != predicted_hull {
        return Err(Error::HullMismatch {
            predicted: predicted_hull,
            measured,
        });
    }
    Ok(RlExtension {
        big_k,
        lambda1,
        lambda2,
        delta: Felt::ZERO,
        profile,
        predicted_hull,
        code,
    })
}

/// Which length the flexible-hull construction works at.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlexLength {
    /// `GRS_{k'}` on the family, MDS.
    N,
    /// `GRS_{k'}` plus one column `λ₂ e_{k'−1}`, MDS.
    NPlus1,
    /// The full extension with `K = k'`, AMDS.
    NPlus2,
}

impl FlexLength {
    pub fn extra(self) -> usize {
        match self {
            FlexLength::N => 0,
            FlexLength::NPlus1 => 1,
            FlexLength::NPlus2 => 2,
        }
    }
}

/// The unscaled code a flexible construction starts from.
#[derive(Clone, Debug)]
pub struct FlexBase {
    pub length: FlexLength,
    pub k: usize,
    pub profile: DeltaProfile,
    /// Hull the corresponding corollary states: `k' − ♯Δ_{k'}`.
    pub stated_hull: usize,
    pub hull: usize,
    pub code: LinearCode,
}

pub fn flex_base(fam: &EvalFamily, k: usize, length: FlexLength) -> Result<FlexBase> {
    require_hermitian(fam)?;
    if k == 0 || k > fam.n() {
        return Err(Error::Precondition(format!("k' = {k} outside 1..={}", fam.n())));
    }
    let f = fam.field();
    let g = grs_generator(f, fam.points.alpha(), &fam.multipliers, k)?;
    let profile = profile_of(&g)?;
    let code = match length {
        FlexLength::N => LinearCode::new(g)?,
        FlexLength::NPlus1 => {
            let lam = choose_lambda(f, fam.q, profile.deltas[k - 1], LambdaPolicy::Free)?;
            let mut col = Mat::zeros(f, k, 1);
            col.set(k - 1, 0, lam);
            LinearCode::new(g.hstack(&col)?)?
        }
        FlexLength::NPlus2 => {
            if k < 2 {
                return Err(Error::Precondition("the length n+2 variant needs k' ≥ 2".into()));
            }
            rl_extend(fam, k, LambdaPolicy::Free, LambdaPolicy::Free)?.code
        }
    };
    let hull = code.hull_dim(Form::Hermitian)?;
    Ok(FlexBase {
        length,
        k,
        stated_hull: k - profile.count(k),
        profile,
        hull,
        code,
    })
}

/// A code of the flexible family with its scaling record.
#[derive(Clone, Debug)]
pub struct FlexibleCode {
    pub length: FlexLength,
    pub k: usize,
    pub j: usize,
    pub base_hull: usize,
    pub stated_hull: usize,
    pub unit: Felt,
    /// Columns of the standardized generator multiplied by `unit`.
    pub scaled: Vec<usize>,
    pub code: LinearCode,
}

/// Lowers the hull of `base` to `j` by scaling columns one at a time.
///
/// Starting from the row-reduced generator, each step scales the first
/// column `c` whose column vector lies outside the range of `Γ = G G†`.
/// That is a rank-one update of `Γ` by `(a^{q+1} − 1) g_c g_c†` with `g_c`
/// outside the range, so the Gram rank grows by exactly one.
pub fn scale_to_hull(base: &FlexBase, j: usize, unit: Felt) -> Result<FlexibleCode> {
    if j > base.hull {
        return Err(Error::Precondition(format!(
            "hull {j} exceeds the attainable {} for k' = {}",
            base.hull, base.k
        )));
    }
    let f = base.code.field().clone();
    let mut g = base.code.gen().rref().mat;
    let mut scaled = Vec::new();
    let mut hull = base.hull;
    while hull > j {
        let gram = g.gram(Form::Hermitian)?;
        let rank = gram.rank();
        let c = (0..g.cols())
            .filter(|c| !scaled.contains(c))
            .find(|&c| {
                let col = Mat::from_vec(&f, g.rows(), 1, g.column(c)).expect("column shape");
                gram.hstack(&col).expect("same rows").rank() > rank
            })
            .ok_or_else(|| Error::Invariant("every column lies in the Gram range".into()))?;
        let mut mult = vec![Felt::ONE; g.cols()];
        mult[c] = unit;
        g = g.scale_columns(&mult)?;
        scaled.push(c);
        hull -= 1;
    }
    let code = LinearCode::new(g)?;
    let measured = code.hull_dim(Form::Hermitian)?;
    if measured != j {
        return Err(Error::HullMismatch {
            predicted: j,
            measured,
        });
    }
    Ok(FlexibleCode {
        length: base.length,
        k: base.k,
        j,
        base_hull: base.hull,
        stated_hull: base.stated_hull,
        unit,
        scaled,
        code,
    })
}

/// `[n + extra, k']` code with Hermitian hull exactly `j`.
pub fn rl_flexible(fam: &EvalFamily, k: usize, j: usize, length: FlexLength, strict_unit: bool) -> Result<FlexibleCode> {
    let base = flex_base(fam, k, length)?;
    let unit = fam.field().scaling_unit(Form::Hermitian, strict_unit)?;
    scale_to_hull(&base, j, unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{DistanceClass, DEFAULT_SUBSET_BUDGET};
    use crate::constructions::families::{build_eval_family, FamilyParams};
    use crate::field::make_quadratic_extension;

    fn roots(q: u32, n: usize) -> EvalFamily {
        let f = make_quadratic_extension(q).unwrap();
        build_eval_family(&f, FamilyParams::Roots { n }, Form::Hermitian).unwrap()
    }

    fn q5_coset() -> EvalFamily {
        let f = make_quadratic_extension(5).unwrap();
        build_eval_family(&f, FamilyParams::Coset { big_n: 6, t: 2 }, Form::Hermitian).unwrap()
    }

    #[test]
    fn limits_examples() {
        let l = k_limits_roots(17, 7).unwrap();
        assert_eq!((l.k, l.i_min, l.big_k, l.k0), (2, 3, 6, 2));
        assert!(l.divides_k && !l.divides_k_minus_1 && l.divides_k_minus_2);
        let l = k_limits(19, 5).unwrap();
        assert_eq!((l.k, l.big_k), (3, 8));
        let l = k_limits_roots(25, 5).unwrap();
        assert_eq!((l.k, l.big_k), (4, 9));
        // n = q + 2: k = 1
        assert_eq!(k_limits(5, 3).unwrap().k, 1);
        assert!(k_limits(18, 7).is_err());
        assert!(k_limits_roots(15, 7).is_err());
    }

    #[test]
    fn q7_profile() {
        let fam = roots(7, 17);
        let p = delta_profile(&fam, 6).unwrap();
        assert_eq!(p.support, vec![2, 4]);
        let f = fam.field();
        let vn = fam.multipliers[16];
        assert_eq!(p.deltas[2], f.neg(f.pow_u(vn, 8)));
        assert_eq!(p.count(6), 2);
        assert!(delta_profile(&fam, 2).unwrap().support.is_empty());
    }

    #[test]
    fn q5_coset_profile() {
        let fam = q5_coset();
        let p = delta_profile(&fam, 8).unwrap();
        assert_eq!(p.support, vec![3, 4, 7]);
        let g = grs_generator(fam.field(), fam.points.alpha(), &fam.multipliers, 8).unwrap();
        assert_eq!(g.gram_rank(Form::Hermitian).unwrap(), 3);
    }

    #[test]
    fn q7_extension_table() {
        let fam = roots(7, 17);
        use LambdaPolicy::*;
        for (k, pol1, pol2, hull) in [
            (6, Free, Free, 3),
            (6, Boundary, Free, 4),
            (5, Free, Free, 2),
            (5, Free, Boundary, 3),
            (4, Free, Free, 2),
            (4, Boundary, Free, 3),
            (3, Free, Boundary, 2),
        ] {
            let ext = rl_extend(&fam, k, pol1, pol2).unwrap();
            assert_eq!(ext.code.n(), 19);
            assert_eq!(ext.code.hull_dim(Form::Hermitian).unwrap(), hull, "K = {k}");
        }
        let lim = k_limits_roots(17, 7).unwrap();
        let ext = rl_extend(&fam, 6, Free, Free).unwrap();
        assert_eq!(lim.theorem_hull(ext.profile.count(6)), Some(ext.predicted_hull));
        assert!(rl_extend(&fam, 6, Free, Boundary).is_err());
    }

    #[test]
    fn q7_extension_is_amds() {
        let fam = roots(7, 17);
        let ext = rl_extend(&fam, 6, LambdaPolicy::Free, LambdaPolicy::Free).unwrap();
        let rep = ext.code.distance_class(DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!(rep.class, DistanceClass::Amds);
        assert_eq!(rep.exact(), Some(13));
    }

    #[test]
    fn punctured_extension_is_grs() {
        let fam = roots(7, 17);
        for (k, hull) in [(6, 4), (5, 3), (4, 3), (3, 2)] {
            let ext = rl_extend(&fam, k, LambdaPolicy::Free, LambdaPolicy::Free).unwrap();
            let p = ext.code.puncture(&[17, 18]).unwrap();
            assert_eq!(p.hull_dim(Form::Hermitian).unwrap(), hull);
            let base = flex_base(&fam, k, FlexLength::N).unwrap();
            assert!(p.same_code(&base.code).unwrap());
            assert_eq!(base.stated_hull, hull);
        }
    }

    #[test]
    fn fully_self_orthogonal_extension() {
        // K within the self-orthogonal range and λ cancelling nothing: the
        // only Gram entries are λ^{q+1}, so the hull is K − 2; with δ ≠ 0 at
        // both extra rows and boundary λ the Gram matrix vanishes.
        let fam = roots(5, 25);
        let p = delta_profile(&fam, 9).unwrap();
        assert_eq!(p.support, vec![4, 8]);
        let ext = rl_extend(&fam, 3, LambdaPolicy::Free, LambdaPolicy::Free).unwrap();
        assert_eq!(ext.predicted_hull, 1);
    }

    #[test]
    fn q5_coset_flexible() {
        let fam = q5_coset();
        for k in 3..=8 {
            let base = flex_base(&fam, k, FlexLength::N).unwrap();
            assert_eq!(base.hull, base.stated_hull);
            let unit = fam.field().scaling_unit(Form::Hermitian, false).unwrap();
            for j in 0..=base.hull {
                let c = scale_to_hull(&base, j, unit).unwrap();
                assert_eq!(c.code.hull_dim(Form::Hermitian).unwrap(), j);
            }
        }
        let base = flex_base(&fam, 8, FlexLength::N).unwrap();
        assert_eq!(base.hull, 5);
        let rep = base.code.distance_class(DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!((rep.class, rep.exact()), (DistanceClass::Mds, Some(12)));
    }

    #[test]
    fn flexible_rejects_large_j() {
        let fam = roots(7, 17);
        assert!(rl_flexible(&fam, 6, 5, FlexLength::N, false).is_err());
        assert!(rl_flexible(&fam, 1, 0, FlexLength::NPlus2, false).is_err());
        let c = rl_flexible(&fam, 6, 0, FlexLength::N, false).unwrap();
        assert_eq!(c.scaled.len(), 4);
    }
}
