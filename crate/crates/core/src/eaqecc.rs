//! Entanglement-assisted quantum code parameters from Hermitian hulls.
//!
//! A classical `[n, k, d]` code over GF(q²) with Hermitian hull dimension
//! `ℓ` gives `[[n, k−ℓ, d; n−k−ℓ]]_q`, and its Hermitian dual gives
//! `[[n, n−k−ℓ, d'; k−ℓ]]_q`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{DistanceClass, LinearCode, DEFAULT_SUBSET_BUDGET};
use crate::constructions::families::{build_eval_family, EvalFamily, FamilyParams};
use crate::constructions::hull_tgrs::{build_hull_tgrs, HullOptions, HullRecipe};
use crate::constructions::roth_lempel::{delta_profile, family_limits, flex_base, scale_to_hull, FlexLength};
use crate::error::{Error, Result};
use crate::field::make_quadratic_extension;
use crate::grs::{classify_tgrs, TwistParams};
use crate::Form;

/// `[[n, k, d; c]]_q` with provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqeccParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// `false` when `d` is a lower bound or implied by the code's class.
    pub d_exact: bool,
    pub c: usize,
    pub source_theorem: String,
    pub classical_recipe_id: String,
    /// The classical code this record was built from is MDS.
    pub classical_mds: bool,
}

impl std::fmt::Display for EaqeccParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ge = if self.d_exact { "" } else { "≥" };
        write!(f, "[[{}, {}, {ge}{}; {}]]_{}", self.n, self.k, self.d, self.c, self.q)
    }
}

/// Distance of a classical code: exact, or a value implied by theory.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceInfo {
    pub d: usize,
    pub exact: bool,
    pub mds: bool,
}

impl DistanceInfo {
    /// The Hermitian dual's distance, measured unless `self` is MDS.
    pub fn of_dual(&self, code: &LinearCode, budget: u64) -> Result<DistanceInfo> {
        let dual = code.dual(Form::Hermitian)?;
        if dual.k() == 0 {
            return Ok(*self);
        }
        if self.mds {
            // the dual of an MDS code is MDS
            return Ok(DistanceInfo {
                d: code.k() + 1,
                exact: self.exact,
                mds: true,
            });
        }
        DistanceInfo::measure(&dual, budget, None)
    }

    /// Measures by column subsets; falls back to `implied` over budget.
    pub fn measure(code: &LinearCode, budget: u64, implied: Option<DistanceClass>) -> Result<DistanceInfo> {
        let (n, k) = (code.n(), code.k());
        let rep = code.distance_class(budget)?;
        if let Some(d) = rep.exact() {
            return Ok(DistanceInfo {
                d,
                exact: true,
                mds: rep.class == DistanceClass::Mds,
            });
        }
        Ok(match implied {
            Some(DistanceClass::Mds) => DistanceInfo {
                d: n - k + 1,
                exact: false,
                mds: true,
            },
            Some(DistanceClass::Amds) => DistanceInfo {
                d: n - k,
                exact: false,
                mds: false,
            },
            _ => DistanceInfo {
                d: rep.d_lower,
                exact: false,
                mds: false,
            },
        })
    }
}

/// Both records for `C` with Hermitian hull `ℓ`.
///
/// `c` of the first record is checked against `rank(P P†)` for a generator
/// `P` of the Hermitian dual, and the second against `rank(G G†)`.
pub fn derive(
    code: &LinearCode,
    q: u32,
    dist: DistanceInfo,
    dual_dist: Option<DistanceInfo>,
    source: &str,
    recipe_id: &str,
) -> Result<(EaqeccParams, Option<EaqeccParams>)> {
    let (n, k) = (code.n(), code.k());
    let ell = code.hull_dim(Form::Hermitian)?;
    let dual = code.dual(Form::Hermitian)?;
    let c1 = n - k - ell;
    let via_dual = if dual.k() == 0 { 0 } else { dual.gen().gram_rank(Form::Hermitian)? };
    if via_dual != c1 {
        return Err(Error::Invariant(format!("rank(PP†) = {via_dual} but n−k−ℓ = {c1}")));
    }
    let c2 = code.gen().gram_rank(Form::Hermitian)?;
    if c2 != k - ell {
        return Err(Error::Invariant(format!("rank(GG†) = {c2} but k−ℓ = {}", k - ell)));
    }
    let first = EaqeccParams {
        q,
        n,
        k: k - ell,
        d: dist.d,
        d_exact: dist.exact,
        c: c1,
        source_theorem: source.to_string(),
        classical_recipe_id: recipe_id.to_string(),
        classical_mds: dist.mds,
    };
    let second = match (dual.k(), dual_dist) {
        (0, _) => None,
        (_, Some(dd)) => Some(dd),
        (_, None) => Some(dist.of_dual(code, DEFAULT_SUBSET_BUDGET)?),
    }
    .map(|dd| EaqeccParams {
        q,
        n,
        k: n - k - ell,
        d: dd.d,
        d_exact: dd.exact,
        c: k - ell,
        source_theorem: source.to_string(),
        classical_recipe_id: format!("{recipe_id};dual"),
        classical_mds: dd.mds,
    });
    Ok((first, second))
}

/// Singleton-type bound checks.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    /// `k ≤ c + max(0, n − 2d + 2)`
    pub bound1: bool,
    /// `k ≤ n − d + 1`
    pub bound0: bool,
    /// Only evaluated when `2d ≥ n + 2`.
    pub bound2: Option<bool>,
    pub mds_eaqecc: bool,
}

impl BoundsReport {
    pub fn all_pass(&self) -> bool {
        self.bound1 && self.bound0 && self.bound2.unwrap_or(true)
    }

    /// `pass/pass/n.a.` style triple.
    pub fn triple(&self) -> String {
        let s = |b: bool| if b { "pass" } else { "fail" };
        let third = self.bound2.map_or("n.a.", s);
        format!("{}/{}/{third}", s(self.bound1), s(self.bound0))
    }
}

pub fn check_bounds(p: &EaqeccParams) -> BoundsReport {
    let (n, k, d, c) = (p.n as i64, p.k as i64, p.d as i64, p.c as i64);
    let slack = (n - 2 * d + 2).max(0);
    let bound1 = k <= c + slack;
    let bound0 = k <= n - d + 1;
    // k ≤ (n−d+1)(c+2d−2−n) / (3d−3−n), cleared of the positive denominator
    let bound2 = (2 * d >= n + 2).then(|| k * (3 * d - 3 - n) <= (n - d + 1) * (c + 2 * d - 2 - n));
    let mds_eaqecc = p.classical_mds && 2 * d <= n + 2 && k == c + slack;
    BoundsReport {
        bound1,
        bound0,
        bound2,
        mds_eaqecc,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QTheorem {
    /// Hermitian TGRS codes on the three families.
    Q0,
    /// Length `n+2` flexible-hull codes.
    Q1,
    /// Length `n` and `n+1` flexible-hull codes on the roots family.
    Q2,
    /// Length `n` and `n+1` flexible-hull codes on coset families.
    Q3,
}

impl std::str::FromStr for QTheorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<QTheorem> {
        match s.to_ascii_uppercase().as_str() {
            "Q0" => Ok(QTheorem::Q0),
            "Q1" => Ok(QTheorem::Q1),
            "Q2" => Ok(QTheorem::Q2),
            "Q3" => Ok(QTheorem::Q3),
            _ => Err(Error::Precondition(format!("unknown theorem {s:?}"))),
        }
    }
}

impl std::fmt::Display for QTheorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One sweep row: a derived record plus the classical data behind it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRow {
    pub params: EaqeccParams,
    pub bounds: BoundsReport,
    /// Base length before extension (the family's `n`).
    pub family_n: usize,
    pub classical_n: usize,
    pub classical_k: usize,
    pub hull: usize,
    /// First record (`[[n, k−ℓ, d; n−k−ℓ]]`) or the dual one.
    pub dual_record: bool,
    /// Distance stated by the theorem for the first record, if any.
    pub stated_d: Option<usize>,
    /// Largest hull the theorem states for this classical code.
    pub stated_max_hull: usize,
}

impl SweepRow {
    pub fn d_mismatch(&self) -> bool {
        self.stated_d.is_some_and(|d| d != self.params.d)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOptions {
    /// Column-subset cap per distance computation.
    pub budget: u64,
    /// Skip families longer than this.
    pub max_n: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            budget: 2_000_000,
            max_n: 30,
        }
    }
}

fn rows_for(code: &LinearCode, q: u32, dist: DistanceInfo, dual: DistanceInfo, thm: QTheorem, id: &str, meta: RowMeta) -> Result<Vec<SweepRow>> {
    let (a, b) = derive(code, q, dist, Some(dual), &thm.to_string(), id)?;
    let hull = code.hull_dim(Form::Hermitian)?;
    let mut out = Vec::new();
    for (p, is_dual) in std::iter::once((a, false)).chain(b.map(|b| (b, true))) {
        out.push(SweepRow {
            bounds: check_bounds(&p),
            params: p,
            family_n: meta.family_n,
            classical_n: code.n(),
            classical_k: code.k(),
            hull,
            dual_record: is_dual,
            stated_d: if is_dual { None } else { meta.stated_d },
            stated_max_hull: meta.stated_max_hull,
        });
    }
    Ok(out)
}

#[derive(Copy, Clone)]
struct RowMeta {
    family_n: usize,
    stated_d: Option<usize>,
    stated_max_hull: usize,
}

/// Hermitian families over GF(q²) admissible for a theorem, up to `max_n`.
pub fn admissible_families(thm: QTheorem, q: u32, max_n: usize) -> Result<Vec<EvalFamily>> {
    let f = make_quadratic_extension(q)?;
    let qu = q as usize;
    let order = qu * qu;
    let mut params = Vec::new();
    if thm != QTheorem::Q3 {
        params.extend((3..=max_n.min(order)).filter(|&n| (order - 1).is_multiple_of(n - 1)).map(|n| FamilyParams::Roots { n }));
    }
    if thm == QTheorem::Q0 {
        params.extend((1..qu).filter(|t| t * qu <= max_n).map(|t| FamilyParams::Affine { t }));
    }
    if matches!(thm, QTheorem::Q0 | QTheorem::Q3) {
        for big_n in (1..order).filter(|d| (order - 1).is_multiple_of(*d)) {
            for t in 1..qu {
                let p = FamilyParams::Coset { big_n, t };
                if p.length(qu) <= max_n {
                    params.push(p);
                }
            }
        }
    }
    let mut fams: Vec<EvalFamily> = params
        .into_iter()
        .filter_map(|p| build_eval_family(&f, p, Form::Hermitian).ok())
        .filter(|fam| thm == QTheorem::Q0 || family_limits(fam).is_ok())
        .collect();
    // the coset union can coincide with a roots family; keep one per point set
    fams.dedup_by(|a, b| a.points.alpha() == b.points.alpha());
    Ok(fams)
}

/// Sweep output: records plus the `(family, k')` pairs left out.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// Pairs whose GRS Gram matrix is not diagonal, so the extension
    /// pipeline does not apply.
    pub skipped: Vec<String>,
}

/// Full table for one theorem and one `q`.
pub fn sweep_family(thm: QTheorem, q: u32, opts: SweepOptions) -> Result<SweepTable> {
    let fams = admissible_families(thm, q, opts.max_n)?;
    let mut skipped = Vec::new();
    let jobs: Vec<Vec<SweepRow>> = match thm {
        QTheorem::Q0 => fams
            .par_iter()
            .flat_map_iter(|fam| (1..=fam.n() / (q as usize + 1)).map(move |k| (fam, k)))
            .map(|(fam, k)| sweep_q0(fam, q, k, opts))
            .collect::<Result<_>>()?,
        _ => {
            let lengths: &[FlexLength] = match thm {
                QTheorem::Q1 => &[FlexLength::NPlus2],
                _ => &[FlexLength::N, FlexLength::NPlus1],
            };
            let mut jobs = Vec::new();
            for fam in &fams {
                let lim = family_limits(fam)?;
                for k in 1..=lim.big_k {
                    if let Err(Error::Invariant(why)) = delta_profile(fam, k) {
                        skipped.push(format!("q={q} {} k'={k}: {why}", family_tag(&fam.params)));
                        continue;
                    }
                    for &len in lengths {
                        if len != FlexLength::NPlus2 || k >= 2 {
                            jobs.push((fam, len, k));
                        }
                    }
                }
            }
            jobs.par_iter().map(|&(fam, len, k)| sweep_flex(fam, thm, q, len, k, opts)).collect::<Result<_>>()?
        }
    };
    Ok(SweepTable {
        rows: jobs.into_iter().flatten().collect(),
        skipped,
    })
}

fn family_tag(p: &FamilyParams) -> String {
    match *p {
        FamilyParams::Roots { n } => format!("roots(n={n})"),
        FamilyParams::Affine { t } => format!("affine(t={t})"),
        FamilyParams::Coset { big_n, t } => format!("coset(N={big_n},t={t})"),
    }
}

fn sweep_q0(fam: &EvalFamily, q: u32, k: usize, opts: SweepOptions) -> Result<Vec<SweepRow>> {
    let recipe = HullRecipe::HermitianTgrs { q, family: fam.params };
    let mut out = Vec::new();
    let mut dists = None;
    for r in 0..k {
        let c = build_hull_tgrs(&recipe, k, r, HullOptions::default())?;
        if dists.is_none() {
            // scaling coordinates keeps weights, so measure once per k
            let tw = TwistParams::new(k, c.eta)?;
            let class = classify_tgrs(&c.points, &tw)?;
            let d = DistanceInfo::measure(&c.code, opts.budget, Some(class))?;
            let dd = d.of_dual(&c.code, opts.budget)?;
            dists = Some((d, dd));
        }
        let (d, dd) = dists.unwrap();
        let id = format!("hermitian-tgrs:{}:k={k}:r={r}", family_tag(&fam.params));
        let meta = RowMeta {
            family_n: fam.n(),
            stated_d: None,
            stated_max_hull: k,
        };
        out.extend(rows_for(&c.code, q, d, dd, QTheorem::Q0, &id, meta)?);
    }
    Ok(out)
}

fn sweep_flex(fam: &EvalFamily, thm: QTheorem, q: u32, len: FlexLength, k: usize, opts: SweepOptions) -> Result<Vec<SweepRow>> {
    let base = flex_base(fam, k, len)?;
    let unit = fam.field().scaling_unit(Form::Hermitian, false)?;
    let n = fam.n();
    let implied = if len == FlexLength::NPlus2 { DistanceClass::Amds } else { DistanceClass::Mds };
    let d = DistanceInfo::measure(&base.code, opts.budget, Some(implied))?;
    let dd = d.of_dual(&base.code, opts.budget)?;
    let stated_d = Some(match len {
        FlexLength::N => n - k + 1,
        FlexLength::NPlus1 | FlexLength::NPlus2 => n + 2 - k,
    });
    let mut out = Vec::new();
    for j in 0..=base.hull {
        let c = scale_to_hull(&base, j, unit)?;
        let id = format!("flex:{}:len=n+{}:k={k}:j={j}", family_tag(&fam.params), len.extra());
        let meta = RowMeta {
            family_n: n,
            stated_d,
            stated_max_hull: base.stated_hull,
        };
        out.extend(rows_for(&c.code, q, d, dd, thm, &id, meta)?);
    }
    Ok(out)
}
