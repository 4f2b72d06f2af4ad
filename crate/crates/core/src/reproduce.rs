//! Worked examples rebuilt and compared against isomorphism-invariant
//! golden tuples (parameters, ranks, hull dimensions).

use serde::{Deserialize, Serialize};

use crate::code::{DistanceClass, LinearCode, DEFAULT_SUBSET_BUDGET};
use crate::constructions::families::{build_eval_family, FamilyParams};
use crate::constructions::hull_tgrs::{build_hull_tgrs, HullOptions, HullRecipe};
use crate::constructions::roth_lempel::{delta_profile, rl_extend, rl_flexible, FlexLength, LambdaPolicy};
use crate::error::{Error, Result};
use crate::field::make_quadratic_extension;
use crate::grs::grs_generator;
use crate::Form;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExampleId {
    Q13,
    Q7,
    Q5,
}

impl ExampleId {
    pub const ALL: [ExampleId; 3] = [ExampleId::Q13, ExampleId::Q7, ExampleId::Q5];
}

impl std::str::FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExampleId> {
        match s.to_ascii_lowercase().as_str() {
            "q13" => Ok(ExampleId::Q13),
            "q7" => Ok(ExampleId::Q7),
            "q5" => Ok(ExampleId::Q5),
            _ => Err(Error::Precondition(format!("unknown example {s:?} (q13, q7, q5)"))),
        }
    }
}

impl std::fmt::Display for ExampleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExampleId::Q13 => "q13",
            ExampleId::Q7 => "q7",
            ExampleId::Q5 => "q5",
        })
    }
}

/// One golden comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub measured: String,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.expected == self.measured
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExampleReport {
    pub id: ExampleId,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

fn params(code: &LinearCode, form: Form) -> Result<String> {
    let rep = code.distance_class(DEFAULT_SUBSET_BUDGET)?;
    let d = rep
        .exact()
        .map_or_else(|| format!("{}..{}", rep.d_lower, rep.d_upper), |d| d.to_string());
    Ok(format!("[{},{},{}] {} hull {}", code.n(), code.k(), d, rep.class, code.hull_dim(form)?))
}

fn check(label: impl Into<String>, expected: &str, measured: String) -> Check {
    Check {
        label: label.into(),
        expected: expected.to_string(),
        measured,
    }
}

pub fn reproduce(id: ExampleId) -> Result<ExampleReport> {
    match id {
        ExampleId::Q13 => q13(),
        ExampleId::Q7 => q7(),
        ExampleId::Q5 => q5(),
    }
}

fn q13() -> Result<ExampleReport> {
    let recipe = HullRecipe::QOdd { q: 13, n: 11 };
    let mut checks = Vec::new();
    for (k, want) in [(5, "[11,5,6] AMDS hull 3"), (4, "[11,4,7] AMDS hull 3")] {
        let c = build_hull_tgrs(&recipe, k, 1, HullOptions::default())?;
        checks.push(check(format!("q-odd k={k} r=1"), want, params(&c.code, Form::Euclidean)?));
        let f = c.field();
        let eta = f.div(f.neg(f.from_int(2)), c.points.s())?;
        checks.push(check(format!("k={k} η = −2/s"), "true", (c.eta == eta).to_string()));
        checks.push(check(
            format!("k={k} subset-sum class"),
            "AMDS",
            c.predicted_class.to_string(),
        ));
    }
    Ok(ExampleReport {
        id: ExampleId::Q13,
        checks,
        notes: Vec::new(),
    })
}

fn q7() -> Result<ExampleReport> {
    use LambdaPolicy::{Boundary, Free};
    let f = make_quadratic_extension(7)?;
    let fam = build_eval_family(&f, FamilyParams::Roots { n: 17 }, Form::Hermitian)?;
    let mut checks = Vec::new();

    let base = LinearCode::new(grs_generator(&f, fam.points.alpha(), &fam.multipliers, 2)?)?;
    let zero = base.gen().gram(Form::Hermitian)?.is_zero();
    checks.push(check("[17,2] Gram matrix is zero", "true", zero.to_string()));
    checks.push(check("[17,2] base", "[17,2,16] MDS hull 2", params(&base, Form::Hermitian)?));

    let rows: [(usize, LambdaPolicy, LambdaPolicy, &str); 7] = [
        (6, Boundary, Free, "[19,6,13] AMDS hull 4"),
        (6, Free, Free, "[19,6,13] AMDS hull 3"),
        (5, Free, Boundary, "[19,5,14] AMDS hull 3"),
        (5, Free, Free, "[19,5,14] AMDS hull 2"),
        (4, Boundary, Free, "[19,4,15] AMDS hull 3"),
        (4, Free, Free, "[19,4,15] AMDS hull 2"),
        (3, Free, Boundary, "[19,3,16] AMDS hull 2"),
    ];
    for (k, l1, l2, want) in rows {
        let ext = rl_extend(&fam, k, l1, l2)?;
        checks.push(check(format!("K={k} λ1 {l1:?} λ2 {l2:?}"), want, params(&ext.code, Form::Hermitian)?));
    }

    let c6 = rl_extend(&fam, 6, Free, Free)?.code.puncture(&[17, 18])?;
    for (k, want) in [
        (6, "[17,6,12] MDS hull 4"),
        (5, "[17,5,13] MDS hull 3"),
        (4, "[17,4,14] MDS hull 3"),
        (3, "[17,3,15] MDS hull 2"),
    ] {
        checks.push(check(format!("punctured, first {k} rows"), want, params(&c6.subcode(k)?, Form::Hermitian)?));
    }
    Ok(ExampleReport {
        id: ExampleId::Q7,
        checks,
        notes: Vec::new(),
    })
}

fn q5() -> Result<ExampleReport> {
    let f = make_quadratic_extension(5)?;
    let fam = build_eval_family(&f, FamilyParams::Coset { big_n: 6, t: 2 }, Form::Hermitian)?;
    let g = grs_generator(&f, fam.points.alpha(), &fam.multipliers, 8)?;
    let code = LinearCode::new(g.clone())?;
    let mut checks = vec![check("[19,8] coset code", "[19,8,12] MDS hull 5", params(&code, Form::Hermitian)?)];

    // delta_profile fails unless the Gram matrix is diagonal
    let profile = delta_profile(&fam, 8)?;
    let rows: Vec<String> = profile.support.iter().map(|j| (j + 1).to_string()).collect();
    checks.push(check("nonzero Gram diagonal rows (1-based)", "4,5,8", rows.join(",")));
    checks.push(check("rank(G G†)", "3", g.gram_rank(Form::Hermitian)?.to_string()));

    for k in 3..=8 {
        let top = k - profile.count(k);
        let want: Vec<String> = (0..=top).map(|j| j.to_string()).collect();
        let got = (0..=top)
            .map(|j| {
                let c = rl_flexible(&fam, k, j, FlexLength::N, false)?;
                let class = c.code.distance_class(DEFAULT_SUBSET_BUDGET)?.class;
                let h = c.code.hull_dim(Form::Hermitian)?;
                Ok(if class == DistanceClass::Mds { h.to_string() } else { format!("{h} ({class})") })
            })
            .collect::<Result<Vec<_>>>()?;
        checks.push(check(format!("k'={k} flexible hulls"), &want.join(","), got.join(",")));
    }
    Ok(ExampleReport {
        id: ExampleId::Q5,
        checks,
        notes: vec![
            "the Gram rank 3 gives hull 8 − 3 = 5; the worked example's prose states 3".into(),
        ],
    })
}
