//! Linear codes: duals, hulls, distance classification, puncturing, scaling.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::matrix::{Mat, MatRecord};
use crate::Form;

/// Default cap on column subsets examined by [`LinearCode::distance_class`].
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

/// Default cap on messages enumerated by [`LinearCode::min_weight_bruteforce`].
pub const DEFAULT_WEIGHT_BUDGET: u64 = 1_000_000;

/// A linear code given by a full-row-rank generator matrix.
///
/// `k = 0` is allowed so that the dual of the full space is representable.
#[derive(Clone, Debug)]
pub struct LinearCode {
    gen: Mat,
    hull_e: OnceLock<usize>,
    hull_h: OnceLock<usize>,
}

/// Both hull measurements.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    /// `k - rank(G G^T)` or `k - rank(G G†)`.
    pub gram: usize,
    /// `dim(C ∩ C^⊥)` from a row-space intersection.
    pub intersection: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceClass {
    /// `d = n - k + 1`
    Mds,
    /// `d = n - k`
    Amds,
    /// `d < n - k`
    Other,
    /// Enumeration budget exhausted before a verdict.
    Unknown,
}

impl std::fmt::Display for DistanceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DistanceClass::Mds => "MDS",
            DistanceClass::Amds => "AMDS",
            DistanceClass::Other => "other",
            DistanceClass::Unknown => "unknown",
        })
    }
}

/// Outcome of a distance classification with certified bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub class: DistanceClass,
    pub d_lower: usize,
    pub d_upper: usize,
    /// Column subset whose rank deficiency refutes the next stronger class.
    /// Indices refer to the dual code when `witness_in_dual` is set.
    pub witness: Option<Vec<usize>>,
    pub witness_in_dual: bool,
}

impl DistanceReport {
    /// The exact distance when the bounds meet.
    pub fn exact(&self) -> Option<usize> {
        (self.d_lower == self.d_upper).then_some(self.d_lower)
    }
}

/// JSON shape of a field: `{p, m, modulus, theta}` with `theta` given by
/// its polynomial-basis representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub theta: u32,
}

impl FieldRecord {
    pub fn of(f: &Field) -> FieldRecord {
        FieldRecord {
            p: f.characteristic(),
            m: f.degree(),
            modulus: f.modulus().to_vec(),
            theta: f.theta_repr(),
        }
    }

    pub fn build(&self) -> Result<Arc<Field>> {
        Field::with_modulus(self.p, self.m, self.modulus.clone(), self.theta)
    }
}

/// JSON shape of a code: `{field, gen}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub field: FieldRecord,
    pub gen: MatRecord,
}

/// Number of `k`-subsets of an `n`-set, saturating.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

impl LinearCode {
    /// Wraps a generator; its rows must be linearly independent.
    pub fn new(gen: Mat) -> Result<LinearCode> {
        let rank = gen.rank();
        if rank != gen.rows() {
            return Err(Error::RankDeficient {
                rank,
                expected: gen.rows(),
            });
        }
        Ok(LinearCode::trusted(gen))
    }

    /// The code spanned by the rows of `m`, which may be dependent.
    pub fn spanned_by(m: &Mat) -> LinearCode {
        LinearCode::trusted(m.row_basis())
    }

    fn trusted(gen: Mat) -> LinearCode {
        LinearCode {
            gen,
            hull_e: OnceLock::new(),
            hull_h: OnceLock::new(),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        self.gen.field()
    }

    pub fn gen(&self) -> &Mat {
        &self.gen
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    /// Same row space.
    pub fn same_code(&self, other: &LinearCode) -> Result<bool> {
        self.gen.same_row_space(&other.gen)
    }

    pub fn dual(&self, form: Form) -> Result<LinearCode> {
        let base = match form {
            Form::Euclidean => self.gen.clone(),
            Form::Hermitian => self.gen.conj()?,
        };
        Ok(LinearCode::trusted(base.null_space()))
    }

    /// Hull dimension measured both ways.
    pub fn hull_report(&self, form: Form) -> Result<HullReport> {
        let gram = self.k() - self.gen.gram_rank(form)?;
        let dual = self.dual(form)?;
        let intersection = self.gen.row_space_intersection(&dual.gen)?.rows();
        Ok(HullReport { gram, intersection })
    }

    /// `dim(C ∩ C^⊥)`; fails if the two methods disagree.
    pub fn hull_dim(&self, form: Form) -> Result<usize> {
        let cell = match form {
            Form::Euclidean => &self.hull_e,
            Form::Hermitian => &self.hull_h,
        };
        if let Some(&h) = cell.get() {
            return Ok(h);
        }
        let r = self.hull_report(form)?;
        if r.gram != r.intersection {
            return Err(Error::HullDisagreement {
                gram: r.gram,
                intersection: r.intersection,
            });
        }
        Ok(*cell.get_or_init(|| r.gram))
    }

    /// Drops the listed coordinates.
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode> {
        if let Some(&bad) = positions.iter().find(|&&p| p >= self.n()) {
            return Err(Error::Dimension(format!("position {bad} out of range")));
        }
        let keep: Vec<usize> = (0..self.n()).filter(|j| !positions.contains(j)).collect();
        LinearCode::new(self.gen.select_columns(&keep))
    }

    /// `v · C`: multiplies coordinate `i` by `v_i`.
    pub fn scale(&self, v: &[Felt]) -> Result<LinearCode> {
        if v.iter().any(|x| x.is_zero()) {
            return Err(Error::Precondition("zero coordinate multiplier".into()));
        }
        Ok(LinearCode::trusted(self.gen.scale_columns(v)?))
    }

    /// Keeps the first `rows` generator rows.
    pub fn subcode(&self, rows: usize) -> Result<LinearCode> {
        if rows > self.k() {
            return Err(Error::Dimension(format!("{rows} rows of a {}-row generator", self.k())));
        }
        Ok(LinearCode::trusted(self.gen.select_rows(&(0..rows).collect::<Vec<_>>())))
    }

    /// MDS / AMDS / other by column-subset rank tests.
    ///
    /// MDS holds iff every set of at most `k` columns is independent, AMDS
    /// iff no set of at most `k + 1` columns loses two ranks. The MDS test
    /// runs on the Euclidean dual when that has smaller dimension.
    pub fn distance_class(&self, budget: u64) -> Result<DistanceReport> {
        let (n, k) = (self.n(), self.k());
        if k == 0 {
            return Err(Error::Precondition("distance of the zero code".into()));
        }
        let mds_upper = n - k + 1;
        let unknown = |upper: usize| DistanceReport {
            class: DistanceClass::Unknown,
            d_lower: 1,
            d_upper: upper,
            witness: None,
            witness_in_dual: false,
        };

        let use_dual = n - k < k && n > k;
        let mds_witness = if use_dual {
            let dual = self.dual(Form::Euclidean)?;
            if binomial(n, n - k) > budget {
                return Ok(unknown(mds_upper));
            }
            find_deficient(&dual.gen, n - k, 1)
        } else {
            if binomial(n, k) > budget {
                return Ok(unknown(mds_upper));
            }
            find_deficient(&self.gen, k, 1)
        };
        let Some(mds_witness) = mds_witness else {
            return Ok(DistanceReport {
                class: DistanceClass::Mds,
                d_lower: mds_upper,
                d_upper: mds_upper,
                witness: None,
                witness_in_dual: false,
            });
        };
        if k == n || binomial(n, k + 1) > budget {
            let mut r = unknown(n - k);
            r.witness = Some(mds_witness);
            r.witness_in_dual = use_dual;
            return Ok(r);
        }
        match find_deficient(&self.gen, k + 1, 2) {
            None => Ok(DistanceReport {
                class: DistanceClass::Amds,
                d_lower: n - k,
                d_upper: n - k,
                witness: Some(mds_witness),
                witness_in_dual: use_dual,
            }),
            Some(w) => Ok(DistanceReport {
                class: DistanceClass::Other,
                d_lower: 1,
                d_upper: n - k - 1,
                witness: Some(w),
                witness_in_dual: false,
            }),
        }
    }

    /// Exact minimum weight by enumerating one message per projective point.
    pub fn min_weight_bruteforce(&self, budget: u64) -> Result<usize> {
        let k = self.k();
        if k == 0 {
            return Err(Error::Precondition("distance of the zero code".into()));
        }
        let q = self.field().order() as u128;
        let count = (q.pow(k as u32) - 1) / (q - 1);
        if count > budget as u128 {
            return Err(Error::Budget(format!(
                "{count} messages exceed the cap of {budget}"
            )));
        }
        let f = self.field().as_ref();
        let rows: Vec<&[Felt]> = (0..k).map(|i| self.gen.row(i)).collect();
        let elements: Vec<Felt> = f.elements().collect();
        let best = (0..k)
            .into_par_iter()
            .flat_map(|lead| {
                let tail = lead + 1;
                let firsts: Vec<Option<Felt>> = if tail < k {
                    elements.iter().map(|&c| Some(c)).collect()
                } else {
                    vec![None]
                };
                firsts.into_par_iter().map(move |c| (lead, c))
            })
            .map(|(lead, c)| {
                let mut acc = rows[lead].to_vec();
                let mut next = lead + 1;
                if let Some(c) = c {
                    axpy(f, &mut acc, c, rows[next]);
                    next += 1;
                }
                min_weight_rec(f, &rows, &elements, &acc, next)
            })
            .min()
            .expect("at least one message");
        Ok(best)
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord {
            field: FieldRecord::of(self.field()),
            gen: self.gen.to_record(),
        }
    }

    pub fn from_record(rec: &CodeRecord) -> Result<LinearCode> {
        let f = rec.field.build()?;
        LinearCode::new(Mat::from_record(&f, &rec.gen)?)
    }
}

pub fn weight(x: &[Felt]) -> usize {
    x.iter().filter(|v| !v.is_zero()).count()
}

fn axpy(f: &Field, acc: &mut [Felt], c: Felt, row: &[Felt]) {
    if c.is_zero() {
        return;
    }
    for (a, &r) in acc.iter_mut().zip(row) {
        *a = f.add(*a, f.mul(c, r));
    }
}

fn min_weight_rec(f: &Field, rows: &[&[Felt]], elements: &[Felt], acc: &[Felt], i: usize) -> usize {
    if i == rows.len() {
        return weight(acc);
    }
    let mut best = usize::MAX;
    let mut buf = acc.to_vec();
    for &c in elements {
        buf.copy_from_slice(acc);
        axpy(f, &mut buf, c, rows[i]);
        best = best.min(min_weight_rec(f, rows, elements, &buf, i + 1));
    }
    best
}

/// Incremental echelon basis over the column vectors of a generator.
#[derive(Clone)]
struct Echelon {
    /// (pivot coordinate, vector with 1 at the pivot)
    basis: Vec<(usize, Vec<Felt>)>,
}

impl Echelon {
    /// Reduces `v`; returns the independent remainder, or `None`.
    fn reduce(&self, f: &Field, mut v: Vec<Felt>) -> Option<(usize, Vec<Felt>)> {
        for (p, b) in &self.basis {
            let c = v[*p];
            if !c.is_zero() {
                let nc = f.neg(c);
                for (x, &y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = f.add(*x, f.mul(nc, y));
                    }
                }
            }
        }
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = f.inv(v[p]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        Some((p, v))
    }
}

/// First (lexicographic) set of at most `depth` columns whose deficiency
/// `|S| - rank` reaches `limit`.
fn find_deficient(gen: &Mat, depth: usize, limit: usize) -> Option<Vec<usize>> {
    let f = gen.field().as_ref();
    let n = gen.cols();
    let cols: Vec<Vec<Felt>> = (0..n).map(|j| gen.column(j)).collect();
    if depth > n {
        return None;
    }
    (0..=n - depth).into_par_iter().find_map_first(|start| {
        let mut path = Vec::with_capacity(depth);
        let ech = Echelon { basis: Vec::new() };
        visit(f, &cols, &ech, start, 0, depth, limit, &mut path)
    })
}

#[allow(clippy::too_many_arguments)]
fn visit(
    f: &Field,
    cols: &[Vec<Felt>],
    ech: &Echelon,
    j: usize,
    deficiency: usize,
    depth: usize,
    limit: usize,
    path: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    path.push(j);
    let mut next = ech.clone();
    let mut def = deficiency;
    match ech.reduce(f, cols[j].clone()) {
        Some(b) => next.basis.push(b),
        None => def += 1,
    }
    if def >= limit {
        return Some(path.clone());
    }
    if path.len() < depth {
        // leave enough columns to finish the subset
        let last = cols.len() - (depth - path.len());
        for j2 in j + 1..=last {
            if let Some(w) = visit(f, cols, &next, j2, def, depth, limit, path) {
                return Some(w);
            }
        }
    }
    path.pop();
    None
}
