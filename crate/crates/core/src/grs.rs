//! GRS and twisted GRS codes with twist 1 and hook `k - 1`.
//!
//! A TGRS code evaluates the space spanned by `1, x, …, x^{k-2}` and
//! `x^{k-1} + η x^k` at distinct points, with per-coordinate multipliers.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::DistanceClass;
use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::matrix::Mat;

/// Distinct evaluation points with their sum and dual multipliers.
#[derive(Clone, Debug)]
pub struct EvalVector {
    field: Arc<Field>,
    alpha: Vec<Felt>,
    s: Felt,
    u: Vec<Felt>,
}

impl EvalVector {
    pub fn new(field: &Arc<Field>, alpha: Vec<Felt>) -> Result<EvalVector> {
        let u = u_vector(field, &alpha)?;
        let s = field.sum(alpha.iter().copied());
        Ok(EvalVector {
            field: field.clone(),
            alpha,
            s,
            u,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn alpha(&self) -> &[Felt] {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// `s(α) = Σ α_i`
    pub fn s(&self) -> Felt {
        self.s
    }

    /// `u_i = Π_{j≠i} (α_i − α_j)^{-1}`
    pub fn u(&self) -> &[Felt] {
        &self.u
    }
}

/// `u_i = Π_{j≠i} (α_i − α_j)^{-1}` by direct products.
pub fn u_vector(f: &Field, alpha: &[Felt]) -> Result<Vec<Felt>> {
    alpha
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let prod = f.product(
                alpha
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &aj)| f.sub(ai, aj)),
            );
            f.inv(prod).map_err(|_| Error::RepeatedPoints)
        })
        .collect()
}

/// `1 / P'_U(α_i)` with `P_U = Π (x − α_j)` expanded and differentiated.
pub fn u_from_derivative(f: &Field, alpha: &[Felt]) -> Result<Vec<Felt>> {
    // coefficients low degree first
    let mut p = vec![Felt::ONE];
    for &a in alpha {
        let mut next = vec![Felt::ZERO; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(a, c));
        }
        p = next;
    }
    let deriv: Vec<Felt> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
        .collect();
    alpha
        .iter()
        .map(|&a| {
            let val = deriv.iter().rev().fold(Felt::ZERO, |acc, &c| f.add(f.mul(acc, a), c));
            f.inv(val).map_err(|_| Error::RepeatedPoints)
        })
        .collect()
}

/// Dimension and twist coefficient; the twist is 1 and the hook `k − 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistParams {
    pub k: usize,
    pub eta: Felt,
}

impl TwistParams {
    pub fn new(k: usize, eta: Felt) -> Result<TwistParams> {
        if eta.is_zero() {
            return Err(Error::Precondition("η = 0 gives a plain GRS code".into()));
        }
        if k == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        Ok(TwistParams { k, eta })
    }
}

fn check_lengths(alpha: &[Felt], v: &[Felt], k: usize) -> Result<()> {
    if alpha.len() != v.len() {
        return Err(Error::Dimension(format!(
            "{} points but {} multipliers",
            alpha.len(),
            v.len()
        )));
    }
    if k > alpha.len() {
        return Err(Error::Dimension(format!("k = {k} exceeds n = {}", alpha.len())));
    }
    if v.iter().any(|x| x.is_zero()) {
        return Err(Error::Precondition("zero multiplier".into()));
    }
    Ok(())
}

/// Rows `v_i α_i^j` for `j < k`, with the last row twisted by `eta`
/// (no twist when `eta` is zero).
fn twisted_rows(f: &Arc<Field>, alpha: &[Felt], v: &[Felt], k: usize, eta: Felt) -> Mat {
    let n = alpha.len();
    let mut m = Mat::zeros(f, k, n);
    for (i, (&a, &vi)) in alpha.iter().zip(v).enumerate() {
        let mut pw = vi;
        for j in 0..k {
            m.set(j, i, pw);
            pw = f.mul(pw, a);
        }
        if k > 0 && !eta.is_zero() {
            // pw is now v_i α_i^k
            let last = f.add(m.get(k - 1, i), f.mul(eta, pw));
            m.set(k - 1, i, last);
        }
    }
    m
}

/// Generator of `GRS_k(α, v)`: rows `v_i α_i^j`, `j = 0..k−1`.
pub fn grs_generator(f: &Arc<Field>, alpha: &[Felt], v: &[Felt], k: usize) -> Result<Mat> {
    check_lengths(alpha, v, k)?;
    Ok(twisted_rows(f, alpha, v, k, Felt::ZERO))
}

/// Generator of `TGRS_k(α, v; 1, k−1, η)`.
pub fn tgrs_generator(ev: &EvalVector, v: &[Felt], tw: &TwistParams) -> Result<Mat> {
    check_lengths(ev.alpha(), v, tw.k)?;
    Ok(twisted_rows(ev.field(), ev.alpha(), v, tw.k, tw.eta))
}

/// Which parity-check shape applies.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParityCase {
    /// `s(α) ≠ 0`, `η ≠ −s(α)^{-1}`; dual twist `−η / (1 + s(α)η)`.
    NonzeroSum { eta_dual: Felt },
    /// `s(α) = 0`; dual twist `−η`.
    ZeroSum { eta_dual: Felt },
    /// `η = −s(α)^{-1}`; the dual is a GRS-like code with top row `α^{n−k}`.
    Degenerate,
}

pub fn parity_case(f: &Field, s: Felt, eta: Felt) -> Result<ParityCase> {
    if eta.is_zero() {
        return Err(Error::Precondition("η = 0 gives a plain GRS code".into()));
    }
    if s.is_zero() {
        return Ok(ParityCase::ZeroSum { eta_dual: f.neg(eta) });
    }
    let denom = f.add(Felt::ONE, f.mul(s, eta));
    if denom.is_zero() {
        return Ok(ParityCase::Degenerate);
    }
    Ok(ParityCase::NonzeroSum {
        eta_dual: f.div(f.neg(eta), denom)?,
    })
}

/// The `(n−k) × n` parity-check matrix for the applicable case.
pub fn tgrs_parity(ev: &EvalVector, v: &[Felt], tw: &TwistParams) -> Result<(Mat, ParityCase)> {
    check_lengths(ev.alpha(), v, tw.k)?;
    let f = ev.field();
    let case = parity_case(f, ev.s(), tw.eta)?;
    let w = dual_multipliers(f, ev, v)?;
    let r = ev.n() - tw.k;
    let h = match case {
        ParityCase::NonzeroSum { eta_dual } | ParityCase::ZeroSum { eta_dual } => {
            twisted_rows(f, ev.alpha(), &w, r, eta_dual)
        }
        ParityCase::Degenerate => {
            let mut h = twisted_rows(f, ev.alpha(), &w, r, Felt::ZERO);
            if r > 0 {
                for (i, (&a, &wi)) in ev.alpha().iter().zip(&w).enumerate() {
                    h.set(r - 1, i, f.mul(wi, f.pow_u(a, r as u64)));
                }
            }
            h
        }
    };
    Ok((h, case))
}

/// `u_i / v_i`
pub fn dual_multipliers(f: &Field, ev: &EvalVector, v: &[Felt]) -> Result<Vec<Felt>> {
    ev.u().iter().zip(v).map(|(&u, &vi)| f.div(u, vi)).collect()
}

/// The Euclidean dual of a TGRS code, identified.
#[derive(Clone, Debug)]
pub enum DualIdentity {
    /// `TGRS_{n−k}(α, u/v; 1, n−k−1, η')`
    Tgrs { v: Vec<Felt>, tw: TwistParams },
    /// The dual is the zero code (`k = n`).
    Zero,
    /// Degenerate case: the explicit parity matrix stands in for the dual.
    Parity(Mat),
}

pub fn tgrs_dual_identify(ev: &EvalVector, v: &[Felt], tw: &TwistParams) -> Result<DualIdentity> {
    let (h, case) = tgrs_parity(ev, v, tw)?;
    let r = ev.n() - tw.k;
    if r == 0 {
        return Ok(DualIdentity::Zero);
    }
    match case {
        ParityCase::NonzeroSum { eta_dual } | ParityCase::ZeroSum { eta_dual } => {
            Ok(DualIdentity::Tgrs {
                v: dual_multipliers(ev.field(), ev, v)?,
                tw: TwistParams::new(r, eta_dual)?,
            })
        }
        ParityCase::Degenerate => Ok(DualIdentity::Parity(h)),
    }
}

/// All sums of `k`-element subsets of `points`, by a DP over layers indexed
/// by field representation.
pub fn subset_sums(f: &Field, points: &[Felt], k: usize) -> Result<BTreeSet<Felt>> {
    if k > points.len() {
        return Err(Error::Dimension(format!(
            "k = {k} exceeds {} points",
            points.len()
        )));
    }
    let q = f.order() as usize;
    let mut layers = vec![vec![false; q]; k + 1];
    layers[0][0] = true;
    for (i, &x) in points.iter().enumerate() {
        for j in (1..=k.min(i + 1)).rev() {
            let (lo, hi) = layers.split_at_mut(j);
            let prev = &lo[j - 1];
            let cur = &mut hi[0];
            for r in 0..q {
                if prev[r] {
                    let y = f.add(f.from_repr(r as u32)?, x);
                    cur[f.to_repr(y) as usize] = true;
                }
            }
        }
    }
    layers[k]
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(r, _)| f.from_repr(r as u32))
        .collect()
}

/// MDS iff `−η^{-1} ∉ S_k`, otherwise AMDS.
pub fn classify_tgrs(ev: &EvalVector, tw: &TwistParams) -> Result<DistanceClass> {
    let f = ev.field();
    let target = f.neg(f.inv(tw.eta)?);
    let sums = subset_sums(f, ev.alpha(), tw.k)?;
    Ok(if sums.contains(&target) {
        DistanceClass::Amds
    } else {
        DistanceClass::Mds
    })
}

/// Restriction on η when picking it.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EtaConstraint {
    None,
    /// `η^q = −η` in GF(q²)
    AntiHermitian,
}

/// Smallest-exponent η giving the requested class.
pub fn pick_eta(
    f: &Field,
    points: &[Felt],
    k: usize,
    want: DistanceClass,
    constraint: EtaConstraint,
) -> Result<Felt> {
    if !matches!(want, DistanceClass::Mds | DistanceClass::Amds) {
        return Err(Error::Precondition("only MDS or AMDS can be requested".into()));
    }
    let q = match constraint {
        EtaConstraint::None => None,
        EtaConstraint::AntiHermitian => Some(f.subfield_order().ok_or(Error::NotQuadratic)?),
    };
    let sums = subset_sums(f, points, k)?;
    f.nonzero()
        .filter(|&eta| q.is_none_or(|q| f.pow_u(eta, q as u64) == f.neg(eta)))
        .find(|&eta| {
            let target = f.neg(f.inv(eta).expect("nonzero"));
            sums.contains(&target) == (want == DistanceClass::Amds)
        })
        .ok_or_else(|| Error::NoEta(format!("no η gives {want} for k = {k}")))
}
