//! Exact arithmetic in GF(p^m) backed by discrete-log tables.
//!
//! Elements are stored as exponents of a fixed primitive element θ, with a
//! sentinel for zero. Multiplication is exponent addition, addition goes
//! through a Zech-logarithm table, and the operations the code
//! constructions need (norm roots, square roots, Frobenius conjugation)
//! reduce to exponent arithmetic.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::Form;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// One field element: `θ^e` or zero.
///
/// The exponent is always reduced modulo `p^m - 1`. Ordering puts nonzero
/// elements by ascending exponent and zero last.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "FeltRepr", try_from = "FeltRepr")]
pub struct Felt(u32);

impl Felt {
    pub const ZERO: Felt = Felt(u32::MAX);
    pub const ONE: Felt = Felt(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == u32::MAX
    }

    /// Discrete logarithm base θ, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }
}

impl fmt::Debug for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(1) => write!(f, "θ"),
            Some(e) => write!(f, "θ^{e}"),
        }
    }
}

/// Serialized form of a field element: an exponent, or the string `"0"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FeltRepr {
    Exp(u32),
    Zero(String),
}

impl From<Felt> for FeltRepr {
    fn from(x: Felt) -> Self {
        match x.log() {
            Some(e) => FeltRepr::Exp(e),
            None => FeltRepr::Zero("0".to_string()),
        }
    }
}

/// Exponents are not range checked here; [`Field::contains`] does that.
impl TryFrom<FeltRepr> for Felt {
    type Error = String;

    fn try_from(r: FeltRepr) -> std::result::Result<Self, String> {
        match r {
            FeltRepr::Exp(e) if e != u32::MAX => Ok(Felt(e)),
            FeltRepr::Zero(s) if s == "0" => Ok(Felt::ZERO),
            other => Err(format!("bad field element {other:?}")),
        }
    }
}

/// The binary and unary operations exposed by [`Field::arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `x^e` where `e` is the integer carried by the op.
    Pow(i64),
    Neg,
    Inv,
}

/// A concrete finite field GF(p^m) with its primitive element and tables.
///
/// Immutable after construction; share it behind an [`Arc`].
pub struct Field {
    p: u32,
    m: u32,
    order: u32,
    /// Monic modulus, coefficients from `x^0` up to `x^m`.
    modulus: Vec<u32>,
    /// Polynomial-basis representation of θ.
    theta: u32,
    /// `exp[e]` = representation of θ^e, for e in 0..order-1.
    exp: Vec<u32>,
    /// `log[r]` = exponent of the element with representation r (r > 0).
    log: Vec<u32>,
    /// `zech[e]` = log(1 + θ^e), or `u32::MAX` when that sum is zero.
    zech: Vec<u32>,
    /// Exponent of -1.
    neg_one: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("theta", &self.theta)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.modulus == other.modulus
            && self.theta == other.theta
    }
}

impl Eq for Field {}

/// Builds GF(p^m) with the lexicographically smallest monic irreducible
/// modulus and the generator with the smallest polynomial representation.
pub fn make_field(p: u32, m: u32) -> Result<Arc<Field>> {
    check_size(p, m)?;
    let modulus = poly::smallest_irreducible(p, m as usize);
    let theta = smallest_generator(p, &modulus);
    Ok(Arc::new(Field::build(p, m, modulus, theta)))
}

/// Builds GF(q²) for a prime power `q`.
pub fn make_quadratic_extension(q: u32) -> Result<Arc<Field>> {
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, 2 * m)
}

/// Builds GF(q) for a prime power `q`.
pub fn make_field_of_order(q: u32) -> Result<Arc<Field>> {
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, m)
}

/// Decomposes `q = p^m` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_size(p: u32, m: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::Precondition("extension degree must be at least 1".into()));
    }
    let mut order: u64 = 1;
    for _ in 0..m {
        order *= p as u64;
        if order > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { p, m });
        }
    }
    Ok(())
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn smallest_generator(p: u32, modulus: &[u32]) -> u32 {
    let m = modulus.len() - 1;
    let order = (p as u64).pow(m as u32) as u32;
    let group = order - 1;
    let factors = prime_factors(group);
    (1..order)
        .find(|&g| {
            let gp = poly::from_repr(g, p, m);
            factors.iter().all(|&r| {
                let e = poly::pow_mod(&gp, (group / r) as u64, modulus, p);
                poly::to_repr(&e, p) != 1
            })
        })
        .expect("multiplicative group of a finite field is cyclic")
}

impl Field {
    /// Builds a field from an explicit modulus (monic, low-to-high
    /// coefficients) and generator representation, validating both.
    pub fn with_modulus(p: u32, m: u32, modulus: Vec<u32>, theta: u32) -> Result<Arc<Field>> {
        check_size(p, m)?;
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(Error::Precondition("modulus must be monic of degree m".into()));
        }
        if modulus.iter().any(|&c| c >= p) || !poly::is_irreducible(&modulus, p) {
            return Err(Error::Precondition("modulus is not irreducible".into()));
        }
        let order = p.pow(m);
        if theta == 0 || theta >= order {
            return Err(Error::Precondition("theta out of range".into()));
        }
        let gp = poly::from_repr(theta, p, m as usize);
        let group = order - 1;
        let primitive = prime_factors(group).iter().all(|&r| {
            poly::to_repr(&poly::pow_mod(&gp, (group / r) as u64, &modulus, p), p) != 1
        });
        if !primitive {
            return Err(Error::Precondition("theta is not a primitive element".into()));
        }
        Ok(Arc::new(Field::build(p, m, modulus, theta)))
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>, theta: u32) -> Field {
        let md = m as usize;
        let order = p.pow(m);
        let group = (order - 1) as usize;
        let mut exp = vec![0u32; group];
        let mut log = vec![u32::MAX; order as usize];
        let theta_poly = poly::from_repr(theta, p, md);
        let mut cur = vec![1u32];
        for (e, slot) in exp.iter_mut().enumerate() {
            let r = poly::to_repr(&cur, p);
            *slot = r;
            log[r as usize] = e as u32;
            cur = poly::mul_mod(&cur, &theta_poly, &modulus, p);
        }
        let mut zech = vec![u32::MAX; group];
        for (e, z) in zech.iter_mut().enumerate() {
            // 1 + θ^e: bump the constant digit.
            let r = exp[e];
            let c0 = r % p;
            let sum = r - c0 + (c0 + 1) % p;
            if sum != 0 {
                *z = log[sum as usize];
            }
        }
        let neg_one = if p == 2 { 0 } else { (group / 2) as u32 };
        Field {
            p,
            m,
            order,
            modulus,
            theta,
            exp,
            log,
            zech,
            neg_one,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements `p^m`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Polynomial-basis representation of θ.
    pub fn theta_repr(&self) -> u32 {
        self.theta
    }

    /// `q` when this field is GF(q²), i.e. when `m` is even.
    pub fn subfield_order(&self) -> Option<u32> {
        self.m.is_multiple_of(2).then(|| self.p.pow(self.m / 2))
    }

    fn require_quadratic(&self) -> Result<u32> {
        self.subfield_order().ok_or(Error::NotQuadratic)
    }

    /// Size of the multiplicative group.
    #[inline]
    fn group(&self) -> u32 {
        self.order - 1
    }

    #[inline]
    pub fn zero(&self) -> Felt {
        Felt::ZERO
    }

    #[inline]
    pub fn one(&self) -> Felt {
        Felt::ONE
    }

    /// The primitive element θ.
    pub fn theta(&self) -> Felt {
        self.theta_pow(1)
    }

    /// θ^e for any integer e.
    pub fn theta_pow(&self, e: i64) -> Felt {
        Felt(e.rem_euclid(self.group() as i64) as u32)
    }

    /// Element whose polynomial-basis digits (base p, low first) encode `r`.
    pub fn from_repr(&self, r: u32) -> Result<Felt> {
        if r >= self.order {
            return Err(Error::Precondition(format!("representation {r} out of range")));
        }
        Ok(if r == 0 { Felt::ZERO } else { Felt(self.log[r as usize]) })
    }

    pub fn to_repr(&self, x: Felt) -> u32 {
        match x.log() {
            None => 0,
            Some(e) => self.exp[e as usize],
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Felt {
        let r = n.rem_euclid(self.p as i64) as u32;
        if r == 0 {
            Felt::ZERO
        } else {
            Felt(self.log[r as usize])
        }
    }

    /// Checks that an exponent-coded element belongs to this field.
    pub fn contains(&self, x: Felt) -> bool {
        x.is_zero() || x.0 < self.group()
    }

    #[inline]
    pub fn add(&self, x: Felt, y: Felt) -> Felt {
        match (x.log(), y.log()) {
            (None, _) => y,
            (_, None) => x,
            (Some(a), Some(b)) => {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let z = self.zech[(hi - lo) as usize];
                if z == u32::MAX {
                    Felt::ZERO
                } else {
                    Felt(self.reduce(lo as u64 + z as u64))
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, x: Felt) -> Felt {
        match x.log() {
            None => x,
            Some(a) => Felt(self.reduce(a as u64 + self.neg_one as u64)),
        }
    }

    #[inline]
    pub fn sub(&self, x: Felt, y: Felt) -> Felt {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Felt, y: Felt) -> Felt {
        match (x.log(), y.log()) {
            (Some(a), Some(b)) => Felt(self.reduce(a as u64 + b as u64)),
            _ => Felt::ZERO,
        }
    }

    pub fn inv(&self, x: Felt) -> Result<Felt> {
        match x.log() {
            None => Err(Error::DivisionByZero),
            Some(0) => Ok(Felt::ONE),
            Some(a) => Ok(Felt(self.group() - a)),
        }
    }

    pub fn div(&self, x: Felt, y: Felt) -> Result<Felt> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`; negative exponents need a nonzero base. `0^0 = 1`.
    pub fn pow(&self, x: Felt, e: i64) -> Result<Felt> {
        match x.log() {
            None if e == 0 => Ok(Felt::ONE),
            None if e > 0 => Ok(Felt::ZERO),
            None => Err(Error::DivisionByZero),
            Some(a) => {
                let g = self.group() as i128;
                Ok(Felt(((a as i128 * e as i128).rem_euclid(g)) as u32))
            }
        }
    }

    /// `x^e` for a non-negative exponent; never fails.
    #[inline]
    pub fn pow_u(&self, x: Felt, e: u64) -> Felt {
        match x.log() {
            None if e == 0 => Felt::ONE,
            None => Felt::ZERO,
            Some(a) => Felt(((a as u128 * e as u128) % self.group() as u128) as u32),
        }
    }

    pub fn arith(&self, x: Felt, y: Felt, op: ArithOp) -> Result<Felt> {
        match op {
            ArithOp::Add => Ok(self.add(x, y)),
            ArithOp::Sub => Ok(self.sub(x, y)),
            ArithOp::Mul => Ok(self.mul(x, y)),
            ArithOp::Div => self.div(x, y),
            ArithOp::Pow(e) => self.pow(x, e),
            ArithOp::Neg => Ok(self.neg(x)),
            ArithOp::Inv => self.inv(x),
        }
    }

    #[inline]
    fn reduce(&self, e: u64) -> u32 {
        (e % self.group() as u64) as u32
    }

    pub fn sum<I: IntoIterator<Item = Felt>>(&self, it: I) -> Felt {
        it.into_iter().fold(Felt::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Felt>>(&self, it: I) -> Felt {
        it.into_iter().fold(Felt::ONE, |acc, x| self.mul(acc, x))
    }

    /// Nonzero elements in ascending exponent order.
    pub fn nonzero(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.group()).map(Felt)
    }

    /// All elements: nonzero by ascending exponent, then zero.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        self.nonzero().chain(std::iter::once(Felt::ZERO))
    }

    /// Frobenius conjugation `x ↦ x^q` in GF(q²).
    pub fn conj(&self, x: Felt) -> Result<Felt> {
        let q = self.require_quadratic()?;
        Ok(self.pow_u(x, q as u64))
    }

    /// `x^q` without the quadratic check; callers guarantee `m` is even.
    #[inline]
    pub(crate) fn conj_unchecked(&self, x: Felt) -> Felt {
        match x.log() {
            None => x,
            Some(a) => {
                let q = self.p.pow(self.m / 2) as u64;
                Felt(self.reduce(a as u64 * q))
            }
        }
    }

    /// Whether `x` lies in the subfield GF(q) of GF(q²).
    pub fn in_subfield(&self, x: Felt) -> Result<bool> {
        let q = self.require_quadratic()?;
        Ok(match x.log() {
            None => true,
            Some(a) => a % (q + 1) == 0,
        })
    }

    /// `y` with `y^{q+1} = x` for `x ∈ GF(q)^*`, taken as θ^{log(x)/(q+1)}.
    pub fn norm_root(&self, x: Felt) -> Result<Felt> {
        let q = self.require_quadratic()?;
        let a = x.log().ok_or(Error::DivisionByZero)?;
        if a % (q + 1) != 0 {
            return Err(Error::NotInSubfield);
        }
        Ok(Felt(a / (q + 1)))
    }

    /// A square root of `x`, the one with the smaller exponent.
    pub fn sqrt(&self, x: Felt) -> Result<Felt> {
        let Some(a) = x.log() else {
            return Ok(Felt::ZERO);
        };
        if a % 2 == 0 {
            return Ok(Felt(a / 2));
        }
        if self.p == 2 {
            // group order is odd, so a + (order-1) is even.
            return Ok(Felt(((a as u64 + self.group() as u64) / 2) as u32));
        }
        Err(Error::NonSquare)
    }

    /// Smallest-exponent nonzero η with `η^q = -η`.
    pub fn find_eta(&self) -> Result<Felt> {
        let q = self.require_quadratic()? as u64;
        self.nonzero()
            .find(|&eta| self.pow_u(eta, q) == self.neg(eta))
            .ok_or_else(|| Error::Precondition("no η with η^q = -η".into()))
    }

    /// Smallest-exponent `a` used to rescale coordinates.
    ///
    /// Euclidean: `a² ≠ 1`. Hermitian: `a^{q+1} ≠ 1`, drawn from GF(q²)^*
    /// unless `strict`, in which case `a` must lie in GF(q) (so the test
    /// becomes `a² ≠ 1`).
    pub fn scaling_unit(&self, form: Form, strict: bool) -> Result<Felt> {
        let found = match form {
            Form::Euclidean => self.nonzero().find(|&a| self.pow_u(a, 2) != Felt::ONE),
            Form::Hermitian => {
                let q = self.require_quadratic()? as u64;
                self.nonzero().find(|&a| {
                    (!strict || a.0 % (q as u32 + 1) == 0) && self.pow_u(a, q + 1) != Felt::ONE
                })
            }
        };
        found.ok_or(Error::NoScalingUnit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(f: &Field, x: Felt) -> u32 {
        let mut acc = x;
        let mut k = 1;
        while acc != Felt::ONE {
            acc = f.mul(acc, x);
            k += 1;
        }
        k
    }

    #[test]
    fn gf2_is_trivial() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.theta(), Felt::ONE);
        assert_eq!(f.to_repr(f.theta()), 1);
        assert_eq!(f.add(Felt::ONE, Felt::ONE), Felt::ZERO);
    }

    #[test]
    fn gf169_theta_is_primitive() {
        let f = make_field(13, 2).unwrap();
        assert_eq!(f.order(), 169);
        assert_eq!(f.nonzero().count(), 168);
        // θ^168 = 1 and θ^(168/r) ≠ 1 for each prime r | 168, computed by
        // repeated multiplication rather than exponent arithmetic.
        assert_eq!(brute_order(&f, f.theta()), 168);
    }

    #[test]
    fn gf49_exp_log_round_trip() {
        let f = make_field(7, 2).unwrap();
        for r in 1..49 {
            let x = f.from_repr(r).unwrap();
            assert_eq!(f.to_repr(x), r);
        }
        for e in 0..48 {
            let x = f.theta_pow(e);
            assert_eq!(f.from_repr(f.to_repr(x)).unwrap(), x);
        }
    }

    #[test]
    fn prime_fields_use_smallest_generator() {
        assert_eq!(make_field(13, 1).unwrap().theta_repr(), 2);
        assert_eq!(make_field(7, 1).unwrap().theta_repr(), 3);
        assert_eq!(make_field(5, 1).unwrap().theta_repr(), 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(make_field(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(make_field(2, 20).is_ok());
    }

    #[test]
    fn identities_and_inverses() {
        let f = make_field(13, 2).unwrap();
        let x = f.theta_pow(37);
        assert_eq!(f.add(x, Felt::ZERO), x);
        assert_eq!(f.mul(f.theta(), f.theta_pow(169 - 2)), Felt::ONE);
        assert!(matches!(f.inv(Felt::ZERO), Err(Error::DivisionByZero)));
        assert!(matches!(f.div(x, Felt::ZERO), Err(Error::DivisionByZero)));
        assert_eq!(f.arith(x, x, ArithOp::Sub).unwrap(), Felt::ZERO);
        assert_eq!(f.arith(x, x, ArithOp::Div).unwrap(), Felt::ONE);
        assert_eq!(f.arith(x, Felt::ZERO, ArithOp::Pow(-1)).unwrap(), f.inv(x).unwrap());
    }

    #[test]
    fn sum_of_all_elements_vanishes() {
        let f = make_field(13, 2).unwrap();
        // Sum via polynomial-basis digits, independent of the Zech table.
        let mut digits = [0u32; 2];
        for r in 0..169u32 {
            digits[0] = (digits[0] + r % 13) % 13;
            digits[1] = (digits[1] + r / 13) % 13;
        }
        assert_eq!(digits, [0, 0]);
        assert_eq!(f.sum(f.elements()), Felt::ZERO);
    }

    #[test]
    fn addition_matches_digitwise_sum() {
        for (p, m) in [(2, 3), (3, 2), (5, 2), (7, 2), (2, 4)] {
            let f = make_field(p, m).unwrap();
            let n = f.order();
            for a in 0..n {
                for b in 0..n {
                    let mut r = 0;
                    let mut pw = 1;
                    let (mut x, mut y) = (a, b);
                    for _ in 0..m {
                        r += ((x % p + y % p) % p) * pw;
                        x /= p;
                        y /= p;
                        pw *= p;
                    }
                    let s = f.add(f.from_repr(a).unwrap(), f.from_repr(b).unwrap());
                    assert_eq!(f.to_repr(s), r);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, m) in [(2, 2), (3, 2), (2, 3), (5, 2), (7, 2)] {
            let f = make_field(p, m).unwrap();
            let els: Vec<Felt> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Felt::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
                }
                for &b in &els {
                    for &c in els.iter().step_by(3) {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn conj_basics() {
        let f = make_field(7, 2).unwrap();
        assert_eq!(f.conj(Felt::ZERO).unwrap(), Felt::ZERO);
        assert_eq!(f.conj(f.theta()).unwrap(), f.theta_pow(7));
        for e in 0..48 {
            assert_eq!(f.conj(f.theta_pow(e)).unwrap(), f.theta_pow(e * 7));
        }
        let fixed = f.elements().filter(|&x| f.conj(x).unwrap() == x).count();
        assert_eq!(fixed, 7);
        assert!(matches!(make_field(7, 1).unwrap().conj(Felt::ONE), Err(Error::NotQuadratic)));
    }

    #[test]
    fn conj_is_an_automorphism() {
        for (p, m) in [(2, 2), (3, 2), (2, 4), (5, 2), (7, 2)] {
            let f = make_field(p, m).unwrap();
            for a in f.elements() {
                assert_eq!(f.conj(f.conj(a).unwrap()).unwrap(), a);
                for b in f.elements() {
                    let ca = f.conj(a).unwrap();
                    let cb = f.conj(b).unwrap();
                    assert_eq!(f.conj(f.add(a, b)).unwrap(), f.add(ca, cb));
                    assert_eq!(f.conj(f.mul(a, b)).unwrap(), f.mul(ca, cb));
                }
            }
        }
    }

    #[test]
    fn norm_map_is_onto_and_uniform() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13] {
            let f = make_quadratic_extension(q).unwrap();
            let mut counts = std::collections::HashMap::new();
            for x in f.nonzero() {
                let n = f.pow_u(x, q as u64 + 1);
                assert!(f.in_subfield(n).unwrap());
                *counts.entry(n).or_insert(0u32) += 1;
            }
            assert_eq!(counts.len() as u32, q - 1);
            assert!(counts.values().all(|&c| c == q + 1));
        }
    }

    #[test]
    fn norm_root_examples() {
        let f = make_field(7, 2).unwrap();
        assert_eq!(f.norm_root(Felt::ONE).unwrap(), Felt::ONE);
        assert_eq!(f.norm_root(f.theta_pow(8)).unwrap(), f.theta());
        for x in f.nonzero().filter(|&x| f.in_subfield(x).unwrap()) {
            assert_eq!(f.pow_u(f.norm_root(x).unwrap(), 8), x);
        }
        assert!(matches!(f.norm_root(Felt::ZERO), Err(Error::DivisionByZero)));
        assert!(matches!(f.norm_root(f.theta()), Err(Error::NotInSubfield)));
    }

    #[test]
    fn sqrt_examples() {
        let f = make_field(13, 2).unwrap();
        assert_eq!(f.sqrt(Felt::ZERO).unwrap(), Felt::ZERO);
        assert_eq!(f.sqrt(f.theta_pow(20)).unwrap(), f.theta_pow(10));
        for x in f.nonzero().filter(|&x| f.in_subfield(x).unwrap()) {
            let y = f.sqrt(x).unwrap();
            assert_eq!(f.mul(y, y), x);
        }
        assert!(matches!(f.sqrt(f.theta()), Err(Error::NonSquare)));
        let g = make_field(2, 3).unwrap();
        for x in g.elements() {
            let y = g.sqrt(x).unwrap();
            assert_eq!(g.mul(y, y), x);
        }
    }

    #[test]
    fn eta_examples() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.find_eta().unwrap(), Felt::ONE);
        let f49 = make_field(7, 2).unwrap();
        let eta = f49.find_eta().unwrap();
        assert_eq!(f49.add(f49.pow_u(eta, 7), eta), Felt::ZERO);
        let f169 = make_field(13, 2).unwrap();
        let count = f169
            .nonzero()
            .filter(|&x| f169.pow_u(x, 13) == f169.neg(x))
            .count();
        assert_eq!(count, 12);
        let eta = f169.find_eta().unwrap();
        assert_eq!(f169.pow_u(eta, 13), f169.neg(eta));
    }

    #[test]
    fn scaling_unit_examples() {
        let f49 = make_field(7, 2).unwrap();
        let a = f49.scaling_unit(Form::Hermitian, false).unwrap();
        assert_eq!(a, f49.theta());
        assert_ne!(f49.pow_u(a, 8), Felt::ONE);
        let strict = f49.scaling_unit(Form::Hermitian, true).unwrap();
        assert!(f49.in_subfield(strict).unwrap());
        assert_ne!(f49.pow_u(strict, 2), Felt::ONE);

        let f13 = make_field(13, 1).unwrap();
        let a = f13.scaling_unit(Form::Euclidean, false).unwrap();
        assert_eq!(f13.to_repr(a), 2);
        assert_eq!(f13.to_repr(f13.mul(a, a)), 4);

        let f3 = make_field(3, 1).unwrap();
        assert!(matches!(f3.scaling_unit(Form::Euclidean, false), Err(Error::NoScalingUnit)));
        let f4 = make_field(2, 2).unwrap();
        assert!(matches!(f4.scaling_unit(Form::Hermitian, false), Err(Error::NoScalingUnit)));
    }

    #[test]
    fn explicit_modulus_is_validated() {
        let f = make_field(3, 2).unwrap();
        let g = Field::with_modulus(3, 2, f.modulus().to_vec(), f.theta_repr()).unwrap();
        assert_eq!(*f, *g);
        // x^2 + 2 = (x+1)(x+2) over GF(3)
        assert!(Field::with_modulus(3, 2, vec![2, 0, 1], 4).is_err());
        // 2 = -1 has order 2
        assert!(Field::with_modulus(3, 2, vec![1, 0, 1], 2).is_err());
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(169), Some((13, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
