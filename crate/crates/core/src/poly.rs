//! Dense polynomials over a prime field GF(p), used only to build field tables.
//!
//! Coefficients are stored low degree first; trailing zeros are trimmed.

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Base-p digits of `r`, padded to `m` coefficients then trimmed.
pub(crate) fn from_repr(mut r: u32, p: u32, m: usize) -> Poly {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(r % p);
        r /= p;
    }
    trim(out)
}

pub(crate) fn to_repr(a: &[u32], p: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p) as u64;
    while a.len() > dm {
        let da = a.len() - 1;
        let c = a[da] as u64 * lead_inv % p as u64;
        for (i, &mi) in m.iter().enumerate() {
            let j = da - dm + i;
            a[j] = ((a[j] as u64 + (p as u64 - c) * mi as u64) % p as u64) as u32;
        }
        a = trim(a);
    }
    a
}

fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut base = rem(a, m, p);
    let mut acc = rem(&[1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, m, p);
        }
        base = mul_mod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f` of degree m is irreducible iff gcd(f, x^{p^i} - x) = 1
/// for every i ≤ m/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let m = f.len() - 1;
    let x = vec![0, 1];
    let mut h = rem(&x, &f, p);
    for _ in 0..m / 2 {
        h = pow_mod(&h, p as u64, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree `m`, ordering candidates by the
/// integer Σ c_i p^i of their lower coefficients.
pub(crate) fn smallest_irreducible(p: u32, m: usize) -> Poly {
    let lower = (p as u64).pow(m as u32);
    (0..lower)
        .map(|r| {
            let mut f = Vec::with_capacity(m + 1);
            let mut r = r;
            for _ in 0..m {
                f.push((r % p as u64) as u32);
                r /= p as u64;
            }
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
