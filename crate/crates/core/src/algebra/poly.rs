//! Dense polynomials over F_p, lowest degree first.
//!
//! Only what the extension-field table builder needs: reduction, modular
//! multiplication and exponentiation, and an exhaustive irreducibility test.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo `m` (m nonzero).
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv_mod_p(m[dm], p) as u64;
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let p64 = p as u64;
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p64;
        let shift = dr - dm;
        for (i, &c) in m[..=dm].iter().enumerate() {
            let sub = factor * c as u64 % p64;
            let slot = &mut r[i + shift];
            *slot = ((*slot as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let slot = &mut prod[i + j];
            *slot = ((*slot as u64 + x as u64 * y as u64) % p64) as u32;
        }
    }
    rem(&prod, m, p)
}

pub(crate) fn pow_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut result: Poly = vec![1];
    let mut base = rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &base, m, p);
        }
        base = mul_mod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

/// Coefficients (low first) of the element with packed base-p encoding `code`.
pub(crate) fn from_code(mut code: u64, p: u32, k: usize) -> Poly {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    trim(&mut out);
    out
}

pub(crate) fn to_code(a: &[u32], p: u32) -> u64 {
    a.iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `lower`.
pub(crate) fn monic(lower: u64, p: u32, deg: usize) -> Poly {
    let mut f = from_code(lower, p, deg);
    f.resize(deg, 0);
    f.push(1);
    f
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let Some(k) = degree(m) else {
        return false;
    };
    if k == 0 {
        return false;
    }
    for deg in 1..=k / 2 {
        let count = (p as u64).pow(deg as u32);
        for lower in 0..count {
            let f = monic(lower, p, deg);
            if degree(&rem(m, &f, p)).is_none() {
                return false;
            }
        }
    }
    true
}
