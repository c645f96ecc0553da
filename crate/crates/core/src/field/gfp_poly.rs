//! Dense polynomials over the prime field GF(p), coefficients low-degree
//! first. Only what modulus selection needs: reduction, multiplication
//! modulo a fixed polynomial, gcd and Rabin's irreducibility test.

use crate::nt;

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    nt::mod_pow(a, p - 2, p)
}

/// Remainder of `a` divided by `b` (b nonzero).
fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in b.iter().enumerate() {
            let t = factor * c % p;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `x^(p^k) mod m`, by k successive p-th powers.
fn x_pow_p_pow(k: u32, m: &[u64], p: u64) -> Vec<u64> {
    let mut t = rem(&[0, 1], m, p);
    for _ in 0..k {
        t = pow_mod(&t, p, m, p);
    }
    t
}

fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
    let mut out = a.to_vec();
    if out.len() < 2 {
        out.resize(2, 0);
    }
    out[1] = (out[1] + p - 1) % p;
    trim(&mut out);
    out
}

/// Rabin's test: a monic `f` of degree n is irreducible over GF(p) iff
/// `x^(p^n) = x mod f` and `gcd(x^(p^(n/r)) - x, f) = 1` for every prime r | n.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match f.len().checked_sub(1) {
        Some(n) if n >= 1 => n as u32,
        _ => return false,
    };
    if f[n as usize] != 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    for (r, _) in nt::factorize(n as u64) {
        let t = x_pow_p_pow(n / r as u32, f, p);
        let g = gcd(&sub_x(&t, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    sub_x(&x_pow_p_pow(n, f, p), p).is_empty()
}

/// The monic irreducible of degree n whose coefficient vector, read as
/// base-p digits low-degree first, is the smallest integer.
pub fn first_irreducible(p: u64, n: u32) -> Vec<u64> {
    let count = p.pow(n);
    (0..count)
        .map(|code| {
            let mut f = Vec::with_capacity(n as usize + 1);
            let mut c = code;
            for _ in 0..n {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference: f of degree n is irreducible iff no monic polynomial of
    /// degree 1..=n/2 divides it.
    fn irreducible_by_division(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        for d in 1..=n / 2 {
            for code in 0..p.pow(d as u32) {
                let mut g = Vec::new();
                let mut c = code;
                for _ in 0..d {
                    g.push(c % p);
                    c /= p;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn cubic_over_gf2() {
        assert_eq!(first_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 0, 1], 2));
    }

    #[test]
    fn rabin_matches_trial_division() {
        for &(p, max_n) in &[(2u64, 8u32), (3, 5), (5, 3), (7, 3)] {
            for n in 1..=max_n {
                for code in 0..p.pow(n) {
                    let mut f = Vec::new();
                    let mut c = code;
                    for _ in 0..n {
                        f.push(c % p);
                        c /= p;
                    }
                    f.push(1);
                    assert_eq!(is_irreducible(&f, p), irreducible_by_division(&f, p), "p={p} f={f:?}");
                }
            }
        }
    }
}
