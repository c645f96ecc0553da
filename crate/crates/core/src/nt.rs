//! Small integer number theory used by field construction and parameter
//! searches. Everything here works on machine integers; arbitrary-precision
//! exponents go through `num-bigint`.

pub use num_integer::{gcd, lcm};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// If `q` is a prime power `p^k` (k >= 1), returns `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    match f.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Reduces a possibly negative integer into `[0, m)`.
pub fn rem_euclid(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(63), vec![(3, 2), (7, 1)]);
        assert_eq!(factorize(4095), vec![(3, 2), (5, 1), (7, 1), (13, 1)]);
        assert_eq!(factorize(262143), vec![(3, 3), (7, 1), (19, 1), (73, 1)]);
    }

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(2) && is_prime(7) && is_prime(65537));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(65));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn modular_power() {
        assert_eq!(mod_pow(3, 6, 7), 1);
        assert_eq!(mod_pow(5, 2, 6), 1);
        assert_eq!(mod_pow(2, 10, 1), 0);
        assert_eq!(rem_euclid(-2880, 65), 45);
    }
}
