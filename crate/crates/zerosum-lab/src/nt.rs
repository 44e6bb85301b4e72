//! Elementary number theory: gcd, factorization, Legendre symbols,
//! primitive roots, and the related predicates used by the weight families.

use crate::error::{Error, Result};

pub const fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1
}

/// Number of prime factors counted with multiplicity; big_omega(1) = 0.
pub fn big_omega(n: u64) -> u64 {
    factorize(n).len() as u64
}

pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    let mut fs = factorize(n);
    fs.dedup();
    for p in fs {
        phi = phi / p * (p - 1);
    }
    phi
}

pub fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus > 0 && modulus < (1 << 32));
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol (a/p) in {-1, 0, +1} by Euler's criterion.
pub fn legendre(a: u64, p: u64) -> Result<i32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok((a % 2) as i32);
    }
    let r = mod_pow(a, (p - 1) / 2, p);
    Ok(if r == 0 {
        0
    } else if r == 1 {
        1
    } else {
        -1
    })
}

/// True iff a has multiplicative order p-1 mod p.
pub fn is_primitive_root(a: u64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a.is_multiple_of(p) {
        return Ok(false);
    }
    let mut qs = factorize(p - 1);
    qs.dedup();
    Ok(qs.iter().all(|&q| mod_pow(a, (p - 1) / q, p) != 1))
}

/// True iff p is a prime of the form 2^(2^m) + 1. Testing that p - 1 is a
/// power of two is sufficient for prime p.
pub fn is_fermat_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (p - 1).is_power_of_two() && is_prime(p)
}

/// The constant c used by the quadratic-residue lower-bound sequences:
/// the smallest quadratic non-residue when p = 1 (mod 4), and 1 when
/// p = 3 (mod 4).
pub fn choose_c(p: u64) -> Result<u64> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotOddPrime(p));
    }
    if p % 4 == 3 {
        return Ok(1);
    }
    for a in 2..p {
        if legendre(a, p)? == -1 {
            return Ok(a);
        }
    }
    unreachable!("every odd prime has a non-residue")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_functions() {
        assert_eq!(big_omega(12), 3);
        assert_eq!(big_omega(1), 0);
        assert_eq!(euler_phi(10), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(factorize(12), vec![2, 2, 3]);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(3, 9), 9);
        assert!(is_prime(2) && is_prime(31) && !is_prime(1) && !is_prime(57));
    }

    #[test]
    fn legendre_symbol() {
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert_eq!(legendre(4, 5).unwrap(), 1);
        assert_eq!(legendre(10, 5).unwrap(), 0);
        assert_eq!(legendre(3, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn primitive_roots() {
        // order of 3 mod 7 is 6, checked by direct powering
        let mut x = 1u64;
        let mut ord = 0;
        for k in 1..7 {
            x = x * 3 % 7;
            if x == 1 {
                ord = k;
                break;
            }
        }
        assert_eq!(ord, 6);
        assert!(is_primitive_root(3, 7).unwrap());
        assert!(!is_primitive_root(2, 7).unwrap());
        assert!(!is_primitive_root(7, 7).unwrap());
    }

    #[test]
    fn fermat_primes() {
        for p in [3, 5, 17, 257, 65537] {
            assert!(is_fermat_prime(p), "{p}");
        }
        for p in [2, 7, 11, 13, 19, 97] {
            assert!(!is_fermat_prime(p), "{p}");
        }
    }

    #[test]
    fn c_selection() {
        assert_eq!(choose_c(5).unwrap(), 2);
        assert_eq!(choose_c(7).unwrap(), 1);
        assert_eq!(choose_c(13).unwrap(), 2);
        assert_eq!(choose_c(2), Err(Error::NotOddPrime(2)));
        assert_eq!(choose_c(9), Err(Error::NotOddPrime(9)));
    }
}
