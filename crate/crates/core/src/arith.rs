//! Small number-theory helpers over `u64`: trial-division factorization,
//! primality, the classical Möbius function, and the map between finite
//! prime-keyed multisets and positive integers.

use num_bigint::BigUint;

use crate::error::{PosetError, Result};

/// Prime factorization as sorted `(prime, multiplicity)` pairs. `1` maps to `[]`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut k = 0;
        while *n % p == 0 {
            *n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
    };
    push(2, &mut n);
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Ascending primes starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    std::iter::once(2).chain((3..).step_by(2).filter(|&n| is_prime(n)))
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, k) in factorize(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..k {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Number-theoretic Möbius function.
pub fn classical_mobius(n: u64) -> Result<i64> {
    if n < 1 {
        return Err(PosetError::InvalidInput("classical Möbius needs n >= 1".into()));
    }
    let factors = factorize(n);
    if factors.iter().any(|&(_, k)| k > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Product of `p^k` over a prime-keyed multiset.
pub fn multiset_to_integer(m: &[(u64, u32)]) -> Result<BigUint> {
    validate_multiset(m)?;
    Ok(m.iter()
        .fold(BigUint::from(1u32), |acc, &(p, k)| acc * BigUint::from(p).pow(k)))
}

/// Same as [`multiset_to_integer`] but stays in `u64`.
pub fn multiset_to_u64(m: &[(u64, u32)]) -> Option<u64> {
    m.iter().try_fold(1u64, |acc, &(p, k)| {
        p.checked_pow(k).and_then(|pk| acc.checked_mul(pk))
    })
}

pub fn integer_to_multiset(n: u64) -> Result<Vec<(u64, u32)>> {
    if n < 1 {
        return Err(PosetError::InvalidInput("multiset image must be >= 1".into()));
    }
    Ok(factorize(n))
}

/// Keys strictly increasing primes, multiplicities positive.
pub fn validate_multiset(m: &[(u64, u32)]) -> Result<()> {
    let mut prev = 0u64;
    for &(p, k) in m {
        if !is_prime(p) {
            return Err(PosetError::InvalidInput(format!("multiset key {p} is not prime")));
        }
        if p <= prev {
            return Err(PosetError::InvalidInput("multiset keys must be strictly increasing".into()));
        }
        if k == 0 {
            return Err(PosetError::InvalidInput(format!("multiplicity of {p} must be >= 1")));
        }
        prev = p;
    }
    Ok(())
}
