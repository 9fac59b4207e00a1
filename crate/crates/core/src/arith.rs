//! Small integer number theory shared by the field and group code.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
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

/// Returns (p, r) with q = p^r, or None when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Multiplicative order of `a` modulo `n` (requires gcd(a, n) = 1).
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    k
}

pub fn ipow(b: i64, e: u32) -> i64 {
    b.pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn phi_and_order() {
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(60), 16);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
