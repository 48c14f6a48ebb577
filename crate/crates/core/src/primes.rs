//! Small-integer number theory: deterministic Miller-Rabin, multiplicative
//! orders and divisors.

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all `u64` (witness set of Sinclair / Jaeschke).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `p` with `lo <= p <= hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Multiplicative order of `a` modulo `m`; `None` if `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if num_integer::gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = mul_mod(x, a, m);
        k += 1;
    }
    Some(k)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Legendre symbol `(a / p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    match pow_mod(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            while n % f == 0 {
                n /= f;
            }
            result -= result / f;
        }
        f += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(n: usize) -> Vec<bool> {
        let mut is = vec![true; n + 1];
        is[0] = false;
        if n >= 1 {
            is[1] = false;
        }
        let mut i = 2;
        while i * i <= n {
            if is[i] {
                let mut j = i * i;
                while j <= n {
                    is[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is
    }

    #[test]
    fn miller_rabin_matches_sieve() {
        let s = sieve(20_000);
        for (n, &expected) in s.iter().enumerate() {
            assert_eq!(is_prime(n as u64), expected, "n = {n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(29, 7), Some(1));
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(3, 5), Some(4));
        assert_eq!(multiplicative_order(7, 7), None);
        assert_eq!(divisors(14), vec![1, 2, 7, 14]);
        assert_eq!(totient(14), 6);
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
    }
}
