//! Integer helpers: gcd, primality, factorization, primitive prime divisors.

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd64(a: u64, b: u64) -> u64 {
    gcd(a as u128, b as u128) as u64
}

/// `b^e`, panicking on overflow.
pub fn ipow(b: u64, e: u32) -> u64 {
    b.checked_pow(e).expect("integer power overflow")
}

pub fn ipow128(b: u128, e: u32) -> u128 {
    b.checked_pow(e).expect("integer power overflow")
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Pollard rho (Brent variant); n composite and odd.
fn rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            out.push(p);
            factor_into(n / p, out);
            return;
        }
    }
    let d = rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factorization, sorted by prime.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut ps = Vec::new();
    factor_into(n, &mut ps);
    ps.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in ps {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Factorization of a 128-bit value whose cofactor after small primes fits in 64 bits
/// (always the case for the group orders met here).
pub fn factorize128(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while n > u64::MAX as u128 {
        assert!(p < 1_000_000, "cannot factor {n}");
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p as u64, e));
        }
        p += 1;
    }
    for (q, e) in factorize(n as u64) {
        match out.iter_mut().find(|(r, _)| *r == q) {
            Some(slot) => slot.1 += e,
            None => out.push((q, e)),
        }
    }
    out.sort_unstable();
    out
}

pub fn prime_divisors(n: u128) -> Vec<u64> {
    factorize128(n).into_iter().map(|(p, _)| p).collect()
}

/// Returns `Some((p, f))` when `q = p^f` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factorize(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// Least primitive prime divisor of `q^m - 1`, i.e. the least prime dividing
/// `q^m - 1` but no `q^i - 1` with `i < m`. Requires `q^m < 2^63`.
pub fn primitive_prime_divisor(q: u64, m: u32) -> Option<u64> {
    assert!(q >= 2 && m >= 2);
    let qm = q.checked_pow(m).filter(|v| *v < (1u64 << 63)).expect("q^m too large");
    let mut n = qm - 1;
    for i in 1..m {
        let qi = ipow(q, i) - 1;
        let mut g = gcd64(n, qi);
        while g > 1 {
            n /= g;
            g = gcd64(n, g);
        }
    }
    if n == 1 {
        return None;
    }
    factorize(n).first().map(|&(p, _)| p)
}

/// Smallest divisor `d` of `bound` with `is_one(d)`; `is_one(bound)` must hold.
pub fn order_from_bound(bound: u128, mut is_one: impl FnMut(u128) -> bool) -> u128 {
    let mut n = bound;
    for (p, e) in factorize128(bound) {
        for _ in 0..e {
            if is_one(n / p as u128) {
                n /= p as u128;
            } else {
                break;
            }
        }
    }
    n
}

pub fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ppd_examples() {
        assert_eq!(primitive_prime_divisor(2, 6), None);
        assert_eq!(primitive_prime_divisor(3, 2), None);
        assert_eq!(primitive_prime_divisor(2, 4), Some(5));
        assert_eq!(primitive_prime_divisor(7, 2), None);
        assert_eq!(primitive_prime_divisor(5, 2), Some(3));
    }

    #[test]
    fn ppd_brute_force() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            for m in 2..7u32 {
                let n = ipow(q, m) - 1;
                let brute = (2..=n).find(|&r| {
                    is_prime(r) && n.is_multiple_of(r) && (1..m).all(|i| !(ipow(q, i) - 1).is_multiple_of(r))
                });
                assert_eq!(primitive_prime_divisor(q, m), brute, "q={q} m={m}");
                if let Some(r) = brute {
                    assert!(r > m as u64);
                }
            }
        }
    }

    #[test]
    fn factorization_roundtrip() {
        for n in [1u64, 2, 97, 360, 65535, 244823040, (1 << 31) - 1, 600851475143] {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn order_search() {
        // 3 has order 6 mod 7
        let o = order_from_bound(6, |d| powmod(3, d as u64, 7) == 1);
        assert_eq!(o, 6);
        assert_eq!(order_from_bound(6, |d| powmod(2, d as u64, 7) == 1), 3);
    }
}
