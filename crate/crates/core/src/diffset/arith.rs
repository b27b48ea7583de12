//! Small-integer number theory used by the difference-set code.

use num_integer::{Integer, Roots};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `1` counts as a prime power (the empty product).
pub fn is_prime_power(n: u64) -> bool {
    n >= 1 && factorize(n).len() <= 1
}

/// Whether no square of a prime divides `n`.
pub fn is_square_free(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Primes of the form `2^(2^k) + 1`.
pub fn is_fermat_prime(p: u64) -> bool {
    is_prime(p) && (p - 1).is_power_of_two() && (p - 1).trailing_zeros().is_power_of_two()
}

/// `Some(q)` when `p = r q + 1` with `q` prime.
pub fn cofactor_prime(p: u64, r: u64) -> Option<u64> {
    (p > r && (p - 1) % r == 0 && is_prime((p - 1) / r)).then(|| (p - 1) / r)
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `m`, for `gcd(a, m) = 1`.
pub fn mult_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * a % m;
        k += 1;
    }
    k
}

pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let e = i64::extended_gcd(&(a as i64), &(m as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i64) as u64)
}

/// The least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factorize(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(r, _)| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("a prime has a primitive root")
}

pub fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// Whether `n = (q^(d+1) - 1)/(q - 1)` for some prime power `q <= q_max`
/// and `2 <= d <= d_max`; returns every such `(q, d)`.
pub fn projective_representations(n: u64, q_max: u64, d_max: u32) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in 2..=q_max {
        if !is_prime_power(q) {
            continue;
        }
        for d in 2..=d_max {
            // q^(d+1) - 1 = n (q - 1)
            let lhs = (q as u128).pow(d + 1) - 1;
            if lhs == n as u128 * (q as u128 - 1) {
                out.push((q, d));
            }
        }
    }
    out
}
