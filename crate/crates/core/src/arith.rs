//! Integer helpers: primality, prime powers, and exact small-integer formulas.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q = p^k` into `(p, k)`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1));
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// A prime power that is not prime.
pub fn is_composite_prime_power(q: u64) -> bool {
    matches!(prime_power(q), Some((_, k)) if k > 1)
}

/// `(q^n - 1)/(q - 1)`, the number of points of `PG(n-1, q)`.
pub fn projective_count(q: u64, n: u32) -> u128 {
    let mut total = 0u128;
    let mut pow = 1u128;
    for _ in 0..n {
        total += pow;
        pow *= q as u128;
    }
    total
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(is_composite_prime_power(4));
        assert!(!is_composite_prime_power(7));
        assert!(!is_composite_prime_power(12));
    }

    #[test]
    fn counts() {
        assert_eq!(projective_count(2, 3), 7);
        assert_eq!(projective_count(5, 4), 156);
        assert_eq!(projective_count(3, 0), 0);
        assert_eq!(binomial(20, 9), 167_960);
    }
}
