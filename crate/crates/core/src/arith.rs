//! Small number-theoretic helpers on `u64`.

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending. Empty for `n == 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut divs = vec![1u64];
    for (p, k) in factorize(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..k {
            pk *= p;
            for idx in 0..len {
                divs.push(divs[idx] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Number of positive divisors.
pub fn sigma0(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, k)| u64::from(k) + 1).product()
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// 2-adic valuation of a nonzero integer.
pub fn two_valuation(n: u64) -> u32 {
    debug_assert!(n != 0);
    n.trailing_zeros()
}

pub fn odd_part(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        n >> n.trailing_zeros()
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_by_count(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn totient_matches_unit_count() {
        for n in 1..200 {
            assert_eq!(euler_phi(n), phi_by_count(n), "n = {n}");
        }
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn divisors_match_brute_force() {
        for n in 1..300u64 {
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n), brute);
            assert_eq!(sigma0(n), brute.len() as u64);
        }
        assert!(divisors(0).is_empty());
    }

    #[test]
    fn odd_part_and_valuation() {
        assert_eq!(odd_part(12), 3);
        assert_eq!(two_valuation(12), 2);
        assert_eq!(odd_part(7), 7);
        assert_eq!(lcm(4, 6), 12);
    }
}
