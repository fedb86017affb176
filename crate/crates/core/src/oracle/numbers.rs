use num_bigint::BigUint;
use num_traits::One;

use super::OracleError;
use crate::count::BigCount;

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc.into()
}

/// `C_n = (2n)! / (n! (n+1)!)`.
pub fn catalan(n: u32) -> BigCount {
    let b = binomial(2 * n, n).into_biguint();
    (b / (n + 1)).into()
}

/// Euler zigzag number `E_n` (up-down permutations of order `n`), built
/// row by row with the Seidel boustrophedon triangle. `E_0 = E_1 = 1`.
pub fn euler_zigzag(n: u32) -> BigCount {
    let mut row = vec![BigUint::one()];
    for m in 1..=n as usize {
        let mut next = vec![BigUint::default(); m + 1];
        if m % 2 == 1 {
            for k in 1..=m {
                next[k] = &next[k - 1] + &row[k - 1];
            }
        } else {
            for k in (0..m).rev() {
                next[k] = &next[k + 1] + &row[k];
            }
        }
        row = next;
    }
    let e = if n % 2 == 1 { row.last() } else { row.first() };
    e.cloned().unwrap_or_else(BigUint::one).into()
}

/// Fibonacci with `F_1 = F_2 = 1` (and `F_0 = 0`).
pub fn fibonacci(n: u32) -> BigCount {
    let (mut a, mut b) = (BigUint::default(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a.into()
}

/// `n! / (p_1! p_2! ...)`; the parts must sum to `n`.
pub fn multinomial(n: u32, parts: &[u32]) -> Result<BigCount, OracleError> {
    let sum: u64 = parts.iter().map(|&p| p as u64).sum();
    if sum != n as u64 {
        return Err(OracleError::SumMismatch { n, sum });
    }
    let mut acc = factorial(n);
    for &p in parts {
        acc /= factorial(p);
    }
    Ok(acc.into())
}

pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Visits every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Counts permutations `s` of order `n` with `s1 < s2 > s3 < ...` by
/// filtering all `n!` permutations.
pub fn updown_bruteforce(n: u32) -> Result<BigCount, OracleError> {
    if n as usize > BRUTE_FORCE_LIMIT {
        return Err(OracleError::TooLarge {
            what: "up-down brute force order",
            size: n as usize,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut count = 0u64;
    for_each_permutation(n as usize, |p| {
        let ok = p.windows(2).enumerate().all(|(i, w)| if i % 2 == 0 { w[0] < w[1] } else { w[0] > w[1] });
        if ok {
            count += 1;
        }
    });
    Ok(count.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), 1u64);
        assert_eq!(catalan(7), 429u64);
        assert_eq!(catalan(17), 129_644_790u64);
    }

    #[test]
    fn euler_values() {
        let expected = [1u64, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(euler_zigzag(n as u32), *e, "E_{n}");
        }
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(1), 1u64);
        assert_eq!(fibonacci(2), 1u64);
        assert_eq!(fibonacci(7), 13u64);
        assert_eq!(fibonacci(10), 55u64);
        assert_eq!(fibonacci(12), 144u64);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(6, &[3, 2, 1]).unwrap(), 60u64);
        assert_eq!(multinomial(14, &[4, 10]).unwrap(), 1001u64);
        assert_eq!(multinomial(9, &[9]).unwrap(), 1u64);
        assert!(matches!(multinomial(6, &[3, 2]), Err(OracleError::SumMismatch { .. })));
        assert_eq!(binomial(11, 3), 165u64);
        assert_eq!(binomial(3, 5), 0u64);
    }

    #[test]
    fn updown_small() {
        // 1324 1423 2314 2413 3412
        assert_eq!(updown_bruteforce(4).unwrap(), 5u64);
        assert_eq!(updown_bruteforce(1).unwrap(), 1u64);
        assert_eq!(updown_bruteforce(0).unwrap(), 1u64);
        assert_eq!(updown_bruteforce(7).unwrap(), 272u64);
        assert!(updown_bruteforce(11).is_err());
    }

    #[test]
    fn heap_visits_all() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(5, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 120);
    }
}
