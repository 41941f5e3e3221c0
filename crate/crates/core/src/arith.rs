//! Exact integer arithmetic and the multiplicative number theory needed by the
//! cycle-counting formulas.
//!
//! Counts are [`Natural`]s (arbitrary precision, never overflow). The signed
//! coefficient attached to a divisor chain is a [`SignedNatural`]; for the
//! closed-form coefficient [`q_coefficient`] a plain `i8` suffices because its
//! value is always one of `-1`, `0` or `+1`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::error::{require_positive, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// Arbitrary-precision signed integer.
pub type SignedNatural = BigInt;

/// `n` choose `k`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    let mut acc = Natural::one();
    for i in 0..k {
        // acc == C(n, i) here, so acc * (n - i) is divisible by i + 1.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `base^exp` as an exact natural number.
pub fn power(base: u64, exp: u64) -> Natural {
    Pow::pow(Natural::from(base), exp)
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    require_positive(n, "n")?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d <= n / d {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Canonical prime factorization: primes strictly increasing, exponents at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    prime_powers: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn prime_powers(&self) -> &[(u64, u32)] {
        &self.prime_powers
    }

    /// Number of distinct primes.
    pub fn distinct_primes(&self) -> usize {
        self.prime_powers.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.prime_powers.iter().all(|&(_, e)| e == 1)
    }

    /// Multiplies the prime powers back together.
    pub fn product(&self) -> Natural {
        self.prime_powers
            .iter()
            .fold(Natural::one(), |acc, &(p, e)| acc * power(p, u64::from(e)))
    }
}

/// Prime factorization by trial division.
pub fn factorize(k: u64) -> Result<Factorization> {
    require_positive(k, "k")?;
    let mut rest = k;
    let mut prime_powers = Vec::new();
    let mut p = 2u64;
    while p <= rest / p {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        prime_powers.push((rest, 1));
    }
    Ok(Factorization { prime_powers })
}

/// `(-1)^m` when `nu` is a product of `m` distinct primes, `0` when some prime
/// repeats. `q(1) = 1`.
pub fn q_coefficient(nu: u64) -> Result<i8> {
    require_positive(nu, "nu")?;
    let f = factorize(nu)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.distinct_primes() % 2 == 0 { 1 } else { -1 })
}

/// Even/odd tally of the ordered factorizations of `K` into factors `>= 2`,
/// equivalently of the divisor chains `1 | k1 | ... | K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTally {
    pub even_count: Natural,
    pub odd_count: Natural,
    pub delta: SignedNatural,
}

impl ChainTally {
    fn new(even_count: Natural, odd_count: Natural) -> Self {
        let delta = SignedNatural::from(even_count.clone()) - SignedNatural::from(odd_count.clone());
        ChainTally { even_count, odd_count, delta }
    }
}

/// Counts the even and odd ordered factorizations of `k`.
///
/// `k = 1` has the single empty factorization, which is even. Otherwise every
/// factorization starts with some divisor `d >= 2` followed by a factorization
/// of `k / d` of the opposite parity.
pub fn chain_tally(k: u64) -> Result<ChainTally> {
    require_positive(k, "k")?;
    let mut memo = HashMap::new();
    let (even, odd) = tally_rec(k, &mut memo);
    Ok(ChainTally::new(even, odd))
}

fn tally_rec(k: u64, memo: &mut HashMap<u64, (Natural, Natural)>) -> (Natural, Natural) {
    if k == 1 {
        return (Natural::one(), Natural::zero());
    }
    if let Some(hit) = memo.get(&k) {
        return hit.clone();
    }
    let mut even = Natural::zero();
    let mut odd = Natural::zero();
    for d in divisors(k).expect("k >= 1").into_iter().skip(1) {
        let (rest_even, rest_odd) = tally_rec(k / d, memo);
        // Prepending the factor d flips parity.
        even += rest_odd;
        odd += rest_even;
    }
    memo.insert(k, (even.clone(), odd.clone()));
    (even, odd)
}

/// Lists every ordered factorization of `k` into factors `>= 2`.
///
/// Exponential in the number of prime factors; meant for small `k`.
pub fn ordered_factorizations(k: u64) -> Result<Vec<Vec<u64>>> {
    require_positive(k, "k")?;
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    list_rec(k, &mut prefix, &mut out);
    Ok(out)
}

fn list_rec(k: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if k == 1 {
        out.push(prefix.clone());
        return;
    }
    for d in divisors(k).expect("k >= 1").into_iter().skip(1) {
        prefix.push(d);
        list_rec(k / d, prefix, out);
        prefix.pop();
    }
}

/// For every divisor `n` of `length`, the signed number of divisor chains
/// `n | ... | length` (even minus odd). This is the weight with which the
/// sum count of length `n` enters the proper-cycle count of length `length`.
pub fn chain_coefficients(length: u64) -> Result<Vec<(u64, SignedNatural)>> {
    divisors(length)?
        .into_iter()
        .map(|n| Ok((n, chain_tally(length / n)?.delta)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn pascal_row(n: usize) -> Vec<Natural> {
        let mut row = vec![Natural::one()];
        for _ in 0..n {
            let mut next = vec![Natural::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), Natural::from(6u32));
        assert_eq!(binomial(0, 0), Natural::one());
        for n in 0..20 {
            assert_eq!(binomial(n, 0), Natural::one());
        }
        assert_eq!(binomial(3, 5), Natural::zero());
    }

    #[test]
    fn binomial_lotto() {
        // 49*48*47*46*45*44 / 720
        let oracle: u64 = (44..=49).product::<u64>() / (1..=6).product::<u64>();
        assert_eq!(oracle, 13_983_816);
        assert_eq!(binomial(49, 6), Natural::from(oracle));
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        for n in 0..=70usize {
            let row = pascal_row(n);
            for k in 0..=n {
                assert_eq!(binomial(n as u64, k as u64), row[k], "C({n},{k})");
            }
        }
    }

    #[test]
    fn binomial_pascal_rule() {
        for n in 1..=64u64 {
            for k in 1..=64u64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn binomial_beyond_u64() {
        assert_eq!(
            binomial(100, 49).to_string(),
            "98913082887808032681188722800"
        );
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
        assert_eq!(divisors(36).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(0), Err(Error::ZeroArgument("n")));
    }

    #[test]
    fn divisors_are_complete_and_closed_under_complement() {
        for n in 1..=500u64 {
            let ds = divisors(n).unwrap();
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(ds, brute);
            for &d in &ds {
                assert!(ds.contains(&(n / d)));
            }
        }
    }

    #[test]
    fn factorizations() {
        assert_eq!(factorize(12).unwrap().prime_powers(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().prime_powers().is_empty());
        assert_eq!(
            factorize(30).unwrap().prime_powers(),
            &[(2, 1), (3, 1), (5, 1)]
        );
        assert_eq!(factorize(9973).unwrap().prime_powers(), &[(9973, 1)]);
        assert_eq!(factorize(0), Err(Error::ZeroArgument("k")));
        for k in 1..=2000u64 {
            let f = factorize(k).unwrap();
            assert_eq!(f.product(), Natural::from(k));
            assert!(f.prime_powers().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn q_values() {
        assert_eq!(q_coefficient(1).unwrap(), 1);
        assert_eq!(q_coefficient(6).unwrap(), 1);
        assert_eq!(q_coefficient(12).unwrap(), 0);
        assert_eq!(q_coefficient(30).unwrap(), -1);
        assert_eq!(q_coefficient(7).unwrap(), -1);
        assert_eq!(q_coefficient(0), Err(Error::ZeroArgument("nu")));
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    #[test]
    fn q_is_multiplicative_on_coprime_pairs() {
        for a in 1..=50u64 {
            for b in 1..=50u64 {
                if gcd(a, b) == 1 {
                    let lhs = q_coefficient(a * b).unwrap();
                    let rhs = q_coefficient(a).unwrap() * q_coefficient(b).unwrap();
                    assert_eq!(lhs, rhs, "q({a}*{b})");
                }
            }
        }
    }

    #[test]
    fn q_sums_over_divisors_vanish() {
        for n in 1..=500u64 {
            let s: i64 = divisors(n)
                .unwrap()
                .into_iter()
                .map(|d| i64::from(q_coefficient(d).unwrap()))
                .sum();
            assert_eq!(s, if n == 1 { 1 } else { 0 }, "n = {n}");
        }
    }

    #[test]
    fn chain_tally_examples() {
        let t = chain_tally(1).unwrap();
        assert_eq!((t.even_count, t.odd_count, t.delta), (1u32.into(), 0u32.into(), 1.into()));
        assert_eq!(chain_tally(2).unwrap().delta, (-1).into());
        let t = chain_tally(4).unwrap();
        assert_eq!((t.even_count, t.odd_count), (1u32.into(), 1u32.into()));
        let t = chain_tally(12).unwrap();
        assert_eq!((t.even_count, t.odd_count), (4u32.into(), 4u32.into()));
        assert_eq!(t.delta, 0.into());
        assert_eq!(chain_tally(0), Err(Error::ZeroArgument("k")));
    }

    #[test]
    fn listing_of_twelve() {
        let mut all = ordered_factorizations(12).unwrap();
        all.sort();
        let mut expected = vec![
            vec![12],
            vec![2, 6],
            vec![6, 2],
            vec![3, 4],
            vec![4, 3],
            vec![2, 2, 3],
            vec![2, 3, 2],
            vec![3, 2, 2],
        ];
        expected.sort();
        assert_eq!(all, expected);
        assert_eq!(ordered_factorizations(1).unwrap(), vec![Vec::<u64>::new()]);
    }

    #[test]
    fn tally_agrees_with_listing() {
        for k in 1..=300u64 {
            let list = ordered_factorizations(k).unwrap();
            let even = list.iter().filter(|f| f.len() % 2 == 0).count();
            let odd = list.len() - even;
            let t = chain_tally(k).unwrap();
            assert_eq!(t.even_count, Natural::from(even));
            assert_eq!(t.odd_count, Natural::from(odd));
            assert!(list.iter().all(|f| f.iter().product::<u64>() == k));
        }
    }

    #[test]
    fn delta_equals_q() {
        for k in 1..=200u64 {
            let t = chain_tally(k).unwrap();
            assert_eq!(t.delta, SignedNatural::from(q_coefficient(k).unwrap()), "K = {k}");
            assert!(t.delta >= (-1).into() && t.delta <= 1.into());
        }
    }

    #[test]
    fn twelve_coefficients() {
        let c = chain_coefficients(12).unwrap();
        let got: Vec<(u64, i64)> = c
            .into_iter()
            .map(|(n, d)| (n, i64::try_from(d).unwrap()))
            .collect();
        assert_eq!(
            got,
            vec![(1, 0), (2, 1), (3, 0), (4, -1), (6, -1), (12, 1)]
        );
    }
}
