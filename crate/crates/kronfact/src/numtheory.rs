//! Divisor and prime-factorization arithmetic behind compatible pairs,
//! branch construction and decomposition counting.

use crate::error::{Error, Result};

/// Canonical prime factorization `n = p_1^{k_1} * ... * p_m^{k_m}` with the
/// primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    pairs: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// Sum of the exponents: the length of the longest possible
    /// factorization of a size-`n` pattern.
    pub fn exponent_sum(&self) -> u32 {
        self.pairs.iter().map(|&(_, k)| k).sum()
    }

    /// Reconstructs `n`.
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, k)| p.pow(k)).product()
    }
}

/// Ordered pairs `(n1, n2)` of non-trivial divisors with `n1 * n2 = n`,
/// sorted by `n1`; the candidate sizes for a length-2 factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatiblePairSet {
    pairs: Vec<(u64, u64)>,
}

impl CompatiblePairSet {
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn contains(&self, n1: u64, n2: u64) -> bool {
        self.pairs.binary_search(&(n1, n2)).is_ok()
    }
}

/// All positive divisors of `n` in increasing order, including 1 and `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of zero are undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Trial-division prime factorization; `n >= 2`.
pub fn prime_factorization(n: u64) -> Result<PrimeFactorization> {
    if n < 2 {
        return Err(Error::domain(format!(
            "prime factorization requires n >= 2, got {n}"
        )));
    }
    let mut pairs = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            pairs.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Ok(PrimeFactorization { pairs })
}

/// Compatible pairs of `n`; empty when `n` is prime (or 1).
///
/// The cardinality is `prod(k_j + 1) - 2`, the number of non-trivial
/// divisors.
pub fn compatible_pairs(n: u64) -> CompatiblePairSet {
    let pairs = divisors(n)
        .into_iter()
        .filter(|&d| d != 1 && d != n)
        .map(|d| (d, n / d))
        .collect();
    CompatiblePairSet { pairs }
}

/// Removes every element that is a multiple of another element of the set.
///
/// The result is an antichain under divisibility: `y` survives iff no other
/// `x` in the set divides it.
pub fn reduce_multiples(set: &[u64]) -> Vec<u64> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted
        .iter()
        .filter(|&&y| !sorted.iter().any(|&x| x != y && y % x == 0))
        .copied()
        .collect()
}

/// Length of the longest factorization a size-`n` pattern can have:
/// the sum of the exponents in the prime factorization of `n`.
pub fn max_factorization_length(n: u64) -> Result<u32> {
    Ok(prime_factorization(n)?.exponent_sum())
}

/// Number of branches of a decomposable maximal pattern of size `n`:
/// the multinomial `l! / prod(k_j!)` with `l` the exponent sum, i.e. the
/// number of distinct orderings of the prime multiset of `n`.
pub fn maximal_branch_count(n: u64) -> Result<u64> {
    let pf = prime_factorization(n)?;
    // Product of binomials C(k_1 + ... + k_j, k_j) stays integral at every
    // step, so u128 intermediates never see the raw factorial.
    let mut total: u32 = 0;
    let mut count: u128 = 1;
    for &(_, k) in pf.pairs() {
        total += k;
        count *= binomial(total as u64, k as u64);
    }
    u64::try_from(count).map_err(|_| Error::domain(format!("branch count of {n} overflows u64")))
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc
}

/// Upper bound on the probability that an i.i.d. Be(1/2) random pattern of
/// size `n` is factorizable, reported both as a base-2 logarithm and as a
/// probability clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizabilityBound {
    /// `log2` of the bound; `-inf` when the compatible pair set is empty.
    pub log2: f64,
    /// The bound itself, clamped to `[0, 1]`.
    pub probability: f64,
}

/// Evaluates `sum over (n1,n2) of 2^(n1^2 + n2^2 - n^2)` in log space.
pub fn factorizable_probability_bound(n: u64) -> FactorizabilityBound {
    let exponents: Vec<f64> = compatible_pairs(n)
        .iter()
        .map(|(n1, n2)| ((n1 * n1 + n2 * n2) as i64 - (n * n) as i64) as f64)
        .collect();
    if exponents.is_empty() {
        return FactorizabilityBound {
            log2: f64::NEG_INFINITY,
            probability: 0.0,
        };
    }
    let max = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = exponents.iter().map(|&e| (e - max).exp2()).sum();
    let log2 = max + sum.log2();
    FactorizabilityBound {
        log2,
        probability: log2.exp2().min(1.0),
    }
}
