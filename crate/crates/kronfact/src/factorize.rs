//! Matrix-free length-2 factorizability test and factor recovery.
//!
//! For a candidate pair `(n1, n2)` every entry `(i, j)` of the pattern is
//! split by Euclidean division into a coarse position in an `n1 x n1` grid
//! and a fine position in an `n2 x n2` block; both are mapped to linear
//! indices `(l1, l2)`. The pattern factorizes for `(n1, n2)` precisely when
//! the resulting index set is a Cartesian product `S1 x S2`, in which case
//! `S1` and `S2` are the sorted linear indices of the two factor patterns.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numtheory::compatible_pairs;
use crate::pattern::BinaryPattern;

/// The support of a pattern mapped to `(l1, l2)` index pairs for a fixed
/// compatible pair, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RearrangedSupport {
    n1: u64,
    n2: u64,
    pairs: Vec<(u64, u64)>,
}

impl RearrangedSupport {
    pub fn sizes(&self) -> (u64, u64) {
        (self.n1, self.n2)
    }

    /// `(l1, l2)` pairs in lexicographic order, one per pattern entry.
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }
}

/// A length-2 factorization: two factor patterns whose Kronecker product
/// reproduces the input exactly. Unique for fixed sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Length2Factorization {
    left: BinaryPattern,
    right: BinaryPattern,
}

impl Length2Factorization {
    /// `(n1, n2)` sizes of the two factors.
    pub fn pair(&self) -> (u64, u64) {
        (self.left.size(), self.right.size())
    }

    pub fn left(&self) -> &BinaryPattern {
        &self.left
    }

    pub fn right(&self) -> &BinaryPattern {
        &self.right
    }
}

fn check_pair(a: &BinaryPattern, n1: u64, n2: u64) -> Result<()> {
    if n1 < 1 || n2 < 1 || n1.checked_mul(n2) != Some(a.size()) {
        return Err(Error::domain(format!(
            "pair ({n1}, {n2}) is incompatible with size {}",
            a.size()
        )));
    }
    Ok(())
}

/// Splits the linear index `l` (in the size-`n` pattern, `n = n1 * n2`)
/// into the linear indices of its coarse and fine basis factors.
#[inline]
fn split_entry(l: u64, n: u64, n1: u64, n2: u64) -> (u64, u64) {
    let i = (l - 1) % n + 1;
    let j = (l - 1) / n + 1;
    let (i1, i2) = ((i - 1) / n2 + 1, (i - 1) % n2 + 1);
    let (j1, j2) = ((j - 1) / n2 + 1, (j - 1) % n2 + 1);
    ((j1 - 1) * n1 + i1, (j2 - 1) * n2 + i2)
}

/// Maps every pattern entry to its `(l1, l2)` pair for the pair `(n1, n2)`.
pub fn rearranged_support(a: &BinaryPattern, n1: u64, n2: u64) -> Result<RearrangedSupport> {
    check_pair(a, n1, n2)?;
    if a.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let n = a.size();
    let mut pairs: Vec<(u64, u64)> = a
        .linear_indices()
        .iter()
        .map(|&l| split_entry(l, n, n1, n2))
        .collect();
    pairs.sort_unstable();
    Ok(RearrangedSupport { n1, n2, pairs })
}

/// Attempts an `(n1, n2)` factorization; `None` when the support is not a
/// Cartesian product.
///
/// The implementation never materializes the rearranged matrix. It reads
/// off the candidate `S2` from the group of the smallest `l1` (and `S1`
/// from the smallest `l2`), rejects early when `|S1| * |S2| != nnz`, and
/// then verifies membership of every entry; distinctness of the `(l1, l2)`
/// pairs makes those checks sufficient. Runs in `O(nnz log nnz)`.
pub fn try_factorize(a: &BinaryPattern, n1: u64, n2: u64) -> Result<Option<Length2Factorization>> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::domain(format!(
            "pair ({n1}, {n2}) is trivial; both sizes must exceed 1"
        )));
    }
    check_pair(a, n1, n2)?;
    if a.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let n = a.size();
    let entries = a.linear_indices();

    let mut l1_min = u64::MAX;
    let mut l2_min = u64::MAX;
    for &l in entries {
        let (l1, l2) = split_entry(l, n, n1, n2);
        l1_min = l1_min.min(l1);
        l2_min = l2_min.min(l2);
    }

    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for &l in entries {
        let (l1, l2) = split_entry(l, n, n1, n2);
        if l1 == l1_min {
            s2.push(l2);
        }
        if l2 == l2_min {
            s1.push(l1);
        }
    }
    s1.sort_unstable();
    s2.sort_unstable();
    if s1.len() * s2.len() != entries.len() {
        return Ok(None);
    }

    for &l in entries {
        let (l1, l2) = split_entry(l, n, n1, n2);
        if s1.binary_search(&l1).is_err() || s2.binary_search(&l2).is_err() {
            return Ok(None);
        }
    }

    let left = BinaryPattern::from_linear_indices(n1, s1).expect("l1 indices in range");
    let right = BinaryPattern::from_linear_indices(n2, s2).expect("l2 indices in range");
    debug_assert_eq!(left.kron(&right), *a, "factor recovery must reproduce A");
    Ok(Some(Length2Factorization { left, right }))
}

/// All length-2 factorizations of `a`, one per compatible pair that
/// succeeds, ordered by left size.
///
/// Pairs are tested in parallel; the output order is canonical regardless
/// of the schedule. Empty for prime patterns (in particular whenever the
/// size is prime).
pub fn all_length2(a: &BinaryPattern) -> Result<Vec<Length2Factorization>> {
    if a.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let pairs = compatible_pairs(a.size());
    let results: Vec<Option<Length2Factorization>> = pairs
        .pairs()
        .par_iter()
        .map(|&(n1, n2)| try_factorize(a, n1, n2).expect("compatible pair is valid"))
        .collect();
    Ok(results.into_iter().flatten().collect())
}

/// A pattern is prime when it admits no length-2 factorization at all.
pub fn is_prime(a: &BinaryPattern) -> Result<bool> {
    Ok(all_length2(a)?.is_empty())
}

/// A pattern is maximal when it factorizes for every compatible pair
/// (which requires at least one to exist).
pub fn is_maximal(a: &BinaryPattern) -> Result<bool> {
    let pair_count = compatible_pairs(a.size()).len();
    Ok(pair_count > 0 && all_length2(a)?.len() == pair_count)
}

/// Recovers `R` from `P = K kron R` by reading the block of `P` that sits
/// at the first entry of `K`, then verifies the product.
pub fn extract_right_factor(p: &BinaryPattern, k: &BinaryPattern, r: u64) -> Result<BinaryPattern> {
    if k.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if r < 1 || k.size().checked_mul(r) != Some(p.size()) {
        return Err(Error::domain(format!(
            "block size {r} is incompatible with sizes {} and {}",
            p.size(),
            k.size()
        )));
    }
    let anchor = k.coordinates().next().expect("k is nonempty");
    let row_base = (anchor.row - 1) * r;
    let col_base = (anchor.col - 1) * r;
    let block = p
        .coordinates()
        .filter(|c| {
            c.row > row_base && c.row <= row_base + r && c.col > col_base && c.col <= col_base + r
        })
        .map(|c| (c.row - row_base, c.col - col_base));
    let result = BinaryPattern::from_coordinates(r, block)?;
    if k.kron(&result) != *p {
        return Err(Error::Consistency(
            "pattern is not the Kronecker product of the given left factor".into(),
        ));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Coordinate;

    fn diag_pattern() -> BinaryPattern {
        BinaryPattern::from_coordinates(4, [(1, 1), (2, 2), (3, 3)]).unwrap()
    }

    fn modified_pattern() -> BinaryPattern {
        BinaryPattern::from_coordinates(4, [(1, 1), (2, 1), (2, 2)]).unwrap()
    }

    #[test]
    fn rearranged_support_of_diag_pattern() {
        let s = rearranged_support(&diag_pattern(), 2, 2).unwrap();
        assert_eq!(s.pairs(), &[(1, 1), (1, 4), (4, 1)]);
    }

    #[test]
    fn rearranged_support_of_modified_pattern() {
        let s = rearranged_support(&modified_pattern(), 2, 2).unwrap();
        assert_eq!(s.pairs(), &[(1, 1), (1, 2), (1, 4)]);
    }

    #[test]
    fn rearranged_support_of_basis_pattern() {
        for (n1, n2) in [(2, 6), (3, 4), (4, 3), (6, 2)] {
            let e = BinaryPattern::basis(12, 1, 1).unwrap();
            let s = rearranged_support(&e, n1, n2).unwrap();
            assert_eq!(s.pairs(), &[(1, 1)]);
        }
    }

    #[test]
    fn rearranged_support_rejects_bad_input() {
        assert!(matches!(
            rearranged_support(&diag_pattern(), 3, 2),
            Err(Error::Domain(_))
        ));
        let empty = BinaryPattern::empty(4).unwrap();
        assert!(matches!(
            rearranged_support(&empty, 2, 2),
            Err(Error::EmptyPattern)
        ));
    }

    #[test]
    fn diag_pattern_is_not_factorizable() {
        assert!(try_factorize(&diag_pattern(), 2, 2).unwrap().is_none());
    }

    #[test]
    fn modified_pattern_factorizes() {
        let f = try_factorize(&modified_pattern(), 2, 2).unwrap().unwrap();
        assert_eq!(
            f.left(),
            &BinaryPattern::from_coordinates(2, [(1, 1)]).unwrap()
        );
        assert_eq!(
            f.right(),
            &BinaryPattern::from_coordinates(2, [(1, 1), (2, 1), (2, 2)]).unwrap()
        );
    }

    #[test]
    fn factorization_recovers_generating_factors() {
        let x = BinaryPattern::from_coordinates(3, [(1, 1), (2, 3), (3, 2), (1, 3)]).unwrap();
        let y = BinaryPattern::from_coordinates(4, [(1, 2), (4, 4), (2, 1)]).unwrap();
        let f = try_factorize(&x.kron(&y), 3, 4).unwrap().unwrap();
        assert_eq!(f.left(), &x);
        assert_eq!(f.right(), &y);
    }

    #[test]
    fn trivial_pairs_are_rejected() {
        let a = BinaryPattern::identity(4).unwrap();
        assert!(try_factorize(&a, 1, 4).is_err());
        assert!(try_factorize(&a, 4, 1).is_err());
    }

    #[test]
    fn all_length2_left_sizes() {
        // Second 12x12 example: E11(3) kron {(1,1),(4,1)}.
        let x = BinaryPattern::basis(3, 1, 1).unwrap();
        let y = BinaryPattern::from_coordinates(4, [(1, 1), (4, 1)]).unwrap();
        let f = all_length2(&x.kron(&y)).unwrap();
        let lefts: Vec<u64> = f.iter().map(|t| t.pair().0).collect();
        assert_eq!(lefts, vec![2, 3, 4]);
    }

    #[test]
    fn all_length2_on_prime_size() {
        let a = BinaryPattern::identity(13).unwrap();
        assert!(all_length2(&a).unwrap().is_empty());
        assert!(is_prime(&a).unwrap());
        assert!(!is_maximal(&a).unwrap());
    }

    #[test]
    fn all_length2_rejects_empty() {
        let empty = BinaryPattern::empty(12).unwrap();
        assert!(matches!(all_length2(&empty), Err(Error::EmptyPattern)));
    }

    #[test]
    fn identity_and_ones_are_maximal() {
        assert!(is_maximal(&BinaryPattern::identity(12).unwrap()).unwrap());
        assert!(is_maximal(&BinaryPattern::ones(6).unwrap()).unwrap());
    }

    #[test]
    fn diag_pattern_is_prime() {
        assert!(is_prime(&diag_pattern()).unwrap());
    }

    #[test]
    fn decomposable_basis_patterns_are_maximal() {
        for n in (4..=36u64).filter(|n| !crate::numtheory::compatible_pairs(*n).is_empty()) {
            for i in 1..=n {
                for j in 1..=n {
                    let e = BinaryPattern::basis(n, i, j).unwrap();
                    assert!(is_maximal(&e).unwrap(), "E_({i},{j}) of size {n}");
                }
            }
        }
    }

    #[test]
    fn extract_right_factor_examples() {
        let k = BinaryPattern::basis(2, 1, 1).unwrap();
        let y = BinaryPattern::from_coordinates(3, [(1, 2), (3, 3), (2, 1)]).unwrap();
        assert_eq!(extract_right_factor(&k.kron(&y), &k, 3).unwrap(), y);

        // Modified 4x4 example: left factor {(1,1)}, right read from block.
        let p = modified_pattern();
        let r = extract_right_factor(&p, &k, 2).unwrap();
        assert_eq!(
            r,
            BinaryPattern::from_coordinates(2, [(1, 1), (2, 1), (2, 2)]).unwrap()
        );

        let ones = BinaryPattern::ones(3).unwrap();
        let kk = BinaryPattern::from_coordinates(2, [(1, 2), (2, 1)]).unwrap();
        assert_eq!(extract_right_factor(&kk.kron(&ones), &kk, 3).unwrap(), ones);
    }

    #[test]
    fn extract_right_factor_detects_inconsistency() {
        let k = BinaryPattern::basis(2, 1, 1).unwrap();
        // Not a Kronecker product with left factor k: extra entry outside
        // the anchored block.
        let p = BinaryPattern::from_coordinates(4, [(1, 1), (2, 1), (4, 4)]).unwrap();
        assert!(matches!(
            extract_right_factor(&p, &k, 2),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn soundness_on_random_products() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let n1 = rng.gen_range(2..=5u64);
            let n2 = rng.gen_range(2..=5u64);
            let x = random_pattern(&mut rng, n1);
            let y = random_pattern(&mut rng, n2);
            let a = x.kron(&y);
            let f = try_factorize(&a, n1, n2).unwrap().unwrap();
            assert_eq!(f.left().kron(f.right()), a);
            assert_eq!(f.left(), &x);
            assert_eq!(f.right(), &y);
        }
    }

    fn random_pattern(rng: &mut impl rand::Rng, n: u64) -> BinaryPattern {
        loop {
            let coords: Vec<Coordinate> = (1..=n)
                .flat_map(|i| (1..=n).map(move |j| Coordinate::new(i, j)))
                .filter(|_| rng.gen_bool(0.4))
                .collect();
            if !coords.is_empty() {
                return BinaryPattern::from_coordinates(n, coords).unwrap();
            }
        }
    }
}
