//! Seeded fixture generators for tests and the `gen` subcommand.
//!
//! Everything here is deterministic given the seed; the default seed is 0.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::pattern::{kron_all, BinaryPattern};
use crate::scalar::Scalar;

/// Default seed used by the CLI when none is given.
pub const DEFAULT_SEED: u64 = 0;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pattern with each cell present independently with probability `density`.
/// May be empty.
pub fn random_pattern(n: u64, density: f64, rng: &mut impl Rng) -> Result<BinaryPattern> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::domain(format!("density {density} outside [0, 1]")));
    }
    let entries = (1..=n * n).filter(|_| rng.gen_bool(density)).collect();
    BinaryPattern::from_linear_indices(n, entries)
}

/// Like [`random_pattern`] but redraws until at least one entry is present.
pub fn random_nonempty_pattern(n: u64, density: f64, rng: &mut impl Rng) -> Result<BinaryPattern> {
    if density <= 0.0 {
        return Err(Error::domain("density must be positive"));
    }
    loop {
        let p = random_pattern(n, density, rng)?;
        if !p.is_empty() {
            return Ok(p);
        }
    }
}

/// Kronecker product of independently drawn nonempty random patterns with
/// the given sizes.
pub fn random_kron_pattern(
    sizes: &[u64],
    density: f64,
    rng: &mut impl Rng,
) -> Result<BinaryPattern> {
    if sizes.is_empty() {
        return Err(Error::domain("at least one factor size is required"));
    }
    let factors = sizes
        .iter()
        .map(|&n| random_nonempty_pattern(n, density, rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(kron_all(&factors))
}

/// Dense matrix with entries uniform in `[-1, 1)`.
pub fn random_dense<T: Scalar>(rows: usize, cols: usize, rng: &mut impl Rng) -> DenseMatrix<T> {
    DenseMatrix::from_fn(rows, cols, |_, _| T::from_f64(rng.gen_range(-1.0..1.0)))
}

/// Dense matrix with uniform `[-1, 1)` values on the pattern's entries and
/// zero elsewhere. Values are assigned in pattern (column-major) order.
pub fn random_values_on_pattern<T: Scalar>(
    pattern: &BinaryPattern,
    rng: &mut impl Rng,
) -> DenseMatrix<T> {
    let n = pattern.size() as usize;
    let mut m = DenseMatrix::zeros(n, n);
    for c in pattern.coordinates() {
        m.set(
            (c.row - 1) as usize,
            (c.col - 1) as usize,
            T::from_f64(rng.gen_range(-1.0..1.0)),
        );
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_pattern(6, 0.5, &mut seeded_rng(7)).unwrap();
        let b = random_pattern(6, 0.5, &mut seeded_rng(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_kron_pattern_has_multiplicative_nnz() {
        let mut rng = seeded_rng(3);
        let p = random_kron_pattern(&[3, 4], 0.5, &mut rng).unwrap();
        assert_eq!(p.size(), 12);
        assert!(p.nnz() > 0);
    }

    #[test]
    fn density_bounds_are_checked() {
        let mut rng = seeded_rng(0);
        assert!(random_pattern(4, 1.5, &mut rng).is_err());
        assert!(random_nonempty_pattern(4, 0.0, &mut rng).is_err());
    }

    #[test]
    fn values_on_pattern_match_support() {
        let mut rng = seeded_rng(11);
        let p = random_nonempty_pattern(5, 0.4, &mut rng).unwrap();
        let m: DenseMatrix<f64> = random_values_on_pattern(&p, &mut rng);
        assert_eq!(m.sparsity_pattern().unwrap(), p);
    }
}
