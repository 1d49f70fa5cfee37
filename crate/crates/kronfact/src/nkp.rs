//! Nearest-Kronecker-product approximation of real matrices.
//!
//! For fixed sizes `(n1, n2)` the best factors in the Frobenius norm come
//! from the dominant singular triplet of the rearrangement of `B`: the
//! `n1^2 x n2^2` matrix whose `(l1, l2)` entry is the entry of `B` indexed
//! by the coarse/fine split of its position. Longer factorizations are
//! produced by a greedy left-to-right recursion.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Seed for the fallback start vector when power iteration stagnates.
const RESTART_SEED: u64 = 0x5EED;

/// Default power iteration tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default power iteration limit.
pub const DEFAULT_MAXIT: usize = 5000;

/// Result of a nearest-Kronecker-product approximation.
#[derive(Debug, Clone)]
pub struct NkpResult<T> {
    /// Factor matrices, left to right; all share the same Frobenius norm.
    pub factors: Vec<DenseMatrix<T>>,
    /// Factor sizes.
    pub sizes: Vec<u64>,
    /// `||B - kron(factors)||_F`, recomputed from scratch.
    pub frobenius_error: T,
    /// Leading singular value of the first rearrangement.
    pub sigma: T,
}

/// Rearrangement of a square matrix of size `n1 * n2` into an
/// `n1^2 x n2^2` matrix; a bijective reshuffle of the entries, so the
/// Frobenius norm is preserved. `B` is an exact Kronecker product exactly
/// when the result has rank one.
pub fn rearrange<T: Scalar>(b: &DenseMatrix<T>, n1: u64, n2: u64) -> Result<DenseMatrix<T>> {
    let n = (b.rows() as u64, b.cols() as u64);
    if !b.is_square() || n1 * n2 != n.0 {
        return Err(Error::domain(format!(
            "cannot rearrange a {}x{} matrix with pair ({n1}, {n2})",
            b.rows(),
            b.cols()
        )));
    }
    let (n1, n2) = (n1 as usize, n2 as usize);
    let mut out = DenseMatrix::zeros(n1 * n1, n2 * n2);
    for j1 in 0..n1 {
        for i1 in 0..n1 {
            let l1 = j1 * n1 + i1;
            for j2 in 0..n2 {
                for i2 in 0..n2 {
                    let l2 = j2 * n2 + i2;
                    out.set(l1, l2, b.get(i1 * n2 + i2, j1 * n2 + j2));
                }
            }
        }
    }
    Ok(out)
}

fn norm<T: Scalar>(v: &[T]) -> T {
    v.iter()
        .map(|&x| x * x)
        .fold(T::zero(), |a, b| a + b)
        .sqrt()
}

fn normalize<T: Scalar>(v: &mut [T]) -> T {
    let n = norm(v);
    if !n.is_zero() {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
    n
}

/// Dominant singular triplet `(sigma, u, v)` of a nonzero matrix by power
/// iteration on `M^T M`.
///
/// Deterministic: starts from the normalized all-ones vector; if the
/// Rayleigh quotient stagnates while the residual `||M^T u - sigma v||`
/// stays above `tol * sigma`, restarts once from a fixed-seed pseudo-random
/// vector.
pub fn dominant_singular_triplet<T: Scalar>(
    m: &DenseMatrix<T>,
    tol: T,
    maxit: usize,
) -> Result<(T, Vec<T>, Vec<T>)> {
    if m.is_zero() {
        return Err(Error::domain(
            "dominant singular triplet requires a nonzero matrix",
        ));
    }
    let cols = m.cols();
    let mut v = vec![T::one() / T::from_f64(cols as f64).sqrt(); cols];
    let mut previous_sigma: Option<T> = None;
    let mut restarted = false;
    let mut last = (T::zero(), T::infinity());

    for it in 0..maxit {
        let mut u = m.matvec(&v);
        let sigma = normalize(&mut u);
        if sigma.is_zero() {
            // Start vector in the null space; retry from the seeded vector.
            if restarted {
                return Err(non_convergence(it, T::zero(), T::infinity()));
            }
            v = seeded_vector(cols);
            restarted = true;
            previous_sigma = None;
            continue;
        }
        let z = m.matvec_transposed(&u);
        let residual = norm(
            &z.iter()
                .zip(&v)
                .map(|(&zi, &vi)| zi - sigma * vi)
                .collect::<Vec<T>>(),
        );
        last = (sigma, residual / sigma);
        if residual <= tol * sigma {
            return Ok((sigma, u, v));
        }
        let stagnated = previous_sigma
            .map(|p| (sigma - p).abs() < tol * sigma)
            .unwrap_or(false);
        if stagnated && !restarted {
            v = seeded_vector(cols);
            restarted = true;
            previous_sigma = None;
            continue;
        }
        previous_sigma = Some(sigma);
        v = z;
        normalize(&mut v);
    }
    Err(non_convergence(maxit, last.0, last.1))
}

fn non_convergence<T: Scalar>(iterations: usize, sigma: T, residual: T) -> Error {
    Error::NonConvergence {
        iterations,
        sigma: sigma.to_f64().unwrap_or(f64::NAN),
        residual: residual.to_f64().unwrap_or(f64::NAN),
    }
}

fn seeded_vector<T: Scalar>(len: usize) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(RESTART_SEED);
    let mut v: Vec<T> = (0..len)
        .map(|_| T::from_f64(rng.gen_range(-1.0..1.0)))
        .collect();
    normalize(&mut v);
    v
}

/// Best rank-one Kronecker approximation `B ~ B1 kron B2` for the fixed
/// pair `(n1, n2)`.
pub fn nkp2<T: Scalar>(
    b: &DenseMatrix<T>,
    n1: u64,
    n2: u64,
    tol: T,
    maxit: usize,
) -> Result<NkpResult<T>> {
    if b.is_zero() {
        return Err(Error::domain("cannot approximate the zero matrix"));
    }
    let r = rearrange(b, n1, n2)?;
    let (sigma, u, v) = dominant_singular_triplet(&r, tol, maxit)?;
    let scale = sigma.sqrt();
    let left = DenseMatrix::from_fn(n1 as usize, n1 as usize, |i, j| {
        u[j * n1 as usize + i] * scale
    });
    let right = DenseMatrix::from_fn(n2 as usize, n2 as usize, |i, j| {
        v[j * n2 as usize + i] * scale
    });
    let factors = vec![left, right];
    let frobenius_error = frobenius_error(b, &factors)?;
    Ok(NkpResult {
        factors,
        sizes: vec![n1, n2],
        frobenius_error,
        sigma,
    })
}

/// Greedy multi-factor approximation: split off the leftmost factor with
/// [`nkp2`], then recurse on the right factor. Factor norms are balanced so
/// every factor has the same Frobenius norm; the reported error is
/// recomputed from the full product.
pub fn nkp_multi<T: Scalar>(
    b: &DenseMatrix<T>,
    sizes: &[u64],
    tol: T,
    maxit: usize,
) -> Result<NkpResult<T>> {
    if sizes.len() < 2 {
        return Err(Error::domain("nkp_multi requires at least two sizes"));
    }
    if sizes.iter().any(|&s| s < 1) {
        return Err(Error::domain("factor sizes must be positive"));
    }
    let product = sizes.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s));
    if !b.is_square() || product != Some(b.rows() as u64) {
        return Err(Error::domain(format!(
            "sizes {sizes:?} do not multiply to the matrix size {}",
            b.rows()
        )));
    }

    let mut factors = Vec::with_capacity(sizes.len());
    let mut current = b.clone();
    let mut sigma = T::zero();
    for (k, &n1) in sizes[..sizes.len() - 1].iter().enumerate() {
        let n2: u64 = sizes[k + 1..].iter().product();
        let step = nkp2(&current, n1, n2, tol, maxit)?;
        if k == 0 {
            sigma = step.sigma;
        }
        let mut step_factors = step.factors.into_iter();
        factors.push(step_factors.next().expect("nkp2 returns two factors"));
        current = step_factors.next().expect("nkp2 returns two factors");
    }
    factors.push(current);

    balance_norms(&mut factors);
    let frobenius_error = frobenius_error(b, &factors)?;
    Ok(NkpResult {
        factors,
        sizes: sizes.to_vec(),
        frobenius_error,
        sigma,
    })
}

/// Rescales the factors so they all share the same Frobenius norm while the
/// overall product is unchanged; fixes the scaling indeterminacy
/// `X kron Y = (aX) kron (Y/a)`.
fn balance_norms<T: Scalar>(factors: &mut [DenseMatrix<T>]) {
    let norms: Vec<T> = factors.iter().map(|f| f.frobenius_norm()).collect();
    if norms.iter().any(|n| n.is_zero()) {
        return;
    }
    let count = factors.len() as i32;
    let product = norms.iter().fold(T::one(), |a, &b| a * b);
    let target = product.powf(T::one() / T::from_f64(count as f64));
    for (f, &n) in factors.iter_mut().zip(&norms) {
        *f = f.scale(target / n);
    }
}

/// Exact Frobenius error `||B - kron(factors)||_F`, streaming the Kronecker
/// product entry by entry without materializing it.
pub fn frobenius_error<T: Scalar>(b: &DenseMatrix<T>, factors: &[DenseMatrix<T>]) -> Result<T> {
    if factors.is_empty() {
        return Err(Error::domain("at least one factor is required"));
    }
    if factors.iter().any(|f| !f.is_square()) {
        return Err(Error::domain("factors must be square"));
    }
    let product: usize = factors.iter().map(|f| f.rows()).product();
    if !b.is_square() || product != b.rows() {
        return Err(Error::domain(format!(
            "factor sizes do not multiply to the matrix size {}",
            b.rows()
        )));
    }
    let n = b.rows();
    // Mixed-radix strides: position p decomposes as p = sum d_k * stride_k
    // with d_k < size_k, digit 0 belonging to the leftmost factor.
    let dims: Vec<usize> = factors.iter().map(|f| f.rows()).collect();
    let mut sum = T::zero();
    let mut row_digits = vec![0usize; dims.len()];
    let mut col_digits = vec![0usize; dims.len()];
    for j in 0..n {
        digits(j, &dims, &mut col_digits);
        for i in 0..n {
            digits(i, &dims, &mut row_digits);
            let mut k = T::one();
            for (f, (&di, &dj)) in factors.iter().zip(row_digits.iter().zip(&col_digits)) {
                k *= f.get(di, dj);
                if k.is_zero() {
                    break;
                }
            }
            let d = b.get(i, j) - k;
            sum += d * d;
        }
    }
    Ok(sum.sqrt())
}

fn digits(mut p: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = p % d;
        p /= d;
    }
    let _ = p;
}
