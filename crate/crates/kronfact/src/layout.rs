//! Radial layout for Kronecker graph vertices.
//!
//! Vertices of a graph whose adjacency pattern factorizes as
//! `A_1 kron ... kron A_d` are identified with multi-indices
//! `(k_1, ..., k_d)`. Each level `j` places `n_j` points uniformly on a
//! circle of radius `r_j`; the position of a vertex is built bottom-up by
//! rotating and translating the sub-layout of the deeper levels onto each
//! circle point, so sibling clusters are congruent copies of one another.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::pattern::BinaryPattern;
use crate::scalar::Scalar;

/// Ratio between consecutive default radii; keeps sibling clusters visually
/// disjoint for factor sizes up to about 8.
pub const DEFAULT_RADIUS_RATIO: f64 = 0.35;

/// Layout parameters: factor sizes, per-level radii and the rotation phase
/// shift.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutConfig<T> {
    sizes: Vec<u64>,
    radii: Vec<T>,
    shift: T,
}

impl<T: Scalar> LayoutConfig<T> {
    /// Validated config; radii must be positive and strictly decreasing,
    /// one per size.
    pub fn new(sizes: Vec<u64>, radii: Vec<T>, shift: T) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::domain("layout requires at least one size"));
        }
        if sizes.iter().any(|&s| s < 1) {
            return Err(Error::domain("layout sizes must be positive"));
        }
        if radii.len() != sizes.len() {
            return Err(Error::domain(format!(
                "expected {} radii, got {}",
                sizes.len(),
                radii.len()
            )));
        }
        if radii.iter().any(|r| !r.is_finite() || *r <= T::zero()) {
            return Err(Error::domain("radii must be positive and finite"));
        }
        if radii.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::domain("radii must be strictly decreasing"));
        }
        Ok(LayoutConfig {
            sizes,
            radii,
            shift,
        })
    }

    /// Config with the default geometric radii `1, 0.35, 0.35^2, ...` and
    /// the default shift of `pi / 2`.
    pub fn with_default_radii(sizes: Vec<u64>) -> Result<Self> {
        let ratio = T::from_f64(DEFAULT_RADIUS_RATIO);
        let mut r = T::one();
        let radii = sizes
            .iter()
            .map(|_| {
                let current = r;
                r *= ratio;
                current
            })
            .collect();
        Self::new(sizes, radii, T::from_f64(std::f64::consts::FRAC_PI_2))
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn shift(&self) -> T {
        self.shift
    }
}

/// Computed positions, one per vertex, in Kronecker row order (the first
/// index of the multi-index is the most significant digit).
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutResult<T> {
    sizes: Vec<u64>,
    positions: Vec<(T, T)>,
    min_spacing: T,
}

impl<T: Scalar> LayoutResult<T> {
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// `(x, y)` per vertex, indexed by row index minus one.
    pub fn positions(&self) -> &[(T, T)] {
        &self.positions
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    /// Distance between neighboring vertices at the deepest non-trivial
    /// level; a natural scale for vertex markers.
    pub fn min_spacing(&self) -> T {
        self.min_spacing
    }

    /// Position of the vertex with the given 1-based multi-index.
    pub fn position_of(&self, index: &[u64]) -> Result<(T, T)> {
        let row = vertex_row_index(index, &self.sizes)?;
        Ok(self.positions[(row - 1) as usize])
    }
}

/// Points `r * exp(2 pi i (k-1) / n)` for `k = 1..n`.
pub fn circle_points<T: Scalar>(n: u64, r: T) -> Vec<Complex<T>> {
    let tau = T::from_f64(std::f64::consts::TAU);
    (0..n)
        .map(|k| {
            let angle = tau * T::from_f64(k as f64) / T::from_f64(n as f64);
            Complex::from_polar(r, angle)
        })
        .collect()
}

/// Runs the layout recursion for the given config. Fully deterministic.
pub fn layout_positions<T: Scalar>(config: &LayoutConfig<T>) -> LayoutResult<T> {
    let sizes = config.sizes();
    let radii = config.radii();
    let depth = sizes.len();

    // Deepest level: plain circle points.
    let mut positions = circle_points(sizes[depth - 1], radii[depth - 1]);
    // Walk upward, rotating and translating the accumulated sub-layout onto
    // every circle point of the current level.
    for j in (0..depth - 1).rev() {
        let points = circle_points(sizes[j], radii[j]);
        let mut next = Vec::with_capacity(points.len() * positions.len());
        for z in &points {
            let rotation = Complex::from_polar(T::one(), z.arg() + config.shift());
            for g in &positions {
                next.push(z + rotation * g);
            }
        }
        positions = next;
    }

    LayoutResult {
        sizes: sizes.to_vec(),
        positions: positions.iter().map(|p| (p.re, p.im)).collect(),
        min_spacing: deepest_spacing(sizes, radii),
    }
}

fn deepest_spacing<T: Scalar>(sizes: &[u64], radii: &[T]) -> T {
    let two = T::from_f64(2.0);
    for (&n, &r) in sizes.iter().zip(radii).rev() {
        if n >= 2 {
            let angle = T::from_f64(std::f64::consts::PI) / T::from_f64(n as f64);
            return two * r * angle.sin();
        }
    }
    two * *radii.last().expect("config has at least one level")
}

/// Kronecker row index of a 1-based multi-index:
/// `1 + sum (k_i - 1) * prod_{j > i} n_j`. The adjacency entry `(u, v)`
/// connects the vertices whose multi-indices map to `u` and `v`.
pub fn vertex_row_index(index: &[u64], sizes: &[u64]) -> Result<u64> {
    if index.len() != sizes.len() {
        return Err(Error::domain(format!(
            "multi-index length {} does not match {} sizes",
            index.len(),
            sizes.len()
        )));
    }
    let mut row = 0u64;
    for (&k, &n) in index.iter().zip(sizes) {
        if k < 1 || k > n {
            return Err(Error::domain(format!(
                "multi-index component {k} out of range 1..={n}"
            )));
        }
        row = row * n + (k - 1);
    }
    Ok(row + 1)
}

/// Inverse of [`vertex_row_index`].
pub fn vertex_multi_index(row: u64, sizes: &[u64]) -> Result<Vec<u64>> {
    let total: u64 = sizes.iter().product();
    if row < 1 || row > total {
        return Err(Error::domain(format!(
            "row index {row} out of range 1..={total}"
        )));
    }
    let mut rest = row - 1;
    let mut index = vec![0u64; sizes.len()];
    for (slot, &n) in index.iter_mut().zip(sizes).rev() {
        *slot = rest % n + 1;
        rest /= n;
    }
    Ok(index)
}

/// Line segment between two vertex positions; `self_loop` marks degenerate
/// segments so renderers can draw them as loops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSegment<T> {
    pub from: (T, T),
    pub to: (T, T),
    pub self_loop: bool,
}

/// One segment per nonzero `(u, v)` of the adjacency pattern, in pattern
/// order.
pub fn edge_segments<T: Scalar>(
    a: &BinaryPattern,
    layout: &LayoutResult<T>,
) -> Result<Vec<EdgeSegment<T>>> {
    if a.size() != layout.vertex_count() as u64 {
        return Err(Error::domain(format!(
            "pattern size {} does not match the {}-vertex layout",
            a.size(),
            layout.vertex_count()
        )));
    }
    Ok(a.coordinates()
        .map(|c| EdgeSegment {
            from: layout.positions[(c.row - 1) as usize],
            to: layout.positions[(c.col - 1) as usize],
            self_loop: c.row == c.col,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(sizes: &[u64]) -> LayoutConfig<f64> {
        LayoutConfig::with_default_radii(sizes.to_vec()).unwrap()
    }

    #[test]
    fn circle_points_examples() {
        let one = circle_points::<f64>(1, 1.0);
        assert_eq!(one.len(), 1);
        assert!((one[0].re - 1.0).abs() < 1e-15 && one[0].im.abs() < 1e-15);

        let four = circle_points::<f64>(4, 1.0);
        let expected = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (p, (x, y)) in four.iter().zip(expected) {
            assert!((p.re - x).abs() < 1e-12 && (p.im - y).abs() < 1e-12);
        }

        let three = circle_points::<f64>(3, 0.5);
        for (k, p) in three.iter().enumerate() {
            assert!((p.norm() - 0.5).abs() < 1e-12);
            let angle = (k as f64) * 2.0 * std::f64::consts::PI / 3.0;
            assert!((p.arg().rem_euclid(std::f64::consts::TAU) - angle).abs() < 1e-12);
        }
    }

    #[test]
    fn single_level_layout_is_circle() {
        let result = layout_positions(&config(&[4]));
        let expected = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (p, (x, y)) in result.positions().iter().zip(expected) {
            assert!((p.0 - x).abs() < 1e-12 && (p.1 - y).abs() < 1e-12);
        }
    }

    #[test]
    fn cluster_centroids_sit_near_top_circle() {
        let result = layout_positions(&config(&[4, 3, 2]));
        assert_eq!(result.vertex_count(), 24);
        let roots = circle_points::<f64>(4, 1.0);
        for (c, root) in result.positions().chunks(6).zip(&roots) {
            let cx = c.iter().map(|p| p.0).sum::<f64>() / 6.0;
            let cy = c.iter().map(|p| p.1).sum::<f64>() / 6.0;
            let dist = ((cx - root.re).powi(2) + (cy - root.im).powi(2)).sqrt();
            assert!(dist < 0.2, "centroid {dist} from its root");
        }
    }

    #[test]
    fn sub_layout_is_rotated_translated_copy() {
        let cfg = config(&[3, 4]);
        let result = layout_positions(&cfg);
        let sub = layout_positions(
            &LayoutConfig::new(vec![4], vec![cfg.radii()[1]], cfg.shift()).unwrap(),
        );
        let tops = circle_points::<f64>(3, 1.0);
        for (k1, z) in tops.iter().enumerate() {
            let rotation = Complex::from_polar(1.0, z.arg() + cfg.shift());
            for (k2, g) in sub.positions().iter().enumerate() {
                let expected = z + rotation * Complex::new(g.0, g.1);
                let actual = result.positions()[k1 * 4 + k2];
                assert!((actual.0 - expected.re).abs() < 1e-14);
                assert!((actual.1 - expected.im).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn sibling_clusters_are_congruent() {
        let result = layout_positions(&config(&[4, 3, 2]));
        let clusters: Vec<&[(f64, f64)]> = result.positions().chunks(6).collect();
        let reference = clusters[0];
        for cluster in &clusters[1..] {
            for i in 0..6 {
                for j in 0..6 {
                    let d0 = dist(reference[i], reference[j]);
                    let d1 = dist(cluster[i], cluster[j]);
                    assert!((d0 - d1).abs() < 1e-10);
                }
            }
        }
    }

    fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
        ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
    }

    #[test]
    fn positions_are_bounded_by_radius_sum() {
        let cfg = config(&[4, 3, 2]);
        let bound: f64 = cfg.radii().iter().sum();
        let result = layout_positions(&cfg);
        for p in result.positions() {
            assert!((p.0 * p.0 + p.1 * p.1).sqrt() <= bound + 1e-12);
        }
    }

    #[test]
    fn layout_is_deterministic() {
        let a = layout_positions(&config(&[4, 3, 2]));
        let b = layout_positions(&config(&[4, 3, 2]));
        assert_eq!(a, b);
    }

    #[test]
    fn vertex_row_index_examples() {
        assert_eq!(vertex_row_index(&[1, 1, 1], &[4, 3, 2]).unwrap(), 1);
        assert_eq!(vertex_row_index(&[4, 3, 2], &[4, 3, 2]).unwrap(), 24);
        assert_eq!(vertex_row_index(&[2, 1, 1], &[4, 3, 2]).unwrap(), 7);
        assert!(vertex_row_index(&[5, 1, 1], &[4, 3, 2]).is_err());
        assert!(vertex_row_index(&[1, 1], &[4, 3, 2]).is_err());
    }

    #[test]
    fn vertex_indices_roundtrip() {
        let sizes = [4u64, 3, 2];
        let result = layout_positions(&config(&sizes));
        for row in 1..=24 {
            let idx = vertex_multi_index(row, &sizes).unwrap();
            assert_eq!(vertex_row_index(&idx, &sizes).unwrap(), row);
            assert_eq!(
                result.position_of(&idx).unwrap(),
                result.positions()[(row - 1) as usize]
            );
        }
        assert!(vertex_multi_index(0, &sizes).is_err());
        assert!(vertex_multi_index(25, &sizes).is_err());
    }

    #[test]
    fn edge_segments_counts() {
        let a1 = BinaryPattern::from_coordinates(
            4,
            [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 4)],
        )
        .unwrap();
        let a2 = BinaryPattern::from_coordinates(3, [(1, 1), (2, 1), (2, 2), (3, 3)]).unwrap();
        let a3 = BinaryPattern::from_coordinates(2, [(1, 2), (2, 1)]).unwrap();
        let adjacency = a1.kron(&a2).kron(&a3);
        let layout = layout_positions(&config(&[4, 3, 2]));
        let segments = edge_segments(&adjacency, &layout).unwrap();
        assert_eq!(segments.len(), 56);
        assert!(segments.iter().all(|s| !s.self_loop));
    }

    #[test]
    fn edge_segments_empty_and_self_loops() {
        let layout = layout_positions(&config(&[3, 2]));
        let empty = BinaryPattern::empty(6).unwrap();
        assert!(edge_segments(&empty, &layout).unwrap().is_empty());

        let eye = BinaryPattern::identity(6).unwrap();
        let segments = edge_segments(&eye, &layout).unwrap();
        assert_eq!(segments.len(), 6);
        assert!(segments.iter().all(|s| s.self_loop));
    }

    #[test]
    fn edge_segments_rejects_size_mismatch() {
        let layout = layout_positions(&config(&[3, 2]));
        let a = BinaryPattern::identity(4).unwrap();
        assert!(edge_segments(&a, &layout).is_err());
    }

    #[test]
    fn layout_works_in_f32() {
        let cfg = LayoutConfig::<f32>::with_default_radii(vec![3, 2]).unwrap();
        let result = layout_positions(&cfg);
        assert_eq!(result.vertex_count(), 6);
        assert!(result.min_spacing() > 0.0);
    }
}
