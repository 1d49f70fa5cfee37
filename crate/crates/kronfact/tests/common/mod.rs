//! Shared fixtures and oracles for the integration and acceptance tests.
#![allow(dead_code)]

use kronfact::pattern::kron_all;
use kronfact::{BinaryPattern, DenseMatrix};

/// 12x12 maximal pattern admitting the (2,2,3), (2,3,2) and (3,2,2)
/// factorizations:
/// `[[1,1],[0,0]] kron [[1,1],[0,0]] kron [[1,1,1],[0,0,0],[1,1,1]]`.
pub fn maximal_12() -> BinaryPattern {
    let top_row_2 = BinaryPattern::from_coordinates(2, [(1, 1), (1, 2)]).unwrap();
    let rows_1_3 =
        BinaryPattern::from_coordinates(3, [(1, 1), (1, 2), (1, 3), (3, 1), (3, 2), (3, 3)])
            .unwrap();
    top_row_2.kron(&top_row_2).kron(&rows_1_3)
}

/// The factors of [`maximal_12`] in its (2,2,3) factorization.
pub fn maximal_12_factors() -> Vec<BinaryPattern> {
    let top_row_2 = BinaryPattern::from_coordinates(2, [(1, 1), (1, 2)]).unwrap();
    let rows_1_3 =
        BinaryPattern::from_coordinates(3, [(1, 1), (1, 2), (1, 3), (3, 1), (3, 2), (3, 3)])
            .unwrap();
    vec![top_row_2.clone(), top_row_2, rows_1_3]
}

/// 12x12 pattern with prime factorizations of different lengths, (3,4) and
/// (2,2,3): `E11(3) kron [[1,0,0,0],[0,...],[0,...],[1,0,0,0]]`.
pub fn two_lengths_12() -> BinaryPattern {
    let e11 = BinaryPattern::basis(3, 1, 1).unwrap();
    let corner_4 = BinaryPattern::from_coordinates(4, [(1, 1), (4, 1)]).unwrap();
    e11.kron(&corner_4)
}

/// The 6x6 maximal pattern `[[1,0],[1,0]] kron [[1,0,1],[1,0,1],[1,0,1]]`;
/// its Kronecker square has exactly five prime factorizations.
pub fn maximal_6() -> BinaryPattern {
    let col_2 = BinaryPattern::from_coordinates(2, [(1, 1), (2, 1)]).unwrap();
    let cols_1_3 =
        BinaryPattern::from_coordinates(3, [(1, 1), (2, 1), (3, 1), (1, 3), (2, 3), (3, 3)])
            .unwrap();
    col_2.kron(&cols_1_3)
}

/// 4x4 diagonal pattern {(1,1),(2,2),(3,3)}: prime, not (2,2) factorizable.
pub fn diag_4() -> BinaryPattern {
    BinaryPattern::from_coordinates(4, [(1, 1), (2, 2), (3, 3)]).unwrap()
}

/// 4x4 pattern {(1,1),(2,1),(2,2)}: (2,2) factorizable.
pub fn modified_4() -> BinaryPattern {
    BinaryPattern::from_coordinates(4, [(1, 1), (2, 1), (2, 2)]).unwrap()
}

/// The three factor adjacency patterns of the 24-vertex example graph:
/// a 4x4 lower triangle plus an apex, a 3x3 with one off-diagonal link and
/// the 2x2 antidiagonal. `nnz = 7 * 4 * 2 = 56`.
pub fn layout_factors() -> Vec<BinaryPattern> {
    vec![
        BinaryPattern::from_coordinates(
            4,
            [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 4)],
        )
        .unwrap(),
        BinaryPattern::from_coordinates(3, [(1, 1), (2, 1), (2, 2), (3, 3)]).unwrap(),
        BinaryPattern::from_coordinates(2, [(1, 2), (2, 1)]).unwrap(),
    ]
}

pub fn layout_adjacency() -> BinaryPattern {
    kron_all(&layout_factors())
}

/// Singular values by one-sided Jacobi orthogonalization, descending.
/// Independent oracle for the power-iteration path.
pub fn jacobi_singular_values(m: &DenseMatrix<f64>) -> Vec<f64> {
    // Work on the tall orientation so columns outnumber-free rotations.
    let (rows, cols) = (m.rows(), m.cols());
    let (work_rows, work_cols, transposed) = if rows >= cols {
        (rows, cols, false)
    } else {
        (cols, rows, true)
    };
    let mut a: Vec<Vec<f64>> = (0..work_cols)
        .map(|j| {
            (0..work_rows)
                .map(|i| if transposed { m.get(j, i) } else { m.get(i, j) })
                .collect()
        })
        .collect();

    let eps = 1e-14;
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..work_cols {
            for q in (p + 1)..work_cols {
                let (mut app, mut aqq, mut apq) = (0.0, 0.0, 0.0);
                for (vp, vq) in a[p].iter().zip(&a[q]) {
                    app += vp * vp;
                    aqq += vq * vq;
                    apq += vp * vq;
                }
                if apq.abs() <= eps * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (aqq - app) / (2.0 * apq);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (head, tail) = a.split_at_mut(q);
                for (vp, vq) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (op, oq) = (*vp, *vq);
                    *vp = c * op - s * oq;
                    *vq = s * op + c * oq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigmas: Vec<f64> = a
        .iter()
        .map(|col| col.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    sigmas.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sigmas
}
