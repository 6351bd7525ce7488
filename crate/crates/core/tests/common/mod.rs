#![allow(dead_code)]

use cluster_core::Quiver;

/// Builds a quiver from 1-based `(source, target)` simple arrows.
pub fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    let a: Vec<_> = arrows.iter().map(|&(s, t)| (s - 1, t - 1, 1)).collect();
    Quiver::from_arrows(n, &a).unwrap()
}

/// Oriented triangle `2 -> 1 -> 3 -> 2`.
pub fn triangle() -> Quiver {
    quiver(3, &[(2, 1), (1, 3), (3, 2)])
}

/// Six vertices glued from four oriented triangles.
pub fn four_triangles() -> Quiver {
    quiver(6, &[(2, 1), (1, 3), (3, 2), (4, 2), (2, 5), (5, 3), (3, 6), (5, 4), (6, 5)])
}

/// Ten vertices glued from nine oriented triangles; mutation-finite but
/// never acyclic.
pub fn nine_triangles() -> Quiver {
    quiver(
        10,
        &[
            (2, 1), (1, 3), (3, 2), (4, 2), (2, 5), (5, 3), (3, 6), (5, 4), (7, 4),
            (4, 8), (6, 5), (8, 5), (5, 9), (9, 6), (6, 10), (8, 7), (9, 8), (10, 9),
        ],
    )
}

/// A member of the class of [`nine_triangles`] with a single oriented cycle.
pub fn nine_triangles_sparse_member() -> Quiver {
    quiver(10, &[(10, 1), (9, 2), (3, 4), (4, 6), (9, 4), (5, 7), (10, 5), (6, 7), (7, 8), (8, 9)])
}

pub fn a3_linear() -> Quiver {
    quiver(3, &[(1, 2), (2, 3)])
}

pub mod strategies {
    use cluster_core::{LaurentPoly, Quiver};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    /// Random quivers on `1..=max_n` vertices with multiplicities up to `max_mult`.
    pub fn quiver(max_n: usize, max_mult: i64) -> impl Strategy<Value = Quiver> {
        (1..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec(-max_mult..=max_mult, n * (n - 1) / 2).prop_map(move |upper| {
                let mut b = vec![0i64; n * n];
                let mut it = upper.into_iter();
                for i in 0..n {
                    for j in i + 1..n {
                        let x = it.next().unwrap();
                        b[i * n + j] = x;
                        b[j * n + i] = -x;
                    }
                }
                Quiver::from_matrix(n, b).unwrap()
            })
        })
    }

    /// A quiver together with a vertex and a permutation of its vertices.
    pub fn quiver_vertex_perm(max_n: usize, max_mult: i64) -> impl Strategy<Value = (Quiver, usize, Vec<usize>)> {
        quiver(max_n, max_mult).prop_flat_map(|q| {
            let n = q.n();
            (Just(q), 0..n, Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    }

    pub fn laurent(nvars: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((proptest::collection::vec(-3i32..=3, nvars), -6i64..=6), 0..=max_terms)
            .prop_map(move |ts| LaurentPoly::from_terms(nvars, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
    }

    pub fn nonzero_laurent(nvars: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
        laurent(nvars, max_terms).prop_filter("nonzero", |p| !p.is_zero())
    }
}
