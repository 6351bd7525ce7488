mod common;

use cluster_core::reptheory::{
    cc_value, count_subreps, euler_form, ext1_cluster_dim, ext1_module_dim, grassmannian_euler_char, hom_dim,
    is_rigid, type_a_objects, verify_cc_bijection, CcObject, Matrix, Representation, RepresentationJson,
};
use cluster_core::{Error, LaurentPoly, Quiver};
use common::quiver;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

/// Rank over Q by plain elimination, kept separate from the library's.
fn oracle_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in c..cols {
                    let d = &f * &m[rank][k];
                    m[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(hom, ext)` from the standard resolution
/// `0 -> Hom(M,N) -> ⊕_i Hom(M_i,N_i) -δ-> ⊕_{a:i->j} Hom(M_i,N_j) -> Ext¹(M,N) -> 0`,
/// with `δ(φ)_a = φ_j M_a - N_a φ_i`.
fn oracle_hom_ext(m: &Representation, n: &Representation) -> (usize, usize) {
    let (dm, dn) = (m.dims(), n.dims());
    let arrows = m.quiver().arrow_list();
    let source: usize = dm.iter().zip(dn).map(|(a, b)| a * b).sum();
    let target: usize = arrows.iter().map(|&(s, t)| dm[s] * dn[t]).sum();
    // columns of δ: images of the elementary φ with a single 1 at (i; r, c)
    let mut columns = Vec::new();
    for i in 0..dm.len() {
        for r in 0..dn[i] {
            for c in 0..dm[i] {
                let mut col = Vec::with_capacity(target);
                for (a, &(s, t)) in arrows.iter().enumerate() {
                    for rr in 0..dn[t] {
                        for cc in 0..dm[s] {
                            let mut x = BigRational::zero();
                            if t == i && rr == r {
                                x += &m.maps()[a][c][cc];
                            }
                            if s == i && cc == c {
                                x -= &n.maps()[a][rr][r];
                            }
                            col.push(x);
                        }
                    }
                }
                columns.push(col);
            }
        }
    }
    let rank = if target == 0 { 0 } else { oracle_rank(columns) };
    (source - rank, target - rank)
}

fn small_acyclic_rep() -> impl Strategy<Value = (Representation, Representation)> {
    let q = (1usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(0i64..=2, n * (n - 1) / 2).prop_map(move |mults| {
            let mut arrows = Vec::new();
            let mut it = mults.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let m = it.next().unwrap();
                    if m > 0 {
                        arrows.push((i, j, m));
                    }
                }
            }
            Quiver::from_arrows(n, &arrows).unwrap()
        })
    });
    q.prop_flat_map(|q| (rep_on(q.clone()), rep_on(q)))
}

fn rep_on(q: Quiver) -> impl Strategy<Value = Representation> {
    let n = q.n();
    proptest::collection::vec(0usize..=2, n).prop_flat_map(move |dims| {
        let arrows = q.arrow_list();
        let shapes: Vec<(usize, usize)> = arrows.iter().map(|&(s, t)| (dims[t], dims[s])).collect();
        let q = q.clone();
        let dims2 = dims.clone();
        shapes
            .into_iter()
            .map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-2i64..=2, c), r))
            .collect::<Vec<_>>()
            .prop_map(move |maps| {
                let maps: Vec<Matrix> = maps
                    .into_iter()
                    .map(|m| m.into_iter().map(|row| row.into_iter().map(|x| BigRational::from_integer(x.into())).collect()).collect())
                    .collect();
                Representation::new(q.clone(), dims2.clone(), maps).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hom_and_ext_match_the_standard_resolution((m, n) in small_acyclic_rep()) {
        let (hom, ext) = oracle_hom_ext(&m, &n);
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom);
        prop_assert_eq!(ext1_module_dim(&m, &n).unwrap(), ext);
        prop_assert_eq!(hom as i64 - ext as i64, euler_form(m.quiver(), m.dims(), n.dims()).unwrap());
    }

    #[test]
    fn cluster_ext_is_symmetric((m, n) in small_acyclic_rep(), i in 0usize..3) {
        let (x, y) = (CcObject::Module(m), CcObject::Module(n));
        prop_assert_eq!(ext1_cluster_dim(&x, &y).unwrap(), ext1_cluster_dim(&y, &x).unwrap());
        let nv = match &x { CcObject::Module(r) => r.quiver().n(), _ => unreachable!() };
        let sp = CcObject::ShiftedProjective(i % nv);
        prop_assert_eq!(ext1_cluster_dim(&x, &sp).unwrap(), ext1_cluster_dim(&sp, &x).unwrap());
    }
}

#[test]
fn oracle_agrees_on_hand_examples() {
    let q = quiver(2, &[(1, 2)]);
    let s = |i| Representation::simple(&q, i).unwrap();
    assert_eq!(oracle_hom_ext(&s(0), &s(1)), (0, 1));
    assert_eq!(oracle_hom_ext(&s(1), &s(0)), (0, 0));
}

#[test]
fn hom_from_projective_is_the_vertex_space() {
    let q = quiver(2, &[(1, 2)]);
    let p1 = Representation::projective(&q, 0).unwrap();
    for (d1, d2) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        let m: Matrix = (0..d2)
            .map(|r| (0..d1).map(|c| BigRational::from_integer(BigInt::from((r * 3 + c * 5) % 7) - 3)).collect())
            .collect();
        let w = Representation::new(q.clone(), vec![d1, d2], vec![m]).unwrap();
        assert_eq!(hom_dim(&p1, &w).unwrap(), d1);
    }
}

#[test]
fn euler_characteristics_at_every_small_prime() {
    let a1 = Quiver::empty(1);
    let plane = Representation::semisimple(&a1, vec![2]).unwrap();
    let a2 = quiver(2, &[(1, 2)]);
    let p1 = Representation::projective(&a2, 0).unwrap();
    for p in [2u64, 3, 5, 7, 11, 13] {
        assert_eq!(count_subreps(&plane, &[0], p).unwrap(), 1);
        assert_eq!(count_subreps(&plane, &[2], p).unwrap(), 1);
        assert_eq!(count_subreps(&plane, &[1], p).unwrap(), p + 1);
        assert_eq!(count_subreps(&p1, &[0, 1], p).unwrap(), 1);
        assert_eq!(count_subreps(&p1, &[1, 0], p).unwrap(), 0);
    }
    assert_eq!(grassmannian_euler_char(&plane, &[1]).unwrap(), BigInt::from(2));
    assert_eq!(grassmannian_euler_char(&p1, &[0, 1]).unwrap(), BigInt::from(1));
    assert_eq!(grassmannian_euler_char(&p1, &[1, 1]).unwrap(), BigInt::from(1));
    // Gr(2, 4): q^4 + q^3 + 2q^2 + q + 1 points, χ = 6
    let four = Representation::semisimple(&a1, vec![4]).unwrap();
    assert_eq!(grassmannian_euler_char(&four, &[2]).unwrap(), BigInt::from(6));
}

#[test]
fn cc_values_have_dimension_vectors_as_denominators() {
    let quivers = [
        quiver(3, &[(1, 2), (2, 3)]),
        quiver(3, &[(2, 1), (2, 3)]),
        quiver(4, &[(1, 2), (3, 2), (3, 4)]),
        quiver(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]),
        quiver(5, &[(2, 1), (2, 3), (4, 3), (4, 5)]),
    ];
    for q in &quivers {
        for x in type_a_objects(q).unwrap() {
            let CcObject::Module(v) = &x else { continue };
            let val = cc_value(q, &x).unwrap();
            assert!(val.is_nonnegative(), "{}", val);
            let dims: Vec<i64> = v.dims().iter().map(|&d| d as i64).collect();
            assert_eq!(val.denominator_vector().unwrap(), dims);
            assert!(is_rigid(&x).unwrap());
        }
    }
}

#[test]
fn a3_linear_values_are_the_printed_variables() {
    let r = verify_cc_bijection(&common::a3_linear()).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.values.len(), 9);
    assert_eq!(r.seeds, 14);
    let values: Vec<LaurentPoly> = r.values.iter().map(|(_, t)| LaurentPoly::parse(3, t).unwrap()).collect();
    assert!(values.contains(&LaurentPoly::parse(3, "(1+x2)/x1").unwrap()));
    assert!(values.contains(&LaurentPoly::parse(3, "(x1+x1*x2+x3+x2*x3)/(x1*x2*x3)").unwrap()));
}

#[test]
fn a5_bijection() {
    let r = verify_cc_bijection(&quiver(5, &[(1, 2), (3, 2), (3, 4), (5, 4)])).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!((r.values.len(), r.seeds), (20, 132));
}

#[test]
fn non_type_a_rejected() {
    let d4 = quiver(4, &[(1, 2), (3, 2), (4, 2)]);
    assert_eq!(verify_cc_bijection(&d4), Err(Error::NotTypeA));
}

#[test]
fn representation_json_round_trip() {
    let q = quiver(3, &[(1, 2), (2, 3)]);
    let v = Representation::projective(&q, 0).unwrap();
    let json = serde_json::to_string(&RepresentationJson::from(&v)).unwrap();
    let back: RepresentationJson = serde_json::from_str(&json).unwrap();
    assert_eq!(Representation::try_from(&back).unwrap(), v);
    let text = r#"{"quiver":{"n":2,"arrows":[[1,2,1]]},"dims":[1,1],"maps":{"0":[["1/2"]]}}"#;
    let half: RepresentationJson = serde_json::from_str(text).unwrap();
    let r = Representation::try_from(&half).unwrap();
    assert_eq!(r.maps()[0][0][0], BigRational::new(1.into(), 2.into()));
}
