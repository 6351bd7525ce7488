mod common;

use cluster_core::quiver::{parse_quiver, serialize_quiver, to_dot};
use cluster_core::seed::{
    classify, collect_cluster_variables, exchange_graph, mutation_class, ClassLimits, SeedJson, Verdict, Witness,
};
use cluster_core::{dynkin_type, Error, LaurentPoly, Quiver, Seed};
use common::{four_triangles, nine_triangles_sparse_member, quiver, triangle};

#[test]
fn quiver_json_is_bit_exact() {
    let q = triangle();
    let text = serialize_quiver(&q);
    assert_eq!(text, r#"{"n":3,"arrows":[[1,3,1],[2,1,1],[3,2,1]]}"#);
    assert_eq!(parse_quiver(&text).unwrap(), q);
    assert!(parse_quiver(r#"{"n":2,"arrows":[[1,1,1]]}"#).is_err());
    assert!(parse_quiver(r#"{"n":2,"arrows":[[1,2,1]],"extra":0}"#).is_err());
    assert!(to_dot(&q).starts_with("digraph quiver {"));
}

#[test]
fn seed_json_round_trip() {
    let s = Seed::initial(&four_triangles()).mutate_sequence(&[4, 2]).unwrap();
    let json = serde_json::to_string(&SeedJson::from(&s)).unwrap();
    let back: SeedJson = serde_json::from_str(&json).unwrap();
    assert_eq!(Seed::try_from(&back).unwrap(), s);
}

#[test]
fn classify_quiver_two_finds_d6() {
    let c = classify(&four_triangles(), ClassLimits::default()).unwrap();
    let Verdict::Finite(t) = &c.verdict else { panic!("{}", c.summary()) };
    assert_eq!(t.to_string(), "D6");
    let Witness::DynkinOrientation { sequence, quiver } = &c.witness else { panic!("{:?}", c.witness) };
    assert_eq!(&four_triangles().mutate_sequence(sequence).unwrap(), quiver);
    assert_eq!(dynkin_type(quiver), Some(*t));
    let printed = four_triangles().mutate_sequence(&[4, 2, 0, 5]).unwrap();
    assert_eq!(dynkin_type(&printed).map(|t| t.to_string()).as_deref(), Some("D6"));
}

#[test]
fn classify_infinite_and_exhausted() {
    let kronecker = Quiver::from_arrows(2, &[(0, 1, 2)]).unwrap();
    assert_eq!(classify(&kronecker, ClassLimits::default()).unwrap().verdict, Verdict::Infinite);
    let c = classify(&nine_triangles_sparse_member(), ClassLimits { max_quivers: 50, early_exit: true }).unwrap();
    assert_eq!(c.verdict, Verdict::DepthExhausted);
    let disconnected = Quiver::empty(2);
    assert_eq!(classify(&disconnected, ClassLimits::default()).unwrap_err(), Error::Disconnected);
}

#[test]
fn small_classes() {
    assert_eq!(mutation_class(&common::a3_linear(), 100, false).unwrap().stats().size, 4);
    assert_eq!(mutation_class(&Quiver::empty(1), 100, false).unwrap().stats().size, 1);
    let member = mutation_class(&nine_triangles_sparse_member(), 100, false).unwrap();
    assert!(member.truncated());
}

#[test]
fn variables_of_a1_and_a2() {
    let (a1, truncated) = collect_cluster_variables(&Quiver::empty(1), 10).unwrap();
    assert!(!truncated);
    let a1: Vec<String> = a1.iter().map(LaurentPoly::to_fraction_string).collect();
    assert_eq!(a1, ["2/x1", "x1"]);
    let (a2, _) = collect_cluster_variables(&quiver(2, &[(1, 2)]), 10).unwrap();
    let want: Vec<LaurentPoly> = ["x1", "x2", "(1+x2)/x1", "(1+x1)/x2", "(1+x1+x2)/(x1*x2)"]
        .iter()
        .map(|t| LaurentPoly::parse(2, t).unwrap())
        .collect();
    assert_eq!(a2, want.into_iter().collect());
}

#[test]
fn exchange_edges_satisfy_the_exchange_relation() {
    for q in [common::a3_linear(), quiver(4, &[(1, 2), (3, 2), (4, 2)]), triangle()] {
        let g = exchange_graph(&q, 1000).unwrap();
        let r = g.verify_exchange_edges();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked, g.edge_count());
        assert!(g.degrees().iter().all(|&d| d == q.n()));
    }
}

#[test]
fn d4_has_fifty_seeds() {
    let g = exchange_graph(&quiver(4, &[(1, 2), (3, 2), (4, 2)]), 1000).unwrap();
    assert_eq!((g.vertex_count(), g.cluster_variables().len()), (50, 16));
}
