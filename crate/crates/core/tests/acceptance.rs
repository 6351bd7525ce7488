//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cluster_core::quiver::canonical_form;
use cluster_core::reptheory::{
    verify_cc_bijection, verify_gen_exchange_instance, CcObject, Representation,
};
use cluster_core::seed::{
    classify, exchange_graph, mutation_class, positive_roots, verify_root_bijection, ClassLimits, Verdict,
};
use cluster_core::{dynkin_type, Error, LaurentPoly, Quiver, Seed};
use common::{four_triangles, nine_triangles, quiver, strategies, triangle};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

/// Everything the runs produce that later criteria inspect.
#[derive(Default)]
struct Observed {
    variables: BTreeSet<LaurentPoly>,
    not_divisible: usize,
}

impl Observed {
    fn note<T>(&mut self, r: &Result<T, Error>) {
        if matches!(r, Err(Error::NotDivisible)) {
            self.not_divisible += 1;
        }
    }
}

type Outcome = Result<(), String>;

fn within(start: Instant, budget: Duration) -> Outcome {
    let took = start.elapsed();
    if took <= budget {
        Ok(())
    } else {
        Err(format!("took {took:?}, budget {budget:?}"))
    }
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn parse_all(n: usize, texts: &[&str]) -> BTreeSet<String> {
    texts.iter().map(|t| LaurentPoly::parse(n, t).unwrap().to_string()).collect()
}

fn a3_census(obs: &mut Observed) -> Outcome {
    let start = Instant::now();
    let g = exchange_graph(&common::a3_linear(), 1000);
    obs.note(&g);
    let g = g.map_err(|e| e.to_string())?;
    let vars = g.cluster_variables();
    within(start, Duration::from_secs(1))?;
    obs.variables.extend(vars.iter().cloned());
    check(g.vertex_count() == 14 && g.edge_count() == 21, || {
        format!("{} vertices, {} edges", g.vertex_count(), g.edge_count())
    })?;
    let expected = parse_all(
        3,
        &[
            "x1",
            "x2",
            "x3",
            "(1+x2)/x1",
            "(x1+x3+x2*x3)/(x1*x2)",
            "(x1+x1*x2+x3+x2*x3)/(x1*x2*x3)",
            "(x1+x3)/x2",
            "(x1+x1*x2+x3)/(x2*x3)",
            "(1+x2)/x3",
        ],
    );
    let got: BTreeSet<String> = vars.iter().map(ToString::to_string).collect();
    check(got == expected, || format!("variables {got:?}"))
}

fn triangle_goldens(obs: &mut Observed) -> Outcome {
    let start = Instant::now();
    let s1 = Seed::initial(&triangle()).mutate(0);
    obs.note(&s1);
    let s1 = s1.map_err(|e| e.to_string())?;
    let s2 = s1.mutate(1);
    obs.note(&s2);
    let s2 = s2.map_err(|e| e.to_string())?;
    within(start, Duration::from_millis(10))?;
    let (u1, u2) = (s2.cluster()[0].to_fraction_string(), s2.cluster()[1].to_fraction_string());
    obs.variables.extend(s2.cluster().iter().cloned());
    check(u1 == "(x2+x3)/x1" && u2 == "(x1+x2+x3)/(x1*x2)", || format!("got {u1} and {u2}"))
}

fn d6_sequence(obs: &mut Observed) -> Outcome {
    let start = Instant::now();
    let mut seed = Seed::initial(&four_triangles());
    let expected = [
        (5, "(x3*x4+x2*x6)/x5"),
        (3, "(x3*x4+x1*x5+x2*x6)/(x3*x5)"),
        (1, "(x2*x3*x4+x3^2*x4+x1*x2*x5+x2^2*x6+x2*x3*x6)/(x1*x3*x5)"),
        (6, "(x3*x4+x4*x5+x2*x6)/(x5*x6)"),
    ];
    let mut got = Vec::new();
    for &(k, _) in &expected {
        let next = seed.mutate(k - 1);
        obs.note(&next);
        seed = next.map_err(|e| e.to_string())?;
        got.push(seed.cluster()[k - 1].clone());
    }
    let t = dynkin_type(seed.quiver());
    within(start, Duration::from_millis(100))?;
    obs.variables.extend(seed.cluster().iter().cloned());
    for ((k, text), v) in expected.iter().zip(&got) {
        let want = LaurentPoly::parse(6, text).unwrap();
        check(&want == v, || format!("at {k}: got {}", v.to_fraction_string()))?;
    }
    check(t.map(|t| t.to_string()).as_deref() == Some("D6"), || format!("final type {t:?}"))
}

fn census() -> Outcome {
    let start = Instant::now();
    let c = mutation_class(&nine_triangles(), 1_000_000, false).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(300))?;
    let s = c.stats();
    check(!c.truncated() && s.size == 5739 && s.double_arrows == 84 && s.max_multiplicity == 2, || {
        format!("{s:?}")
    })
}

fn finite_type_suite(obs: &mut Observed) -> Outcome {
    let start = Instant::now();
    let cases: Vec<(&str, Quiver)> = vec![
        ("A2", quiver(2, &[(1, 2)])),
        ("A2", quiver(2, &[(2, 1)])),
        ("A3", quiver(3, &[(1, 2), (2, 3)])),
        ("A3", quiver(3, &[(2, 1), (2, 3)])),
        ("A4", quiver(4, &[(1, 2), (2, 3), (3, 4)])),
        ("A4", quiver(4, &[(1, 2), (3, 2), (3, 4)])),
        ("D4", quiver(4, &[(1, 2), (3, 2), (4, 2)])),
        ("D4", quiver(4, &[(2, 1), (3, 2), (2, 4)])),
    ];
    for (name, q) in &cases {
        let c = classify(q, ClassLimits::default()).map_err(|e| e.to_string())?;
        check(matches!(&c.verdict, Verdict::Finite(t) if t.to_string() == *name), || {
            format!("{name}: {}", c.summary())
        })?;
        let g = exchange_graph(q, 10_000);
        obs.note(&g);
        let g = g.map_err(|e| e.to_string())?;
        obs.variables.extend(g.cluster_variables());
        let roots = positive_roots(name.parse().unwrap()).len();
        let vars = g.cluster_variables().len();
        check(vars == q.n() + roots, || format!("{name}: {vars} variables, {roots} roots"))?;
        let r = verify_root_bijection(q, 10_000);
        obs.note(&r);
        let r = r.map_err(|e| e.to_string())?;
        check(r.passed(), || format!("{name}: {r:?}"))?;
    }
    within(start, Duration::from_secs(30))
}

fn cc_bijection(obs: &mut Observed) -> Outcome {
    let start = Instant::now();
    let cases: Vec<(&str, Quiver)> = vec![
        ("A2", quiver(2, &[(1, 2)])),
        ("A2", quiver(2, &[(2, 1)])),
        ("A3", quiver(3, &[(1, 2), (2, 3)])),
        ("A3", quiver(3, &[(1, 2), (3, 2)])),
        ("A4", quiver(4, &[(1, 2), (2, 3), (3, 4)])),
        ("A4", quiver(4, &[(2, 1), (2, 3), (4, 3)])),
    ];
    for (name, q) in &cases {
        let r = verify_cc_bijection(q);
        obs.note(&r);
        let r = r.map_err(|e| e.to_string())?;
        check(r.passed(), || format!("{name}: {r:?}"))?;
        for (_, text) in &r.values {
            obs.variables.insert(LaurentPoly::parse(q.n(), text).unwrap());
        }
    }
    within(start, Duration::from_secs(60))
}

fn gen_exchange() -> Outcome {
    let q = quiver(2, &[(1, 2)]);
    let s = |i| CcObject::Module(Representation::simple(&q, i).unwrap());
    let p1 = CcObject::Module(Representation::projective(&q, 0).unwrap());
    let ok = verify_gen_exchange_instance(&q, &s(0), &s(1), &[p1], &[]).map_err(|e| e.to_string())?;
    check(ok, || "X_S1 X_S2 != X_P1 + 1".into())
}

fn positivity(obs: &Observed) -> Outcome {
    let bad: Vec<String> = obs.variables.iter().filter(|v| !v.is_nonnegative()).map(|v| v.to_string()).collect();
    check(!obs.variables.is_empty() && bad.is_empty(), || format!("negative coefficients in {bad:?}"))
}

fn laurent_law(obs: &Observed) -> Outcome {
    check(obs.not_divisible == 0, || format!("{} NotDivisible errors", obs.not_divisible))
}

const CASES: u32 = 10_000;

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() })
}

fn property_suites() -> Vec<(&'static str, Outcome)> {
    let involution = runner()
        .run(&strategies::quiver_vertex_perm(8, 3), |(q, k, _)| {
            let back = q.mutate(k).and_then(|m| m.mutate(k)).map_err(|e| TestCaseError::fail(e.to_string()))?;
            proptest::prop_assert_eq!(back, q);
            Ok(())
        })
        .map_err(|e| e.to_string());
    let skew = runner()
        .run(&strategies::quiver_vertex_perm(8, 3), |(q, k, _)| {
            let m = q.mutate(k).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let n = m.n();
            for i in 0..n {
                proptest::prop_assert_eq!(m.entry(i, i), 0);
                for j in 0..n {
                    proptest::prop_assert_eq!(m.entry(i, j), -m.entry(j, i));
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string());
    let canonical = runner()
        .run(&strategies::quiver_vertex_perm(8, 3), |(q, _, perm)| {
            let c = canonical_form(&q);
            proptest::prop_assert_eq!(c.key(), canonical_form(&q.relabel(&perm)).key());
            proptest::prop_assert_eq!(c.key(), canonical_form(&c.quiver).key());
            Ok(())
        })
        .map_err(|e| e.to_string());
    let divide = runner()
        .run(&(strategies::laurent(3, 5), strategies::nonzero_laurent(3, 4)), |(a, b)| {
            let prod = a.checked_mul(&b).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let back = prod.exact_divide(&b).map_err(|e| TestCaseError::fail(e.to_string()))?;
            proptest::prop_assert_eq!(back, a);
            Ok(())
        })
        .map_err(|e| e.to_string());
    vec![
        ("property: mutation involution (10^4 cases)", involution),
        ("property: skew-symmetry preserved (10^4 cases)", skew),
        ("property: canonical form permutation invariance (10^4 cases)", canonical),
        ("property: exact_divide round trip (10^4 cases)", divide),
    ]
}

fn main() {
    let mut obs = Observed::default();
    let mut results: Vec<(&str, Outcome)> = vec![
        ("A3 census: 14 seeds, 21 edges, the 9 variables, < 1 s", a3_census(&mut obs)),
        ("triangle goldens: (x2+x3)/x1 and (x1+x2+x3)/(x1*x2), < 10 ms", triangle_goldens(&mut obs)),
        ("D6 sequence 5,3,1,6: four fractions and type D6, < 100 ms", d6_sequence(&mut obs)),
        ("nine-triangle census: 5739 / 84 / 2, < 5 min", census()),
        ("finite-type suite A2, A3, A4, D4 x 2 orientations, < 30 s", finite_type_suite(&mut obs)),
        ("CC bijection A2, A3, A4 x 2 orientations, < 60 s", cc_bijection(&mut obs)),
        ("generalized exchange: X_S1 X_S2 = X_P1 + 1", gen_exchange()),
    ];
    results.push(("positivity of every variable produced above", positivity(&obs)));
    results.push(("Laurent phenomenon: no NotDivisible above", laurent_law(&obs)));
    results.extend(property_suites());

    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
