//! Acceptance battery: one PASS/FAIL line per criterion.
//!
//! Expected values come from brute force in `oracles`, never from the
//! enumerator under test.

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use fpknot::json::{to_string, TableJson};
use fpknot_core::builders::{
    dyck_group, klein_group, klein_group_from_wirtinger, paper_branched_cover,
    sign_kernel_generators,
};
use fpknot_core::{
    abelianization, articulation_points, build_cayley, classify_triangle, element_order, enumerate,
    hom_check, howlett_rank, is_surjective, parse_presentation, parse_word, ses_check,
    smith_normal_form, DoubleCover, EnumLimits, GeneratorMap, GroupOrder, Letter, PermRep,
    Presentation, PretzelParams, SimpleGraph, TriangleKind, Word,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Verdict = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn params(l: i64, m: i64, n: i64) -> PretzelParams {
    PretzelParams::new(l, m, n).unwrap()
}

fn order(p: &Presentation) -> Option<usize> {
    enumerate(p, &[], EnumLimits::default()).unwrap().index()
}

fn regular(p: &Presentation) -> PermRep {
    let t = enumerate(p, &[], EnumLimits::default())
        .unwrap()
        .into_table()
        .unwrap();
    PermRep::from_table(&t).unwrap()
}

fn identity_map(names: &[&str]) -> GeneratorMap {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.to_string(), Word::generator(i)))
        .collect()
}

/// Elements of a regular representation with the letter parity of a word
/// reaching each, by breadth-first closure.
fn elements_with_parity(r: &PermRep) -> Vec<(fpknot_core::Perm, bool)> {
    use std::collections::BTreeMap;
    let id = fpknot_core::Perm::identity(r.degree());
    let mut seen = BTreeMap::from([(id.clone(), false)]);
    let mut queue = std::collections::VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let odd = seen[&x];
        for g in r.generators() {
            let y = x.then(g);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), !odd);
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn c1_klein_orders() -> Verdict {
    for delta in [3u64, 5] {
        let sl2 = oracles::sl2_count(delta);
        let k = klein_group(params(2, 3, delta as i64));
        let n = order(&k);
        ensure!(
            n == Some(2 * sl2),
            "|K(2,3,{delta})| = {n:?}, brute force {}",
            2 * sl2
        );
        let index = enumerate(&k, &sign_kernel_generators(), EnumLimits::default())
            .unwrap()
            .index();
        ensure!(index == Some(2), "sign kernel index {index:?}");
        let kernel = ses_check(delta as i64, EnumLimits::default())
            .unwrap()
            .kernel_order;
        ensure!(kernel == sl2, "kernel {kernel}, SL2 count {sl2}");
    }
    Ok(())
}

fn c2_meridian_orders() -> Verdict {
    for delta in [3, 5] {
        let r = regular(&klein_group(params(2, 3, delta)));
        for (g, name) in ["a", "b", "c"].iter().enumerate() {
            let o = element_order(&Word::generator(g), &r).unwrap();
            ensure!(o == 4, "order of {name} in K(2,3,{delta}) is {o}");
        }
        let sq: Vec<_> = (0..3)
            .map(|g| r.evaluate(&Word::generator(g).pow(2)).unwrap())
            .collect();
        ensure!(
            sq[0] == sq[1] && sq[1] == sq[2],
            "squares differ for delta {delta}"
        );
    }
    Ok(())
}

fn c3_ses() -> Verdict {
    for (delta, expect_kernel) in [(3i64, 24usize), (5, 120)] {
        let r = ses_check(delta, EnumLimits::default()).unwrap();
        // Independent scan: odd elements of order 2 in the regular action.
        let rep = regular(&klein_group(params(2, 3, delta)));
        let elements = elements_with_parity(&rep);
        let odd_involution = elements
            .iter()
            .any(|(p, odd)| *odd && p.order().unwrap() == 2);
        let kernel = elements.iter().filter(|(_, odd)| !odd).count();
        ensure!(
            r.kernel_order == expect_kernel && kernel == expect_kernel,
            "delta {delta}: kernel {}",
            r.kernel_order
        );
        ensure!(r.quotient_ok, "delta {delta}: sign map not a surjection");
        ensure!(
            r.split == odd_involution,
            "delta {delta}: split {} but scan says {odd_involution}",
            r.split
        );
    }
    ensure!(
        ses_check(5, EnumLimits::default()).unwrap().split,
        "delta 5 does not split"
    );
    ensure!(
        !ses_check(3, EnumLimits::default()).unwrap().split,
        "delta 3 scan found a section"
    );
    Ok(())
}

fn c4_double_cover() -> Verdict {
    let a4 = oracles::a4_generators();
    let a5 = oracles::a5_generators();
    let cases = [
        (
            3,
            oracles::closure(&[a4.0.clone(), a4.1.clone()]).len(),
            oracles::abelianization_order(&[a4.0, a4.1]),
        ),
        (
            5,
            oracles::closure(&[a5.0.clone(), a5.1.clone()]).len(),
            oracles::abelianization_order(&[a5.0, a5.1]),
        ),
    ];
    for (delta, group, ab_order) in cases {
        let dc = DoubleCover::compute(params(2, 3, delta)).unwrap();
        let cover = dc.presentation();
        let n = order(cover);
        ensure!(n == Some(group), "cover order {n:?}, brute force {group}");
        let ab = abelianization(cover).unwrap();
        ensure!(
            ab.order() == Some(ab_order as u64),
            "abelianization {ab}, brute force order {ab_order}"
        );
        let want: &[u64] = if delta == 3 { &[3] } else { &[] };
        ensure!(ab.factors() == want, "abelian invariants {ab}");
        let dyck = dyck_group(2, 3, delta).unwrap();
        let (cr, dr) = (regular(cover), regular(&dyck));
        ensure!(dr.degree() == group, "dyck order {}", dr.degree());
        let to_cover = dc.dyck_to_cover().unwrap();
        let to_dyck = dc.cover_to_dyck().unwrap();
        ensure!(
            hom_check(&dyck, &to_cover, &cr).unwrap().holds(),
            "dyck -> cover not a homomorphism"
        );
        ensure!(
            is_surjective(&to_cover, &cr).unwrap(),
            "dyck -> cover not onto"
        );
        ensure!(
            hom_check(cover, &to_dyck, &dr).unwrap().holds(),
            "cover -> dyck not a homomorphism"
        );
        ensure!(
            is_surjective(&to_dyck, &dr).unwrap(),
            "cover -> dyck not onto"
        );
    }
    Ok(())
}

fn c5_printed_cover() -> Verdict {
    for (delta, want) in [(3, 12), (5, 60)] {
        let p = paper_branched_cover(params(2, 3, delta));
        let n = order(&p);
        let ab = abelianization(&p).unwrap();
        let shown = n.map_or("above the coset limit".to_string(), |n| n.to_string());
        ensure!(
            n == Some(want),
            "delta {delta}: order {shown} (abelianization {ab}), expected {want}"
        );
    }
    Ok(())
}

fn c6_wirtinger() -> Verdict {
    for delta in [3, 5] {
        let k = klein_group(params(2, 3, delta));
        let w = klein_group_from_wirtinger(params(2, 3, delta)).unwrap();
        let (kr, wr) = (regular(&k), regular(&w));
        let mut to_k = identity_map(&["a", "b", "c"]);
        for (g, name) in ["alpha", "beta", "gamma"].iter().enumerate() {
            to_k.insert(name.to_string(), Word::generator(g).inverse());
        }
        let to_w = identity_map(&["a", "b", "c"]);
        ensure!(
            hom_check(&w, &to_k, &kr).unwrap().holds(),
            "wirtinger -> klein fails"
        );
        ensure!(
            is_surjective(&to_k, &kr).unwrap(),
            "wirtinger -> klein not onto"
        );
        ensure!(
            hom_check(&k, &to_w, &wr).unwrap().holds(),
            "klein -> wirtinger fails"
        );
        ensure!(
            is_surjective(&to_w, &wr).unwrap(),
            "klein -> wirtinger not onto"
        );
        ensure!(
            kr.degree() == wr.degree(),
            "orders {} and {}",
            kr.degree(),
            wr.degree()
        );
    }
    Ok(())
}

fn c7_abelianization() -> Verdict {
    for (l, m, n) in [(2, 3, 3), (2, 3, 5), (4, 3, 5), (2, 5, 7), (-2, 3, 3)] {
        let ab = abelianization(&klein_group(params(l, m, n))).unwrap();
        ensure!(ab.factors() == [2], "({l},{m},{n}): {ab}");
    }
    Ok(())
}

fn c8_triangles() -> Verdict {
    // Orders of the finite triangle groups from closure of explicit
    // permutation generators.
    let a4 = oracles::a4_generators();
    let a5 = oracles::a5_generators();
    let a4_order = oracles::closure(&[a4.0, a4.1]).len() as u64;
    let a5_order = oracles::closure(&[a5.0, a5.1]).len() as u64;
    let c = classify_triangle(2, 3, 3).unwrap();
    ensure!(
        c.kind == TriangleKind::Spherical && c.coxeter_order == GroupOrder::Finite(2 * a4_order),
        "(2,3,3): {c:?}"
    );
    let c = classify_triangle(2, 3, 5).unwrap();
    ensure!(
        c.kind == TriangleKind::Spherical && c.coxeter_order == GroupOrder::Finite(2 * a5_order),
        "(2,3,5): {c:?}"
    );
    ensure!(
        classify_triangle(2, 3, 6).unwrap().kind == TriangleKind::Euclidean,
        "(2,3,6) not euclidean"
    );
    ensure!(
        classify_triangle(2, 3, 7).unwrap().kind == TriangleKind::Hyperbolic,
        "(2,3,7) not hyperbolic"
    );
    let o = Command::new(env!("CARGO_BIN_EXE_fpknot"))
        .args(["order", "--dyck", "2", "3", "7"])
        .env_remove("FPKNOT_MAX_COSETS")
        .output()
        .unwrap();
    ensure!(
        o.status.code() == Some(3),
        "order --dyck 2 3 7 exited {:?}",
        o.status.code()
    );
    ensure!(
        String::from_utf8_lossy(&o.stdout).contains("exceeds limit"),
        "no limit message"
    );
    Ok(())
}

fn c9_howlett() -> Verdict {
    for l in -9i64..=9 {
        for m in -9i64..=9 {
            for n in -9i64..=9 {
                if [l, m, n].iter().any(|v| v.abs() < 2) {
                    ensure!(howlett_rank(l, m, n).is_err(), "({l},{m},{n}) accepted");
                    continue;
                }
                let pattern = l % 2 == 0 && m % 2 != 0 && n % 2 != 0;
                match howlett_rank(l, m, n) {
                    Ok(1) if pattern => {}
                    Err(_) if !pattern => {}
                    other => return Err(format!("({l},{m},{n}): {other:?}")),
                }
            }
        }
    }
    Ok(())
}

/// Cut vertices by deleting each vertex and recounting components.
fn brute_cut_vertices(g: &SimpleGraph) -> Vec<usize> {
    let base = g.component_count(None);
    (0..g.vertex_count())
        .filter(|&v| g.component_count(Some(v)) + usize::from(g.degree(v) == 0) > base)
        .collect()
}

fn c10_cayley() -> Verdict {
    for delta in [3, 5] {
        let r = regular(&dyck_group(2, 3, delta).unwrap());
        let g = build_cayley(&r, &[0, 1]).unwrap();
        let cut = articulation_points(&g);
        ensure!(cut.is_empty(), "delta {delta}: cut vertices {cut:?}");
        ensure!(
            brute_cut_vertices(&g).is_empty(),
            "delta {delta}: brute force finds cut vertices"
        );
    }
    let strategy = (
        1usize..=12,
        prop::collection::vec((0usize..12, 0usize..12), 0..30),
    );
    run_cases(300, strategy, |(n, raw)| {
        let edges: Vec<_> = raw.into_iter().map(|(i, j)| (i % n, j % n)).collect();
        let g = SimpleGraph::new(n, &edges).unwrap();
        prop_assert_eq!(articulation_points(&g), brute_cut_vertices(&g));
        Ok(())
    })
}

const SMALL_GROUPS: &[&str] = &[
    "< a, b | a^2, b^3, (a*b)^3 >",
    "< a, b | a^2, b^3, (a*b)^4 >",
    "< a, b | a^2, b^3, (a*b)^5 >",
    "< a, b | a^4, b^2, (a*b)^2 >",
    "< a, b | a^6, b^4, a*b*a^-1*b^-1 >",
    "< a, b | a^5, b^2, b*a*b*a >",
];

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..2, any::<bool>()), 0..=max_len).prop_map(|ls| {
        Word::from_letters(
            ls.into_iter()
                .map(|(g, inv)| if inv { Letter::neg(g) } else { Letter::pos(g) }),
        )
    })
}

fn group_strategy() -> impl Strategy<Value = Presentation> {
    (0..SMALL_GROUPS.len(), prop::option::of(word_strategy(5))).prop_map(|(i, extra)| {
        parse_presentation(SMALL_GROUPS[i])
            .unwrap()
            .with_relators(extra)
            .unwrap()
    })
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all k-by-k minors of a 3x3 matrix.
fn minor_gcd(m: &[Vec<i64>], k: usize) -> i64 {
    let subsets: Vec<Vec<usize>> = (0u32..8)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..3).filter(|i| s >> i & 1 == 1).collect())
        .collect();
    let mut g = 0;
    for rows in &subsets {
        for cols in &subsets {
            let sub: Vec<Vec<i64>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| m[r][c]).collect())
                .collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run_cases<S: Strategy>(
    cases: u32,
    s: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Verdict {
    runner(cases).run(&s, f).map_err(|e| e.to_string())
}

fn c11_properties() -> Verdict {
    let limits = EnumLimits::new(5_000);
    // Soundness: every relator closes at every coset.
    run_cases(
        120,
        (
            group_strategy(),
            prop::collection::vec(word_strategy(4), 0..3),
        ),
        |(p, h)| {
            let t = enumerate(&p, &h, limits).unwrap().into_table().unwrap();
            prop_assert!(t.verify(&p).is_ok());
            for c in 0..t.index() {
                for r in p.relators() {
                    prop_assert_eq!(t.trace(c, r), c);
                }
            }
            Ok(())
        },
    )?;
    // Order law in the regular representation.
    run_cases(120, (group_strategy(), word_strategy(8)), |(p, w)| {
        let r = regular(&p);
        let k = element_order(&w, &r).unwrap();
        prop_assert!(r.evaluate(&w.pow(k as i64)).unwrap().is_identity());
        prop_assert!((1..k).all(|d| !r.evaluate(&w.pow(d as i64)).unwrap().is_identity()));
        Ok(())
    })?;
    // Lagrange: subgroup index divides the group order.
    run_cases(
        120,
        (
            group_strategy(),
            prop::collection::vec(word_strategy(4), 0..3),
        ),
        |(p, h)| {
            let n = order(&p).unwrap();
            let i = enumerate(&p, &h, limits).unwrap().index().unwrap();
            prop_assert_eq!(n % i, 0);
            Ok(())
        },
    )?;
    // Smith normal form: divisibility chain and minor gcds.
    run_cases(
        200,
        prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3),
        |m| {
            let d = smith_normal_form(&m).unwrap();
            for w in d.windows(2) {
                prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
            }
            let mut prod = 1;
            for k in 1..=3 {
                prod *= d.get(k - 1).copied().unwrap_or(0);
                prop_assert_eq!(prod.abs(), minor_gcd(&m, k));
            }
            Ok(())
        },
    )?;
    // Parser round trips through the printer.
    run_cases(200, word_strategy(12), |w| {
        let p = parse_presentation("< a, b | >").unwrap();
        let text = p.display_word(&w).to_string();
        prop_assert_eq!(parse_word(&text, p.generators()).unwrap(), w);
        Ok(())
    })?;
    run_cases(100, group_strategy(), |p| {
        prop_assert_eq!(&parse_presentation(&p.to_string()).unwrap(), &p);
        Ok(())
    })?;
    // Byte-identical JSON across two runs.
    run_cases(
        100,
        (
            group_strategy(),
            prop::collection::vec(word_strategy(3), 0..2),
        ),
        |(p, h)| {
            let a = enumerate(&p, &h, limits).unwrap().into_table().unwrap();
            let b = enumerate(&p, &h, limits).unwrap().into_table().unwrap();
            prop_assert_eq!(
                to_string(&TableJson::from(&a)).unwrap(),
                to_string(&TableJson::from(&b)).unwrap()
            );
            Ok(())
        },
    )?;
    let run = || {
        let o = Command::new(env!("CARGO_BIN_EXE_fpknot"))
            .args(["order", "--klein", "2", "3", "5", "--table", "--json"])
            .output()
            .unwrap();
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["stats"].as_object_mut().unwrap().remove("wall_time_ms");
        serde_json::to_string(&v).unwrap()
    };
    ensure!(run() == run(), "CLI JSON differs between runs");
    Ok(())
}

fn c12_signs() -> Verdict {
    let base = 2 * oracles::sl2_count(3);
    for l in [2, -2] {
        for m in [3, -3] {
            for n in [3, -3] {
                let o = order(&klein_group(params(l, m, n)));
                ensure!(o == Some(base), "({l},{m},{n}): {o:?}");
            }
        }
    }
    Ok(())
}

/// Criteria that cannot pass: the cover presentation as printed omits the
/// relation killing the trivial Schreier generator, so filling leaves a
/// free factor. Listed so that a fix, or any new failure, breaks the run.
const KNOWN_FAILING: &[u32] = &[5];

fn main() {
    let criteria: [(u32, &str, fn() -> Verdict); 12] = [
        (1, "group orders and sign kernels", c1_klein_orders),
        (2, "meridian orders and equal squares", c2_meridian_orders),
        (3, "short exact sequence and splitting", c3_ses),
        (4, "branched double cover is A4 / A5", c4_double_cover),
        (
            5,
            "printed cover presentation after filling",
            c5_printed_cover,
        ),
        (6, "wirtinger and klein presentations agree", c6_wirtinger),
        (7, "abelianization is Z2", c7_abelianization),
        (
            8,
            "triangle classification and limit exit code",
            c8_triangles,
        ),
        (9, "howlett rank parity rule", c9_howlett),
        (10, "cayley graphs without cut vertices", c10_cayley),
        (11, "property suites", c11_properties),
        (12, "sign independence", c12_signs),
    ];
    let mut failed = Vec::new();
    for (id, name, f) in criteria {
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(()) => println!("criterion {id:>2} PASS  {name}"),
            Err(why) => {
                println!("criterion {id:>2} FAIL  {name}: {why}");
                failed.push(id);
            }
        }
    }
    if failed != KNOWN_FAILING {
        println!("unexpected acceptance results: failing {failed:?}, known {KNOWN_FAILING:?}");
        std::process::exit(1);
    }
}
