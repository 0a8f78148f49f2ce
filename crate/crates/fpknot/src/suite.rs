//! The acceptance battery behind `paper-suite`.
//!
//! Checks run on scoped threads, one context each; results are merged by
//! check id, so the report does not depend on scheduling.

use std::fmt::Write as _;

use fpknot_core::builders::{
    dyck_group, klein_group, klein_group_from_wirtinger, paper_branched_cover,
    sign_kernel_generators,
};
use fpknot_core::{
    abelianization, articulation_points, build_cayley, classify_triangle, element_order, hom_check,
    howlett_rank, is_surjective, parse_presentation, parse_word, ses_check_presentation,
    smith_normal_form, DoubleCover, EnumLimits, GeneratorMap, Outcome, PermRep, Presentation,
    PretzelParams, Word,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::json::{self, TableJson};
use crate::report::{Ctx, Stats};

/// Knobs for the battery. `inject_relator` is appended to every `K(l, m, n)`
/// the suite builds; it exists to prove that a broken group is caught.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub limits: EnumLimits,
    pub inject_relator: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip)]
    pub stats: Stats,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn table(&self) -> String {
        let w = |f: fn(&Check) -> usize| self.checks.iter().map(f).max().unwrap_or(0);
        let name_w = w(|c| c.name.len()).max(5);
        let exp_w = w(|c| c.expected.len()).max(8);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>2}  {:<name_w$}  {:<exp_w$}  {:<6}  computed",
            "#", "check", "expected", "status"
        );
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:>2}  {:<name_w$}  {:<exp_w$}  {:<6}  {}",
                c.id, c.name, c.expected, status, c.computed
            );
        }
        let _ = write!(out, "{} passed, {} failed", self.passed, self.failed);
        out
    }
}

struct Outcome3 {
    expected: String,
    computed: String,
    pass: bool,
}

fn outcome(expected: impl Into<String>, computed: impl Into<String>) -> Outcome3 {
    let (expected, computed) = (expected.into(), computed.into());
    Outcome3 {
        pass: expected == computed,
        expected,
        computed,
    }
}

type CheckFn = fn(&Battery, &mut Ctx) -> Result<Outcome3>;

const CHECKS: &[(u32, &str, CheckFn)] = &[
    (1, "klein-orders", check_klein_orders),
    (2, "meridian-orders", check_meridian_orders),
    (3, "ses-splitting", check_ses),
    (4, "branched-double-cover", check_double_cover),
    (5, "paper-cover-filling", check_printed_cover),
    (6, "wirtinger-vs-klein", check_wirtinger),
    (7, "abelianization", check_abelianization),
    (8, "triangle-classes", check_triangles),
    (9, "howlett-rank", check_howlett),
    (10, "cayley-cut-vertices", check_cayley),
    (11, "property-spot-checks", check_properties),
    (12, "sign-independence", check_signs),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.1).collect()
}

struct Battery {
    limits: EnumLimits,
    inject: Option<Word>,
}

impl Battery {
    fn klein(&self, l: i64, m: i64, n: i64) -> Result<Presentation> {
        let k = klein_group(PretzelParams::new(l, m, n)?);
        Ok(match &self.inject {
            Some(w) => k.with_relators([w.clone()])?,
            None => k,
        })
    }

    fn order(&self, ctx: &mut Ctx, p: &Presentation) -> Result<Option<usize>> {
        Ok(ctx.enumerate(p, &[])?.index())
    }

    fn regular(&self, ctx: &mut Ctx, p: &Presentation) -> Result<PermRep> {
        let t = ctx.enumerate(p, &[])?.into_table()?;
        Ok(PermRep::from_table(&t)?)
    }
}

fn show(o: Option<usize>) -> String {
    o.map_or_else(|| "overflow".to_string(), |n| n.to_string())
}

/// `|SL(2, Z/p)|` by counting determinant-one matrices.
fn sl2_count(p: u64) -> usize {
    let mut count = 0;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn check_klein_orders(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for delta in [3, 5] {
        let kernel = sl2_count(delta as u64);
        expected.push(format!(
            "|K(2,3,{delta})| = {}, kernel {kernel}",
            2 * kernel
        ));
        let k = b.klein(2, 3, delta)?;
        let order = b.order(ctx, &k)?;
        let index = ctx.enumerate(&k, &sign_kernel_generators())?.index();
        let kernel = match (order, index) {
            (Some(o), Some(i)) if o % i == 0 => show(Some(o / i)),
            _ => "undetermined".into(),
        };
        computed.push(format!(
            "|K(2,3,{delta})| = {}, kernel {kernel}",
            show(order)
        ));
    }
    Ok(outcome(expected.join("; "), computed.join("; ")))
}

fn check_meridian_orders(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut computed = Vec::new();
    for delta in [3, 5] {
        let k = b.klein(2, 3, delta)?;
        let r = b.regular(ctx, &k)?;
        let orders = (0..3)
            .map(|g| element_order(&Word::generator(g), &r).map(|o| o.to_string()))
            .collect::<fpknot_core::Result<Vec<_>>>()?;
        let squares = (0..3)
            .map(|g| r.evaluate(&Word::generator(g).pow(2)))
            .collect::<fpknot_core::Result<Vec<_>>>()?;
        let equal = squares.windows(2).all(|w| w[0] == w[1]);
        computed.push(format!(
            "delta {delta}: orders {}, squares {}",
            orders.join("/"),
            if equal { "equal" } else { "differ" }
        ));
    }
    let expected = "delta 3: orders 4/4/4, squares equal; delta 5: orders 4/4/4, squares equal";
    Ok(outcome(expected, computed.join("; ")))
}

fn check_ses(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut computed = Vec::new();
    for delta in [3, 5] {
        let k = b.klein(2, 3, delta)?;
        let r = ses_check_presentation(delta, &k, ctx.limits)?;
        computed.push(format!(
            "delta {delta}: kernel {}, quotient {}, split {}",
            r.kernel_order, r.quotient_ok, r.split
        ));
    }
    let expected = "delta 3: kernel 24, quotient true, split false; \
                    delta 5: kernel 120, quotient true, split true";
    Ok(outcome(expected, computed.join("; ")))
}

fn check_double_cover(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut computed = Vec::new();
    for delta in [3, 5] {
        let dc = DoubleCover::compute(PretzelParams::new(2, 3, delta)?)?;
        let cover = dc.presentation();
        let dyck = dyck_group(2, 3, delta)?;
        let order = b.order(ctx, cover)?;
        let ab = abelianization(cover)?;
        let (cr, dr) = (b.regular(ctx, cover)?, b.regular(ctx, &dyck)?);
        let to_cover = dc.dyck_to_cover()?;
        let to_dyck = dc.cover_to_dyck()?;
        let iso = hom_check(&dyck, &to_cover, &cr)?.holds()
            && is_surjective(&to_cover, &cr)?
            && hom_check(cover, &to_dyck, &dr)?.holds()
            && is_surjective(&to_dyck, &dr)?
            && cr.degree() == dr.degree();
        computed.push(format!(
            "delta {delta}: order {}, abelian {ab}, {}",
            show(order),
            if iso {
                "isomorphic to dyck"
            } else {
                "not certified"
            }
        ));
    }
    let expected = "delta 3: order 12, abelian [3], isomorphic to dyck; \
                    delta 5: order 60, abelian [], isomorphic to dyck";
    Ok(outcome(expected, computed.join("; ")))
}

fn check_printed_cover(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut computed = Vec::new();
    let mut diagnosis = Vec::new();
    for delta in [3, 5] {
        let filled = paper_branched_cover(PretzelParams::new(2, 3, delta)?);
        computed.push(format!(
            "delta {delta}: order {}",
            show(b.order(ctx, &filled)?)
        ));
        let killed = filled.with_relators([Word::generator(0)])?;
        diagnosis.push(format!("{} with a1 = 1", show(b.order(ctx, &killed)?)));
    }
    let expected = "delta 3: order 12; delta 5: order 60";
    let mut o = outcome(expected, computed.join("; "));
    if !o.pass {
        let _ = write!(o.computed, " ({})", diagnosis.join(", "));
    }
    Ok(o)
}

fn check_wirtinger(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut computed = Vec::new();
    for delta in [3, 5] {
        let k = b.klein(2, 3, delta)?;
        let w = klein_group_from_wirtinger(PretzelParams::new(2, 3, delta)?)?;
        let (kr, wr) = (b.regular(ctx, &k)?, b.regular(ctx, &w)?);
        let mut to_k = GeneratorMap::new();
        let mut to_w = GeneratorMap::new();
        for (g, (x, greek)) in [("a", "alpha"), ("b", "beta"), ("c", "gamma")]
            .into_iter()
            .enumerate()
        {
            to_k.insert(x.into(), Word::generator(g));
            to_k.insert(greek.into(), Word::generator(g).inverse());
            to_w.insert(x.into(), Word::generator(g));
        }
        let ok = hom_check(&w, &to_k, &kr)?.holds()
            && is_surjective(&to_k, &kr)?
            && hom_check(&k, &to_w, &wr)?.holds()
            && is_surjective(&to_w, &wr)?;
        computed.push(format!(
            "delta {delta}: {} / {}, {}",
            kr.degree(),
            wr.degree(),
            if ok {
                "mutual surjections"
            } else {
                "maps fail"
            }
        ));
    }
    let expected = "delta 3: 48 / 48, mutual surjections; delta 5: 240 / 240, mutual surjections";
    Ok(outcome(expected, computed.join("; ")))
}

const ABELIAN_CASES: [(i64, i64, i64); 5] =
    [(2, 3, 3), (2, 3, 5), (4, 3, 5), (2, 5, 7), (-2, 3, 3)];

fn check_abelianization(b: &Battery, _ctx: &mut Ctx) -> Result<Outcome3> {
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for (l, m, n) in ABELIAN_CASES {
        expected.push(format!("({l},{m},{n}) [2]"));
        computed.push(format!(
            "({l},{m},{n}) {}",
            abelianization(&b.klein(l, m, n)?)?
        ));
    }
    Ok(outcome(expected.join(", "), computed.join(", ")))
}

fn check_triangles(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut computed = Vec::new();
    for (l, m, n) in [(2, 3, 3), (2, 3, 5), (2, 3, 6), (2, 3, 7)] {
        let c = classify_triangle(l, m, n)?;
        computed.push(format!("({l},{m},{n}) {} {}", c.kind, c.coxeter_order));
    }
    let probe = EnumLimits::new(b.limits.max_cosets.min(50_000));
    let e = fpknot_core::enumerate(&dyck_group(2, 3, 7)?, &[], probe)?;
    ctx.stats.absorb(&e.stats);
    computed.push(match e.outcome {
        Outcome::Overflow { .. } => "dyck(2,3,7) exceeds limit".into(),
        Outcome::Complete(t) => format!("dyck(2,3,7) order {}", t.index()),
    });
    let expected = "(2,3,3) spherical 24, (2,3,5) spherical 120, (2,3,6) euclidean infinite, \
                    (2,3,7) hyperbolic infinite, dyck(2,3,7) exceeds limit";
    Ok(outcome(expected, computed.join(", ")))
}

fn check_howlett(_b: &Battery, _ctx: &mut Ctx) -> Result<Outcome3> {
    let cases = [
        (2, 3, 3),
        (4, 5, 7),
        (-2, 3, -9),
        (3, 3, 3),
        (2, 4, 3),
        (2, 3, 4),
        (3, 2, 3),
        (2, 2, 2),
    ];
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for (l, m, n) in cases {
        let pattern = l % 2 == 0 && m % 2 != 0 && n % 2 != 0;
        expected.push(format!(
            "({l},{m},{n}) {}",
            if pattern { "1" } else { "refused" }
        ));
        let got = howlett_rank(l, m, n).map_or_else(|_| "refused".to_string(), |r| r.to_string());
        computed.push(format!("({l},{m},{n}) {got}"));
    }
    Ok(outcome(expected.join(", "), computed.join(", ")))
}

fn check_cayley(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut computed = Vec::new();
    for delta in [3, 5] {
        let r = b.regular(ctx, &dyck_group(2, 3, delta)?)?;
        let g = build_cayley(&r, &[0, 1])?;
        computed.push(format!(
            "delta {delta}: {} vertices, cut {:?}",
            g.vertex_count(),
            articulation_points(&g)
        ));
    }
    let expected = "delta 3: 12 vertices, cut []; delta 5: 60 vertices, cut []";
    Ok(outcome(expected, computed.join("; ")))
}

/// Deterministic spot checks; the randomized suites live in the test
/// targets.
fn check_properties(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut bad = Vec::new();
    for delta in [3, 5] {
        let k = b.klein(2, 3, delta)?;
        let t = ctx.enumerate(&k, &[])?.into_table()?;
        if t.verify(&k).is_err() {
            bad.push(format!("table of K(2,3,{delta}) unsound"));
        }
        let again = ctx.enumerate(&k, &[])?.into_table()?;
        if json::to_string(&TableJson::from(&t))? != json::to_string(&TableJson::from(&again))? {
            bad.push(format!("table JSON of K(2,3,{delta}) differs between runs"));
        }
        let printed = k.to_string();
        if parse_presentation(&printed).ok().as_ref() != Some(&k) {
            bad.push(format!("K(2,3,{delta}) does not re-parse"));
        }
        for text in ["(a*b)^2*a^-2", "a^-3*b*c^2", "1"] {
            let w = parse_word(text, k.generators())?;
            if parse_word(&k.display_word(&w).to_string(), k.generators())? != w {
                bad.push(format!("word `{text}` does not round-trip"));
            }
        }
    }
    let matrices: [&[&[i64]]; 3] = [
        &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]],
        &[&[0, 0], &[0, 0]],
        &[&[4, 0], &[0, 6]],
    ];
    let expected_snf: [&[i64]; 3] = [&[2, 6, 12], &[0, 0], &[2, 12]];
    for (m, want) in matrices.iter().zip(expected_snf) {
        let rows: Vec<Vec<i64>> = m.iter().map(|r| r.to_vec()).collect();
        let d = smith_normal_form(&rows)?;
        let chain = d
            .windows(2)
            .all(|w| w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
        if d != want || !chain {
            bad.push(format!("SNF of {rows:?} is {d:?}"));
        }
    }
    let computed = if bad.is_empty() {
        "all hold".to_string()
    } else {
        bad.join("; ")
    };
    Ok(outcome("all hold", computed))
}

fn check_signs(b: &Battery, ctx: &mut Ctx) -> Result<Outcome3> {
    let mut orders = Vec::new();
    for l in [2, -2] {
        for m in [3, -3] {
            for n in [3, -3] {
                orders.push(b.order(ctx, &b.klein(l, m, n)?)?);
            }
        }
    }
    let first = orders[0];
    let computed = if orders.iter().all(|&o| o == first) {
        format!("all eight {}", show(first))
    } else {
        format!(
            "differ: {}",
            orders
                .iter()
                .map(|&o| show(o))
                .collect::<Vec<_>>()
                .join(", ")
        )
    };
    Ok(outcome("all eight 48", computed))
}

/// Run every check, in parallel. `only` restricts to the named checks.
pub fn run(config: &SuiteConfig, only: &[String]) -> Result<SuiteReport> {
    for name in only {
        if !CHECKS.iter().any(|c| c.1 == name) {
            return Err(CliError::Input(format!("unknown check `{name}`")));
        }
    }
    let inject = match &config.inject_relator {
        Some(text) => {
            let abc = parse_presentation("< a, b, c | >")?;
            Some(parse_word(text, abc.generators())?)
        }
        None => None,
    };
    let battery = Battery {
        limits: config.limits,
        inject,
    };
    let selected: Vec<_> = CHECKS
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|n| n == c.1))
        .collect();
    let mut results: Vec<(Check, Stats)> = std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&&(id, name, f)| {
                let battery = &battery;
                s.spawn(move || {
                    let mut ctx = Ctx::new(battery.limits);
                    let check = match f(battery, &mut ctx) {
                        Ok(o) => Check {
                            id,
                            name,
                            expected: o.expected,
                            computed: o.computed,
                            pass: o.pass,
                        },
                        Err(e) => Check {
                            id,
                            name,
                            expected: String::new(),
                            computed: format!("error: {e}"),
                            pass: false,
                        },
                    };
                    (check, ctx.stats)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    results.sort_by_key(|(c, _)| c.id);
    let mut stats = Stats::default();
    for (_, s) in &results {
        stats.merge(s);
    }
    let checks: Vec<Check> = results.into_iter().map(|(c, _)| c).collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    Ok(SuiteReport {
        failed: checks.len() - passed,
        passed,
        checks,
        stats,
    })
}
