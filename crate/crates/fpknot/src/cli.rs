use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fpknot_core::builders::klein_group;
use fpknot_core::{
    abelianization, articulation_points, build_cayley, classify_triangle, element_order, hom_check,
    is_surjective, parse_word, ses_check, DoubleCover, EnumLimits, GeneratorMap, GroupOrder,
    HomCheck, Outcome, PermRep, Presentation, PretzelParams, Word,
};
use serde_json::{json, Value};

use crate::error::{exit, CliError, Result};
use crate::input::{check_map_keys, parse_map, GroupSpec, Kind};
use crate::json::{GraphJson, InvariantsJson, SesJson, TableJson, TriangleJson};
use crate::report::{Ctx, Report};
use crate::suite::{self, SuiteConfig};

#[derive(Debug, Parser)]
#[command(
    name = "fpknot",
    version,
    about = "Finitely presented groups of Klein bottle surface-knots"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Most live cosets in any enumeration.
    #[arg(long, global = true, env = "FPKNOT_MAX_COSETS", default_value_t = EnumLimits::DEFAULT_MAX_COSETS)]
    pub max_cosets: usize,

    #[command(subcommand)]
    pub command: Command,
}

/// Three twist parameters, negatives allowed.
#[derive(Debug, Args, Clone, Copy)]
pub struct Triple {
    #[arg(allow_negative_numbers = true)]
    pub l: i64,
    #[arg(allow_negative_numbers = true)]
    pub m: i64,
    #[arg(allow_negative_numbers = true)]
    pub n: i64,
}

impl Triple {
    fn params(self) -> Result<PretzelParams> {
        Ok(PretzelParams::new(self.l, self.m, self.n)?)
    }

    fn json(self) -> Value {
        json!({ "l": self.l, "m": self.m, "n": self.n })
    }
}

/// A group from a builder flag or from a positional spec.
#[derive(Debug, Args, Clone)]
pub struct GroupArgs {
    /// Presentation text `< a, b | ... >`, `kind:l,m,n`, or a file.
    pub group: Option<String>,

    #[arg(long, num_args = 3, value_names = ["L", "M", "N"], allow_negative_numbers = true, conflicts_with_all = ["wirtinger", "coxeter", "dyck", "paper_dbc", "group"])]
    pub klein: Option<Vec<i64>>,
    #[arg(long, num_args = 3, value_names = ["L", "M", "N"], allow_negative_numbers = true, conflicts_with_all = ["coxeter", "dyck", "paper_dbc", "group"])]
    pub wirtinger: Option<Vec<i64>>,
    #[arg(long, num_args = 3, value_names = ["L", "M", "N"], allow_negative_numbers = true, conflicts_with_all = ["dyck", "paper_dbc", "group"])]
    pub coxeter: Option<Vec<i64>>,
    #[arg(long, num_args = 3, value_names = ["L", "M", "N"], allow_negative_numbers = true, conflicts_with_all = ["paper_dbc", "group"])]
    pub dyck: Option<Vec<i64>>,
    #[arg(long, num_args = 3, value_names = ["L", "M", "N"], allow_negative_numbers = true, conflicts_with = "group")]
    pub paper_dbc: Option<Vec<i64>>,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec> {
        let flags = [
            (Kind::Klein, &self.klein),
            (Kind::Wirtinger, &self.wirtinger),
            (Kind::Coxeter, &self.coxeter),
            (Kind::Dyck, &self.dyck),
            (Kind::PaperDbc, &self.paper_dbc),
        ];
        for (kind, v) in flags {
            if let Some(v) = v {
                return Ok(GroupSpec::Builder(kind, [v[0], v[1], v[2]]));
            }
        }
        match &self.group {
            Some(s) => GroupSpec::parse(s),
            None => Err(CliError::Input("no group given".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a presentation from a builder.
    Build {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        params: Triple,
    },
    /// Order of a group by coset enumeration over the trivial subgroup.
    Order {
        #[command(flatten)]
        group: GroupArgs,
        /// Also print the coset table (JSON table format).
        #[arg(long)]
        table: bool,
    },
    /// Order of a word in a finite group.
    ElementOrder {
        #[command(flatten)]
        group: GroupArgs,
        /// The word, in the group's generators.
        #[arg(long, short)]
        word: String,
    },
    /// Order of the meridian `a` of K(l, m, n), directly or via a finite quotient.
    MeridianOrder {
        #[command(flatten)]
        params: Triple,
    },
    /// Check that generator images define a homomorphism into a finite group.
    HomCheck {
        /// Source group spec.
        #[arg(long)]
        source: String,
        /// Target group spec; must be finite.
        #[arg(long)]
        target: String,
        /// Images `x=word, y=word` over the target generators.
        #[arg(long)]
        map: String,
        /// Also require the images to generate the target.
        #[arg(long)]
        surjective: bool,
    },
    /// Short exact sequence and splitting report for K(2, 3, delta).
    Ses { delta: i64 },
    /// Branched double cover group of K(l, m, n).
    Dbc {
        #[command(flatten)]
        params: Triple,
    },
    /// Abelian invariants via Smith normal form.
    Abelianize {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Spherical, euclidean or hyperbolic, with triangle group orders.
    Classify {
        #[command(flatten)]
        params: Triple,
    },
    /// Cut vertices of the Cayley graph of a finite group.
    CayleyCut {
        #[command(flatten)]
        group: GroupArgs,
        /// Generators to use, comma separated; all by default.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
    },
    /// Run the acceptance battery.
    PaperSuite {
        /// Run only these checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Append this relator to every K(l, m, n) the suite builds.
        #[arg(long, hide = true)]
        inject_relator: Option<String>,
    },
}

/// Result of a command: human text, JSON params and payload, exit code.
struct Done {
    text: String,
    params: Value,
    payload: Value,
    code: u8,
}

impl Done {
    fn ok(text: impl Into<String>, params: Value, payload: Value) -> Self {
        Done {
            text: text.into(),
            params,
            payload,
            code: exit::OK,
        }
    }
}

pub fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return exit::code(if e.use_stderr() {
                exit::INPUT
            } else {
                exit::OK
            });
        }
    };
    let mut stdout = std::io::stdout().lock();
    let code = run(&cli, &argv[1..], &mut stdout);
    exit::code(code)
}

/// Run a parsed command, writing to `out`; returns the exit code.
pub fn run(cli: &Cli, argv: &[String], out: &mut dyn Write) -> u8 {
    let mut ctx = Ctx::new(EnumLimits::new(cli.max_cosets));
    let result = dispatch(&cli.command, &mut ctx);
    let (done, err) = match result {
        Ok(done) => (done, None),
        Err(e) => {
            let code = e.exit_code();
            let text = e.to_string();
            let done = Done {
                text: String::new(),
                params: Value::Null,
                payload: json!({ "error": text }),
                code,
            };
            (done, Some(e))
        }
    };
    if cli.json {
        let report = Report::new(argv.to_vec(), done.params, done.payload, &ctx);
        match serde_json::to_string_pretty(&report) {
            Ok(s) => {
                let _ = writeln!(out, "{s}");
            }
            Err(e) => {
                eprintln!("error: {e}");
                return exit::INPUT;
            }
        }
    } else if !done.text.is_empty() {
        let _ = writeln!(out, "{}", done.text);
    }
    if let Some(e) = err {
        eprintln!("error: {e}");
    }
    done.code
}

fn dispatch(command: &Command, ctx: &mut Ctx) -> Result<Done> {
    match command {
        Command::Build { kind, params } => {
            let p = kind.build(params.l, params.m, params.n)?;
            let text = p.to_string();
            Ok(Done::ok(
                text.clone(),
                json!({ "kind": kind.as_str(), "params": params.json() }),
                json!({ "presentation": text }),
            ))
        }
        Command::Order { group, table } => cmd_order(group, *table, ctx),
        Command::ElementOrder { group, word } => {
            let spec = group.spec()?;
            let p = spec.load()?;
            let w = parse_word(word, p.generators())?;
            let r = regular(ctx, &p)?;
            let k = element_order(&w, &r)?;
            Ok(Done::ok(
                k.to_string(),
                json!({ "group": spec.to_string(), "word": word }),
                json!({ "order": k, "group_order": r.degree() }),
            ))
        }
        Command::MeridianOrder { params } => cmd_meridian_order(*params, ctx),
        Command::HomCheck {
            source,
            target,
            map,
            surjective,
        } => cmd_hom_check(source, target, map, *surjective, ctx),
        Command::Ses { delta } => {
            let r = ses_check(*delta, ctx.limits)?;
            let j = SesJson::from(&r);
            let text = format!(
                "group order {}, kernel order {}, quotient {}, split {}",
                r.group_order,
                r.kernel_order,
                if r.quotient_ok { "ok" } else { "broken" },
                r.split
            );
            Ok(Done::ok(
                text,
                json!({ "delta": delta }),
                serde_json::to_value(j).map_err(CliError::from)?,
            ))
        }
        Command::Dbc { params } => cmd_dbc(*params, ctx),
        Command::Abelianize { group } => {
            let spec = group.spec()?;
            let a = abelianization(&spec.load()?)?;
            Ok(Done::ok(
                a.to_string(),
                json!({ "group": spec.to_string() }),
                serde_json::to_value(InvariantsJson::from(&a))?,
            ))
        }
        Command::Classify { params } => {
            let c = classify_triangle(params.l, params.m, params.n)?;
            let text = format!(
                "{}, dyck order {}, coxeter order {}",
                c.kind, c.dyck_order, c.coxeter_order
            );
            Ok(Done::ok(
                text,
                params.json(),
                serde_json::to_value(TriangleJson::from(&c))?,
            ))
        }
        Command::CayleyCut { group, gens } => {
            let spec = group.spec()?;
            let p = spec.load()?;
            let idx = if gens.is_empty() {
                (0..p.rank()).collect()
            } else {
                gens.iter()
                    .map(|g| {
                        p.generator_index(g.trim())
                            .ok_or_else(|| CliError::Input(format!("unknown generator `{g}`")))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let r = regular(ctx, &p)?;
            let g = build_cayley(&r, &idx)?;
            let cut = articulation_points(&g);
            let text = if cut.is_empty() {
                format!(
                    "no cut vertex ({} vertices, {} edges)",
                    g.vertex_count(),
                    g.edges().len()
                )
            } else {
                format!("cut vertices: {cut:?}")
            };
            Ok(Done::ok(
                text,
                json!({ "group": spec.to_string(), "gens": idx.iter().map(|&i| p.generators()[i].as_str()).collect::<Vec<_>>() }),
                json!({ "articulation_points": cut, "graph": GraphJson::from(&g) }),
            ))
        }
        Command::PaperSuite {
            only,
            inject_relator,
        } => {
            let config = SuiteConfig {
                limits: ctx.limits,
                inject_relator: inject_relator.clone(),
            };
            let report = suite::run(&config, only)?;
            ctx.stats.merge(&report.stats);
            let mut text = report.table();
            let code = if report.all_pass() {
                exit::OK
            } else {
                let names: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
                text.push_str(&format!("\nfailed: {}", names.join(", ")));
                exit::CHECK_FAILED
            };
            Ok(Done {
                text,
                params: json!({ "only": only, "inject_relator": inject_relator }),
                payload: serde_json::to_value(&report)?,
                code,
            })
        }
    }
}

fn regular(ctx: &mut Ctx, p: &Presentation) -> Result<PermRep> {
    let e = ctx.enumerate(p, &[])?;
    let t = e
        .into_table()
        .map_err(|_| CliError::Limit(ctx.limits.max_cosets))?;
    Ok(PermRep::from_table(&t)?)
}

fn cmd_order(group: &GroupArgs, with_table: bool, ctx: &mut Ctx) -> Result<Done> {
    let spec = group.spec()?;
    let p = spec.load()?;
    let e = ctx.enumerate(&p, &[])?;
    let params = json!({ "group": spec.to_string(), "max_cosets": ctx.limits.max_cosets });
    match e.outcome {
        Outcome::Complete(t) => {
            let mut payload = json!({ "order": t.index() });
            let mut text = t.index().to_string();
            if with_table {
                let tj = TableJson::from(&t);
                text.push('\n');
                text.push_str(&serde_json::to_string(&tj)?);
                payload["table"] = serde_json::to_value(tj)?;
            }
            Ok(Done::ok(text, params, payload))
        }
        Outcome::Overflow { limit } => Ok(Done {
            text: format!("exceeds limit {limit}"),
            params,
            payload: json!({ "order": null, "exceeds_limit": limit }),
            code: exit::LIMIT,
        }),
    }
}

/// Target `K(2, 3, delta)` for the generator-fixing quotient, with the
/// parameter order matching which of `m`, `n` is divisible by 3.
fn quotient_target(m: i64, n: i64) -> Option<(i64, i64, i64)> {
    let div = |x: i64, d: i64| x % d == 0;
    if div(m, 3) && div(n, 3) {
        Some((2, 3, 3))
    } else if div(m, 3) && div(n, 5) {
        Some((2, 3, 5))
    } else if div(m, 5) && div(n, 3) {
        Some((2, 5, 3))
    } else {
        None
    }
}

fn cmd_meridian_order(t: Triple, ctx: &mut Ctx) -> Result<Done> {
    let params = t.params()?;
    let k = klein_group(params);
    let e = ctx.enumerate(&k, &[])?;
    if let Outcome::Complete(table) = &e.outcome {
        let r = PermRep::from_table(table)?;
        let order = element_order(&Word::generator(0), &r)?;
        return Ok(Done::ok(
            format!("{order} (direct, group order {})", table.index()),
            t.json(),
            json!({ "order": order, "method": "direct", "group_order": table.index() }),
        ));
    }
    let Some((l2, m2, n2)) = quotient_target(t.m, t.n) else {
        return Ok(Done {
            text: "no certificate (group exceeds limit, no quotient applies)".into(),
            params: t.json(),
            payload: json!({ "order": null, "method": "none" }),
            code: exit::LIMIT,
        });
    };
    let target = klein_group(PretzelParams::new(l2, m2, n2)?);
    let r = regular(ctx, &target)?;
    let mut map = GeneratorMap::new();
    for (g, name) in ["a", "b", "c"].into_iter().enumerate() {
        map.insert(name.into(), Word::generator(g));
    }
    let quotient = format!("({l2},{m2},{n2})");
    match hom_check(&k, &map, &r)? {
        HomCheck::Holds if is_surjective(&map, &r)? => {
            // a^4 is a relator and the image of a has order 4.
            let order = element_order(&Word::generator(0), &r)?;
            Ok(Done::ok(
                format!("{order} certified via finite quotient {quotient}"),
                t.json(),
                json!({ "order": order, "method": "quotient", "quotient": [l2, m2, n2] }),
            ))
        }
        res => {
            let why = match res {
                HomCheck::Fails { relator } => format!("relator {relator} fails"),
                HomCheck::Holds => "not surjective".into(),
            };
            Ok(Done {
                text: format!("no certificate: map into {quotient} {why}"),
                params: t.json(),
                payload: json!({ "order": null, "method": "none", "quotient": [l2, m2, n2], "reason": why }),
                code: exit::CHECK_FAILED,
            })
        }
    }
}

fn cmd_hom_check(
    source: &str,
    target: &str,
    map: &str,
    surjective: bool,
    ctx: &mut Ctx,
) -> Result<Done> {
    let (sspec, tspec) = (GroupSpec::parse(source)?, GroupSpec::parse(target)?);
    let (src, tgt) = (sspec.load()?, tspec.load()?);
    let images = parse_map(map, &tgt)?;
    check_map_keys(&images, &src)?;
    let r = regular(ctx, &tgt)?;
    let params = json!({ "source": sspec.to_string(), "target": tspec.to_string(), "map": map });
    let verdict = hom_check(&src, &images, &r)?;
    let (hom, failing) = match verdict {
        HomCheck::Holds => (true, None),
        HomCheck::Fails { relator } => (false, Some(relator)),
    };
    let onto = if hom && surjective {
        Some(is_surjective(&images, &r)?)
    } else {
        None
    };
    let ok = hom && onto.unwrap_or(true);
    let mut text = match failing {
        None => "homomorphism".to_string(),
        Some(i) => format!(
            "not a homomorphism: relator {} `{}` fails",
            i + 1,
            src.display_word(&src.relators()[i])
        ),
    };
    if let Some(s) = onto {
        text.push_str(if s {
            ", surjective"
        } else {
            ", not surjective"
        });
    }
    Ok(Done {
        text,
        params,
        payload: json!({ "homomorphism": hom, "failing_relator": failing, "surjective": onto }),
        code: if ok { exit::OK } else { exit::CHECK_FAILED },
    })
}

fn cmd_dbc(t: Triple, ctx: &mut Ctx) -> Result<Done> {
    let params = t.params()?;
    let dc = DoubleCover::compute(params)?;
    let cover = dc.presentation();
    let ab = abelianization(cover)?;
    let class = classify_triangle(t.l, t.m, t.n)?;
    let mut lines = vec![
        cover.to_string(),
        format!("abelian invariants {ab}"),
        format!("{}, dyck order {}", class.kind, class.dyck_order),
    ];
    let mut order = Value::Null;
    let mut cross = Value::Null;
    let mut code = exit::OK;
    if let GroupOrder::Finite(expect) = class.dyck_order {
        let r = regular(ctx, cover)?;
        let dyck = fpknot_core::builders::dyck_group(t.l, t.m, t.n)?;
        let dr = regular(ctx, &dyck)?;
        let to_cover = dc.dyck_to_cover()?;
        let to_dyck = dc.cover_to_dyck()?;
        let iso = r.degree() as u64 == expect
            && dr.degree() == r.degree()
            && hom_check(&dyck, &to_cover, &r)?.holds()
            && is_surjective(&to_cover, &r)?
            && hom_check(cover, &to_dyck, &dr)?.holds()
            && is_surjective(&to_dyck, &dr)?;
        lines.push(format!("order {}", r.degree()));
        lines.push(if iso {
            "isomorphic to dyck group".into()
        } else {
            "dyck cross-check FAILED".into()
        });
        if !iso {
            code = exit::CHECK_FAILED;
        }
        order = json!(r.degree());
        cross = json!(iso);
    }
    let s = &dc.schreier;
    let trace = json!({
        "transversal": s.transversal().iter().map(|w| dc.ambient.display_word(w).to_string()).collect::<Vec<_>>(),
        "schreier_generators": s.labels().iter().map(|&(c, g)| [c + 1, g + 1]).collect::<Vec<_>>(),
        "relator_counts": {
            "ambient": dc.ambient.relators().len(),
            "rewritten": dc.rewritten.relators().len(),
            "filled": dc.filled.relators().len(),
            "simplified": cover.relators().len(),
        },
        "tietze_passes": dc.simplified.passes,
    });
    Ok(Done {
        text: lines.join("\n"),
        params: t.json(),
        payload: json!({
            "presentation": cover.to_string(),
            "abelian": InvariantsJson::from(&ab),
            "triangle": TriangleJson::from(&class),
            "order": order,
            "isomorphic_to_dyck": cross,
            "trace": trace,
        }),
        code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String) {
        let argv: Vec<String> = std::iter::once("fpknot")
            .chain(args.iter().copied())
            .map(String::from)
            .collect();
        let cli = Cli::try_parse_from(&argv).unwrap();
        let mut out = Vec::new();
        let code = run(&cli, &argv[1..], &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn quotient_targets() {
        assert_eq!(quotient_target(9, 3), Some((2, 3, 3)));
        assert_eq!(quotient_target(3, 15), Some((2, 3, 3)));
        assert_eq!(quotient_target(3, 5), Some((2, 3, 5)));
        assert_eq!(quotient_target(5, 9), Some((2, 5, 3)));
        assert_eq!(quotient_target(7, 7), None);
    }

    #[test]
    fn build_and_order() {
        let (code, out) = run_args(&["build", "dyck", "2", "3", "5"]);
        assert_eq!((code, out.trim()), (0, "< u, v | u^2, v^3, (u*v)^5 >"));
        let (code, out) = run_args(&["order", "< a | a^4 >"]);
        assert_eq!((code, out.trim()), (0, "4"));
        let (code, _) = run_args(&["build", "wirtinger", "-2", "3", "3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn flags_and_specs_agree() {
        let (_, a) = run_args(&["order", "--klein", "2", "3", "3"]);
        let (_, b) = run_args(&["order", "klein:2,3,3"]);
        assert_eq!(a, b);
        assert_eq!(a.trim(), "48");
    }

    #[test]
    fn no_group_is_input_error() {
        assert_eq!(run_args(&["order"]).0, 2);
    }
}
