//! Command-line front end. [`run_command`] is pure: it returns the exit
//! status and the rendered output instead of printing.
//!
//! Exit statuses: 0 the property holds or the computation succeeded, 1 the
//! property is refuted (the report carries a witness), 2 usage or parse
//! error, 3 a search ceiling was exceeded.

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::dsl::{parse_bound, parse_element, parse_monoid_spec};
use crate::error::{Error, Result};
use crate::euclid::{bezout, check_loop_invariants, euclid_subtractive, porism_check};
use crate::factorization::{
    algebraic_gcd, euclid_lemma_survey, factorizations, is_irreducible, three_property_survey,
};
use crate::monoid::{Element, Limits, MonoidDescriptor, Norm};
use crate::proportion::{
    alternando_check, fraction_equal, pythagorean, repair_check, transitivity_survey,
    vii19_check, vii20_check, vii6_check, CanonicalPartsMode, ProportionQuad, RepairReport,
};
use crate::report::{render, render_all, render_pair, render_quad, ReportEnvelope, Witness};

/// Largest operand for which `trace` re-checks the invariants by brute force.
pub const TRACE_CHECK_CEILING: u64 = 10_000;

#[derive(Debug, Parser)]
#[command(name = "euclid-lab", version, about = "Divisibility, proportion and factorization in small monoids")]
struct Cli {
    /// Monoid specification: "nat", "congruence R mod M" or "quadratic D".
    #[arg(long, global = true, default_value = "nat")]
    monoid: String,
    /// Emit the JSON report envelope.
    #[arg(long, global = true)]
    json: bool,
    /// Leave the identity out of divisor lists.
    #[arg(long, global = true)]
    nontrivial_divisors: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Greatest common divisor (Bézout certificate over nat).
    Gcd { a: String, b: String },
    /// Bézout coefficients s, t with s·a + t·b = gcd(a, b).
    Bezout { a: String, b: String },
    /// Subtractive Euclid trace with its loop invariants checked.
    Trace { a: String, b: String },
    Divisors { x: String },
    /// All factorizations into irreducibles.
    Factor { x: String },
    Irreducible { x: String },
    /// Checks a relation or proposition on a:b and c:d.
    Proportion(ProportionArgs),
    /// Least pair in the ratio c:d.
    LeastPair { c: String, d: String },
    /// Exhaustive survey up to a bound.
    Survey(SurveyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("check").required(true).args(
    ["pythagorean", "fraction", "vii19", "alternando", "repair", "vii6"]
)))]
struct ProportionArgs {
    #[arg(long)]
    pythagorean: bool,
    /// ad = bc.
    #[arg(long)]
    fraction: bool,
    /// Pythagorean proportion versus ad = bc.
    #[arg(long)]
    vii19: bool,
    /// a:b = c:d implies a:c = b:d.
    #[arg(long)]
    alternando: bool,
    /// Reduction through gcds.
    #[arg(long)]
    repair: bool,
    /// a:b = c:d implies a:b = (a+c):(b+d).
    #[arg(long)]
    vii6: bool,
    /// Only accept the witness built from algebraic gcds.
    #[arg(long)]
    canonical: bool,
    a: String,
    b: String,
    c: String,
    d: String,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("kind").required(true).args(
    ["transitivity", "euclid_lemma", "three_properties"]
)))]
struct SurveyArgs {
    #[arg(long)]
    transitivity: bool,
    #[arg(long)]
    euclid_lemma: bool,
    #[arg(long)]
    three_properties: bool,
    /// Largest norm included.
    #[arg(long)]
    bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with_limits(argv, &Limits::default())
}

pub fn run_with_limits<I, S>(argv: I, limits: &Limits) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    status: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Outcome {
                    status: 2,
                    stdout: String::new(),
                    stderr: e.render().to_string(),
                },
            }
        }
    };
    match execute(&cli, limits) {
        Ok((status, env)) => Outcome {
            status,
            stdout: if cli.json {
                env.to_json() + "\n"
            } else {
                env.to_text()
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            status: exit_status(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn exit_status(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded { .. } => 3,
        _ => 2,
    }
}

struct Ctx<'a> {
    desc: MonoidDescriptor,
    limits: &'a Limits,
    nontrivial: bool,
}

impl Ctx<'_> {
    fn el(&self, s: &str) -> Result<Element> {
        parse_element(self.desc, s)
    }

    fn divisor_list(&self, items: &[Element]) -> Vec<String> {
        render_all(items.iter().filter(|d| !(self.nontrivial && d.is_identity())))
    }

    fn nat_operands(&self, command: &str, a: &str, b: &str) -> Result<(BigUint, BigUint)> {
        if self.desc != MonoidDescriptor::Naturals {
            return Err(Error::Unsupported(format!("{command} is defined over nat only")));
        }
        let int = |s: &str| Ok::<_, Error>(self.el(s)?.as_int().expect("nat element").clone());
        Ok((int(a)?, int(b)?))
    }
}

fn status(holds: bool) -> i32 {
    if holds {
        0
    } else {
        1
    }
}

fn execute(cli: &Cli, limits: &Limits) -> Result<(i32, ReportEnvelope)> {
    let ctx = Ctx {
        desc: parse_monoid_spec(&cli.monoid)?,
        limits,
        nontrivial: cli.nontrivial_divisors,
    };
    let (name, status, payload, witnesses) = match &cli.command {
        Command::Gcd { a, b } => gcd_cmd(&ctx, a, b)?,
        Command::Bezout { a, b } => {
            let (a, b) = ctx.nat_operands("bezout", a, b)?;
            let cert = bezout(&a, &b)?;
            let payload = json!({
                "a": a.to_string(), "b": b.to_string(), "g": cert.g.to_string(),
                "s": cert.s.to_string(), "t": cert.t.to_string(), "verified": cert.verify(),
            });
            ("bezout", status(cert.verify()), payload, vec![])
        }
        Command::Trace { a, b } => trace_cmd(&ctx, a, b)?,
        Command::Divisors { x } => {
            let x = ctx.el(x)?;
            let divisors = x.divisors(limits)?;
            let payload = json!({ "element": render(&x), "divisors": ctx.divisor_list(&divisors) });
            ("divisors", 0, payload, vec![])
        }
        Command::Factor { x } => {
            let x = ctx.el(x)?;
            let all = factorizations(&x, limits)?;
            let payload = json!({
                "element": render(&x),
                "factorizations": all.iter().map(|f| render_all(&f.factors)).collect::<Vec<_>>(),
                "unique": all.len() == 1,
            });
            ("factor", 0, payload, vec![])
        }
        Command::Irreducible { x } => {
            let x = ctx.el(x)?;
            let irreducible = is_irreducible(&x, limits)?;
            let mut witnesses = vec![];
            if !irreducible {
                let divisor = x
                    .divisors(limits)?
                    .into_iter()
                    .find(|d| !d.is_identity() && *d != x)
                    .map(|d| render(&d));
                witnesses.push(Witness::NotIrreducible {
                    element: render(&x),
                    divisor,
                });
            }
            let payload = json!({ "element": render(&x), "irreducible": irreducible });
            ("irreducible", status(irreducible), payload, witnesses)
        }
        Command::Proportion(args) => proportion_cmd(&ctx, args)?,
        Command::LeastPair { c, d } => {
            let (c, d) = (ctx.el(c)?, ctx.el(d)?);
            let r = vii20_check(&c, &d, limits)?;
            let payload = json!({
                "c": render(&c), "d": render(&d), "u": render(&r.u), "v": render(&r.v),
                "u_divides_c": r.u_divides_c, "v_divides_d": r.v_divides_d,
                "quotient": r.quotient.as_ref().map(render),
            });
            let witnesses = if r.holds() {
                vec![]
            } else {
                vec![Witness::LeastPairFailure {
                    c: render(&c),
                    d: render(&d),
                }]
            };
            ("least-pair", status(r.holds()), payload, witnesses)
        }
        Command::Survey(args) => survey_cmd(&ctx, args)?,
    };
    Ok((status, ReportEnvelope::new(ctx.desc, name, payload, witnesses)))
}

type CommandResult = Result<(&'static str, i32, Value, Vec<Witness>)>;

fn gcd_cmd(ctx: &Ctx, a: &str, b: &str) -> CommandResult {
    if ctx.desc == MonoidDescriptor::Naturals {
        let (a, b) = ctx.nat_operands("gcd", a, b)?;
        let cert = bezout(&a, &b)?;
        let small = (&a).min(&b).to_u64().is_some_and(|m| m <= ctx.limits.max_candidates);
        let porism = if small { Some(porism_check(&a, &b)?) } else { None };
        let payload = json!({
            "a": a.to_string(), "b": b.to_string(), "g": cert.g.to_string(),
            "bezout": { "s": cert.s.to_string(), "t": cert.t.to_string(), "verified": cert.verify() },
            "porism": porism,
        });
        return Ok(("gcd", 0, payload, vec![]));
    }
    let (a, b) = (ctx.el(a)?, ctx.el(b)?);
    let report = algebraic_gcd(&a, &b, ctx.limits)?;
    let payload = json!({
        "pair": render_pair(&report.pair),
        "common_divisors": ctx.divisor_list(&report.common_divisors),
        "maximal_common_divisors": render_all(&report.maximal_common_divisors),
        "g": report.algebraic_gcd.as_ref().map(render),
    });
    let witnesses = match report.algebraic_gcd {
        Some(_) => vec![],
        None => vec![Witness::no_gcd(&report)],
    };
    Ok(("gcd", status(witnesses.is_empty()), payload, witnesses))
}

fn trace_cmd(ctx: &Ctx, a: &str, b: &str) -> CommandResult {
    let (a, b) = ctx.nat_operands("trace", a, b)?;
    let largest = a.clone().max(b.clone());
    if largest.to_u64().is_none_or(|m| m > TRACE_CHECK_CEILING) {
        return Err(Error::BoundExceeded {
            what: "trace operand",
            requested: largest.to_string(),
            ceiling: TRACE_CHECK_CEILING,
        });
    }
    let trace = euclid_subtractive(a.clone(), b.clone(), ctx.limits)?;
    let report = check_loop_invariants(&trace)?;
    let payload = json!({
        "a": a.to_string(), "b": b.to_string(), "result": trace.result.to_string(),
        "steps": trace.steps.iter().map(|s| json!({
            "a": s.a.to_string(), "b": s.b.to_string(), "kind": s.kind.to_string(),
        })).collect::<Vec<_>>(),
        "invariants": {
            "divisor_set_ok": report.divisor_set_ok,
            "subgroup_ok": report.subgroup_ok,
            "transitions_ok": report.transitions_ok,
        },
    });
    Ok(("trace", status(report.holds()), payload, vec![]))
}

fn proportion_cmd(ctx: &Ctx, args: &ProportionArgs) -> CommandResult {
    let q = ProportionQuad::new(ctx.el(&args.a)?, ctx.el(&args.b)?, ctx.el(&args.c)?, ctx.el(&args.d)?)?;
    let quad = render_quad(&q);
    let mode = if args.canonical {
        CanonicalPartsMode::CanonicalOnly
    } else {
        CanonicalPartsMode::AnyWitness
    };
    let limits = ctx.limits;
    let (holds, mut payload, witness) = if args.pythagorean {
        let w = pythagorean(&q, mode, limits)?;
        let payload = json!({
            "witness": w.as_ref().map(|w| json!({
                "x": render(&w.x), "y": render(&w.y), "m": render(&w.m), "n": render(&w.n),
            })),
        });
        let witness = Witness::NoPythagoreanWitness {
            quad: quad.clone(),
            canonical: args.canonical,
        };
        (w.is_some(), payload, witness)
    } else if args.fraction {
        let holds = fraction_equal(&q);
        (holds, json!({}), Witness::FractionInequality { quad: quad.clone() })
    } else if args.vii19 {
        let r = vii19_check(&q, limits)?;
        let payload = json!({ "pyth": r.pyth, "frac": r.frac, "equivalent": r.equivalent });
        let witness = Witness::ProportionMismatch {
            quad: quad.clone(),
            pythagorean: r.pyth,
            fraction_equal: r.frac,
        };
        (r.equivalent, payload, witness)
    } else if args.alternando {
        let r = alternando_check(&q, limits)?;
        let payload = json!({ "premise": r.premise, "conclusion": r.conclusion });
        (r.holds, payload, Witness::AlternandoFailure { quad: quad.clone() })
    } else if args.vii6 {
        let r = vii6_check(&q, mode, limits)?;
        let payload = json!({
            "premise": r.premise, "conclusion": r.conclusion,
            "direct_witness_ok": r.direct_witness_ok, "sum_is_gcd": r.sum_is_gcd,
        });
        let witness = Witness::Vii6Failure {
            quad: quad.clone(),
            canonical: args.canonical,
        };
        (r.holds, payload, witness)
    } else {
        let r = repair_check(&q, limits)?;
        let (payload, witness) = match &r {
            RepairReport::PremiseFalse => (json!({ "status": "premise_false" }), Witness::RepairFailure { quad: quad.clone() }),
            RepairReport::Inapplicable { gcd } => (
                json!({ "status": "inapplicable", "pair": render_pair(&gcd.pair) }),
                Witness::no_gcd(gcd),
            ),
            RepairReport::Checked(c) => (
                json!({
                    "status": "checked",
                    "gcd_ab": render(&c.gcd_ab), "gcd_cd": render(&c.gcd_cd),
                    "p": render(&c.p), "q": render(&c.q),
                    "c_matches": c.c_matches, "d_matches": c.d_matches,
                    "inner_claims": c.inner_claims.iter().map(|i| json!({
                        "x": render(&i.x), "y": render(&i.y),
                        "i": i.i.as_ref().map(render), "j": i.j.as_ref().map(render),
                        "holds": i.holds(),
                    })).collect::<Vec<_>>(),
                }),
                Witness::RepairFailure { quad: quad.clone() },
            ),
        };
        (r.holds(), payload, witness)
    };
    let check = ["pythagorean", "fraction", "vii19", "alternando", "vii6", "repair"]
        .into_iter()
        .zip([args.pythagorean, args.fraction, args.vii19, args.alternando, args.vii6, args.repair])
        .find_map(|(name, on)| on.then_some(name))
        .expect("clap requires one check");
    let map = payload.as_object_mut().expect("payload object");
    map.insert("check".into(), json!(check));
    map.insert("quad".into(), json!(quad));
    map.insert("holds".into(), json!(holds));
    if args.canonical {
        map.insert("canonical".into(), json!(true));
    }
    let witnesses = if holds { vec![] } else { vec![witness] };
    Ok(("proportion", status(holds), payload, witnesses))
}

fn survey_cmd(ctx: &Ctx, args: &SurveyArgs) -> CommandResult {
    let bound = Norm::integer(parse_bound(&args.bound)?);
    let limits = ctx.limits;
    if args.transitivity {
        let r = transitivity_survey(ctx.desc, &bound, limits)?;
        let payload = json!({
            "survey": "transitivity", "bound": bound.to_string(), "holds": r.holds(),
            "pairs_examined": r.pairs_examined, "failure_count": r.failures.len(),
        });
        let witnesses: Vec<_> = r.failures.first().map(Witness::transitivity).into_iter().collect();
        Ok(("survey", status(r.holds()), payload, witnesses))
    } else if args.euclid_lemma {
        let r = euclid_lemma_survey(ctx.desc, &bound, limits)?;
        let payload = json!({ "survey": "euclid_lemma", "bound": bound.to_string(), "holds": r.holds() });
        let witnesses: Vec<_> = r.witness.as_ref().map(Witness::euclid_lemma).into_iter().collect();
        Ok(("survey", status(r.holds()), payload, witnesses))
    } else {
        let r = three_property_survey(ctx.desc, &bound, limits)?;
        let payload = json!({
            "survey": "three_properties", "bound": bound.to_string(),
            "flags": {
                "pythagorean_transitive": r.pythagorean_transitive.holds(),
                "algebraic_gcds_exist": r.algebraic_gcds_exist.holds(),
                "unique_factorization": r.unique_factorization.holds(),
                "euclid_lemma": r.euclid_lemma.holds(),
            },
            "flags_agree": r.flags_agree(),
        });
        let mut witnesses = Vec::new();
        witnesses.extend(r.pythagorean_transitive.witness.as_ref().map(Witness::transitivity));
        witnesses.extend(r.algebraic_gcds_exist.witness.as_ref().map(Witness::no_gcd));
        witnesses.extend(r.unique_factorization.witness.as_ref().map(Witness::non_unique));
        witnesses.extend(r.euclid_lemma.witness.as_ref().map(Witness::euclid_lemma));
        Ok(("survey", status(r.all_hold()), payload, witnesses))
    }
}
