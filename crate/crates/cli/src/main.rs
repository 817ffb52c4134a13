//! `abext`: scriptable front end. Every verb prints one JSON document.
//!
//! Exit status: 0 on success, 1 on a domain error (a JSON error object is
//! printed), 2 on a usage error.

use std::process::ExitCode;

use abext::abgroup::{canonicalize, FinGenAb};
use abext::homext::{
    baer_sum, baer_sum_geometric, classify, connecting_hom, connecting_hom_dual, ext_group,
    hom_group, pullback_action, pushout_action, realize,
};
use abext::intlin::snf;
use abext::json::{
    certificate_to_json, class_from_json, class_to_json, error_to_json, group_from_json,
    group_to_json, int_to_json, map_from_json, map_to_json, matrix_from_json, matrix_to_json,
    seq_from_json, seq_to_json,
};
use abext::suite::{run_all, scorecard};
use abext::torsioncat::{self, ab4star_failure_witness, counterexample_witness, is_cotorsion, Method};
use abext::universal::{
    build_universal_coextension, build_universal_extension, cyclic_generation_check, phi, psi,
};
use abext::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "abext", version, about = "Exact computations with abelian group extensions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Global {
    /// Seed for every sampled choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bound on brute-force searches.
    #[arg(long, global = true, env = "ABEXT_BUDGET", default_value_t = abext::oracle::DEFAULT_BUDGET)]
    budget: u64,
    /// Indent the output.
    #[arg(long, global = true)]
    pretty: bool,
}

/// JSON arguments may be inline or `@path`; group arguments may also be
/// expressions such as `Z(4)+Z^2`.
#[derive(Subcommand)]
enum Verb {
    /// Smith normal form of an integer matrix.
    Snf {
        #[arg(long)]
        matrix: String,
    },
    /// Canonical form of a group, or of the group presented by relation rows.
    Canon {
        group: Option<String>,
        #[arg(long, conflicts_with = "group")]
        relations: Option<String>,
        /// Number of generators, needed when there are no relation rows.
        #[arg(long, requires = "relations")]
        gens: Option<usize>,
    },
    /// Hom(A, B) with a generating map for each canonical generator.
    Hom {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Ext¹(A, B) for extensions B ↪ E ↠ A.
    Ext {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// The short exact sequence of a class.
    Realize {
        #[arg(long)]
        class: String,
    },
    /// The class of a short exact sequence.
    Classify {
        #[arg(long)]
        seq: String,
    },
    /// Baer sum of two classes.
    Baer {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Build the sum from the sequences instead of coordinates.
        #[arg(long)]
        geometric: bool,
    },
    /// Pull a class back along a map into A, or push it out along a map out of B.
    Act {
        #[arg(long)]
        class: String,
        #[arg(long, conflicts_with = "pushout", required_unless_present = "pushout")]
        pullback: Option<String>,
        #[arg(long)]
        pushout: Option<String>,
    },
    /// Connecting map Hom(T, A) → Ext¹(T, B), or Hom(B, T) → Ext¹(A, T) with --dual.
    Delta {
        #[arg(long)]
        seq: String,
        #[arg(long = "T")]
        t: String,
        #[arg(long)]
        dual: bool,
    },
    /// Comparison map for sums (products with --dual).
    Psi {
        /// A summand; repeat for a family.
        #[arg(long = "A")]
        a: Vec<String>,
        #[arg(long = "B")]
        b: String,
        #[arg(long)]
        dual: bool,
    },
    /// Canonical universal extension of B by A.
    UnivExt {
        #[arg(long = "B")]
        b: String,
        #[arg(long = "A")]
        a: String,
        /// Include the sequence and the index set.
        #[arg(long)]
        full: bool,
    },
    /// Canonical universal co-extension of B by A.
    UnivCoext {
        #[arg(long = "B")]
        b: String,
        #[arg(long = "A")]
        a: String,
        #[arg(long)]
        full: bool,
    },
    /// Cyclic generation of Ext¹(B^(X), A) by the universal class.
    CyclicCheck {
        #[arg(long = "B")]
        b: String,
        #[arg(long = "A")]
        a: String,
    },
    /// Normal form of a torsion expression, or canonical form of a group.
    Parse { expr: String },
    /// Co-Ext¹-universality of a torsion group.
    ClassifyTorsion { expr: String },
    /// Cotorsion test of a torsion group.
    Cotorsion { expr: String },
    /// Finite witness for the non-universal unbounded family.
    Witness {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Finite witness for the failure of exact products.
    Ab4Witness {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Run the acceptance criteria and print a scorecard.
    Suite,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    Fast,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Brute => Method::BruteForce,
            MethodArg::Fast => Method::FastPath,
        }
    }
}

fn read_arg(text: &str) -> Result<String> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {}", path, e))),
        None => Ok(text.to_string()),
    }
}

fn json_arg(text: &str) -> Result<Value> {
    let text = read_arg(text)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        position: byte_offset(&text, e.line(), e.column()),
        message: e.to_string(),
    })
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    start + column.saturating_sub(1)
}

fn group_arg(text: &str) -> Result<FinGenAb> {
    let text = read_arg(text)?;
    if text.trim_start().starts_with('{') {
        group_from_json(&json_arg(&text)?)
    } else {
        FinGenAb::parse(&text)
    }
}

fn execute(verb: Verb, g: &Global) -> Result<(Value, bool)> {
    let ok = |v: Value| Ok((v, true));
    match verb {
        Verb::Snf { matrix } => {
            let m = matrix_from_json(&json_arg(&matrix)?, 0)?;
            let s = snf(&m);
            ok(json!({
                "U": matrix_to_json(&s.u),
                "D": matrix_to_json(&s.d),
                "V": matrix_to_json(&s.v),
                "diagonal": s.diagonal().iter().map(int_to_json).collect::<Vec<_>>(),
                "rank": s.rank().to_string(),
            }))
        }
        Verb::Canon { group, relations, gens } => match (group, relations) {
            (Some(gtext), _) => ok(json!({ "group": group_to_json(&group_arg(&gtext)?) })),
            (None, Some(rel)) => {
                let m = matrix_from_json(&json_arg(&rel)?, gens.unwrap_or(0))?;
                if let Some(n) = gens {
                    if m.cols() != n {
                        return Err(Error::DimensionMismatch(format!(
                            "relations have {} columns, expected {}",
                            m.cols(),
                            n
                        )));
                    }
                }
                let c = canonicalize(&m);
                ok(json!({
                    "group": group_to_json(&c.group),
                    "to_canon": matrix_to_json(&c.to_canon),
                    "from_canon": matrix_to_json(&c.from_canon),
                }))
            }
            (None, None) => Err(Error::InvalidInput("give a group or --relations".into())),
        },
        Verb::Hom { a, b } => {
            let h = hom_group(&group_arg(&a)?, &group_arg(&b)?);
            ok(json!({
                "group": group_to_json(h.carrier()),
                "basis": h.basis().iter().map(map_to_json).collect::<Vec<_>>(),
            }))
        }
        Verb::Ext { a, b } => {
            let e = ext_group(&group_arg(&a)?, &group_arg(&b)?);
            ok(json!({ "group": group_to_json(e.group()) }))
        }
        Verb::Realize { class } => ok(seq_to_json(&realize(&class_from_json(&json_arg(&class)?)?))),
        Verb::Classify { seq } => ok(class_to_json(&classify(&seq_from_json(&json_arg(&seq)?)?)?)),
        Verb::Baer { x, y, geometric } => {
            let (x, y) = (class_from_json(&json_arg(&x)?)?, class_from_json(&json_arg(&y)?)?);
            let sum = if geometric {
                classify(&baer_sum_geometric(&realize(&x), &realize(&y))?)?
            } else {
                baer_sum(&x, &y)?
            };
            ok(class_to_json(&sum))
        }
        Verb::Act { class, pullback, pushout } => {
            let c = class_from_json(&json_arg(&class)?)?;
            let r = match (pullback, pushout) {
                (Some(h), _) => pullback_action(&c, &map_from_json(&json_arg(&h)?)?)?,
                (None, Some(k)) => pushout_action(&c, &map_from_json(&json_arg(&k)?)?)?,
                (None, None) => return Err(Error::InvalidInput("give --pullback or --pushout".into())),
            };
            ok(class_to_json(&r))
        }
        Verb::Delta { seq, t, dual } => {
            let s = seq_from_json(&json_arg(&seq)?)?;
            let t = group_arg(&t)?;
            let d = if dual { connecting_hom_dual(&s, &t)? } else { connecting_hom(&s, &t)? };
            ok(json!({ "map": map_to_json(&d.map), "surjective": d.is_surjective() }))
        }
        Verb::Psi { a, b, dual } => {
            let family = a.iter().map(|x| group_arg(x)).collect::<Result<Vec<_>>>()?;
            let b = group_arg(&b)?;
            let p = if dual { phi(&family, &b)? } else { psi(&family, &b)? };
            ok(json!({
                "domain": group_to_json(p.map.source()),
                "codomain": group_to_json(p.map.target()),
                "map": map_to_json(&p.map),
                "injective": p.is_injective(),
                "bijective": p.is_bijective(),
            }))
        }
        Verb::UnivExt { b, a, full } => {
            let c = build_universal_extension(&group_arg(&b)?, &group_arg(&a)?)?;
            ok(certificate_to_json(&c, full))
        }
        Verb::UnivCoext { b, a, full } => {
            let c = build_universal_coextension(&group_arg(&b)?, &group_arg(&a)?)?;
            ok(certificate_to_json(&c, full))
        }
        Verb::CyclicCheck { b, a } => {
            let c = build_universal_extension(&group_arg(&b)?, &group_arg(&a)?)?;
            let r = cyclic_generation_check(&c, g.seed)?;
            let witnesses: Vec<Value> = r
                .witnesses
                .iter()
                .map(|(class, gamma)| json!({ "class": class_to_json(class), "gamma": map_to_json(gamma) }))
                .collect();
            ok(json!({
                "surjective": r.surjective,
                "generators": r.generators.to_string(),
                "witnesses": witnesses,
            }))
        }
        Verb::Parse { expr } => {
            let text = read_arg(&expr)?;
            match torsioncat::parse(&text) {
                Ok(e) => {
                    let terms: Vec<Value> = e
                        .terms()
                        .iter()
                        .map(|(a, m)| json!({ "atom": a.to_string(), "multiplicity": m.to_string() }))
                        .collect();
                    let finite = torsioncat::parse_finite_group(&text).ok();
                    ok(json!({
                        "normalized": e.to_string(),
                        "terms": terms,
                        "group": finite.as_ref().map(group_to_json),
                    }))
                }
                // free parts are outside the torsion grammar but still groups
                Err(torsion_err) => match FinGenAb::parse(&text) {
                    Ok(grp) => ok(json!({ "normalized": grp.to_string(), "group": group_to_json(&grp) })),
                    Err(_) => Err(torsion_err),
                },
            }
        }
        Verb::ClassifyTorsion { expr } => {
            ok(torsioncat::classify(&torsioncat::parse(&read_arg(&expr)?)?).to_json())
        }
        Verb::Cotorsion { expr } => {
            let r = is_cotorsion(&torsioncat::parse(&read_arg(&expr)?)?);
            ok(json!({
                "cotorsion": r.cotorsion,
                "bound": r.bound.as_ref().map(int_to_json),
                "divisible": r.divisible.to_string(),
                "reduced": r.reduced.to_string(),
            }))
        }
        Verb::Witness { p, n, method } => {
            ok(counterexample_witness(p, n, method.into(), g.budget)?.to_json())
        }
        Verb::Ab4Witness { p, n, method } => {
            ok(ab4star_failure_witness(p, n, method.into(), g.budget)?.to_json())
        }
        Verb::Suite => {
            let results = run_all(g.seed);
            let all = results.iter().all(|r| r.passed);
            Ok((scorecard(&results), all))
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    } else {
        serde_json::to_string(v).expect("JSON values serialize")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.verb, &cli.global) {
        Ok((v, success)) => {
            println!("{}", render(&v, cli.global.pretty));
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            println!("{}", render(&error_to_json(&e), cli.global.pretty));
            ExitCode::from(1)
        }
    }
}
