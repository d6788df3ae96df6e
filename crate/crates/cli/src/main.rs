//! `hv` — command-line front end for the twisted Heisenberg-Virasoro engine.
//!
//! Subcommands map one-to-one onto the library operations; see `hv --help`.
//! Exit codes: 0 success, 1 parse or usage error, 2 inadmissible `psi`,
//! 3 bound exhausted (membership unknown, descent stuck, nilpotency cap
//! hit, or a lemma report with failures).

mod config;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use config::{Config, ModuleKind};
use hv_core::algebra::{bracket, LieElement};
use hv_core::expr::{
    format_basis_index, format_lie, format_uea, format_vector, parse_element, parse_generator,
};
use hv_core::modules::{
    act_uea, basis_enumerate, defect, evaluate_central, ModuleSpec, ModuleVector,
};
use hv_core::solver::{
    descend, nilpotency_index, submodule_membership, verify_lemma, whittaker_solve, LemmaRanges,
    Membership, MembershipReport,
};
use hv_core::uea::UEAElement;
use hv_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "hv",
    about = "Exact computations in the twisted Heisenberg-Virasoro algebra and its Whittaker modules",
    version
)]
struct Cli {
    /// JSON configuration file (psi, xi, bounds, module)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Module kind (overrides the config file)
    #[arg(long, global = true, value_enum)]
    module: Option<ModuleKind>,

    /// Cap on |lambda + mu|
    #[arg(long, global = true)]
    degree: Option<u32>,

    /// Cap on lambda(0)
    #[arg(long, global = true)]
    l0: Option<u32>,

    /// Cap on |t| (universal module only)
    #[arg(long, global = true)]
    zdeg: Option<u32>,

    /// Cap on operator indices in saturation probes
    #[arg(long = "gen-index", global = true)]
    gen_index: Option<u32>,

    /// Emit one JSON document instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lie bracket of two algebra elements
    Bracket { x: String, y: String },
    /// PBW normal form of a product of generators
    Normalize { expr: String },
    /// Act by an enveloping-algebra element on a module vector
    Act { operator: String, vector: String },
    /// Dot action g.v = g v - psi(g) v of a single generator
    Defect { generator: String, vector: String },
    /// Basis of the Whittaker vectors in the truncated module
    Solve,
    /// Reduce a vector to a multiple of the cyclic vector by dot actions
    Descend { vector: String },
    /// Smallest K with (g.)^K v = 0
    Nilpotency {
        generator: String,
        vector: String,
        #[arg(long, default_value_t = 20)]
        cap: u32,
    },
    /// Decide whether target lies in the submodule generated by the rest
    Member {
        target: String,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Check a degree-bound lemma on every instance in range
    Verify {
        #[arg(long)]
        lemma: String,
        #[arg(long = "a-max")]
        a_max: Option<u32>,
        #[arg(long = "k-max")]
        k_max: Option<u32>,
        #[arg(long = "m-max")]
        m_max: Option<u32>,
        #[arg(long = "deg-max")]
        deg_max: Option<u32>,
        #[arg(long = "l0-max")]
        l0_max: Option<u32>,
    },
    /// List the truncated module basis in enumeration order
    Basis,
    /// Evaluate the central exponents of a universal vector at xi
    Reduce { vector: String },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::MixedElement
        | Error::Usage(_)
        | Error::UnknownLemma(_)
        | Error::EmptyGenerators
        | Error::SpecMismatch => 1,
        Error::ForbiddenPsiValue(_)
        | Error::SingularPsi
        | Error::ZeroPsi
        | Error::DescentNeedsPsiI1 => 2,
        Error::DescentStuck { .. }
        | Error::WhittakerCounterexample(_)
        | Error::CapExhausted { .. } => 3,
    }
}

/// Read an element argument, with `-` standing for stdin.
fn read_arg(text: &str) -> Result<String> {
    if text == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        Ok(text.to_string())
    }
}

fn parse_vector(text: &str, spec: &ModuleSpec) -> Result<ModuleVector> {
    parse_element(&read_arg(text)?, Some(spec))?.into_vector(spec)
}

fn parse_uea(text: &str) -> Result<UEAElement> {
    parse_element(&read_arg(text)?, None)?.to_uea()
}

fn parse_lie(text: &str) -> Result<LieElement> {
    parse_element(&read_arg(text)?, None)?.to_lie()
}

fn lie_terms(x: &LieElement) -> Vec<serde_json::Value> {
    x.terms()
        .map(|(g, c)| json!([c.to_string(), g.to_string()]))
        .collect()
}

fn vector_terms(v: &ModuleVector) -> Vec<serde_json::Value> {
    v.terms()
        .map(|(idx, c)| json!([c.to_string(), format_basis_index(idx)]))
        .collect()
}

fn uea_terms(u: &UEAElement) -> Vec<serde_json::Value> {
    u.terms()
        .map(|(m, c)| {
            let body = format_uea(&UEAElement::monomial(m.clone()));
            json!([c.to_string(), body])
        })
        .collect()
}

fn emit(json_mode: bool, command: &str, text: String, result: serde_json::Value) {
    if json_mode {
        let doc = json!({
            "schemaVersion": 1,
            "command": command,
            "result": result,
        });
        println!("{doc}");
    } else {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = Config::load(
        cli.config.as_deref(),
        cli.module,
        cli.degree,
        cli.l0,
        cli.zdeg,
        cli.gen_index,
    )?;
    let json_mode = cli.json;

    match cli.command {
        Command::Bracket { x, y } => {
            let a = parse_lie(&x)?;
            let b = parse_lie(&y)?;
            let r = bracket(&a, &b);
            emit(
                json_mode,
                "bracket",
                format_lie(&r),
                json!({ "terms": lie_terms(&r) }),
            );
            Ok(0)
        }
        Command::Normalize { expr } => {
            let u = parse_uea(&expr)?;
            emit(
                json_mode,
                "normalize",
                format_uea(&u),
                json!({ "terms": uea_terms(&u) }),
            );
            Ok(0)
        }
        Command::Act { operator, vector } => {
            let spec = cfg.spec()?;
            let u = parse_uea(&operator)?;
            let v = parse_vector(&vector, &spec)?;
            let r = act_uea(&u, &v);
            emit(
                json_mode,
                "act",
                format_vector(&r),
                json!({ "terms": vector_terms(&r), "maxdeg": r.maxdeg() }),
            );
            Ok(0)
        }
        Command::Defect { generator, vector } => {
            let spec = cfg.spec()?;
            let g = parse_generator(&read_arg(&generator)?)?;
            let v = parse_vector(&vector, &spec)?;
            let r = defect(g, &v);
            emit(
                json_mode,
                "defect",
                format_vector(&r),
                json!({ "terms": vector_terms(&r), "maxdeg": r.maxdeg() }),
            );
            Ok(0)
        }
        Command::Solve => {
            let spec = cfg.spec()?;
            let sols = whittaker_solve(&spec, &cfg.bounds);
            let rendered: Vec<String> = sols.iter().map(format_vector).collect();
            emit(
                json_mode,
                "solve",
                format!("dimension {}: {}", sols.len(), rendered.join(", ")),
                json!({
                    "dimension": sols.len(),
                    "vectors": sols.iter().map(vector_terms).collect::<Vec<_>>(),
                }),
            );
            Ok(0)
        }
        Command::Descend { vector } => {
            let spec = cfg.spec()?;
            let v = parse_vector(&vector, &spec)?;
            let (trace, scalar) = descend(&v)?;
            let ops: Vec<String> = trace.iter().map(|g| g.to_string()).collect();
            let result = ModuleVector::cyclic(spec).scaled(&scalar);
            emit(
                json_mode,
                "descend",
                format!(
                    "trace: {}\nresult: {}",
                    ops.join(", "),
                    format_vector(&result)
                ),
                json!({
                    "trace": ops,
                    "scalar": scalar.to_string(),
                    "result": vector_terms(&result),
                }),
            );
            Ok(0)
        }
        Command::Nilpotency {
            generator,
            vector,
            cap,
        } => {
            let spec = cfg.spec()?;
            let g = parse_generator(&read_arg(&generator)?)?;
            let v = parse_vector(&vector, &spec)?;
            let k = nilpotency_index(g, &v, cap)?;
            emit(
                json_mode,
                "nilpotency",
                format!("{k}"),
                json!({ "index": k }),
            );
            Ok(0)
        }
        Command::Member { target, generators } => {
            let spec = cfg.spec()?;
            let t = parse_vector(&target, &spec)?;
            let gens: Vec<ModuleVector> = generators
                .iter()
                .map(|g| parse_vector(g, &spec))
                .collect::<Result<_>>()?;
            let report = submodule_membership(&t, &gens, &cfg.bounds)?;
            emit_membership(json_mode, &report);
            Ok(match report.outcome {
                Membership::Member(_) => 0,
                Membership::UnknownWithinBounds => 3,
            })
        }
        Command::Verify {
            lemma,
            a_max,
            k_max,
            m_max,
            deg_max,
            l0_max,
        } => {
            let defaults = LemmaRanges::default();
            let ranges = LemmaRanges {
                a_max: a_max.unwrap_or(defaults.a_max),
                k_max: k_max.unwrap_or(defaults.k_max),
                m_max: m_max.unwrap_or(defaults.m_max),
                deg_max: deg_max.unwrap_or(defaults.deg_max),
                l0_max: l0_max.unwrap_or(defaults.l0_max),
            };
            let report = verify_lemma(&cfg.psi, &lemma, &ranges)?;
            let mut text = format!(
                "{} instances, {} failures",
                report.instances,
                report.failures.len()
            );
            for f in &report.failures {
                text.push_str(&format!(
                    "\n  {}: expected {}, got {}",
                    f.parameters, f.expected, f.got
                ));
            }
            emit(
                json_mode,
                "verify",
                text,
                json!({
                    "lemma": report.lemma_id,
                    "instances": report.instances,
                    "failures": report.failures.iter().map(|f| json!({
                        "parameters": f.parameters,
                        "expected": f.expected,
                        "got": f.got,
                    })).collect::<Vec<_>>(),
                }),
            );
            Ok(if report.passed() { 0 } else { 3 })
        }
        Command::Basis => {
            let spec = cfg.spec()?;
            let indices = basis_enumerate(
                &spec,
                cfg.bounds.degree,
                cfg.bounds.l0,
                cfg.bounds.zdeg,
            );
            let rendered: Vec<String> = indices.iter().map(format_basis_index).collect();
            emit(
                json_mode,
                "basis",
                rendered.join("\n"),
                json!({ "count": indices.len(), "indices": rendered }),
            );
            Ok(0)
        }
        Command::Reduce { vector } => {
            let universal = ModuleSpec::universal(cfg.psi.clone())?;
            let v = parse_vector(&vector, &universal)?;
            let r = evaluate_central(&v, &cfg.xi)?;
            emit(
                json_mode,
                "reduce",
                format_vector(&r),
                json!({ "terms": vector_terms(&r) }),
            );
            Ok(0)
        }
    }
}

fn emit_membership(json_mode: bool, report: &MembershipReport) {
    let spanning: Vec<String> = report
        .spanning
        .iter()
        .map(|s| {
            let ops: Vec<String> = s.ops.iter().map(|g| g.to_string()).collect();
            if ops.is_empty() {
                format!("g{}", s.generator)
            } else {
                format!("{}.g{}", ops.join("."), s.generator)
            }
        })
        .collect();
    match &report.outcome {
        Membership::Member(witness) => {
            if json_mode {
                let doc = json!({
                    "schemaVersion": 1,
                    "command": "member",
                    "result": {
                        "status": "member",
                        "witness": witness.iter().map(|t| json!({
                            "coeff": t.coeff.to_string(),
                            "span": spanning[t.span],
                        })).collect::<Vec<_>>(),
                    },
                });
                println!("{doc}");
            } else {
                use num::traits::Signed;
                let mut expr = String::new();
                for t in witness {
                    let mag = t.coeff.abs();
                    if expr.is_empty() {
                        if t.coeff.is_negative() {
                            expr.push('-');
                        }
                    } else if t.coeff.is_negative() {
                        expr.push_str(" - ");
                    } else {
                        expr.push_str(" + ");
                    }
                    expr.push_str(&format!("{mag}*({})", spanning[t.span]));
                }
                println!("member: target = {expr}");
            }
        }
        Membership::UnknownWithinBounds => {
            if json_mode {
                let doc = json!({
                    "schemaVersion": 1,
                    "command": "member",
                    "result": { "status": "unknownWithinBounds" },
                });
                println!("{doc}");
            } else {
                println!("unknown within bounds");
            }
        }
    }
}
