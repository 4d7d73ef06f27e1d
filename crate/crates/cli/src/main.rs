use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use codealg::algebra::parse_params;
use codealg::codes::{automorphism_group, parse_code};
use codealg::fixtures;
use codealg::form::{admissible_lambdas, frobenius_form};
use codealg::group::{axis_orbit, miyamoto_group, Orbit, DEFAULT_ORBIT_BOUND};
use codealg::spectral::{eigen_decompose, fusion_law, seress_check};
use codealg::structure::{is_simple, Simplicity};
use codealg::{CodeAlgebra, Element, Error, Scalar};
use serde_json::{json, Map, Value};

mod element;
mod output;

use element::{Built, ElementSpec};

#[derive(Parser)]
#[command(name = "codealg", version, about = "Exact analysis of code algebras")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Code file: a header `n k` then k generator rows.
    #[arg(long)]
    code: PathBuf,
    /// Structure parameter file.
    #[arg(long)]
    params: PathBuf,
    /// Field discriminant d for Q(sqrt d).
    #[arg(long, allow_hyphen_values = true)]
    disc: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Summary: dimension, non-degeneracy, identity, simplicity, Frobenius form, groups.
    Report {
        #[command(flatten)]
        input: Input,
        /// Toral weight for the Frobenius form, as `i=p/q` (1-based, default 1).
        #[arg(long = "lambda", value_name = "I=P/Q")]
        lambdas: Vec<String>,
    },
    /// Eigenvalues, fusion law and orbit of an element.
    Spectrum {
        #[command(flatten)]
        input: Input,
        /// Orbit bound for the axis closure.
        #[arg(long, default_value_t = DEFAULT_ORBIT_BOUND)]
        bound: usize,
        /// `t i`, `smap D v root`, `small alpha sign` or a coordinate list.
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        element: Vec<String>,
    },
    /// Runs a named fixture and compares it with the stored expected output.
    Examples {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(fixtures::NAMES))]
        name: String,
    },
}

/// Exit 2: the input could not be used. Exit 1: an analysis failed.
enum Failure {
    Input(String),
    Analysis(String),
}

impl From<Built> for Failure {
    fn from(b: Built) -> Self {
        match b {
            Built::Input(m) => Failure::Input(m),
            Built::Analysis(m) => Failure::Analysis(m),
        }
    }
}

struct Outcome {
    value: Value,
    /// Tables and diagnostics; with `--json` they go to stderr on failure.
    tables: Vec<String>,
    failed: bool,
}

fn load(input: &Input) -> Result<CodeAlgebra, Failure> {
    let read = |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())));
    let code_text = read(&input.code)?;
    let params_text = read(&input.params)?;
    let code = parse_code(&code_text).map_err(|e| Failure::Input(format!("{}: {e}", input.code.display())))?;
    let file = parse_params(&params_text, &code).map_err(|e| Failure::Input(format!("{}: {e}", input.params.display())))?;
    let alg = CodeAlgebra::new(code, file.params).map_err(|e| Failure::Input(e.to_string()))?;
    let mut alg = alg;
    for d in [file.disc, input.disc].into_iter().flatten() {
        alg = alg.with_field(d).map_err(|e| Failure::Input(e.to_string()))?;
    }
    Ok(alg)
}

fn elements(alg: &CodeAlgebra, xs: &[Element]) -> Value {
    json!(xs.iter().map(|x| alg.format_element(x)).collect::<Vec<_>>())
}

fn parse_lambdas(alg: &CodeAlgebra, specs: &[String]) -> Result<Option<Vec<Scalar>>, Failure> {
    if specs.is_empty() {
        return Ok(None);
    }
    let mut lambda = vec![Scalar::one(); alg.n()];
    for s in specs {
        let bad = || Failure::Input(format!("--lambda expects i=p/q with 1 <= i <= {}, got `{s}`", alg.n()));
        let (i, v) = s.split_once('=').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        if i == 0 || i > alg.n() {
            return Err(bad());
        }
        lambda[i - 1] = v.trim().parse().map_err(|_| bad())?;
    }
    Ok(Some(lambda))
}

fn report(input: &Input, lambdas: &[String]) -> Result<Outcome, Failure> {
    let alg = load(input)?;
    let lambda = parse_lambdas(&alg, lambdas)?;
    let mut errors: Vec<String> = Vec::new();
    let mut out = Map::new();
    let code = alg.code();
    out.insert(
        "code".into(),
        json!({ "n": code.len(), "k": code.dim(), "generators": code.generators() }),
    );
    out.insert("field".into(), json!(alg.disc()));
    out.insert("dim".into(), json!(alg.dim()));
    out.insert("non_degenerate".into(), json!(alg.is_nondegenerate()));
    let unit = alg.solve_identity();
    out.insert("unital".into(), json!(unit.is_some()));
    out.insert("identity".into(), json!(unit.map(|u| alg.format_element(&u))));

    match is_simple(&alg) {
        Ok(Simplicity::Simple) => {
            out.insert("simple".into(), json!(true));
        }
        Ok(Simplicity::Nonsimple(ideals)) => {
            out.insert("simple".into(), json!(false));
            let list: Vec<Value> = ideals.iter().map(|i| elements(&alg, &i.basis())).collect();
            out.insert("ideals".into(), json!(list));
        }
        Err(e) => {
            out.insert("simple".into(), Value::Null);
            errors.push(format!("simplicity: {e}"));
        }
    }

    let form = match frobenius_form(&alg, lambda.as_deref()) {
        Ok(f) => {
            let mut v = serde_json::to_value(&f).expect("serialisable");
            v["exists"] = json!(true);
            v
        }
        Err(e @ (Error::ConditionOneFails { .. } | Error::ConditionTwoFails { .. })) => {
            json!({ "exists": false, "reason": e.to_string() })
        }
        Err(e) => {
            errors.push(format!("frobenius: {e}"));
            json!({ "exists": Value::Null })
        }
    };
    out.insert("frobenius".into(), form);
    out.insert("admissible_lambda_dim".into(), json!(admissible_lambdas(&alg).len()));

    let miyamoto = match miyamoto_group(&alg) {
        Ok(m) => json!({ "order": m.order.to_string(), "kernel_dim": m.kernel.dim() }),
        Err(e) => json!({ "order": Value::Null, "reason": e.to_string() }),
    };
    out.insert("miyamoto".into(), miyamoto);
    match automorphism_group(code) {
        Ok(g) => {
            out.insert("aut_order".into(), json!(g.len()));
        }
        Err(e) => {
            out.insert("aut_order".into(), Value::Null);
            errors.push(format!("automorphisms: {e}"));
        }
    }
    out.insert("errors".into(), json!(errors));
    Ok(Outcome {
        value: Value::Object(out),
        tables: Vec::new(),
        failed: !errors.is_empty(),
    })
}

fn orbit_value(orbit: &Orbit) -> Value {
    match orbit {
        Orbit::Closed(xs) => json!({ "closed": true, "size": xs.len() }),
        Orbit::Growing(k) => json!({ "closed": false, "size": k }),
    }
}

fn spectrum(input: &Input, bound: usize, spec: &str) -> Result<Outcome, Failure> {
    let mut alg = load(input)?;
    let spec = ElementSpec::parse(spec).map_err(|e| Failure::Input(e.0))?;
    let (x, disc) = spec.build(&alg)?;
    if let Some(d) = disc.filter(|&d| d != 1 && d != alg.disc()) {
        alg = alg.with_field(d).map_err(|e| Failure::Analysis(e.to_string()))?;
    }
    let mut out = Map::new();
    let mut tables = Vec::new();
    out.insert("element".into(), json!(alg.format_element(&x)));
    out.insert("field".into(), json!(alg.disc()));
    let idempotent = alg.is_idempotent(&x);
    out.insert("idempotent".into(), json!(idempotent));
    let dec = eigen_decompose(&alg, &x, &[]);
    let dims: Vec<Value> = dec.dims().iter().map(|(v, d)| json!({ "value": v, "dim": d })).collect();
    out.insert("eigenvalues".into(), json!(dims));
    out.insert("semisimple".into(), json!(dec.is_semisimple()));
    if !dec.is_semisimple() {
        out.insert("residual_dim".into(), json!(dec.residual_dim));
    }
    let one = dec.space(&Scalar::one()).map_or(0, |s| s.dim());
    out.insert("primitive".into(), json!(idempotent && dec.is_semisimple() && one == 1));

    if idempotent && dec.is_semisimple() {
        let law = fusion_law(&alg, &dec).map_err(|e| Failure::Analysis(e.to_string()))?;
        tables.push(format!("fusion law:\n{law}"));
        out.insert("fusion".into(), serde_json::to_value(&law).expect("serialisable"));
        out.insert("seress".into(), json!(seress_check(&law).ok()));
        out.insert("grading".into(), json!(law.z2_grading()));
        let mut axes = vec![x.clone()];
        axes.extend((0..alg.n()).map(|i| alg.t(i)));
        let orbit = match axis_orbit(&alg, &axes, bound) {
            Ok(o) => orbit_value(&o),
            Err(e) => json!({ "closed": Value::Null, "reason": e.to_string() }),
        };
        out.insert("orbit_with_torus".into(), orbit);
    }
    Ok(Outcome {
        value: Value::Object(out),
        tables,
        failed: false,
    })
}

fn golden(name: &str) -> &'static str {
    match name {
        "f2sq" => include_str!("../fixtures/f2sq.json"),
        "even3" => include_str!("../fixtures/even3.json"),
        "hamming8" => include_str!("../fixtures/hamming8.json"),
        _ => unreachable!("checked by clap"),
    }
}

/// JSON pointers at which `a` and `b` differ.
fn differences(a: &Value, b: &Value, path: String, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for k in x.keys().chain(y.keys().filter(|k| !x.contains_key(*k))) {
                let p = format!("{path}/{k}");
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => differences(u, v, p, out),
                    _ => out.push(p),
                }
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                differences(u, v, format!("{path}/{i}"), out);
            }
        }
        _ if a != b => out.push(if path.is_empty() { "/".into() } else { path }),
        _ => {}
    }
}

fn examples(name: &str) -> Result<Outcome, Failure> {
    let report = fixtures::run(name)
        .expect("checked by clap")
        .map_err(|e| Failure::Analysis(e.to_string()))?;
    let value = serde_json::to_value(&report).expect("serialisable");
    let expected: Value = serde_json::from_str(golden(name)).expect("stored fixture is JSON");
    let mut diff = Vec::new();
    differences(&expected, &value, String::new(), &mut diff);
    let failed: Vec<String> = report.failures().iter().map(|c| c.name.clone()).collect();
    let mut tables = Vec::new();
    if !diff.is_empty() {
        tables.push(format!("fixture mismatch at {}", diff.join(", ")));
    }
    if !failed.is_empty() {
        tables.push(format!("failed checks: {}", failed.join("; ")));
    }
    Ok(Outcome {
        value,
        tables,
        failed: !diff.is_empty() || !failed.is_empty(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Report { input, lambdas } => report(input, lambdas),
        Command::Spectrum { input, bound, element } => spectrum(input, *bound, &element.join(" ")),
        Command::Examples { name } => examples(name),
    };
    match result {
        Ok(outcome) => {
            // A closed pipe is not worth a panic.
            let mut stdout = std::io::stdout().lock();
            if cli.json {
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&outcome.value).expect("serialisable"));
                for t in outcome.tables.iter().filter(|_| outcome.failed) {
                    eprintln!("{t}");
                }
            } else {
                let mut shown = outcome.value.clone();
                if let Value::Object(map) = &mut shown {
                    // The table below is easier to read.
                    map.remove("fusion");
                }
                let _ = write!(stdout, "{}", output::render(&shown));
                for t in &outcome.tables {
                    let _ = writeln!(stdout, "{t}");
                }
            }
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Analysis(msg)) => {
            eprintln!("analysis failed: {msg}");
            ExitCode::from(1)
        }
    }
}
