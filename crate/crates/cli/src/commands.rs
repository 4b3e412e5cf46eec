//! Subcommands: gather inputs, then run them against the core library.

use std::collections::BTreeMap;

use clap::{Subcommand, ValueEnum};
use maslov_core::verify::{run_suite, Suite};
use maslov_core::{
    check_signature_relation, crossing_index, holonomy_value, hormander_index, q_psi, reduce, relative_index,
    transition_factor, winding_index, BetaChoice, HormanderMethod, IsotropicSubspace, MaslovError, Tolerances,
};
use serde_json::{json, Value};

use crate::input;
use crate::report::{CliError, Outcome, Status};

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Signature,
    Path,
    Both,
}

/// Every JSON argument may be inline JSON, a keyword (`vertical`,
/// `horizontal`, `auto`) or a path to a JSON file.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maslov index of a loop as the degree of Det².
    Winding {
        /// Path spec (inline samples or a generated loop).
        path: String,
    },
    /// Maslov index of a loop as a sum of crossing-form jumps against α.
    Crossings {
        path: String,
        #[arg(long, default_value = "vertical")]
        alpha: String,
        /// A frame transversal to α, or `auto`.
        #[arg(long, default_value = "auto")]
        beta: String,
    },
    /// Hörmander index s(α, α'; β, β').
    Hormander {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        alpha_prime: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        beta_prime: String,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        /// Half-dimension, needed only when every frame is a keyword.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Index of λ relative to λ₀ along σ.
    Relative {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        lambda0: String,
        #[arg(long)]
        sigma: String,
    },
    /// Symplectic reduction of λ by the isotropic Δ (columns span Δ).
    Reduce {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        delta: String,
    },
    /// Holonomy i^μ of the Maslov bundle, as an exponent of i.
    Holonomy {
        #[arg(allow_negative_numbers = true)]
        mu: i64,
    },
    /// Q_ψ, the signature relation, and transition factors between charts.
    Charts {
        /// Chart files; transitions are taken from the first to each other.
        #[arg(required = true)]
        charts: Vec<String>,
    },
    /// Runs a seeded property suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// Parsed inputs, keyed by argument name; their canonical form is hashed.
pub type Inputs = BTreeMap<&'static str, Value>;

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Winding { .. } => "winding",
            Command::Crossings { .. } => "crossings",
            Command::Hormander { .. } => "hormander",
            Command::Relative { .. } => "relative",
            Command::Reduce { .. } => "reduce",
            Command::Holonomy { .. } => "holonomy",
            Command::Charts { .. } => "charts",
            Command::Verify { .. } => "verify",
        }
    }

    /// Command line echo for the report.
    pub fn echo(&self) -> Value {
        let args = match self {
            Command::Winding { path } => json!({ "path": path }),
            Command::Crossings { path, alpha, beta } => json!({ "path": path, "alpha": alpha, "beta": beta }),
            Command::Hormander { alpha, alpha_prime, beta, beta_prime, method, n } => json!({
                "alpha": alpha, "alpha_prime": alpha_prime, "beta": beta, "beta_prime": beta_prime,
                "method": method_name(*method), "n": n,
            }),
            Command::Relative { lambda, lambda0, sigma } => json!({ "lambda": lambda, "lambda0": lambda0, "sigma": sigma }),
            Command::Reduce { lambda, delta } => json!({ "lambda": lambda, "delta": delta }),
            Command::Holonomy { mu } => json!({ "mu": mu }),
            Command::Charts { charts } => json!({ "charts": charts }),
            Command::Verify { suite, trials } => json!({ "suite": suite, "trials": trials }),
        };
        json!({ "name": self.name(), "args": args })
    }

    /// Loads every JSON argument, so the digest covers resolved file contents.
    pub fn gather(&self) -> Result<Inputs> {
        let mut inputs = Inputs::new();
        match self {
            Command::Winding { path } => {
                inputs.insert("path", input::load(path)?);
            }
            Command::Crossings { path, alpha, beta } => {
                inputs.insert("path", input::load(path)?);
                inputs.insert("alpha", input::load(alpha)?);
                inputs.insert("beta", input::load(beta)?);
            }
            Command::Hormander { alpha, alpha_prime, beta, beta_prime, method, n } => {
                inputs.insert("alpha", input::load(alpha)?);
                inputs.insert("alpha_prime", input::load(alpha_prime)?);
                inputs.insert("beta", input::load(beta)?);
                inputs.insert("beta_prime", input::load(beta_prime)?);
                inputs.insert("method", json!(method_name(*method)));
                inputs.insert("n", json!(n));
            }
            Command::Relative { lambda, lambda0, sigma } => {
                inputs.insert("lambda", input::load(lambda)?);
                inputs.insert("lambda0", input::load(lambda0)?);
                inputs.insert("sigma", input::load(sigma)?);
            }
            Command::Reduce { lambda, delta } => {
                inputs.insert("lambda", input::load(lambda)?);
                inputs.insert("delta", input::load(delta)?);
            }
            Command::Holonomy { mu } => {
                inputs.insert("mu", json!(mu));
            }
            Command::Charts { charts } => {
                inputs.insert("charts", Value::Array(charts.iter().map(|c| input::load(c)).collect::<Result<_>>()?));
            }
            Command::Verify { suite, trials } => {
                inputs.insert("suite", json!(suite));
                inputs.insert("trials", json!(trials));
            }
        }
        Ok(inputs)
    }

    pub fn run(&self, inputs: &Inputs, seed: u64, tol: &Tolerances) -> Result<Outcome> {
        let get = |key: &str| &inputs[key];
        match self {
            Command::Winding { .. } => winding(get("path"), seed, tol),
            Command::Crossings { .. } => crossings(get("path"), get("alpha"), get("beta"), seed, tol),
            Command::Hormander { method, n, .. } => {
                let values = [get("alpha"), get("alpha_prime"), get("beta"), get("beta_prime")];
                hormander(values, *method, *n, tol)
            }
            Command::Relative { .. } => relative(get("lambda"), get("lambda0"), get("sigma"), seed, tol),
            Command::Reduce { .. } => reduction(get("lambda"), get("delta"), tol),
            Command::Holonomy { mu } => Ok(holonomy(*mu)),
            Command::Charts { .. } => charts(get("charts"), tol),
            Command::Verify { suite, trials } => verify(suite, *trials, seed, tol),
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Signature => "signature",
        Method::Path => "path",
        Method::Both => "both",
    }
}

fn winding(path: &Value, seed: u64, tol: &Tolerances) -> Result<Outcome> {
    let path = input::path(path, seed, tol, "path")?;
    if !path.is_closed() {
        return Err(MaslovError::Precondition("the winding index needs a closed path".into()).into());
    }
    let r = winding_index(&path, tol)?;
    Ok(Outcome::ok(
        json!({ "index": r.index }),
        json!({ "max_phase_step": r.max_phase_step, "residual": r.residual, "samples": path.len() }),
    ))
}

fn crossings(path: &Value, alpha: &Value, beta: &Value, seed: u64, tol: &Tolerances) -> Result<Outcome> {
    let path = input::path(path, seed, tol, "path")?;
    let n = Some(path.space().half_dim());
    let alpha = input::frame(alpha, n, tol, "alpha")?;
    let (beta, beta_name) = match beta.as_str() {
        Some("auto") => (BetaChoice::Auto, "auto"),
        _ => (BetaChoice::Fixed(input::frame(beta, n, tol, "beta")?), "fixed"),
    };
    let r = crossing_index(&path, &alpha, &beta, tol)?;
    let table: Vec<Value> = r
        .events
        .iter()
        .map(|e| json!({ "t": e.t_star, "dim": e.crossing_dim, "jump": e.jump }))
        .collect();
    Ok(Outcome::ok(
        json!({ "index": r.index, "crossings": r.events.len() }),
        json!({ "beta": beta_name, "events": table, "samples": path.len() }),
    ))
}

fn hormander(values: [&Value; 4], method: Method, n: Option<usize>, tol: &Tolerances) -> Result<Outcome> {
    let n = n.or_else(|| values.iter().find_map(|v| input::frame_dim(v)));
    let names = ["alpha", "alpha_prime", "beta", "beta_prime"];
    let mut frames = Vec::with_capacity(4);
    for (v, name) in values.into_iter().zip(names) {
        frames.push(input::frame(v, n, tol, name)?);
    }
    let [a, ap, b, bp] = &frames[..] else { unreachable!() };
    let run = |m| hormander_index(a, ap, b, bp, m, tol);
    match method {
        Method::Signature => Ok(Outcome::ok(json!({ "index": run(HormanderMethod::Signature)? }), json!({}))),
        Method::Path => Ok(Outcome::ok(json!({ "index": run(HormanderMethod::Path)? }), json!({}))),
        Method::Both => {
            let path = run(HormanderMethod::Path)?;
            match run(HormanderMethod::Signature) {
                Ok(sig) => {
                    let equal = sig == path;
                    let status = if equal { Status::Ok } else { Status::Mismatch };
                    Ok(Outcome {
                        results: json!({ "index": path, "signature": sig, "path": path, "equal": equal }),
                        diagnostics: json!({}),
                        status,
                    })
                }
                // α, α' not transversal: only the path method applies.
                Err(e @ MaslovError::MethodDomain { .. }) => Ok(Outcome::ok(
                    json!({ "index": path, "signature": null, "path": path, "equal": null }),
                    json!({ "signature_skipped": e.to_string() }),
                )),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn relative(lambda: &Value, lambda0: &Value, sigma: &Value, seed: u64, tol: &Tolerances) -> Result<Outcome> {
    let lambda = input::path(lambda, seed, tol, "lambda")?;
    let lambda0 = input::path(lambda0, seed, tol, "lambda0")?;
    let sigma = input::path(sigma, seed, tol, "sigma")?;
    let index = relative_index(&lambda, &lambda0, &sigma, tol)?;
    Ok(Outcome::ok(json!({ "index": index }), json!({})))
}

fn reduction(lambda: &Value, delta: &Value, tol: &Tolerances) -> Result<Outcome> {
    let lambda = input::frame(lambda, None, tol, "lambda")?;
    let delta = IsotropicSubspace::new(input::matrix_any(delta, "delta")?, tol)?;
    let reduced = reduce(&lambda, &delta, tol)?;
    Ok(Outcome::ok(
        json!({ "n": reduced.n(), "frame": input::frame_rows(&reduced) }),
        json!({ "input_n": lambda.n(), "delta_dim": delta.dim() }),
    ))
}

fn holonomy(mu: i64) -> Outcome {
    Outcome::ok(json!({ "mu": mu, "exponent": holonomy_value(mu).exponent() }), json!({}))
}

fn charts(values: &Value, tol: &Tolerances) -> Result<Outcome> {
    let files = values
        .as_array()
        .expect("gathered as an array")
        .iter()
        .enumerate()
        .map(|(k, v)| input::chart(v, tol, &format!("charts[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let mut per_chart = Vec::new();
    for f in &files {
        let q = q_psi(&f.chart, &f.psi, tol)?;
        let mut entry = json!({
            "n": f.chart.n(),
            "N": f.chart.fiber_dim(),
            "fiber_signature": f.chart.fiber_signature(tol)?,
            "q_psi_nondegenerate": q.nondegenerate,
            "q_psi_signature": q.form.signature(),
        });
        if q.nondegenerate {
            let r = check_signature_relation(&f.chart, &f.psi, tol)?;
            entry["crossing_form_signature"] = json!(r.crossing_form_signature);
            entry["relation_holds"] = json!(r.equal);
        }
        per_chart.push(entry);
    }
    let mut transitions = Vec::new();
    for (k, other) in files.iter().enumerate().skip(1) {
        let factor = transition_factor(&files[0].chart, &other.chart, &files[0].psi, tol)?;
        // e^{iπk/4} = i^{k/2}; half-integers are exact in binary
        let eighth = factor.exponent();
        transitions.push(json!({ "from": 0, "to": k, "eighth_turns": eighth, "exponent": f64::from(eighth) / 2.0 }));
    }
    let relation_broken = per_chart.iter().any(|c| c["relation_holds"] == json!(false));
    Ok(Outcome {
        results: json!({ "charts": per_chart, "transitions": transitions }),
        diagnostics: json!({}),
        status: if relation_broken { Status::Mismatch } else { Status::Ok },
    })
}

fn verify(suite: &str, trials: usize, seed: u64, tol: &Tolerances) -> Result<Outcome> {
    let suite: Suite = suite.parse()?;
    let r = run_suite(suite, trials, seed, tol)?;
    let first = r.first_failure.as_ref().map(|(trial, message)| json!({ "trial": trial, "message": message }));
    Ok(Outcome {
        results: json!({
            "suite": suite.name(),
            "trials": r.trials,
            "passed": r.passed,
            "raised": r.raised,
            "failed": r.failed,
            "all_passed": r.all_passed(),
        }),
        diagnostics: json!({ "first_failure": first }),
        status: if r.all_passed() { Status::Ok } else { Status::SuiteFailed },
    })
}
