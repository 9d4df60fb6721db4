//! `macdo`: compute Macdonald polynomials and their separated one-variable
//! counterparts, run the library's verification suites, and evaluate either
//! object at numeric parameters.
//!
//! Exact objects print as canonical strings, or as a JSON envelope
//! `{"object", "n", "lambda", "basis", "terms": [{"key", "coeff"}]}` under
//! `--json`.  Suite reports list one line per case; a suite exits nonzero
//! iff any case failed.  `MACDO_THREADS` caps the worker pool.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use macdo_core::macdonald::{eigenvalues, macdonald_p};
use macdo_core::separated::phi_via_chi;
use macdo_core::suites::{run_suite, SuiteParams};
use macdo_core::weights::DominantWeight;
use macdo_core::Error;

#[derive(Parser)]
#[command(name = "macdo", version, about = "Macdonald polynomials, their separated factors, and the identities connecting them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an exact object as a canonical string (or JSON with --json).
    Compute(ComputeArgs),
    /// Run a named verification suite and report per-case results.
    Verify(VerifyArgs),
    /// Evaluate an object at numeric q, t and coordinates.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "P", alias = "p")]
    P,
    Phi,
    Chi,
    Eigen,
}

#[derive(Args)]
struct ComputeArgs {
    /// Which object to compute.
    #[arg(value_enum)]
    kind: Kind,
    /// Weight as comma-joined ascending integers, e.g. 0,0,2.
    #[arg(long)]
    lambda: String,
    /// Variable count; must match the weight length when given.
    #[arg(long)]
    n: Option<usize>,
    /// Emit the JSON envelope instead of the canonical string.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: eigen, commute, sepeq, spectral, phi-consistency, aw,
    /// thm1, thm2, thm3, thm4, integer-g, orthogonality, or all.
    suite: String,
    /// Restrict to one variable count.
    #[arg(long)]
    n: Option<usize>,
    /// Restrict to one weight.
    #[arg(long)]
    lambda: Option<String>,
    /// Integer coupling for the integer-g suite.
    #[arg(long)]
    g: Option<i64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    xi: Option<f64>,
    /// Weight-part cap for suites that enumerate weights.
    #[arg(long)]
    max_part: Option<i64>,
    /// Quadrature nodes on the circle.
    #[arg(long)]
    points: Option<usize>,
    /// Infinite-product truncation budget.
    #[arg(long)]
    trunc: Option<usize>,
    /// Tolerance override for numeric cases.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for randomized draws.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of random draws per parameter set.
    #[arg(long, default_value_t = 25)]
    draws: usize,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Which object to evaluate.
    #[arg(value_enum)]
    kind: Kind,
    /// Weight as comma-joined ascending integers.
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    t: f64,
    /// Coordinates: n values for P, one value for phi, none for chi/eigen.
    #[arg(value_name = "COORD")]
    coords: Vec<f64>,
    /// Emit the values as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    object: String,
    n: usize,
    lambda: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    basis: Option<String>,
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    key: String,
    coeff: String,
}

fn parse_weight(s: &str, n: Option<usize>) -> Result<DominantWeight, Error> {
    let lam = DominantWeight::parse(s)?;
    if let Some(n) = n {
        if n != lam.n() {
            return Err(Error::Invalid(format!(
                "--n {n} disagrees with the {}-part weight {s}",
                lam.n()
            )));
        }
    }
    Ok(lam)
}

fn cmd_compute(args: &ComputeArgs) -> Result<(), Error> {
    let lam = parse_weight(&args.lambda, args.n)?;
    let (basis, terms, text) = match args.kind {
        Kind::P => {
            let p = macdonald_p(&lam)?;
            let terms = p
                .iter()
                .map(|(mu, c)| Term {
                    key: mu.to_string(),
                    coeff: c.to_string(),
                })
                .collect();
            (Some("monomial"), terms, p.to_string())
        }
        Kind::Phi => {
            let phi = phi_via_chi(&lam)?;
            let terms = (phi.k_min()..=phi.k_max())
                .map(|k| Term {
                    key: k.to_string(),
                    coeff: phi.chi(k).to_string(),
                })
                .collect();
            (Some("power-of-y"), terms, phi.to_string())
        }
        Kind::Chi => {
            let phi = phi_via_chi(&lam)?;
            let terms: Vec<Term> = (phi.k_min()..=phi.k_max())
                .map(|k| Term {
                    key: k.to_string(),
                    coeff: phi.chi(k).to_string(),
                })
                .collect();
            let text = terms
                .iter()
                .map(|t| format!("chi_{} = {}", t.key, t.coeff))
                .collect::<Vec<_>>()
                .join("\n");
            (Some("power-of-y"), terms, text)
        }
        Kind::Eigen => {
            let hs = eigenvalues(&lam);
            let terms: Vec<Term> = hs
                .iter()
                .enumerate()
                .map(|(i, h)| Term {
                    key: format!("h{}", i + 1),
                    coeff: h.to_string(),
                })
                .collect();
            let text = terms
                .iter()
                .map(|t| format!("{} = {}", t.key, t.coeff))
                .collect::<Vec<_>>()
                .join("\n");
            (None, terms, text)
        }
    };
    if args.json {
        let env = Envelope {
            object: match args.kind {
                Kind::P => "P",
                Kind::Phi => "phi",
                Kind::Chi => "chi",
                Kind::Eigen => "eigen",
            }
            .into(),
            n: lam.n(),
            lambda: lam.parts().to_vec(),
            basis: basis.map(Into::into),
            terms,
        };
        println!("{}", serde_json::to_string_pretty(&env).expect("serialisable"));
    } else {
        println!("{text}");
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let lambda = match &args.lambda {
        Some(s) => Some(parse_weight(s, args.n)?),
        None => None,
    };
    let params = SuiteParams {
        n: args.n,
        lambda,
        g: args.g,
        q: args.q,
        t: args.t,
        xi: args.xi,
        max_part: args.max_part,
        points: args.points,
        trunc: args.trunc,
        tol: args.tol,
        seed: args.seed,
        draws: args.draws,
    };
    let report = run_suite(&args.suite, &params)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serialisable")
        );
    } else {
        print!("{}", report.render_text());
    }
    Ok(report.all_pass())
}

fn format_value(v: Complex64) -> String {
    if v.im.abs() <= 1e-14 * v.re.abs().max(1.0) {
        format!("{}", v.re)
    } else {
        format!("{} + {}i", v.re, v.im)
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<(), Error> {
    let lam = parse_weight(&args.lambda, None)?;
    let (q, t) = (args.q, args.t);
    if !(q.abs() < 1.0) || t <= 0.0 {
        return Err(Error::Invalid(format!(
            "evaluation needs |q| < 1 and t > 0, got q={q}, t={t}"
        )));
    }
    let qc = Complex64::new(q, 0.0);
    let tau = Complex64::new(t.sqrt(), 0.0);
    let values: Vec<(String, Complex64)> = match args.kind {
        Kind::P => {
            if args.coords.len() != lam.n() {
                return Err(Error::Invalid(format!(
                    "P over {} variables needs {} coordinates, got {}",
                    lam.n(),
                    lam.n(),
                    args.coords.len()
                )));
            }
            let xs: Vec<Complex64> = args.coords.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let v = macdonald_p(&lam)?.eval_complex(qc, tau, &xs)?;
            vec![("P".into(), v)]
        }
        Kind::Phi => {
            if args.coords.len() != 1 {
                return Err(Error::Invalid(format!(
                    "phi takes exactly one coordinate, got {}",
                    args.coords.len()
                )));
            }
            let y = Complex64::new(args.coords[0], 0.0);
            let v = phi_via_chi(&lam)?.eval(y, q, t)?;
            vec![("phi".into(), v)]
        }
        Kind::Chi => {
            if !args.coords.is_empty() {
                return Err(Error::Invalid(
                    "chi takes no coordinates; it lists the coefficients".into(),
                ));
            }
            let phi = phi_via_chi(&lam)?;
            (phi.k_min()..=phi.k_max())
                .map(|k| Ok((format!("chi_{k}"), phi.chi(k).eval_complex(&[qc, tau])?)))
                .collect::<Result<Vec<_>, Error>>()?
        }
        Kind::Eigen => {
            if !args.coords.is_empty() {
                return Err(Error::Invalid(
                    "eigen takes no coordinates; it lists the eigenvalues".into(),
                ));
            }
            eigenvalues(&lam)
                .iter()
                .enumerate()
                .map(|(i, h)| Ok((format!("h{}", i + 1), h.eval_complex(&[qc, tau])?)))
                .collect::<Result<Vec<_>, Error>>()?
        }
    };
    if args.json {
        #[derive(Serialize)]
        struct EvalOut<'a> {
            object: &'a str,
            lambda: Vec<i64>,
            q: f64,
            t: f64,
            coords: &'a [f64],
            values: Vec<EvalValue>,
        }
        #[derive(Serialize)]
        struct EvalValue {
            key: String,
            re: f64,
            im: f64,
        }
        let out = EvalOut {
            object: match args.kind {
                Kind::P => "eval-P",
                Kind::Phi => "eval-phi",
                Kind::Chi => "eval-chi",
                Kind::Eigen => "eval-eigen",
            },
            lambda: lam.parts().to_vec(),
            q,
            t,
            coords: &args.coords,
            values: values
                .iter()
                .map(|(k, v)| EvalValue {
                    key: k.clone(),
                    re: v.re,
                    im: v.im,
                })
                .collect(),
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serialisable"));
    } else {
        for (k, v) in &values {
            println!("{k} = {}", format_value(*v));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("MACDO_THREADS") {
        match threads.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                eprintln!("error: MACDO_THREADS must be a positive integer, got '{threads}'");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute(args) => cmd_compute(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
        Command::Eval(args) => cmd_eval(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
