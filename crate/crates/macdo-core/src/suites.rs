//! Named verification suites behind the command-line front end.
//!
//! Each suite runs a list of independent cases and reports one
//! [`CaseResult`] per case.  Exact cases record a yes/no equality over the
//! coefficient field; numeric cases additionally record the quadrature
//! metadata (node count, truncation budget, tolerance) and the achieved
//! relative error, so that every numeric report line is self-describing.
//! Cases are dispatched to a worker pool; randomized draws are generated
//! up front from a seeded stream, so reports are deterministic for a fixed
//! seed.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::RatFunc;
use crate::factorise::{
    aw_integral, factorisation_sides_n2, factorisation_sides_n3, integer_g_inverse,
    macdonald_at_integer_g, reconstruction_n2, reconstruction_n3, round_trip_n2, round_trip_n3,
    torus_gram, AWParams, QuadratureConfig,
};
use crate::macdonald::{apply_h, commutes_on, eigenvalues, macdonald_p};
use crate::separated::{
    chi_closed_forms, phi_at_t_power_n, phi_via_chi, phi_via_lauricella, reduced_params_n3,
    separation_params, separation_residual, spectral_equations_hold,
};
use crate::weights::{weights_up_to_size, weights_with_max_part, DominantWeight, SymmetricPoly};

/// The suite names accepted by [`run_suite`], besides `all`.
pub const SUITE_NAMES: &[&str] = &[
    "eigen",
    "commute",
    "sepeq",
    "spectral",
    "phi-consistency",
    "aw",
    "thm1",
    "thm2",
    "thm3",
    "thm4",
    "integer-g",
    "orthogonality",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Error,
}

/// Quadrature metadata attached to every numeric case.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumericMeta {
    pub points: usize,
    pub trunc: usize,
    pub tol: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub status: CaseStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numeric: Option<NumericMeta>,
    pub millis: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn new(suite: &str, cases: Vec<CaseResult>) -> Self {
        let passed = cases
            .iter()
            .filter(|c| c.status == CaseStatus::Pass)
            .count();
        let failed = cases.len() - passed;
        SuiteReport {
            suite: suite.into(),
            passed,
            failed,
            cases,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// One line per case plus a summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let tag = match c.status {
                CaseStatus::Pass => "PASS",
                CaseStatus::Fail => "FAIL",
                CaseStatus::Error => "ERROR",
            };
            out.push_str(&format!("[{tag}] {}", c.name));
            if let Some(m) = &c.numeric {
                out.push_str(&format!(
                    " (points={}, trunc={}, tol={:.1e}, err={:.3e})",
                    m.points, m.trunc, m.tol, m.error
                ));
            }
            if c.status != CaseStatus::Pass {
                out.push_str(&format!(" :: {}", c.detail));
            }
            out.push_str(&format!(" [{} ms]\n", c.millis));
        }
        out.push_str(&format!(
            "suite {}: {} passed, {} failed\n",
            self.suite, self.passed, self.failed
        ));
        out
    }
}

/// Flag values shared by all suites; `None` means the suite default.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub lambda: Option<DominantWeight>,
    pub g: Option<i64>,
    pub q: Option<f64>,
    pub t: Option<f64>,
    pub xi: Option<f64>,
    pub max_part: Option<i64>,
    pub points: Option<usize>,
    pub trunc: Option<usize>,
    pub tol: Option<f64>,
    pub seed: u64,
    pub draws: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            n: None,
            lambda: None,
            g: None,
            q: None,
            t: None,
            xi: None,
            max_part: None,
            points: None,
            trunc: None,
            tol: None,
            seed: 7,
            draws: 25,
        }
    }
}

impl SuiteParams {
    fn quad(&self, default_points: usize) -> QuadratureConfig {
        let mut cfg = QuadratureConfig::default();
        cfg.points = self.points.unwrap_or(default_points);
        if let Some(trunc) = self.trunc {
            cfg.trunc = trunc;
        }
        if let Some(tol) = self.tol {
            cfg.tol = tol.min(cfg.tol);
        }
        cfg
    }

    fn ns(&self, default: &[usize]) -> Vec<usize> {
        self.n.map(|n| vec![n]).unwrap_or_else(|| default.to_vec())
    }

    fn lambdas_or(&self, fallback: Vec<DominantWeight>) -> Vec<DominantWeight> {
        match &self.lambda {
            Some(l) => vec![l.clone()],
            None => fallback,
        }
    }
}

fn weight(parts: &[i64]) -> DominantWeight {
    DominantWeight::new(parts.to_vec()).expect("suite weights are valid")
}

fn run_exact(name: String, f: impl FnOnce() -> Result<bool>) -> CaseResult {
    let start = Instant::now();
    let (status, detail) = match f() {
        Ok(true) => (CaseStatus::Pass, "exact".to_string()),
        Ok(false) => (CaseStatus::Fail, "exact equality failed".to_string()),
        Err(e) => (CaseStatus::Error, e.to_string()),
    };
    CaseResult {
        name,
        status,
        detail,
        numeric: None,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn run_numeric(
    name: String,
    cfg: &QuadratureConfig,
    tol: f64,
    f: impl FnOnce() -> Result<(Complex64, Complex64)>,
) -> CaseResult {
    let start = Instant::now();
    let (status, detail, numeric) = match f() {
        Ok((lhs, rhs)) => {
            let scale = lhs.norm().max(rhs.norm()).max(1e-30);
            let error = (lhs - rhs).norm() / scale;
            let status = if error <= tol {
                CaseStatus::Pass
            } else {
                CaseStatus::Fail
            };
            (
                status,
                format!("lhs = {lhs}, rhs = {rhs}"),
                Some(NumericMeta {
                    points: cfg.points,
                    trunc: cfg.trunc,
                    tol,
                    error,
                }),
            )
        }
        Err(e) => (CaseStatus::Error, e.to_string(), None),
    };
    CaseResult {
        name,
        status,
        detail,
        numeric,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn multisets_equal(x: &[RatFunc], y: &[RatFunc]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let mut used = vec![false; y.len()];
    'outer: for a in x {
        for (i, b) in y.iter().enumerate() {
            if !used[i] && a == b {
                used[i] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Every difference operator has `P_lambda` as an eigenfunction with the
/// elementary-symmetric eigenvalue, exactly.
pub fn suite_eigen(params: &SuiteParams) -> SuiteReport {
    let sets: Vec<(usize, i64)> = match params.n {
        Some(n) => vec![(n, params.max_part.unwrap_or(if n >= 4 { 3 } else { 4 }))],
        None => vec![(2, 4), (3, 4), (4, 3)],
    };
    let mut specs = Vec::new();
    for (n, cap) in sets {
        for lam in weights_up_to_size(n, cap) {
            specs.push((n, lam));
        }
    }
    if let Some(lam) = &params.lambda {
        specs = vec![(lam.n(), lam.clone())];
    }
    let cases: Vec<CaseResult> = specs
        .into_par_iter()
        .map(|(n, lam)| {
            run_exact(format!("eigenfunctions n={n} lambda=[{lam}]"), || {
                let p = macdonald_p(&lam)?;
                for (k, h) in eigenvalues(&lam).iter().enumerate() {
                    let image = apply_h(n, k + 1, &p)?;
                    if !image.sub(&p.scale(h)).is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
        })
        .collect();
    SuiteReport::new("eigen", cases)
}

/// The difference operators commute pairwise on monomial basis elements.
pub fn suite_commute(params: &SuiteParams) -> SuiteReport {
    let ns = params.ns(&[2, 3]);
    let cap = params.max_part.unwrap_or(3);
    let mut specs = Vec::new();
    for n in ns {
        for mu in weights_up_to_size(n, cap) {
            for i in 1..=n {
                for j in (i + 1)..=n {
                    specs.push((n, i, j, mu.clone()));
                }
            }
        }
    }
    let cases: Vec<CaseResult> = specs
        .into_par_iter()
        .map(|(n, i, j, mu)| {
            run_exact(format!("commutator H{i} H{j} on m[{mu}] n={n}"), || {
                commutes_on(n, i, j, &SymmetricPoly::basis(mu.clone()))
            })
        })
        .collect();
    SuiteReport::new("commute", cases)
}

/// The separated polynomial solves its q-difference equation exactly.
pub fn suite_sepeq(params: &SuiteParams) -> SuiteReport {
    let ns = params.ns(&[2, 3]);
    let cap = params.max_part.unwrap_or(3);
    let mut fallback = Vec::new();
    for n in ns {
        fallback.extend(weights_with_max_part(n, cap));
    }
    let cases: Vec<CaseResult> = params
        .lambdas_or(fallback)
        .into_par_iter()
        .map(|lam| {
            run_exact(
                format!("separation equation n={} lambda=[{lam}]", lam.n()),
                || Ok(separation_residual(&lam)?.is_zero()),
            )
        })
        .collect();
    SuiteReport::new("sepeq", cases)
}

/// Products of separated polynomials solve the full spectral problem.
pub fn suite_spectral(params: &SuiteParams) -> SuiteReport {
    let ns = params.ns(&[2, 3]);
    let cap = params.max_part.unwrap_or(3);
    let mut fallback = Vec::new();
    for n in ns {
        fallback.extend(weights_with_max_part(n, cap));
    }
    let cases: Vec<CaseResult> = params
        .lambdas_or(fallback)
        .into_par_iter()
        .map(|lam| {
            run_exact(
                format!("spectral problem n={} lambda=[{lam}]", lam.n()),
                || spectral_equations_hold(&lam),
            )
        })
        .collect();
    SuiteReport::new("spectral", cases)
}

/// All construction routes for the separated polynomial agree: the
/// per-coefficient terminating series, the multiple-sum route, the closed
/// edge coefficients, the principal value at `y = t^n`, and (for three
/// parts) the reduced parameter form.
pub fn suite_phi_consistency(params: &SuiteParams) -> SuiteReport {
    let ns = params.ns(&[2, 3, 4]);
    let cap = params.max_part.unwrap_or(4);
    let mut fallback = Vec::new();
    for n in ns {
        fallback.extend(weights_with_max_part(n, cap));
    }
    let cases: Vec<CaseResult> = params
        .lambdas_or(fallback)
        .into_par_iter()
        .map(|lam| {
            run_exact(
                format!("separated consistency n={} lambda=[{lam}]", lam.n()),
                || {
                    let phi = phi_via_chi(&lam)?;
                    let other = phi_via_lauricella(&lam)?;
                    if phi.coefficients() != other.coefficients() {
                        return Ok(false);
                    }
                    let (lo, hi) = chi_closed_forms(&lam)?;
                    if phi.chi(phi.k_min()) != lo || phi.chi(phi.k_max()) != hi {
                        return Ok(false);
                    }
                    if phi_at_t_power_n(&lam)? != phi.eval_at_t_power(lam.n() as i64) {
                        return Ok(false);
                    }
                    if lam.n() == 3 {
                        let general = separation_params(&lam);
                        let (ra, rb) = reduced_params_n3(&lam)?;
                        if !multisets_equal(&general.a, &ra) || !multisets_equal(&general.b, &rb)
                        {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                },
            )
        })
        .collect();
    SuiteReport::new("phi-consistency", cases)
}

/// Quadrature against the closed product form on seeded random parameter
/// draws inside the unit circle.
pub fn suite_aw(params: &SuiteParams) -> SuiteReport {
    let qs = params.q.map(|q| vec![q]).unwrap_or_else(|| vec![0.3, 0.5]);
    let cfg = params.quad(2048);
    let tol = params.tol.unwrap_or(1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut specs = Vec::new();
    for q in qs {
        for k in 0..params.draws.max(1) {
            let mut vals = [Complex64::new(0.0, 0.0); 4];
            for v in &mut vals {
                let modulus = rng.gen::<f64>() * 0.92;
                let angle = rng.gen::<f64>() * std::f64::consts::TAU;
                *v = Complex64::from_polar(modulus, angle);
            }
            let p = AWParams {
                a: vals[0],
                b: vals[1],
                c: vals[2],
                d: vals[3],
                q,
            };
            specs.push((q, k, p));
        }
    }
    let cases: Vec<CaseResult> = specs
        .into_par_iter()
        .map(|(q, k, p)| {
            run_numeric(format!("askey-wilson q={q} draw {k}"), &cfg, tol, || {
                aw_integral(&p, &cfg)
            })
        })
        .collect();
    SuiteReport::new("aw", cases)
}

fn n2_weights() -> Vec<DominantWeight> {
    vec![
        weight(&[0, 0]),
        weight(&[0, 1]),
        weight(&[0, 2]),
        weight(&[1, 2]),
    ]
}

fn n3_weights() -> Vec<DominantWeight> {
    vec![
        weight(&[0, 0, 0]),
        weight(&[0, 0, 1]),
        weight(&[0, 1, 1]),
        weight(&[0, 0, 2]),
    ]
}

/// Forward factorisation of two-variable polynomials against the exact
/// separated product.
pub fn suite_factorisation_n2(params: &SuiteParams) -> SuiteReport {
    let overridden = params.q.is_some() || params.t.is_some() || params.xi.is_some();
    let settings: Vec<(f64, f64, f64, f64, f64)> = if overridden {
        vec![(
            params.q.unwrap_or(0.2),
            params.t.unwrap_or(0.5),
            params.xi.unwrap_or(1.0),
            0.5,
            0.5,
        )]
    } else {
        vec![(0.2, 0.5, 1.0, 0.5, 0.5), (0.35, 0.6, 0.9, 0.55, 0.7)]
    };
    let lams = params.lambdas_or(n2_weights());
    let cfg = params.quad(2048);
    let tol = params.tol.unwrap_or(1e-8);
    let mut specs = Vec::new();
    for s in &settings {
        for lam in &lams {
            specs.push((*s, lam.clone()));
        }
    }
    let cases: Vec<CaseResult> = specs
        .into_par_iter()
        .map(|((q, t, xi, y1, y2), lam)| {
            run_numeric(
                format!("factorisation n=2 lambda=[{lam}] q={q} t={t} xi={xi}"),
                &cfg,
                tol,
                || factorisation_sides_n2(&lam, y1, y2, Complex64::new(xi, 0.0), q, t, &cfg),
            )
        })
        .collect();
    SuiteReport::new("thm1", cases)
}

/// Forward factorisation of three-variable polynomials.
pub fn suite_factorisation_n3(params: &SuiteParams) -> SuiteReport {
    let q = params.q.unwrap_or(0.2);
    let t = params.t.unwrap_or(0.5);
    let (y1, y2, y3) = (0.5, 0.5, 0.8);
    let lams = params.lambdas_or(n3_weights());
    let cfg = params.quad(2048);
    let tol = params.tol.unwrap_or(1e-6);
    let cases: Vec<CaseResult> = lams
        .into_par_iter()
        .map(|lam| {
            run_numeric(
                format!("factorisation n=3 lambda=[{lam}] q={q} t={t}"),
                &cfg,
                tol,
                || factorisation_sides_n3(&lam, y1, y2, y3, q, t, &cfg),
            )
        })
        .collect();
    SuiteReport::new("thm3", cases)
}

/// Inverse transform in two variables: round trip through the forward
/// kernel and direct reconstruction from exact separated data.
pub fn suite_inverse_n2(params: &SuiteParams) -> SuiteReport {
    let q = params.q.unwrap_or(0.2);
    let t = params.t.unwrap_or(0.5);
    let xi = Complex64::new(params.xi.unwrap_or(1.0), 0.0);
    let (x1, x2) = (0.8, 0.45);
    let lams = params.lambdas_or(n2_weights());
    let cfg = params.quad(512);
    let tol = params.tol.unwrap_or(1e-6);
    let mut cases: Vec<CaseResult> = lams
        .par_iter()
        .map(|lam| {
            run_numeric(
                format!("round trip n=2 lambda=[{lam}] q={q} t={t}"),
                &cfg,
                tol,
                || round_trip_n2(lam, x1, x2, xi, q, t, &cfg),
            )
        })
        .collect();
    cases.extend(
        lams.par_iter()
            .map(|lam| {
                run_numeric(
                    format!("reconstruction n=2 lambda=[{lam}] q={q} t={t}"),
                    &cfg,
                    tol,
                    || reconstruction_n2(lam, x1, x2, xi, q, t, &cfg),
                )
            })
            .collect::<Vec<_>>(),
    );
    SuiteReport::new("thm2", cases)
}

/// Inverse transform in three variables.
pub fn suite_inverse_n3(params: &SuiteParams) -> SuiteReport {
    let q = params.q.unwrap_or(0.2);
    let t = params.t.unwrap_or(0.5);
    let (x1, x2, x3) = (0.9, 0.6, 1.0);
    let lams = params.lambdas_or(n3_weights());
    let cfg = params.quad(512);
    let tol = params.tol.unwrap_or(1e-6);
    let mut cases: Vec<CaseResult> = lams
        .par_iter()
        .map(|lam| {
            run_numeric(
                format!("round trip n=3 lambda=[{lam}] q={q} t={t}"),
                &cfg,
                tol,
                || round_trip_n3(lam, x1, x2, x3, q, t, &cfg),
            )
        })
        .collect();
    cases.extend(
        lams.par_iter()
            .map(|lam| {
                run_numeric(
                    format!("reconstruction n=3 lambda=[{lam}] q={q} t={t}"),
                    &cfg,
                    tol,
                    || reconstruction_n3(lam, x1, x2, x3, q, t, &cfg),
                )
            })
            .collect::<Vec<_>>(),
    );
    SuiteReport::new("thm4", cases)
}

/// The finite-difference inverse at integer coupling reproduces the
/// specialised polynomial exactly.
pub fn suite_integer_g(params: &SuiteParams) -> SuiteReport {
    let gs = params.g.map(|g| vec![g]).unwrap_or_else(|| vec![1, 2]);
    let lams = params.lambdas_or(weights_with_max_part(3, params.max_part.unwrap_or(2)));
    let mut specs = Vec::new();
    for g in gs {
        for lam in &lams {
            specs.push((g, lam.clone()));
        }
    }
    let cases: Vec<CaseResult> = specs
        .into_par_iter()
        .map(|(g, lam)| {
            run_exact(format!("integer coupling g={g} lambda=[{lam}]"), || {
                let got = integer_g_inverse(g, &lam)?;
                let want = macdonald_at_integer_g(&lam, g)?;
                Ok(got.sub(&want).is_zero())
            })
        })
        .collect();
    SuiteReport::new("integer-g", cases)
}

/// Distinct weights pair to zero against the torus density; equal weights
/// have positive mass.
pub fn suite_orthogonality(params: &SuiteParams) -> SuiteReport {
    let q = params.q.unwrap_or(0.4);
    let t = params.t.unwrap_or(0.5);
    let cap = params.max_part.unwrap_or(3);
    let cfg = params.quad(512);
    let tol = params.tol.unwrap_or(1e-7);
    let lams = weights_up_to_size(2, cap);

    let start = Instant::now();
    let assembled: Result<(Vec<SymmetricPoly>, Vec<Vec<Complex64>>)> = (|| {
        let polys = lams.iter().map(macdonald_p).collect::<Result<Vec<_>>>()?;
        let gram = torus_gram(&polys, q, t, &cfg)?;
        Ok((polys, gram))
    })();
    let (_, gram) = match assembled {
        Ok(v) => v,
        Err(e) => {
            return SuiteReport::new(
                "orthogonality",
                vec![CaseResult {
                    name: format!("gram assembly q={q} t={t}"),
                    status: CaseStatus::Error,
                    detail: e.to_string(),
                    numeric: None,
                    millis: start.elapsed().as_millis() as u64,
                }],
            )
        }
    };
    let mut cases = vec![CaseResult {
        name: format!(
            "gram assembly q={q} t={t} ({} weights of size <= {cap})",
            lams.len()
        ),
        status: CaseStatus::Pass,
        detail: "grids and density tabulated".into(),
        numeric: Some(NumericMeta {
            points: cfg.points,
            trunc: cfg.trunc,
            tol,
            error: 0.0,
        }),
        millis: start.elapsed().as_millis() as u64,
    }];
    for (i, lam) in lams.iter().enumerate() {
        let start = Instant::now();
        let v = gram[i][i];
        let error = v.im.abs() / v.re.abs().max(1e-30);
        let ok = v.re > 0.0 && error <= tol;
        cases.push(CaseResult {
            name: format!("norm lambda=[{lam}] q={q} t={t}"),
            status: if ok { CaseStatus::Pass } else { CaseStatus::Fail },
            detail: format!("<P,P> = {v}"),
            numeric: Some(NumericMeta {
                points: cfg.points,
                trunc: cfg.trunc,
                tol,
                error,
            }),
            millis: start.elapsed().as_millis() as u64,
        });
    }
    for i in 0..lams.len() {
        for j in (i + 1)..lams.len() {
            let start = Instant::now();
            let scale = (gram[i][i].re * gram[j][j].re).sqrt().max(1e-30);
            let error = gram[i][j].norm() / scale;
            cases.push(CaseResult {
                name: format!(
                    "orthogonality lambda=[{}] vs lambda=[{}] q={q} t={t}",
                    lams[i], lams[j]
                ),
                status: if error <= tol {
                    CaseStatus::Pass
                } else {
                    CaseStatus::Fail
                },
                detail: format!("<P,P'> = {}", gram[i][j]),
                numeric: Some(NumericMeta {
                    points: cfg.points,
                    trunc: cfg.trunc,
                    tol,
                    error,
                }),
                millis: start.elapsed().as_millis() as u64,
            });
        }
    }
    SuiteReport::new("orthogonality", cases)
}

/// Runs the named suite.  `all` concatenates every suite in
/// [`SUITE_NAMES`] order, prefixing case names with their suite.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let report = match name {
        "eigen" => suite_eigen(params),
        "commute" => suite_commute(params),
        "sepeq" => suite_sepeq(params),
        "spectral" => suite_spectral(params),
        "phi-consistency" => suite_phi_consistency(params),
        "aw" => suite_aw(params),
        "thm1" => suite_factorisation_n2(params),
        "thm2" => suite_inverse_n2(params),
        "thm3" => suite_factorisation_n3(params),
        "thm4" => suite_inverse_n3(params),
        "integer-g" => suite_integer_g(params),
        "orthogonality" => suite_orthogonality(params),
        "all" => {
            let mut cases = Vec::new();
            for s in SUITE_NAMES {
                let rep = run_suite(s, params)?;
                for mut c in rep.cases {
                    c.name = format!("{s}: {}", c.name);
                    cases.push(c);
                }
            }
            SuiteReport::new("all", cases)
        }
        other => {
            return Err(Error::Invalid(format!(
                "unknown suite '{other}'; expected one of {}, or all",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(report)
}
