//! Command implementations. Each returns the rendered stdout text; all
//! randomness comes from the `--seed` flag, so identical invocations emit
//! byte-identical output.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use schur_core::cxlinalg::{self, ab_star, vec_inner, CMatrix};
use schur_core::genmatfn::{self, EqualityDiagnosis, SchurReport, TraceReport};
use schur_core::permgroup::{PermGroup, Permutation};
use schur_core::random;
use schur_core::tensorlab::{self, apply_symmetrizer, inner, symmetrize, EqualityChain, MultiIndex};
use schur_core::{Error, Tolerances};

use crate::problem::{Problem, ProblemFile};
use crate::CliError;

pub struct OutputMode {
    pub json: bool,
}

fn render<T: Serialize>(mode: &OutputMode, value: &T, pretty: String) -> Result<String, CliError> {
    if mode.json {
        serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))
    } else {
        Ok(pretty)
    }
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

fn fmt_perms(perms: &[Permutation]) -> String {
    if perms.is_empty() {
        "none".to_string()
    } else {
        perms
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// The probe vector: the supplied `u` or the eigenvector of the smallest
/// eigenvalue of `M_H` (first index on ties).
fn resolve_probe(problem: &Problem) -> Result<Vec<Complex64>, CliError> {
    if let Some(u) = &problem.u {
        return Ok(u.clone());
    }
    let m_h = genmatfn::gmf(&problem.h, &problem.group, &problem.rep, &problem.tols)?;
    let (_, vectors) = cxlinalg::herm_eig(&m_h)?;
    Ok((0..problem.rep.dim()).map(|i| vectors[(i, 0)]).collect())
}

#[derive(Serialize)]
struct CheckOutput {
    u: Vec<Complex64>,
    support_generators: Vec<Permutation>,
    support_order: usize,
    #[serde(flatten)]
    report: SchurReport,
}

pub fn cmd_check(path: &Path, problem: Problem, mode: &OutputMode) -> Result<String, CliError> {
    let u = resolve_probe(&problem)?;
    let report = genmatfn::schur_check(&problem.h, &problem.group, &problem.rep, &u, &problem.tols)?;
    let (support, _) = PermGroup::support_group(&problem.h, problem.tols.zero)?;

    let mut text = String::new();
    let _ = writeln!(text, "check {}", path.display());
    let _ = writeln!(text, "det(H)     = {}", fmt_complex(report.det_h));
    let _ = writeln!(text, "(M_H u, u) = {:.6}", report.value);
    let _ = writeln!(text, "gap        = {:.3e}", report.gap);
    let _ = writeln!(text, "equality   = {}", report.equality);
    let _ = writeln!(text, "M_H:\n{}", report.m_h);
    let _ = writeln!(
        text,
        "support group of H: order {}, generators {}",
        support.order(),
        fmt_perms(support.generators())
    );
    let _ = writeln!(text, "{}", describe_diagnosis(&report.diagnosis));

    let output = CheckOutput {
        u,
        support_generators: support.generators().to_vec(),
        support_order: support.order(),
        report,
    };
    render(mode, &output, text)
}

fn describe_diagnosis(d: &EqualityDiagnosis) -> String {
    let witness = match &d.witness {
        Some(p) => p.to_string(),
        None => "none".to_string(),
    };
    format!(
        "diagnosis: support ⊆ G = {}, sign condition = {} (over {} elements), witness = {}",
        d.gh_subset_g, d.sign_condition, d.checked_elements, witness
    )
}

#[derive(Serialize)]
struct OracleOutput {
    u: Vec<Complex64>,
    marcus_trials: usize,
    marcus_max_residual: f64,
    idempotence_residual: f64,
    self_adjointness_residual: f64,
    chain: EqualityChain,
    consistent: bool,
}

pub fn cmd_oracle(
    path: &Path,
    problem: Problem,
    seed: u64,
    mode: &OutputMode,
) -> Result<String, CliError> {
    if problem.n > tensorlab::max_order() {
        return Err(CliError::Core(Error::TooLarge {
            n: problem.n,
            max: tensorlab::max_order(),
        }));
    }
    let tols = &problem.tols;
    let group = &problem.group;
    let rep = &problem.rep;
    let u = resolve_probe(&problem)?;
    let mut rng = random::rng(seed);

    // Marcus identity on the factor itself, then on seeded random pairs
    let factor = cxlinalg::upper_cholesky(&problem.h, tols.linalg)?;
    let mut marcus_max = 0.0f64;
    let mut trials = 0usize;
    let marcus_trial = |a: &CMatrix, b: &CMatrix, u1: &[Complex64], u2: &[Complex64]| {
        let lhs = inner(
            &symmetrize(group, rep, u1, a)?,
            &symmetrize(group, rep, u2, b)?,
        )?;
        let m = genmatfn::gmf(&ab_star(a, b)?, group, rep, tols)?;
        let rhs = vec_inner(&m.mul_vec(u1), u2) * group.order() as f64;
        let residual = (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm());
        Ok::<f64, Error>(residual)
    };
    marcus_max = marcus_max.max(marcus_trial(
        &factor,
        &CMatrix::identity(problem.n),
        &u,
        &u,
    )?);
    trials += 1;
    for _ in 0..4 {
        let a = random::cmatrix(&mut rng, problem.n);
        let b = random::cmatrix(&mut rng, problem.n);
        let u1 = random::unit_vector(&mut rng, rep.dim());
        let u2 = random::unit_vector(&mut rng, rep.dim());
        marcus_max = marcus_max.max(marcus_trial(&a, &b, &u1, &u2)?);
        trials += 1;
    }

    // operator algebra on seeded random tensors
    let v = random::tensor(&mut rng, rep.dim(), problem.n);
    let w = random::tensor(&mut rng, rep.dim(), problem.n);
    let tv = apply_symmetrizer(group, rep, &v)?;
    let ttv = apply_symmetrizer(group, rep, &tv)?;
    let scaled = tv.scale(Complex64::new(group.order() as f64, 0.0));
    let idempotence = ttv.residual_from(Complex64::new(1.0, 0.0), &scaled)?
        / scaled.norm_sq().sqrt().max(1e-300);
    let lhs = inner(&tv, &w)?;
    let rhs = inner(&v, &apply_symmetrizer(group, rep, &w)?)?;
    let self_adjoint = (lhs - rhs).norm() / lhs.norm().max(1.0);

    let chain_report = tensorlab::equality_chain_report(&problem.h, group, rep, &u, tols)?;

    let mut text = String::new();
    let _ = writeln!(text, "oracle {}", path.display());
    let _ = writeln!(
        text,
        "marcus identity: max residual {marcus_max:.3e} over {trials} trials"
    );
    let _ = writeln!(text, "T² = gT residual: {idempotence:.3e}");
    let _ = writeln!(text, "T* = T residual:  {self_adjoint:.3e}");
    let chain = &chain_report.chain;
    let _ = writeln!(
        text,
        "equality chain: collinear={} cauchy_schwarz={} schur_h={} a_form={} h_condition={} a_condition={}",
        chain.collinear, chain.cauchy_schwarz, chain.schur_h, chain.a_form,
        chain.h_condition, chain.a_condition
    );
    let _ = writeln!(text, "consistent = {}", chain.consistent());

    let output = OracleOutput {
        u,
        marcus_trials: trials,
        marcus_max_residual: marcus_max,
        idempotence_residual: idempotence,
        self_adjointness_residual: self_adjoint,
        consistent: chain_report.chain.consistent(),
        chain: chain_report.chain,
    };
    render(mode, &output, text)
}

#[derive(Serialize)]
struct CompatOutput {
    n: usize,
    alpha: Vec<usize>,
    count: usize,
    compatible: Vec<Permutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    restricted_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    restricted: Option<Vec<Permutation>>,
}

pub struct CompatArgs {
    pub n: usize,
    pub alpha: Option<String>,
    pub spike: Option<String>,
    pub matrix: Option<std::path::PathBuf>,
    pub tol_zero: Option<f64>,
}

pub fn cmd_compat(args: CompatArgs, mode: &OutputMode) -> Result<String, CliError> {
    let alpha = match (&args.alpha, &args.spike) {
        (Some(list), None) => {
            let values: Vec<usize> = list
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("bad multi-index entry {tok:?}")))
                })
                .collect::<Result<_, _>>()?;
            if values.len() != args.n {
                return Err(CliError::Usage(format!(
                    "alpha has {} entries, expected {}",
                    values.len(),
                    args.n
                )));
            }
            MultiIndex::from_one_based(&values)?
        }
        (None, Some(spec)) => {
            let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(CliError::Usage("spike takes the form r,c".into()));
            }
            let r: usize = parts[0]
                .parse()
                .map_err(|_| CliError::Usage("bad spike row".into()))?;
            let c: usize = parts[1]
                .parse()
                .map_err(|_| CliError::Usage("bad spike column".into()))?;
            schur_core::compat::SpikeFunction::new(r, c)?.multi_index(args.n)?
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --alpha or --spike".into(),
            ))
        }
    };

    let compatible = schur_core::compat::compatible(&alpha)?;
    let tol_zero = args.tol_zero.unwrap_or(Tolerances::default().zero);
    let restricted = match &args.matrix {
        None => None,
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
            let a: CMatrix = serde_json::from_str(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            if a.rows() != args.n || a.cols() != args.n {
                return Err(CliError::Usage(format!(
                    "matrix is {}x{}, expected {}x{}",
                    a.rows(),
                    a.cols(),
                    args.n,
                    args.n
                )));
            }
            Some(schur_core::compat::restricted_compatible(
                &alpha, &a, tol_zero,
            )?)
        }
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "alpha = {:?}: {} compatible permutations",
        alpha.one_based(),
        compatible.len()
    );
    let _ = writeln!(text, "  {}", fmt_perms(&compatible));
    if let Some(res) = &restricted {
        let _ = writeln!(text, "restricted by matrix: {} survive", res.len());
        let _ = writeln!(text, "  {}", fmt_perms(res));
    }

    let output = CompatOutput {
        n: args.n,
        alpha: alpha.one_based(),
        count: compatible.len(),
        compatible,
        restricted_count: restricted.as_ref().map(Vec::len),
        restricted,
    };
    render(mode, &output, text)
}

#[derive(Serialize)]
struct TraceOutput {
    #[serde(flatten)]
    report: TraceReport,
}

pub fn cmd_trace(path: &Path, problem: Problem, mode: &OutputMode) -> Result<String, CliError> {
    let report = genmatfn::trace_report(&problem.h, &problem.group, &problem.rep, &problem.tols)?;
    let mut text = String::new();
    let _ = writeln!(text, "trace {}", path.display());
    let _ = writeln!(text, "m·det(H) = {:.6}", report.m_det);
    let _ = writeln!(text, "Tr(M_H)  = {:.6}", report.trace);
    let _ = writeln!(text, "equality = {}", report.equality);
    let _ = writeln!(
        text,
        "M_H is the scalar matrix det(H)·I: {}",
        report.is_scalar
    );
    render(mode, &TraceOutput { report }, text)
}

#[derive(Serialize)]
struct FactorOutput {
    factor: CMatrix,
    det_factor: Complex64,
    support_generators: Vec<Permutation>,
    support_order: usize,
}

pub fn cmd_factor(path: &Path, problem: Problem, mode: &OutputMode) -> Result<String, CliError> {
    let factor = cxlinalg::upper_cholesky(&problem.h, problem.tols.linalg)?;
    let det_factor = cxlinalg::det(&factor)?;
    let (support, _) = PermGroup::support_group(&factor, problem.tols.zero)?;
    let mut text = String::new();
    let _ = writeln!(text, "factor {}", path.display());
    let _ = writeln!(text, "upper triangular A with AA* = H:\n{factor}");
    let _ = writeln!(text, "det(A) = {}", fmt_complex(det_factor));
    let _ = writeln!(
        text,
        "support group of A: order {}, generators {}",
        support.order(),
        fmt_perms(support.generators())
    );
    let output = FactorOutput {
        factor,
        det_factor,
        support_generators: support.generators().to_vec(),
        support_order: support.order(),
    };
    render(mode, &output, text)
}

pub fn load_problem(
    path: &Path,
    tol_zero: Option<f64>,
    tol_eq: Option<f64>,
    normalize_u: bool,
) -> Result<Problem, CliError> {
    ProblemFile::load(path)?.resolve(tol_zero, tol_eq, normalize_u)
}
