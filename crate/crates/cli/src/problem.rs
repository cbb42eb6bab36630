//! Problem-file parsing: one JSON file per problem, dimension-checked
//! before any computation runs.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use schur_core::cxlinalg::{ab_star, CMatrix};
use schur_core::permgroup::{PermGroup, Permutation};
use schur_core::repcat::{RepDescriptor, UnitaryRep};
use schur_core::Tolerances;

use crate::CliError;

/// On-disk problem description. Matrices are row-major nested arrays of
/// `[re, im]` entries; permutations are 1-based one-line arrays or cycle
/// strings.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub group: GroupSpec,
    pub representation: RepDescriptor,
    #[serde(rename = "H")]
    pub h: Option<CMatrix>,
    #[serde(rename = "A")]
    pub a: Option<CMatrix>,
    pub u: Option<Vec<Complex64>>,
    #[serde(default)]
    pub options: FileOptions,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    pub tol_zero: Option<f64>,
    pub tol_eq: Option<f64>,
}

/// Either a named group (`"S3"`, `"A4"`, `"trivial"`) or explicit
/// generators.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Generators { generators: Vec<PermSpec> },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PermSpec {
    Cycles(String),
    OneLine(Vec<usize>),
}

/// Fully resolved, validated problem.
pub struct Problem {
    pub n: usize,
    pub group: PermGroup,
    pub rep: UnitaryRep,
    pub h: CMatrix,
    pub u: Option<Vec<Complex64>>,
    pub tols: Tolerances,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<ProblemFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    /// Validates dimensions and builds the group, representation, and `H`.
    /// CLI tolerance flags take precedence over the file's options block.
    pub fn resolve(
        self,
        tol_zero: Option<f64>,
        tol_eq: Option<f64>,
        normalize_u: bool,
    ) -> Result<Problem, CliError> {
        let n = self.n;
        let mut tols = Tolerances::default();
        if let Some(z) = self.options.tol_zero {
            tols.zero = z;
        }
        if let Some(e) = self.options.tol_eq {
            tols.equality = e;
        }
        if let Some(z) = tol_zero {
            tols.zero = z;
        }
        if let Some(e) = tol_eq {
            tols.equality = e;
        }

        let group = self.group.resolve(n)?;
        let rep = self.representation.realize(&group)?;

        let h = match (self.h, self.a) {
            (Some(h), None) => {
                if h.rows() != n || h.cols() != n {
                    return Err(CliError::Usage(format!(
                        "H is {}x{}, expected {n}x{n}",
                        h.rows(),
                        h.cols()
                    )));
                }
                h
            }
            (None, Some(a)) => {
                if a.rows() != n || a.cols() != n {
                    return Err(CliError::Usage(format!(
                        "A is {}x{}, expected {n}x{n}",
                        a.rows(),
                        a.cols()
                    )));
                }
                a.require_upper_triangular(tols.zero)?;
                ab_star(&a, &a)?
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Usage("give either H or A, not both".into()))
            }
            (None, None) => return Err(CliError::Usage("one of H or A is required".into())),
        };

        let u = match self.u {
            None => None,
            Some(raw) => {
                if raw.len() != rep.dim() {
                    return Err(CliError::Usage(format!(
                        "u has length {}, representation dimension is {}",
                        raw.len(),
                        rep.dim()
                    )));
                }
                let norm = schur_core::cxlinalg::vec_norm(&raw);
                if normalize_u {
                    if norm <= 1e-300 {
                        return Err(CliError::Usage("u must be nonzero".into()));
                    }
                    Some(raw.into_iter().map(|z| z / norm).collect())
                } else {
                    // non-unit u is rejected later by the checks themselves;
                    // leave it untouched so the error names the norm
                    Some(raw)
                }
            }
        };

        Ok(Problem {
            n,
            group,
            rep,
            h,
            u,
            tols,
        })
    }
}

impl GroupSpec {
    pub fn resolve(self, n: usize) -> Result<PermGroup, CliError> {
        match self {
            GroupSpec::Name(name) => {
                if name == "trivial" {
                    return Ok(PermGroup::trivial(n));
                }
                let (kind, digits) = name.split_at(1);
                let degree: usize = digits
                    .parse()
                    .map_err(|_| CliError::Usage(format!("unknown group name {name:?}")))?;
                if degree != n {
                    return Err(CliError::Usage(format!(
                        "group {name:?} does not match n = {n}"
                    )));
                }
                match kind {
                    "S" => Ok(PermGroup::symmetric(n)?),
                    "A" => Ok(PermGroup::alternating(n)?),
                    _ => Err(CliError::Usage(format!("unknown group name {name:?}"))),
                }
            }
            GroupSpec::Generators { generators } => {
                let gens: Vec<Permutation> = generators
                    .into_iter()
                    .map(|spec| spec.resolve(n))
                    .collect::<Result<_, _>>()?;
                Ok(PermGroup::closure_default(n, &gens)?)
            }
        }
    }
}

impl PermSpec {
    pub fn resolve(self, n: usize) -> Result<Permutation, CliError> {
        match self {
            PermSpec::Cycles(text) => Ok(Permutation::from_cycles(n, &text)?),
            PermSpec::OneLine(images) => {
                if images.len() != n {
                    return Err(CliError::Usage(format!(
                        "permutation {images:?} has degree {}, expected {n}",
                        images.len()
                    )));
                }
                Ok(Permutation::from_one_line(&images)?)
            }
        }
    }
}
