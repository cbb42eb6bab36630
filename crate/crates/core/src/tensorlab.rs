//! Brute-force oracle on `U ⊗ (⊗ⁿV)`.
//!
//! Elements are dense coefficient arrays over the orthonormal basis
//! `{u_j ⊗ e_α}` with `α` ranging over all `nⁿ` functions `{1..n} → {1..n}`.
//! The generalized symmetry operator
//! `T_G = Σ_σ M(σ) ⊗ P(σ)`, with `P(σ) e_α = e_{α∘σ⁻¹}`, is applied as an
//! operator sum over the `g` group elements and never materialized. The
//! point of this module is to be trivially auditable, not fast: the hard
//! cap is order `n ≤ 6` and degree `m ≤ 8` (about 373k coefficients).
//!
//! The order cap may be raised at the user's risk through the
//! `SCHUR_TENSOR_MAX_N` environment variable.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::compat;
use crate::cxlinalg::{self, vec_inner, CMatrix};
use crate::genmatfn::{self, EqualityDiagnosis};
use crate::permgroup::PermGroup;
use crate::repcat::UnitaryRep;
use crate::{Error, Result, Tolerances};

/// Default cap on the tensor order `n` (the oracle allocates `m·nⁿ`
/// coefficients).
pub const DEFAULT_MAX_ORDER: usize = 6;
pub const MAX_DEGREE: usize = 8;

/// Effective order cap: `SCHUR_TENSOR_MAX_N` when set and parseable,
/// otherwise [`DEFAULT_MAX_ORDER`].
pub fn max_order() -> usize {
    std::env::var("SCHUR_TENSOR_MAX_N")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// An element `α` of `Γ_n`, the functions `{1..n} → {1..n}`, stored
/// 0-based. Encodes to the integer `Σ (α(i)-1)·n^(i-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    values: Vec<usize>,
}

impl MultiIndex {
    /// From 1-based values, each in `1..=n` where `n` is the length.
    pub fn from_one_based(values: &[usize]) -> Result<Self> {
        let n = values.len();
        for &v in values {
            if v == 0 || v > n {
                return Err(Error::BadIndices(format!(
                    "multi-index value {v} out of range 1..={n}"
                )));
            }
        }
        Ok(MultiIndex {
            values: values.iter().map(|&v| v - 1).collect(),
        })
    }

    pub(crate) fn from_zero_based(values: Vec<usize>) -> Self {
        MultiIndex { values }
    }

    /// The identity function `i ↦ i`.
    pub fn identity(n: usize) -> Self {
        MultiIndex {
            values: (0..n).collect(),
        }
    }

    /// The constant function `i ↦ v` (1-based `v`).
    pub fn constant(n: usize, v: usize) -> Result<Self> {
        if v == 0 || v > n {
            return Err(Error::BadIndices(format!("value {v} out of range 1..={n}")));
        }
        Ok(MultiIndex {
            values: vec![v - 1; n],
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `α(i)` for a 1-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.values[i - 1] + 1
    }

    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.values.iter().map(|&v| v + 1).collect()
    }

    /// Integer code `Σ α0(i)·n^i`; round-trips with [`MultiIndex::from_code`].
    pub fn code(&self) -> usize {
        let n = self.values.len();
        let mut code = 0usize;
        for &v in self.values.iter().rev() {
            code = code * n + v;
        }
        code
    }

    pub fn from_code(n: usize, mut code: usize) -> Self {
        let mut values = Vec::with_capacity(n);
        for _ in 0..n {
            values.push(code % n);
            code /= n;
        }
        MultiIndex { values }
    }
}

/// Dense element of `U ⊗ (⊗ⁿV)` with `dim U = m`, `dim V = n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorVector {
    m: usize,
    n: usize,
    total: usize, // n^n
    coeffs: Vec<Complex64>,
}

impl TensorVector {
    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        let cap = max_order();
        if n > cap {
            return Err(Error::TooLarge { n, max: cap });
        }
        if m > MAX_DEGREE {
            return Err(Error::TooLarge {
                n: m,
                max: MAX_DEGREE,
            });
        }
        let total = n.pow(n as u32);
        Ok(TensorVector {
            m,
            n,
            total,
            coeffs: vec![Complex64::new(0.0, 0.0); m * total],
        })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of basis tensors `e_α`, i.e. `nⁿ`.
    pub fn basis_size(&self) -> usize {
        self.total
    }

    pub fn coeff(&self, j: usize, code: usize) -> Complex64 {
        self.coeffs[j * self.total + code]
    }

    pub fn coeff_mut(&mut self, j: usize, code: usize) -> &mut Complex64 {
        &mut self.coeffs[j * self.total + code]
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, k: Complex64) -> TensorVector {
        TensorVector {
            m: self.m,
            n: self.n,
            total: self.total,
            coeffs: self.coeffs.iter().map(|z| z * k).collect(),
        }
    }

    /// `‖self - k·other‖`.
    pub fn residual_from(&self, k: Complex64, other: &TensorVector) -> Result<f64> {
        require_same_shape(self, other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - k * b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// `(self, u ⊗ e_α)` for the basis tensor at `code`.
    pub fn pairing_with(&self, u: &[Complex64], code: usize) -> Complex64 {
        (0..self.m).map(|j| self.coeff(j, code) * u[j].conj()).sum()
    }
}

fn require_same_shape(v: &TensorVector, w: &TensorVector) -> Result<()> {
    if (v.m, v.n) != (w.m, w.n) {
        return Err(Error::ShapeMismatch(v.m, v.n, w.m, w.n));
    }
    Ok(())
}

/// The homogeneous tensor `u ⊗ x₁ ⊗ ⋯ ⊗ xₙ` where row `i` of `A` holds the
/// coordinates of `x_i`: `coeff(j, α) = u_j · Π_i A(i, α(i))`.
pub fn homogeneous(u: &[Complex64], a: &CMatrix) -> Result<TensorVector> {
    let n = a.require_square()?;
    let mut out = TensorVector::zeros(u.len(), n)?;
    let mut alpha = vec![0usize; n];
    for code in 0..out.total {
        decode_into(&mut alpha, n, code);
        let mut prod = Complex64::new(1.0, 0.0);
        for (i, &ai) in alpha.iter().enumerate() {
            prod *= a[(i, ai)];
            if prod == Complex64::new(0.0, 0.0) {
                break;
            }
        }
        if prod == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &uj) in u.iter().enumerate() {
            *out.coeff_mut(j, code) = uj * prod;
        }
    }
    Ok(out)
}

fn decode_into(alpha: &mut [usize], n: usize, mut code: usize) {
    for slot in alpha.iter_mut() {
        *slot = code % n;
        code /= n;
    }
}

/// `T_G(u ⊗ x₁ ⊗ ⋯ ⊗ xₙ) = Σ_σ M(σ)u ⊗ x_{σ⁻¹(1)} ⊗ ⋯ ⊗ x_{σ⁻¹(n)}`:
/// `coeff(j, α) = Σ_σ (M(σ)u)_j · Π_i A(σ⁻¹(i), α(i))`.
pub fn symmetrize(
    group: &PermGroup,
    rep: &UnitaryRep,
    u: &[Complex64],
    a: &CMatrix,
) -> Result<TensorVector> {
    let n = a.require_square()?;
    if n != group.degree() {
        return Err(Error::DegreeMismatch(n, group.degree()));
    }
    if !group.same_group(rep.group()) {
        return Err(Error::RepGroupMismatch);
    }
    if u.len() != rep.dim() {
        return Err(Error::ShapeMismatch(u.len(), 1, rep.dim(), 1));
    }
    let mut out = TensorVector::zeros(u.len(), n)?;
    let rotated: Vec<Vec<Complex64>> = (0..group.order())
        .map(|idx| rep.matrix_at(idx).mul_vec(u))
        .collect();
    let inverses: Vec<Vec<usize>> = group
        .elements()
        .iter()
        .map(|s| s.inverse().images0().to_vec())
        .collect();
    let mut alpha = vec![0usize; n];
    let zero = Complex64::new(0.0, 0.0);
    for code in 0..out.total {
        decode_into(&mut alpha, n, code);
        for idx in 0..group.order() {
            let inv = &inverses[idx];
            let mut prod = Complex64::new(1.0, 0.0);
            for (i, &ai) in alpha.iter().enumerate() {
                prod *= a[(inv[i], ai)];
                if prod == zero {
                    break;
                }
            }
            if prod == zero {
                continue;
            }
            for (j, &mj) in rotated[idx].iter().enumerate() {
                *out.coeff_mut(j, code) += mj * prod;
            }
        }
    }
    Ok(out)
}

/// Linear extension of `T_G` to arbitrary tensors:
/// `coeff'(j, α) = Σ_σ Σ_k M(σ)_{jk} · coeff(k, α∘σ)`.
///
/// [`symmetrize`] is this map applied to [`homogeneous`].
pub fn apply_symmetrizer(
    group: &PermGroup,
    rep: &UnitaryRep,
    v: &TensorVector,
) -> Result<TensorVector> {
    if v.n != group.degree() {
        return Err(Error::DegreeMismatch(v.n, group.degree()));
    }
    if !group.same_group(rep.group()) {
        return Err(Error::RepGroupMismatch);
    }
    if v.m != rep.dim() {
        return Err(Error::ShapeMismatch(v.m, 1, rep.dim(), 1));
    }
    let n = v.n;
    let mut out = TensorVector::zeros(v.m, n)?;
    let mut alpha = vec![0usize; n];
    let mut composed = vec![0usize; n];
    for (idx, sigma) in group.elements().iter().enumerate() {
        let matrix = rep.matrix_at(idx);
        for code in 0..v.total {
            decode_into(&mut alpha, n, code);
            // (α∘σ)(i) = α(σ(i))
            for i in 0..n {
                composed[i] = alpha[sigma.apply0(i)];
            }
            let mut source = 0usize;
            for &c in composed.iter().rev() {
                source = source * n + c;
            }
            for j in 0..v.m {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..v.m {
                    acc += matrix[(j, k)] * v.coeff(k, source);
                }
                *out.coeff_mut(j, code) += acc;
            }
        }
    }
    Ok(out)
}

/// Standard unitary inner product on coefficients (the basis
/// `{u_j ⊗ e_α}` is orthonormal); linear in `v`, conjugating `w`.
pub fn inner(v: &TensorVector, w: &TensorVector) -> Result<Complex64> {
    require_same_shape(v, w)?;
    Ok(v
        .coeffs
        .iter()
        .zip(&w.coeffs)
        .map(|(a, b)| a * b.conj())
        .sum())
}

/// Collinearity test `T_G(u⊗x) = k·T_G(u⊗e)`, `k ≠ 0` — the exact
/// Cauchy-Schwarz equality condition. Returns `k` when the residual
/// `‖v - k·w‖` stays below `tols.collinearity · ‖v‖` and `|k|` clears the
/// floor.
pub fn collinearity(
    group: &PermGroup,
    rep: &UnitaryRep,
    u: &[Complex64],
    a: &CMatrix,
    tols: &Tolerances,
) -> Result<Option<Complex64>> {
    let n = a.require_square()?;
    a.require_upper_triangular(tols.zero)?;
    require_nonsingular_triangular(a, tols)?;
    cxlinalg::require_unit(u, tols.linalg)?;
    let v = symmetrize(group, rep, u, a)?;
    let w = symmetrize(group, rep, u, &CMatrix::identity(n))?;
    let denom = inner(&w, &w)?;
    let k = inner(&v, &w)? / denom;
    if k.norm() <= tols.k_floor {
        return Ok(None);
    }
    let residual = v.residual_from(k, &w)?;
    if residual <= tols.collinearity * v.norm_sq().sqrt() {
        Ok(Some(k))
    } else {
        Ok(None)
    }
}

fn require_nonsingular_triangular(a: &CMatrix, tols: &Tolerances) -> Result<()> {
    let scale = a.max_abs().max(1e-300);
    for i in 0..a.rows() {
        if a[(i, i)].norm() <= tols.zero * scale {
            return Err(Error::Singular);
        }
    }
    Ok(())
}

/// `(T_G(u⊗x), u⊗e_α)`, computed two ways and cross-checked: the sum over
/// `G ∩ S_n^α(x,e)` of `(M(σ)u,u) Π_i A(i, α(σ(i)))`, and direct coefficient
/// extraction from [`symmetrize`].
pub fn basis_inner(
    group: &PermGroup,
    rep: &UnitaryRep,
    u: &[Complex64],
    a: &CMatrix,
    alpha: &MultiIndex,
    tols: &Tolerances,
) -> Result<Complex64> {
    let n = a.require_square()?;
    a.require_upper_triangular(tols.zero)?;
    if alpha.len() != n {
        return Err(Error::ShapeMismatch(alpha.len(), 1, n, 1));
    }
    let restricted = compat::restricted_compatible(alpha, a, tols.zero)?;
    let mut by_sum = Complex64::new(0.0, 0.0);
    for sigma in &restricted {
        if !group.contains(sigma) {
            continue;
        }
        let weight = vec_inner(&rep.evaluate(sigma)?.mul_vec(u), u);
        let mut prod = Complex64::new(1.0, 0.0);
        for i in 0..n {
            prod *= a[(i, alpha.apply0(sigma.apply0(i)))];
        }
        by_sum += weight * prod;
    }
    let direct = symmetrize(group, rep, u, a)?.pairing_with(u, alpha.code());
    if (by_sum - direct).norm() > tols.route * direct.norm().max(1.0) {
        return Err(Error::Internal(format!(
            "restricted sum {by_sum} and coefficient extraction {direct} disagree"
        )));
    }
    Ok(by_sum)
}

/// `A(p|p)` as the associated matrix of the projected tensor `x^p`
/// (`p` 1-based; `A` upper triangular).
pub fn project(a: &CMatrix, p: usize, tols: &Tolerances) -> Result<CMatrix> {
    a.require_upper_triangular(tols.zero)?;
    cxlinalg::delete_rc(a, p)
}

/// Verifies `(T_G(u⊗x), u⊗e_γ) = a_pp (T_{G'_p}(u⊗x^p), u⊗e_{γ'_p})` over
/// every `γ ∈ Γ_{n,p}`, for a column `p` whose only nonzero is the diagonal
/// entry. Returns the maximum absolute difference.
pub fn projection_identity_check(
    group: &PermGroup,
    rep: &UnitaryRep,
    u: &[Complex64],
    a: &CMatrix,
    p: usize,
    tols: &Tolerances,
) -> Result<f64> {
    let n = a.require_square()?;
    if p == 0 || p > n {
        return Err(Error::IndexOutOfRange { index: p, n });
    }
    a.require_upper_triangular(tols.zero)?;
    cxlinalg::require_unit(u, tols.linalg)?;
    let scale = a.max_abs().max(1e-300);
    for i in 0..n {
        if i != p - 1 && a[(i, p - 1)].norm() > tols.zero * scale {
            return Err(Error::PreconditionViolated(format!(
                "column {p} has off-diagonal support at row {}",
                i + 1
            )));
        }
    }
    let app = a[(p - 1, p - 1)];
    let restricted_rep = rep.restricted(p)?;
    let restricted_group = restricted_rep.group().clone();
    let sub = project(a, p, tols)?;
    let full_tensor = symmetrize(group, rep, u, a)?;
    let sub_tensor = symmetrize(&restricted_group, &restricted_rep, u, &sub)?;
    let mut worst = 0.0f64;
    for (gamma, gamma_p) in compat::gamma_np(n, p)? {
        let lhs = full_tensor.pairing_with(u, gamma.code());
        let rhs = sub_tensor.pairing_with(u, gamma_p.code());
        worst = worst.max((lhs - app * rhs).norm());
    }
    Ok(worst)
}

/// The six equivalent equality conditions, evaluated independently:
/// collinearity of the symmetrized tensors, Cauchy-Schwarz equality,
/// `det(H) = (M_H u,u)`, `|det A|² = (M_{AA*}u,u)`, and the two
/// support-group sign conditions (for `H` and for `A`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EqualityChain {
    pub collinear: bool,
    pub cauchy_schwarz: bool,
    pub schur_h: bool,
    pub a_form: bool,
    pub h_condition: bool,
    pub a_condition: bool,
}

impl EqualityChain {
    pub fn as_array(&self) -> [bool; 6] {
        [
            self.collinear,
            self.cauchy_schwarz,
            self.schur_h,
            self.a_form,
            self.h_condition,
            self.a_condition,
        ]
    }

    /// All six conditions agree; they are mathematically equivalent, so a
    /// split marks a numerical or logic defect.
    pub fn consistent(&self) -> bool {
        let all = self.as_array();
        all.iter().all(|&b| b == all[0])
    }
}

pub struct EqualityChainReport {
    pub chain: EqualityChain,
    pub factor: CMatrix,
    pub h_diagnosis: EqualityDiagnosis,
    pub a_diagnosis: EqualityDiagnosis,
}

pub fn equality_chain_report(
    h: &CMatrix,
    group: &PermGroup,
    rep: &UnitaryRep,
    u: &[Complex64],
    tols: &Tolerances,
) -> Result<EqualityChainReport> {
    let a = cxlinalg::upper_cholesky(h, tols.linalg)?;
    let n = h.rows();

    // (0) collinearity of T_G(u⊗x) with T_G(u⊗e)
    let collinear = collinearity(group, rep, u, &a, tols)?.is_some();

    // (1) Cauchy-Schwarz equality on the same tensors
    let v = symmetrize(group, rep, u, &a)?;
    let w = symmetrize(group, rep, u, &CMatrix::identity(n))?;
    let cross = inner(&v, &w)?.norm_sqr();
    let bound = v.norm_sq() * w.norm_sq();
    let cauchy_schwarz = (bound - cross).abs() <= tols.equality * bound.max(1.0);

    // (2) Schur equality on H
    let schur = genmatfn::schur_check(h, group, rep, u, tols)?;

    // (3) the A form, on the recomputed Gram matrix
    let gram = cxlinalg::ab_star(&a, &a)?;
    let det_a_sq = cxlinalg::det(&a)?.norm_sqr();
    let quad = vec_inner(
        &genmatfn::gmf(&gram, group, rep, tols)?.mul_vec(u),
        u,
    )
    .re;
    let a_form = (quad - det_a_sq).abs() <= tols.equality * det_a_sq.max(1.0);

    // (4) and (5): support-group sign conditions for H and for A
    let a_diagnosis = genmatfn::support_condition(&a, group, rep, u, tols)?;
    Ok(EqualityChainReport {
        chain: EqualityChain {
            collinear,
            cauchy_schwarz,
            schur_h: schur.equality,
            a_form,
            h_condition: schur.diagnosis.holds(),
            a_condition: a_diagnosis.holds(),
        },
        factor: a,
        h_diagnosis: schur.diagnosis,
        a_diagnosis,
    })
}
