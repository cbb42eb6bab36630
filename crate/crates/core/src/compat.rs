//! Compatible-permutation combinatorics.
//!
//! A permutation `σ` is `α`-compatible when `α(σ(i)) ≥ i` for all `i`; for
//! upper triangular `A` these are exactly the permutations whose product
//! `Π_i A(i, α(σ(i)))` can survive. Spike functions `α_rc` (send `r ↦ c`,
//! fix the rest) have `2^(c-r)` compatible permutations, and the maximal
//! row spike of a column cuts the `A`-restricted set down to `{ι, (r c)}`.
//!
//! Enumeration order is lexicographic on one-line notation everywhere, so
//! reports and fixtures diff cleanly.

use serde::{Deserialize, Serialize};

use crate::cxlinalg::CMatrix;
use crate::permgroup::Permutation;
use crate::tensorlab::MultiIndex;
use crate::{Error, Result};

/// Enumeration cap shared by every operation here.
pub const MAX_DEGREE: usize = 8;

/// The spike function `α_rc`: `α(r) = c`, `α(i) = i` otherwise, `r < c`
/// (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpikeFunction {
    pub r: usize,
    pub c: usize,
}

impl SpikeFunction {
    pub fn new(r: usize, c: usize) -> Result<Self> {
        if r == 0 || c <= r {
            return Err(Error::BadIndices(format!(
                "spike needs 1 ≤ r < c, got r={r}, c={c}"
            )));
        }
        Ok(SpikeFunction { r, c })
    }

    pub fn multi_index(&self, n: usize) -> Result<MultiIndex> {
        if self.c > n {
            return Err(Error::BadIndices(format!(
                "spike column {} exceeds degree {n}",
                self.c
            )));
        }
        let mut values: Vec<usize> = (1..=n).collect();
        values[self.r - 1] = self.c;
        MultiIndex::from_one_based(&values)
    }
}

/// All `α`-compatible permutations `S_n^α = {σ : α(σ(i)) ≥ i ∀i}`, in
/// lexicographic order, by backtracking: position `i` admits value `v` only
/// if `α(v) ≥ i`.
pub fn compatible(alpha: &MultiIndex) -> Result<Vec<Permutation>> {
    let n = alpha.len();
    if n > MAX_DEGREE {
        return Err(Error::TooLarge { n, max: MAX_DEGREE });
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut images = vec![0usize; n];
    fn recurse(
        alpha: &MultiIndex,
        pos: usize,
        used: &mut [bool],
        images: &mut [usize],
        out: &mut Vec<Permutation>,
    ) {
        let n = images.len();
        if pos == n {
            let one_based: Vec<usize> = images.iter().map(|&v| v + 1).collect();
            out.push(Permutation::from_one_line(&one_based).expect("built as a bijection"));
            return;
        }
        for v in 0..n {
            if !used[v] && alpha.apply0(v) >= pos {
                used[v] = true;
                images[pos] = v;
                recurse(alpha, pos + 1, used, images, out);
                used[v] = false;
            }
        }
    }
    recurse(alpha, 0, &mut used, &mut images, &mut out);
    Ok(out)
}

/// `S_n^{α_rc}` built directly from its characterization: the identity plus
/// one cycle `(r, s₁, …, s_k)` per nonempty subset `{s₁ < ⋯ < s_k}` of
/// `{r+1..c}`.
pub fn compatible_spike(n: usize, r: usize, c: usize) -> Result<Vec<Permutation>> {
    if n > MAX_DEGREE {
        return Err(Error::TooLarge { n, max: MAX_DEGREE });
    }
    let spike = SpikeFunction::new(r, c)?;
    if spike.c > n {
        return Err(Error::BadIndices(format!("c={c} exceeds degree {n}")));
    }
    let span: Vec<usize> = (r + 1..=c).collect();
    let mut out = vec![Permutation::identity(n)];
    for mask in 1u32..(1 << span.len()) {
        let mut cycle = vec![r];
        for (bit, &s) in span.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                cycle.push(s);
            }
        }
        let mut one_based: Vec<usize> = (1..=n).collect();
        for (k, &p) in cycle.iter().enumerate() {
            one_based[p - 1] = cycle[(k + 1) % cycle.len()];
        }
        out.push(Permutation::from_one_line(&one_based)?);
    }
    out.sort();
    Ok(out)
}

/// `S_n^α(A)`: the compatible permutations whose product
/// `Π_i A(i, α(σ(i)))` has every factor above `zero_tol · max|A|`.
pub fn restricted_compatible(
    alpha: &MultiIndex,
    a: &CMatrix,
    zero_tol: f64,
) -> Result<Vec<Permutation>> {
    let n = a.require_square()?;
    if alpha.len() != n {
        return Err(Error::ShapeMismatch(alpha.len(), 1, n, 1));
    }
    let scale = a.max_abs().max(1e-300);
    let survivors = compatible(alpha)?
        .into_iter()
        .filter(|sigma| {
            (0..n).all(|i| a[(i, alpha.apply0(sigma.apply0(i)))].norm() > zero_tol * scale)
        })
        .collect();
    Ok(survivors)
}

/// The maximal row spike function of column `c`: `r` is the lowest
/// off-diagonal nonzero above the diagonal, absent when the column is
/// lone-diagonal. `A` upper triangular, `1 < c ≤ n`.
pub fn max_row_spike(a: &CMatrix, c: usize, zero_tol: f64) -> Result<Option<SpikeFunction>> {
    let n = a.require_square()?;
    if c < 2 || c > n {
        return Err(Error::BadIndices(format!("column {c} out of range 2..={n}")));
    }
    a.require_upper_triangular(zero_tol)?;
    let scale = a.max_abs().max(1e-300);
    let r = (1..c)
        .rev()
        .find(|&i| a[(i - 1, c - 1)].norm() > zero_tol * scale);
    Ok(match r {
        Some(r) => Some(SpikeFunction::new(r, c)?),
        None => None,
    })
}

/// Iterator over `Γ_{n,p} = {γ : γ(p) = p, γ(i) ≠ p for i ≠ p}`, yielding
/// each `γ` together with its relabeled restriction `γ'_p ∈ Γ_{K_p}`.
/// Exactly `(n-1)^(n-1)` items.
pub struct GammaNp {
    n: usize,
    p: usize,
    next_code: usize,
    total: usize,
}

impl Iterator for GammaNp {
    type Item = (MultiIndex, MultiIndex);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next_code >= self.total {
            return None;
        }
        let restricted = MultiIndex::from_code(self.n - 1, self.next_code);
        self.next_code += 1;
        // unrelabel {1..n-1} back to K_p = {1..n} \ {p}
        let unrelabel = |v0: usize| if v0 < self.p - 1 { v0 } else { v0 + 1 };
        let mut values = vec![0usize; self.n];
        for i in 0..self.n {
            values[i] = if i == self.p - 1 {
                self.p - 1
            } else {
                let from = if i < self.p - 1 { i } else { i - 1 };
                unrelabel(restricted.apply0(from))
            };
        }
        Some((MultiIndex::from_zero_based(values), restricted))
    }
}

impl ExactSizeIterator for GammaNp {
    fn len(&self) -> usize {
        self.total - self.next_code
    }
}

pub fn gamma_np(n: usize, p: usize) -> Result<GammaNp> {
    if n > MAX_DEGREE {
        return Err(Error::TooLarge { n, max: MAX_DEGREE });
    }
    if p == 0 || p > n || n == 0 {
        return Err(Error::BadIndices(format!("p={p} out of range 1..={n}")));
    }
    Ok(GammaNp {
        n,
        p,
        next_code: 0,
        total: (n - 1).pow((n - 1) as u32),
    })
}
