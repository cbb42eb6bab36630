//! Seeded random fixtures for tests and the oracle command. ChaCha keeps
//! runs byte-identical across platforms for a given seed.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;

pub use rand_chacha::ChaCha8Rng;

use crate::cxlinalg::{ab_star, CMatrix};
use crate::permgroup::{PermGroup, Permutation};
use crate::tensorlab::TensorVector;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Unit-magnitude complex number with a random phase.
pub fn phase(rng: &mut impl Rng) -> Complex64 {
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::new(theta.cos(), theta.sin())
}

pub fn cmatrix(rng: &mut impl Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| complex(rng))
}

/// Random positive definite Hermitian matrix: `(G G* + n·I) / n`.
pub fn pd_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let g = cmatrix(rng, n);
    let gram = ab_star(&g, &g).expect("square");
    let mut h = gram;
    for i in 0..n {
        h[(i, i)] += Complex64::new(n as f64, 0.0);
    }
    h.scale(Complex64::new(1.0 / n as f64, 0.0))
}

/// Positive definite Hermitian with block-diagonal support: a dense random
/// PD block per part of a random partition of `{1..n}`.
pub fn pd_block_diagonal(rng: &mut impl Rng, n: usize) -> CMatrix {
    let mut h = CMatrix::zeros(n, n);
    let mut start = 0usize;
    while start < n {
        let size = rng.gen_range(1..=(n - start));
        let block = pd_hermitian(rng, size);
        for i in 0..size {
            for j in 0..size {
                h[(start + i, start + j)] = block[(i, j)];
            }
        }
        start += size;
    }
    h
}

/// Positive definite Hermitian with a random sparse off-diagonal pattern,
/// made definite by diagonal dominance.
pub fn pd_sparse(rng: &mut impl Rng, n: usize) -> CMatrix {
    let mut h = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                let z = complex(rng);
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
    }
    for i in 0..n {
        h[(i, i)] = Complex64::new(2.0 * n as f64 + rng.gen_range(0.0..1.0), 0.0);
    }
    h
}

/// Random unit vector in C^m.
pub fn unit_vector(rng: &mut impl Rng, m: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..m).map(|_| complex(rng)).collect();
        let norm = crate::cxlinalg::vec_norm(&v);
        if norm > 1e-3 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Upper triangular with unit diagonal phases and the given strictly-upper
/// support pattern filled with unit-magnitude entries.
pub fn upper_triangular_with_pattern(
    rng: &mut impl Rng,
    n: usize,
    pattern: &[(usize, usize)],
) -> CMatrix {
    let mut a = CMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = Complex64::new(1.0, 0.0);
    }
    for &(i, j) in pattern {
        assert!(i < j && j <= n, "pattern must be strictly upper, 1-based");
        a[(i - 1, j - 1)] = phase(rng);
    }
    a
}

/// Dense random upper triangular with nonzero diagonal.
pub fn upper_triangular(rng: &mut impl Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| {
        if i < j {
            complex(rng)
        } else if i == j {
            phase(rng) * rng.gen_range(0.5..1.5)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_one_line(&images).expect("shuffle keeps a bijection")
}

/// Random subgroup of `S_n`: the closure of one or two random elements.
pub fn subgroup(rng: &mut impl Rng, n: usize) -> PermGroup {
    let count = rng.gen_range(0..=2);
    let gens: Vec<Permutation> = (0..count).map(|_| permutation(rng, n)).collect();
    PermGroup::closure_default(n, &gens).expect("desk-scale degrees stay under the cap")
}

pub fn tensor(rng: &mut impl Rng, m: usize, n: usize) -> TensorVector {
    let mut t = TensorVector::zeros(m, n).expect("caller stays within caps");
    for j in 0..m {
        for code in 0..t.basis_size() {
            *t.coeff_mut(j, code) = complex(rng);
        }
    }
    t
}
