//! Unitary representations of permutation groups, stored as full element
//! tables for O(1) evaluation inside the tensor loops.
//!
//! Construction always validates the table: identity image, unitarity of
//! every matrix (1e-10), the homomorphism property, and `M(σ⁻¹) = M(σ)*`.
//! The homomorphism is checked over all pairs when the group is small
//! enough and over all (generator, element) pairs otherwise, which pins the
//! same property because the table is grown by generator words.

use serde::{Deserialize, Serialize};

use num_complex::Complex64;

use crate::cxlinalg::{ab_star, CMatrix};
use crate::permgroup::{PermGroup, Permutation};
use crate::{Error, Result, Tolerances};

/// Full-pair homomorphism validation is used up to this group order.
const FULL_PAIR_VALIDATION_MAX_ORDER: usize = 120;

/// A validated unitary representation `σ ↦ M(σ)` of a finite permutation
/// group.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: PermGroup,
    dim: usize,
    // aligned with group.elements()
    table: Vec<CMatrix>,
}

/// Names accepted by [`UnitaryRep::builtin`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinRep {
    Trivial,
    Sign,
    SignPlusTrivial,
    NaturalPermutation,
    #[serde(rename = "s3_standard_2d")]
    S3Standard2d,
}

impl BuiltinRep {
    pub const ALL: [BuiltinRep; 5] = [
        BuiltinRep::Trivial,
        BuiltinRep::Sign,
        BuiltinRep::SignPlusTrivial,
        BuiltinRep::NaturalPermutation,
        BuiltinRep::S3Standard2d,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinRep::Trivial => "trivial",
            BuiltinRep::Sign => "sign",
            BuiltinRep::SignPlusTrivial => "sign_plus_trivial",
            BuiltinRep::NaturalPermutation => "natural_permutation",
            BuiltinRep::S3Standard2d => "s3_standard_2d",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        BuiltinRep::ALL
            .into_iter()
            .find(|b| b.name() == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }
}

impl UnitaryRep {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Table lookup for a group element.
    pub fn evaluate(&self, sigma: &Permutation) -> Result<&CMatrix> {
        match self.group.index_of(sigma) {
            Some(k) => Ok(&self.table[k]),
            None => Err(Error::NotInGroup(sigma.clone())),
        }
    }

    /// Matrix at a known element index (hot loops).
    pub(crate) fn matrix_at(&self, index: usize) -> &CMatrix {
        &self.table[index]
    }

    /// One of the catalog representations, built for `group` and validated.
    pub fn builtin(name: BuiltinRep, group: &PermGroup) -> Result<UnitaryRep> {
        let tols = Tolerances::default();
        let n = group.degree();
        let table: Vec<CMatrix> = match name {
            BuiltinRep::Trivial => group
                .elements()
                .iter()
                .map(|_| CMatrix::identity(1))
                .collect(),
            BuiltinRep::Sign => group
                .elements()
                .iter()
                .map(|p| CMatrix::from_real(&[&[p.sign() as f64]]))
                .collect(),
            BuiltinRep::SignPlusTrivial => group
                .elements()
                .iter()
                .map(|p| CMatrix::from_real(&[&[p.sign() as f64, 0.0], &[0.0, 1.0]]))
                .collect(),
            BuiltinRep::NaturalPermutation => group
                .elements()
                .iter()
                .map(|p| {
                    // M(σ) e_i = e_{σ(i)}: column i carries a 1 in row σ(i)
                    let mut m = CMatrix::zeros(n, n);
                    for i in 0..n {
                        m[(p.apply0(i), i)] = Complex64::new(1.0, 0.0);
                    }
                    m
                })
                .collect(),
            BuiltinRep::S3Standard2d => {
                if n != 3 {
                    return Err(Error::IncompatibleGroup {
                        name: name.name().to_string(),
                        reason: format!("requires a subgroup of S_3, got degree {n}"),
                    });
                }
                group
                    .elements()
                    .iter()
                    .map(s3_standard_2d_matrix)
                    .collect()
            }
        };
        let rep = UnitaryRep {
            group: group.clone(),
            dim: table.first().map_or(0, |m| m.rows()),
            table,
        };
        rep.validate(&tols)?;
        Ok(rep)
    }

    /// Extends generator images to the whole group by BFS over generator
    /// words, then validates. Two words reaching the same element must agree
    /// to 1e-9 (rounding accumulates along words, hence looser than the
    /// 1e-10 unitarity bound).
    pub fn from_generator_images(
        group: &PermGroup,
        images: &[(Permutation, CMatrix)],
    ) -> Result<UnitaryRep> {
        let tols = Tolerances::default();
        let m = match images.first() {
            Some((_, mat)) => mat.require_square()?,
            None => 1,
        };
        for (p, mat) in images {
            if p.degree() != group.degree() {
                return Err(Error::DegreeMismatch(p.degree(), group.degree()));
            }
            if mat.require_square()? != m {
                return Err(Error::ShapeMismatch(mat.rows(), mat.cols(), m, m));
            }
        }
        for gen in group.generators() {
            if !images.iter().any(|(p, _)| p == gen) {
                return Err(Error::MissingGeneratorImage(gen.clone()));
            }
        }

        let order = group.order();
        let mut table: Vec<Option<CMatrix>> = vec![None; order];
        let identity = Permutation::identity(group.degree());
        let id_index = group
            .index_of(&identity)
            .expect("a group contains the identity");
        table[id_index] = Some(CMatrix::identity(m));
        let mut queue = vec![id_index];
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head];
            head += 1;
            let current_perm = &group.elements()[current];
            let current_matrix = table[current]
                .clone()
                .expect("queued elements have matrices");
            for (gen, gen_matrix) in images {
                let next_perm = current_perm.compose(gen);
                let next = group
                    .index_of(&next_perm)
                    .expect("groups are closed under composition");
                let next_matrix = current_matrix.matmul(gen_matrix)?;
                match &table[next] {
                    None => {
                        table[next] = Some(next_matrix);
                        queue.push(next);
                    }
                    Some(existing) => {
                        let discrepancy = existing.max_abs_diff(&next_matrix);
                        if discrepancy > tols.route {
                            return Err(Error::InconsistentHomomorphism {
                                element: next_perm,
                                discrepancy,
                            });
                        }
                    }
                }
            }
        }
        if table.iter().any(Option::is_none) {
            return Err(Error::Internal(
                "generator images did not reach every group element".into(),
            ));
        }
        let rep = UnitaryRep {
            group: group.clone(),
            dim: m,
            table: table.into_iter().map(Option::unwrap).collect(),
        };
        rep.validate(&tols)?;
        Ok(rep)
    }

    /// Transports the representation to the stabilizer of `p` restricted to
    /// `K_p`: the relabeling is a group isomorphism, so each restricted
    /// element keeps the matrix of its preimage.
    pub fn restricted(&self, p: usize) -> Result<UnitaryRep> {
        let n = self.group.degree();
        let stab = self.group.stabilizer(p)?;
        let restricted_group = stab.restrict(p)?;
        let mut table = Vec::with_capacity(restricted_group.order());
        for short in restricted_group.elements() {
            // unrelabel {1..n-1} back to K_p, keeping p fixed
            let mut images = vec![0usize; n];
            for i in 0..n {
                if i == p - 1 {
                    images[i] = p;
                } else {
                    let from = if i < p - 1 { i } else { i - 1 };
                    let to = short.apply0(from);
                    images[i] = if to < p - 1 { to + 1 } else { to + 2 };
                }
            }
            let original = Permutation::from_one_line(&images)?;
            table.push(self.evaluate(&original)?.clone());
        }
        let rep = UnitaryRep {
            group: restricted_group,
            dim: self.dim,
            table,
        };
        rep.validate(&Tolerances::default())?;
        Ok(rep)
    }

    fn validate(&self, tols: &Tolerances) -> Result<()> {
        let order = self.group.order();
        let identity = Permutation::identity(self.group.degree());
        let id_index = self.group.index_of(&identity).expect("identity");
        if self.table[id_index].max_abs_diff(&CMatrix::identity(self.dim)) > tols.linalg {
            return Err(Error::Internal("M(identity) is not the identity".into()));
        }
        for (k, p) in self.group.elements().iter().enumerate() {
            let m = &self.table[k];
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::ShapeMismatch(m.rows(), m.cols(), self.dim, self.dim));
            }
            let gram = ab_star(m, m)?;
            let residual = gram.max_abs_diff(&CMatrix::identity(self.dim));
            if residual > tols.linalg {
                return Err(Error::NotUnitary {
                    element: p.clone(),
                    residual,
                });
            }
            // M(σ⁻¹) = M(σ)*
            let inv_index = self
                .group
                .index_of(&p.inverse())
                .expect("closed under inverse");
            if self.table[inv_index].max_abs_diff(&m.conj_transpose()) > tols.linalg {
                return Err(Error::Internal(format!(
                    "M({}⁻¹) differs from M({})*",
                    p, p
                )));
            }
        }
        if order <= FULL_PAIR_VALIDATION_MAX_ORDER {
            for (i, a) in self.group.elements().iter().enumerate() {
                for (j, b) in self.group.elements().iter().enumerate() {
                    self.check_product(i, j, a, b, tols)?;
                }
            }
        } else {
            for gen in self.group.generators() {
                let j = self.group.index_of(gen).expect("generator in group");
                for (i, a) in self.group.elements().iter().enumerate() {
                    self.check_product(i, j, a, gen, tols)?;
                }
            }
        }
        Ok(())
    }

    fn check_product(
        &self,
        i: usize,
        j: usize,
        a: &Permutation,
        b: &Permutation,
        tols: &Tolerances,
    ) -> Result<()> {
        let product = a.compose(b);
        let k = self
            .group
            .index_of(&product)
            .expect("closed under composition");
        let expected = self.table[i].matmul(&self.table[j])?;
        let discrepancy = expected.max_abs_diff(&self.table[k]);
        if discrepancy > tols.linalg {
            return Err(Error::InconsistentHomomorphism {
                element: product,
                discrepancy,
            });
        }
        Ok(())
    }
}

/// The 2-dimensional unitary representation of `S_3` acting on each element
/// by a reflection or rotation of the plane.
fn s3_standard_2d_matrix(p: &Permutation) -> CMatrix {
    let s = 3.0f64.sqrt() / 2.0;
    let images = p.one_line();
    match images.as_slice() {
        [1, 2, 3] => CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 1.0]]),
        [2, 3, 1] => CMatrix::from_real(&[&[-0.5, s], &[-s, -0.5]]), // (1 2 3)
        [3, 1, 2] => CMatrix::from_real(&[&[-0.5, -s], &[s, -0.5]]), // (1 3 2)
        [1, 3, 2] => CMatrix::from_real(&[&[-0.5, s], &[s, 0.5]]),   // (2 3)
        [3, 2, 1] => CMatrix::from_real(&[&[-0.5, -s], &[-s, 0.5]]), // (1 3)
        [2, 1, 3] => CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]), // (1 2)
        _ => unreachable!("degree-3 permutations are exhausted"),
    }
}

/// Wire descriptor for a representation.
///
/// `{"kind":"builtin","name":"sign"}` or
/// `{"kind":"images","m":2,"images":[{"perm":[2,1],"matrix":[[[0,0],[1,0]],[[1,0],[0,0]]]}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepDescriptor {
    Builtin { name: BuiltinRep },
    Images { m: usize, images: Vec<ImageEntry> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImageEntry {
    pub perm: Permutation,
    pub matrix: CMatrix,
}

impl RepDescriptor {
    pub fn realize(&self, group: &PermGroup) -> Result<UnitaryRep> {
        match self {
            RepDescriptor::Builtin { name } => UnitaryRep::builtin(*name, group),
            RepDescriptor::Images { m, images } => {
                for entry in images {
                    if entry.matrix.rows() != *m || entry.matrix.cols() != *m {
                        return Err(Error::ShapeMismatch(
                            entry.matrix.rows(),
                            entry.matrix.cols(),
                            *m,
                            *m,
                        ));
                    }
                }
                let pairs: Vec<(Permutation, CMatrix)> = images
                    .iter()
                    .map(|e| (e.perm.clone(), e.matrix.clone()))
                    .collect();
                UnitaryRep::from_generator_images(group, &pairs)
            }
        }
    }
}
