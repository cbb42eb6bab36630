//! Permutations of `{1..n}` and finite subgroups of `S_n` held as explicit
//! element lists.
//!
//! Everything is 1-based at the API surface (matching the usual one-line
//! and cycle notations); storage is 0-based. Groups are built by BFS closure
//! from generators with a hard element cap, so the module stays honest at
//! desk scale (degree ≤ 8) and never needs coset machinery.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cxlinalg::CMatrix;
use crate::{Error, Result};

/// A bijection of `{1..n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[i] is the 0-based image of 0-based point i
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 1-based one-line notation, e.g. `[2,1,3]` for the transposition
    /// `(1 2)` in `S_3`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(images.to_vec()));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&v| v - 1).collect(),
        })
    }

    /// The transposition `(a b)` in degree `n` (1-based points).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::BadPoint {
                point: a.max(b),
                degree: n,
            });
        }
        let mut p = Permutation::identity(n);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"`; numbers may be
    /// separated by spaces or commas. An empty string or `"()"` is the
    /// identity.
    pub fn from_cycles(n: usize, input: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ParseCycles {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        // product of the written cycles, rightmost applied first
        let mut result = Permutation::identity(n);
        let mut rest = input.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
            let body = &rest[1..close];
            let points: Vec<usize> = body
                .split(|ch: char| ch.is_whitespace() || ch == ',')
                .filter(|tok| !tok.is_empty())
                .map(|tok| tok.parse::<usize>().map_err(|_| bad("not a number")))
                .collect::<Result<_>>()?;
            let mut seen = vec![false; n];
            for &p in &points {
                if p == 0 || p > n {
                    return Err(bad("point out of range"));
                }
                if seen[p - 1] {
                    return Err(bad("repeated point in cycle"));
                }
                seen[p - 1] = true;
            }
            let mut cycle = Permutation::identity(n);
            if points.len() > 1 {
                for (k, &p) in points.iter().enumerate() {
                    cycle.images[p - 1] = points[(k + 1) % points.len()] - 1;
                }
            }
            result = result.compose(&cycle);
            rest = rest[close + 1..].trim_start();
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// Image of a 0-based point (hot loops).
    pub fn apply0(&self, i: usize) -> usize {
        self.images[i]
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub(crate) fn images0(&self) -> &[usize] {
        &self.images
    }

    /// `(self ∘ other)(i) = self(other(i))`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `+1` for even permutations, `-1` for odd.
    pub fn sign(&self) -> i32 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

// Wire format: 1-based one-line notation, e.g. [2,1,3].
impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_line(&images).map_err(serde::de::Error::custom)
    }
}

/// Default closure cap: `8! = 40320`, the full symmetric group at the
/// largest supported degree.
pub const DEFAULT_CLOSURE_CAP: usize = 40320;

/// A finite subgroup of `S_n`, stored as the full element list (sorted
/// lexicographically by one-line notation) plus a generating set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
    index: HashMap<Vec<usize>, usize>,
}

impl PermGroup {
    /// Smallest subgroup of `S_n` containing `gens`, by BFS closure.
    pub fn closure(n: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != n {
                return Err(Error::DegreeMismatch(g.degree(), n));
            }
        }
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut elements = vec![Permutation::identity(n)];
        seen.insert(elements[0].images.clone(), 0);
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in gens {
                let next = current.compose(g);
                if !seen.contains_key(&next.images) {
                    if elements.len() + 1 > cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    seen.insert(next.images.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        let mut generators: Vec<Permutation> = gens.to_vec();
        generators.sort();
        generators.dedup();
        generators.retain(|g| !g.is_identity());
        Ok(Self::from_elements(n, elements, generators))
    }

    pub fn closure_default(n: usize, gens: &[Permutation]) -> Result<Self> {
        Self::closure(n, gens, DEFAULT_CLOSURE_CAP)
    }

    fn from_elements(n: usize, mut elements: Vec<Permutation>, generators: Vec<Permutation>) -> Self {
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(k, p)| (p.images.clone(), k))
            .collect();
        PermGroup {
            n,
            elements,
            generators,
            index,
        }
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_elements(n, vec![Permutation::identity(n)], Vec::new())
    }

    /// The full symmetric group `S_n`, `n ≤ 8`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n > 8 {
            return Err(Error::TooLarge { n, max: 8 });
        }
        let gens: Vec<Permutation> = (1..n)
            .map(|i| Permutation::transposition(n, i, i + 1))
            .collect::<Result<_>>()?;
        Self::closure(n, &gens, DEFAULT_CLOSURE_CAP)
    }

    /// The alternating group `A_n`, generated by consecutive 3-cycles.
    pub fn alternating(n: usize) -> Result<Self> {
        if n > 8 {
            return Err(Error::TooLarge { n, max: 8 });
        }
        if n < 3 {
            return Ok(Self::trivial(n));
        }
        let gens: Vec<Permutation> = (1..=n - 2)
            .map(|i| Permutation::from_cycles(n, &format!("({} {} {})", i, i + 1, i + 2)))
            .collect::<Result<_>>()?;
        Self::closure(n, &gens, DEFAULT_CLOSURE_CAP)
    }

    /// The support group of a square matrix: the subgroup generated by all
    /// transpositions `(i,j)`, `i ≠ j`, where either of `D(i,j)`, `D(j,i)`
    /// exceeds `zero_tol · max|D|`. Also returns the generating
    /// transpositions as 1-based pairs `i < j`.
    pub fn support_group(d: &CMatrix, zero_tol: f64) -> Result<(Self, Vec<(usize, usize)>)> {
        let n = d.require_square()?;
        let scale = d.max_abs().max(1e-300);
        let mut pairs = Vec::new();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if d[(i, j)].norm() > zero_tol * scale || d[(j, i)].norm() > zero_tol * scale {
                    pairs.push((i + 1, j + 1));
                    gens.push(Permutation::transposition(n, i + 1, j + 1)?);
                }
            }
        }
        let group = Self::closure(n, &gens, DEFAULT_CLOSURE_CAP)?;
        Ok((group, pairs))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.n && self.index.contains_key(&p.images)
    }

    /// Position of an element in the sorted element list.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.n {
            return None;
        }
        self.index.get(&p.images).copied()
    }

    /// Same element set (generating sets may differ).
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.n == other.n && self.elements == other.elements
    }

    /// Orbits of the action on `{1..n}`, as a sorted partition (1-based).
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for p in &self.elements {
            for i in 0..self.n {
                uf.union(i, p.images[i]);
            }
        }
        let mut buckets: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.n {
            buckets.entry(uf.find(i)).or_default().push(i + 1);
        }
        let mut orbits: Vec<Vec<usize>> = buckets.into_values().collect();
        orbits.sort_by_key(|o| o[0]);
        orbits
    }

    /// Subgroup of elements fixing the 1-based point `p`.
    pub fn stabilizer(&self, p: usize) -> Result<PermGroup> {
        if p == 0 || p > self.n {
            return Err(Error::BadPoint {
                point: p,
                degree: self.n,
            });
        }
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|perm| perm.images[p - 1] == p - 1)
            .cloned()
            .collect();
        let generators = extract_generators(self.n, &elements);
        Ok(Self::from_elements(self.n, elements, generators))
    }

    /// Restriction to `K_p = {1..n} \ {p}` with order-preserving relabeling
    /// to `{1..n-1}`. Every element must fix `p`.
    pub fn restrict(&self, p: usize) -> Result<PermGroup> {
        if p == 0 || p > self.n {
            return Err(Error::BadPoint {
                point: p,
                degree: self.n,
            });
        }
        for perm in &self.elements {
            if perm.images[p - 1] != p - 1 {
                return Err(Error::NotFixing {
                    element: perm.clone(),
                    point: p,
                });
            }
        }
        let points: Vec<usize> = (1..=self.n).filter(|&i| i != p).collect();
        self.restrict_to(&points)
    }

    /// Restriction to a setwise-invariant list of 1-based points, relabeled
    /// order-preservingly to `{1..k}`.
    pub fn restrict_to(&self, points: &[usize]) -> Result<PermGroup> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &p in &sorted {
            if p == 0 || p > self.n {
                return Err(Error::BadPoint {
                    point: p,
                    degree: self.n,
                });
            }
        }
        let relabel: HashMap<usize, usize> = sorted
            .iter()
            .enumerate()
            .map(|(k, &p)| (p - 1, k))
            .collect();
        let mut elements = Vec::new();
        for perm in &self.elements {
            let mut images = vec![0usize; sorted.len()];
            for &p in &sorted {
                let image = perm.images[p - 1];
                match relabel.get(&image) {
                    Some(&to) => images[relabel[&(p - 1)]] = to,
                    None => {
                        return Err(Error::NotInvariant {
                            element: perm.clone(),
                        })
                    }
                }
            }
            elements.push(Permutation { images });
        }
        elements.sort();
        elements.dedup();
        let generators = extract_generators(sorted.len(), &elements);
        Ok(Self::from_elements(sorted.len(), elements, generators))
    }

    /// True when every element of `self` lies in `g` (full enumeration).
    pub fn is_subgroup_of(&self, g: &PermGroup) -> Result<bool> {
        if self.n != g.n {
            return Err(Error::DegreeMismatch(self.n, g.n));
        }
        Ok(self.elements.iter().all(|p| g.contains(p)))
    }

    /// Generator-only subgroup test; agrees with [`Self::is_subgroup_of`]
    /// because a subgroup containing the generators contains their closure.
    pub fn is_subgroup_of_via_generators(&self, g: &PermGroup) -> Result<bool> {
        if self.n != g.n {
            return Err(Error::DegreeMismatch(self.n, g.n));
        }
        Ok(self.generators.iter().all(|p| g.contains(p)))
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other)
    }
}

/// Greedy small generating set: scan elements in lexicographic order and
/// keep those not already generated.
fn extract_generators(n: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut generated = PermGroup::trivial(n);
    for p in elements {
        if p.is_identity() || generated.contains(p) {
            continue;
        }
        gens.push(p.clone());
        generated = match PermGroup::closure(n, &gens, elements.len().max(1)) {
            Ok(g) => g,
            Err(_) => unreachable!("closure of subgroup elements stays within the subgroup"),
        };
        if generated.order() == elements.len() {
            break;
        }
    }
    gens
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
