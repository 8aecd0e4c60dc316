//! Vector spaces over GF(p) realized by commutative factor groups of exponent
//! `p`, with coordinates, canonical row-echelon subspaces and the
//! subspace/subgroup correspondence.
//!
//! Vectors of a `d`-dimensional space are also addressed by an integer index
//! in `0..p^d`: the coordinates read base `p`, first coordinate most
//! significant. Index order is lexicographic order of coordinates.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{Violation, Witness};
use crate::group::{Elem, FactorGroup, FiniteGroup, Subgroup};

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Reduced row-echelon form over GF(p), zero rows dropped.
pub fn rref(rows: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| c % p).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p);
        for c in m[rank].iter_mut() {
            *c = *c * inv % p;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (c, &pc) in row.iter_mut().zip(&pivot) {
                    *c = (*c + (p - f) * pc) % p;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

pub fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    rref(rows, p).len()
}

/// Basis (in canonical form) of `{x | M x = 0}` for an `r × cols` matrix.
pub fn null_space(rows: &[Vec<u32>], cols: usize, p: u32) -> Vec<Vec<u32>> {
    let r = rref(rows, p);
    let pivots: Vec<usize> = r
        .iter()
        .map(|row| row.iter().position(|&c| c != 0).unwrap())
        .collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        basis.push(v);
    }
    rref(&basis, p)
}

pub(crate) fn index_of(coords: &[u32], p: u32) -> usize {
    coords
        .iter()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

pub(crate) fn coords_of(mut index: usize, p: u32, dim: usize) -> Vec<u32> {
    let mut out = vec![0u32; dim];
    for slot in out.iter_mut().rev() {
        *slot = (index % p as usize) as u32;
        index /= p as usize;
    }
    out
}

/// A coordinate vector over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GfVector {
    p: u32,
    coords: Vec<u32>,
}

impl GfVector {
    pub fn new(p: u32, coords: Vec<u32>) -> Self {
        GfVector {
            p,
            coords: coords.into_iter().map(|c| c % p).collect(),
        }
    }

    pub fn zero(p: u32, dim: usize) -> Self {
        GfVector {
            p,
            coords: vec![0; dim],
        }
    }

    pub fn unit(p: u32, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(p, dim);
        v.coords[i] = 1;
        v
    }

    pub fn from_index(p: u32, dim: usize, index: usize) -> Self {
        GfVector {
            p,
            coords: coords_of(index, p, dim),
        }
    }

    pub fn index(&self) -> usize {
        index_of(&self.coords, self.p)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        GfVector {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
        }
    }

    pub fn scale(&self, m: u32) -> Self {
        GfVector {
            p: self.p,
            coords: self
                .coords
                .iter()
                .map(|c| c * (m % self.p) % self.p)
                .collect(),
        }
    }
}

impl fmt::Display for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A subspace of `GF(p)^d` held as its canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| GfVector::unit(p, ambient, i).coords)
            .collect();
        Subspace { p, ambient, rows }
    }

    pub fn span(p: u32, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        Subspace {
            p,
            ambient,
            rows: rref(vectors, p),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rank(&rows, self.p) == self.rows.len()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::span(self.p, self.ambient, &rows)
    }

    /// All `p^dim` member vectors, as coordinate lists in index order of the
    /// combination coefficients.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let k = self.dim();
        let count = (self.p as usize).pow(k as u32);
        (0..count)
            .map(|i| {
                let coeffs = coords_of(i, self.p, k);
                let mut v = vec![0u32; self.ambient];
                for (c, row) in coeffs.iter().zip(&self.rows) {
                    for (slot, &r) in v.iter_mut().zip(row) {
                        *slot = (*slot + c * r) % self.p;
                    }
                }
                v
            })
            .collect()
    }
}

/// Every `k`-dimensional subspace of `GF(p)^d` exactly once, in canonical
/// order: pivot sets lexicographically, then free entries lexicographically.
pub fn subspaces_of_dim(p: u32, d: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free positions: (row i, column c) with c > pivot_i and c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pv = &pivots;
                ((pv[i] + 1)..d)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let count = (p as usize).pow(free.len() as u32);
        for fill in 0..count {
            let vals = coords_of(fill, p, free.len());
            let mut rows = vec![vec![0u32; d]; k];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            for (&(i, c), &v) in free.iter().zip(&vals) {
                rows[i][c] = v;
            }
            out.push(Subspace {
                p,
                ambient: d,
                rows,
            });
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < d - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All subspaces of a given subspace, grouped by increasing dimension.
pub fn subspaces_within(s: &Subspace) -> Vec<Subspace> {
    let k = s.dim();
    let mut out = Vec::new();
    for j in 0..=k {
        for sub in subspaces_of_dim(s.p, k, j) {
            let lifted: Vec<Vec<u32>> = sub
                .rows
                .iter()
                .map(|coef| {
                    let mut v = vec![0u32; s.ambient];
                    for (c, row) in coef.iter().zip(&s.rows) {
                        for (slot, &r) in v.iter_mut().zip(row) {
                            *slot = (*slot + c * r) % s.p;
                        }
                    }
                    v
                })
                .collect();
            out.push(Subspace::span(s.p, s.ambient, &lifted));
        }
    }
    out
}

/// `(p^d - 1)(p^(d-1) - 1)… / …`, the number of `k`-subspaces of `GF(p)^d`.
pub fn gaussian_binomial(d: u32, k: u32, p: u32) -> u128 {
    if k > d {
        return 0;
    }
    let q = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(d - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// The factor group `G/N` read as a vector space over GF(p).
#[derive(Clone, Debug)]
pub struct VectorSpace<'g> {
    factor: FactorGroup<'g>,
    p: u32,
    dim: usize,
    basis: Vec<usize>,
    coset_to_vec: Vec<usize>,
    vec_to_coset: Vec<usize>,
}

impl<'g> VectorSpace<'g> {
    /// Requires `G/N` commutative with every class of order dividing `p`.
    pub fn new(factor: FactorGroup<'g>, p: u32) -> Result<Self> {
        if !crate::pauli::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let group = factor.group();
        let m = factor.len();
        for u in 0..m {
            for v in 0..m {
                if factor.mul(u, v) != factor.mul(v, u) {
                    let (x, y) = (factor.rep(u), factor.rep(v));
                    return Err(Violation {
                        condition: 1,
                        witness: Witness::CommutatorOutside {
                            x,
                            y,
                            commutator: group.comm(x, y),
                        },
                    }
                    .into());
                }
            }
        }
        for u in 0..m {
            if factor.pow(u, p as u64) != 0 {
                let x = factor.rep(u);
                return Err(Violation {
                    condition: 1,
                    witness: Witness::PowerOutside {
                        x,
                        power: group.pow(x, p as i64),
                    },
                }
                .into());
            }
        }
        // greedy basis: first coset (in index order) outside the current span
        let mut in_span = vec![false; m];
        in_span[0] = true;
        let mut span = vec![0usize];
        let mut basis = Vec::new();
        for c in 0..m {
            if in_span[c] {
                continue;
            }
            basis.push(c);
            let mut next = Vec::with_capacity(span.len() * p as usize);
            for &s in &span {
                let mut t = s;
                for _ in 0..p {
                    if !in_span[t] {
                        in_span[t] = true;
                    }
                    next.push(t);
                    t = factor.mul(t, c);
                }
            }
            span = next;
        }
        let dim = basis.len();
        assert_eq!((p as usize).pow(dim as u32), m, "|G/N| = p^d");
        let mut space = VectorSpace {
            factor,
            p,
            dim,
            basis,
            coset_to_vec: vec![usize::MAX; m],
            vec_to_coset: vec![0; m],
        };
        for idx in 0..m {
            let v = GfVector::from_index(p, dim, idx);
            let c = space.coset_to_word(&v)?;
            assert_eq!(
                space.coset_to_vec[c],
                usize::MAX,
                "coordinates not injective"
            );
            space.coset_to_vec[c] = idx;
            space.vec_to_coset[idx] = c;
        }
        // coordinates are additive
        for u in 0..m {
            for v in 0..m {
                let sum = GfVector::from_index(p, dim, space.coset_to_vec[u])
                    .add(&GfVector::from_index(p, dim, space.coset_to_vec[v]));
                assert_eq!(space.coset_to_vec[space.factor.mul(u, v)], sum.index());
            }
        }
        Ok(space)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors, `p^dim`.
    pub fn len(&self) -> usize {
        self.vec_to_coset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn factor(&self) -> &FactorGroup<'g> {
        &self.factor
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.factor.group()
    }

    pub fn modulus(&self) -> &Subgroup {
        self.factor.modulus()
    }

    /// Coset indices chosen as basis.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn basis_reps(&self) -> Vec<Elem> {
        self.basis.iter().map(|&c| self.factor.rep(c)).collect()
    }

    pub fn coord_of_coset(&self, c: usize) -> GfVector {
        GfVector::from_index(self.p, self.dim, self.coset_to_vec[c])
    }

    /// Vector index of the coset `xN`.
    pub fn vector_index(&self, x: Elem) -> usize {
        self.coset_to_vec[self.factor.coset_of(x)]
    }

    pub fn vector_of(&self, x: Elem) -> GfVector {
        GfVector::from_index(self.p, self.dim, self.vector_index(x))
    }

    pub fn coset_of_index(&self, idx: usize) -> usize {
        self.vec_to_coset[idx]
    }

    /// Smallest group element in the coset of the given vector.
    pub fn rep_of_index(&self, idx: usize) -> Elem {
        self.factor.rep(self.vec_to_coset[idx])
    }

    /// The coset `x_1^{m_1} ⋯ x_d^{m_d} N` for basis representatives `x_i`.
    pub fn coset_to_word(&self, v: &GfVector) -> Result<usize> {
        if v.dim() != self.dim {
            return Err(Error::Dimension {
                got: v.dim(),
                expected: self.dim,
            });
        }
        let g = self.group();
        let mut x = Elem::IDENTITY;
        for (&c, &m) in self.basis.iter().zip(v.coords()) {
            x = g.mul(x, g.pow(self.factor.rep(c), m as i64));
        }
        Ok(self.factor.coset_of(x))
    }

    pub fn add_index(&self, a: usize, b: usize) -> usize {
        self.coset_to_vec[self.factor.mul(self.vec_to_coset[a], self.vec_to_coset[b])]
    }

    /// Union of the cosets of the vectors in `s`.
    pub fn subgroup_of_subspace(&self, s: &Subspace) -> Subgroup {
        let mut members = Vec::with_capacity(s.vectors().len() * self.modulus().order());
        for v in s.vectors() {
            members.extend_from_slice(self.factor.coset(self.vec_to_coset[index_of(&v, self.p)]));
        }
        self.group()
            .subgroup(&members)
            .expect("cosets of a subspace form a subgroup")
    }

    /// Inverse of [`Self::subgroup_of_subspace`] on subgroups containing `N`.
    pub fn subspace_of_subgroup(&self, s: &Subgroup) -> Result<Subspace> {
        if !self.modulus().is_subgroup_of(s) {
            return Err(Error::NotApplicable(
                "subgroup does not contain the modulus".into(),
            ));
        }
        let vectors: Vec<Vec<u32>> = s
            .members()
            .iter()
            .map(|&x| self.vector_of(x).coords().to_vec())
            .collect();
        Ok(Subspace::span(self.p, self.dim, &vectors))
    }

    pub fn all_subspaces(&self, k: usize) -> Vec<Subspace> {
        subspaces_of_dim(self.p, self.dim, k)
    }
}
