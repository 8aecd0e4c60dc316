//! Exact arithmetic in the cyclotomic rings `Z[ζ_m]` and dense matrices over
//! them. Used as an independent oracle for the symbolic Pauli multiplication.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Coefficients (lowest degree first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    assert!(m >= 1);
    // x^m - 1 divided by every Φ_d with d | m, d < m
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            poly = exact_div(&poly, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(m, poly.clone());
    poly
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Z[ζ_m]`, stored reduced modulo `Φ_m` so equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    m: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    fn degree(m: u32) -> usize {
        cyclotomic_polynomial(m).len() - 1
    }

    pub fn zero(m: u32) -> Self {
        Cyclotomic {
            m,
            coeffs: vec![0; Self::degree(m)],
        }
    }

    pub fn one(m: u32) -> Self {
        Self::root(m, 0)
    }

    /// `ζ_m^k`.
    pub fn root(m: u32, k: u32) -> Self {
        let mut raw = vec![0i64; m as usize];
        raw[(k % m) as usize] = 1;
        Self::reduce(m, raw)
    }

    fn reduce(m: u32, mut raw: Vec<i64>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        for i in (deg..raw.len()).rev() {
            let c = raw[i];
            if c != 0 {
                for (j, &pj) in phi.iter().enumerate() {
                    raw[i - deg + j] -= c * pj;
                }
            }
        }
        raw.resize(deg, 0);
        Cyclotomic { m, coeffs: raw }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        Cyclotomic {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let mut raw = vec![0i64; (self.coeffs.len() * 2).max(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Self::reduce(self.m, raw)
    }

    /// `Some(k)` when this element equals `ζ_m^k`.
    pub fn as_root(&self) -> Option<u32> {
        (0..self.m).find(|&k| *self == Self::root(self.m, k))
    }
}

/// An exact matrix entry as exposed to callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    /// `ζ_m^k`
    Root {
        k: u32,
        m: u32,
    },
}

/// Square matrix with entries in `Z[ζ_m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    m: u32,
    entries: Vec<Cyclotomic>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize, m: u32) -> Self {
        ExactMatrix {
            dim,
            m,
            entries: vec![Cyclotomic::zero(m); dim * dim],
        }
    }

    pub fn identity(dim: usize, m: u32) -> Self {
        let mut out = Self::zeros(dim, m);
        for i in 0..dim {
            out.set(i, i, Cyclotomic::one(m));
        }
        out
    }

    /// Builds a matrix from `(k)` exponents, `None` meaning zero.
    pub fn from_roots(m: u32, rows: &[Vec<Option<u32>>]) -> Self {
        let dim = rows.len();
        let mut out = Self::zeros(dim, m);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for (j, e) in row.iter().enumerate() {
                if let Some(k) = e {
                    out.set(i, j, Cyclotomic::root(m, *k));
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.entries[i * self.dim + j] = v;
    }

    /// Entry as zero or a single root of unity; `None` for other sums.
    pub fn entry(&self, i: usize, j: usize) -> Option<Entry> {
        let c = self.get(i, j);
        if c.is_zero() {
            Some(Entry::Zero)
        } else {
            c.as_root().map(|k| Entry::Root { k, m: self.m })
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        ExactMatrix {
            dim: self.dim,
            m: self.m,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n, self.m);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let sum = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, sum);
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a * b, self.m);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.set(i * b + k, j * b + l, x.mul(other.get(k, l)));
                    }
                }
            }
        }
        out
    }
}
