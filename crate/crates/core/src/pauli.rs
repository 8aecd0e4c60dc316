//! Generalized Pauli groups: complex and real multi-qubit groups and odd-prime
//! multi-qudit groups.
//!
//! An element is `phase · X^x Z^z` where `X^x Z^z` is the tensor product of
//! `X^{x_i} Z^{z_i}` over the factors. Multiplication follows from
//! `Z X = ω X Z`, which gives the cocycle
//! `(a, x, z)(b, x', z') = (a + b + κ z·x', x + x', z + z')`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclotomic, ExactMatrix};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, MAX_ORDER};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `i^α σ_1 ⊗ … ⊗ σ_n`, phases in `{±1, ±i}`.
    ComplexQubit,
    /// Real orthogonal `±X, ±Y, ±Z, ±I` products with `Y = ZX`.
    RealQubit,
    /// Shift/clock products for an odd prime, phases `ω^a`.
    QuditOdd,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::ComplexQubit => "complex_qubit",
            Flavor::RealQubit => "real_qubit",
            Flavor::QuditOdd => "qudit_odd",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex_qubit" | "complex" => Ok(Flavor::ComplexQubit),
            "real_qubit" | "real" => Ok(Flavor::RealQubit),
            "qudit_odd" | "qudit" => Ok(Flavor::QuditOdd),
            other => Err(Error::Unknown {
                kind: "flavor",
                name: other.to_string(),
            }),
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliSpec {
    pub p: u32,
    pub n: u32,
    pub flavor: Flavor,
}

impl PauliSpec {
    pub fn new(p: u32, n: u32, flavor: Flavor) -> Result<Self> {
        let spec = PauliSpec { p, n, flavor };
        spec.validate()?;
        Ok(spec)
    }

    pub fn complex_qubits(n: u32) -> Self {
        PauliSpec {
            p: 2,
            n,
            flavor: Flavor::ComplexQubit,
        }
    }

    pub fn real_qubits(n: u32) -> Self {
        PauliSpec {
            p: 2,
            n,
            flavor: Flavor::RealQubit,
        }
    }

    pub fn qudits(p: u32, n: u32) -> Self {
        PauliSpec {
            p,
            n,
            flavor: Flavor::QuditOdd,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::PauliSpec("need at least one tensor factor".into()));
        }
        if !is_prime(self.p) {
            return Err(Error::PauliSpec(format!("{} is not prime", self.p)));
        }
        match self.flavor {
            Flavor::ComplexQubit | Flavor::RealQubit if self.p != 2 => {
                return Err(Error::PauliSpec(format!(
                    "{} requires p = 2, got {}",
                    self.flavor, self.p
                )))
            }
            Flavor::QuditOdd if self.p == 2 => {
                return Err(Error::PauliSpec("qudit_odd requires an odd prime".into()))
            }
            _ => {}
        }
        let order = (self.phase_order() as u128) * (self.p as u128).pow(2 * self.n);
        if order > MAX_ORDER as u128 {
            return Err(Error::Size {
                order: usize::try_from(order).unwrap_or(usize::MAX),
                max: MAX_ORDER,
            });
        }
        Ok(())
    }

    pub fn phase_order(&self) -> u32 {
        match self.flavor {
            Flavor::ComplexQubit => 4,
            Flavor::RealQubit => 2,
            Flavor::QuditOdd => self.p,
        }
    }

    /// Phase units contributed by one `ZX → XZ` swap.
    fn kappa(&self) -> u32 {
        match self.flavor {
            Flavor::ComplexQubit => 2,
            _ => 1,
        }
    }

    /// Order of the root of unity used for exact matrix entries.
    pub fn root_order(&self) -> u32 {
        match self.flavor {
            Flavor::ComplexQubit => 4,
            Flavor::RealQubit => 2,
            Flavor::QuditOdd => self.p,
        }
    }

    pub fn order(&self) -> usize {
        self.phase_order() as usize * (self.p as usize).pow(2 * self.n)
    }

    fn vec_count(&self) -> usize {
        (self.p as usize).pow(self.n)
    }

    pub fn identity(&self) -> PauliElement {
        PauliElement {
            phase: 0,
            x: vec![0; self.n as usize],
            z: vec![0; self.n as usize],
        }
    }

    fn check(&self, u: &PauliElement) -> Result<()> {
        let n = self.n as usize;
        if u.x.len() != n || u.z.len() != n {
            return Err(Error::PauliSpec(format!(
                "element has {}/{} factors, spec has {n}",
                u.x.len(),
                u.z.len()
            )));
        }
        if u.phase >= self.phase_order() || u.x.iter().chain(&u.z).any(|&c| c >= self.p) {
            return Err(Error::PauliSpec("element component out of range".into()));
        }
        Ok(())
    }

    /// Canonical id: phase-major, then `x`, then `z`, each read base `p` with
    /// the first factor most significant.
    pub fn encode(&self, u: &PauliElement) -> usize {
        let q = self.vec_count();
        let digits = |v: &[u32]| {
            v.iter()
                .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
        };
        (u.phase as usize * q + digits(&u.x)) * q + digits(&u.z)
    }

    pub fn decode(&self, id: usize) -> PauliElement {
        let q = self.vec_count();
        let n = self.n as usize;
        let p = self.p as usize;
        let split = |mut v: usize| {
            let mut out = vec![0u32; n];
            for slot in out.iter_mut().rev() {
                *slot = (v % p) as u32;
                v /= p;
            }
            out
        };
        PauliElement {
            phase: (id / (q * q)) as u32,
            x: split((id / q) % q),
            z: split(id % q),
        }
    }

    pub fn multiply(&self, u: &PauliElement, v: &PauliElement) -> Result<PauliElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.multiply_unchecked(u, v))
    }

    fn multiply_unchecked(&self, u: &PauliElement, v: &PauliElement) -> PauliElement {
        let p = self.p;
        let dot = u.z.iter().zip(&v.x).map(|(a, b)| a * b).sum::<u32>() % p;
        let add = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(s, t)| (s + t) % p).collect();
        PauliElement {
            phase: (u.phase + v.phase + self.kappa() * dot) % self.phase_order(),
            x: add(&u.x, &v.x),
            z: add(&u.z, &v.z),
        }
    }

    /// Exact matrix `phase · ⊗ X^{x_i} Z^{z_i}`.
    pub fn to_matrix(&self, u: &PauliElement) -> ExactMatrix {
        let m = self.root_order();
        let p = self.p;
        let d = p as usize;
        let mut out = ExactMatrix::identity(1, m);
        for (&xi, &zi) in u.x.iter().zip(&u.z) {
            // (X^x Z^z) e_j = ω^{z j} e_{j + x}
            let mut f = ExactMatrix::zeros(d, m);
            for j in 0..d {
                let k = (zi * j as u32 % p) * (m / p);
                f.set((j + xi as usize) % d, j, Cyclotomic::root(m, k));
            }
            out = out.kron(&f);
        }
        let phase = Cyclotomic::root(m, u.phase * (m / self.phase_order()));
        out.scale(&phase)
    }

    /// Phase-free tensor label such as `XY`; qudit factors are joined by `.`.
    pub fn label(&self, u: &PauliElement) -> String {
        match self.flavor {
            Flavor::ComplexQubit | Flavor::RealQubit => {
                u.x.iter()
                    .zip(&u.z)
                    .map(|(&x, &z)| match (x, z) {
                        (0, 0) => 'I',
                        (1, 0) => 'X',
                        (0, 1) => 'Z',
                        _ => 'Y',
                    })
                    .collect()
            }
            Flavor::QuditOdd => {
                u.x.iter()
                    .zip(&u.z)
                    .map(|(&x, &z)| {
                        let mut s = String::new();
                        let power = |s: &mut String, letter: char, e: u32| match e {
                            0 => {}
                            1 => s.push(letter),
                            e => s.push_str(&format!("{letter}^{e}")),
                        };
                        power(&mut s, 'X', x);
                        power(&mut s, 'Z', z);
                        if s.is_empty() {
                            s.push('I');
                        }
                        s
                    })
                    .collect::<Vec<_>>()
                    .join(".")
            }
        }
    }

    /// Label including the scalar in front of the tensor of named operators,
    /// e.g. `-iXY` for `-i σ_x ⊗ σ_y`.
    pub fn label_with_phase(&self, u: &PauliElement) -> String {
        let ys =
            u.x.iter()
                .zip(&u.z)
                .filter(|&(&x, &z)| x == 1 && z == 1)
                .count() as u32;
        let prefix = match self.flavor {
            // X Z = -i σ_y
            Flavor::ComplexQubit => ["", "i", "-", "-i"][((u.phase + 4 - ys % 4) % 4) as usize],
            // X Z = -Y
            Flavor::RealQubit => ["", "-"][((u.phase + ys) % 2) as usize],
            Flavor::QuditOdd => {
                return match u.phase {
                    0 => self.label(u),
                    1 => format!("w{}", self.label(u)),
                    a => format!("w^{a}{}", self.label(u)),
                }
            }
        };
        format!("{prefix}{}", self.label(u))
    }

    /// The group with canonical ids and full labels.
    pub fn build_group(&self) -> Result<FiniteGroup> {
        self.validate()?;
        let elems: Vec<PauliElement> = (0..self.order()).map(|i| self.decode(i)).collect();
        let labels = elems.iter().map(|u| self.label_with_phase(u)).collect();
        FiniteGroup::from_fn(
            self.order(),
            |a, b| self.encode(&self.multiply_unchecked(&elems[a], &elems[b])),
            Some(labels),
        )
    }

    /// Lookup from exact matrix to element, for decoding matrix products.
    pub fn matrix_index(&self) -> HashMap<ExactMatrix, usize> {
        (0..self.order())
            .map(|i| (self.to_matrix(&self.decode(i)), i))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliElement {
    pub phase: u32,
    pub x: Vec<u32>,
    pub z: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Entry;

    fn single(phase: u32, x: u32, z: u32) -> PauliElement {
        PauliElement {
            phase,
            x: vec![x],
            z: vec![z],
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(
            PauliSpec::complex_qubits(1).build_group().unwrap().order(),
            16
        );
        assert_eq!(
            PauliSpec::complex_qubits(2).build_group().unwrap().order(),
            64
        );
        assert_eq!(PauliSpec::real_qubits(1).build_group().unwrap().order(), 8);
        assert_eq!(PauliSpec::real_qubits(2).build_group().unwrap().order(), 32);
        assert_eq!(PauliSpec::qudits(3, 2).build_group().unwrap().order(), 243);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(PauliSpec::new(3, 1, Flavor::ComplexQubit).is_err());
        assert!(PauliSpec::new(2, 1, Flavor::QuditOdd).is_err());
        assert!(PauliSpec::new(9, 1, Flavor::QuditOdd).is_err());
        assert!(PauliSpec::new(2, 0, Flavor::RealQubit).is_err());
        assert!(matches!(
            PauliSpec::new(2, 6, Flavor::ComplexQubit),
            Err(Error::Size { .. })
        ));
        let spec = PauliSpec::complex_qubits(2);
        assert!(spec.multiply(&spec.identity(), &single(0, 1, 0)).is_err());
    }

    #[test]
    fn encode_decode_bijective() {
        let spec = PauliSpec::qudits(3, 2);
        for id in 0..spec.order() {
            assert_eq!(spec.encode(&spec.decode(id)), id);
        }
        assert_eq!(spec.encode(&spec.identity()), 0);
    }

    #[test]
    fn identity_product() {
        let spec = PauliSpec::complex_qubits(1);
        let e = spec.identity();
        assert_eq!(spec.multiply(&e, &e).unwrap(), e);
        assert_eq!(spec.to_matrix(&e), ExactMatrix::identity(2, 4));
    }

    #[test]
    fn zx_is_minus_xz_for_qubits() {
        let spec = PauliSpec::complex_qubits(1);
        let x = single(0, 1, 0);
        let z = single(0, 0, 1);
        let zx = spec.multiply(&z, &x).unwrap();
        let xz = spec.multiply(&x, &z).unwrap();
        assert_eq!(xz, single(0, 1, 1));
        assert_eq!(zx, single(2, 1, 1));
        let mzx = spec.to_matrix(&z).mul(&spec.to_matrix(&x));
        assert_eq!(mzx, spec.to_matrix(&zx));
        let minus = Cyclotomic::root(4, 2);
        assert_eq!(mzx, spec.to_matrix(&xz).scale(&minus));
    }

    #[test]
    fn zx_is_omega_xz_for_qutrits() {
        let spec = PauliSpec::qudits(3, 1);
        let x = single(0, 1, 0);
        let z = single(0, 0, 1);
        let zx = spec.multiply(&z, &x).unwrap();
        assert_eq!(zx, single(1, 1, 1));
        let lhs = spec.to_matrix(&z).mul(&spec.to_matrix(&x));
        let rhs = spec
            .to_matrix(&x)
            .mul(&spec.to_matrix(&z))
            .scale(&Cyclotomic::root(3, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrices_match_displays() {
        // σ_y = [[0, -i], [i, 0]] is i·XZ
        let spec = PauliSpec::complex_qubits(1);
        let sy = spec.to_matrix(&single(1, 1, 1));
        assert_eq!(sy.entry(0, 0), Some(Entry::Zero));
        assert_eq!(sy.entry(0, 1), Some(Entry::Root { k: 3, m: 4 }));
        assert_eq!(sy.entry(1, 0), Some(Entry::Root { k: 1, m: 4 }));
        assert_eq!(spec.label_with_phase(&single(1, 1, 1)), "Y");

        // real Y = ZX = [[0, 1], [-1, 0]]
        let real = PauliSpec::real_qubits(1);
        let y = real.multiply(&single(0, 0, 1), &single(0, 1, 0)).unwrap();
        let m = real.to_matrix(&y);
        assert_eq!(m.entry(0, 1), Some(Entry::Root { k: 0, m: 2 }));
        assert_eq!(m.entry(1, 0), Some(Entry::Root { k: 1, m: 2 }));
        assert_eq!(real.label_with_phase(&y), "Y");

        // clock operator diag(1, ω, ω²), shift has ones below the diagonal
        let q = PauliSpec::qudits(3, 1);
        let clock = q.to_matrix(&single(0, 0, 1));
        for j in 0..3 {
            assert_eq!(clock.entry(j, j), Some(Entry::Root { k: j as u32, m: 3 }));
        }
        let shift = q.to_matrix(&single(0, 1, 0));
        assert_eq!(shift.entry(1, 0), Some(Entry::Root { k: 0, m: 3 }));
        assert_eq!(shift.entry(0, 2), Some(Entry::Root { k: 0, m: 3 }));
    }

    #[test]
    fn labels() {
        let spec = PauliSpec::complex_qubits(2);
        assert_eq!(spec.label(&spec.identity()), "II");
        // i σ_x ⊗ σ_y: phase i · i (from σ_y = i XZ)
        let u = PauliElement {
            phase: 2,
            x: vec![1, 1],
            z: vec![0, 1],
        };
        assert_eq!(spec.label(&u), "XY");
        assert_eq!(spec.label_with_phase(&u), "iXY");
        let real = PauliSpec::real_qubits(2);
        // -X ⊗ Y = -X ⊗ ZX = X ⊗ XZ
        let v = PauliElement {
            phase: 0,
            x: vec![1, 1],
            z: vec![0, 1],
        };
        assert_eq!(real.label(&v), "XY");
        assert_eq!(real.label_with_phase(&v), "-XY");
        let q = PauliSpec::qudits(3, 2);
        let w = PauliElement {
            phase: 2,
            x: vec![2, 0],
            z: vec![1, 0],
        };
        assert_eq!(q.label_with_phase(&w), "w^2X^2Z.I");
    }
}
