//! Admissibility conditions for a modulus `N`, the identification of the
//! commutator subgroup with GF(p), the commutator-induced alternating form
//! and (for p = 2) the squaring-induced quadratic form.
//!
//! Conditions, numbered as in the failure messages:
//!
//! 1. `N` is normal and contains `G'` and all `p`-th powers.
//! 2. `G'` has order `p`.
//! 3. `N` lies in the centre.
//! 4. (p = 2) every square lies in `G'`.
//! 5. (p = 2) `N` has exponent 2.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::{index_of, null_space, rank, subspaces_within, Subspace, VectorSpace};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::pauli::is_prime;

/// Evidence that a condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NotNormal { member: Elem, by: Elem },
    CommutatorOutside { x: Elem, y: Elem, commutator: Elem },
    PowerOutside { x: Elem, power: Elem },
    DerivedOrder { order: usize },
    NotCentral { member: Elem, x: Elem },
    SquareOutsideDerived { x: Elem, square: Elem },
    NotExponentTwo { member: Elem },
}

impl Witness {
    /// Re-evaluates the witness against the group.
    pub fn verify(&self, g: &FiniteGroup, n: &Subgroup, p: u32) -> bool {
        match *self {
            Witness::NotNormal { member, by } => {
                n.contains(member) && !n.contains(g.mul(by, g.mul(member, g.inv(by))))
            }
            Witness::CommutatorOutside { x, y, commutator } => {
                g.comm(x, y) == commutator && !n.contains(commutator)
            }
            Witness::PowerOutside { x, power } => g.pow(x, p as i64) == power && !n.contains(power),
            Witness::DerivedOrder { order } => {
                let d = g.derived_subgroup().order();
                d == order && d != p as usize
            }
            Witness::NotCentral { member, x } => n.contains(member) && !g.commutes(member, x),
            Witness::SquareOutsideDerived { x, square } => {
                g.mul(x, x) == square && !g.derived_subgroup().contains(square)
            }
            Witness::NotExponentTwo { member } => {
                n.contains(member) && !g.mul(member, member).is_identity()
            }
        }
    }

    pub fn describe(&self, g: &FiniteGroup) -> String {
        let l = |x: Elem| g.label(x).to_string();
        match *self {
            Witness::NotNormal { member, by } => {
                format!("conjugating {} by {} leaves N", l(member), l(by))
            }
            Witness::CommutatorOutside { x, y, commutator } => format!(
                "commutator [{}, {}] = {} is not in N",
                l(x),
                l(y),
                l(commutator)
            ),
            Witness::PowerOutside { x, power } => {
                format!("power of {} is {}, not in N", l(x), l(power))
            }
            Witness::DerivedOrder { order } => format!("commutator subgroup has order {order}"),
            Witness::NotCentral { member, x } => {
                format!("{} in N does not commute with {}", l(member), l(x))
            }
            Witness::SquareOutsideDerived { x, square } => format!(
                "square of {} is {}, not in the commutator subgroup",
                l(x),
                l(square)
            ),
            Witness::NotExponentTwo { member } => {
                format!("{} in N does not square to the identity", l(member))
            }
        }
    }
}

/// A failed condition together with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: u8,
    pub witness: Witness,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition {} violated: {:?}",
            self.condition, self.witness
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub p: u32,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    /// `None` when `p != 2`.
    pub cond4: Option<bool>,
    pub cond5: Option<bool>,
    pub violations: Vec<Violation>,
}

impl ConditionReport {
    pub fn holds(&self, condition: u8) -> bool {
        match condition {
            1 => self.cond1,
            2 => self.cond2,
            3 => self.cond3,
            4 => self.cond4 == Some(true),
            5 => self.cond5 == Some(true),
            _ => false,
        }
    }

    /// `Ok` when all listed conditions hold, otherwise the first violation.
    pub fn require(&self, conditions: &[u8]) -> Result<()> {
        for &c in conditions {
            if !self.holds(c) {
                let v = self
                    .violations
                    .iter()
                    .find(|v| v.condition == c)
                    .cloned()
                    .ok_or_else(|| Error::NotApplicable(format!("condition {c} requires p = 2")))?;
                return Err(v.into());
            }
        }
        Ok(())
    }
}

/// Evaluates the five conditions independently.
pub fn check_conditions(g: &FiniteGroup, n: &Subgroup, p: u32) -> ConditionReport {
    let mut violations = Vec::new();
    let derived = g.derived_subgroup();

    let cond1_witness = g
        .normality_witness(n)
        .map(|(member, by)| Witness::NotNormal { member, by })
        .or_else(|| {
            g.elements().find_map(|x| {
                g.elements().find_map(|y| {
                    let c = g.comm(x, y);
                    (!n.contains(c)).then_some(Witness::CommutatorOutside {
                        x,
                        y,
                        commutator: c,
                    })
                })
            })
        })
        .or_else(|| {
            g.elements().find_map(|x| {
                let power = g.pow(x, p as i64);
                (!n.contains(power)).then_some(Witness::PowerOutside { x, power })
            })
        });
    let cond1 = cond1_witness.is_none();
    if let Some(witness) = cond1_witness {
        violations.push(Violation {
            condition: 1,
            witness,
        });
    }

    let cond2 = derived.order() == p as usize;
    if !cond2 {
        violations.push(Violation {
            condition: 2,
            witness: Witness::DerivedOrder {
                order: derived.order(),
            },
        });
    }

    let cond3_witness = n.members().iter().find_map(|&member| {
        g.elements()
            .find(|&x| !g.commutes(member, x))
            .map(|x| Witness::NotCentral { member, x })
    });
    let cond3 = cond3_witness.is_none();
    if let Some(witness) = cond3_witness {
        violations.push(Violation {
            condition: 3,
            witness,
        });
    }

    let (cond4, cond5) = if p == 2 {
        let w4 = g.elements().find_map(|x| {
            let square = g.mul(x, x);
            (!derived.contains(square)).then_some(Witness::SquareOutsideDerived { x, square })
        });
        let w5 = n
            .members()
            .iter()
            .find(|&&a| !g.mul(a, a).is_identity())
            .map(|&member| Witness::NotExponentTwo { member });
        let (c4, c5) = (w4.is_none(), w5.is_none());
        if let Some(witness) = w4 {
            violations.push(Violation {
                condition: 4,
                witness,
            });
        }
        if let Some(witness) = w5 {
            violations.push(Violation {
                condition: 5,
                witness,
            });
        }
        (Some(c4), Some(c5))
    } else {
        (None, None)
    };

    ConditionReport {
        p,
        cond1,
        cond2,
        cond3,
        cond4,
        cond5,
        violations,
    }
}

/// A generator `g` of `G'` and the isomorphism `ψ_g: G' → GF(p)`, `g^m ↦ m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorChoice {
    p: u32,
    g: Elem,
    psi: Vec<Option<u32>>,
}

impl GeneratorChoice {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generator(&self) -> Elem {
        self.g
    }

    /// `ψ_g(x)`, or `None` when `x ∉ G'`.
    pub fn psi(&self, x: Elem) -> Option<u32> {
        self.psi[x.index()]
    }

    pub fn table(&self) -> Vec<(Elem, u32)> {
        self.psi
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|m| (Elem(i as u32), m)))
            .collect()
    }
}

/// Picks the `index`-th non-identity member of `G'` (default: the first).
pub fn choose_generator(g: &FiniteGroup, p: u32, index: Option<usize>) -> Result<GeneratorChoice> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let derived = g.derived_subgroup();
    if derived.order() != p as usize {
        return Err(Violation {
            condition: 2,
            witness: Witness::DerivedOrder {
                order: derived.order(),
            },
        }
        .into());
    }
    let candidates: Vec<Elem> = derived.members()[1..].to_vec();
    let i = index.unwrap_or(0);
    let gen = *candidates.get(i).ok_or_else(|| Error::Unknown {
        kind: "generator index",
        name: i.to_string(),
    })?;
    let mut psi = vec![None; g.order()];
    let mut x = Elem::IDENTITY;
    for m in 0..p {
        psi[x.index()] = Some(m);
        x = g.mul(x, gen);
    }
    debug_assert!(x.is_identity());
    Ok(GeneratorChoice { p, g: gen, psi })
}

/// An alternating bilinear form on `GF(p)^d` given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlternatingForm {
    p: u32,
    gram: Vec<Vec<u32>>,
}

impl AlternatingForm {
    pub fn new(p: u32, gram: Vec<Vec<u32>>) -> Result<Self> {
        let d = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != d {
                return Err(Error::Dimension {
                    got: row.len(),
                    expected: d,
                });
            }
            if row[i] != 0 {
                return Err(Error::NotApplicable(format!(
                    "diagonal entry {i} is non-zero"
                )));
            }
            for j in 0..d {
                if row[j] >= p || !(row[j] + gram[j][i]).is_multiple_of(p) {
                    return Err(Error::NotApplicable(format!(
                        "entries ({i},{j}) and ({j},{i}) are not opposite"
                    )));
                }
            }
        }
        Ok(AlternatingForm { p, gram })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<u32>] {
        &self.gram
    }

    pub fn eval(&self, v: &[u32], w: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, &wj) in w.iter().enumerate() {
                acc += vi as u64 * self.gram[i][j] as u64 * wj as u64;
            }
        }
        (acc % p) as u32
    }

    pub fn scaled(&self, k: u32) -> AlternatingForm {
        AlternatingForm {
            p: self.p,
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|&c| c * k % self.p).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rank(&self.gram, self.p)
    }

    pub fn radical(&self) -> Subspace {
        Subspace::span(
            self.p,
            self.dim(),
            &null_space(&self.gram, self.dim(), self.p),
        )
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank() < self.dim()
    }

    /// `S^⊥ = {w | [s, w] = 0 for all s ∈ S}`.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        let d = self.dim();
        let rows: Vec<Vec<u32>> = s
            .basis()
            .iter()
            .map(|v| {
                (0..d)
                    .map(|j| {
                        v.iter()
                            .enumerate()
                            .map(|(i, &c)| c * self.gram[i][j])
                            .sum::<u32>()
                            % self.p
                    })
                    .collect()
            })
            .collect();
        Subspace::span(self.p, d, &null_space(&rows, d, self.p))
    }

    pub fn is_totally_isotropic(&self, s: &Subspace) -> bool {
        let b = s.basis();
        b.iter()
            .enumerate()
            .all(|(i, u)| b[i + 1..].iter().all(|v| self.eval(u, v) == 0))
    }
}

/// The form `[xN, yN]_g = ψ_g([x, y])` on `V = G/N`.
///
/// Conditions 1-3 must hold for `N`; the Gram matrix is checked against the
/// commutator of every pair of group elements.
pub fn bilinear_form(space: &VectorSpace<'_>, gc: &GeneratorChoice) -> Result<AlternatingForm> {
    let g = space.group();
    let p = space.p();
    if gc.p() != p {
        return Err(Error::NotApplicable(format!(
            "generator chosen for p = {}, space is over GF({p})",
            gc.p()
        )));
    }
    check_conditions(g, space.modulus(), p).require(&[1, 2, 3])?;
    let reps = space.basis_reps();
    let gram: Vec<Vec<u32>> = reps
        .iter()
        .map(|&x| {
            reps.iter()
                .map(|&y| gc.psi(g.comm(x, y)).expect("commutator lies in G'"))
                .collect()
        })
        .collect();
    let form = AlternatingForm::new(p, gram)?;
    let coords: Vec<Vec<u32>> = g
        .elements()
        .map(|x| space.vector_of(x).coords().to_vec())
        .collect();
    for x in g.elements() {
        for y in g.elements() {
            let direct = gc.psi(g.comm(x, y)).expect("commutator lies in G'");
            if direct != form.eval(&coords[x.index()], &coords[y.index()]) {
                return Err(Error::NotWellDefined(format!(
                    "commutator form at ({}, {})",
                    g.label(x),
                    g.label(y)
                )));
            }
        }
    }
    Ok(form)
}

/// Returns `(x and y commute, [xN, yN]_g = 0)`; the two always agree under
/// conditions 1-3.
pub fn commute_iff_orthogonal(
    space: &VectorSpace<'_>,
    form: &AlternatingForm,
    x: Elem,
    y: Elem,
) -> (bool, bool) {
    let g = space.group();
    let orth = form.eval(space.vector_of(x).coords(), space.vector_of(y).coords()) == 0;
    (g.commutes(x, y), orth)
}

/// A quadratic form on `GF(2)^d` stored as its value table over all vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticForm {
    dim: usize,
    values: Vec<u8>,
}

impl QuadraticForm {
    /// Accepts a value table when `Q(o) = 0` and the polar map is bilinear.
    pub fn from_values(dim: usize, values: Vec<u8>) -> Result<Self> {
        if values.len() != 1usize << dim {
            return Err(Error::Dimension {
                got: values.len(),
                expected: 1 << dim,
            });
        }
        if values[0] != 0 || values.iter().any(|&v| v > 1) {
            return Err(Error::NotApplicable(
                "Q(o) must be 0 and values in GF(2)".into(),
            ));
        }
        let q = QuadraticForm { dim, values };
        let polar = q.polar_form();
        for a in 0..q.values.len() {
            for b in 0..q.values.len() {
                let (va, vb) = (
                    crate::gfp::coords_of(a, 2, dim),
                    crate::gfp::coords_of(b, 2, dim),
                );
                if q.polar_value(a, b) != polar.eval(&va, &vb) {
                    return Err(Error::NotApplicable("polar map is not bilinear".into()));
                }
            }
        }
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn value_index(&self, i: usize) -> u32 {
        self.values[i] as u32
    }

    pub fn value(&self, v: &[u32]) -> u32 {
        self.values[index_of(v, 2)] as u32
    }

    /// `Q(v+w) + Q(v) + Q(w)` on vector indices.
    pub fn polar_value(&self, a: usize, b: usize) -> u32 {
        (self.values[a ^ b] ^ self.values[a] ^ self.values[b]) as u32
    }

    pub fn polar_form(&self) -> AlternatingForm {
        let d = self.dim;
        let unit = |i: usize| 1usize << (d - 1 - i);
        let gram = (0..d)
            .map(|i| (0..d).map(|j| self.polar_value(unit(i), unit(j))).collect())
            .collect();
        AlternatingForm { p: 2, gram }
    }

    pub fn is_singular(&self, s: &Subspace) -> bool {
        s.vectors().iter().all(|v| self.value(v) == 0)
    }

    /// Vectors of `s` on which `Q` vanishes.
    pub fn zeros_within(&self, s: &Subspace) -> Vec<Vec<u32>> {
        s.vectors()
            .into_iter()
            .filter(|v| self.value(v) == 0)
            .collect()
    }
}

/// `Q(xN) = ψ_g(x²)` on `V = G/N` for p = 2; needs conditions 1-5.
pub fn quadratic_form(space: &VectorSpace<'_>) -> Result<QuadraticForm> {
    if space.p() != 2 {
        return Err(Error::NotApplicable(
            "quadratic forms are defined for p = 2 only".into(),
        ));
    }
    let g = space.group();
    check_conditions(g, space.modulus(), 2).require(&[1, 2, 3, 4, 5])?;
    let gc = choose_generator(g, 2, None)?;
    let values: Vec<u8> = (0..space.len())
        .map(|i| {
            let x = space.rep_of_index(i);
            gc.psi(g.mul(x, x)).expect("squares lie in G'") as u8
        })
        .collect();
    for x in g.elements() {
        let q = gc.psi(g.mul(x, x)).expect("squares lie in G'") as u8;
        if values[space.vector_index(x)] != q {
            return Err(Error::NotWellDefined(format!(
                "square of {} disagrees with its coset representative",
                g.label(x)
            )));
        }
    }
    QuadraticForm::from_values(space.dim(), values)
}

pub fn polar_form(q: &QuadraticForm) -> AlternatingForm {
    q.polar_form()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// `N₀ ≤ N ≤ G`
    VectorSpace,
    /// `N₀ ≤ N ≤ Z(G)`
    Bilinear,
    /// `N₀ ≤ N ≤ K`
    Quadratic,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vector_space" | "vector-space" => Ok(Level::VectorSpace),
            "bilinear" => Ok(Level::Bilinear),
            "quadratic" => Ok(Level::Quadratic),
            other => Err(Error::Unknown {
                kind: "level",
                name: other.to_string(),
            }),
        }
    }
}

/// Every modulus admissible at the given level, ordered by `dim(N/N₀)` and
/// then canonically.
pub fn enumerate_admissible(g: &FiniteGroup, p: u32, level: Level) -> Result<Vec<Subgroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let required: &[u8] = match level {
        Level::VectorSpace => &[1],
        Level::Bilinear => &[1, 2, 3],
        Level::Quadratic => &[1, 2, 3, 4, 5],
    };
    let n0 = g.n0_subgroup(p);
    let top = match level {
        Level::VectorSpace => g.whole(),
        Level::Bilinear => {
            check_conditions(g, &n0, p).require(&[2])?;
            g.center()
        }
        Level::Quadratic => {
            if p != 2 {
                return Err(Error::NotApplicable("quadratic level needs p = 2".into()));
            }
            check_conditions(g, &n0, p).require(&[2, 4])?;
            g.torsion_center()
        }
    };
    if !n0.is_subgroup_of(&top) {
        return Ok(Vec::new());
    }
    let v0 = VectorSpace::new(g.factor_group(&n0)?, p)?;
    let span = v0.subspace_of_subgroup(&top)?;
    let mut out = Vec::new();
    for s in subspaces_within(&span) {
        let n = v0.subgroup_of_subspace(&s);
        check_conditions(g, &n, p).require(required)?;
        out.push(n);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn dihedral8() -> FiniteGroup {
        // r^a s^b encoded as a + 4b
        FiniteGroup::from_fn(
            8,
            |x, y| {
                let (a, b) = (x % 4, x / 4);
                let (c, d) = (y % 4, y / 4);
                let c = if b == 1 { (4 - c) % 4 } else { c };
                (a + c) % 4 + 4 * ((b + d) % 2)
            },
            None,
        )
        .unwrap()
    }

    #[test]
    fn dihedral_conditions() {
        let g = dihedral8();
        let z = g.center();
        assert_eq!(z.order(), 2);
        let r = check_conditions(&g, &z, 2);
        assert!(r.cond1 && r.cond2 && r.cond3);
        assert_eq!(r.cond4, Some(true));
        assert_eq!(r.cond5, Some(true));
        let r = check_conditions(&g, &g.trivial(), 2);
        assert!(!r.cond1);
        for v in &r.violations {
            assert!(v.witness.verify(&g, &g.trivial(), 2), "{v}");
        }
        let r3 = check_conditions(&g, &z, 3);
        assert_eq!(r3.cond4, None);
        assert!(!r3.cond2);
    }

    #[test]
    fn witnesses_recheck() {
        let g = dihedral8();
        // a non-central subgroup of order 2 generated by a reflection
        let s = g.generated_subgroup(&[Elem(4)]).unwrap();
        let r = check_conditions(&g, &s, 2);
        assert!(!r.cond1 && !r.cond3);
        for v in &r.violations {
            assert!(v.witness.verify(&g, &s, 2), "{v}");
        }
        assert!(matches!(
            r.require(&[1]),
            Err(Error::Condition(Violation { condition: 1, .. }))
        ));
    }

    #[test]
    fn psi_of_identity_is_zero() {
        let g = dihedral8();
        let gc = choose_generator(&g, 2, None).unwrap();
        assert_eq!(gc.psi(Elem::IDENTITY), Some(0));
        assert_eq!(gc.psi(gc.generator()), Some(1));
        assert!(choose_generator(&g, 2, Some(1)).is_err());
        assert!(matches!(
            choose_generator(&g, 3, None),
            Err(Error::Condition(Violation { condition: 2, .. }))
        ));
    }

    #[test]
    fn form_validation() {
        assert!(AlternatingForm::new(2, vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(AlternatingForm::new(3, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(AlternatingForm::new(3, vec![vec![1, 1], vec![2, 0]]).is_err());
        let f = AlternatingForm::new(3, vec![vec![0, 1], vec![2, 0]]).unwrap();
        assert!(!f.is_degenerate());
        assert_eq!(f.scaled(2).gram(), &[vec![0, 2], vec![1, 0]]);
    }

    #[test]
    fn quadratic_table_validation() {
        // x1 x2 on GF(2)^2
        assert!(QuadraticForm::from_values(2, vec![0, 0, 0, 1]).is_ok());
        assert!(QuadraticForm::from_values(2, vec![1, 0, 0, 1]).is_err());
        assert!(QuadraticForm::from_values(2, vec![0, 0]).is_err());
        // x1 + x2 + x1 x2 is still quadratic with polar form x1 y2 + x2 y1
        let q = QuadraticForm::from_values(2, vec![0, 1, 1, 1]).unwrap();
        assert_eq!(q.polar_form().gram(), &[vec![0, 1], vec![1, 0]]);
        // cubic-looking tables over GF(2)^3 fail bilinearity
        assert!(QuadraticForm::from_values(3, vec![0, 0, 0, 0, 0, 0, 0, 1]).is_err());
    }
}
