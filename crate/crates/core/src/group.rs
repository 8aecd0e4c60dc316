//! Finite groups given by dense Cayley tables, together with the subgroup
//! machinery the factor-space construction is phrased in: derived subgroup,
//! centre, sets of `m`-th powers, central involutions and factor groups.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AxiomViolation, Error, Result};

/// Largest group order accepted by the dense table representation.
pub const MAX_ORDER: usize = 4096;

/// Index of an element in the canonical element table of its group.
///
/// Id 0 is always the identity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite group with explicit multiplication and inversion tables.
///
/// Immutable after construction. Every constructor verifies the group axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from Cayley table rows, `table[a][b] = a*b`.
    pub fn from_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        check_size(order)?;
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(AxiomViolation::RowLength {
                    row,
                    len: entries.len(),
                    order,
                }
                .into());
            }
        }
        Self::from_fn(order, |a, b| table[a][b], labels)
    }

    /// Builds a group of the given order from a multiplication function on ids.
    pub fn from_fn(
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        check_size(order)?;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let value = mul(a, b);
                if value >= order {
                    return Err(AxiomViolation::EntryRange {
                        row: a,
                        col: b,
                        value,
                    }
                    .into());
                }
                table.push(value as u32);
            }
        }
        let labels = match labels {
            Some(l) if l.len() != order => {
                return Err(AxiomViolation::Labels {
                    given: l.len(),
                    order,
                }
                .into())
            }
            Some(l) => l,
            None => (0..order).map(|i| format!("g{i}")).collect(),
        };
        let mut group = FiniteGroup {
            order,
            mul: table,
            inv: vec![0; order],
            labels,
        };
        group.validate()?;
        Ok(group)
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.mul[x] as usize != x || self.mul[x * n] as usize != x {
                return Err(AxiomViolation::Identity { x }.into());
            }
        }
        for x in 0..n {
            let row = &self.mul[x * n..(x + 1) * n];
            let Some(y) = row.iter().position(|&v| v == 0) else {
                return Err(AxiomViolation::Inverse { x }.into());
            };
            if self.mul[y * n + x] != 0 {
                return Err(AxiomViolation::Inverse { x }.into());
            }
            self.inv[x] = y as u32;
        }
        self.check_associative()
    }

    /// Light's associativity test: `(x*s)*y = x*(s*y)` for every `s` in a
    /// generating set is equivalent to associativity of the whole table.
    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut count = 1;
        let mut gens: Vec<usize> = Vec::new();
        while count < n {
            let fresh = reached.iter().position(|r| !r).unwrap();
            gens.push(fresh);
            // right-multiplication closure from the identity
            let mut queue: VecDeque<usize> = (0..n).filter(|&i| reached[i]).collect();
            while let Some(a) = queue.pop_front() {
                for &s in &gens {
                    let b = self.mul[a * n + s] as usize;
                    if !reached[b] {
                        reached[b] = true;
                        count += 1;
                        queue.push_back(b);
                    }
                }
            }
        }
        for &s in &gens {
            for x in 0..n {
                let xs = self.mul[x * n + s] as usize;
                for y in 0..n {
                    let sy = self.mul[s * n + y] as usize;
                    if self.mul[xs * n + y] != self.mul[x * n + sy] {
                        return Err(AxiomViolation::Associativity { x, y: s, z: y }.into());
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    /// Validates a raw id.
    pub fn elem(&self, id: usize) -> Result<Elem> {
        if id < self.order {
            Ok(Elem(id as u32))
        } else {
            Err(Error::InvalidElement {
                id,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order as u32).map(Elem)
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.inv[a.index()])
    }

    /// `a^m`; negative exponents go through the inverse.
    pub fn pow(&self, a: Elem, m: i64) -> Elem {
        let base = if m < 0 { self.inv(a) } else { a };
        let mut e = m.unsigned_abs();
        let mut acc = Elem::IDENTITY;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while !x.is_identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a,b] = a b a^-1 b^-1`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.elem(a.index())?;
        self.elem(b.index())?;
        Ok(self.comm(a, b))
    }

    #[inline]
    pub(crate) fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.mul(b, self.mul(self.inv(a), self.inv(b))))
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.commutes(a, b)))
    }

    /// Cayley table rows in id order.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.mul
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// Smallest subgroup containing `seed`.
    pub fn generated_subgroup(&self, seed: &[Elem]) -> Result<Subgroup> {
        for s in seed {
            self.elem(s.index())?;
        }
        let mut gens: Vec<Elem> = seed.iter().copied().filter(|s| !s.is_identity()).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = VecDeque::from([Elem::IDENTITY]);
        while let Some(a) = queue.pop_front() {
            for &s in &gens {
                let b = self.mul(a, s);
                if !mask[b.index()] {
                    mask[b.index()] = true;
                    queue.push_back(b);
                }
            }
        }
        Ok(Subgroup::from_mask(self.order, mask))
    }

    /// Checks that `members` is a subgroup and wraps it.
    pub fn subgroup(&self, members: &[Elem]) -> Result<Subgroup> {
        let mut mask = vec![false; self.order];
        for m in members {
            self.elem(m.index())?;
            mask[m.index()] = true;
        }
        if !mask[0] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let set: Vec<Elem> = self.elements().filter(|x| mask[x.index()]).collect();
        for &a in &set {
            if !mask[self.inv(a).index()] {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &set {
                if !mask[self.mul(a, b).index()] {
                    return Err(Error::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(Subgroup::from_mask(self.order, mask))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_mask(self.order, vec![true; self.order])
    }

    pub fn trivial(&self) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        Subgroup::from_mask(self.order, mask)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = vec![false; self.order];
        for a in self.elements() {
            for b in self.elements() {
                comms[self.comm(a, b).index()] = true;
            }
        }
        let seed: Vec<Elem> = self.elements().filter(|x| comms[x.index()]).collect();
        self.generated_subgroup(&seed).expect("ids are in range")
    }

    pub fn center(&self) -> Subgroup {
        let mask = self
            .elements()
            .map(|x| self.elements().all(|y| self.commutes(x, y)))
            .collect();
        Subgroup::from_mask(self.order, mask)
    }

    /// `{x^m | x in M}`, sorted.
    pub fn power_set(&self, set: impl IntoIterator<Item = Elem>, m: i64) -> Vec<Elem> {
        let mut out: Vec<Elem> = set.into_iter().map(|x| self.pow(x, m)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `<G' ∪ G^(p)>`, the smallest modulus whose quotient is a GF(p) space.
    pub fn n0_subgroup(&self, p: u32) -> Subgroup {
        let mut seed = self.derived_subgroup().members().to_vec();
        seed.extend(self.power_set(self.elements(), p as i64));
        let n0 = self.generated_subgroup(&seed).expect("ids are in range");
        debug_assert!(self.is_normal(&n0));
        n0
    }

    /// First `(member, conjugator)` pair with `x a x^-1` outside `s`.
    pub fn normality_witness(&self, s: &Subgroup) -> Option<(Elem, Elem)> {
        for x in self.elements() {
            let xi = self.inv(x);
            for &a in s.members() {
                if !s.contains(self.mul(x, self.mul(a, xi))) {
                    return Some((a, x));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.normality_witness(s).is_none()
    }

    /// `K = {x ∈ Z(G) | x² = e}`.
    pub fn torsion_center(&self) -> Subgroup {
        let z = self.center();
        let mask = self
            .elements()
            .map(|x| z.contains(x) && self.mul(x, x).is_identity())
            .collect();
        Subgroup::from_mask(self.order, mask)
    }

    /// True iff `x^m = e` for all members.
    pub fn exponent_divides(&self, s: &Subgroup, m: u32) -> bool {
        s.members()
            .iter()
            .all(|&x| self.pow(x, m as i64).is_identity())
    }

    /// Subgroup generated by the union of two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seed = a.members().to_vec();
        seed.extend_from_slice(b.members());
        self.generated_subgroup(&seed).expect("ids are in range")
    }

    pub fn is_commutative_subgroup(&self, s: &Subgroup) -> bool {
        s.members()
            .iter()
            .all(|&a| s.members().iter().all(|&b| self.commutes(a, b)))
    }

    pub fn factor_group(&self, modulus: &Subgroup) -> Result<FactorGroup<'_>> {
        FactorGroup::new(self, modulus)
    }
}

fn check_size(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        Err(Error::Size {
            order,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

/// A subgroup stored as a sorted member list plus a membership mask.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn from_mask(parent_order: usize, mask: Vec<bool>) -> Self {
        let members: Vec<Elem> = mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| Elem(i as u32))
            .collect();
        assert!(mask[0], "subgroup without identity");
        assert_eq!(parent_order % members.len(), 0, "Lagrange violated");
        Subgroup { members, mask }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x.index()).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn ids(&self) -> Vec<usize> {
        self.members.iter().map(|e| e.index()).collect()
    }
}

/// Cosets of a normal subgroup with the induced multiplication.
#[derive(Clone, Debug)]
pub struct FactorGroup<'g> {
    group: &'g FiniteGroup,
    modulus: Subgroup,
    cosets: Vec<Vec<Elem>>,
    coset_of: Vec<u32>,
    table: Vec<u32>,
}

impl<'g> FactorGroup<'g> {
    fn new(group: &'g FiniteGroup, modulus: &Subgroup) -> Result<Self> {
        if let Some((member, by)) = group.normality_witness(modulus) {
            return Err(Error::NotNormal { member, by });
        }
        let n = group.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut cosets = Vec::with_capacity(n / modulus.order());
        for x in group.elements() {
            if coset_of[x.index()] != u32::MAX {
                continue;
            }
            let idx = cosets.len() as u32;
            let mut coset: Vec<Elem> = modulus.members().iter().map(|&a| group.mul(x, a)).collect();
            coset.sort_unstable();
            for c in &coset {
                coset_of[c.index()] = idx;
            }
            cosets.push(coset);
        }
        let m = cosets.len();
        let mut table = vec![0u32; m * m];
        for u in 0..m {
            for v in 0..m {
                let prod = group.mul(cosets[u][0], cosets[v][0]);
                table[u * m + v] = coset_of[prod.index()];
            }
        }
        for x in group.elements() {
            for y in group.elements() {
                let cx = coset_of[x.index()] as usize;
                let cy = coset_of[y.index()] as usize;
                if coset_of[group.mul(x, y).index()] != table[cx * m + cy] {
                    return Err(Error::NotWellDefined(format!(
                        "coset product of {x} and {y} depends on representatives"
                    )));
                }
            }
        }
        Ok(FactorGroup {
            group,
            modulus: modulus.clone(),
            cosets,
            coset_of,
            table,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn modulus(&self) -> &Subgroup {
        &self.modulus
    }

    /// Number of cosets.
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn coset(&self, c: usize) -> &[Elem] {
        &self.cosets[c]
    }

    pub fn cosets(&self) -> &[Vec<Elem>] {
        &self.cosets
    }

    /// Representative: the smallest id in the coset.
    pub fn rep(&self, c: usize) -> Elem {
        self.cosets[c][0]
    }

    pub fn coset_of(&self, x: Elem) -> usize {
        self.coset_of[x.index()] as usize
    }

    #[inline]
    pub fn mul(&self, u: usize, v: usize) -> usize {
        self.table[u * self.cosets.len() + v] as usize
    }

    pub fn pow(&self, u: usize, m: u64) -> usize {
        let mut acc = 0;
        for _ in 0..m {
            acc = self.mul(acc, u);
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        let m = self.len();
        (0..m).all(|u| (0..m).all(|v| self.mul(u, v) == self.mul(v, u)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(n, |a, b| (a + b) % n, None).unwrap()
    }

    /// S3 as permutations of {0,1,2}, id 0 the identity.
    fn s3() -> FiniteGroup {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        FiniteGroup::from_fn(
            6,
            |a, b| {
                let (pa, pb) = (perms[a], perms[b]);
                idx([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
            },
            None,
        )
        .unwrap()
    }

    #[test]
    fn commutative_groups_have_trivial_commutators() {
        let g = cyclic(6);
        for a in g.elements() {
            for b in g.elements() {
                assert!(g.commutator(a, b).unwrap().is_identity());
            }
        }
        assert_eq!(g.derived_subgroup().order(), 1);
        assert_eq!(g.center().order(), 6);
    }

    #[test]
    fn commutator_with_identity() {
        let g = s3();
        for b in g.elements() {
            assert_eq!(g.commutator(Elem::IDENTITY, b).unwrap(), Elem::IDENTITY);
        }
    }

    #[test]
    fn commutator_rejects_bad_ids() {
        let g = cyclic(4);
        assert_eq!(
            g.commutator(Elem(4), Elem(0)),
            Err(Error::InvalidElement { id: 4, order: 4 })
        );
    }

    #[test]
    fn empty_seed_generates_trivial_group() {
        let g = s3();
        assert_eq!(g.generated_subgroup(&[]).unwrap(), g.trivial());
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        let d = g.derived_subgroup();
        assert_eq!(d.order(), 3);
        assert_eq!(g.center().order(), 1);
        assert!(g.is_normal(&d));
        let transposition = g.generated_subgroup(&[Elem(1)]).unwrap();
        assert_eq!(transposition.order(), 2);
        assert!(!g.is_normal(&transposition));
        assert!(matches!(
            g.factor_group(&transposition),
            Err(Error::NotNormal { .. })
        ));
        // N0 for p = 2 contains G' and all squares
        assert_eq!(g.n0_subgroup(2).order(), 3);
        assert_eq!(g.n0_subgroup(3).order(), 6);
    }

    #[test]
    fn power_set_zero_is_identity() {
        let g = s3();
        assert_eq!(g.power_set(g.elements(), 0), vec![Elem::IDENTITY]);
    }

    #[test]
    fn odd_order_has_trivial_k() {
        let g = cyclic(9);
        assert_eq!(g.torsion_center().order(), 1);
        assert_eq!(cyclic(8).torsion_center().order(), 2);
    }

    #[test]
    fn elementary_abelian_n0_trivial() {
        // Z3 x Z3 has exponent 3
        let g = FiniteGroup::from_fn(
            9,
            |a, b| (a / 3 + b / 3) % 3 * 3 + (a % 3 + b % 3) % 3,
            None,
        )
        .unwrap();
        assert_eq!(g.n0_subgroup(3).order(), 1);
    }

    #[test]
    fn factor_group_counts() {
        let g = cyclic(12);
        let n = g.generated_subgroup(&[Elem(4)]).unwrap();
        let f = g.factor_group(&n).unwrap();
        assert_eq!(f.len() * n.order(), 12);
        assert_eq!(f.rep(1), Elem(1));
        let whole = g.factor_group(&g.whole()).unwrap();
        assert_eq!(whole.len(), 1);
    }

    #[test]
    fn exponent_of_trivial_subgroup() {
        let g = s3();
        for m in 1..5 {
            assert!(g.exponent_divides(&g.trivial(), m));
        }
    }

    #[test]
    fn rejects_broken_tables() {
        let not_assoc = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]];
        let err = FiniteGroup::from_table(&not_assoc, None).unwrap_err();
        assert!(matches!(err, Error::Axiom(_)), "{err}");

        // a loop of order 5 that is not a group (inverses fine, not associative)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(&loop5, None).unwrap_err();
        match err {
            Error::Axiom(AxiomViolation::Associativity { x, y, z }) => {
                let t = &loop5;
                assert_ne!(t[t[x][y]][z], t[x][t[y][z]]);
            }
            other => panic!("unexpected {other}"),
        }

        let no_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            FiniteGroup::from_table(&no_identity, None),
            Err(Error::Axiom(AxiomViolation::Identity { .. }))
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[], None),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn subgroup_validation() {
        let g = cyclic(6);
        assert!(g.subgroup(&[Elem(0), Elem(3)]).is_ok());
        assert!(g.subgroup(&[Elem(0), Elem(1)]).is_err());
        assert!(g.subgroup(&[Elem(3)]).is_err());
    }
}
