//! Projective and polar geometry over GF(p): points and flats, symplectic
//! polar spaces of non-degenerate alternating forms (and of `V/V^⊥` for
//! degenerate ones), non-singular quadrics over GF(2) with their
//! classification and nucleus, and the derivation of a generalized
//! quadrangle from a rank-2 symplectic space.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{AlternatingForm, QuadraticForm};
use crate::gfp::{
    coords_of, index_of, inv_mod, rref, subspaces_of_dim, GfVector, Subspace, VectorSpace,
};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::incidence::{IncidenceStructure, PointInfo, Shade};

/// Scales `v` so its first non-zero coordinate is 1.
pub fn normalize(v: &[u32], p: u32) -> Vec<u32> {
    match v.iter().find(|&&c| c != 0) {
        None => v.to_vec(),
        Some(&lead) => {
            let inv = inv_mod(lead, p);
            v.iter().map(|&c| c * inv % p).collect()
        }
    }
}

/// A one-dimensional subspace, represented by its normalized spanning vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjectivePoint {
    rep: GfVector,
}

impl ProjectivePoint {
    pub fn new(v: &GfVector) -> Option<Self> {
        (!v.is_zero()).then(|| ProjectivePoint {
            rep: GfVector::new(v.p(), normalize(v.coords(), v.p())),
        })
    }

    pub fn from_coords(p: u32, coords: &[u32]) -> Option<Self> {
        Self::new(&GfVector::new(p, coords.to_vec()))
    }

    pub fn rep(&self) -> &GfVector {
        &self.rep
    }

    pub fn coords(&self) -> &[u32] {
        self.rep.coords()
    }

    /// The `p - 1` non-zero vectors on the point.
    pub fn multiples(&self) -> Vec<GfVector> {
        (1..self.rep.p()).map(|m| self.rep.scale(m)).collect()
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::span(self.rep.p(), self.rep.dim(), &[self.rep.coords().to_vec()])
    }
}

/// All points of `P(GF(p)^d)` in lexicographic order of normalized vectors.
pub fn projective_points(p: u32, d: usize) -> Vec<ProjectivePoint> {
    (1..(p as usize).pow(d as u32))
        .map(|i| coords_of(i, p, d))
        .filter(|c| normalize(c, p) == *c)
        .map(|c| ProjectivePoint {
            rep: GfVector::new(p, c),
        })
        .collect()
}

/// `P(S)`; the zero subspace is the empty flat of projective dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flat {
    subspace: Subspace,
}

impl Flat {
    pub fn new(subspace: Subspace) -> Self {
        Flat { subspace }
    }

    pub fn empty(p: u32, ambient: usize) -> Self {
        Flat::new(Subspace::zero(p, ambient))
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn proj_dim(&self) -> i64 {
        self.subspace.dim() as i64 - 1
    }

    pub fn contains(&self, pt: &ProjectivePoint) -> bool {
        self.subspace.contains(pt.coords())
    }

    pub fn points(&self) -> Vec<ProjectivePoint> {
        let p = self.subspace.p();
        let mut pts: Vec<ProjectivePoint> = self
            .subspace
            .vectors()
            .iter()
            .filter_map(|v| ProjectivePoint::from_coords(p, v))
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }
}

impl From<&ProjectivePoint> for Flat {
    fn from(pt: &ProjectivePoint) -> Self {
        Flat::new(pt.subspace())
    }
}

/// Symplectic polar space `W_{2r-1}(p)` of a non-degenerate alternating form:
/// all points together with the totally isotropic flats.
#[derive(Clone, Debug)]
pub struct PolarSpace {
    form: AlternatingForm,
    points: Vec<ProjectivePoint>,
    point_index: HashMap<ProjectivePoint, usize>,
    /// `flats[k]` holds the totally isotropic `k`-flats, `k = 0..rank`.
    flats: Vec<Vec<Flat>>,
}

impl PolarSpace {
    pub fn new(form: AlternatingForm) -> Result<Self> {
        let radical = form.radical();
        if radical.dim() > 0 {
            return Err(Error::Degenerate {
                radical_dim: radical.dim(),
            });
        }
        let (p, d) = (form.p(), form.dim());
        let rank = d / 2;
        let points = projective_points(p, d);
        let point_index = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, pt)| (pt, i))
            .collect();
        let mut flats = vec![points.iter().map(Flat::from).collect::<Vec<_>>()];
        for k in 2..=rank {
            flats.push(
                subspaces_of_dim(p, d, k)
                    .into_iter()
                    .filter(|s| form.is_totally_isotropic(s))
                    .map(Flat::new)
                    .collect(),
            );
        }
        debug_assert!(rank == 0 || !flats[rank - 1].is_empty());
        debug_assert!(subspaces_of_dim(p, d, rank + 1)
            .iter()
            .all(|s| !form.is_totally_isotropic(s)));
        Ok(PolarSpace {
            form,
            points,
            point_index,
            flats,
        })
    }

    pub fn p(&self) -> u32 {
        self.form.p()
    }

    /// Vector space dimension `2r`.
    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn rank(&self) -> usize {
        self.form.dim() / 2
    }

    pub fn form(&self) -> &AlternatingForm {
        &self.form
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn point_index(&self, pt: &ProjectivePoint) -> Option<usize> {
        self.point_index.get(pt).copied()
    }

    /// Totally isotropic flats of projective dimension `k`.
    pub fn isotropic_flats(&self, k: usize) -> &[Flat] {
        self.flats.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn lines(&self) -> &[Flat] {
        self.isotropic_flats(1)
    }

    pub fn maximal_flats(&self) -> &[Flat] {
        self.rank()
            .checked_sub(1)
            .map_or(&[], |k| self.isotropic_flats(k))
    }

    /// `P(S^⊥)`, of projective dimension `n - k - 1`.
    pub fn perp(&self, flat: &Flat) -> Flat {
        Flat::new(self.form.perp(flat.subspace()))
    }

    pub fn conjugate(&self, a: &ProjectivePoint, b: &ProjectivePoint) -> bool {
        self.form.eval(a.coords(), b.coords()) == 0
    }

    /// Point indices on each totally isotropic line.
    pub fn line_members(&self) -> Vec<Vec<usize>> {
        self.lines()
            .iter()
            .map(|l| l.points().iter().map(|pt| self.point_index[pt]).collect())
            .collect()
    }

    /// Points and totally isotropic lines as an incidence structure.
    pub fn incidence(
        &self,
        name: &str,
        labels: &[String],
        shades: Option<&[Shade]>,
    ) -> IncidenceStructure {
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, _)| PointInfo {
                label: labels.get(i).cloned().unwrap_or_else(|| i.to_string()),
                shade: shades.and_then(|s| s.get(i).copied()),
            })
            .collect();
        IncidenceStructure::new(name, points, self.line_members())
            .expect("lines of a polar space are valid")
    }
}

/// `V → V/R` for a subspace `R`, using a complement spanned by unit vectors
/// chosen greedily.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    p: u32,
    dim: usize,
    kernel: Subspace,
    complement: Vec<Vec<u32>>,
    /// Rows of the inverse of the basis matrix `[kernel; complement]`.
    inverse: Vec<Vec<u32>>,
}

impl QuotientMap {
    pub fn new(kernel: Subspace) -> Self {
        let (p, dim) = (kernel.p(), kernel.ambient_dim());
        let mut rows: Vec<Vec<u32>> = kernel.basis().to_vec();
        let mut complement = Vec::new();
        for i in 0..dim {
            let e = GfVector::unit(p, dim, i).coords().to_vec();
            let mut trial = rows.clone();
            trial.push(e.clone());
            if crate::gfp::rank(&trial, p) == trial.len() {
                rows = trial;
                complement.push(e);
            }
        }
        // invert the basis matrix through [B | I]
        let aug: Vec<Vec<u32>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..dim).map(|j| u32::from(i == j)));
                row
            })
            .collect();
        let reduced = rref(&aug, p);
        let inverse = reduced.iter().map(|r| r[dim..].to_vec()).collect();
        QuotientMap {
            p,
            dim,
            kernel,
            complement,
            inverse,
        }
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    /// Coordinates of `v + R` with respect to the complement basis.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        // v = c · B  ⇒  c = v · B^{-1}
        let coeffs: Vec<u32> = (0..self.dim)
            .map(|j| {
                v.iter()
                    .zip(&self.inverse)
                    .map(|(&a, row)| a * row[j])
                    .sum::<u32>()
                    % self.p
            })
            .collect();
        coeffs[self.kernel.dim()..].to_vec()
    }

    pub fn lift(&self, w: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.dim];
        for (&c, row) in w.iter().zip(&self.complement) {
            for (slot, &r) in v.iter_mut().zip(row) {
                *slot = (*slot + c * r) % self.p;
            }
        }
        v
    }

    pub fn project_subspace(&self, s: &Subspace) -> Subspace {
        let rows: Vec<Vec<u32>> = s.basis().iter().map(|v| self.project(v)).collect();
        Subspace::span(self.p, self.quotient_dim(), &rows)
    }

    /// Preimage `S + R` of a quotient subspace.
    pub fn lift_subspace(&self, s: &Subspace) -> Subspace {
        let mut rows: Vec<Vec<u32>> = s.basis().iter().map(|w| self.lift(w)).collect();
        rows.extend(self.kernel.basis().iter().cloned());
        Subspace::span(self.p, self.dim, &rows)
    }

    /// The form induced on the quotient by a form whose radical contains `R`.
    pub fn induced_form(&self, form: &AlternatingForm) -> AlternatingForm {
        let gram = self
            .complement
            .iter()
            .map(|a| self.complement.iter().map(|b| form.eval(a, b)).collect())
            .collect();
        AlternatingForm::new(self.p, gram).expect("restriction of an alternating form")
    }
}

/// The symplectic space of `V/V^⊥` together with the quotient map.
#[derive(Clone, Debug)]
pub struct QuotientPolar {
    pub polar: PolarSpace,
    pub map: QuotientMap,
}

impl QuotientPolar {
    pub fn of_form(form: &AlternatingForm) -> Result<Self> {
        let map = QuotientMap::new(form.radical());
        let polar = PolarSpace::new(map.induced_form(form))?;
        Ok(QuotientPolar { polar, map })
    }

    /// The flat of `P(V)` containing `P(V^⊥)` that a quotient flat stands for.
    pub fn lifted(&self, flat: &Flat) -> Flat {
        Flat::new(self.map.lift_subspace(flat.subspace()))
    }

    /// `(dimension in P(V), dimension in P(V/V^⊥))`.
    pub fn flat_dims(&self, flat: &Flat) -> (i64, i64) {
        (self.lifted(flat).proj_dim(), flat.proj_dim())
    }

    /// Quotient point of a vector outside the radical.
    pub fn point_of(&self, v: &[u32]) -> Option<ProjectivePoint> {
        ProjectivePoint::from_coords(self.map.p, &self.map.project(v))
    }
}

/// The polar space of `G/N` for an admissible `N`, realized on `V/V^⊥`.
#[derive(Clone, Debug)]
pub struct GroupPolar<'g> {
    pub space: VectorSpace<'g>,
    pub form: AlternatingForm,
    pub quotient: QuotientPolar,
}

impl<'g> GroupPolar<'g> {
    /// Group elements whose vectors lie on the quotient point, excluding the
    /// lift of the radical.
    pub fn condensation(&self, pt: &ProjectivePoint) -> Vec<Elem> {
        let lifted = self.quotient.lifted(&Flat::from(pt));
        let radical = self.quotient.map.kernel();
        let mut out: Vec<Elem> = lifted
            .subspace()
            .vectors()
            .iter()
            .filter(|v| !radical.contains(v))
            .flat_map(|v| {
                let c = self.space.coset_of_index(index_of(v, self.space.p()));
                self.space.factor().coset(c).to_vec()
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The quotient point an element lies on; `None` for elements of `Z(G)`.
    pub fn point_of_element(&self, x: Elem) -> Option<usize> {
        let pt = self.quotient.point_of(self.space.vector_of(x).coords())?;
        self.quotient.polar.point_index(&pt)
    }

    /// Smallest group element on each point.
    pub fn point_reps(&self) -> Vec<Elem> {
        self.quotient
            .polar
            .points()
            .iter()
            .map(|pt| self.condensation(pt)[0])
            .collect()
    }
}

/// Polar space of `G/N` with the commutator form; `V/V^⊥` is used when the
/// form is degenerate.
pub fn quotient_polar_space<'g>(
    g: &'g FiniteGroup,
    n: &Subgroup,
    p: u32,
    generator_index: Option<usize>,
) -> Result<GroupPolar<'g>> {
    let space = VectorSpace::new(g.factor_group(n)?, p)?;
    let gc = crate::forms::choose_generator(g, p, generator_index)?;
    let form = crate::forms::bilinear_form(&space, &gc)?;
    let quotient = QuotientPolar::of_form(&form)?;
    Ok(GroupPolar {
        space,
        form,
        quotient,
    })
}

/// `W_{2r-1}(p)` from `G/Z(G)`.
pub fn symplectic_polar_space(
    g: &FiniteGroup,
    p: u32,
    generator_index: Option<usize>,
) -> Result<GroupPolar<'_>> {
    let built = quotient_polar_space(g, &g.center(), p, generator_index)?;
    debug_assert_eq!(built.quotient.map.kernel().dim(), 0);
    Ok(built)
}

/// Variant that insists on a non-degenerate form, i.e. `N = Z(G)`.
pub fn symplectic_polar_space_for<'g>(
    g: &'g FiniteGroup,
    n: &Subgroup,
    p: u32,
) -> Result<GroupPolar<'g>> {
    let built = quotient_polar_space(g, n, p, None)?;
    let r = built.form.radical().dim();
    if r > 0 {
        return Err(Error::Degenerate { radical_dim: r });
    }
    Ok(built)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadricKind {
    Parabolic,
    Hyperbolic,
    Elliptic,
}

impl QuadricKind {
    pub fn name(self) -> &'static str {
        match self {
            QuadricKind::Parabolic => "parabolic",
            QuadricKind::Hyperbolic => "hyperbolic",
            QuadricKind::Elliptic => "elliptic",
        }
    }
}

/// Expected point count of a non-singular quadric of `PG(n, 2)`.
pub fn quadric_point_count(n: usize, kind: QuadricKind) -> Option<u64> {
    let pow = |e: usize| 1u64 << e;
    match (n % 2, kind) {
        (0, QuadricKind::Parabolic) => Some(pow(n) - 1),
        (1, QuadricKind::Hyperbolic) => {
            let k = (n - 1) / 2;
            Some(pow(2 * k + 1) + pow(k) - 1)
        }
        (1, QuadricKind::Elliptic) => {
            let k = (n - 1) / 2;
            Some(pow(2 * k + 1) - pow(k) - 1)
        }
        _ => None,
    }
}

/// Classifies a non-singular quadric of `PG(n, 2)` by its point count and
/// cross-checks the projective dimension of its maximal singular flats.
/// Returns the kind and the Witt index `r`.
pub fn classify_quadric(
    n: usize,
    points: usize,
    max_singular_dim: i64,
) -> Result<(QuadricKind, usize)> {
    let candidates: &[QuadricKind] = if n.is_multiple_of(2) {
        &[QuadricKind::Parabolic]
    } else {
        &[QuadricKind::Hyperbolic, QuadricKind::Elliptic]
    };
    let kind = candidates
        .iter()
        .copied()
        .find(|&k| quadric_point_count(n, k) == Some(points as u64))
        .ok_or_else(|| Error::Classification(format!("{points} points in PG({n},2)")))?;
    let r = match kind {
        QuadricKind::Parabolic => n / 2,
        QuadricKind::Hyperbolic => (n - 1) / 2 + 1,
        QuadricKind::Elliptic => (n - 1) / 2,
    };
    if max_singular_dim != r as i64 - 1 {
        return Err(Error::Classification(format!(
            "{} quadric of PG({n},2) should have maximal singular flats of dimension {}, found {max_singular_dim}",
            kind.name(),
            r as i64 - 1
        )));
    }
    Ok((kind, r))
}

/// A non-singular quadric of `PG(n, 2)` with its singular flats.
#[derive(Clone, Debug)]
pub struct Quadric {
    q: QuadraticForm,
    polar: AlternatingForm,
    points: Vec<ProjectivePoint>,
    /// `singular[k]`: singular `k`-flats.
    singular: Vec<Vec<Flat>>,
    kind: QuadricKind,
    witt_index: usize,
    nucleus: Option<ProjectivePoint>,
}

impl Quadric {
    pub fn new(q: QuadraticForm) -> Result<Self> {
        let d = q.dim();
        if d == 0 {
            return Err(Error::NotApplicable(
                "quadric in an empty projective space".into(),
            ));
        }
        let polar = q.polar_form();
        let radical = polar.radical();
        if let Some(v) = radical
            .vectors()
            .iter()
            .find(|v| v.iter().any(|&c| c != 0) && q.value(v) == 0)
        {
            return Err(Error::NotApplicable(format!(
                "quadratic form is singular: Q vanishes on radical vector {}",
                GfVector::new(2, v.clone())
            )));
        }
        let points: Vec<ProjectivePoint> = projective_points(2, d)
            .into_iter()
            .filter(|pt| q.value(pt.coords()) == 0)
            .collect();
        let mut singular = Vec::new();
        if !points.is_empty() {
            singular.push(points.iter().map(Flat::from).collect::<Vec<_>>());
            for k in 2..=d {
                let level: Vec<Flat> = subspaces_of_dim(2, d, k)
                    .into_iter()
                    .filter(|s| q.is_singular(s))
                    .map(Flat::new)
                    .collect();
                if level.is_empty() {
                    break;
                }
                singular.push(level);
            }
        }
        let n = d - 1;
        let max_dim = singular.len() as i64 - 1;
        let (kind, witt_index) = classify_quadric(n, points.len(), max_dim)?;
        let nucleus = if n.is_multiple_of(2) {
            if radical.dim() != 1 {
                return Err(Error::Classification(format!(
                    "polar form of a parabolic quadric has radical of dimension {}",
                    radical.dim()
                )));
            }
            let nuc = ProjectivePoint::from_coords(2, &radical.basis()[0]).unwrap();
            debug_assert_ne!(q.value(nuc.coords()), 0);
            Some(nuc)
        } else {
            if radical.dim() != 0 {
                return Err(Error::Classification(
                    "odd-dimensional quadric with degenerate polar form".into(),
                ));
            }
            None
        };
        Ok(Quadric {
            q,
            polar,
            points,
            singular,
            kind,
            witt_index,
            nucleus,
        })
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.q
    }

    pub fn polar(&self) -> &AlternatingForm {
        &self.polar
    }

    /// Ambient projective dimension `n`.
    pub fn n(&self) -> usize {
        self.q.dim() - 1
    }

    pub fn kind(&self) -> QuadricKind {
        self.kind
    }

    pub fn witt_index(&self) -> usize {
        self.witt_index
    }

    pub fn nucleus(&self) -> Option<&ProjectivePoint> {
        self.nucleus.as_ref()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn singular_flats(&self, k: usize) -> &[Flat] {
        self.singular.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn max_singular_dim(&self) -> i64 {
        self.singular.len() as i64 - 1
    }

    /// Every point of `P(V)` shaded as quadric point (dark), nucleus, or
    /// other (light), with all lines of `P(V)`.
    pub fn ambient_incidence(&self, name: &str, labels: &[String]) -> IncidenceStructure {
        let all = projective_points(2, self.q.dim());
        let index: HashMap<&ProjectivePoint, usize> =
            all.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let points = all
            .iter()
            .enumerate()
            .map(|(i, pt)| PointInfo {
                label: labels.get(i).cloned().unwrap_or_else(|| i.to_string()),
                shade: Some(self.shade_of(pt)),
            })
            .collect();
        let lines = subspaces_of_dim(2, self.q.dim(), 2)
            .into_iter()
            .map(|s| Flat::new(s).points().iter().map(|pt| index[pt]).collect())
            .collect();
        IncidenceStructure::new(name, points, lines).expect("projective lines are valid")
    }

    pub fn shade_of(&self, pt: &ProjectivePoint) -> Shade {
        if self.nucleus.as_ref() == Some(pt) {
            Shade::Nucleus
        } else if self.q.value(pt.coords()) == 0 {
            Shade::Dark
        } else {
            Shade::Light
        }
    }

    /// Singular points and singular lines.
    pub fn singular_incidence(&self, name: &str, labels: &[String]) -> IncidenceStructure {
        let index: HashMap<&ProjectivePoint, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let points = (0..self.points.len())
            .map(|i| PointInfo {
                label: labels.get(i).cloned().unwrap_or_else(|| i.to_string()),
                shade: Some(Shade::Dark),
            })
            .collect();
        let lines = self
            .singular_flats(1)
            .iter()
            .map(|l| l.points().iter().map(|pt| index[pt]).collect())
            .collect();
        IncidenceStructure::new(name, points, lines).expect("singular lines are valid")
    }
}

/// The quadric of `G/K` for `K = {x ∈ Z(G) | x² = e}`.
#[derive(Clone, Debug)]
pub struct GroupQuadric<'g> {
    pub space: VectorSpace<'g>,
    pub quadric: Quadric,
}

impl<'g> GroupQuadric<'g> {
    /// Group elements on a quadric point (the cosets of its non-zero vector).
    pub fn condensation(&self, pt: &ProjectivePoint) -> Vec<Elem> {
        let c = self.space.coset_of_index(pt.rep().index());
        self.space.factor().coset(c).to_vec()
    }
}

pub fn quadric_of_group(g: &FiniteGroup) -> Result<GroupQuadric<'_>> {
    let k = g.torsion_center();
    quadric_for_modulus(g, &k)
}

/// Requires the modulus to be exactly `K`.
pub fn quadric_for_modulus<'g>(g: &'g FiniteGroup, n: &Subgroup) -> Result<GroupQuadric<'g>> {
    if *n != g.torsion_center() {
        return Err(Error::NotApplicable(
            "the quadric is built on G/K with K the central involutions".into(),
        ));
    }
    let space = VectorSpace::new(g.factor_group(n)?, 2)?;
    let q = crate::forms::quadratic_form(&space)?;
    let quadric = Quadric::new(q)?;
    Ok(GroupQuadric { space, quadric })
}

/// Joining a parabolic quadric with its nucleus.
#[derive(Clone, Debug)]
pub struct NucleusJoin {
    pub quotient: QuotientPolar,
    /// `(singular flat, its join with the nucleus as a quotient flat)`,
    /// starting with the empty flat.
    pub pairs: Vec<(Flat, Flat)>,
}

impl NucleusJoin {
    pub fn polar(&self) -> &PolarSpace {
        &self.quotient.polar
    }

    /// Checks that the join restricted to points and lines is an incidence
    /// isomorphism onto `target` (a polar space on the same quotient).
    pub fn verify_isomorphism(&self, quadric: &Quadric, target: &PolarSpace) -> Result<()> {
        let fail = |m: String| Err(Error::NotWellDefined(m));
        let image = |f: &Flat| -> Flat { self.image(f) };
        let point_img: Vec<usize> = quadric
            .points()
            .iter()
            .map(|pt| {
                let f = image(&Flat::from(pt));
                target
                    .point_index(&f.points()[0])
                    .expect("image is a point")
            })
            .collect();
        let distinct: BTreeSet<usize> = point_img.iter().copied().collect();
        if distinct.len() != target.points().len() || point_img.len() != target.points().len() {
            return fail("join is not a bijection on points".into());
        }
        let line_img: Vec<Flat> = quadric.singular_flats(1).iter().map(image).collect();
        let targets: BTreeSet<&Flat> = target.lines().iter().collect();
        let images: BTreeSet<&Flat> = line_img.iter().collect();
        if images != targets || line_img.len() != targets.len() {
            return fail("join is not a bijection on lines".into());
        }
        for (i, pt) in quadric.points().iter().enumerate() {
            for (l, img) in quadric.singular_flats(1).iter().zip(&line_img) {
                let tp = &target.points()[point_img[i]];
                if l.contains(pt) != img.contains(tp) {
                    return fail("join does not preserve incidence".into());
                }
            }
        }
        Ok(())
    }

    pub fn image(&self, f: &Flat) -> Flat {
        Flat::new(self.quotient.map.project_subspace(f.subspace()))
    }
}

/// Maps each singular flat `P(S)` to `P(S + V^⊥)`, viewed in `P(V/V^⊥)`.
pub fn join_with_nucleus(quadric: &Quadric) -> Result<NucleusJoin> {
    let nucleus = quadric.nucleus().ok_or_else(|| {
        Error::NotApplicable(format!("{} quadric has no nucleus", quadric.kind().name()))
    })?;
    let quotient = QuotientPolar::of_form(quadric.polar())?;
    debug_assert_eq!(quotient.map.kernel(), &nucleus.subspace());
    let d = quadric.form().dim();
    let mut pairs = vec![(Flat::empty(2, d), Flat::empty(2, d - 1))];
    let mut seen: BTreeMap<usize, BTreeSet<Flat>> = BTreeMap::new();
    for k in 0..=quadric.max_singular_dim().max(-1) as usize {
        if quadric.max_singular_dim() < 0 {
            break;
        }
        for f in quadric.singular_flats(k) {
            let img = Flat::new(quotient.map.project_subspace(f.subspace()));
            if img.proj_dim() != f.proj_dim()
                || !quotient.polar.form().is_totally_isotropic(img.subspace())
            {
                return Err(Error::NotWellDefined(
                    "join of a singular flat is not totally isotropic".into(),
                ));
            }
            if !seen.entry(k).or_default().insert(img.clone()) {
                return Err(Error::NotWellDefined("join is not injective".into()));
            }
            pairs.push((f.clone(), img));
        }
        if seen.get(&k).map_or(0, BTreeSet::len) != quotient.polar.isotropic_flats(k).len() {
            return Err(Error::NotWellDefined(format!(
                "join misses totally isotropic {k}-flats"
            )));
        }
    }
    Ok(NucleusJoin { quotient, pairs })
}

/// The bijection `T ↦ T·Z(G)` from exponent-2 subgroups containing `K` onto
/// commutative subgroups containing `Z(G)`, as verified pairs.
pub fn nucleus_join_subgroups(g: &FiniteGroup) -> Result<Vec<(Subgroup, Subgroup)>> {
    let gq = quadric_of_group(g)?;
    let z = g.center();
    let mut exp2 = vec![g.torsion_center()];
    for k in 0..=gq.quadric.max_singular_dim().max(0) as usize {
        for f in gq.quadric.singular_flats(k) {
            exp2.push(gq.space.subgroup_of_subspace(f.subspace()));
        }
    }
    let zspace = VectorSpace::new(g.factor_group(&z)?, 2)?;
    let polar = symplectic_polar_space(g, 2, None)?;
    let mut commutative = vec![z.clone()];
    for k in 0..polar.quotient.polar.rank() {
        for f in polar.quotient.polar.isotropic_flats(k) {
            commutative.push(zspace.subgroup_of_subspace(f.subspace()));
        }
    }
    let mut pairs = Vec::new();
    let mut hit = BTreeSet::new();
    for t in exp2 {
        debug_assert!(g.exponent_divides(&t, 2));
        let c = g.join(&t, &z);
        let Some(pos) = commutative.iter().position(|s| *s == c) else {
            return Err(Error::NotWellDefined(
                "T·Z(G) is not a commutative subgroup containing Z(G)".into(),
            ));
        };
        if !hit.insert(pos) {
            return Err(Error::NotWellDefined("T ↦ T·Z(G) is not injective".into()));
        }
        pairs.push((t, c));
    }
    if hit.len() != commutative.len() {
        return Err(Error::NotWellDefined("T ↦ T·Z(G) is not surjective".into()));
    }
    Ok(pairs)
}

/// Output of [`derive_gq24`].
#[derive(Clone, Debug)]
pub struct GqDerivation {
    pub structure: IncidenceStructure,
    /// Indices (into the polar space's points) of the quadrangle's points.
    pub point_source: Vec<usize>,
    pub isotropic_lines: usize,
    pub hyperbolic_lines: usize,
}

/// Generalized quadrangle GQ(2,4) from `W_3(3)` and a point `U`.
///
/// Points: points of `W` not collinear with `U` (and not `U`). Lines: the
/// totally isotropic lines not through `U`, restricted to those points, and
/// the projective lines `ℓ` through `U` with `ℓ ∩ U^⊥ = {U}`, minus `U`.
pub fn derive_gq24(w: &PolarSpace, u: usize, labels: &[String]) -> Result<GqDerivation> {
    if w.dim() != 4 || w.p() != 3 {
        return Err(Error::NotApplicable(format!(
            "derivation needs W_3(3), got a polar space of vector dimension {} over GF({})",
            w.dim(),
            w.p()
        )));
    }
    let Some(up) = w.points().get(u) else {
        return Err(Error::Unknown {
            kind: "point index",
            name: u.to_string(),
        });
    };
    let p = w.p();
    let far: Vec<bool> = w.points().iter().map(|pt| !w.conjugate(up, pt)).collect();
    let point_source: Vec<usize> = (0..far.len()).filter(|&i| far[i]).collect();
    let local: HashMap<usize, usize> = point_source
        .iter()
        .enumerate()
        .map(|(j, &i)| (i, j))
        .collect();

    let mut lines: Vec<Vec<usize>> = Vec::new();
    for members in w.line_members() {
        if members.contains(&u) {
            continue;
        }
        let kept: Vec<usize> = members
            .iter()
            .filter(|i| far[**i])
            .map(|i| local[i])
            .collect();
        if kept.len() != members.len() - 1 {
            return Err(Error::NotWellDefined(
                "isotropic line meets U^⊥ more than once".into(),
            ));
        }
        lines.push(kept);
    }
    let isotropic_lines = lines.len();
    let mut hyperbolic: BTreeSet<Flat> = BTreeSet::new();
    for (i, pt) in w.points().iter().enumerate() {
        if far[i] {
            hyperbolic.insert(Flat::new(up.subspace().join(&pt.subspace())));
        }
    }
    for l in &hyperbolic {
        let others: Vec<usize> = l
            .points()
            .iter()
            .map(|pt| w.point_index(pt).unwrap())
            .filter(|&i| i != u)
            .collect();
        debug_assert_eq!(others.len(), p as usize);
        lines.push(others.iter().map(|i| local[i]).collect());
    }
    let hyperbolic_lines = hyperbolic.len();
    let points = point_source
        .iter()
        .map(|&i| PointInfo {
            label: labels.get(i).cloned().unwrap_or_else(|| i.to_string()),
            shade: None,
        })
        .collect();
    let structure = IncidenceStructure::new("GQ(2,4)", points, lines)?;
    Ok(GqDerivation {
        structure,
        point_source,
        isotropic_lines,
        hyperbolic_lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard_symplectic(p: u32, r: usize) -> AlternatingForm {
        let d = 2 * r;
        let mut gram = vec![vec![0u32; d]; d];
        for i in 0..r {
            gram[i][r + i] = 1;
            gram[r + i][i] = p - 1;
        }
        AlternatingForm::new(p, gram).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(projective_points(2, 3).len(), 7);
        assert_eq!(projective_points(2, 4).len(), 15);
        assert_eq!(projective_points(3, 4).len(), 40);
    }

    #[test]
    fn normalization_is_canonical() {
        let a = ProjectivePoint::from_coords(3, &[0, 2, 1]).unwrap();
        let b = ProjectivePoint::from_coords(3, &[0, 1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coords(), &[0, 1, 2]);
        assert!(ProjectivePoint::from_coords(3, &[0, 0, 0]).is_none());
    }

    #[test]
    fn perp_properties() {
        let w = PolarSpace::new(standard_symplectic(3, 2)).unwrap();
        let whole = Flat::new(Subspace::full(3, 4));
        assert_eq!(w.perp(&whole).proj_dim(), -1);
        assert_eq!(w.perp(&Flat::empty(3, 4)), whole);
        for pt in w.points() {
            let f = Flat::from(pt);
            let hp = w.perp(&f);
            assert_eq!(hp.proj_dim(), 2);
            assert!(hp.contains(pt));
        }
        for k in 0..2 {
            for f in w.isotropic_flats(k) {
                assert_eq!(&w.perp(&w.perp(f)), f);
                assert_eq!(w.perp(f).proj_dim(), 3 - f.proj_dim() - 1);
            }
        }
        for s in subspaces_of_dim(3, 4, 2) {
            let f = Flat::new(s);
            assert_eq!(w.perp(&w.perp(&f)), f);
        }
    }

    #[test]
    fn degenerate_form_rejected() {
        let f = AlternatingForm::new(2, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        assert!(matches!(
            PolarSpace::new(f.clone()),
            Err(Error::Degenerate { radical_dim: 1 })
        ));
        let q = QuotientPolar::of_form(&f).unwrap();
        assert_eq!(q.polar.points().len(), 3);
        for pt in q.polar.points() {
            assert_eq!(q.flat_dims(&Flat::from(pt)), (1, 0));
        }
    }

    #[test]
    fn w3_counts() {
        for (p, lines) in [(2u32, 15usize), (3, 40)] {
            let w = PolarSpace::new(standard_symplectic(p, 2)).unwrap();
            assert_eq!(w.lines().len(), lines);
            assert_eq!(w.maximal_flats().len(), lines);
        }
    }

    #[test]
    fn classification_table() {
        assert_eq!(
            classify_quadric(2, 3, 0).unwrap(),
            (QuadricKind::Parabolic, 1)
        );
        assert_eq!(
            classify_quadric(1, 2, 0).unwrap(),
            (QuadricKind::Hyperbolic, 1)
        );
        assert_eq!(
            classify_quadric(3, 5, 0).unwrap(),
            (QuadricKind::Elliptic, 1)
        );
        assert_eq!(
            classify_quadric(3, 9, 1).unwrap(),
            (QuadricKind::Hyperbolic, 2)
        );
        assert_eq!(
            classify_quadric(4, 15, 1).unwrap(),
            (QuadricKind::Parabolic, 2)
        );
        assert_eq!(
            classify_quadric(1, 0, -1).unwrap(),
            (QuadricKind::Elliptic, 0)
        );
        assert!(classify_quadric(3, 7, 1).is_err());
        assert!(classify_quadric(3, 9, 0).is_err());
    }

    #[test]
    fn elliptic_line_quadric() {
        // x1² + x1x2 + x2² has no zeros on GF(2)^2 \ {0}
        let q = QuadraticForm::from_values(2, vec![0, 1, 1, 1]).unwrap();
        let quad = Quadric::new(q).unwrap();
        assert_eq!(quad.kind(), QuadricKind::Elliptic);
        assert!(quad.points().is_empty());
        assert!(join_with_nucleus(&quad).is_err());
    }

    #[test]
    fn singular_form_rejected() {
        // Q = x1 x2 on GF(2)^3 vanishes on the radical vector e3
        let mut values = vec![0u8; 8];
        for (i, v) in values.iter_mut().enumerate() {
            let c = coords_of(i, 2, 3);
            *v = (c[0] * c[1]) as u8;
        }
        let q = QuadraticForm::from_values(3, values).unwrap();
        assert!(Quadric::new(q).is_err());
    }

    #[test]
    fn gq_from_standard_w3_3() {
        let w = PolarSpace::new(standard_symplectic(3, 2)).unwrap();
        let gq = derive_gq24(&w, 0, &[]).unwrap();
        assert_eq!(gq.structure.points().len(), 27);
        assert_eq!(gq.structure.lines().len(), 45);
        assert_eq!((gq.isotropic_lines, gq.hyperbolic_lines), (36, 9));
        assert_eq!(gq.structure.gq_order(), Some((2, 4)));
        assert!(gq.structure.check_gq_axiom().is_ok());
        assert!(derive_gq24(&w, 40, &[]).is_err());
        let w2 = PolarSpace::new(standard_symplectic(2, 2)).unwrap();
        assert!(derive_gq24(&w2, 0, &[]).is_err());
        let w1 = PolarSpace::new(standard_symplectic(3, 1)).unwrap();
        assert!(derive_gq24(&w1, 0, &[]).is_err());
    }
}
