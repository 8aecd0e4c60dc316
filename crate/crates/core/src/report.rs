//! Group spec documents, the end-to-end analysis report, exports, and the
//! worked-example suite.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{self, AlternatingForm, ConditionReport, Level, QuadraticForm};
use crate::geometry::{self, projective_points, GroupPolar, ProjectivePoint, Quadric, QuadricKind};
use crate::gfp::{index_of, VectorSpace};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::incidence::{export_incidence, ExportFormat, IncidenceStructure, Shade};
use crate::pauli::{Flavor, PauliSpec};

/// Input document: `{"kind":"pauli",...}` or `{"kind":"cayley_table",...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpecDocument {
    Pauli {
        p: u32,
        n: u32,
        flavor: Flavor,
    },
    CayleyTable {
        order: usize,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

impl GroupSpecDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec documents serialize") + "\n"
    }

    pub fn cayley_table_of(g: &FiniteGroup) -> Self {
        GroupSpecDocument::CayleyTable {
            order: g.order(),
            table: g.table_rows(),
            labels: Some(g.labels().to_vec()),
        }
    }
}

/// A group together with the document it came from.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub group: FiniteGroup,
    pub pauli: Option<PauliSpec>,
    pub document: GroupSpecDocument,
}

impl LoadedGroup {
    pub fn from_document(document: GroupSpecDocument) -> Result<Self> {
        let (group, pauli) = match &document {
            GroupSpecDocument::Pauli { p, n, flavor } => {
                let spec = PauliSpec::new(*p, *n, *flavor)?;
                (spec.build_group()?, Some(spec))
            }
            GroupSpecDocument::CayleyTable {
                order,
                table,
                labels,
            } => {
                if table.len() != *order {
                    return Err(crate::error::AxiomViolation::RowCount {
                        rows: table.len(),
                        order: *order,
                    }
                    .into());
                }
                (FiniteGroup::from_table(table, labels.clone())?, None)
            }
        };
        Ok(LoadedGroup {
            group,
            pauli,
            document,
        })
    }

    pub fn pauli(spec: PauliSpec) -> Result<Self> {
        Self::from_document(GroupSpecDocument::Pauli {
            p: spec.p,
            n: spec.n,
            flavor: spec.flavor,
        })
    }
}

/// Parses and validates a group spec document.
pub fn load_spec(text: &str) -> Result<LoadedGroup> {
    LoadedGroup::from_document(GroupSpecDocument::parse(text)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NSelect {
    AutoN0,
    AutoK,
    AutoCenter,
    Explicit(Vec<usize>),
}

impl FromStr for NSelect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto_N0" | "auto_n0" => Ok(NSelect::AutoN0),
            "auto_K" | "auto_k" => Ok(NSelect::AutoK),
            "auto_center" => Ok(NSelect::AutoCenter),
            _ => s
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(NSelect::Explicit)
                .map_err(|_| Error::Unknown {
                    kind: "N selection",
                    name: s.to_string(),
                }),
        }
    }
}

impl NSelect {
    fn name(&self) -> String {
        match self {
            NSelect::AutoN0 => "auto_N0".into(),
            NSelect::AutoK => "auto_K".into(),
            NSelect::AutoCenter => "auto_center".into(),
            NSelect::Explicit(ids) => {
                let ids: Vec<String> = ids.iter().map(usize::to_string).collect();
                format!("explicit {}", ids.join(","))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Inferred from `|G'|` (or the Pauli spec) when absent.
    pub p: Option<u32>,
    pub n_select: NSelect,
    pub g_index: Option<usize>,
    pub level: Level,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            p: None,
            n_select: NSelect::AutoCenter,
            g_index: None,
            level: Level::Quadratic,
        }
    }
}

impl AnalyzeOptions {
    pub fn with(n_select: NSelect) -> Self {
        AnalyzeOptions {
            n_select,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub derived: usize,
    pub center: usize,
    pub k: usize,
    pub n0: usize,
    pub commutative: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub name: String,
    pub order: usize,
    pub members: Vec<String>,
    pub conditions: ConditionReport,
    pub messages: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSummary {
    pub index: usize,
    pub generator: String,
    pub psi: Vec<(String, u32)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceSummary {
    pub dim: usize,
    pub vectors: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormSummary {
    pub gram: Vec<Vec<u32>>,
    pub rank: usize,
    pub radical_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarSummary {
    pub name: String,
    /// Projective dimension of `P(V)`.
    pub ambient_dim: i64,
    /// Projective dimension of `P(V/V^⊥)`.
    pub quotient_dim: i64,
    pub rank: usize,
    pub points: usize,
    pub lines: usize,
    pub flats_by_dim: Vec<usize>,
    pub points_per_line: Option<usize>,
    pub lines_per_point: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadricSummary {
    pub name: String,
    pub kind: QuadricKind,
    pub n: usize,
    pub points: usize,
    pub expected_points: u64,
    pub singular_flats_by_dim: Vec<usize>,
    pub max_singular_dim: i64,
    pub witt_index: usize,
    pub nucleus: Option<String>,
    /// Whether joining with the nucleus matched the symplectic quotient.
    pub nucleus_join_isomorphism: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ShadingSummary {
    pub dark: usize,
    pub light: usize,
    pub nucleus: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CondensationEntry {
    pub point: String,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shade: Option<Shade>,
    /// Label of each coset on the point, one per non-zero multiple.
    pub classes: Vec<String>,
    pub elements: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub group: GroupSummary,
    pub p: u32,
    pub selection: String,
    pub modulus: Option<String>,
    pub modulus_order: Option<usize>,
    pub candidates: Vec<CandidateReport>,
    pub chosen_conditions: ConditionReport,
    pub violations: Vec<String>,
    pub notices: Vec<String>,
    pub space: Option<SpaceSummary>,
    pub generator: Option<GeneratorSummary>,
    pub form: Option<FormSummary>,
    pub polar: Option<PolarSummary>,
    pub quadratic_form: Option<Vec<u8>>,
    pub quadric: Option<QuadricSummary>,
    pub shading: Option<ShadingSummary>,
    pub condensation: Vec<CondensationEntry>,
}

/// The report plus the structures it summarizes, for exports.
pub struct Analysis<'g> {
    pub report: AnalysisReport,
    pub loaded: &'g LoadedGroup,
    pub space: Option<VectorSpace<'g>>,
    pub polar: Option<GroupPolar<'g>>,
    pub quadric: Option<Quadric>,
    /// Labels of the points of `P(V)`, in canonical order.
    pub point_labels: Vec<String>,
    /// Labels of the points of the polar space on `V/V^⊥`.
    pub polar_labels: Vec<String>,
}

/// Shortest member label of a coset, ties broken lexicographically.
fn coset_label(g: &FiniteGroup, members: &[Elem]) -> String {
    members
        .iter()
        .map(|&x| g.label(x))
        .min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)))
        .unwrap_or("")
        .to_string()
}

fn subgroup_labels(g: &FiniteGroup, s: &Subgroup) -> Vec<String> {
    s.members()
        .iter()
        .map(|&x| g.label(x).to_string())
        .collect()
}

fn infer_p(loaded: &LoadedGroup, requested: Option<u32>) -> Result<u32> {
    let p = match (requested, loaded.pauli) {
        (Some(p), _) => p,
        (None, Some(spec)) => spec.p,
        (None, None) => {
            let d = loaded.group.derived_subgroup().order() as u32;
            if !crate::pauli::is_prime(d) {
                return Err(Error::NotApplicable(format!(
                    "cannot infer p from a commutator subgroup of order {d}; pass p explicitly"
                )));
            }
            d
        }
    };
    if !crate::pauli::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p)
}

fn quadric_name(q: &Quadric) -> String {
    match q.kind() {
        QuadricKind::Parabolic => format!("Q_{}(2)", q.n()),
        QuadricKind::Hyperbolic => format!("Q+_{}(2)", q.n()),
        QuadricKind::Elliptic => format!("Q-_{}(2)", q.n()),
    }
}

fn coords_string(pt: &ProjectivePoint) -> String {
    pt.coords().iter().map(u32::to_string).collect()
}

fn uniform(values: impl IntoIterator<Item = usize>) -> Option<usize> {
    let mut it = values.into_iter();
    let first = it.next()?;
    it.all(|v| v == first).then_some(first)
}

/// Runs the pipeline on `loaded` with the given options.
///
/// Validation failures (bad prime, non-subgroup selection) are errors;
/// condition violations are recorded in the report.
pub fn analyze<'g>(loaded: &'g LoadedGroup, options: &AnalyzeOptions) -> Result<Analysis<'g>> {
    let g = &loaded.group;
    let p = infer_p(loaded, options.p)?;
    let derived = g.derived_subgroup();
    let center = g.center();
    let k = g.torsion_center();
    let n0 = g.n0_subgroup(p);
    let group = GroupSummary {
        order: g.order(),
        derived: derived.order(),
        center: center.order(),
        k: k.order(),
        n0: n0.order(),
        commutative: g.is_commutative(),
    };

    let mut named: Vec<(String, Subgroup)> = Vec::new();
    let mut push = |name: &str, s: &Subgroup| match named.iter_mut().find(|(_, t)| t == s) {
        Some(entry) => entry.0 = format!("{} = {name}", entry.0),
        None => named.push((name.to_string(), s.clone())),
    };
    push("N0", &n0);
    push("K", &k);
    push("Z(G)", &center);
    let explicit = match &options.n_select {
        NSelect::Explicit(ids) => {
            let members = ids.iter().map(|&i| g.elem(i)).collect::<Result<Vec<_>>>()?;
            let s = g.subgroup(&members)?;
            push("explicit", &s);
            Some(s)
        }
        _ => None,
    };
    let candidates: Vec<CandidateReport> = named
        .iter()
        .map(|(name, s)| {
            let conditions = forms::check_conditions(g, s, p);
            let messages = conditions
                .violations
                .iter()
                .map(|v| format!("condition {}: {}", v.condition, v.witness.describe(g)))
                .collect();
            CandidateReport {
                name: name.clone(),
                order: s.order(),
                members: subgroup_labels(g, s),
                conditions,
                messages,
            }
        })
        .collect();

    let mut notices = Vec::new();
    let chosen = match &options.n_select {
        NSelect::AutoN0 => n0.clone(),
        NSelect::AutoCenter => center.clone(),
        NSelect::Explicit(_) => explicit.clone().unwrap(),
        NSelect::AutoK => {
            let report = forms::check_conditions(g, &k, p);
            let ok = p == 2 && (1..=5).all(|c| report.holds(c));
            if ok {
                k.clone()
            } else {
                let why = if p != 2 {
                    format!("p = {p} has no quadratic form")
                } else {
                    report
                        .violations
                        .iter()
                        .map(|v| format!("condition {}: {}", v.condition, v.witness.describe(g)))
                        .collect::<Vec<_>>()
                        .join("; ")
                };
                notices.push(format!(
                    "auto_K is not feasible ({why}); falling back to auto_center"
                ));
                center.clone()
            }
        }
    };
    let chosen_report = forms::check_conditions(g, &chosen, p);
    let violations: Vec<String> = chosen_report
        .violations
        .iter()
        .map(|v| format!("condition {}: {}", v.condition, v.witness.describe(g)))
        .collect();
    let modulus_name = named
        .iter()
        .find(|(_, s)| *s == chosen)
        .map(|(n, _)| n.clone())
        .unwrap_or_else(|| "N".into());

    let mut report = AnalysisReport {
        group,
        p,
        selection: options.n_select.name(),
        modulus: Some(modulus_name),
        modulus_order: Some(chosen.order()),
        candidates,
        chosen_conditions: chosen_report.clone(),
        violations,
        notices,
        space: None,
        generator: None,
        form: None,
        polar: None,
        quadratic_form: None,
        quadric: None,
        shading: None,
        condensation: Vec::new(),
    };
    let mut analysis = Analysis {
        report: report.clone(),
        loaded,
        space: None,
        polar: None,
        quadric: None,
        point_labels: Vec::new(),
        polar_labels: Vec::new(),
    };

    if !chosen_report.holds(1) {
        report.notices.push(
            "G/N is not a vector space over GF(p) (condition 1); nothing further to build".into(),
        );
        analysis.report = report;
        return Ok(analysis);
    }
    let space = VectorSpace::new(g.factor_group(&chosen)?, p)?;
    report.space = Some(SpaceSummary {
        dim: space.dim(),
        vectors: space.len(),
        basis: space
            .basis()
            .iter()
            .map(|&c| coset_label(g, space.factor().coset(c)))
            .collect(),
    });
    let points = projective_points(p, space.dim());
    analysis.point_labels = points
        .iter()
        .map(|pt| {
            coset_label(
                g,
                space.factor().coset(space.coset_of_index(pt.rep().index())),
            )
        })
        .collect();

    let mut form: Option<AlternatingForm> = None;
    if options.level != Level::VectorSpace {
        if let Some(first) = chosen_report.violations.iter().find(|v| v.condition <= 3) {
            report.notices.push(format!(
                "no alternating form on V (condition {}: {})",
                first.condition,
                first.witness.describe(g)
            ));
        } else {
            let gc = forms::choose_generator(g, p, options.g_index)?;
            let bf = forms::bilinear_form(&space, &gc)?;
            report.generator = Some(GeneratorSummary {
                index: options.g_index.unwrap_or(0),
                generator: g.label(gc.generator()).to_string(),
                psi: gc
                    .table()
                    .iter()
                    .map(|&(x, v)| (g.label(x).to_string(), v))
                    .collect(),
            });
            report.form = Some(FormSummary {
                gram: bf.gram().to_vec(),
                rank: bf.rank(),
                radical_dim: bf.radical().dim(),
            });
            let polar = geometry::quotient_polar_space(g, &chosen, p, options.g_index)?;
            let w = &polar.quotient.polar;
            analysis.polar_labels = w
                .points()
                .iter()
                .map(|pt| {
                    let v = polar.quotient.map.lift(pt.coords());
                    coset_label(
                        g,
                        space.factor().coset(space.coset_of_index(index_of(&v, p))),
                    )
                })
                .collect();
            let flats_by_dim: Vec<usize> =
                (0..w.rank()).map(|k| w.isotropic_flats(k).len()).collect();
            let members = w.line_members();
            report.polar = Some(PolarSummary {
                name: format!("W_{}({p})", w.dim() as i64 - 1),
                ambient_dim: space.dim() as i64 - 1,
                quotient_dim: w.dim() as i64 - 1,
                rank: w.rank(),
                points: w.points().len(),
                lines: w.lines().len(),
                flats_by_dim,
                points_per_line: uniform(members.iter().map(Vec::len)),
                lines_per_point: if members.is_empty() {
                    None
                } else {
                    uniform(w.incidence("W", &[], None).point_degrees())
                },
            });
            analysis.polar = Some(polar);
            form = Some(bf);
        }
    }

    if options.level == Level::Quadratic && form.is_some() {
        if p != 2 {
            report
                .notices
                .push(format!("no quadratic form on V (p = {p})"));
        } else if let Some(first) = chosen_report.violations.iter().find(|v| v.condition >= 4) {
            report.notices.push(format!(
                "no quadratic form on V (condition {}: {})",
                first.condition,
                first.witness.describe(g)
            ));
        } else {
            let q: QuadraticForm = forms::quadratic_form(&space)?;
            report.quadratic_form = Some(q.values().to_vec());
            if chosen != k {
                report
                    .notices
                    .push("Q is singular on K/N; the quadric is classified only for N = K".into());
            } else {
                let quadric = Quadric::new(q)?;
                let join_ok = match quadric.nucleus() {
                    Some(_) => {
                        let polar = analysis.polar.as_ref().expect("form built");
                        Some(
                            geometry::join_with_nucleus(&quadric)
                                .and_then(|j| j.verify_isomorphism(&quadric, &polar.quotient.polar))
                                .is_ok(),
                        )
                    }
                    None => None,
                };
                let nucleus_label = quadric.nucleus().map(|nuc| {
                    let i = points.iter().position(|pt| pt == nuc).unwrap();
                    analysis.point_labels[i].clone()
                });
                report.quadric = Some(QuadricSummary {
                    name: quadric_name(&quadric),
                    kind: quadric.kind(),
                    n: quadric.n(),
                    points: quadric.points().len(),
                    expected_points: geometry::quadric_point_count(quadric.n(), quadric.kind())
                        .unwrap(),
                    singular_flats_by_dim: (0..=quadric.max_singular_dim().max(-1))
                        .take_while(|&k| k >= 0)
                        .map(|k| quadric.singular_flats(k as usize).len())
                        .collect(),
                    max_singular_dim: quadric.max_singular_dim(),
                    witt_index: quadric.witt_index(),
                    nucleus: nucleus_label,
                    nucleus_join_isomorphism: join_ok,
                });
                let mut shading = ShadingSummary::default();
                for pt in &points {
                    match quadric.shade_of(pt) {
                        Shade::Dark => shading.dark += 1,
                        Shade::Light => shading.light += 1,
                        Shade::Nucleus => shading.nucleus += 1,
                    }
                }
                report.shading = Some(shading);
                analysis.quadric = Some(quadric);
            }
        }
    }

    report.condensation = points
        .iter()
        .zip(&analysis.point_labels)
        .map(|(pt, label)| {
            let cosets: Vec<usize> = pt
                .multiples()
                .iter()
                .map(|v| space.coset_of_index(v.index()))
                .collect();
            CondensationEntry {
                point: coords_string(pt),
                label: label.clone(),
                shade: analysis.quadric.as_ref().map(|q| q.shade_of(pt)),
                classes: cosets
                    .iter()
                    .map(|&c| coset_label(g, space.factor().coset(c)))
                    .collect(),
                elements: cosets.len() * chosen.order(),
            }
        })
        .collect();
    analysis.space = Some(space);
    analysis.report = report;
    Ok(analysis)
}

impl AnalysisReport {
    /// Whether the chosen N violates a condition needed at `level`
    /// (conditions 4 and 5 only count for p = 2).
    pub fn violates(&self, level: Level) -> bool {
        let needed: &[u8] = match level {
            Level::VectorSpace => &[1],
            Level::Bilinear => &[1, 2, 3],
            Level::Quadratic if self.p == 2 => &[1, 2, 3, 4, 5],
            Level::Quadratic => &[1, 2, 3],
        };
        needed.iter().any(|&c| !self.chosen_conditions.holds(c))
    }
}

impl<'g> Analysis<'g> {
    fn polar(&self) -> Result<&GroupPolar<'g>> {
        self.polar
            .as_ref()
            .ok_or_else(|| Error::NotApplicable("report has no polar space".into()))
    }

    fn quadric(&self) -> Result<&Quadric> {
        self.quadric
            .as_ref()
            .ok_or_else(|| Error::NotApplicable("report has no quadric".into()))
    }

    /// Polar points with totally isotropic lines; shaded by the quadric when
    /// it lives on the same space.
    pub fn polar_incidence(&self) -> Result<IncidenceStructure> {
        let polar = self.polar()?;
        let w = &polar.quotient.polar;
        let name = self.report.polar.as_ref().map_or("W", |s| s.name.as_str());
        let shades: Option<Vec<Shade>> = match (&self.quadric, polar.quotient.map.kernel().dim()) {
            (Some(q), 0) => Some(w.points().iter().map(|pt| q.shade_of(pt)).collect()),
            _ => None,
        };
        Ok(w.incidence(name, &self.polar_labels, shades.as_deref()))
    }

    pub fn quadric_incidence(&self) -> Result<IncidenceStructure> {
        let q = self.quadric()?;
        let all = projective_points(2, q.form().dim());
        let labels: Vec<String> = q
            .points()
            .iter()
            .map(|pt| self.point_labels[all.iter().position(|a| a == pt).unwrap()].clone())
            .collect();
        Ok(q.singular_incidence(&quadric_name(q), &labels))
    }

    /// Every point of `P(V)` shaded dark/light/nucleus, with all lines.
    pub fn fine_structure(&self) -> Result<IncidenceStructure> {
        let q = self.quadric()?;
        Ok(q.ambient_incidence(&format!("PG({},2)", q.n()), &self.point_labels))
    }

    pub fn gq(&self, u: usize) -> Result<geometry::GqDerivation> {
        let polar = self.polar()?;
        geometry::derive_gq24(&polar.quotient.polar, u, &self.polar_labels)
    }

    /// Vertices are polar points; edges join distinct conjugate points.
    pub fn commutation_graph(&self) -> Result<CommutationGraph> {
        let w = &self.polar()?.quotient.polar;
        let pts = w.points();
        let mut edges = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if w.conjugate(&pts[i], &pts[j]) {
                    edges.push((i, j));
                }
            }
        }
        Ok(CommutationGraph {
            vertices: self.polar_labels.clone(),
            edges,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct GqDocument<'a> {
    structure: &'a IncidenceStructure,
    order: Option<(usize, usize)>,
    isotropic_lines: usize,
    hyperbolic_lines: usize,
    line_labels: Vec<Vec<&'a str>>,
}

#[derive(Serialize)]
struct ConditionsDocument<'a> {
    p: u32,
    candidates: &'a [CandidateReport],
    modulus: Option<&'a str>,
    violations: &'a [String],
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Artifact {
    Report,
    Conditions,
    Incidence,
    CommutationGraph,
    Quadric,
    FineStructure,
    Gq,
    Table,
}

impl FromStr for Artifact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "report" => Artifact::Report,
            "conditions" => Artifact::Conditions,
            "incidence" => Artifact::Incidence,
            "commutation_graph" => Artifact::CommutationGraph,
            "quadric" => Artifact::Quadric,
            "fine_structure" => Artifact::FineStructure,
            "gq" => Artifact::Gq,
            "table" => Artifact::Table,
            _ => {
                return Err(Error::Unknown {
                    kind: "export selector",
                    name: s.to_string(),
                })
            }
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DocFormat {
    Json,
    Text,
    Dot,
}

impl FromStr for DocFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "structured" => Ok(DocFormat::Json),
            "text" => Ok(DocFormat::Text),
            "dot" => Ok(DocFormat::Dot),
            _ => Err(Error::Unknown {
                kind: "format",
                name: s.to_string(),
            }),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn incidence_doc(s: &IncidenceStructure, format: DocFormat) -> String {
    match format {
        DocFormat::Json => to_json(s),
        DocFormat::Text => export_incidence(s, ExportFormat::Text),
        DocFormat::Dot => export_incidence(s, ExportFormat::Dot),
    }
}

/// Renders one artifact of an analysis. `gq_point` selects `U` for the
/// quadrangle.
pub fn export(
    analysis: &Analysis<'_>,
    what: Artifact,
    format: DocFormat,
    gq_point: usize,
) -> Result<String> {
    Ok(match what {
        Artifact::Report => match format {
            DocFormat::Json => to_json(&analysis.report),
            DocFormat::Text => render_text(&analysis.report),
            DocFormat::Dot => return Err(Error::NotApplicable("reports have no DOT form".into())),
        },
        Artifact::Conditions => match format {
            DocFormat::Json => to_json(&ConditionsDocument {
                p: analysis.report.p,
                candidates: &analysis.report.candidates,
                modulus: analysis.report.modulus.as_deref(),
                violations: &analysis.report.violations,
            }),
            DocFormat::Text => render_conditions(&analysis.report),
            DocFormat::Dot => {
                return Err(Error::NotApplicable("conditions have no DOT form".into()))
            }
        },
        Artifact::Incidence => incidence_doc(&analysis.polar_incidence()?, format),
        Artifact::Quadric => incidence_doc(&analysis.quadric_incidence()?, format),
        Artifact::FineStructure => incidence_doc(&analysis.fine_structure()?, format),
        Artifact::Gq => {
            let gq = analysis.gq(gq_point)?;
            match format {
                DocFormat::Json => {
                    let s = &gq.structure;
                    to_json(&GqDocument {
                        structure: s,
                        order: s.gq_order(),
                        isotropic_lines: gq.isotropic_lines,
                        hyperbolic_lines: gq.hyperbolic_lines,
                        line_labels: s
                            .lines()
                            .iter()
                            .map(|l| l.iter().map(|&i| s.points()[i].label.as_str()).collect())
                            .collect(),
                    })
                }
                other => incidence_doc(&gq.structure, other),
            }
        }
        Artifact::CommutationGraph => {
            let cg = analysis.commutation_graph()?;
            match format {
                DocFormat::Json => to_json(&cg),
                DocFormat::Text => {
                    let mut out = format!(
                        "# commutation graph: {} vertices, {} edges\n",
                        cg.vertices.len(),
                        cg.edges.len()
                    );
                    for (i, v) in cg.vertices.iter().enumerate() {
                        let _ = writeln!(out, "vertex {i} {v}");
                    }
                    for (a, b) in &cg.edges {
                        let _ = writeln!(out, "edge {a} {b}");
                    }
                    out
                }
                DocFormat::Dot => {
                    let mut out = String::from("graph \"commutation\" {\n");
                    for (i, v) in cg.vertices.iter().enumerate() {
                        let _ = writeln!(out, "  v{i} [label=\"{v}\"];");
                    }
                    for (a, b) in &cg.edges {
                        let _ = writeln!(out, "  v{a} -- v{b};");
                    }
                    out.push_str("}\n");
                    out
                }
            }
        }
        Artifact::Table => match format {
            DocFormat::Json => GroupSpecDocument::cayley_table_of(&analysis.loaded.group).to_json(),
            _ => {
                return Err(Error::NotApplicable(
                    "tables are exported as JSON only".into(),
                ))
            }
        },
    })
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

/// Group summary and the condition table for every candidate modulus.
pub fn render_conditions(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let g = &r.group;
    let _ = writeln!(
        out,
        "group: order {}, |G'| = {}, |Z(G)| = {}, |K| = {}, |N0| = {}",
        g.order, g.derived, g.center, g.k, g.n0
    );
    let _ = writeln!(out, "p = {}, selection {}", r.p, r.selection);
    out.push_str("candidates:\n");
    for c in &r.candidates {
        let cr = &c.conditions;
        let _ = writeln!(
            out,
            "  {} (order {}): 1:{} 2:{} 3:{} 4:{} 5:{}",
            c.name,
            c.order,
            yes_no(Some(cr.cond1)),
            yes_no(Some(cr.cond2)),
            yes_no(Some(cr.cond3)),
            yes_no(cr.cond4),
            yes_no(cr.cond5)
        );
        for m in &c.messages {
            let _ = writeln!(out, "    {m}");
        }
    }
    if let (Some(name), Some(order)) = (&r.modulus, r.modulus_order) {
        let _ = writeln!(out, "modulus: {name} (order {order})");
    }
    out
}

/// Human-readable report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = render_conditions(r);
    for n in &r.notices {
        let _ = writeln!(out, "notice: {n}");
    }
    if let Some(s) = &r.space {
        let _ = writeln!(
            out,
            "space: dim {} ({} vectors), basis {}",
            s.dim,
            s.vectors,
            s.basis.join(" ")
        );
    }
    if let Some(gen) = &r.generator {
        let _ = writeln!(out, "generator g = {}", gen.generator);
    }
    if let Some(f) = &r.form {
        let rows: Vec<String> = f
            .gram
            .iter()
            .map(|row| row.iter().map(u32::to_string).collect::<String>())
            .collect();
        let _ = writeln!(
            out,
            "form: gram [{}], rank {}, radical dim {}",
            rows.join(" "),
            f.rank,
            f.radical_dim
        );
    }
    if let Some(w) = &r.polar {
        let _ = writeln!(
            out,
            "polar space {}: {} points, {} lines, flats by dim {:?}, points/line {}, lines/point {} (P(V) dim {}, quotient dim {})",
            w.name,
            w.points,
            w.lines,
            w.flats_by_dim,
            w.points_per_line.map_or("-".into(), |v| v.to_string()),
            w.lines_per_point.map_or("-".into(), |v| v.to_string()),
            w.ambient_dim,
            w.quotient_dim
        );
    }
    if let Some(q) = &r.quadric {
        let _ = writeln!(
            out,
            "quadric {} ({}): {} points (expected {}), singular flats by dim {:?}, nucleus {}",
            q.name,
            q.kind.name(),
            q.points,
            q.expected_points,
            q.singular_flats_by_dim,
            q.nucleus.as_deref().unwrap_or("none")
        );
        if let Some(iso) = q.nucleus_join_isomorphism {
            let _ = writeln!(
                out,
                "join with nucleus is an isomorphism onto the polar space: {}",
                yes_no(Some(iso))
            );
        }
    }
    if let Some(s) = &r.shading {
        let _ = writeln!(
            out,
            "shading: {} dark, {} light, {} nucleus",
            s.dark, s.light, s.nucleus
        );
    }
    if !r.condensation.is_empty() {
        out.push_str("condensation:\n");
        for c in &r.condensation {
            let shade = c
                .shade
                .map_or(String::new(), |s| format!(" [{}]", s.name()));
            let _ = writeln!(
                out,
                "  {} {}{}: {}",
                c.point,
                c.label,
                shade,
                c.classes.join(" ")
            );
        }
    }
    out
}

/// A named output file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenDocument {
    pub name: String,
    pub content: String,
}

/// The worked examples: complex and real one- and two-qubit Pauli groups,
/// the two-qutrit Pauli group, and the quadrangle derived from it.
pub fn reproduce_paper() -> Result<Vec<GoldenDocument>> {
    let mut docs = Vec::new();
    let mut summary = String::new();
    let emit = |docs: &mut Vec<GoldenDocument>, name: String, content: String| {
        docs.push(GoldenDocument { name, content });
    };
    let runs: [(&str, PauliSpec, &[NSelect]); 5] = [
        (
            "example1",
            PauliSpec::complex_qubits(1),
            &[NSelect::AutoK, NSelect::AutoCenter],
        ),
        (
            "example2",
            PauliSpec::complex_qubits(2),
            &[NSelect::AutoK, NSelect::AutoCenter],
        ),
        (
            "example3",
            PauliSpec::real_qubits(1),
            &[NSelect::AutoCenter],
        ),
        (
            "example4",
            PauliSpec::real_qubits(2),
            &[NSelect::AutoCenter],
        ),
        ("example5", PauliSpec::qudits(3, 2), &[NSelect::AutoCenter]),
    ];
    for (name, spec, selections) in runs {
        let loaded = LoadedGroup::pauli(spec)?;
        for sel in selections {
            let a = analyze(&loaded, &AnalyzeOptions::with(sel.clone()))?;
            let tag = match sel {
                NSelect::AutoK => "K",
                _ => "center",
            };
            let r = &a.report;
            let _ = write!(
                summary,
                "{name} N={tag}: |G|={} dim={}",
                r.group.order,
                r.space.as_ref().map_or(0, |s| s.dim)
            );
            if let Some(w) = &r.polar {
                let _ = write!(summary, " {} {}/{}", w.name, w.points, w.lines);
            }
            if let Some(q) = &r.quadric {
                let _ = write!(summary, " {} {} points", q.name, q.points);
            }
            if let Some(s) = &r.shading {
                let _ = write!(summary, " shading {}/{}/{}", s.dark, s.light, s.nucleus);
            }
            summary.push('\n');
            emit(
                &mut docs,
                format!("{name}_{tag}.report.json"),
                export(&a, Artifact::Report, DocFormat::Json, 0)?,
            );
            emit(
                &mut docs,
                format!("{name}_{tag}.report.txt"),
                export(&a, Artifact::Report, DocFormat::Text, 0)?,
            );
            let mut artifacts = vec![Artifact::Incidence];
            if let Some(q) = &a.quadric {
                artifacts.push(Artifact::Quadric);
                if q.nucleus().is_some() {
                    artifacts.push(Artifact::FineStructure);
                }
            }
            for art in artifacts {
                let stem = match art {
                    Artifact::Incidence => "polar",
                    Artifact::Quadric => "quadric",
                    _ => "fine_structure",
                };
                emit(
                    &mut docs,
                    format!("{name}_{tag}.{stem}.txt"),
                    export(&a, art, DocFormat::Text, 0)?,
                );
                emit(
                    &mut docs,
                    format!("{name}_{tag}.{stem}.dot"),
                    export(&a, art, DocFormat::Dot, 0)?,
                );
            }
            if name == "example5" {
                let gq = a.gq(0)?;
                let s = &gq.structure;
                let _ = writeln!(
                    summary,
                    "example5 GQ: {} points, {} lines ({}+{}), order {}",
                    s.points().len(),
                    s.lines().len(),
                    gq.isotropic_lines,
                    gq.hyperbolic_lines,
                    s.gq_order()
                        .map_or("none".into(), |(a, b)| format!("({a},{b})"))
                );
                emit(
                    &mut docs,
                    "example5_gq.json".into(),
                    export(&a, Artifact::Gq, DocFormat::Json, 0)?,
                );
                emit(
                    &mut docs,
                    "example5_gq.txt".into(),
                    export(&a, Artifact::Gq, DocFormat::Text, 0)?,
                );
            }
        }
    }
    emit(&mut docs, "summary.txt".into(), summary);
    Ok(docs)
}
