use serde::Serialize;

use fgpolar::report::{analyze, load_spec, Analysis, AnalyzeOptions, LoadedGroup, NSelect};
use fgpolar::{PauliSpec, Shade};

#[derive(Serialize)]
struct Point {
    label: String,
    coords: String,
    shade: Option<Shade>,
}

#[derive(Serialize)]
struct Geometry {
    name: String,
    summary: Vec<String>,
    points: Vec<Point>,
    lines: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct Exploration {
    polar: Geometry,
    /// All points of P(V) shaded against a parabolic quadric.
    fine: Option<Geometry>,
}

#[derive(Serialize)]
struct Conjugates {
    point: usize,
    conjugate: Vec<usize>,
    elements: Vec<String>,
}

fn load(spec: &str) -> Result<LoadedGroup, String> {
    load_spec(spec).map_err(|e| e.to_string())
}

fn run<'g>(loaded: &'g LoadedGroup, n_select: &str) -> Result<Analysis<'g>, String> {
    let sel: NSelect = n_select
        .parse()
        .map_err(|e: fgpolar::Error| e.to_string())?;
    analyze(loaded, &AnalyzeOptions::with(sel)).map_err(|e| e.to_string())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

pub fn explore(spec: &str, n_select: &str) -> Result<String, String> {
    let loaded = load(spec)?;
    let a = run(&loaded, n_select)?;
    let s = a.polar_incidence().map_err(|e| e.to_string())?;
    let polar = a.polar.as_ref().expect("incidence implies a polar space");
    let r = &a.report;
    let mut summary = vec![format!(
        "|G| = {}, |G'| = {}, |Z(G)| = {}, |K| = {}",
        r.group.order, r.group.derived, r.group.center, r.group.k
    )];
    if let Some(w) = &r.polar {
        summary.push(format!(
            "{}: {} points, {} lines",
            w.name, w.points, w.lines
        ));
    }
    if let Some(q) = &r.quadric {
        summary.push(format!("quadric {}: {} points", q.name, q.points));
    }
    summary.extend(r.notices.iter().cloned());
    let points = s
        .points()
        .iter()
        .zip(polar.quotient.polar.points())
        .map(|(info, pt)| Point {
            label: info.label.clone(),
            coords: pt.coords().iter().map(u32::to_string).collect(),
            shade: info.shade,
        })
        .collect();
    let fine = match a.quadric.as_ref().and_then(|q| q.nucleus()) {
        Some(_) => {
            let f = a.fine_structure().map_err(|e| e.to_string())?;
            let shaded = r.shading.as_ref().expect("quadric implies shading");
            Some(Geometry {
                name: f.name().to_string(),
                summary: vec![format!(
                    "{} dark, {} light, {} nucleus",
                    shaded.dark, shaded.light, shaded.nucleus
                )],
                points: f
                    .points()
                    .iter()
                    .zip(&r.condensation)
                    .map(|(info, c)| Point {
                        label: info.label.clone(),
                        coords: c.point.clone(),
                        shade: info.shade,
                    })
                    .collect(),
                lines: f.lines().to_vec(),
            })
        }
        None => None,
    };
    Ok(json(&Exploration {
        polar: Geometry {
            name: s.name().to_string(),
            summary,
            points,
            lines: s.lines().to_vec(),
        },
        fine,
    }))
}

pub fn conjugates(spec: &str, n_select: &str, point: usize) -> Result<String, String> {
    let loaded = load(spec)?;
    let a = run(&loaded, n_select)?;
    let polar = a
        .polar
        .as_ref()
        .ok_or("no polar space for this choice of N")?;
    let w = &polar.quotient.polar;
    let pt = w
        .points()
        .get(point)
        .ok_or_else(|| format!("no point {point}"))?;
    let conjugate = (0..w.points().len())
        .filter(|&j| j != point && w.conjugate(pt, &w.points()[j]))
        .collect();
    let g = &loaded.group;
    let elements = polar
        .condensation(pt)
        .iter()
        .map(|&x| g.label(x).to_string())
        .collect();
    Ok(json(&Conjugates {
        point,
        conjugate,
        elements,
    }))
}

pub fn quadrangle(u: usize) -> Result<String, String> {
    let loaded = LoadedGroup::pauli(PauliSpec::qudits(3, 2)).map_err(|e| e.to_string())?;
    let a = run(&loaded, "auto_center")?;
    let gq = a.gq(u).map_err(|e| e.to_string())?;
    let s = &gq.structure;
    Ok(json(&Geometry {
        name: s.name().to_string(),
        summary: vec![format!(
            "U = {}: {} points, {} lines ({} isotropic + {} hyperbolic)",
            a.polar_labels[u],
            s.points().len(),
            s.lines().len(),
            gq.isotropic_lines,
            gq.hyperbolic_lines
        )],
        points: s
            .points()
            .iter()
            .map(|p| Point {
                label: p.label.clone(),
                coords: String::new(),
                shade: None,
            })
            .collect(),
        lines: s.lines().to_vec(),
    }))
}
