//! Finite point-line incidence structures: validation, generalized quadrangle
//! checks, isomorphism-invariant fingerprints, and text/DOT export.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shade {
    Dark,
    Light,
    Nucleus,
}

impl Shade {
    pub fn name(self) -> &'static str {
        match self {
            Shade::Dark => "dark",
            Shade::Light => "light",
            Shade::Nucleus => "nucleus",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointInfo {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shade: Option<Shade>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceStructure {
    name: String,
    points: Vec<PointInfo>,
    /// Point indices on each line, ascending.
    lines: Vec<Vec<usize>>,
}

/// Counts and degree sequences that any isomorphism preserves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub points: usize,
    pub lines: usize,
    pub line_sizes: Vec<usize>,
    pub point_degrees: Vec<usize>,
    pub collinearity_degrees: Vec<usize>,
}

impl IncidenceStructure {
    pub fn new(name: &str, points: Vec<PointInfo>, lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(lines.len());
        for (li, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            if line.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotWellDefined(format!("line {li} repeats a point")));
            }
            if let Some(&bad) = line.iter().find(|&&i| i >= points.len()) {
                return Err(Error::InvalidElement {
                    id: bad,
                    order: points.len(),
                });
            }
            sorted.push(line);
        }
        Ok(IncidenceStructure {
            name: name.to_string(),
            points,
            lines: sorted,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[PointInfo] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.points.len()];
        for line in &self.lines {
            for &i in line {
                deg[i] += 1;
            }
        }
        deg
    }

    fn collinearity(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.points.len()];
        for line in &self.lines {
            for &a in line {
                for &b in line {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        adj
    }

    /// `(s, t)` when every line has `s + 1` points and every point lies on
    /// `t + 1` lines.
    pub fn gq_order(&self) -> Option<(usize, usize)> {
        let sizes: BTreeSet<usize> = self.lines.iter().map(Vec::len).collect();
        let degs: BTreeSet<usize> = self.point_degrees().into_iter().collect();
        match (sizes.len(), degs.len()) {
            (1, 1) => {
                let s = *sizes.first()?;
                let t = *degs.first()?;
                (s >= 1 && t >= 1).then(|| (s - 1, t - 1))
            }
            _ => None,
        }
    }

    /// For every point `P` and line `L` with `P ∉ L`, exactly one point of `L`
    /// is collinear with `P`. Returns the first failing `(point, line)`.
    pub fn check_gq_axiom(&self) -> std::result::Result<(), (usize, usize)> {
        let adj = self.collinearity();
        for (pi, neighbours) in adj.iter().enumerate() {
            for (li, line) in self.lines.iter().enumerate() {
                if line.contains(&pi) {
                    continue;
                }
                if line.iter().filter(|q| neighbours.contains(q)).count() != 1 {
                    return Err((pi, li));
                }
            }
        }
        Ok(())
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut line_sizes: Vec<usize> = self.lines.iter().map(Vec::len).collect();
        let mut point_degrees = self.point_degrees();
        let mut collinearity_degrees: Vec<usize> =
            self.collinearity().iter().map(BTreeSet::len).collect();
        line_sizes.sort_unstable();
        point_degrees.sort_unstable();
        collinearity_degrees.sort_unstable();
        Fingerprint {
            points: self.points.len(),
            lines: self.lines.len(),
            line_sizes,
            point_degrees,
            collinearity_degrees,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Text,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ExportFormat::Text),
            "dot" => Ok(ExportFormat::Dot),
            _ => Err(Error::Unknown {
                kind: "export format",
                name: s.to_string(),
            }),
        }
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders a labeled point table then one row of point indices per line. DOT output is a bipartite
/// point-line graph.
pub fn export_incidence(s: &IncidenceStructure, format: ExportFormat) -> String {
    let mut out = String::new();
    match format {
        ExportFormat::Text => {
            let _ = writeln!(
                out,
                "# {}: {} points, {} lines",
                s.name,
                s.points.len(),
                s.lines.len()
            );
            for (i, p) in s.points.iter().enumerate() {
                match p.shade {
                    Some(shade) => writeln!(out, "point {i} {} {}", p.label, shade.name()),
                    None => writeln!(out, "point {i} {}", p.label),
                }
                .unwrap();
            }
            for (i, l) in s.lines.iter().enumerate() {
                let ids: Vec<String> = l.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "line {i} {}", ids.join(" "));
            }
        }
        ExportFormat::Dot => {
            let _ = writeln!(out, "graph \"{}\" {{", dot_escape(&s.name));
            for (i, p) in s.points.iter().enumerate() {
                let fill = match p.shade {
                    Some(Shade::Dark) => ", style=filled, fillcolor=gray30, fontcolor=white",
                    Some(Shade::Light) => ", style=filled, fillcolor=gray90",
                    Some(Shade::Nucleus) => ", shape=doublecircle",
                    None => "",
                };
                let _ = writeln!(out, "  p{i} [label=\"{}\"{fill}];", dot_escape(&p.label));
            }
            for (i, l) in s.lines.iter().enumerate() {
                let _ = writeln!(out, "  l{i} [shape=point];");
                for &j in l {
                    let _ = writeln!(out, "  l{i} -- p{j};");
                }
            }
            out.push_str("}\n");
        }
    }
    out
}
