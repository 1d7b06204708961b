//! Serializable report shapes for the command-line front end. Scalars are
//! rendered as exact text, so output is deterministic byte for byte.

use serde::Serialize;

use crate::classify::{Classification, Params};
use crate::graph::{EnrichedGraph, ProximityGraph};
use crate::hompoly::HomPoly;
use crate::lengths::{DecompositionReport, HeightReport, LengthFacts};
use crate::maps::{BasePointTree, CremonaMap};
use crate::proj::ProjAut;
use crate::scalar::Scalar;

fn names(params: &Params) -> Vec<&'static str> {
    match params {
        Params::None => vec![],
        Params::Gamma(_) => vec!["g"],
        Params::AB(_, _) => vec!["a", "b"],
    }
}

pub fn render_params(params: &Params) -> serde_json::Value {
    match params {
        Params::None => serde_json::Value::Null,
        Params::Gamma(g) => serde_json::json!({ "g": g.render(&["g"]) }),
        Params::AB(a, b) => serde_json::json!({
            "a": a.render(&["a", "b"]),
            "b": b.render(&["a", "b"]),
        }),
    }
}

fn render_aut(aut: &ProjAut, names: &[&str]) -> Vec<Vec<String>> {
    aut.matrix()
        .rows
        .iter()
        .map(|r| r.iter().map(|c| c.render(names)).collect())
        .collect()
}

#[derive(Serialize)]
pub struct TreeEntryReport {
    pub point: String,
    pub mult: u32,
    pub proximate_to: Vec<usize>,
    pub satellite: bool,
}

#[derive(Serialize)]
pub struct TreeReport {
    pub degree: u32,
    pub entries: Vec<TreeEntryReport>,
    pub mult_sum: u32,
    pub mult_square_sum: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<LineReport>,
}

#[derive(Serialize)]
pub struct LineReport {
    pub equation: String,
    pub members: Vec<usize>,
}

pub fn tree_report(tree: &BasePointTree, names: &[&str]) -> TreeReport {
    TreeReport {
        degree: tree.degree,
        entries: tree
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| TreeEntryReport {
                point: e.point.render(names),
                mult: e.mult,
                proximate_to: tree
                    .arcs
                    .iter()
                    .filter(|(from, _)| *from == i)
                    .map(|(_, to)| *to)
                    .collect(),
                satellite: tree.satellites.iter().any(|(from, _)| *from == i),
            })
            .collect(),
        mult_sum: tree.mult_sum(),
        mult_square_sum: tree.mult_square_sum(),
        line: tree.line.as_ref().map(|l| LineReport {
            equation: l.line.render(names),
            members: l.members.to_vec(),
        }),
    }
}

#[derive(Serialize)]
pub struct GraphReport {
    pub weights: Vec<u32>,
    pub arcs: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog_row: Option<usize>,
}

pub fn graph_report(g: &EnrichedGraph, row: Option<usize>) -> GraphReport {
    GraphReport {
        weights: g.graph.weights.clone(),
        arcs: g.graph.arcs.iter().copied().collect(),
        line: g.line.as_ref().map(|l| l.iter().copied().collect()),
        catalog_row: row,
    }
}

pub fn graph_dot(g: &EnrichedGraph) -> String {
    let mut out = String::from("digraph proximity {\n");
    for (i, w) in g.graph.weights.iter().enumerate() {
        let on_line = g.line.as_ref().map(|l| l.contains(&i)).unwrap_or(false);
        let style = if on_line { ", style=dashed" } else { "" };
        out.push_str(&format!("  v{i} [label=\"{w}\"{style}];\n"));
    }
    for (a, b) in &g.graph.arcs {
        out.push_str(&format!("  v{a} -> v{b};\n"));
    }
    if let Some(line) = &g.line {
        let members: Vec<String> = line.iter().map(|v| format!("v{v}")).collect();
        out.push_str(&format!(
            "  // line through {}\n",
            members.join(", ")
        ));
    }
    out.push_str("}\n");
    out
}

pub fn plain_graph_dot(g: &ProximityGraph) -> String {
    graph_dot(&EnrichedGraph {
        graph: g.clone(),
        line: None,
    })
}

#[derive(Serialize)]
pub struct ClassificationReport {
    pub type_id: usize,
    /// catalog row of the enriched proximity graph (equals the type id)
    pub graph_row: usize,
    pub parameters: serde_json::Value,
    pub canonical_parameters: serde_json::Value,
    pub orbit: Vec<serde_json::Value>,
    pub witness_pre: Vec<Vec<String>>,
    pub witness_post: Vec<Vec<String>>,
    pub catalog_map: String,
    pub oq: u32,
    pub q: u32,
    pub inverse_type: usize,
}

pub fn classification_report(c: &Classification) -> crate::error::Result<ClassificationReport> {
    let rec = crate::catalog::record(c.type_id);
    let nm = names(&c.params);
    let canonical = crate::classify::canonical_params(c.type_id, &c.params)?;
    let orbit = crate::classify::param_orbit(c.type_id, &c.params)?
        .iter()
        .map(render_params)
        .collect();
    Ok(ClassificationReport {
        type_id: c.type_id,
        graph_row: c.type_id,
        parameters: render_params(&c.params),
        canonical_parameters: render_params(&canonical),
        orbit,
        witness_pre: render_aut(&c.pre, &nm),
        witness_post: render_aut(&c.post, &nm),
        catalog_map: c.canonical.render(&nm),
        oq: rec.oq,
        q: rec.q,
        inverse_type: rec.inverse,
    })
}

#[derive(Serialize)]
pub struct DecompReportJson {
    pub matches: bool,
    pub composed: String,
    pub partial_degrees: Vec<u32>,
    pub quadratic_factors: usize,
    pub ordinary: usize,
    pub second_kind: usize,
    pub third_kind: usize,
}

pub fn decomposition_report(r: &DecompositionReport, names: &[&str]) -> DecompReportJson {
    DecompReportJson {
        matches: r.matches,
        composed: r.composed.render(names),
        partial_degrees: r.partial_degrees.clone(),
        quadratic_factors: r.quadratic_factors,
        ordinary: r.ordinary,
        second_kind: r.second_kind,
        third_kind: r.third_kind,
    }
}

#[derive(Serialize)]
pub struct HeightsJson {
    pub heights: Vec<(String, u32)>,
    pub max_height: u32,
    pub loads: Vec<(String, u32)>,
}

pub fn heights_report(h: &HeightReport, names: &[&str]) -> HeightsJson {
    HeightsJson {
        heights: h
            .heights
            .iter()
            .map(|(p, v)| (p.render(names), *v))
            .collect(),
        max_height: h.max_height,
        loads: h.loads.iter().map(|(p, v)| (p.render(names), *v)).collect(),
    }
}

#[derive(Serialize)]
pub struct LengthFactsJson {
    pub type_id: usize,
    pub q: u32,
    pub oq: u32,
    pub lower_bound: u32,
    pub bound_is_sharp: bool,
}

pub fn length_facts_report(f: &LengthFacts) -> LengthFactsJson {
    LengthFactsJson {
        type_id: f.type_id,
        q: f.q,
        oq: f.oq,
        lower_bound: f.lower_bound,
        bound_is_sharp: f.bound_is_sharp,
    }
}

pub fn map_text(m: &CremonaMap, names: &[&str]) -> String {
    m.render(names)
}

pub fn poly_text(p: &HomPoly, names: &[&str]) -> String {
    p.render(names)
}

pub fn scalar_text(s: &Scalar, names: &[&str]) -> String {
    s.render(names)
}
