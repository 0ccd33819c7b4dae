//! Browser bindings. Each exported function takes plain strings and returns a
//! JSON document for the page script to render; the same functions are
//! callable natively, which is how they are tested.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use rowspace::families::{build, Family, FamilySpec};
use rowspace::linalg::{adjacency_matrix, format_rational};
use rowspace::witness::{find_witness, lift_witness, SearchOptions, Witness};
use rowspace::{parse_graph6, write_graph6, Diameter, Graph, MultiplicityVector};

/// Keeps the in-browser brute-force fallback interactive.
const BROWSER_ORACLE_LIMIT: usize = 14;

#[derive(Debug, Serialize)]
pub struct WitnessView {
    pub strategy: String,
    pub vector: String,
    pub certificate: Vec<String>,
}

impl From<&Witness> for WitnessView {
    fn from(w: &Witness) -> Self {
        Self {
            strategy: w.strategy.to_string(),
            vector: w.vector_string(),
            certificate: w.certificate.coefficients.iter().map(format_rational).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GraphView {
    pub graph6: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub diameter: Diameter,
    pub rank: usize,
    pub reduced: bool,
    pub witness: Option<WitnessView>,
    /// Why each strategy tried before the successful one did not apply.
    pub rejected: Vec<String>,
}

fn view(g: &Graph) -> GraphView {
    let mut v = GraphView {
        graph6: write_graph6(g),
        n: g.n(),
        edges: g.edges().collect(),
        diameter: g.diameter(),
        rank: adjacency_matrix(g).rank(),
        reduced: g.is_reduced(),
        witness: None,
        rejected: Vec::new(),
    };
    match find_witness(g, &SearchOptions::with_oracle_limit(BROWSER_ORACLE_LIMIT)) {
        Ok(r) => {
            v.witness = r.witness.as_ref().map(WitnessView::from);
            v.rejected = r.rejected.iter().map(|(s, why)| format!("{s}: {why}")).collect();
        }
        Err(e) => v.rejected.push(e.to_string()),
    }
    v
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Builds a named family member and searches it for a witness.
pub fn family_json(name: &str, size: Option<usize>) -> Result<String, String> {
    let family: Family = name.parse().map_err(|e: rowspace::Error| e.to_string())?;
    let g = build(&FamilySpec { family, size }).map_err(|e| e.to_string())?;
    to_json(&view(&g))
}

/// Decodes a graph6 line and searches it for a witness.
pub fn analyze_json(graph6: &str) -> Result<String, String> {
    let g = parse_graph6(graph6.trim()).map_err(|e| e.to_string())?;
    to_json(&view(&g))
}

#[derive(Debug, Serialize)]
pub struct BlowUpView {
    pub base: GraphView,
    pub blown: GraphView,
    pub origin: Vec<usize>,
    /// The base witness carried over to the blow-up.
    pub lifted: Option<WitnessView>,
}

/// Replaces vertex `i` of the graph by `m[i]` independent clones and lifts
/// the base witness. `multiplicities` is comma- or space-separated.
pub fn blow_up_json(graph6: &str, multiplicities: &str) -> Result<String, String> {
    let g = parse_graph6(graph6.trim()).map_err(|e| e.to_string())?;
    let m = multiplicities
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("not a multiplicity: {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    let m = MultiplicityVector::new(m).map_err(|e| e.to_string())?;
    if m.total() > 24 {
        return Err(format!("blow-up has {} vertices; the demo allows at most 24", m.total()));
    }
    let blown = g.multiply_vertices(&m).map_err(|e| e.to_string())?;
    let base = view(&g);
    let lifted = match find_witness(&g, &SearchOptions::with_oracle_limit(BROWSER_ORACLE_LIMIT)) {
        Ok(r) => match r.witness {
            Some(w) => lift_witness(&g, &m, &w)
                .map_err(|e| e.to_string())?
                .witness
                .as_ref()
                .map(WitnessView::from),
            None => None,
        },
        Err(_) => None,
    };
    to_json(&BlowUpView {
        base,
        blown: view(&blown),
        origin: m.origin_map(),
        lifted,
    })
}

/// Family names accepted by [`family_json`].
pub fn family_names() -> Vec<&'static str> {
    Family::ALL.iter().map(|f| f.name()).collect()
}

#[wasm_bindgen]
pub fn explore_family(name: &str, size: Option<u32>) -> Result<String, JsValue> {
    family_json(name, size.map(|s| s as usize)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(graph6: &str) -> Result<String, JsValue> {
    analyze_json(graph6).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn blow_up(graph6: &str, multiplicities: &str) -> Result<String, JsValue> {
    blow_up_json(graph6, multiplicities).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn families() -> String {
    serde_json::to_string(&family_names()).unwrap_or_default()
}
