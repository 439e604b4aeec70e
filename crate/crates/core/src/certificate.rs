//! Colouring certificates and from-scratch re-verification of every
//! certificate kind the library emits.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::detour::tau_of_set;
use crate::error::Result;
use crate::graph::Graph;
use crate::graph6::parse_graph6;
use crate::multiway::verify_detour_coloring;
use crate::partition::PartitionCertificate;
use crate::starcolor::{verify_acyclic_coloring, verify_proper_coloring, verify_star_coloring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringProperty {
    Proper,
    Detour,
    Star,
    Acyclic,
}

/// How a star colouring was obtained.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairSummary {
    /// Bicoloured 4-vertex paths in the pair-partition colouring.
    pub initial_bicolored: usize,
    pub steps: usize,
    /// The repair loop hit its cap and the colouring came from exhaustive
    /// search instead.
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCertificate {
    pub graph6: String,
    /// Order bound for detour colourings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub colors: Vec<usize>,
    pub colors_used: usize,
    pub bound: usize,
    pub property: ColoringProperty,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repair: Option<RepairSummary>,
}

impl ColoringCertificate {
    /// Builds a certificate and runs the property check on it.
    pub fn new(
        g: &Graph,
        colors: Vec<usize>,
        property: ColoringProperty,
        n: Option<usize>,
        bound: usize,
    ) -> Result<Self> {
        let colors_used = colors.iter().collect::<BTreeSet<_>>().len();
        let holds = property_holds(g, &colors, property, n)?;
        Ok(ColoringCertificate {
            graph6: g.to_graph6(),
            n,
            verified: holds && colors_used <= bound,
            colors,
            colors_used,
            bound,
            property,
            repair: None,
        })
    }
}

fn property_holds(
    g: &Graph,
    colors: &[usize],
    property: ColoringProperty,
    n: Option<usize>,
) -> Result<bool> {
    Ok(match property {
        ColoringProperty::Proper => verify_proper_coloring(g, colors),
        ColoringProperty::Detour => verify_detour_coloring(g, colors, n.unwrap_or(1))?,
        ColoringProperty::Star => verify_star_coloring(g, colors),
        ColoringProperty::Acyclic => verify_acyclic_coloring(g, colors),
    })
}

/// Outcome of re-verifying one certificate: `Err` names what failed.
pub type Verdict = std::result::Result<(), String>;

fn graph_of(graph6: &str) -> std::result::Result<Graph, String> {
    parse_graph6(graph6).map_err(|e| format!("graph: {e}"))
}

/// Re-checks a partition certificate against its graph, recomputing every
/// detour order.
pub fn verify_partition_certificate(cert: &PartitionCertificate) -> Verdict {
    let g = graph_of(&cert.graph6)?;
    let (a, b) = (cert.part_a, cert.part_b);
    let all = g.vertices();
    if let Some(v) = a.union(b).difference(all).first() {
        return Err(format!("vertex-range mismatch: vertex {v} is not in a graph of order {}", g.order()));
    }
    if let Some(v) = a.intersection(b).first() {
        return Err(format!("vertex {v} is in both parts"));
    }
    if let Some(v) = all.difference(a.union(b)).first() {
        return Err(format!("vertex {v} is in neither part"));
    }
    let tau = tau_of_set(&g, all).map_err(|e| e.to_string())?;
    if cert.a == 0 || cert.b == 0 || cert.a + cert.b != tau {
        return Err(format!("target ({},{}) does not sum to τ={tau}", cert.a, cert.b));
    }
    let tau_a = tau_of_set(&g, a).map_err(|e| e.to_string())?;
    let tau_b = tau_of_set(&g, b).map_err(|e| e.to_string())?;
    if tau_a > cert.a {
        return Err(format!("bound a violated: τ⟨A⟩={tau_a} > a={}", cert.a));
    }
    if tau_b > cert.b {
        return Err(format!("bound b violated: τ⟨B⟩={tau_b} > b={}", cert.b));
    }
    if (tau_a, tau_b) != (cert.tau_a, cert.tau_b) {
        return Err(format!(
            "recorded (tauA, tauB) = ({}, {}) but recomputed ({tau_a}, {tau_b})",
            cert.tau_a, cert.tau_b
        ));
    }
    Ok(())
}

/// Re-checks a colouring certificate: vertex count, colour count, the
/// claimed bound for the graph's `τ`, and the colouring property.
pub fn verify_coloring_certificate(cert: &ColoringCertificate) -> Verdict {
    let g = graph_of(&cert.graph6)?;
    if cert.colors.len() != g.order() {
        return Err(format!(
            "vertex-range mismatch: {} colours for a graph of order {}",
            cert.colors.len(),
            g.order()
        ));
    }
    let used = cert.colors.iter().collect::<BTreeSet<_>>().len();
    if used != cert.colors_used {
        return Err(format!("colors_used = {} but {used} distinct colours appear", cert.colors_used));
    }
    let tau = if g.order() == 0 { 0 } else { tau_of_set(&g, g.vertices()).map_err(|e| e.to_string())? };
    let expected = match cert.property {
        ColoringProperty::Detour => {
            let n = cert.n.ok_or("detour certificate without n")?;
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            tau.div_ceil(n)
        }
        _ => tau,
    };
    if cert.bound != expected {
        return Err(format!("bound {} does not match the expected {expected}", cert.bound));
    }
    if used > cert.bound {
        return Err(format!("{used} colours exceed the bound {}", cert.bound));
    }
    if !property_holds(&g, &cert.colors, cert.property, cert.n).map_err(|e| e.to_string())? {
        return Err(format!("colouring is not a valid {:?} colouring", cert.property).to_lowercase());
    }
    if !cert.verified {
        return Err("certificate is marked unverified".into());
    }
    Ok(())
}
