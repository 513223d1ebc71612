//! JSON form of a reduction.

use std::collections::BTreeMap;

use fasncl_core::fs::{Configuration, FasInstance};
use fasncl_core::ncl::NclJson;
use fasncl_gadgets::{Color, GadgetKind};
use serde::{Deserialize, Serialize};

use crate::ReductionArtifact;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub kind: GadgetKind,
    pub locations: [u32; 2],
    /// `[edge gadget location, vertex gadget location]` for ports 0 and 1.
    pub ports: [[u32; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub kind: GadgetKind,
    pub locations: [u32; 2],
    /// NCL edge on each gadget port.
    pub port_edges: [usize; 3],
}

/// `{ "fas", "sigma", "sigma_prime", "colors", "edge_map", "vertex_map",
/// "ncl" }`. Location ranges are half-open `[start, end)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionBundle {
    pub fas: FasInstance,
    pub sigma: Configuration,
    pub sigma_prime: Configuration,
    pub colors: Vec<Color>,
    pub edge_map: BTreeMap<usize, EdgeEntry>,
    pub vertex_map: BTreeMap<u32, VertexEntry>,
    pub ncl: NclJson,
}

impl ReductionArtifact {
    pub fn to_bundle(&self) -> ReductionBundle {
        let mut ncl = self.ncl.to_json();
        ncl.orientation_from = Some(self.from.to_bits());
        ncl.orientation_to = Some(self.to.to_bits());
        ReductionBundle {
            fas: self.fas.clone(),
            sigma: self.sigma.clone(),
            sigma_prime: self.sigma_prime.clone(),
            colors: self.colors.clone(),
            edge_map: self
                .edge_map
                .iter()
                .map(|e| {
                    let ports = e.port_links.map(|(a, b)| [a, b]);
                    (e.edge, EdgeEntry { kind: e.kind, locations: [e.locations.start, e.locations.end], ports })
                })
                .collect(),
            vertex_map: self
                .vertex_map
                .iter()
                .map(|v| {
                    let entry = VertexEntry {
                        kind: v.kind,
                        locations: [v.locations.start, v.locations.end],
                        port_edges: v.port_edges,
                    };
                    (v.vertex, entry)
                })
                .collect(),
            ncl,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_bundle()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use crate::reduce;
    use crate::tests::triple_pair;
    use fasncl_core::ncl::Orientation;

    #[test]
    fn bundle_shape() {
        let f = Orientation::from_lr("LLR").unwrap();
        let t = Orientation::from_lr("RRL").unwrap();
        let art = reduce(&triple_pair(), &f, &t).unwrap();
        let v: serde_json::Value = serde_json::from_str(&art.to_json_string()).unwrap();
        for key in ["fas", "sigma", "sigma_prime", "colors", "edge_map", "vertex_map"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["fas"]["X"]["order"], 64);
        assert_eq!(v["edge_map"]["1"]["locations"], serde_json::json!([18, 36]));
        assert_eq!(v["vertex_map"]["0"]["kind"], "OR_VERTEX");
        assert_eq!(v["colors"][0], "GREEN");
        // Identical inputs give identical bytes.
        assert_eq!(art.to_json_string(), reduce(&triple_pair(), &f, &t).unwrap().to_json_string());
    }
}
