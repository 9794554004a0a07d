//! JSON graph files.
//!
//! ```json
//! {"n": 2, "edges": [[0, 1]],
//!  "weights": [{"from": 0, "to": 1, "re": 1.0, "im": 0.0},
//!              {"from": 1, "to": 0, "re": 1.0, "im": 0.0}],
//!  "family": {"name": "hypercube", "params": {"d": 1}, "pair": [0, 1]}}
//! ```
//!
//! `weights` lists `w_ab` per ordered pair and may be omitted, in which case
//! `w_ab = 1/sqrt(deg a)`.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, WeightMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub from: usize,
    pub to: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyTag {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyTag>,
}

impl GraphFile {
    pub fn from_weights(w: &WeightMatrix, family: Option<FamilyTag>) -> Self {
        let g = w.graph();
        let mut weights = Vec::new();
        for a in 0..g.n() {
            for &b in g.neighbors(a) {
                let z = w.get(a, b);
                weights.push(WeightEntry {
                    from: a,
                    to: b,
                    re: z.re,
                    im: z.im,
                });
            }
        }
        Self {
            n: g.n(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            weights: Some(weights),
            family,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn weight_matrix(&self) -> Result<WeightMatrix> {
        let g = self.graph()?;
        match &self.weights {
            None => Ok(WeightMatrix::uniform(g)),
            Some(ws) => WeightMatrix::from_entries(
                g,
                ws.iter()
                    .map(|e| ((e.from, e.to), Complex64::new(e.re, e.im))),
            ),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph files always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Format(format!("invalid graph file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| Error::Format(format!("cannot write {}: {e}", path.display())))
    }
}

/// Serializes a complex number as `{"re": x, "im": y}`.
pub mod re_im {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ReIm { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let ReIm { re, im } = ReIm::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}
