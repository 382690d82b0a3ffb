use serde::{Deserialize, Serialize};

use crate::circuit::LocationType;

pub const ALPHA_FORMAT: &str = "knill2d.alpha";

const REFERENCE: &str = include_str!("../../data/v1/alpha_reference.json");

/// Malignant-pair counts by location type, upper triangular.
///
/// Row `i` holds entries `(i, i) ..= (i, 7)` with types numbered 1..=7 in
/// [`LocationType::ALL`] order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaMatrix {
    pub upper: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaDiff {
    pub i: usize,
    pub j: usize,
    pub counted: u64,
    pub reference: u64,
}

#[derive(Deserialize)]
struct AlphaDoc {
    format: String,
    upper: Vec<Vec<u64>>,
}

impl Default for AlphaMatrix {
    fn default() -> AlphaMatrix {
        AlphaMatrix::zero()
    }
}

impl AlphaMatrix {
    pub fn zero() -> AlphaMatrix {
        AlphaMatrix { upper: (0..7).map(|i| vec![0; 7 - i]).collect() }
    }

    /// Published counts for the 5x5 CNOT exRec.
    pub fn reference() -> AlphaMatrix {
        AlphaMatrix::from_json(REFERENCE).expect("bundled reference parses")
    }

    pub fn from_json(text: &str) -> Result<AlphaMatrix, String> {
        let doc: AlphaDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if doc.format != ALPHA_FORMAT {
            return Err(format!("unexpected format {:?}", doc.format));
        }
        let m = AlphaMatrix { upper: doc.upper };
        m.check_shape()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let labels: Vec<&str> = LocationType::ALL.iter().map(|t| t.label()).collect();
        let v = serde_json::json!({
            "format": ALPHA_FORMAT,
            "version": 1,
            "location_types": labels,
            "upper": self.upper,
        });
        serde_json::to_string_pretty(&v).expect("alpha serializes")
    }

    fn check_shape(&self) -> Result<(), String> {
        let ok = self.upper.len() == 7 && self.upper.iter().enumerate().all(|(i, r)| r.len() == 7 - i);
        if ok {
            Ok(())
        } else {
            Err("alpha must have rows of length 7, 6, ..., 1".into())
        }
    }

    /// Entry for 1-based types `i`, `j` in either order.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.upper[a - 1][b - a]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut u64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        &mut self.upper[a - 1][b - a]
    }

    pub fn total(&self) -> u64 {
        self.upper.iter().flatten().sum()
    }

    pub fn add(&mut self, other: &AlphaMatrix) {
        for (r, o) in self.upper.iter_mut().zip(&other.upper) {
            for (a, b) in r.iter_mut().zip(o) {
                *a += b;
            }
        }
    }

    /// Entries where `self` and `other` differ, as (i, j, self, other).
    pub fn diff(&self, other: &AlphaMatrix) -> Vec<AlphaDiff> {
        let mut out = Vec::new();
        for i in 1..=7 {
            for j in i..=7 {
                let (a, b) = (self.get(i, j), other.get(i, j));
                if a != b {
                    out.push(AlphaDiff { i, j, counted: a, reference: b });
                }
            }
        }
        out
    }

    /// Fixed-width text rendering, one row per line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.upper.iter().enumerate() {
            s.push_str(&" ".repeat(6 * i));
            for v in row {
                s.push_str(&format!("{v:>6}"));
            }
            s.push('\n');
        }
        s
    }
}
