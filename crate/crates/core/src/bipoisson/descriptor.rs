//! JSON descriptors for charts and bivectors: an entry list with row, column
//! and polynomial string per entry.

use serde::{Deserialize, Serialize};

use crate::exact::{parse_poly, MultiPoly, PolyMatrix};

use super::{BipoissonError, Chart, PolyBivector};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChartDescriptor {
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryDescriptor {
    pub row: usize,
    pub col: usize,
    pub poly: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BivectorDescriptor {
    pub chart: ChartDescriptor,
    /// Upper-triangle entries; the antisymmetric completion is implied.
    pub entries: Vec<EntryDescriptor>,
}

impl BivectorDescriptor {
    pub fn to_bivector(&self) -> Result<PolyBivector, BipoissonError> {
        let chart = Chart::new(self.chart.coords.clone())?;
        let n = chart.dim();
        let mut entries = vec![MultiPoly::from_int(0); n * n];
        for e in &self.entries {
            if e.row >= n || e.col >= n {
                return Err(BipoissonError::BadPoint { expected: n, got: e.row.max(e.col) });
            }
            let p = parse_poly(&e.poly)?;
            entries[e.row * n + e.col] = entries[e.row * n + e.col].add(&p);
            entries[e.col * n + e.row] = entries[e.col * n + e.row].sub(&p);
        }
        PolyBivector::new(chart, PolyMatrix::from_entries(n, n, entries))
    }

    pub fn from_bivector(b: &PolyBivector) -> Self {
        let n = b.chart().dim();
        let mut entries = Vec::new();
        for r in 0..n {
            for c in (r + 1)..n {
                let p = b.comp().get(r, c);
                if !p.is_zero() {
                    entries.push(EntryDescriptor { row: r, col: c, poly: p.to_string() });
                }
            }
        }
        BivectorDescriptor {
            chart: ChartDescriptor { coords: b.chart().coords().to_vec() },
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_roundtrip() {
        let json = r#"{
            "chart": {"coords": ["z1", "u1", "z2", "u2"]},
            "entries": [
                {"row": 0, "col": 1, "poly": "z1"},
                {"row": 2, "col": 3, "poly": "z2"}
            ]
        }"#;
        let desc: BivectorDescriptor = serde_json::from_str(json).unwrap();
        let b = desc.to_bivector().unwrap();
        assert_eq!(b.comp().get(0, 1).to_string(), "z1");
        assert_eq!(b.comp().get(1, 0).to_string(), "-z1");
        let back = BivectorDescriptor::from_bivector(&b);
        let b2 = back.to_bivector().unwrap();
        assert_eq!(b.comp(), b2.comp());
    }
}
