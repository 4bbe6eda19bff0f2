use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// How a zero was located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "line-scan")]
    LineScan,
    #[serde(rename = "winding")]
    Winding,
    #[serde(rename = "winding+polish")]
    WindingPolish,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::LineScan => "line-scan",
            Method::Winding => "winding",
            Method::WindingPolish => "winding+polish",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "line-scan" => Some(Method::LineScan),
            "winding" => Some(Method::Winding),
            "winding+polish" => Some(Method::WindingPolish),
            _ => None,
        }
    }
}

/// A located zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub position: Complex64,
    pub multiplicity: usize,
    pub on_line: bool,
    pub method: Method,
    pub residual: f64,
    /// False when the value at the zero could not be separated from the
    /// quadrature noise floor.
    pub trusted: bool,
}

impl ZeroRecord {
    pub fn new(position: Complex64, multiplicity: usize, method: Method, residual: f64, line_tol: f64) -> Self {
        Self {
            position,
            multiplicity,
            on_line: position.re.abs() <= line_tol,
            method,
            residual,
            trusted: true,
        }
    }
}

/// Deterministic order: by imaginary part, then real part.
pub fn sort_records(records: &mut [ZeroRecord]) {
    records.sort_by(|a, b| {
        a.position
            .im
            .total_cmp(&b.position.im)
            .then(a.position.re.total_cmp(&b.position.re))
    });
}

/// Zero records for isolated clusters; polished positions are tagged
/// `winding+polish`.
pub fn records_from_clusters(clusters: &[super::Cluster], line_tol: f64) -> Vec<ZeroRecord> {
    clusters
        .iter()
        .map(|c| {
            let method = if c.polished {
                Method::WindingPolish
            } else {
                Method::Winding
            };
            ZeroRecord::new(c.position, c.count, method, c.residual, line_tol)
        })
        .collect()
}
