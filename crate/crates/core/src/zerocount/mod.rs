//! Zero location and counting: winding numbers over rectangles, recursive
//! root isolation, on-line scanning of C_F, and the counting report.

mod count;
mod isolate;
mod record;
mod rect;
mod winding;

pub use count::{
    classify_multiplicity, classify_multiplicity_with, count_report, ki_count, line_scan, line_scan_zeros,
    strip_count, CountOptions, CountReport, LineScan,
};
pub use isolate::{isolate_in, isolate_zeros, newton_polish, Cluster, IsolateOptions};
pub use record::{records_from_clusters, sort_records, Method, ZeroRecord};
pub use rect::Rectangle;
pub use winding::{boundary_winding, winding_count, ComplexFunction, Exact, Sample, WindingOptions, WindingResult};
