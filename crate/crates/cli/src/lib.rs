//! Library side of `klein-forge`: the golden-value table, reports, the
//! verification suites and SVG rendering.

pub mod golden;
pub mod report;
pub mod suites;
pub mod svg;
