//! The fixture corpus: every example surface, addressed by builder spec.

use crate::diagram::RibbonDiagram;
use crate::error::Result;
use crate::spec::parse_builder;

pub const SPECS: &[&str] = &[
    "disk",
    "annulus",
    "bands:1,1",
    "bands:2,0",
    "bands:0,2",
    "looped:2",
    "looped:3",
    "looped:4",
    "torus:1",
    "torus:2",
    "torus:3",
    "hopf",
    "rings3",
    "loops:2,3;1",
    "loops:2,4;0",
];

/// File stem used when the corpus is written out as `.srd` files.
pub fn file_stem(spec: &str) -> String {
    spec.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

pub fn diagrams() -> Result<Vec<(&'static str, RibbonDiagram)>> {
    SPECS.iter().map(|&s| Ok((s, parse_builder(s)?))).collect()
}
