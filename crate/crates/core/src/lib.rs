//! Invariants of surface ribbons: fundamental heaps, heap colorings and
//! the tensor-valued 2-cocycle invariant.

pub mod abelian;
pub mod checks;
pub mod cochain;
pub mod coloring;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod group;
pub mod heap;
pub mod invariant;
pub mod moves;
pub mod presentation;
pub mod spec;

pub use abelian::AbelianGroup;
pub use cochain::Cochain2;
pub use diagram::RibbonDiagram;
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use heap::{group_heap, FiniteHeap, TernaryOp};
pub use presentation::GroupPresentation;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/colorings.md")]
    mod colorings {}
    #[doc = include_str!("../../../book/src/invariant.md")]
    mod invariant {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/moves.md")]
    mod moves {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
