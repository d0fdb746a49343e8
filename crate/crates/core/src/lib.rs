//! Rack-module enhanced counting invariants of classical and virtual links.
//!
//! The pipeline: a finite [`rack::Rack`] colors the arcs of a
//! [`diagram::LinkDiagram`] ([`coloring`]), a [`rackmodule::ModuleStructure`]
//! on ℤₙ turns each coloring into a linear system ([`enhanced`]), and the
//! solution counts over all framings give [`enhanced::InvariantPolynomial`].
//! [`census`] runs this over the embedded knot and link tables.

pub mod census;
pub mod coloring;
pub mod diagram;
pub mod enhanced;
pub mod modmath;
pub mod rack;
pub mod rackmodule;

pub use coloring::{enumerate_colorings, integral_counting_invariant, RackColoring};
pub use diagram::{LinkDiagram, WritheVector};
pub use enhanced::{dim_enhanced_invariant, enhanced_invariant, enhanced_multiset, InvariantPolynomial};
pub use modmath::{count_solutions_mod_n, smith_normal_form, IntMatrix};
pub use rack::Rack;
pub use rackmodule::{search_module_structures, ModuleStructure};
