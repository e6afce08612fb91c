//! Finite groups, modules over them and their cohomology through bar
//! cochains.

mod bar;
mod group;
mod module;

pub use bar::{bar_complex, bar_differential, derivations, group_cohomology};
pub use group::{all_homomorphisms, FiniteGroup, GroupHom, GroupSpec, HomSpec};
pub use module::{equivariant_maps, restrict_module, GModule, ModuleSpec};

/// Default bound on the group order accepted from files.
pub const DEFAULT_MAX_ORDER: usize = 8;

