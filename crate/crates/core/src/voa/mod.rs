//! Virasoro vertex operator algebras and their highest-weight modules.

pub mod key;
pub mod model;
mod ordering;
pub mod space;
pub mod vector;

pub use key::{partition_count, partitions, PbwKey};
pub use model::{kac_table, kac_weight, minimal_central_charge, Model, ModelSpec, ModuleSpec, ModuleSummary};
pub use space::{GramForm, QuotientMode, Space, SpaceKind};
pub use vector::GradedVector;
