//! Zero-mode actions on graded pieces, balanced maps out of `A_n(M)`, and
//! fusion rules.

mod action;
pub mod checks;
mod hom;

pub use action::{nonzero_pieces, o_matrix, Piece};
pub use hom::{EngineConfig, FusionCell, FusionEngine, HomSpace, ModuleQuotient};
