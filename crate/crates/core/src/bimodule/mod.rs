//! Products, spans and quotients of the bimodule construction.

pub mod checks;
pub mod products;
pub mod span;

pub use products::{ats_element, circ, commutator_term, l_term, phi, reduction_element, star_left, star_right};
pub use span::{
    ats_span, generators_at, quotient_scan, Generator, GeneratorFamily, Membership, ProductParams, QuotientReport,
    QuotientSpan, ScanRow, SpanConfig,
};
