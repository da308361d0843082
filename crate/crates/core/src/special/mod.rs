//! Evaluators for specific languages over `{a, b}` (letter 0 is `a`, letter 1
//! is `b`) and the two general linear-space interval-merge evaluators.

mod aba;
mod ababa;
mod ababab;
mod abstar;
mod bitpacked;
mod firstlast;
mod interval;

pub use aba::AbaEvaluator;
pub use ababa::AbabaEvaluator;
pub use ababab::AbababEvaluator;
pub use abstar::AbstarEvaluator;
pub use bitpacked::{carry_left_endpoint, scan_left_endpoint, BitpackedEvaluator};
pub use firstlast::FirstLastEvaluator;
pub use interval::IntervalMergeEvaluator;

pub(crate) const A: usize = 0;
pub(crate) const B: usize = 1;
