//! The filter cascade: cases, alignment, visibility, combination, the
//! permutation tests and certification.

pub mod cases;
pub mod filters;
pub mod fused;
pub mod window;

pub use cases::{enumerate_cases, BranchingCase, Side, SideData, SideOption};
pub use filters::{combine, reduce_and_certify, slope_test, vertical_check, Certificate};
pub use fused::fused_visible_lists;
pub use window::{align, window_filter, window_monotone_prune, AlignedCandidate, Visible};
