//! Orchestration: sharded runs with checkpoints, the exhaustive oracle and
//! text reports.

pub mod artifact;
pub mod oracle;
pub mod report;
pub mod run;

pub use artifact::{Checkpoint, FinalRecord, Stage};
pub use oracle::{oracle_classes, run_oracle};
pub use report::{certify_report, enumerate_report};
pub use run::{run, Mode, RunConfig, RunReport, Unit};
