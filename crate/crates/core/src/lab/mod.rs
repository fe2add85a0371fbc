//! Classification rows, square-free counts, the example catalog, reports
//! and the command-line front end.

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod count;
pub mod report;
pub mod search;

pub use catalog::{run_catalog, CatalogEntry};
pub use classify::{classify, table_consistency, ClassificationRow, Grade};
pub use count::{count_squarefree, witness_for_count, SquarefreeCount};
pub use report::{Format, Report};
