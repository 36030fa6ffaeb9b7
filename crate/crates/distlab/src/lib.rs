//! File formats, verification and reporting around `distlab-core`, plus
//! the `distlab` command-line tool.

pub mod edgelist;
pub mod format;
pub mod report;
pub mod verify;

pub use distlab_core as core;
pub use edgelist::{parse_edge_list, read_edge_list, write_edge_list, EdgeListError};
pub use format::{load_labels, load_tables, save_labels, save_tables, FormatError, LabelHeader};
pub use report::{slope_per_doubling, RunReport, StepStats};
pub use verify::{threads_from_env, verify_all_pairs, VerifyOutcome, Witness};
