//! Generation and verification of Hadamard matrices in `{0,1}` presentation.
//!
//! A normalized Hadamard matrix of order `n = m + 1` (first row and column all
//! `+1`) is stored through its `m x m` lower-right block, with `-1 -> 1` and
//! `+1 -> 0`. Such a block is a Hadamard matrix in `{0,1}` presentation iff
//! every row has `2q` ones and every two rows share `q` ones, `m = 4q - 1`.
//!
//! Matrices are built one row at a time. Each row is stored as a group list:
//! the columns are partitioned by their history in the rows above, and a row
//! only records how many ones it places in each part. The constraints on the
//! next row are then linear equations in those counts ([`solver`]), and the
//! [`generator`] walks their solutions depth first.

pub mod error;
pub mod generator;
pub mod gram;
pub mod matrix;
pub mod oracle;
pub mod partition;
pub mod presentation;
pub mod samples;
pub mod solver;

pub use error::{Error, Result};
pub use generator::{
    child_row, generate, generate_parallel, initial_rows, CountSink, FnSink, GenConfig,
    MatrixSink, Outcome,
};
pub use gram::{gram_cols, gram_rows, is_hadamard_zo, is_hadamard_zo_by_columns, GramMatrix, GramTarget};
pub use matrix::{dot, validate_order, BitMatrix, SearchParams, SignMatrix};
pub use partition::{
    canonicalize, decode_matrix, decode_row, encode_matrix, encode_row, Group, GroupList,
    PartitionMatrix,
};
pub use presentation::{
    is_normalized, normalize, pm_from_zo, verify_sign_hadamard, verify_sign_hadamard_columns,
    zo_from_pm,
};
pub use solver::{build_system, enumerate_solutions, Equation, RowSystem, Solutions};
