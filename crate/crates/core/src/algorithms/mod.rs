//! The sorting and tree-building programs, their brute-force oracles, and the
//! relational instances the certifiers run on.

mod instances;
mod minheight;
mod repchanger;
mod sorting;

pub use instances::{
    BagCarrier, MergesortInstance, MinHeightInstance, QuicksortInstance, QuicksortMutant, RepChangerInstance,
};
pub use minheight::{
    add_leaf, add_leaf_naive, all_shape_heights, brute_min_height, build_min_height, build_min_height_spine, costs_leq,
    height, lspinecosts, minsplit, roll, troll, unroll, Spine, BRUTE_MAX_LEN,
};
pub use repchanger::{rep_changer, sat_add, sum_sat, SUM_CAP};
pub use sorting::{
    all_lists, bag, balanced_tree, format_list, merge, mergesort, mergesort_traced, oracle_sort, ordered, permutations,
    pivot_head_split, quicksort, quicksort_tree, s_pred, s_pred_without_left_bound, split_halves, tips, Bag, LTree,
    PivotSplit, Tree,
};

use crate::finrel::RelError;
use crate::inductive::FoldError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgoError {
    #[error("{0} needs a non-empty input")]
    EmptyInput(&'static str),
    #[error("{what} needs at least {min} elements, got {len}")]
    TooShort { what: &'static str, len: usize, min: usize },
    #[error("{what} accepts at most {max} elements, got {len}")]
    TooLong { what: &'static str, len: usize, max: usize },
    #[error("merge needs ordered inputs, got {0}")]
    Unordered(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("element {elem} is outside the alphabet 0..{alphabet}")]
    Alphabet { elem: usize, alphabet: usize },
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Fold(#[from] FoldError),
}
