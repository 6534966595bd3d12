//! Scale-up: parameter calculus between levels, exponent feasibility, and
//! the structural operators that turn one level's walls and traps into the
//! next.

pub mod cleanness;
pub mod compound;
pub mod diagonal;
pub mod exponents;
pub mod finish;
pub mod params;
pub mod ranks;
pub mod traps;

pub use cleanness::{promote_cleanness, promote_trap_cleanness};
pub use compound::{compound_walls, distance_index, CompoundType, CompoundWall};
pub use diagonal::{diagonal_distance, in_channel, RationalPoint};
pub use exponents::{mutation_list, verify_exponents, Constraint, ConstraintCheck, ExponentReport, ExponentTuple};
pub use finish::{finish_step, LevelStructures};
pub use params::{level_params, level_table, LevelTable, MazeryParams, ParamConfig};
pub use ranks::{emerging_rank, hole_prob, rank_bound, rank_prob};
pub use traps::{
    designate_emerging_walls, detect_correlated_event, detect_emerging_barrier, detect_missing_hole_event,
    estimate_missing_hole_trap, is_emerging_prewall, EmergingType, MissingHoleSetting, TrapEstimate,
};
