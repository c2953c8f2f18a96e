//! Root systems, weight combinatorics and explicit cohomology bounds for
//! Chevalley groups.

pub mod arith;
pub mod bounds;
pub mod config;
pub mod e1oracle;
pub mod error;
pub mod modchar;
pub mod rootsys;
pub mod tables;
pub mod weightcomb;

pub use arith::Rational;
pub use bounds::{ComparisonReport, ThresholdReport, ThresholdTag};
pub use config::Caps;
pub use e1oracle::{
    check_bs_vanishing, check_weight_bounds, dyadic_sharpness, enumerate_tuples, invariant_page, BoundKind,
    ExponentTuple, InvariantPage,
};
pub use error::{Error, Result};
pub use modchar::{combine, graded_power, nilradical_dual_weights, weyl_character, PowerKind, WeightMultiset};
pub use rootsys::{build_root_system, CartanType, Family, FundamentalGroup, Root, RootSystem, Weight};
pub use tables::{emit_table, OutputFormat, TableKind, SCHEMA};
pub use weightcomb::{
    b_invariant, lambda_stats, p_adic_digits, structural_constants, t_invariant, BInvariant, LambdaStats, PAdicDigits,
};
