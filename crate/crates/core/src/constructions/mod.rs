//! Theorem-level factories: evaluation families, hull-targeted TGRS codes,
//! and the Roth-Lempel extension pipeline.

pub mod families;
pub mod hull_tgrs;
pub mod roth_lempel;

pub use families::{build_eval_family, solve_multipliers, EvalFamily, FamilyKind, FamilyParams};
pub use hull_tgrs::{build_hull_tgrs, EtaPolicy, HullOptions, HullRecipe, HullTgrs};
pub use roth_lempel::{
    delta_profile, family_limits, flex_base, k_limits, k_limits_roots, rl_extend, rl_flexible, scale_to_hull,
    DeltaProfile, FlexBase, FlexLength, FlexibleCode, KLimits, LambdaPolicy, RlExtension,
};
