//! Numerical spectral analysis of the characteristic polynomial: all complex
//! roots, a certified dominant root, the dominance structure on the spectral
//! circle, and the limit of `a_n / rho^n`.

mod dominant;
mod perron;
mod profile;
mod roots;

pub use dominant::{
    certified_root, certified_root_with, dominant_coefficient_bracket, dominant_root, dominant_root_with,
    IntervalOptions, RootInterval,
};
pub use perron::{
    closed_form_alpha, dominant_coefficient_poly, dominant_coefficient_vanishes, left_eigenvector_polys, perron_limit,
    perron_limit_with, PerronLimit, PerronOptions,
};
pub use profile::{
    check_condition2, condition2_test, dominance_check, spectral_profile, Condition2, Dominance, SpectralProfile,
};
pub use roots::{all_roots, all_roots_refined, all_roots_with, RootCluster, RootOptions, RootSet, RootStatus};
