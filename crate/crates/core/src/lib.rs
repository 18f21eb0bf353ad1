//! Signed permutations, cyclic signed permutations, and a descent-preserving
//! transfer between them.
//!
//! The crate is organised bottom-up: [`perm`] holds the group algebra,
//! [`cycles`] the cycle decomposition, [`stats`] the descent statistics, and
//! [`transfer`] the maps between cyclic elements of degree `n + 1` and all
//! elements of degree `n`.

pub mod classic;
pub mod colored;
pub mod cycles;
pub mod enumerate;
pub mod error;
pub mod lab;
pub mod perm;
pub mod rng;
pub mod stats;
pub mod transfer;

pub use classic::{phi_classic, phi_classic_instrumented};
pub use colored::{colored_phi, colored_psi, ColoredPermutation, ColoredStats};
pub use cycles::{
    concat_with_sentinel, from_cycles, is_cyclic, rotate_cycle_to_end, to_canonical_cycles,
    CycleNotation, SignedCycle,
};
pub use enumerate::{
    cardinality, iterate, iterate_range, rank, sample, sample_many, shard_range, unrank, DomainKind,
    DomainSpec, Element,
};
pub use error::{Error, Result};
pub use lab::{
    exact_distribution, exact_distributions, exact_moments, normality_diagnostics, refined_descent_table,
    sample_values, theoretical_moments, DistributionTable, MomentReport, NormalityReport, RefinedTable,
};
pub use perm::{ParityInfo, SignedPermutation};
pub use rng::Sampler;
pub use stats::{descent_set, stats, truncated_descent_set, DescentSet, StatRecord, Statistic};
pub use transfer::{
    capital_phi, capital_psi_d, capital_psi_dbar, check_order_swap_properties, left_to_right_maxima,
    p_flag, phi_plus, preimage_quadruple, psi_plus, TransferTrace,
};
