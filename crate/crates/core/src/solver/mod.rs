//! Everything about individual n: solution enumeration (fast path plus two
//! independent oracles), the congruence-side counts, and the elementary
//! transformations connecting solutions across different n.

mod enumerate;
mod oracle;
mod solution;
mod transform;

pub use enumerate::{count_f, enumerate_solutions, k_profile};
pub use oracle::{
    congruence_solutions, oracle_congruence, oracle_congruence_with_cap, oracle_quadruple,
    oracle_quadruple_with_cap, rho_counts, BoundaryFamily, CongruenceSolutions, RhoCounts,
    ORACLE_CONGRUENCE_CAP, ORACLE_QUADRUPLE_CAP,
};
pub use solution::{KProfile, Solution, SolutionSet};
pub use transform::{apply_elementary, reduce_chain};
