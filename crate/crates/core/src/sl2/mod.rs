//! Characters of principal subspaces of affine sl2: the enumeration
//! oracle, the fermionic and bosonic sums, their recursion, the folding
//! map with its fiber sums, and the cone-contribution lemmas.

pub mod basis;
pub mod formulas;
pub mod gnk;
pub mod phi;

pub use basis::{enumerate_sl2, AdmissibleSeq2, AdmissibleSeqIter, Sl2Params};
pub use formulas::{bosonic_sl2, fermionic_sl2, sl2_character, verify_rec_sl2, Sl2Backend};
pub use gnk::{
    gnk_closed, gnk_direct, verify_gnk_direct, verify_gnk_recursion, verify_qbinomial,
    verify_splitting_sum_free, verify_splitting_sum_middle,
};
pub use phi::{
    extremal_sequence, fiber_sums, phi_map, verify_all_fiber_sums, verify_fiber_sums,
};
