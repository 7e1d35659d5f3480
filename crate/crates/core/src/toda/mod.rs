//! The coefficient layer of the quantum Toda eigenfunction and the
//! quantum-group Whittaker apparatus.

pub mod bigfloat;
pub mod gt;
pub mod gtcoeffs;
pub mod idd;
pub mod vlaurent;

pub use bigfloat::{BigFloat, NumCtx};
pub use gt::{draw_samples, verify_gt_representation, verify_whittaker, NumericReport, Sample};
pub use gtcoeffs::{
    gt_coeffs, verify_c_bar_invariant, verify_terms, GTCoeffs, GTIndex,
};
pub use idd::{
    i_dd, i_ddn, i_fermionic, j_bar, j_fn, verify_i_fermionic, verify_i_sum, verify_i_symmetry,
    verify_irec, verify_toda,
};
pub use vlaurent::{LinForm, ProductRat};
