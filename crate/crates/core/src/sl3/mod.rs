//! Affine sl3 character content: small principal subspaces, the bosonic
//! series for the two module families, recursions and boundary identities,
//! fermionic sums, and the six-term vacuum-character formulas.

pub mod ab;
pub mod chi_b;
pub mod fermionic;
pub mod phib;
pub mod regions;
pub mod xbasis;

pub use ab::{
    a_s, b_s, ch_vk, six_term_fs, theorem_gl_phi, theorem_gl_psi, verify_ab_relation,
    verify_gl_phi, verify_gl_psi, verify_vrec, VkBackend,
};
pub use chi_b::{chi_b, chi_b_direct, chi_b_fs, verify_chi_b_vanishes, verify_chsp, verify_d_ratio, verify_sr};
pub use fermionic::{fermionic_f, fermionic_f_fs, series_is_nonneg_integral, verify_fermform};
pub use phib::{
    family_fs, family_fs_conv, phi_b, psi_b, verify_b_recurrence, verify_boundary_item,
    verify_ses, Family, SesKind,
};
pub use regions::{tuples_in_region, verify_region_inclusions, ModuleParams};
pub use xbasis::enumerate_x;
