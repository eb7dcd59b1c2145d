//! Integer K-theory of the lens-space pullback: Smith normal form,
//! abelian groups, Mayer-Vietoris, and the Bass idempotent.

mod bass;
mod crossed;
mod groups;
mod snf;

pub use bass::{bass_class_report, bass_idempotent, lens_bass_idempotent, BassReport, Matrix, PullbackMatrix, RingElement};
pub use crossed::{
    project_to_torus, pullback_make, CrossedElement, CrossedKey, Leg, PullbackElement, TorusElement, TorusKey,
};
pub use groups::{class_order, cokernel, kernel_rank, lens_k_data, lens_k_groups, mayer_vietoris_solve, AbelianGroup};
pub use snf::{smith_normal_form, IntMatrix, Smith};
