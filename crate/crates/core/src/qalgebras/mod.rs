//! Normal-form arithmetic in the quantum disc and the Heegaard quantum sphere.

pub mod disc;
pub mod relations;
pub mod sphere;

pub use disc::{kappa_iso, Disc, DiscElement, DiscMonomial};
pub use relations::{relation_residual, RELATION_IDS};
pub use sphere::{
    degree_support, is_invariant, monomial_product, sphere_mul, sphere_star, tensor, Core, Sphere, SphereElement,
    SphereMonomial, TensorKey, TensorSquare,
};

/// Whether the deformation parameters stay symbolic or are set to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Specialization {
    #[default]
    Generic,
    /// `p = q = 0`: the generators become isometries.
    Isometric,
}
