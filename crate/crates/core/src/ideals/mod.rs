//! Ideals: Groebner bases, local intersection numbers, and solving
//! zero-dimensional projective systems.

mod fulton;
mod groebner;
mod zeros;

pub use fulton::{
    intersection_at_origin, intersection_number, milnor_at_origin, milnor_number, Multiplicity,
};
pub use groebner::{buchberger, local_length_at_origin, zero_dim_degree, GroebnerBasis};
pub use zeros::{eliminant, local_multiplicity, projective_zeros, PointClass, ZeroLocus};
