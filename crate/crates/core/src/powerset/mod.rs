//! Fuzzy sets over finite carriers, ground morphisms and the powerset
//! operators between `L^X` and `M^Y`.

mod adjunction;
mod ground;
mod morphism;

pub use adjunction::{verify_adjunction, AdjunctionVerdict, AdjunctionWitness};
pub use ground::{Code, FuzzySet, Ground, GroundError, PowersetIndex, MATERIALIZE_LIMIT};
pub use morphism::{
    check_phi_op, classical_image, classical_preimage, compose, lift_phi_op, lift_star_phi, star_phi,
    validate_ground_morphism, zadeh_backward, zadeh_forward, ForwardPath, GroundMorphism, MorphismError,
};
