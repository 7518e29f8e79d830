//! Affine toric singularities: nef envelopes as exact LPs, numerically
//! Cartier tests, defect ideals, monomial b-divisors `Z(a)` and
//! (mixed) multiplicities.

pub mod cone;
pub mod defect;
pub mod envelope;
pub mod ideal;
pub mod multiplicity;

pub use cone::{ConeSpec, Isolation, ToricCone};
pub use defect::{defect_ideal, section_generators};
pub use envelope::{
    envelope_value, is_numerically_cartier, izumi_constant, log_discrepancy_value, CartierCheck,
    EnvelopeFunction, EnvelopeValue, LogDiscrepancy, ToricDivisor,
};
pub use ideal::{z_value, IdealSpec, MonomialIdeal};
pub use multiplicity::{covolume, mixed_multiplicity, samuel_multiplicity};
