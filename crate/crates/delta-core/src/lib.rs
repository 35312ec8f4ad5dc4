//! Free delta-rings with their canonical operators, delta on the truncated
//! base ring with the distinguished-element tests, and constructive
//! divided-power certificates.

pub mod base_delta;
pub mod divided;
pub mod error;
pub mod free;

pub use base_delta::{
    delta_base, distinguished_membership_check, is_distinguished, p_elem,
    q_analog_of_p, q_minus_one_elem, MembershipWitness,
};
pub use divided::{divided_power_certificate, gamma_2p_unit, DividedPowerCertificate};
pub use error::DeltaError;
pub use free::{
    delta_power_divisibility, w2_check, DeltaPoly, DeltaRing,
    PowerDivisibilityCertificate, DEFAULT_DEPTH,
};
