//! Measurement gadgets and the circuit-identity inventory.

mod identities;
mod protocols;

pub use identities::{
    hz_word, identity_cases, verify_identity, verify_identity_named, IdentityCase, IdentityId, IdentityReport, Mode,
    Relation, IDENTITY_TOL,
};
pub use protocols::{
    and_state, eigen_residual, involution_defect, nand_state, phi0, phi1, prepare_eigenstate, prepare_phi0, t_gadget,
    toffoli_operator, toffoli_state, uphi, uphi_word, GadgetJson, GadgetRun, MeasurementJson, Protocol,
    DEFAULT_CAT_SIZE, INVOLUTION_TOL,
};
