//! Symbolic sequences and certified order convergence.

pub mod certificate;
pub mod decide;
pub mod expoly;
pub mod family;

pub use certificate::{
    is_decreasing_to_zero, verify_certificate, CertKind, CheckResult, ConvergenceCertificate, DecreasingWitness,
    Threshold,
};
pub use decide::{decide_o_convergence, decide_towards, synthesize_certificates, verify_refutation, ConvergenceVerdict, Refutation};
pub use expoly::{eventual_sign, EventualSign, ExpPoly, ScalarSeq, ScalarTerm};
pub use family::{family_add, family_scale, SeqFamily, VecTerm};
