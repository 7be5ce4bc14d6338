//! Isospectral deformations of rationally extended Dirac scalar potentials.
//!
//! The crate builds the radial-oscillator, Scarf-I and generalized
//! Poschl-Teller families with exceptional-polynomial extensions, deforms
//! them along the one-parameter isospectral family (including the Pursey and
//! Abraham-Moses limits), and checks the results numerically.

pub mod deform;
pub mod error;
pub mod families;
pub mod numerics;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use families::{Coordinate, DomainSpec, Family, FamilyParams, Potential, Sector, SpectralLine};
pub use deform::{Deformation, DeformedFamily, IntegralTable, SpinorLevel};
pub use verify::{verify_family, Check, CheckKind, VerificationReport, VerifyConfig};
