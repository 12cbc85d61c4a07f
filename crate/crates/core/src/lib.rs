//! Closed-form spectra of Cayley graphs on cyclic groups, odd dihedral groups
//! and their direct products, with maximum-nullity bounds read off from
//! eigenvalue multiplicities and a brute-force eigensolver to check them.
//!
//! ```
//! use cayspec::spectrum::unitary_cyclic_spectrum;
//!
//! // The unitary Cayley graph on Z_5 is K_5.
//! let spec = unitary_cyclic_spectrum(5).unwrap();
//! let pairs: Vec<_> = spec.pairs().iter().map(|p| (p.value, p.multiplicity)).collect();
//! assert_eq!(pairs, vec![(4.0, 1), (-1.0, 4)]);
//! ```

pub mod cayley;
pub mod characters;
pub mod error;
pub mod grammar;
pub mod matrix;
pub mod nullity;
pub mod numtheory;
pub mod oracle;
pub mod spectrum;

pub use cayley::{ConnectionSet, Factor, FactorElement, GroupElement, GroupSpec};
pub use error::{Error, Result};
pub use spectrum::Spectrum;
