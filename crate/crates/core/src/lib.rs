//! Free groups, Fox calculus and Wada's twisted Alexander invariant, with
//! tools for HNN splittings of groups with an epimorphism onto Z.
//!
//! ```
//! use wadakit::dsl::parse_presentation;
//! use wadakit::field::Rationals;
//! use wadakit::reps::trivial_rep;
//! use wadakit::wada::wada_invariant;
//!
//! let p = parse_presentation("< a, b | a b a = b a b >").unwrap();
//! let eps = p.epimorphism_to_z().unwrap();
//! let r = wada_invariant(&p, &eps, &trivial_rep(&p, Rationals), None).unwrap();
//! assert_eq!(r.degree, Some(1));
//! ```

pub mod dsl;
pub mod field;
pub mod foxcalc;
pub mod freegroup;
pub mod hnn;
pub mod knotio;
pub mod laurent;
pub mod linalg;
pub mod presentation;
pub mod reps;
pub mod snf;
pub mod wada;

pub use field::{ExactField, Field, PrimeField, Rationals};
pub use freegroup::{Generator, Letter, Word};
pub use presentation::{Epimorphism, Presentation};
