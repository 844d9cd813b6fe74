//! Finite presentations, relation schemas and machine-checked word rewriting
//! for mapping class groups of non-orientable surfaces `N_{g,n}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`surface`] names curves on the standard crosscap model and computes
//!   their mod-2 homology classes;
//! * [`word`] is free-group calculus over twist and push generators;
//! * [`oracle`] maps words to matrices over the two-element field, a
//!   necessary-condition check for any claimed relation;
//! * [`relation`] builds validated instances of the relation families;
//! * [`presentation`] emits the finite presentation for any `(g, n)`;
//! * [`derivation`] replays rewriting chains step by step;
//! * [`groupcalc`] provides coset enumeration and abelianization.
//!
//! ```
//! use crosscap::{oracle, presentation, surface::SurfaceSpec};
//!
//! let spec = SurfaceSpec::new(5, 0).unwrap();
//! let p = presentation::stukow_presentation(&spec).unwrap();
//! assert!(oracle::check_all(&p).iter().all(|c| c.trivial));
//! ```

pub mod derivation;
pub mod error;
pub mod gf2;
pub mod groupcalc;
pub mod oracle;
pub mod par;
pub mod presentation;
pub mod relation;
pub mod surface;
mod syntax;
pub mod word;

pub use error::{Error, ParseError, Result};
pub use gf2::{Z2Matrix, Z2Vector};
pub use surface::{CurveSymbol, Sidedness, SurfaceSpec};
pub use word::{Generator, Word};
