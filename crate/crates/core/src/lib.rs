//! Minimal abelian codes over `F₂`: primitive idempotents of group algebras
//! `F₂G` for `G = C_{p^m} × C_{q^n}` and `C_{p₁p₂p₃}`, the codes they
//! generate, and exact weight data.
//!
//! ```
//! use abelian_codes::{parse_group_spec, HypothesisMode};
//! use abelian_codes::codes::{weight_distribution, IdealCode};
//!
//! let family = parse_group_spec("15", HypothesisMode::Strict)?.build_family()?;
//! let code = IdealCode::new(&family.get("e3").unwrap().element);
//! assert_eq!(code.dimension(), 4);
//! assert_eq!(weight_distribution(&code, 1 << 10, 1)?.get(&8), Some(&15));
//! # Ok::<(), abelian_codes::Error>(())
//! ```

pub mod bits;
pub mod codes;
pub mod cyclotomic;
mod error;
pub mod group_algebra;
pub mod idempotents;
pub mod number_theory;
mod shape;
pub mod verify;

pub use error::{Error, Result};
pub use group_algebra::{AbelianGroup, AlgebraElement, GroupElement, Subgroup, MAX_GROUP_ORDER};
pub use idempotents::{FamilyShape, IdempotentFamily, LabeledIdempotent};
pub use number_theory::{HypothesisFailure, HypothesisMode, PrimePair};
pub use shape::{parse_group_spec, GroupShape};
