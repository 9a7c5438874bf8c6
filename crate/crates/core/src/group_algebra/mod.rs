//! Exact arithmetic in `F₂[G]` for finite abelian `G`.

mod element;
mod group;
mod subgroup;

pub use element::{AlgebraElement, SerializedElement};
pub use group::{AbelianGroup, GroupElement, MAX_GROUP_ORDER};
pub use subgroup::Subgroup;
