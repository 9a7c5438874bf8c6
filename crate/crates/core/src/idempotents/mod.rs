//! Primitive idempotent families of `F₂G`.
//!
//! Every "1 − x̂" of the classical formulas is `1 + x̂` here, and every
//! `Ĥ − Ĥ*` is `Ĥ + Ĥ*`; the ring has characteristic 2.

mod blocks;
mod families;
mod pgroup;
mod primitivity;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

pub use blocks::{build_u, split_pair, BlockChecks, UVBlock};
pub use families::{
    family_pq, family_prime_power, family_three_primes, pq_forms, prime_power_split_indices,
    three_prime_components, PqForms, ThreePrimeComponents,
};
pub use pgroup::{family_general, p_group_idempotents, PComponent};
pub use primitivity::{
    verify_primitivity, PrimitivityMethod, PrimitivityOptions, PrimitivityReport,
};

use crate::cyclotomic::class_count;
use crate::error::Result;
use crate::group_algebra::{AbelianGroup, AlgebraElement};
use crate::number_theory::HypothesisFailure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum FamilyShape {
    Pq {
        p: u64,
        q: u64,
    },
    PrimePower {
        p: u64,
        m: u32,
        q: u64,
        n: u32,
    },
    ThreePrimes {
        primes: [u64; 3],
    },
    /// Product of a `p`-group and a `q`-group given by factor orders.
    General {
        p_orders: Vec<u64>,
        q_orders: Vec<u64>,
    },
    PGroup {
        p: u64,
        orders: Vec<u64>,
    },
}

#[derive(Debug, Clone)]
pub struct LabeledIdempotent {
    pub label: String,
    pub element: AlgebraElement,
    pub predicted_dim: u64,
}

#[derive(Debug, Clone)]
pub struct IdempotentFamily {
    pub shape: FamilyShape,
    pub group: Arc<AbelianGroup>,
    pub members: Vec<LabeledIdempotent>,
    /// The u/v/w blocks used, by name.
    pub blocks: Vec<(String, UVBlock)>,
    /// Non-empty only when built in override mode.
    pub hypothesis_failures: Vec<HypothesisFailure>,
}

/// Outcome of the ring-level family checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyChecks {
    pub all_idempotent: bool,
    pub non_idempotent: Vec<String>,
    pub pairwise_orthogonal: bool,
    pub non_orthogonal: Vec<(String, String)>,
    pub partition_of_unity: bool,
    pub nonzero: bool,
    pub family_size: usize,
    pub class_count: usize,
    pub predicted_dims_sum: u64,
    pub group_order: u64,
    pub blocks_ok: bool,
}

impl FamilyChecks {
    pub fn passed(&self) -> bool {
        self.all_idempotent
            && self.pairwise_orthogonal
            && self.partition_of_unity
            && self.nonzero
            && self.family_size == self.class_count
            && self.predicted_dims_sum == self.group_order
            && self.blocks_ok
    }
}

/// JSON shape of one exported idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentExport {
    pub support: Vec<usize>,
    pub coefficients_hex: String,
    pub predicted_dimension: u64,
}

impl IdempotentFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&LabeledIdempotent> {
        self.members.iter().find(|m| m.label == label)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members.iter().map(|m| m.label.as_str()).collect()
    }

    pub fn is_validated(&self) -> bool {
        self.hypothesis_failures.is_empty()
    }

    pub fn checks(&self) -> Result<FamilyChecks> {
        let g = &self.group;
        let non_idempotent: Vec<String> = self
            .members
            .iter()
            .filter(|m| !m.element.is_idempotent())
            .map(|m| m.label.clone())
            .collect();
        let mut non_orthogonal = Vec::new();
        for (i, x) in self.members.iter().enumerate() {
            for y in &self.members[i + 1..] {
                if !(&x.element * &y.element).is_zero() {
                    non_orthogonal.push((x.label.clone(), y.label.clone()));
                }
            }
        }
        let mut total = AlgebraElement::zero(g);
        for m in &self.members {
            total += &m.element;
        }
        Ok(FamilyChecks {
            all_idempotent: non_idempotent.is_empty(),
            non_idempotent,
            pairwise_orthogonal: non_orthogonal.is_empty(),
            non_orthogonal,
            partition_of_unity: total == AlgebraElement::one(g),
            nonzero: self.members.iter().all(|m| !m.element.is_zero()),
            family_size: self.members.len(),
            class_count: class_count(g)?,
            predicted_dims_sum: self.members.iter().map(|m| m.predicted_dim).sum(),
            group_order: g.order() as u64,
            blocks_ok: self.blocks.iter().all(|(_, b)| b.checks().all()),
        })
    }

    pub fn export(&self) -> BTreeMap<String, IdempotentExport> {
        self.members
            .iter()
            .map(|m| {
                (
                    m.label.clone(),
                    IdempotentExport {
                        support: m.element.support(),
                        coefficients_hex: m.element.coefficients().to_hex(),
                        predicted_dimension: m.predicted_dim,
                    },
                )
            })
            .collect()
    }
}
