use serde::Serialize;

use crate::bits::BitSet;
use crate::codes::enumerate::{count_balanced, RowBundle};
use crate::codes::ideal_basis;
use crate::group_algebra::AlgebraElement;

#[derive(Debug, Clone, Copy)]
pub struct PrimitivityOptions {
    /// Largest ideal dimension scanned exhaustively.
    pub max_exhaustive_dim: usize,
    pub budget: u64,
    pub threads: usize,
    /// `(family size, class count)` of the family `e` belongs to, if any.
    pub family_certificate: Option<(usize, usize)>,
}

impl Default for PrimitivityOptions {
    fn default() -> Self {
        PrimitivityOptions {
            max_exhaustive_dim: 20,
            budget: crate::codes::DEFAULT_BUDGET,
            threads: 0,
            family_certificate: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum PrimitivityMethod {
    /// Every element of the ideal was squared; `idempotents` counts those
    /// fixed by squaring, zero included.
    Exhaustive {
        idempotents: u64,
    },
    /// The family has as many members as `G` has 2-cyclotomic classes.
    ClassCount {
        family_size: usize,
        class_count: usize,
    },
    NotChecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitivityReport {
    pub dimension: usize,
    pub predicted_dimension: u64,
    pub dimension_matches: bool,
    pub method: PrimitivityMethod,
    /// `None` when neither check could be run.
    pub primitive: Option<bool>,
}

impl PrimitivityReport {
    pub fn passed(&self) -> bool {
        self.dimension_matches && self.primitive == Some(true)
    }
}

/// Check the dimension of `(F₂G)e` and that `e` has no proper
/// sub-idempotent.
///
/// Squaring is `F₂`-linear, so the idempotents of the ideal are the
/// codewords `x` of the paired code `x ‖ x²` whose halves agree.
pub fn verify_primitivity(
    e: &AlgebraElement,
    predicted_dim: u64,
    opts: &PrimitivityOptions,
) -> PrimitivityReport {
    let basis = ideal_basis(e);
    let dimension = basis.len();
    let exhaustive = dimension <= opts.max_exhaustive_dim
        && dimension < 64
        && (1u64 << dimension) <= opts.budget;
    let method = if exhaustive {
        let rows: Vec<BitSet> = basis.iter().map(|x| x.coefficients().clone()).collect();
        let squares: Vec<BitSet> = basis
            .iter()
            .map(|x| x.square().into_coefficients())
            .collect();
        let bundle = RowBundle::paired(&rows, &squares);
        PrimitivityMethod::Exhaustive {
            idempotents: count_balanced(&bundle, opts.threads),
        }
    } else if let Some((family_size, class_count)) = opts.family_certificate {
        PrimitivityMethod::ClassCount {
            family_size,
            class_count,
        }
    } else {
        PrimitivityMethod::NotChecked
    };
    let primitive = match &method {
        PrimitivityMethod::Exhaustive { idempotents } => Some(*idempotents == 2),
        PrimitivityMethod::ClassCount {
            family_size,
            class_count,
        } => Some(family_size == class_count),
        PrimitivityMethod::NotChecked => None,
    };
    PrimitivityReport {
        dimension,
        predicted_dimension: predicted_dim,
        dimension_matches: dimension as u64 == predicted_dim,
        method,
        primitive,
    }
}
