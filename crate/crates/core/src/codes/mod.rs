//! Codes `(F₂G)e` generated by idempotents: bases, generator matrices and
//! exact weight data by exhaustive enumeration.

pub mod enumerate;
pub mod linalg;
mod theory;

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use theory::{
    analyze_family, cross_difference_word, proposition_bases, theoretical_expectations,
    AnalysisOptions, CodeReport, CrossDifference, Expectation, PropositionBasis, Source,
    WeightClaim, WeightVerdict,
};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::group_algebra::{AbelianGroup, AlgebraElement};
use enumerate::{histogram, RowBundle};
use linalg::Echelon;

/// Default number of codewords an exhaustive scan may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// The ideal `(F₂G)e` with a basis of translates of `e`.
#[derive(Debug, Clone)]
pub struct IdealCode {
    generator: AlgebraElement,
    basis: Vec<AlgebraElement>,
    echelon: Echelon,
}

impl IdealCode {
    /// Keep the translates `g·e`, `g` in rank order, that are independent of
    /// the ones kept before.
    pub fn new(e: &AlgebraElement) -> Self {
        let group = e.group();
        let mut echelon = Echelon::new(group.order());
        let mut basis = Vec::new();
        for r in 0..group.order() {
            let t = e.translate(&group.element_at(r));
            if echelon.insert(t.coefficients()) {
                basis.push(t);
            }
        }
        IdealCode {
            generator: e.clone(),
            basis,
            echelon,
        }
    }

    pub fn generator(&self) -> &AlgebraElement {
        &self.generator
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        self.generator.group()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn length(&self) -> usize {
        self.group().order()
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    pub fn rows(&self) -> Vec<BitSet> {
        self.basis
            .iter()
            .map(|b| b.coefficients().clone())
            .collect()
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        x.group() == self.group() && self.echelon.spans(x.coefficients())
    }

    /// Number of codewords, `2^k`.
    pub fn size(&self) -> u128 {
        1u128 << self.dimension()
    }

    pub fn within_budget(&self, budget: u64) -> bool {
        self.size() <= budget as u128
    }

    fn require_budget(&self, budget: u64) -> Result<()> {
        if self.within_budget(budget) {
            Ok(())
        } else {
            Err(Error::BudgetExceeded {
                required: self.size(),
                budget,
            })
        }
    }
}

pub fn ideal_basis(e: &AlgebraElement) -> Vec<AlgebraElement> {
    IdealCode::new(e).basis
}

pub fn ideal_dimension(e: &AlgebraElement) -> usize {
    IdealCode::new(e).dimension()
}

/// Weight histogram of the nonzero codewords.
pub fn weight_distribution(
    code: &IdealCode,
    budget: u64,
    threads: usize,
) -> Result<BTreeMap<usize, u64>> {
    code.require_budget(budget)?;
    let bundle = RowBundle::new(&code.rows());
    let mut hist = histogram(&bundle, code.length(), threads);
    hist[0] -= 1;
    Ok(hist
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: usize,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinWeight {
    Exact { weight: usize },
    Bounds { lower: Bound, upper: Bound },
}

impl MinWeight {
    pub fn exact(&self) -> Option<usize> {
        match self {
            MinWeight::Exact { weight } => Some(*weight),
            MinWeight::Bounds { .. } => None,
        }
    }

    pub fn range(&self) -> (usize, usize) {
        match self {
            MinWeight::Exact { weight } => (*weight, *weight),
            MinWeight::Bounds { lower, upper } => (lower.value, upper.value),
        }
    }
}

/// Side information for codes too large to enumerate.
#[derive(Debug, Clone, Default)]
pub struct WeightHints {
    pub lower: Vec<Bound>,
    /// Candidate low-weight words with a description; ignored unless they
    /// are nonzero members of the code.
    pub witnesses: Vec<(AlgebraElement, String)>,
}

/// Exact minimum weight when `2^k ≤ budget`, otherwise the best bounds the
/// hints support.
pub fn minimum_weight(
    code: &IdealCode,
    budget: u64,
    threads: usize,
    hints: &WeightHints,
) -> MinWeight {
    if code.within_budget(budget) {
        let dist = weight_distribution(code, budget, threads).expect("within budget");
        return MinWeight::Exact {
            weight: dist.keys().next().copied().unwrap_or(0),
        };
    }
    let lower = hints
        .lower
        .iter()
        .max_by_key(|b| b.value)
        .cloned()
        .unwrap_or(Bound {
            value: 1,
            source: "nonzero word".into(),
        });
    let mut upper = Bound {
        value: code.generator.weight(),
        source: "generating idempotent".into(),
    };
    for (w, source) in &hints.witnesses {
        if !w.is_zero() && code.contains(w) && w.weight() < upper.value {
            upper = Bound {
                value: w.weight(),
                source: source.clone(),
            };
        }
    }
    MinWeight::Bounds { lower, upper }
}

/// Generator matrix: one row per basis codeword, columns in rank order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub factor_orders: Vec<u64>,
    pub rows: Vec<BitSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMatrixExport {
    pub factor_orders: Vec<u64>,
    pub length: usize,
    pub dimension: usize,
    pub rows_hex: Vec<String>,
}

impl GeneratorMatrix {
    pub fn length(&self) -> usize {
        self.factor_orders.iter().product::<u64>() as usize
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&r.to_binary_string());
            out.push('\n');
        }
        out
    }

    pub fn to_export(&self) -> GeneratorMatrixExport {
        GeneratorMatrixExport {
            factor_orders: self.factor_orders.clone(),
            length: self.length(),
            dimension: self.rows.len(),
            rows_hex: self.rows.iter().map(BitSet::to_hex).collect(),
        }
    }
}

pub fn generator_matrix(code: &IdealCode) -> GeneratorMatrix {
    GeneratorMatrix {
        factor_orders: code.group().factor_orders().to_vec(),
        rows: code.rows(),
    }
}

/// Weight distribution obtained from translation orbits: the nonzero words
/// are `g·x^k` for `g ∈ G` and `0 ≤ k < ord(x)` (with `x⁰ = e`), and each
/// translation orbit has constant weight.
///
/// Fails unless the orbits are disjoint and cover every nonzero codeword.
pub fn translation_orbit_distribution(
    code: &IdealCode,
    x: &AlgebraElement,
) -> Result<BTreeMap<usize, u64>> {
    let e = code.generator();
    if !code.contains(x) || x.is_zero() {
        return Err(Error::Consistency(
            "orbit seed is not a nonzero codeword".into(),
        ));
    }
    let group = code.group();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut dist = BTreeMap::new();
    let mut power = e.clone();
    loop {
        for r in 0..group.order() {
            let t = power.translate(&group.element_at(r));
            if !seen.insert(t.coefficients().words().to_vec()) {
                return Err(Error::Consistency("translation orbits overlap".into()));
            }
        }
        *dist.entry(power.weight()).or_insert(0) += group.order() as u64;
        power = &power * x;
        if power == *e {
            break;
        }
        if power.is_zero() || seen.len() as u128 >= code.size() {
            return Err(Error::Consistency(
                "powers of the seed do not cycle back".into(),
            ));
        }
    }
    if seen.len() as u128 != code.size() - 1 {
        return Err(Error::Consistency(format!(
            "orbits cover {} of {} nonzero words",
            seen.len(),
            code.size() - 1
        )));
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::Subgroup;

    fn c15_e3() -> AlgebraElement {
        let g = AbelianGroup::new(vec![15]).unwrap();
        AlgebraElement::from_cyclic_exponents(&g, &[1, 2, 3, 4, 6, 8, 9, 12])
    }

    #[test]
    fn c15_code() {
        let code = IdealCode::new(&c15_e3());
        assert_eq!(code.dimension(), 4);
        let dist = weight_distribution(&code, 1 << 10, 1).unwrap();
        assert_eq!(dist, BTreeMap::from([(8, 15)]));
        let m = generator_matrix(&code);
        assert_eq!(m.rows.len(), 4);
        assert!(m.rows.iter().all(|r| r.count_ones() == 8));
        assert_eq!(m.to_text().lines().count(), 4);
    }

    #[test]
    fn repetition_code() {
        let g = AbelianGroup::new(vec![15]).unwrap();
        let code = IdealCode::new(&Subgroup::whole(&g).hat());
        assert_eq!(code.dimension(), 1);
        assert_eq!(
            weight_distribution(&code, 2, 1).unwrap(),
            BTreeMap::from([(15, 1)])
        );
        assert_eq!(generator_matrix(&code).to_text(), "111111111111111\n");
    }

    #[test]
    fn budget_refusal() {
        let code = IdealCode::new(&c15_e3());
        let err = weight_distribution(&code, 8, 1).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: 16,
                budget: 8
            }
        );
        let m = minimum_weight(&code, 8, 1, &WeightHints::default());
        assert_eq!(m.range(), (1, 8));
    }

    #[test]
    fn membership() {
        let e = c15_e3();
        let code = IdealCode::new(&e);
        let g = e.group().clone();
        assert!(code.contains(&e.translate(&g.cyclic(7))));
        assert!(!code.contains(&AlgebraElement::one(&g)));
    }
}
