use std::collections::BTreeMap;

use serde::Serialize;

use super::{minimum_weight, weight_distribution, Bound, IdealCode, MinWeight, WeightHints};
use crate::error::{Error, Result};
use crate::group_algebra::{AlgebraElement, Subgroup};
use crate::idempotents::{FamilyShape, IdempotentFamily};
use crate::number_theory::crt_inverses;

/// Where a predicted number comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Theorem,
    Table,
    Conjecture,
    /// Derived from a general dimension formula rather than a stated result.
    Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightClaim {
    Exact {
        value: u64,
        source: Source,
    },
    Bounds {
        lower: u64,
        upper: u64,
        source: Source,
    },
    /// `value` is `None` when the formula does not give an integer.
    Conjecture {
        value: Option<u64>,
        formula: String,
        in_stated_range: bool,
        source: Source,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub dimension: u64,
    pub dimension_source: Source,
    pub weight: Option<WeightClaim>,
}

/// Predictions for every member of a family, keyed by label.
pub fn theoretical_expectations(family: &IdempotentFamily) -> BTreeMap<String, Expectation> {
    let mut out = BTreeMap::new();
    let dim_source = match family.shape {
        FamilyShape::Pq { .. } | FamilyShape::ThreePrimes { .. } => Source::Theorem,
        FamilyShape::PrimePower { .. } => Source::Table,
        FamilyShape::General { .. } | FamilyShape::PGroup { .. } => Source::Formula,
    };
    for m in &family.members {
        let weight = weight_claim(&family.shape, &m.label, family.group.order() as u64);
        out.insert(
            m.label.clone(),
            Expectation {
                dimension: m.predicted_dim,
                dimension_source: dim_source,
                weight,
            },
        );
    }
    out
}

fn parse_indices(label: &str) -> Option<(u32, u32)> {
    let body = label.strip_prefix('I')?.trim_end_matches('*');
    let (i, j) = body.split_once(',')?;
    Some((i.parse().ok()?, j.parse().ok()?))
}

fn weight_claim(shape: &FamilyShape, label: &str, order: u64) -> Option<WeightClaim> {
    let exact = |value, source| Some(WeightClaim::Exact { value, source });
    match *shape {
        FamilyShape::Pq { p, q } => match label {
            "e0" => exact(p * q, Source::Theorem),
            "e1" => exact(2 * p, Source::Theorem),
            "e2" => exact(2 * q, Source::Theorem),
            "e3" | "e4" => Some(WeightClaim::Bounds {
                lower: 4,
                upper: p + q,
                source: Source::Theorem,
            }),
            _ => None,
        },
        FamilyShape::PrimePower { p, m, q, n } => {
            if label == "I0" {
                return exact(order, Source::Table);
            }
            let (i, j) = parse_indices(label)?;
            match (i, j) {
                (0, j) => exact(2 * p.pow(m) * q.pow(n - j), Source::Table),
                (i, 0) => exact(2 * p.pow(m - i) * q.pow(n), Source::Table),
                (i, j) if (p, q) == (3, 5) => {
                    let ea = m as i64 - (i as i64 + 1);
                    let eb = n as i64 - (j as i64 + 1);
                    let value =
                        (ea >= 0 && eb >= 0).then(|| 3u64.pow(ea as u32) * 5u64.pow(eb as u32) * 8);
                    Some(WeightClaim::Conjecture {
                        value,
                        formula: format!("3^({m}-({i}+1)) * 5^({n}-({j}+1)) * 8"),
                        in_stated_range: i < m && j < n,
                        source: Source::Conjecture,
                    })
                }
                _ => None,
            }
        }
        FamilyShape::ThreePrimes { .. }
        | FamilyShape::General { .. }
        | FamilyShape::PGroup { .. } => None,
    }
}

/// The word `y = (1 + aˢ)(1 + bᵗ)e` with `sq ≡ 1 (mod p)`, `tp ≡ 1 (mod q)`.
#[derive(Debug, Clone, Serialize)]
pub struct CrossDifference {
    pub label: String,
    pub s: u64,
    pub t: u64,
    pub weight: usize,
    pub expected: u64,
    #[serde(skip)]
    pub word: AlgebraElement,
}

impl CrossDifference {
    pub fn matches(&self) -> bool {
        self.weight as u64 == self.expected
    }
}

pub fn cross_difference_word(family: &IdempotentFamily, label: &str) -> Result<CrossDifference> {
    let FamilyShape::Pq { p, q } = family.shape else {
        return Err(Error::Unsupported(
            "cross-difference word needs a p·q family".into(),
        ));
    };
    let e = &family
        .get(label)
        .ok_or_else(|| Error::Parse(format!("no member labelled {label}")))?
        .element;
    let g = &family.group;
    let (s, t) = crt_inverses(p, q)?;
    let a = g.cyclic(q as i64);
    let b = g.cyclic(p as i64);
    let one = AlgebraElement::one(g);
    let fa = &one + &AlgebraElement::from_group_element(g, &g.power(&a, s as i64));
    let fb = &one + &AlgebraElement::from_group_element(g, &g.power(&b, t as i64));
    let word = &(&fa * &fb) * e;
    if word.is_zero() {
        return Err(Error::Consistency(format!(
            "cross-difference word of {label} is zero"
        )));
    }
    Ok(CrossDifference {
        label: label.into(),
        s,
        t,
        weight: word.weight(),
        expected: p + q,
        word,
    })
}

/// An explicit basis of one ideal of a `C_p × C_q` family.
#[derive(Debug, Clone, Serialize)]
pub struct PropositionBasis {
    pub name: String,
    pub label: String,
    pub size: usize,
    pub rank: usize,
    pub dimension: usize,
    pub inside_ideal: bool,
    pub weights: Vec<usize>,
    #[serde(skip)]
    pub elements: Vec<AlgebraElement>,
}

impl PropositionBasis {
    pub fn is_basis(&self) -> bool {
        self.inside_ideal && self.rank == self.size && self.size == self.dimension
    }
}

pub fn proposition_bases(family: &IdempotentFamily) -> Result<Vec<PropositionBasis>> {
    let FamilyShape::Pq { p, q } = family.shape else {
        return Err(Error::Unsupported(
            "explicit bases need a p·q family".into(),
        ));
    };
    let g = &family.group;
    let a = g.cyclic(q as i64);
    let b = g.cyclic(p as i64);
    let a_hat = Subgroup::cyclic(g, &a).hat();
    let b_hat = Subgroup::cyclic(g, &b).hat();
    let one = AlgebraElement::one(g);
    let elt = |x| AlgebraElement::from_group_element(g, &x);
    let member = |l: &str| family.get(l).map(|m| m.element.clone()).unwrap();

    let mut specs: Vec<(&str, &str, Vec<AlgebraElement>)> = vec![
        ("B0", "e0", vec![member("e0")]),
        (
            "B1",
            "e1",
            (1..q)
                .map(|j| &a_hat * &(&elt(g.power(&b, j as i64)) + &one))
                .collect(),
        ),
        (
            "B1'",
            "e1",
            (1..q)
                .map(|j| member("e1").translate(&g.power(&b, j as i64)))
                .collect(),
        ),
        (
            "B2",
            "e2",
            (1..p)
                .map(|j| &(&elt(g.power(&a, j as i64)) + &one) * &b_hat)
                .collect(),
        ),
        (
            "B2'",
            "e2",
            (1..p)
                .map(|j| member("e2").translate(&g.power(&a, j as i64)))
                .collect(),
        ),
    ];
    let half = ((p - 1) * (q - 1) / 2) as i64;
    for (name, label) in [("B3", "e3"), ("B4", "e4")] {
        let y = cross_difference_word(family, label)?.word;
        specs.push((
            name,
            label,
            (0..half).map(|k| y.translate(&g.cyclic(k))).collect(),
        ));
    }

    specs
        .into_iter()
        .map(|(name, label, elements)| {
            let e = member(label);
            let code = IdealCode::new(&e);
            let rank = super::linalg::rank(
                &elements
                    .iter()
                    .map(|x| x.coefficients().clone())
                    .collect::<Vec<_>>(),
            );
            Ok(PropositionBasis {
                name: name.into(),
                label: label.into(),
                size: elements.len(),
                rank,
                dimension: code.dimension(),
                inside_ideal: elements.iter().all(|x| &(x * &e) == x),
                weights: elements.iter().map(AlgebraElement::weight).collect(),
                elements,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub budget: u64,
    pub threads: usize,
    pub distribution: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            budget: super::DEFAULT_BUDGET,
            threads: 0,
            distribution: false,
        }
    }
}

/// Outcome of comparing a computed minimum weight with its prediction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WeightVerdict {
    Pass,
    Fail,
    /// Nothing predicted, or only bounds were computed.
    Unchecked,
    /// A conjecture was compared; not asserted.
    Recorded {
        matches: Option<bool>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    pub label: String,
    pub dimension: usize,
    pub predicted_dimension: u64,
    pub dimension_matches: bool,
    pub min_weight: MinWeight,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<BTreeMap<usize, u64>>,
    pub expectation: Expectation,
    pub weight_verdict: WeightVerdict,
    #[serde(skip)]
    pub code: IdealCode,
}

fn verdict(claim: Option<&WeightClaim>, mw: &MinWeight) -> WeightVerdict {
    let (Some(claim), Some(w)) = (claim, mw.exact()) else {
        return WeightVerdict::Unchecked;
    };
    let w = w as u64;
    let ok = match claim {
        WeightClaim::Exact { value, .. } => w == *value,
        WeightClaim::Bounds { lower, upper, .. } => *lower <= w && w <= *upper,
        WeightClaim::Conjecture { value, .. } => {
            return WeightVerdict::Recorded {
                matches: value.map(|v| v == w),
            }
        }
    };
    if ok {
        WeightVerdict::Pass
    } else {
        WeightVerdict::Fail
    }
}

fn hints_for(family: &IdempotentFamily, label: &str) -> WeightHints {
    let mut hints = WeightHints::default();
    let g = &family.group;
    match family.shape {
        FamilyShape::Pq { .. } if label == "e3" || label == "e4" => {
            hints.lower.push(Bound {
                value: 4,
                source: "theorem".into(),
            });
            if let Ok(cd) = cross_difference_word(family, label) {
                hints
                    .witnesses
                    .push((cd.word, "cross-difference word".into()));
            }
        }
        FamilyShape::PrimePower { p, m, q, n } => {
            let Some((i, j)) = parse_indices(label) else {
                return hints;
            };
            let a = g.cyclic(q.pow(n) as i64);
            let b = g.cyclic(p.pow(m) as i64);
            let hat_of = |x, k: u64| Subgroup::cyclic(g, &g.power(x, k as i64)).hat();
            let one = AlgebraElement::one(g);
            let shift = |x, k: u64| AlgebraElement::from_group_element(g, &g.power(x, k as i64));
            if i == 0 && j > 0 {
                let w =
                    &(&(&one + &shift(&b, q.pow(j - 1))) * &hat_of(&a, 1)) * &hat_of(&b, q.pow(j));
                hints.witnesses.push((w, "coset-pair witness".into()));
            } else if j == 0 && i > 0 {
                let w =
                    &(&(&one + &shift(&a, p.pow(i - 1))) * &hat_of(&a, p.pow(i))) * &hat_of(&b, 1);
                hints.witnesses.push((w, "coset-pair witness".into()));
            }
        }
        _ => {}
    }
    hints
}

/// Dimension, minimum weight and (optionally) distribution for every
/// member, compared with the predictions.
pub fn analyze_family(
    family: &IdempotentFamily,
    opts: &AnalysisOptions,
) -> Result<Vec<CodeReport>> {
    let expectations = theoretical_expectations(family);
    family
        .members
        .iter()
        .map(|m| {
            let code = IdealCode::new(&m.element);
            let hints = hints_for(family, &m.label);
            let min_weight = minimum_weight(&code, opts.budget, opts.threads, &hints);
            let distribution = if opts.distribution && code.within_budget(opts.budget) {
                Some(weight_distribution(&code, opts.budget, opts.threads)?)
            } else {
                None
            };
            let expectation = expectations[&m.label].clone();
            let weight_verdict = verdict(expectation.weight.as_ref(), &min_weight);
            Ok(CodeReport {
                label: m.label.clone(),
                dimension: code.dimension(),
                predicted_dimension: m.predicted_dim,
                dimension_matches: code.dimension() as u64 == m.predicted_dim,
                min_weight,
                distribution,
                expectation,
                weight_verdict,
                code,
            })
        })
        .collect()
}
