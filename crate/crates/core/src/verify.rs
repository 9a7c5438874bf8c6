//! The full invariant suite for one family, as a flat list of named checks.

use serde::Serialize;

use crate::codes::{
    analyze_family, cross_difference_word, proposition_bases, AnalysisOptions, CodeReport,
    IdealCode, MinWeight, WeightClaim, WeightVerdict, DEFAULT_BUDGET,
};
use crate::cyclotomic::verify_class_structure;
use crate::error::Result;
use crate::group_algebra::AlgebraElement;
use crate::idempotents::{
    pq_forms, three_prime_components, verify_primitivity, FamilyShape, IdempotentFamily,
    PrimitivityOptions,
};
use crate::number_theory::{validate_hypotheses, HypothesisMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not run, usually because of the enumeration budget.
    Skipped,
    /// A conjecture was compared; never a failure.
    Recorded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub group: Vec<u64>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn falsified(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub budget: u64,
    pub threads: usize,
    pub max_exhaustive_dim: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            threads: 0,
            max_exhaustive_dim: 20,
        }
    }
}

struct Suite(Vec<Check>);

impl Suite {
    fn push(&mut self, name: impl Into<String>, status: CheckStatus, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    fn assert(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.push(name, status, detail);
    }
}

fn describe(claim: Option<&WeightClaim>) -> String {
    match claim {
        None => "nothing".into(),
        Some(WeightClaim::Exact { value, .. }) => value.to_string(),
        Some(WeightClaim::Bounds { lower, upper, .. }) => format!("[{lower}, {upper}]"),
        Some(WeightClaim::Conjecture {
            value: Some(v),
            formula,
            ..
        }) => format!("{v} = {formula}"),
        Some(WeightClaim::Conjecture {
            value: None,
            formula,
            ..
        }) => {
            format!("no integer value from {formula}")
        }
    }
}

fn weight_check(suite: &mut Suite, r: &CodeReport) {
    let name = format!("min weight {}", r.label);
    let claim = r.expectation.weight.as_ref();
    match (&r.weight_verdict, &r.min_weight) {
        (WeightVerdict::Pass, MinWeight::Exact { weight }) => {
            suite.push(name, CheckStatus::Pass, format!("{weight} by enumeration"))
        }
        (WeightVerdict::Fail, MinWeight::Exact { weight }) => suite.push(
            name,
            CheckStatus::Fail,
            format!("enumerated {weight}, predicted {}", describe(claim)),
        ),
        (WeightVerdict::Recorded { matches }, MinWeight::Exact { weight }) => suite.push(
            name,
            CheckStatus::Recorded,
            match matches {
                Some(m) => format!(
                    "enumerated {weight}, conjectured {}, match {m}",
                    describe(claim)
                ),
                None => format!("enumerated {weight}, conjectured {}", describe(claim)),
            },
        ),
        (_, MinWeight::Bounds { lower, upper }) => {
            let range = format!(
                "bounds [{} ({}), {} ({})]",
                lower.value, lower.source, upper.value, upper.source
            );
            match claim {
                Some(WeightClaim::Exact { value, .. }) => {
                    let v = *value as usize;
                    if upper.value < v || lower.value > v {
                        suite.push(name, CheckStatus::Fail, format!("{range} exclude {v}"));
                    } else if upper.value == v {
                        suite.push(
                            name,
                            CheckStatus::Pass,
                            format!("{range}, witness attains {v}"),
                        );
                    } else {
                        suite.push(name, CheckStatus::Skipped, format!("{range}, budget"));
                    }
                }
                Some(WeightClaim::Bounds {
                    lower: lo,
                    upper: hi,
                    ..
                }) => {
                    let disjoint = upper.value < *lo as usize || lower.value > *hi as usize;
                    let status = if disjoint {
                        CheckStatus::Fail
                    } else {
                        CheckStatus::Pass
                    };
                    suite.push(name, status, format!("{range} against [{lo}, {hi}]"));
                }
                Some(WeightClaim::Conjecture { .. }) => suite.push(
                    name,
                    CheckStatus::Recorded,
                    format!("{range}, conjecture not enumerated"),
                ),
                None => suite.push(name, CheckStatus::Skipped, range),
            }
        }
        (WeightVerdict::Unchecked, MinWeight::Exact { weight }) => suite.push(
            name,
            CheckStatus::Recorded,
            format!("{weight} by enumeration, no prediction"),
        ),
    }
}

fn pq_checks(
    suite: &mut Suite,
    family: &IdempotentFamily,
    reports: &[CodeReport],
    p: u64,
    q: u64,
) -> Result<()> {
    let pair = validate_hypotheses(p, q, HypothesisMode::Override)?;
    let classes = verify_class_structure(&pair)?;
    suite.assert(
        "class structure",
        classes.passed(),
        format!(
            "sizes {:?} {}",
            classes.class_sizes,
            classes.mismatches.join("; ")
        ),
    );
    let forms = pq_forms(family)?;
    suite.assert("class-sum forms", forms.passed(), format!("{forms:?}"));

    for label in ["e3", "e4"] {
        let cd = cross_difference_word(family, label)?;
        suite.assert(
            format!("cross-difference weight {label}"),
            cd.matches(),
            format!(
                "s={} t={} weight {} expected {}",
                cd.s, cd.t, cd.weight, cd.expected
            ),
        );
    }
    for b in proposition_bases(family)? {
        suite.assert(
            format!("basis {} of {}", b.name, b.label),
            b.is_basis(),
            format!(
                "{} elements, rank {}, dimension {}",
                b.size, b.rank, b.dimension
            ),
        );
        if b.name == "B3" || b.name == "B4" {
            let w = (p + q) as usize;
            suite.assert(
                format!("basis {} weights", b.name),
                b.weights.iter().all(|&x| x == w),
                format!("all {w}"),
            );
        }
    }

    let find = |l: &str| {
        reports
            .iter()
            .find(|r| r.label == l)
            .map(|r| r.min_weight.exact())
    };
    match (find("e3").flatten(), find("e4").flatten()) {
        (Some(x), Some(y)) => suite.assert(
            "e3 and e4 min weights agree",
            x == y,
            format!("{x} and {y}"),
        ),
        _ => suite.push(
            "e3 and e4 min weights agree",
            CheckStatus::Skipped,
            "budget",
        ),
    }

    let g = &family.group;
    let one = AlgebraElement::one(g);
    let a = AlgebraElement::from_group_element(g, &g.cyclic(q as i64));
    let b = AlgebraElement::from_group_element(g, &g.cyclic(p as i64));
    let z = &(&one + &a) * &(&one + &b);
    let sum = &family.get("e3").unwrap().element + &family.get("e4").unwrap().element;
    suite.assert(
        "(1+a)(1+b) in ideal of e3+e4",
        IdealCode::new(&sum).contains(&z),
        format!("weight {}", z.weight()),
    );
    Ok(())
}

/// Run every check that applies to `family`.
pub fn verify_family(
    family: &IdempotentFamily,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut suite = Suite(Vec::new());
    if !family.is_validated() {
        suite.push(
            "standing hypotheses (overridden)",
            CheckStatus::Recorded,
            family
                .hypothesis_failures
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        );
    }

    let fc = family.checks()?;
    suite.assert(
        "idempotent",
        fc.all_idempotent,
        fc.non_idempotent.join(", "),
    );
    suite.assert(
        "pairwise orthogonal",
        fc.pairwise_orthogonal,
        format!("{:?}", fc.non_orthogonal),
    );
    suite.assert("partition of unity", fc.partition_of_unity, "");
    suite.assert("nonzero", fc.nonzero, "");
    suite.assert(
        "family size equals class count",
        fc.family_size == fc.class_count,
        format!("{} members, {} classes", fc.family_size, fc.class_count),
    );
    suite.assert(
        "predicted dimensions sum to |G|",
        fc.predicted_dims_sum == fc.group_order,
        format!("{} vs {}", fc.predicted_dims_sum, fc.group_order),
    );
    suite.assert(
        "u/v/w block relations",
        fc.blocks_ok,
        format!("{} blocks", family.blocks.len()),
    );

    let reports = analyze_family(
        family,
        &AnalysisOptions {
            budget: opts.budget,
            threads: opts.threads,
            distribution: false,
        },
    )?;
    let computed_sum: usize = reports.iter().map(|r| r.dimension).sum();
    suite.assert(
        "computed dimensions sum to |G|",
        computed_sum as u64 == fc.group_order,
        format!("{computed_sum}"),
    );

    let prim = PrimitivityOptions {
        max_exhaustive_dim: opts.max_exhaustive_dim,
        budget: opts.budget,
        threads: opts.threads,
        family_certificate: Some((fc.family_size, fc.class_count)),
    };
    for (m, r) in family.members.iter().zip(&reports) {
        suite.assert(
            format!("dimension {}", r.label),
            r.dimension_matches,
            format!(
                "computed {}, predicted {}",
                r.dimension, r.predicted_dimension
            ),
        );
        let pr = verify_primitivity(&m.element, m.predicted_dim, &prim);
        match pr.primitive {
            Some(ok) => suite.assert(
                format!("primitive {}", r.label),
                ok,
                format!("{:?}", pr.method),
            ),
            None => suite.push(
                format!("primitive {}", r.label),
                CheckStatus::Skipped,
                "budget",
            ),
        }
        weight_check(&mut suite, r);
    }

    match &family.shape {
        FamilyShape::Pq { p, q } => pq_checks(&mut suite, family, &reports, *p, *q)?,
        FamilyShape::ThreePrimes { .. } => {
            let c = three_prime_components(family)?;
            suite.assert("A+B+C+D = 1", c.sum_identity, "");
            suite.assert(
                "A, B, C, D match the family",
                c.matches_family.iter().all(|&x| x),
                format!("{:?}", c.matches_family),
            );
        }
        _ => {}
    }

    Ok(VerificationReport {
        group: family.group.factor_orders().to_vec(),
        checks: suite.0,
    })
}
