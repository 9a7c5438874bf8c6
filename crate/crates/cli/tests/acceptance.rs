//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! The process fails when a criterion outside `KNOWN_RED` fails, or when a
//! known-red criterion starts passing (so its write-up gets revisited).

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use abelian_codes::bits::BitSet;
use abelian_codes::codes::enumerate::{
    histogram, histogram_naive, histogram_sequential, RowBundle,
};
use abelian_codes::codes::{
    analyze_family, cross_difference_word, minimum_weight, theoretical_expectations,
    weight_distribution, AnalysisOptions, CodeReport, IdealCode, WeightClaim, WeightHints,
};
use abelian_codes::idempotents::three_prime_components;
use abelian_codes::number_theory::{
    is_odd_prime, joint_order_2, residue_partition, validate_hypotheses,
};
use abelian_codes::{
    parse_group_spec, AbelianGroup, AlgebraElement, HypothesisMode, IdempotentFamily,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const C1_LIMIT: Duration = Duration::from_secs(1);
const C2_LIMIT: Duration = Duration::from_secs(5);
const C6_LIMIT: Duration = Duration::from_secs(10);
const C8_LIMIT: Duration = Duration::from_secs(30);
const C2_BUDGET: u64 = 1 << 10;
const C7_BUDGET: u64 = 1 << 20;
const C8_BUDGET: u64 = 1 << 20;
const PROPERTY_CASES: u32 = 256;
const THREAD_COUNTS: [&str; 3] = ["1", "2", "8"];

/// Criteria whose failure is analysed in the decisions ledger.
const KNOWN_RED: &[usize] = &[7];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn family(spec: &str) -> IdempotentFamily {
    parse_group_spec(spec, HypothesisMode::Strict)
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
        .build_family()
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn code_of(f: &IdempotentFamily, label: &str) -> IdealCode {
    IdealCode::new(&f.get(label).unwrap_or_else(|| panic!("no {label}")).element)
}

fn analyze(f: &IdempotentFamily, budget: u64) -> BTreeMap<String, CodeReport> {
    let opts = AnalysisOptions {
        budget,
        threads: 0,
        distribution: false,
    };
    analyze_family(f, &opts)
        .unwrap()
        .into_iter()
        .map(|r| (r.label.clone(), r))
        .collect()
}

fn exact(reports: &BTreeMap<String, CodeReport>, label: &str) -> Option<usize> {
    reports[label].min_weight.exact()
}

fn golden(
    spec: &str,
    support: &[u64],
    dim: usize,
    dist: &[(usize, u64)],
    budget: u64,
    limit: Duration,
) -> Verdict {
    let start = Instant::now();
    let f = family(spec);
    let e = &f.get("e3").unwrap().element;
    let code = IdealCode::new(e);
    let got = weight_distribution(&code, budget, 0).unwrap();
    let elapsed = start.elapsed();
    let want: BTreeMap<usize, u64> = dist.iter().copied().collect();
    let ok_support = e.cyclic_support() == support;
    let ok = ok_support && code.dimension() == dim && got == want && elapsed < limit;
    verdict(
        ok,
        format!(
            "support match {ok_support}, dim {}, distribution {:?}, {} words, {:.3}s (limit {}s)",
            code.dimension(),
            got,
            got.values().sum::<u64>(),
            elapsed.as_secs_f64(),
            limit.as_secs()
        ),
    )
}

fn criterion_1() -> Verdict {
    golden(
        "15",
        &[1, 2, 3, 4, 6, 8, 9, 12],
        4,
        &[(8, 15)],
        C2_BUDGET,
        C1_LIMIT,
    )
}

fn criterion_2() -> Verdict {
    golden(
        "33",
        &[
            1, 2, 3, 4, 6, 8, 9, 11, 12, 15, 16, 17, 18, 21, 22, 24, 25, 27, 29, 30, 31, 32,
        ],
        10,
        &[
            (12, 165),
            (14, 165),
            (16, 165),
            (18, 330),
            (20, 165),
            (22, 33),
        ],
        C2_BUDGET,
        C2_LIMIT,
    )
}

fn criterion_3() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in ["15", "33"] {
        let f = family(spec);
        let (p, q) = match parse_group_spec(spec, HypothesisMode::Strict).unwrap() {
            abelian_codes::GroupShape::Pq { pair } => (pair.p as usize, pair.q as usize),
            _ => unreachable!(),
        };
        let r = analyze(&f, C2_BUDGET);
        let w: Vec<Option<usize>> = ["e0", "e1", "e2", "e3", "e4"]
            .iter()
            .map(|l| exact(&r, l))
            .collect();
        let here = w[0] == Some(p * q)
            && w[1] == Some(2 * p)
            && w[2] == Some(2 * q)
            && w[3].is_some_and(|x| (4..=p + q).contains(&x))
            && w[3] == w[4];
        ok &= here;
        parts.push(format!(
            "C{} (p={p}, q={q}): {:?}",
            p * q,
            w.iter().flatten().collect::<Vec<_>>()
        ));
    }
    verdict(ok, parts.join("; "))
}

fn criterion_4() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, q, want) in [(3, 5, 8), (3, 11, 14), (11, 13, 24)] {
        let pair = validate_hypotheses(p, q, HypothesisMode::Strict).unwrap();
        let f = abelian_codes::idempotents::family_pq(&pair).unwrap();
        for label in ["e3", "e4"] {
            let cd = cross_difference_word(&f, label).unwrap();
            ok &= cd.weight == want;
            parts.push(format!("({p},{q}) {label}: {}", cd.weight));
        }
    }
    verdict(ok, parts.join(", "))
}

fn criterion_5() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in ["15", "33", "45", "9x25", "3x5x11", "143"] {
        let f = family(spec);
        let checks = f.checks().unwrap();
        let dims: Vec<(usize, u64)> = f
            .members
            .iter()
            .map(|m| (IdealCode::new(&m.element).dimension(), m.predicted_dim))
            .collect();
        let labelwise = dims.iter().all(|(c, p)| *c as u64 == *p);
        let total: usize = dims.iter().map(|d| d.0).sum();
        let here = checks.passed() && labelwise && total == f.group.order();
        ok &= here;
        parts.push(format!(
            "{spec}: {} members / {} classes, dims sum {total}{}",
            checks.family_size,
            checks.class_count,
            if here { "" } else { " MISMATCH" }
        ));
    }
    verdict(ok, parts.join("; "))
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let f = family("45");
    let dims: Vec<u64> = f.members.iter().map(|m| m.predicted_dim).collect();
    let computed: Vec<u64> = f
        .members
        .iter()
        .map(|m| IdealCode::new(&m.element).dimension() as u64)
        .collect();
    let r = analyze(&f, 1 << 12);
    let w: Vec<Option<usize>> = ["I0", "I0,1", "I1,0", "I2,0"]
        .iter()
        .map(|l| exact(&r, l))
        .collect();
    let elapsed = start.elapsed();
    let ok = dims == [1, 4, 2, 6, 4, 4, 12, 12]
        && computed == dims
        && w == [Some(45), Some(18), Some(30), Some(10)]
        && elapsed < C6_LIMIT;
    verdict(
        ok,
        format!(
            "dims {computed:?}, I0/I0,1/I1,0/I2,0 = {:?}, {:.3}s",
            w.iter().flatten().collect::<Vec<_>>(),
            elapsed.as_secs_f64()
        ),
    )
}

fn conjectured(f: &IdempotentFamily, label: &str) -> Option<u64> {
    match &theoretical_expectations(f)[label].weight {
        Some(WeightClaim::Conjecture { value, .. }) => *value,
        _ => None,
    }
}

fn criterion_7() -> Verdict {
    let f = family("9x25");
    let c11 = code_of(&f, "I1,1*");
    let w11 = weight_distribution(&c11, C7_BUDGET, 0).unwrap();
    let min11 = *w11.keys().next().unwrap();
    let c12 = code_of(&f, "I1,2*");
    let min12 = minimum_weight(&c12, C7_BUDGET, 0, &WeightHints::default()).exact();
    let conj11 = conjectured(&f, "I1,1*");
    let conj12 = conjectured(&f, "I1,2*");
    // 3^(m-i)·5^(n-j)·8 with m = n = 2, i = j = 1; diagnostic only.
    let shifted11 = 3 * 5 * 8;
    let ok = c11.dimension() == 4 && c11.size() == 16 && Some(min11 as u64) == conj11 && min11 == 8;
    verdict(
        ok,
        format!(
            "I1,1*: dim {}, {} words, min weight {min11} vs conjectured {conj11:?} \
             (index-shifted formula gives {shifted11}); \
             I1,2*: dim {}, min weight {min12:?} vs conjectured {conj12:?} (recorded only)",
            c11.dimension(),
            c11.size(),
            c12.dimension()
        ),
    )
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let f = family("3x5x11");
    let checks = f.checks().unwrap();
    let comps = three_prime_components(&f).unwrap();
    let r = analyze(&f, C8_BUDGET);
    let elapsed = start.elapsed();
    let mut dims: Vec<usize> = r.values().map(|x| x.dimension).collect();
    dims.sort_unstable();
    let mut want = vec![1, 2, 4, 10, 4, 4, 10, 10, 20, 20, 20, 20, 20, 20];
    want.sort_unstable();
    let all_exact = r.values().all(|x| x.min_weight.exact().is_some());
    let labeled: Vec<u64> = f.members.iter().map(|m| m.predicted_dim).collect();
    let ok = f.len() == 14
        && dims == want
        && r.values().all(|x| x.dimension_matches)
        && comps.sum_identity
        && comps.matches_family == [true; 4]
        && checks.partition_of_unity
        && all_exact
        && elapsed < C8_LIMIT;
    verdict(
        ok,
        format!(
            "{} idempotents, dims by label {labeled:?}, A+B+C+D = 1 {}, partition {}, \
             all 14 weights exact {all_exact}, {:.3}s",
            f.len(),
            comps.sum_identity,
            checks.partition_of_unity,
            elapsed.as_secs_f64()
        ),
    )
}

fn element(g: &std::sync::Arc<AbelianGroup>, bits: &[bool]) -> AlgebraElement {
    let idx = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i);
    AlgebraElement::from_bits(g, BitSet::from_indices(g.order(), idx))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_9() -> Verdict {
    let mut errors = Vec::new();
    let g = AbelianGroup::new(vec![9, 5]).unwrap();
    let n = g.order();
    let triple = prop::collection::vec(prop::collection::vec(any::<bool>(), n), 3);

    let r = run_property("ring axioms", triple.clone(), |v| {
        let (x, y, z) = (element(&g, &v[0]), element(&g, &v[1]), element(&g, &v[2]));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        Ok(())
    });
    errors.extend(r.err());
    let r = run_property("frobenius", triple.clone(), |v| {
        let x = element(&g, &v[0]);
        prop_assert_eq!(&x * &x, x.square());
        prop_assert_eq!(x.square(), x.map_exponents(2));
        Ok(())
    });
    errors.extend(r.err());
    let r = run_property("translate weight", (triple, 0..n), |(v, k)| {
        let x = element(&g, &v[0]);
        prop_assert_eq!(x.translate(&g.element_at(k)).weight(), x.weight());
        Ok(())
    });
    errors.extend(r.err());
    let rows = (0usize..=12, 1usize..130).prop_flat_map(|(k, w)| {
        (
            Just(w),
            prop::collection::vec(prop::collection::vec(any::<bool>(), w), k),
        )
    });
    let r = run_property("gray vs naive", rows, |(w, rs)| {
        let rs: Vec<BitSet> = rs
            .iter()
            .map(|b| {
                BitSet::from_indices(w, b.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i))
            })
            .collect();
        let bundle = RowBundle::new(&rs);
        let naive = histogram_naive(&rs, w);
        prop_assert_eq!(histogram_sequential(&bundle, w), naive.clone());
        prop_assert_eq!(histogram(&bundle, w, 2), naive);
        Ok(())
    });
    errors.extend(r.err());

    let mut residue_primes = 0;
    for p in (3..200u64).filter(|&p| is_odd_prime(p) && p % 4 == 3) {
        let a = ((p - 3) / 4) as usize;
        match residue_partition(p) {
            Ok(part) if part.counts() == (a, a, ((p + 1) / 4) as usize, a) => residue_primes += 1,
            _ => errors.push(format!("residue classes for p = {p}")),
        }
    }
    let primes: Vec<u64> = (3..170).filter(|&p| is_odd_prime(p)).collect();
    let mut pairs = 0;
    for &p in &primes {
        for &q in primes.iter().filter(|&&q| q > p && p * q < 500) {
            if validate_hypotheses(p, q, HypothesisMode::Strict).is_ok() {
                pairs += 1;
                if joint_order_2(p, q).ok() != Some((p - 1) * (q - 1) / 2) {
                    errors.push(format!("order of 2 mod {}", p * q));
                }
            }
        }
    }
    verdict(
        errors.is_empty(),
        if errors.is_empty() {
            format!(
                "4 properties x {PROPERTY_CASES} cases, residue classes for {residue_primes} primes, \
                 order identity for {pairs} pairs"
            )
        } else {
            errors.join("; ")
        },
    )
}

fn criterion_10() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_abelcodes");
    let outputs: Vec<Vec<u8>> = THREAD_COUNTS
        .iter()
        .map(|t| {
            Command::new(bin)
                .args([
                    "analyze",
                    "33",
                    "--distribution",
                    "--format",
                    "json",
                    "--threads",
                    t,
                ])
                .env_remove("ABELCODES_THREADS")
                .output()
                .expect("run abelcodes")
        })
        .map(|o| {
            assert!(o.status.success(), "exit {:?}", o.status);
            o.stdout
        })
        .collect();
    let identical = outputs.windows(2).all(|w| w[0] == w[1]);
    verdict(
        identical && !outputs[0].is_empty(),
        format!(
            "threads {THREAD_COUNTS:?}: {} bytes each, identical {identical}",
            outputs[0].len()
        ),
    )
}

fn main() {
    let criteria: [(usize, fn() -> Verdict); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (n, run) in criteria {
        let v = run();
        println!(
            "criterion {n}: {} ({})",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        if v.pass == KNOWN_RED.contains(&n) {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: outcome as recorded (known red: {KNOWN_RED:?})");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
