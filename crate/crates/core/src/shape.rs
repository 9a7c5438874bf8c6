//! Group specifications such as `"15"`, `"3x11"`, `"9x25"` or `"3x5x11"`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group_algebra::MAX_GROUP_ORDER;
use crate::idempotents::{family_pq, family_prime_power, family_three_primes, IdempotentFamily};
use crate::number_theory::{
    factorize, is_odd_prime, validate_hypotheses, validate_three_primes, HypothesisFailure,
    HypothesisMode, PrimePair,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum GroupShape {
    /// `C_p × C_q`, already normalized.
    Pq { pair: PrimePair },
    PrimePower {
        p: u64,
        m: u32,
        q: u64,
        n: u32,
        failures: Vec<HypothesisFailure>,
    },
    ThreePrimes {
        primes: [u64; 3],
        failures: Vec<HypothesisFailure>,
    },
}

impl GroupShape {
    pub fn order(&self) -> u64 {
        match self {
            GroupShape::Pq { pair } => pair.order(),
            GroupShape::PrimePower { p, m, q, n, .. } => p.pow(*m) * q.pow(*n),
            GroupShape::ThreePrimes { primes, .. } => primes.iter().product(),
        }
    }

    pub fn failures(&self) -> &[HypothesisFailure] {
        match self {
            GroupShape::Pq { pair } => &pair.failures,
            GroupShape::PrimePower { failures, .. } | GroupShape::ThreePrimes { failures, .. } => {
                failures
            }
        }
    }

    pub fn mode(&self) -> HypothesisMode {
        if self.failures().is_empty() {
            HypothesisMode::Strict
        } else {
            HypothesisMode::Override
        }
    }

    pub fn build_family(&self) -> Result<IdempotentFamily> {
        match self {
            GroupShape::Pq { pair } => family_pq(pair),
            GroupShape::PrimePower { p, m, q, n, .. } => {
                family_prime_power(*p, *m, *q, *n, self.mode())
            }
            GroupShape::ThreePrimes { primes, .. } => family_three_primes(*primes, self.mode()),
        }
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupShape::Pq { pair } => write!(f, "C{} x C{}", pair.p, pair.q),
            GroupShape::PrimePower { p, m, q, n, .. } => {
                write!(f, "C{} x C{}", p.pow(*m), q.pow(*n))
            }
            GroupShape::ThreePrimes {
                primes: [a, b, c], ..
            } => write!(f, "C{a} x C{b} x C{c}"),
        }
    }
}

fn parse_factor(token: &str) -> Result<(u64, u32)> {
    let bad = || Error::Parse(format!("cannot read group factor {token:?}"));
    let (base, exp) = match token.split_once('^') {
        Some((b, e)) => (
            b.trim().parse::<u64>().map_err(|_| bad())?,
            e.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => (token.trim().parse::<u64>().map_err(|_| bad())?, 1),
    };
    if exp == 0 {
        return Err(bad());
    }
    let f = factorize(base);
    match f.as_slice() {
        [(p, k)] if is_odd_prime(*p) => Ok((*p, k * exp)),
        _ => Err(Error::Unsupported(format!(
            "factor {token} is not a power of an odd prime"
        ))),
    }
}

fn classify(factors: Vec<(u64, u32)>, mode: HypothesisMode) -> Result<GroupShape> {
    match factors.as_slice() {
        [(p, 1), (q, 1)] => Ok(GroupShape::Pq {
            pair: validate_hypotheses(*p, *q, mode)?,
        }),
        &[(p, m), (q, n)] => {
            let failures = validate_hypotheses(p, q, mode)?.failures;
            Ok(GroupShape::PrimePower {
                p,
                m,
                q,
                n,
                failures,
            })
        }
        &[(a, 1), (b, 1), (c, 1)] => {
            let mut primes = [a, b, c];
            primes.sort_unstable();
            let failures = validate_three_primes(primes, mode)?;
            Ok(GroupShape::ThreePrimes { primes, failures })
        }
        _ => Err(Error::Unsupported(format!(
            "need p^m·q^n or p1·p2·p3, got {}",
            factors
                .iter()
                .map(|(p, k)| if *k == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{k}")
                })
                .collect::<Vec<_>>()
                .join("·")
        ))),
    }
}

/// Parse a group spec and check the standing hypotheses.
///
/// A bare integer is factored and its prime-power parts taken in increasing
/// order; an explicit product keeps the order written.
pub fn parse_group_spec(spec: &str, mode: HypothesisMode) -> Result<GroupShape> {
    let s = spec.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty group spec".into()));
    }
    let tokens: Vec<&str> = s.split(['x', 'X', '×', '*']).map(str::trim).collect();
    let factors = if tokens.len() == 1 && !s.contains('^') {
        let n: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("cannot read group spec {spec:?}")))?;
        if n < 2 {
            return Err(Error::Unsupported(format!("group of order {n}")));
        }
        let f = factorize(n);
        if let Some((p, _)) = f.iter().find(|(p, _)| !is_odd_prime(*p)) {
            return Err(Error::Unsupported(format!(
                "order {n} has the prime factor {p}"
            )));
        }
        f
    } else {
        let f = tokens
            .iter()
            .map(|t| parse_factor(t))
            .collect::<Result<Vec<_>>>()?;
        for (i, (p, _)) in f.iter().enumerate() {
            if f[..i].iter().any(|(r, _)| r == p) {
                return Err(Error::Unsupported(format!("prime {p} appears twice")));
            }
        }
        f
    };
    let order = factors.iter().try_fold(1u64, |acc, (p, k)| {
        p.checked_pow(*k).and_then(|x| acc.checked_mul(x))
    });
    match order {
        Some(o) if o <= MAX_GROUP_ORDER as u64 => classify(factors, mode),
        _ => Err(Error::Unsupported(format!(
            "group order exceeds {MAX_GROUP_ORDER}"
        ))),
    }
}
