//! Small-integer number theory: orders, quadratic residues, CRT indexing and
//! the standing hypotheses on the prime pair.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

fn require_odd_prime(n: u64) -> Result<()> {
    if is_odd_prime(n) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(n))
    }
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Least `k ≥ 1` with `a^k ≡ 1 (mod n)`.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n < 2 || a.gcd(&n) != 1 {
        return Err(Error::NotAUnit { a, n });
    }
    let a = a % n;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    Ok(k)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// True when 2 generates the unit group modulo `n`.
pub fn two_is_primitive_root(n: u64) -> bool {
    multiplicative_order(2, n).is_ok_and(|k| k == euler_phi(n))
}

/// Order of 2 modulo `pq`, computed as `lcm(p-1, q-1)` and cross-checked
/// against the direct order.
pub fn joint_order_2(p: u64, q: u64) -> Result<u64> {
    let formula = (p - 1).lcm(&(q - 1));
    let direct = multiplicative_order(2, p * q)?;
    if formula != direct {
        return Err(Error::Consistency(format!(
            "order of 2 mod {} is {direct}, expected lcm({}, {}) = {formula}",
            p * q,
            p - 1,
            q - 1
        )));
    }
    Ok(formula)
}

/// One failed standing condition on a set of primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum HypothesisFailure {
    /// gcd(p−1, q−1) must be 2.
    UnitGroupGcd { p: u64, q: u64, gcd: u64 },
    /// 2 must generate U(Z_modulus).
    TwoNotPrimitive {
        modulus: u64,
        order: u64,
        required: u64,
    },
    /// gcd(p−1, q) = 1 and gcd(p, q−1) = 1.
    CrossCoprime { p: u64, q: u64, gcd: u64 },
    /// the primes must be distinct.
    Repeated { p: u64 },
}

impl fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypothesisFailure::UnitGroupGcd { p, q, gcd } => {
                write!(f, "(i) gcd({}, {}) = {gcd}, need 2", p - 1, q - 1)
            }
            HypothesisFailure::TwoNotPrimitive {
                modulus,
                order,
                required,
            } => write!(f, "(ii) 2 has order {order} mod {modulus}, need {required}"),
            HypothesisFailure::CrossCoprime { p, q, gcd } => {
                write!(f, "(iii) gcd({}, {q}) = {gcd}, need 1", p - 1)
            }
            HypothesisFailure::Repeated { p } => write!(f, "prime {p} repeated"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum HypothesisMode {
    #[default]
    Strict,
    /// Build anyway and carry the failures along, for exploration only.
    Override,
}

/// A pair of odd primes, relabelled so that `q ≡ 3 (mod 4)` when possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePair {
    pub p: u64,
    pub q: u64,
    pub q_is_3_mod_4: bool,
    /// The input order was reversed during normalization.
    pub swapped: bool,
    /// Empty for a validated pair; populated only in override mode.
    pub failures: Vec<HypothesisFailure>,
}

impl PrimePair {
    pub fn is_validated(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.p * self.q
    }
}

fn pair_failures(p: u64, q: u64) -> Vec<HypothesisFailure> {
    let mut failures = Vec::new();
    if p == q {
        failures.push(HypothesisFailure::Repeated { p });
        return failures;
    }
    let g = (p - 1).gcd(&(q - 1));
    if g != 2 {
        failures.push(HypothesisFailure::UnitGroupGcd { p, q, gcd: g });
    }
    for r in [p, q] {
        let modulus = r * r;
        let required = euler_phi(modulus);
        let order = multiplicative_order(2, modulus).expect("odd modulus");
        if order != required {
            failures.push(HypothesisFailure::TwoNotPrimitive {
                modulus,
                order,
                required,
            });
        }
    }
    for (x, y) in [(p, q), (q, p)] {
        let g = (x - 1).gcd(&y);
        if g != 1 {
            failures.push(HypothesisFailure::CrossCoprime { p: x, q: y, gcd: g });
        }
    }
    failures
}

/// Check the three standing conditions on `(p, q)` and normalize so that
/// `q ≡ 3 (mod 4)`. When both primes are `3 mod 4` the input order is kept.
pub fn validate_hypotheses(p: u64, q: u64, mode: HypothesisMode) -> Result<PrimePair> {
    require_odd_prime(p)?;
    require_odd_prime(q)?;
    let failures = pair_failures(p, q);
    if !failures.is_empty() && mode == HypothesisMode::Strict {
        return Err(Error::Hypothesis(failures));
    }
    let swap = q % 4 != 3 && p % 4 == 3;
    let (p, q) = if swap { (q, p) } else { (p, q) };
    Ok(PrimePair {
        p,
        q,
        q_is_3_mod_4: q % 4 == 3,
        swapped: swap,
        failures,
    })
}

/// Conditions for three distinct primes: pairwise `gcd(pᵢ−1, pⱼ−1) = 2` and 2
/// primitive modulo each prime.
pub fn validate_three_primes(
    primes: [u64; 3],
    mode: HypothesisMode,
) -> Result<Vec<HypothesisFailure>> {
    for &p in &primes {
        require_odd_prime(p)?;
    }
    let mut failures = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let (p, q) = (primes[i], primes[j]);
            if p == q {
                failures.push(HypothesisFailure::Repeated { p });
                continue;
            }
            let g = (p - 1).gcd(&(q - 1));
            if g != 2 {
                failures.push(HypothesisFailure::UnitGroupGcd { p, q, gcd: g });
            }
        }
    }
    for &p in &primes {
        let order = multiplicative_order(2, p).expect("odd prime");
        if order != p - 1 {
            failures.push(HypothesisFailure::TwoNotPrimitive {
                modulus: p,
                order,
                required: p - 1,
            });
        }
    }
    if !failures.is_empty() && mode == HypothesisMode::Strict {
        return Err(Error::Hypothesis(failures));
    }
    Ok(failures)
}

/// Quadratic-residue structure of `Z_p`, classifying each `x` by the residue
/// status of `x` and `x − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResiduePartition {
    pub p: u64,
    pub residues: BTreeSet<u64>,
    pub nonresidues: BTreeSet<u64>,
    /// x ∈ Q, x−1 ∈ Q
    pub qq: BTreeSet<u64>,
    /// x ∈ Q, x−1 ∈ N
    pub qn: BTreeSet<u64>,
    /// x ∈ N, x−1 ∈ Q
    pub nq: BTreeSet<u64>,
    /// x ∈ N, x−1 ∈ N
    pub nn: BTreeSet<u64>,
}

/// Cardinalities of the four classes `(QQ, QN, NQ, NN)`.
pub type ClassCounts = (usize, usize, usize, usize);

impl ResiduePartition {
    pub fn counts(&self) -> ClassCounts {
        (self.qq.len(), self.qn.len(), self.nq.len(), self.nn.len())
    }

    pub fn is_residue(&self, x: u64) -> bool {
        self.residues.contains(&(x % self.p))
    }

    pub fn is_nonresidue(&self, x: u64) -> bool {
        self.nonresidues.contains(&(x % self.p))
    }

    /// Closed-form class sizes. For `p ≡ 3 (mod 4)` these are the classical
    /// `(p−3)/4, (p−3)/4, (p+1)/4, (p−3)/4`; for `p ≡ 1 (mod 4)` the
    /// brute-force values are `(p−5)/4` for QQ and `(p−1)/4` for the rest.
    pub fn predicted_counts(p: u64) -> ClassCounts {
        let p = p as usize;
        if p % 4 == 3 {
            let a = (p - 3) / 4;
            (a, a, (p + 1) / 4, a)
        } else {
            let a = (p - 1) / 4;
            ((p - 5) / 4, a, a, a)
        }
    }

    /// The alternative closed form `(p+5)/4` sometimes quoted for `|QQ|` when
    /// `p ≡ 1 (mod 4)`; returns `None` when it is not even an integer.
    pub fn quoted_qq_for_1_mod_4(p: u64) -> Option<u64> {
        (p + 5).is_multiple_of(4).then_some((p + 5) / 4)
    }
}

/// Brute-force residue partition: square every unit of `Z_p`.
pub fn residue_partition(p: u64) -> Result<ResiduePartition> {
    require_odd_prime(p)?;
    let residues: BTreeSet<u64> = (1..p).map(|x| x * x % p).collect();
    let nonresidues: BTreeSet<u64> = (1..p).filter(|x| !residues.contains(x)).collect();
    let mut part = ResiduePartition {
        p,
        residues,
        nonresidues,
        qq: BTreeSet::new(),
        qn: BTreeSet::new(),
        nq: BTreeSet::new(),
        nn: BTreeSet::new(),
    };
    for x in 2..p {
        let (xr, yr) = (part.residues.contains(&x), part.residues.contains(&(x - 1)));
        let bucket = match (xr, yr) {
            (true, true) => &mut part.qq,
            (true, false) => &mut part.qn,
            (false, true) => &mut part.nq,
            (false, false) => &mut part.nn,
        };
        bucket.insert(x);
    }
    if p % 4 == 3 && part.counts() != ResiduePartition::predicted_counts(p) {
        return Err(Error::Consistency(format!(
            "residue class sizes {:?} for p = {p} disagree with {:?}",
            part.counts(),
            ResiduePartition::predicted_counts(p)
        )));
    }
    Ok(part)
}

/// Whether −1 is a square mod `p`; cross-checked against `p ≡ 1 (mod 4)`.
pub fn minus_one_is_residue(p: u64) -> Result<bool> {
    require_odd_prime(p)?;
    let direct = (1..p).any(|x| x * x % p == p - 1);
    if direct != (p % 4 == 1) {
        return Err(Error::Consistency(format!(
            "-1 residue status mod {p} contradicts p mod 4"
        )));
    }
    Ok(direct)
}

/// `i ↦ (i mod p, i mod q)`.
pub fn crt_split(i: u64, p: u64, q: u64) -> (u64, u64) {
    (i % p, i % q)
}

/// Inverse of [`crt_split`] for coprime `p, q`: the unique `i ∈ [0, pq)`.
pub fn crt_recombine(i1: u64, i2: u64, p: u64, q: u64) -> u64 {
    let (s, t) = crt_inverses(p, q).expect("coprime moduli");
    // s·q ≡ 1 (mod p) and t·p ≡ 1 (mod q)
    let n = (p * q) as u128;
    let v = (i1 % p) as u128 * (s * q) as u128 + (i2 % q) as u128 * (t * p) as u128;
    (v % n) as u64
}

/// Smallest positive `s, t` with `s·q ≡ 1 (mod p)` and `t·p ≡ 1 (mod q)`.
pub fn crt_inverses(p: u64, q: u64) -> Result<(u64, u64)> {
    Ok((mod_inverse(q, p)?, mod_inverse(p, q)?))
}

pub fn mod_inverse(a: u64, n: u64) -> Result<u64> {
    let eg = (a as i128).extended_gcd(&(n as i128));
    if eg.gcd != 1 {
        return Err(Error::NotAUnit { a, n });
    }
    let x = eg.x.rem_euclid(n as i128) as u64;
    // n = 1 gives x = 0; the smallest positive inverse is then 1
    Ok(if x == 0 { 1 } else { x })
}
