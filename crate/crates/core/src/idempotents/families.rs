use serde::Serialize;

use super::blocks::{build_u, split_pair, UVBlock};
use super::{FamilyShape, IdempotentFamily, LabeledIdempotent};
use crate::cyclotomic::{class_sum, FifthClass};
use crate::error::{Error, Result};
use crate::group_algebra::{AbelianGroup, AlgebraElement, Subgroup};
use crate::number_theory::{validate_hypotheses, validate_three_primes, HypothesisMode, PrimePair};

/// Class-sum forms of the two split idempotents of `C_p × C_q`.
#[derive(Debug, Clone, Serialize)]
pub struct PqForms {
    pub case: Option<FifthClass>,
    /// Exponent `k` with `e₄ = e₃(g ↦ g^k)`, reduced mod `pq`.
    pub exponent_map: Option<u64>,
    pub e3_matches_class_sums: bool,
    pub e4_matches_class_sums: bool,
    pub e4_is_exponent_image: bool,
}

impl PqForms {
    pub fn passed(&self) -> bool {
        self.case.is_some()
            && self.e3_matches_class_sums
            && self.e4_matches_class_sums
            && self.e4_is_exponent_image
    }
}

fn labeled(
    label: impl Into<String>,
    element: AlgebraElement,
    predicted_dim: u64,
) -> LabeledIdempotent {
    LabeledIdempotent {
        label: label.into(),
        element,
        predicted_dim,
    }
}

/// The five primitive idempotents of `F₂(C_p × C_q)` for a normalized pair.
///
/// The group is `[p, q]`, `a = g^q` generates the `p`-part and `b = g^p` the
/// `q`-part. `e₃` is the split member whose support contains `g`.
pub fn family_pq(pair: &PrimePair) -> Result<IdempotentFamily> {
    let (p, q) = (pair.p, pair.q);
    let group = AbelianGroup::new(vec![p, q])?;
    let a = group.cyclic(q as i64);
    let b = group.cyclic(p as i64);
    let trivial = Subgroup::trivial(&group);
    let a_hat = Subgroup::cyclic(&group, &a).hat();
    let b_hat = Subgroup::cyclic(&group, &b).hat();
    let one = AlgebraElement::one(&group);

    let u = build_u(&group, &a, p, &trivial)?;
    let v = build_u(&group, &b, q, &trivial)?;
    let (first, second) = split_pair(&u, &v)?;
    let g_rank = group.rank(&group.cyclic(1));
    let (e3, e4) = if first.coefficients().get(g_rank) {
        (first, second)
    } else {
        (second, first)
    };

    let members = vec![
        labeled("e0", &a_hat * &b_hat, 1),
        labeled("e1", &a_hat * &(&one + &b_hat), q - 1),
        labeled("e2", &(&one + &a_hat) * &b_hat, p - 1),
        labeled("e3", e3, (p - 1) * (q - 1) / 2),
        labeled("e4", e4, (p - 1) * (q - 1) / 2),
    ];
    let family = IdempotentFamily {
        shape: FamilyShape::Pq { p, q },
        group,
        members,
        blocks: vec![("u".into(), u), ("v".into(), v)],
        hypothesis_failures: pair.failures.clone(),
    };
    let forms = pq_forms(&family)?;
    if forms.case.is_some() && !forms.passed() {
        return Err(Error::Consistency(format!(
            "class-sum forms disagree with the u/v construction: {forms:?}"
        )));
    }
    Ok(family)
}

/// Compare `e₃`, `e₄` of a `C_p × C_q` family with their class-sum forms and
/// check that an exponent map carries `e₃` to `e₄`.
pub fn pq_forms(family: &IdempotentFamily) -> Result<PqForms> {
    let FamilyShape::Pq { p, q } = family.shape else {
        return Err(Error::Unsupported(
            "class-sum forms need a p·q family".into(),
        ));
    };
    let group = &family.group;
    let get = |l: &str| family.get(l).map(|m| m.element.clone()).unwrap();
    let (e3, e4) = (get("e3"), get("e4"));
    let s = |k: i64| class_sum(group, &group.cyclic(k));

    let case = match (p % 4, q % 4) {
        (3, 3) => Some(FifthClass::SumExponent),
        (1, 3) => Some(FifthClass::Inverse),
        _ => None,
    };
    let order = group.order() as u64;
    let (forms, exponent_map) = match case {
        Some(FifthClass::SumExponent) => {
            let tail = &s(p as i64)? + &s(q as i64)?;
            let f3 = &s(1)? + &tail;
            let f4 = &s((p + q) as i64)? + &tail;
            (Some((f3, f4)), Some((p + q) % order))
        }
        Some(FifthClass::Inverse) => {
            let tail = s(q as i64)?;
            let f3 = &s(1)? + &tail;
            let f4 = &s(-1)? + &tail;
            (Some((f3, f4)), Some(order - 1))
        }
        None => (None, None),
    };
    let (m3, m4) = match &forms {
        Some((f3, f4)) => (*f3 == e3, *f4 == e4),
        None => (false, false),
    };
    let image = exponent_map.is_some_and(|k| e3.map_exponents(k) == e4);
    Ok(PqForms {
        case,
        exponent_map,
        e3_matches_class_sums: m3,
        e4_matches_class_sums: m4,
        e4_is_exponent_image: image,
    })
}

/// `(i, j, inside)` for every split index pair of the prime-power family;
/// `inside` marks `1 ≤ i ≤ m−1, 1 ≤ j ≤ n−1`.
pub fn prime_power_split_indices(m: u32, n: u32) -> Vec<(u32, u32, bool)> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            out.push((i, j, i < m && j < n));
        }
    }
    out
}

/// The `1 + m + n + 2mn` primitive idempotents of `F₂(C_{p^m} × C_{q^n})`.
///
/// The primes are used in the order given (no normalization); the group is
/// `[p^m, q^n]` with `a = g^{q^n}` and `b = g^{p^m}`. The split pair is
/// labelled exactly as printed: `I*ᵢⱼ = uv + u²v²`.
pub fn family_prime_power(
    p: u64,
    m: u32,
    q: u64,
    n: u32,
    mode: HypothesisMode,
) -> Result<IdempotentFamily> {
    if m == 0 || n == 0 {
        return Err(Error::Parse("exponents must be at least 1".into()));
    }
    let failures = validate_hypotheses(p, q, mode)?.failures;
    let (pm, qn) = (p.pow(m), q.pow(n));
    let group = AbelianGroup::new(vec![pm, qn])?;
    let a = group.cyclic(qn as i64);
    let b = group.cyclic(pm as i64);
    // a_levels[i] = ⟨a^{p^i}⟩, i = 0..=m
    let a_levels: Vec<Subgroup> = (0..=m)
        .map(|i| Subgroup::cyclic(&group, &group.power(&a, p.pow(i) as i64)))
        .collect();
    let b_levels: Vec<Subgroup> = (0..=n)
        .map(|j| Subgroup::cyclic(&group, &group.power(&b, q.pow(j) as i64)))
        .collect();
    let a_hat: Vec<AlgebraElement> = a_levels.iter().map(Subgroup::hat).collect();
    let b_hat: Vec<AlgebraElement> = b_levels.iter().map(Subgroup::hat).collect();

    let mut members = vec![labeled("I0", &a_hat[0] * &b_hat[0], 1)];
    for j in 1..=n {
        let e = &a_hat[0] * &(&b_hat[j as usize] + &b_hat[j as usize - 1]);
        members.push(labeled(format!("I0,{j}"), e, q.pow(j - 1) * (q - 1)));
    }
    for i in 1..=m {
        let e = &(&a_hat[i as usize] + &a_hat[i as usize - 1]) * &b_hat[0];
        members.push(labeled(format!("I{i},0"), e, p.pow(i - 1) * (p - 1)));
    }

    let mut blocks = Vec::new();
    let us: Vec<UVBlock> = (1..=m)
        .map(|i| {
            build_u(
                &group,
                &group.power(&a, p.pow(i - 1) as i64),
                p,
                &a_levels[i as usize],
            )
        })
        .collect::<Result<_>>()?;
    let vs: Vec<UVBlock> = (1..=n)
        .map(|j| {
            build_u(
                &group,
                &group.power(&b, q.pow(j - 1) as i64),
                q,
                &b_levels[j as usize],
            )
        })
        .collect::<Result<_>>()?;
    for (i, j, _) in prime_power_split_indices(m, n) {
        let (u, v) = (&us[i as usize - 1], &vs[j as usize - 1]);
        let (star, double) = split_pair(u, v)?;
        let dim = p.pow(i - 1) * (p - 1) * q.pow(j - 1) * (q - 1) / 2;
        members.push(labeled(format!("I{i},{j}*"), star, dim));
        members.push(labeled(format!("I{i},{j}**"), double, dim));
    }
    for (i, u) in us.into_iter().enumerate() {
        blocks.push((format!("u{}", i + 1), u));
    }
    for (j, v) in vs.into_iter().enumerate() {
        blocks.push((format!("v{}", j + 1), v));
    }

    Ok(IdempotentFamily {
        shape: FamilyShape::PrimePower { p, m, q, n },
        group,
        members,
        blocks,
        hypothesis_failures: failures,
    })
}

/// The recombined idempotents over the triple component, built from
/// `α = uv + u²v + uv²` and `β = uv² + u²v² + uv`.
#[derive(Debug, Clone)]
pub struct ThreePrimeComponents {
    pub a: AlgebraElement,
    pub b: AlgebraElement,
    pub c: AlgebraElement,
    pub d: AlgebraElement,
    /// `A + B + C + D = (1+â)(1+b̂)(1+ĉ)`.
    pub sum_identity: bool,
    /// Whether `A, B, C, D` equal `e₁₀ … e₁₃`, respectively.
    pub matches_family: [bool; 4],
}

/// The fourteen primitive idempotents of `F₂(C_{p₁} × C_{p₂} × C_{p₃})`,
/// primes sorted ascending, `a, b, c` the factor generators.
///
/// `e₁₂` is `Z + u²vw + uv²w²` (with `Z = (1+â)(1+b̂)(1+ĉ)`), which is the
/// expansion of `βw + β²w²`.
pub fn family_three_primes(primes: [u64; 3], mode: HypothesisMode) -> Result<IdempotentFamily> {
    let mut ps = primes;
    ps.sort_unstable();
    let failures = validate_three_primes(ps, mode)?;
    let group = AbelianGroup::new(ps.to_vec())?;
    let trivial = Subgroup::trivial(&group);
    let gens: Vec<_> = (0..3).map(|i| group.factor_generator(i)).collect();
    let hats: Vec<AlgebraElement> = gens
        .iter()
        .map(|x| Subgroup::cyclic(&group, x).hat())
        .collect();
    let one = AlgebraElement::one(&group);
    let co: Vec<AlgebraElement> = hats.iter().map(|h| &one + h).collect();
    let (ah, bh, ch) = (&hats[0], &hats[1], &hats[2]);
    let (ac, bc, cc) = (&co[0], &co[1], &co[2]);

    let u = build_u(&group, &gens[0], ps[0], &trivial)?;
    let v = build_u(&group, &gens[1], ps[1], &trivial)?;
    let w = build_u(&group, &gens[2], ps[2], &trivial)?;
    let (u1, u2) = (&u.element, &u.conjugate);
    let (v1, v2) = (&v.element, &v.conjugate);
    let (w1, w2) = (&w.element, &w.conjugate);
    let m3 = |x: &AlgebraElement, y: &AlgebraElement, z: &AlgebraElement| &(x * y) * z;
    let z = m3(ac, bc, cc);

    let [p1, p2, p3] = ps;
    let d12 = (p1 - 1) * (p2 - 1) / 2;
    let d13 = (p1 - 1) * (p3 - 1) / 2;
    let d23 = (p2 - 1) * (p3 - 1) / 2;
    let d123 = (p1 - 1) * (p2 - 1) * (p3 - 1) / 4;
    let triple = |x: AlgebraElement, y: AlgebraElement| &(&z + &x) + &y;

    let members = vec![
        labeled("e0", m3(ah, bh, ch), 1),
        labeled("e1", m3(ah, bh, cc), p3 - 1),
        labeled("e2", m3(ah, bc, ch), p2 - 1),
        labeled("e3", m3(ac, bh, ch), p1 - 1),
        labeled("e4", &(&(u1 * v1) + &(u2 * v2)) * ch, d12),
        labeled("e5", &(&(u2 * v1) + &(u1 * v2)) * ch, d12),
        labeled("e6", &(&(u1 * w1) + &(u2 * w2)) * bh, d13),
        labeled("e7", &(&(u2 * w1) + &(u1 * w2)) * bh, d13),
        labeled("e8", &(&(v1 * w1) + &(v2 * w2)) * ah, d23),
        labeled("e9", &(&(v2 * w1) + &(v1 * w2)) * ah, d23),
        labeled("e10", triple(m3(u2, v2, w1), m3(u1, v1, w2)), d123),
        labeled("e11", triple(m3(u2, v2, w2), m3(u1, v1, w1)), d123),
        labeled("e12", triple(m3(u2, v1, w1), m3(u1, v2, w2)), d123),
        labeled("e13", triple(m3(u1, v2, w1), m3(u2, v1, w2)), d123),
    ];

    Ok(IdempotentFamily {
        shape: FamilyShape::ThreePrimes { primes: ps },
        group,
        members,
        blocks: vec![("u".into(), u), ("v".into(), v), ("w".into(), w)],
        hypothesis_failures: failures,
    })
}

/// Rebuild the triple-component idempotents from `α`, `β` and compare.
pub fn three_prime_components(family: &IdempotentFamily) -> Result<ThreePrimeComponents> {
    if !matches!(family.shape, FamilyShape::ThreePrimes { .. }) {
        return Err(Error::Unsupported("needs a three-prime family".into()));
    }
    let block = |name: &str| {
        family
            .blocks
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| b)
            .ok_or_else(|| Error::Consistency(format!("missing block {name}")))
    };
    let (u, v, w) = (block("u")?, block("v")?, block("w")?);
    let (u1, u2, v1, v2) = (&u.element, &u.conjugate, &v.element, &v.conjugate);
    let (w1, w2) = (&w.element, &w.conjugate);
    let alpha = &(&(u1 * v1) + &(u2 * v1)) + &(u1 * v2);
    let beta = &(&(u1 * v2) + &(u2 * v2)) + &(u1 * v1);
    let (alpha2, beta2) = (alpha.square(), beta.square());
    let a = &(&alpha * w1) + &(&alpha2 * w2);
    let b = &(&alpha2 * w1) + &(&alpha * w2);
    let c = &(&beta * w1) + &(&beta2 * w2);
    let d = &(&beta2 * w1) + &(&beta * w2);
    let z = &(&u.unity * &v.unity) * &w.unity;
    let sum = &(&(&a + &b) + &c) + &d;
    let get = |l: &str| family.get(l).map(|m| &m.element);
    let matches_family = [
        get("e10") == Some(&a),
        get("e11") == Some(&b),
        get("e12") == Some(&c),
        get("e13") == Some(&d),
    ];
    Ok(ThreePrimeComponents {
        sum_identity: sum == z,
        a,
        b,
        c,
        d,
        matches_family,
    })
}
