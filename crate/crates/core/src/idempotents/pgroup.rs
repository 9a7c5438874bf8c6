use std::collections::HashSet;
use std::sync::Arc;

use super::blocks::{build_u, split_pair, UVBlock};
use super::{FamilyShape, IdempotentFamily, LabeledIdempotent};
use crate::error::{Error, Result};
use crate::group_algebra::{AbelianGroup, AlgebraElement, GroupElement, Subgroup};
use crate::number_theory::{
    factorize, is_odd_prime, multiplicative_order, two_is_primitive_root, validate_hypotheses,
    HypothesisFailure, HypothesisMode,
};

/// One primitive idempotent of `F₂A` for a `p`-group `A` sitting inside a
/// larger group: either `Â` (no `upper`) or `Ĥ + Ĥ*` for `H` with `A/H`
/// cyclic and nontrivial, where `H*/H` is the subgroup of order `p` of `A/H`.
#[derive(Debug, Clone)]
pub struct PComponent {
    pub level: Subgroup,
    /// `H*` together with an element `x` such that `H* = H·⟨x⟩`.
    pub upper: Option<(Subgroup, GroupElement)>,
    pub idempotent: AlgebraElement,
    pub quotient_order: u64,
    pub predicted_dim: u64,
}

fn prime_of(orders: &[u64]) -> Result<u64> {
    let mut prime = None;
    for &n in orders {
        let f = factorize(n);
        if f.len() != 1 || !is_odd_prime(f[0].0) || prime.is_some_and(|p| p != f[0].0) {
            return Err(Error::Unsupported(format!(
                "factor orders {orders:?} do not form an odd p-group"
            )));
        }
        prime = Some(f[0].0);
    }
    prime.ok_or_else(|| Error::Unsupported("empty factor list".into()))
}

fn require_two_primitive(p: u64) -> Result<()> {
    let modulus = p * p;
    if two_is_primitive_root(modulus) {
        return Ok(());
    }
    Err(Error::Hypothesis(vec![
        HypothesisFailure::TwoNotPrimitive {
            modulus,
            order: multiplicative_order(2, modulus)?,
            required: p * (p - 1),
        },
    ]))
}

/// Elements whose exponents vanish outside `factors`.
fn supported_elements(group: &Arc<AbelianGroup>, factors: &[usize]) -> Vec<GroupElement> {
    (0..group.order())
        .map(|r| group.element_at(r))
        .filter(|e| {
            e.0.iter()
                .enumerate()
                .all(|(i, &x)| x == 0 || factors.contains(&i))
        })
        .collect()
}

/// All subgroups of the subgroup spanned by `factors`, by closure under
/// joining cyclic subgroups.
fn subgroups_within(group: &Arc<AbelianGroup>, elements: &[GroupElement]) -> Vec<Subgroup> {
    let trivial = Subgroup::trivial(group);
    let mut seen: HashSet<Vec<u64>> = HashSet::from([trivial.members().words().to_vec()]);
    let mut out = vec![trivial];
    let mut next = 0;
    while next < out.len() {
        let s = out[next].clone();
        next += 1;
        for x in elements {
            if s.contains(x) {
                continue;
            }
            let t = s.join(&Subgroup::cyclic(group, x));
            if seen.insert(t.members().words().to_vec()) {
                out.push(t);
            }
        }
    }
    out
}

fn p_components(group: &Arc<AbelianGroup>, factors: &[usize], p: u64) -> Vec<PComponent> {
    let elements = supported_elements(group, factors);
    let whole = Subgroup::from_generators(
        group,
        &factors
            .iter()
            .map(|&i| group.factor_generator(i))
            .collect::<Vec<_>>(),
    );
    let mut comps = vec![PComponent {
        idempotent: whole.hat(),
        level: whole.clone(),
        upper: None,
        quotient_order: 1,
        predicted_dim: 1,
    }];
    let mut rest = Vec::new();
    for h in subgroups_within(group, &elements) {
        let index = (whole.order() / h.order()) as u64;
        if index == 1 {
            continue;
        }
        let Some(x) = elements.iter().find(|x| h.coset_order(x) == index) else {
            continue;
        };
        let base = group.power(x, (index / p) as i64);
        let upper = h.join(&Subgroup::cyclic(group, &base));
        rest.push(PComponent {
            idempotent: &h.hat() + &upper.hat(),
            level: h,
            upper: Some((upper, base)),
            quotient_order: index,
            predicted_dim: index / p * (p - 1),
        });
    }
    rest.sort_by(|a, b| {
        (a.quotient_order, a.level.element_ranks())
            .cmp(&(b.quotient_order, b.level.element_ranks()))
    });
    comps.extend(rest);
    comps
}

/// Primitive idempotents of `F₂A` for an abelian `p`-group `A` given by its
/// cyclic factor orders, provided 2 generates the units modulo `p²`.
pub fn p_group_idempotents(orders: &[u64]) -> Result<IdempotentFamily> {
    let p = prime_of(orders)?;
    require_two_primitive(p)?;
    let group = AbelianGroup::new(orders.to_vec())?;
    let factors: Vec<usize> = (0..orders.len()).collect();
    let members = p_components(&group, &factors, p)
        .into_iter()
        .enumerate()
        .map(|(i, c)| LabeledIdempotent {
            label: format!("P{i}"),
            element: c.idempotent,
            predicted_dim: c.predicted_dim,
        })
        .collect();
    Ok(IdempotentFamily {
        shape: FamilyShape::PGroup {
            p,
            orders: orders.to_vec(),
        },
        group,
        members,
        blocks: Vec::new(),
        hypothesis_failures: Vec::new(),
    })
}

/// Primitive idempotents of `F₂(A × B)` for a `p`-group `A` and a `q`-group
/// `B`: products of the factor idempotents, with each product of two
/// nontrivial components split into a `*`/`**` pair.
pub fn family_general(
    p_orders: &[u64],
    q_orders: &[u64],
    mode: HypothesisMode,
) -> Result<IdempotentFamily> {
    let p = prime_of(p_orders)?;
    let q = prime_of(q_orders)?;
    let failures = validate_hypotheses(p, q, mode)?.failures;
    require_two_primitive(p)?;
    require_two_primitive(q)?;
    let mut orders = p_orders.to_vec();
    orders.extend_from_slice(q_orders);
    let group = AbelianGroup::new(orders)?;
    let split_at = p_orders.len();
    let pf: Vec<usize> = (0..split_at).collect();
    let qf: Vec<usize> = (split_at..group.factor_orders().len()).collect();
    let pc = p_components(&group, &pf, p);
    let qc = p_components(&group, &qf, q);

    let block_for = |c: &PComponent, prime: u64| -> Result<Option<UVBlock>> {
        match &c.upper {
            Some((_, base)) => build_u(&group, base, prime, &c.level).map(Some),
            None => Ok(None),
        }
    };
    let us: Vec<Option<UVBlock>> = pc.iter().map(|c| block_for(c, p)).collect::<Result<_>>()?;
    let vs: Vec<Option<UVBlock>> = qc.iter().map(|c| block_for(c, q)).collect::<Result<_>>()?;

    let mut members = Vec::new();
    for (i, (cp, u)) in pc.iter().zip(&us).enumerate() {
        for (j, (cq, v)) in qc.iter().zip(&vs).enumerate() {
            let dim = cp.predicted_dim * cq.predicted_dim;
            match (u, v) {
                (Some(u), Some(v)) => {
                    let (star, double) = split_pair(u, v)?;
                    members.push(LabeledIdempotent {
                        label: format!("P{i}Q{j}*"),
                        element: star,
                        predicted_dim: dim / 2,
                    });
                    members.push(LabeledIdempotent {
                        label: format!("P{i}Q{j}**"),
                        element: double,
                        predicted_dim: dim / 2,
                    });
                }
                _ => members.push(LabeledIdempotent {
                    label: format!("P{i}Q{j}"),
                    element: &cp.idempotent * &cq.idempotent,
                    predicted_dim: dim,
                }),
            }
        }
    }
    let mut blocks = Vec::new();
    for (i, u) in us.into_iter().enumerate() {
        if let Some(u) = u {
            blocks.push((format!("u{i}"), u));
        }
    }
    for (j, v) in vs.into_iter().enumerate() {
        if let Some(v) = v {
            blocks.push((format!("v{j}"), v));
        }
    }
    Ok(IdempotentFamily {
        shape: FamilyShape::General {
            p_orders: p_orders.to_vec(),
            q_orders: q_orders.to_vec(),
        },
        group,
        members,
        blocks,
        hypothesis_failures: failures,
    })
}
