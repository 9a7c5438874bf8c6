use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group_algebra::{AbelianGroup, AlgebraElement, GroupElement, Subgroup};
use crate::number_theory::{is_odd_prime, mod_pow, multiplicative_order, HypothesisFailure};

/// A primitive cube root of unity in the component `(F₂G)(Ĥ + Ĥ*)`, where
/// `H* = H·⟨base⟩` and `|H*/H| = p`.
///
/// `element = Ĥ·([1 +] Σ_{k=0}^{(p−3)/2} base^{4^k})`, the `1 +` present
/// exactly when `p ≡ 3 (mod 4)`. Its square `conjugate` satisfies
/// `element + conjugate = unity`.
#[derive(Debug, Clone)]
pub struct UVBlock {
    pub base: GroupElement,
    pub prime: u64,
    pub residue_mod_4: u64,
    pub element: AlgebraElement,
    pub conjugate: AlgebraElement,
    /// `Ĥ + Ĥ*`, the unity of the component.
    pub unity: AlgebraElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockChecks {
    pub cube_is_unity: bool,
    pub quadratic_relation: bool,
    pub augmentation_zero: bool,
    pub nontrivial: bool,
}

impl BlockChecks {
    pub fn all(&self) -> bool {
        self.cube_is_unity && self.quadratic_relation && self.augmentation_zero && self.nontrivial
    }
}

impl UVBlock {
    pub fn group(&self) -> &Arc<AbelianGroup> {
        self.element.group()
    }

    pub fn checks(&self) -> BlockChecks {
        let u = &self.element;
        let sum = &(u + &self.conjugate) + &self.unity;
        BlockChecks {
            cube_is_unity: u.power(3) == self.unity,
            quadratic_relation: sum.is_zero(),
            augmentation_zero: !u.augmentation(),
            nontrivial: !u.is_zero() && *u != self.unity,
        }
    }
}

/// Build the block for `base` over `level` (the subgroup `H`; pass the
/// trivial subgroup for the plain prime case).
pub fn build_u(
    group: &Arc<AbelianGroup>,
    base: &GroupElement,
    p: u64,
    level: &Subgroup,
) -> Result<UVBlock> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let order2 = multiplicative_order(2, p)?;
    if order2 != p - 1 {
        return Err(Error::Hypothesis(vec![
            HypothesisFailure::TwoNotPrimitive {
                modulus: p,
                order: order2,
                required: p - 1,
            },
        ]));
    }
    let upper = level.join(&Subgroup::cyclic(group, base));
    if upper.order() != level.order() * p as usize {
        return Err(Error::Consistency(format!(
            "base {:?} does not generate a step of index {p} over the level subgroup",
            base
        )));
    }
    let base_order = group.element_order(base);
    let mut terms: Vec<GroupElement> = (0..(p - 1) / 2)
        .map(|k| group.power(base, mod_pow(4, k, base_order) as i64))
        .collect();
    if p % 4 == 3 {
        terms.push(group.identity());
    }
    let bare = AlgebraElement::from_elements(group, &terms);
    let level_hat = level.hat();
    let element = &level_hat * &bare;
    let conjugate = element.square();
    let unity = &level_hat + &upper.hat();
    Ok(UVBlock {
        base: base.clone(),
        prime: p,
        residue_mod_4: p % 4,
        element,
        conjugate,
        unity,
    })
}

/// Split `unity(u)·unity(v)` into `uv + u²v²` and `uv² + u²v`, checking that
/// the two halves are orthogonal idempotents summing to the product.
pub fn split_pair(u: &UVBlock, v: &UVBlock) -> Result<(AlgebraElement, AlgebraElement)> {
    let first = &(&u.element * &v.element) + &(&u.conjugate * &v.conjugate);
    let second = &(&u.element * &v.conjugate) + &(&u.conjugate * &v.element);
    let product = &u.unity * &v.unity;
    let mut problems = Vec::new();
    if &first + &second != product {
        problems.push("halves do not sum to the product of unities");
    }
    if !(&first * &second).is_zero() {
        problems.push("halves are not orthogonal");
    }
    if !first.is_idempotent() || !second.is_idempotent() {
        problems.push("a half is not idempotent");
    }
    if first.is_zero() || second.is_zero() {
        problems.push("a half is zero");
    }
    if problems.is_empty() {
        Ok((first, second))
    } else {
        Err(Error::Consistency(problems.join(", ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_blocks() {
        let c3 = AbelianGroup::new(vec![3]).unwrap();
        let u = build_u(&c3, &c3.element(&[1]), 3, &Subgroup::trivial(&c3)).unwrap();
        assert_eq!(u.element, AlgebraElement::from_ranks(&c3, [0, 1]));
        assert!(u.checks().all());

        let c5 = AbelianGroup::new(vec![5]).unwrap();
        let u = build_u(&c5, &c5.element(&[1]), 5, &Subgroup::trivial(&c5)).unwrap();
        assert_eq!(u.element, AlgebraElement::from_ranks(&c5, [1, 4]));
        assert!(u.checks().all());
    }

    #[test]
    fn prime_power_block_carries_level_hat() {
        let c9 = AbelianGroup::new(vec![9]).unwrap();
        let level = Subgroup::cyclic(&c9, &c9.element(&[3]));
        let u = build_u(&c9, &c9.element(&[1]), 3, &level).unwrap();
        let expected = &level.hat() * &AlgebraElement::from_ranks(&c9, [0, 1]);
        assert_eq!(u.element, expected);
        assert_eq!(u.element.support(), vec![0, 1, 3, 4, 6, 7]);
        assert!(u.checks().all());
        assert_eq!(u.unity, &level.hat() + &Subgroup::whole(&c9).hat());
    }

    #[test]
    fn rejects_non_primitive_two() {
        let c7 = AbelianGroup::new(vec![7]).unwrap();
        let err = build_u(&c7, &c7.element(&[1]), 7, &Subgroup::trivial(&c7)).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn split_pair_on_c15() {
        let g = AbelianGroup::new(vec![15]).unwrap();
        let t = Subgroup::trivial(&g);
        let u = build_u(&g, &g.cyclic(5), 3, &t).unwrap();
        let v = build_u(&g, &g.cyclic(3), 5, &t).unwrap();
        let (e1, e2) = split_pair(&u, &v).unwrap();
        assert_eq!(e1.cyclic_support(), vec![1, 2, 3, 4, 6, 8, 9, 12]);
        assert!((&e1 * &e2).is_zero());
        assert_eq!(&e1 + &e2, &u.unity * &v.unity);
    }
}
