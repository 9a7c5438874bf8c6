use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AbelianGroup, GroupElement, Subgroup};
use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Element of `F₂[G]`: bit `k` is the coefficient of the rank-`k` group
/// element.
#[derive(Clone)]
pub struct AlgebraElement {
    group: Arc<AbelianGroup>,
    coeffs: BitSet,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraElement({:?}, {:?})",
            self.group.factor_orders(),
            self.coeffs
        )
    }
}

/// Wire form: factor orders plus the coefficient bitset as little-endian hex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedElement {
    pub factor_orders: Vec<u64>,
    pub coefficients_hex: String,
}

impl AlgebraElement {
    pub fn zero(group: &Arc<AbelianGroup>) -> Self {
        AlgebraElement {
            group: Arc::clone(group),
            coeffs: BitSet::zeros(group.order()),
        }
    }

    /// The identity element of the group, i.e. the ring unity.
    pub fn one(group: &Arc<AbelianGroup>) -> Self {
        Self::from_group_element(group, &group.identity())
    }

    pub fn from_group_element(group: &Arc<AbelianGroup>, g: &GroupElement) -> Self {
        Self::from_ranks(group, [group.rank(g)])
    }

    /// Sum of the given group elements; repeated terms cancel.
    pub fn from_elements<'a>(
        group: &Arc<AbelianGroup>,
        elems: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Self {
        let mut x = Self::zero(group);
        for g in elems {
            x.coeffs.flip(group.rank(g));
        }
        x
    }

    /// Sum of the rank-indexed elements; repeated ranks cancel.
    pub fn from_ranks(group: &Arc<AbelianGroup>, ranks: impl IntoIterator<Item = usize>) -> Self {
        let mut x = Self::zero(group);
        for r in ranks {
            x.coeffs.flip(r);
        }
        x
    }

    /// Sum of `g^k` over the given exponents of the diagonal generator.
    pub fn from_cyclic_exponents(group: &Arc<AbelianGroup>, exps: &[i64]) -> Self {
        let elems: Vec<_> = exps.iter().map(|&k| group.cyclic(k)).collect();
        Self::from_elements(group, &elems)
    }

    pub fn from_bits(group: &Arc<AbelianGroup>, coeffs: BitSet) -> Self {
        assert_eq!(coeffs.len(), group.order(), "bitset length must equal |G|");
        AlgebraElement {
            group: Arc::clone(group),
            coeffs,
        }
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn coefficients(&self) -> &BitSet {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> BitSet {
        self.coeffs
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.count_ones()
    }

    /// Ranks with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter_ones().collect()
    }

    /// Support as exponents of the diagonal generator, ascending.
    pub fn cyclic_support(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .coeffs
            .iter_ones()
            .map(|r| self.group.cyclic_exponent(r))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn coefficient(&self, g: &GroupElement) -> bool {
        self.coeffs.get(self.group.rank(g))
    }

    /// Parity of the weight: the image under `g ↦ 1`.
    pub fn augmentation(&self) -> bool {
        self.weight() % 2 == 1
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.factor_orders().to_vec(),
                right: other.group.factor_orders().to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let mut out = self.clone();
        out.coeffs.xor_assign(&other.coeffs);
        Ok(out)
    }

    /// Convolution over `G`: XOR a translate of the denser operand for every
    /// support element of the sparser one.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let group = &self.group;
        let dense_support = dense.support();
        let mut out = BitSet::zeros(group.order());
        for r in sparse.coeffs.iter_ones() {
            let h = group.element_at(r);
            for &s in &dense_support {
                out.flip(group.shift_rank(s, &h));
            }
        }
        Ok(AlgebraElement {
            group: Arc::clone(group),
            coeffs: out,
        })
    }

    /// `g · x`, a permutation of the coefficients.
    pub fn translate(&self, g: &GroupElement) -> Self {
        let mut out = BitSet::zeros(self.group.order());
        for r in self.coeffs.iter_ones() {
            out.set(self.group.shift_rank(r, g), true);
        }
        AlgebraElement {
            group: Arc::clone(&self.group),
            coeffs: out,
        }
    }

    /// Image under the map induced by `g ↦ g^k`, a ring automorphism when
    /// `k` is coprime to `|G|`.
    pub fn map_exponents(&self, k: u64) -> Self {
        let mut out = BitSet::zeros(self.group.order());
        for r in self.coeffs.iter_ones() {
            out.flip(self.group.power_rank(r, k));
        }
        AlgebraElement {
            group: Arc::clone(&self.group),
            coeffs: out,
        }
    }

    /// `x²`. In characteristic 2 on an abelian group of odd order this is the
    /// Frobenius map, which permutes the support by `g ↦ g²`.
    pub fn square(&self) -> Self {
        if !self.group.is_odd_order() {
            return self * self;
        }
        let table = self.group.doubling_table();
        let mut out = BitSet::zeros(self.group.order());
        for r in self.coeffs.iter_ones() {
            out.set(table[r] as usize, true);
        }
        AlgebraElement {
            group: Arc::clone(&self.group),
            coeffs: out,
        }
    }

    pub fn power(&self, mut k: u64) -> Self {
        let mut acc = Self::one(&self.group);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn is_idempotent(&self) -> bool {
        self.square() == *self
    }

    pub fn hat(subgroup: &Subgroup) -> Self {
        subgroup.hat()
    }

    pub fn to_serialized(&self) -> SerializedElement {
        SerializedElement {
            factor_orders: self.group.factor_orders().to_vec(),
            coefficients_hex: self.coeffs.to_hex(),
        }
    }

    pub fn from_serialized(s: &SerializedElement) -> Result<Self> {
        let group = AbelianGroup::new(s.factor_orders.clone())?;
        let coeffs = BitSet::from_hex(group.order(), &s.coefficients_hex)
            .ok_or_else(|| Error::Parse("malformed coefficient hex".into()))?;
        Ok(AlgebraElement { group, coeffs })
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    /// Panics when the operands live in different groups.
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("group mismatch in addition")
    }
}

impl AddAssign<&AlgebraElement> for AlgebraElement {
    fn add_assign(&mut self, rhs: &AlgebraElement) {
        self.check_same_group(rhs)
            .expect("group mismatch in addition");
        self.coeffs.xor_assign(&rhs.coeffs);
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    /// Panics when the operands live in different groups.
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs)
            .expect("group mismatch in multiplication")
    }
}
