use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order accepted; keeps dense coefficient vectors bounded.
pub const MAX_GROUP_ORDER: usize = 1_000_000;

/// Finite abelian group `C_{n₀} × C_{n₁} × …` given by its cyclic factor
/// orders.
///
/// Elements are indexed by a mixed-radix rank with the first factor varying
/// fastest: `rank(e) = Σ eᵢ · Π_{l<i} nₗ`.
#[derive(Debug)]
pub struct AbelianGroup {
    orders: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    doubling: OnceLock<Vec<u32>>,
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}

impl Eq for AbelianGroup {}

/// Exponent vector of a group element, reduced into `[0, nᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.0
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Arc<Self>> {
        if orders.is_empty() || orders.iter().any(|&n| n < 2) {
            return Err(Error::Unsupported(format!(
                "cyclic factor orders must be at least 2, got {orders:?}"
            )));
        }
        let mut strides = Vec::with_capacity(orders.len());
        let mut order: usize = 1;
        for &n in &orders {
            strides.push(order);
            order = order
                .checked_mul(n as usize)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or_else(|| {
                    Error::Unsupported(format!(
                        "group order exceeds the limit of {MAX_GROUP_ORDER}"
                    ))
                })?;
        }
        Ok(Arc::new(AbelianGroup {
            orders,
            strides,
            order,
            doubling: OnceLock::new(),
        }))
    }

    pub fn factor_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_odd_order(&self) -> bool {
        self.order % 2 == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// Element with the given exponents, reduced modulo the factor orders.
    pub fn element(&self, exponents: &[i64]) -> GroupElement {
        assert_eq!(
            exponents.len(),
            self.orders.len(),
            "wrong number of exponents"
        );
        GroupElement(
            exponents
                .iter()
                .zip(&self.orders)
                .map(|(&e, &n)| e.rem_euclid(n as i64) as u64)
                .collect(),
        )
    }

    /// Generator of the `i`-th cyclic factor.
    pub fn factor_generator(&self, i: usize) -> GroupElement {
        let mut e = vec![0; self.orders.len()];
        e[i] = 1 % self.orders[i];
        GroupElement(e)
    }

    /// `g^k` for the diagonal generator `g = (1, 1, …)`.
    ///
    /// With pairwise coprime factor orders `g` generates the whole group and
    /// this is the CRT identification of `C_N` with the product.
    pub fn cyclic(&self, k: i64) -> GroupElement {
        GroupElement(
            self.orders
                .iter()
                .map(|&n| k.rem_euclid(n as i64) as u64)
                .collect(),
        )
    }

    /// Whether the factor orders are pairwise coprime, i.e. `G` is cyclic with
    /// generator `(1, 1, …)`.
    pub fn is_cyclic_product(&self) -> bool {
        self.orders
            .iter()
            .enumerate()
            .all(|(i, a)| self.orders[i + 1..].iter().all(|b| a.gcd(b) == 1))
    }

    /// Exponent `k ∈ [0, |G|)` with `g^k` equal to the element at `rank`;
    /// only meaningful for cyclic products.
    pub fn cyclic_exponent(&self, rank: usize) -> u64 {
        let e = self.element_at(rank);
        let mut k = 0u64;
        let mut m = 1u64;
        for (&ei, &n) in e.0.iter().zip(&self.orders) {
            // solve k' ≡ k (mod m), k' ≡ ei (mod n)
            while k % n != ei {
                k += m;
            }
            m *= n;
        }
        k
    }

    pub fn rank(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.strides)
            .map(|(&e, &s)| e as usize * s)
            .sum()
    }

    pub fn element_at(&self, mut rank: usize) -> GroupElement {
        debug_assert!(rank < self.order);
        GroupElement(
            self.orders
                .iter()
                .map(|&n| {
                    let e = rank % n as usize;
                    rank /= n as usize;
                    e as u64
                })
                .collect(),
        )
    }

    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn power(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| {
                    let n = n as i128;
                    (x as i128 * k as i128).rem_euclid(n) as u64
                })
                .collect(),
        )
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        self.power(a, -1)
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.orders)
            .map(|(&x, &n)| n / x.gcd(&n))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Rank of `element_at(rank) · g`.
    #[inline]
    pub fn shift_rank(&self, mut rank: usize, g: &GroupElement) -> usize {
        let mut out = 0;
        for ((&n, &s), &e) in self.orders.iter().zip(&self.strides).zip(&g.0) {
            let n = n as usize;
            let d = rank % n;
            rank /= n;
            let mut nd = d + e as usize;
            if nd >= n {
                nd -= n;
            }
            out += nd * s;
        }
        out
    }

    /// Rank of `element_at(rank)^k`.
    pub fn power_rank(&self, mut rank: usize, k: u64) -> usize {
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let d = (rank % n as usize) as u128;
            rank /= n as usize;
            out += ((d * k as u128) % n as u128) as usize * s;
        }
        out
    }

    /// Permutation of ranks induced by squaring; a bijection for odd order.
    pub fn doubling_table(&self) -> &[u32] {
        self.doubling.get_or_init(|| {
            (0..self.order)
                .map(|r| self.power_rank(r, 2) as u32)
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_is_mixed_radix_first_factor_fastest() {
        let g = AbelianGroup::new(vec![3, 5]).unwrap();
        assert_eq!(g.rank(&g.element(&[2, 1])), 2 + 3);
        assert_eq!(g.element_at(14), GroupElement(vec![2, 4]));
        for r in 0..15 {
            assert_eq!(g.rank(&g.element_at(r)), r);
        }
    }

    #[test]
    fn cyclic_relabeling_agrees_with_crt() {
        let g = AbelianGroup::new(vec![5, 3]).unwrap();
        assert!(g.is_cyclic_product());
        for k in 0..15 {
            let e = g.cyclic(k);
            assert_eq!(e.0, vec![(k % 5) as u64, (k % 3) as u64]);
            assert_eq!(g.cyclic_exponent(g.rank(&e)), k as u64);
        }
        assert_eq!(g.cyclic(-1), g.cyclic(14));
    }

    #[test]
    fn shift_and_power_ranks() {
        let g = AbelianGroup::new(vec![9, 25]).unwrap();
        let h = g.element(&[4, 21]);
        for r in [0, 7, 100, 224] {
            let x = g.element_at(r);
            assert_eq!(g.shift_rank(r, &h), g.rank(&g.compose(&x, &h)));
            assert_eq!(g.power_rank(r, 2), g.rank(&g.power(&x, 2)));
        }
        assert_eq!(g.element_order(&g.element(&[3, 5])), 15);
    }

    #[test]
    fn rejects_degenerate_or_huge() {
        assert!(AbelianGroup::new(vec![]).is_err());
        assert!(AbelianGroup::new(vec![1, 5]).is_err());
        assert!(AbelianGroup::new(vec![1001, 1001]).is_err());
    }
}
