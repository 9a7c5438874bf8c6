use std::sync::Arc;

use super::{AbelianGroup, AlgebraElement, GroupElement};
use crate::bits::BitSet;

/// Subgroup given by generators, with its element set enumerated.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: Arc<AbelianGroup>,
    generators: Vec<GroupElement>,
    /// Member ranks, ascending.
    elements: Vec<usize>,
    members: BitSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Closure of `gens` under the group law.
    pub fn from_generators(group: &Arc<AbelianGroup>, gens: &[GroupElement]) -> Subgroup {
        let n = group.order();
        let mut members = BitSet::zeros(n);
        let id = group.rank(&group.identity());
        members.set(id, true);
        let mut frontier = vec![id];
        while let Some(r) = frontier.pop() {
            for g in gens {
                let s = group.shift_rank(r, g);
                if !members.get(s) {
                    members.set(s, true);
                    frontier.push(s);
                }
            }
        }
        Subgroup {
            group: Arc::clone(group),
            generators: gens.to_vec(),
            elements: members.iter_ones().collect(),
            members,
        }
    }

    pub fn trivial(group: &Arc<AbelianGroup>) -> Subgroup {
        Self::from_generators(group, &[])
    }

    pub fn whole(group: &Arc<AbelianGroup>) -> Subgroup {
        let gens: Vec<_> = (0..group.factor_orders().len())
            .map(|i| group.factor_generator(i))
            .collect();
        Self::from_generators(group, &gens)
    }

    pub fn cyclic(group: &Arc<AbelianGroup>, g: &GroupElement) -> Subgroup {
        Self::from_generators(group, std::slice::from_ref(g))
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn element_ranks(&self) -> &[usize] {
        &self.elements
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.members.get(self.group.rank(g))
    }

    pub fn contains_rank(&self, r: usize) -> bool {
        self.members.get(r)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.and(&other.members) == self.members
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::from_generators(&self.group, &gens)
    }

    /// Sum of all members in `F₂[G]`.
    pub fn hat(&self) -> AlgebraElement {
        AlgebraElement::from_bits(&self.group, self.members.clone())
    }

    /// Order of `g` modulo this subgroup: least `k ≥ 1` with `g^k ∈ H`.
    pub fn coset_order(&self, g: &GroupElement) -> u64 {
        let mut r = self.group.rank(g);
        let mut k = 1;
        while !self.members.get(r) {
            r = self.group.shift_rank(r, g);
            k += 1;
        }
        k
    }
}
