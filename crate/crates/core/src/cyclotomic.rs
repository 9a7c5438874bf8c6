//! 2-cyclotomic classes of `G`: the orbits of `x ↦ x²`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_algebra::{AbelianGroup, AlgebraElement, GroupElement};
use crate::number_theory::{residue_partition, PrimePair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicClass {
    /// Smallest-rank member.
    pub representative: GroupElement,
    /// Member ranks, ascending.
    pub members: Vec<usize>,
}

impl CyclotomicClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains_rank(&self, r: usize) -> bool {
        self.members.binary_search(&r).is_ok()
    }

    pub fn report(&self) -> ClassReport {
        ClassReport {
            representative_exponents: self.representative.0.clone(),
            size: self.size(),
            members_as_ranks: self.members.clone(),
        }
    }
}

/// JSON shape of one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub representative_exponents: Vec<u64>,
    pub size: usize,
    pub members_as_ranks: Vec<usize>,
}

fn require_odd(group: &AbelianGroup) -> Result<()> {
    if group.is_odd_order() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "2-cyclotomic classes need odd order, got {}",
            group.order()
        )))
    }
}

/// Orbit partition of `G` under squaring, ordered by representative rank.
pub fn cyclotomic_classes(group: &Arc<AbelianGroup>) -> Result<Vec<CyclotomicClass>> {
    require_odd(group)?;
    let table = group.doubling_table();
    let mut seen = vec![false; group.order()];
    let mut classes = Vec::new();
    for start in 0..group.order() {
        if seen[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut r = start;
        while !seen[r] {
            seen[r] = true;
            members.push(r);
            r = table[r] as usize;
        }
        members.sort_unstable();
        classes.push(CyclotomicClass {
            representative: group.element_at(start),
            members,
        });
    }
    Ok(classes)
}

pub fn class_count(group: &Arc<AbelianGroup>) -> Result<usize> {
    Ok(cyclotomic_classes(group)?.len())
}

/// The class of `x`.
pub fn class_of(group: &Arc<AbelianGroup>, x: &GroupElement) -> Result<CyclotomicClass> {
    require_odd(group)?;
    let table = group.doubling_table();
    let start = group.rank(x);
    let mut members = vec![start];
    let mut r = table[start] as usize;
    while r != start {
        members.push(r);
        r = table[r] as usize;
    }
    members.sort_unstable();
    Ok(CyclotomicClass {
        representative: group.element_at(members[0]),
        members,
    })
}

/// `S_x`, the sum of the class of `x`.
pub fn class_sum(group: &Arc<AbelianGroup>, x: &GroupElement) -> Result<AlgebraElement> {
    let class = class_of(group, x)?;
    Ok(AlgebraElement::from_ranks(group, class.members))
}

/// Which element represents the fifth class of `C_p × C_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FifthClass {
    /// `p ≡ q ≡ 3 (mod 4)`: represented by `g^{p+q}`.
    SumExponent,
    /// `p ≡ 1, q ≡ 3 (mod 4)`: represented by `g^{-1}`.
    Inverse,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassStructureReport {
    pub p: u64,
    pub q: u64,
    pub case: Option<FifthClass>,
    pub class_sizes: Vec<usize>,
    /// Empty when every predicted class was found.
    pub mismatches: Vec<String>,
}

impl ClassStructureReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare the classes of `C_p × C_q` with their description by quadratic
/// residue pattern of the CRT coordinates.
pub fn verify_class_structure(pair: &PrimePair) -> Result<ClassStructureReport> {
    let (p, q) = (pair.p, pair.q);
    let group = AbelianGroup::new(vec![p, q])?;
    let classes = cyclotomic_classes(&group)?;
    let rp = residue_partition(p)?;
    let rq = residue_partition(q)?;

    let pattern = |f: &dyn Fn(u64, u64) -> bool| -> BTreeSet<usize> {
        (0..group.order())
            .filter(|&r| {
                let e = group.element_at(r);
                f(e.0[0], e.0[1])
            })
            .collect()
    };
    let same = |x: u64, y: u64| {
        (rp.is_residue(x) && rq.is_residue(y)) || (rp.is_nonresidue(x) && rq.is_nonresidue(y))
    };
    let mixed = |x: u64, y: u64| {
        (rp.is_residue(x) && rq.is_nonresidue(y)) || (rp.is_nonresidue(x) && rq.is_residue(y))
    };

    let orbit_sets: Vec<BTreeSet<usize>> = classes
        .iter()
        .map(|c| c.members.iter().copied().collect())
        .collect();
    let predicted: [(&str, BTreeSet<usize>); 5] = [
        ("C_1", pattern(&|x, y| x == 0 && y == 0)),
        ("C_g", pattern(&|x, y| same(x, y))),
        ("C_a", pattern(&|x, y| x != 0 && y == 0)),
        ("C_b", pattern(&|x, y| x == 0 && y != 0)),
        ("mixed", pattern(&|x, y| mixed(x, y))),
    ];

    let mut mismatches = Vec::new();
    if classes.len() != 5 {
        mismatches.push(format!("expected 5 classes, found {}", classes.len()));
    }
    for (name, set) in &predicted {
        if !orbit_sets.contains(set) {
            mismatches.push(format!(
                "{name}: no orbit equals the residue pattern of size {}",
                set.len()
            ));
        }
    }
    let fifth_set = &predicted[4].1;

    let case = match (p % 4, q % 4) {
        (3, 3) => Some(FifthClass::SumExponent),
        (1, 3) => Some(FifthClass::Inverse),
        _ => None,
    };
    let fifth_rep = match case {
        Some(FifthClass::SumExponent) => Some(group.cyclic((p + q) as i64)),
        Some(FifthClass::Inverse) => Some(group.cyclic(-1)),
        None => None,
    };
    match &fifth_rep {
        Some(x) if !fifth_set.contains(&group.rank(x)) => mismatches.push(format!(
            "fifth class does not contain the expected representative {:?}",
            x
        )),
        None => mismatches.push("neither prime is 3 mod 4 after normalization".into()),
        _ => {}
    }
    if case == Some(FifthClass::Inverse) {
        let inverse_rank = group.rank(&group.cyclic(-1));
        if class_of(&group, &group.cyclic(1))?.contains_rank(inverse_rank) {
            mismatches.push("g^-1 lies in the class of g".into());
        }
    }

    Ok(ClassStructureReport {
        p,
        q,
        case,
        class_sizes: classes.iter().map(|c| c.size()).collect(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_theory::{validate_hypotheses, HypothesisMode};

    fn doubling_orbit_sizes(n: u64) -> Vec<usize> {
        // independent oracle: orbits of k ↦ 2k mod n on integers
        let mut seen = vec![false; n as usize];
        let mut sizes = Vec::new();
        for s in 0..n {
            if seen[s as usize] {
                continue;
            }
            let mut k = s;
            let mut size = 0;
            while !seen[k as usize] {
                seen[k as usize] = true;
                size += 1;
                k = 2 * k % n;
            }
            sizes.push(size);
        }
        sizes
    }

    #[test]
    fn class_sizes_for_c15_and_c33() {
        for (orders, n) in [(vec![15], 15), (vec![5, 3], 15), (vec![3, 11], 33)] {
            let g = AbelianGroup::new(orders).unwrap();
            let mut got: Vec<_> = cyclotomic_classes(&g)
                .unwrap()
                .iter()
                .map(|c| c.size())
                .collect();
            let mut want = doubling_orbit_sizes(n);
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
        let c15 = AbelianGroup::new(vec![15]).unwrap();
        let sizes: Vec<_> = cyclotomic_classes(&c15)
            .unwrap()
            .iter()
            .map(|c| c.size())
            .collect();
        assert_eq!(sizes, vec![1, 4, 4, 2, 4]);
        let c33 = AbelianGroup::new(vec![33]).unwrap();
        let mut sizes: Vec<_> = cyclotomic_classes(&c33)
            .unwrap()
            .iter()
            .map(|c| c.size())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 10, 10, 10]);
    }

    #[test]
    fn c3_has_two_classes() {
        let g = AbelianGroup::new(vec![3]).unwrap();
        let classes = cyclotomic_classes(&g).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].members, vec![0]);
        assert_eq!(classes[1].members, vec![1, 2]);
    }

    #[test]
    fn even_order_is_rejected() {
        let g = AbelianGroup::new(vec![6]).unwrap();
        assert!(matches!(cyclotomic_classes(&g), Err(Error::Unsupported(_))));
    }

    #[test]
    fn class_sum_examples() {
        let g = AbelianGroup::new(vec![15]).unwrap();
        let s = class_sum(&g, &g.cyclic(5)).unwrap();
        assert_eq!(s.cyclic_support(), vec![5, 10]);
        assert_eq!(
            class_sum(&g, &g.identity()).unwrap(),
            AlgebraElement::one(&g)
        );
        assert_eq!(
            class_sum(&g, &g.cyclic(1)).unwrap().cyclic_support(),
            vec![1, 2, 4, 8]
        );
    }

    #[test]
    fn class_structure_cases() {
        let pair = validate_hypotheses(3, 11, HypothesisMode::Strict).unwrap();
        let rep = verify_class_structure(&pair).unwrap();
        assert!(rep.passed(), "{:?}", rep.mismatches);
        assert_eq!(rep.case, Some(FifthClass::SumExponent));

        let pair = validate_hypotheses(13, 11, HypothesisMode::Strict).unwrap();
        let rep = verify_class_structure(&pair).unwrap();
        assert!(rep.passed(), "{:?}", rep.mismatches);
        assert_eq!(rep.case, Some(FifthClass::Inverse));

        let pair = validate_hypotheses(3, 5, HypothesisMode::Strict).unwrap();
        let rep = verify_class_structure(&pair).unwrap();
        assert!(rep.passed(), "{:?}", rep.mismatches);
        assert_eq!(rep.case, Some(FifthClass::Inverse));
    }

    #[test]
    fn class_report_shape() {
        let g = AbelianGroup::new(vec![5, 3]).unwrap();
        let classes = cyclotomic_classes(&g).unwrap();
        let json = serde_json::to_string(&classes[0].report()).unwrap();
        assert_eq!(
            json,
            r#"{"representative_exponents":[0,0],"size":1,"members_as_ranks":[0]}"#
        );
    }
}
