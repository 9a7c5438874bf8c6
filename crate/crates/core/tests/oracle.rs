//! Independent cross-checks: brute-force idempotents from class sums,
//! agreement between construction routes, and the orbit count on C33.

use std::collections::{BTreeMap, BTreeSet};

use abelian_codes::codes::{translation_orbit_distribution, weight_distribution, IdealCode};
use abelian_codes::cyclotomic::cyclotomic_classes;
use abelian_codes::idempotents::{family_general, family_prime_power, three_prime_components};
use abelian_codes::{parse_group_spec, AlgebraElement, HypothesisMode, IdempotentFamily};

fn family(spec: &str) -> IdempotentFamily {
    parse_group_spec(spec, HypothesisMode::Strict)
        .unwrap()
        .build_family()
        .unwrap()
}

/// Every idempotent of `F₂G` (odd `|G|`) is a sum of class sums. The
/// primitive ones are the atoms of that Boolean algebra, found by splitting
/// each current atom `a` into `af` and `a(1 + f)` for every idempotent `f`.
/// With `c` classes there are exactly `c` atoms, so refinement may stop once
/// the partition of unity has `c` parts.
fn brute_force_primitive(f: &IdempotentFamily) -> BTreeSet<Vec<usize>> {
    let g = &f.group;
    let one = AlgebraElement::one(g);
    let sums: Vec<AlgebraElement> = cyclotomic_classes(g)
        .unwrap()
        .iter()
        .map(|c| AlgebraElement::from_ranks(g, c.members.iter().copied()))
        .collect();
    let mut idempotents = 0usize;
    let mut atoms = vec![one.clone()];
    for mask in 1u32..(1 << sums.len()) {
        let mut x = AlgebraElement::zero(g);
        for (i, s) in sums.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x += s;
            }
        }
        if !x.is_idempotent() {
            continue;
        }
        idempotents += 1;
        if atoms.len() == sums.len() {
            continue;
        }
        let complement = &one + &x;
        atoms = atoms
            .iter()
            .flat_map(|a| [a * &x, a * &complement])
            .filter(|y| !y.is_zero())
            .collect();
    }
    assert_eq!(
        idempotents + 1,
        1 << sums.len(),
        "one idempotent per subset of components"
    );
    atoms.iter().map(|e| e.support()).collect()
}

fn supports(f: &IdempotentFamily) -> BTreeSet<Vec<usize>> {
    f.members.iter().map(|m| m.element.support()).collect()
}

#[test]
fn families_are_exactly_the_primitive_idempotents() {
    for spec in ["15", "33", "45", "143", "9x25", "3x5x11"] {
        let f = family(spec);
        assert_eq!(supports(&f), brute_force_primitive(&f), "{spec}");
    }
}

#[test]
fn general_route_matches_prime_power_route() {
    for (p, m, q, n) in [(3, 2, 5, 1), (3, 2, 5, 2), (3, 1, 11, 1)] {
        let pp = family_prime_power(p, m, q, n, HypothesisMode::Strict).unwrap();
        let gen = family_general(&[p.pow(m)], &[q.pow(n)], HypothesisMode::Strict).unwrap();
        assert_eq!(pp.group.factor_orders(), gen.group.factor_orders());
        assert_eq!(supports(&pp), supports(&gen), "({p}^{m}, {q}^{n})");
    }
}

#[test]
fn three_prime_components_agree() {
    let f = family("3x5x11");
    let c = three_prime_components(&f).unwrap();
    assert!(c.sum_identity);
    assert_eq!(c.matches_family, [true; 4]);
}

#[test]
fn c33_orbit_count_matches_enumeration() {
    let f = family("33");
    let e = &f.get("e3").unwrap().element;
    let g = &f.group;
    let gen = g.cyclic(1);
    let x = &(&AlgebraElement::from_group_element(g, &gen)
        + &AlgebraElement::from_group_element(g, &g.inverse(&gen)))
        * e;
    let weights: BTreeMap<u64, usize> = [1, 3, 5, 7, 11, 15]
        .iter()
        .map(|&k| (k, x.power(k).weight()))
        .collect();
    assert_eq!(
        weights,
        BTreeMap::from([(1, 18), (3, 16), (5, 18), (7, 20), (11, 12), (15, 14)])
    );
    assert_eq!(e.weight(), 22);
    assert_eq!(x.power(31), *e);

    let code = IdealCode::new(e);
    let by_orbit = translation_orbit_distribution(&code, &x).unwrap();
    assert_eq!(by_orbit, weight_distribution(&code, 1 << 10, 1).unwrap());
}
