use std::collections::BTreeSet;

use super::{IndexSet, Perm, PermGroup};
use crate::error::Result;

/// `g^-1 U g`.
pub fn conjugate(u: &PermGroup, g: &Perm) -> PermGroup {
    let gens: Vec<Perm> = u.generators().iter().map(|x| x.conjugate_by(g)).collect();
    let elements: Vec<Perm> = u.elements().iter().map(|x| x.conjugate_by(g)).collect();
    PermGroup::from_closed(u.degree(), gens, elements)
}

fn conjugate_set(g: &PermGroup, set: &IndexSet, x: usize) -> IndexSet {
    IndexSet::from_indices(g.order(), set.iter().map(|u| g.conj(u, x)))
}

/// Whether `U` and `V` are conjugate in `G`.
pub fn are_conjugate(g: &PermGroup, u: &PermGroup, v: &PermGroup) -> Result<bool> {
    let us = g.indices_of(u)?;
    let vs = g.indices_of(v)?;
    if us.len() != vs.len() {
        return Ok(false);
    }
    Ok((0..g.order()).any(|x| conjugate_set(g, &us, x) == vs))
}

pub fn is_normal(g: &PermGroup, u: &PermGroup) -> Result<bool> {
    let us = g.indices_of(u)?;
    Ok(g.generators()
        .iter()
        .map(|s| g.index_of(s).expect("generator in group"))
        .all(|x| conjugate_set(g, &us, x) == us))
}

pub fn intersection(u: &PermGroup, v: &PermGroup) -> PermGroup {
    let elements: Vec<Perm> = u
        .elements()
        .iter()
        .filter(|x| v.contains(x))
        .cloned()
        .collect();
    let set = IndexSet::from_indices(
        u.order(),
        elements.iter().map(|x| u.index_of(x).expect("member")),
    );
    u.subgroup_from_set(&set)
}

/// `<U, V>` inside `G`.
pub fn join(g: &PermGroup, u: &PermGroup, v: &PermGroup) -> Result<PermGroup> {
    let mut gens = u.generators().to_vec();
    gens.extend_from_slice(v.generators());
    g.subgroup(&gens)
}

/// The largest normal subgroup of `G` contained in `U`.
pub fn core(g: &PermGroup, u: &PermGroup) -> Result<PermGroup> {
    let us = g.indices_of(u)?;
    let mut acc = us.clone();
    for x in 0..g.order() {
        acc = acc.intersection(&conjugate_set(g, &us, x));
    }
    Ok(g.subgroup_from_set(&acc))
}

/// Smallest element index generating the cyclic group `set`.
fn min_generator(g: &PermGroup, set: &IndexSet) -> usize {
    set.iter()
        .find(|&x| g.element(x).order() == set.len())
        .expect("cyclic")
}

/// Conjugacy classes of nontrivial cyclic subgroups. Classes are ordered by
/// subgroup order, then by smallest generating element; members of a class
/// likewise by smallest generating element.
pub fn cyclic_subgroup_classes(g: &PermGroup) -> Vec<Vec<PermGroup>> {
    let mut cyclic: BTreeSet<IndexSet> = BTreeSet::new();
    for x in 1..g.order() {
        cyclic.insert(g.closure(&[x]));
    }
    let sets: Vec<IndexSet> = cyclic.into_iter().collect();
    let mut classes: Vec<Vec<(usize, &IndexSet)>> = group_into_classes(g, &sets)
        .into_iter()
        .map(|class| {
            let mut keyed: Vec<(usize, &IndexSet)> = class
                .into_iter()
                .map(|s| (min_generator(g, s), s))
                .collect();
            keyed.sort_by_key(|(k, _)| *k);
            keyed
        })
        .collect();
    classes.sort_by_key(|keyed| (keyed[0].1.len(), keyed[0].0));
    classes
        .into_iter()
        .map(|keyed| {
            keyed
                .into_iter()
                .map(|(x, s)| {
                    PermGroup::from_closed(
                        g.degree(),
                        vec![g.element(x).clone()],
                        s.iter().map(|i| g.element(i).clone()).collect(),
                    )
                })
                .collect()
        })
        .collect()
}

fn group_into_classes<'a>(g: &PermGroup, sets: &'a [IndexSet]) -> Vec<Vec<&'a IndexSet>> {
    let mut assigned = vec![false; sets.len()];
    let mut classes = Vec::new();
    for i in 0..sets.len() {
        if assigned[i] {
            continue;
        }
        let conjugates: BTreeSet<IndexSet> = (0..g.order())
            .map(|x| conjugate_set(g, &sets[i], x))
            .collect();
        let mut class = Vec::new();
        for (j, s) in sets.iter().enumerate().skip(i) {
            if !assigned[j] && conjugates.contains(s) {
                assigned[j] = true;
                class.push(s);
            }
        }
        classes.push(class);
    }
    classes
}

/// All `N` with `H < N <= G`, ordered by order and then by element indices.
///
/// Closures `<N, x>` for `x` outside `N` are iterated to a fixpoint starting
/// from `H`; every supergroup arises this way by adding generators one at a
/// time. `<N, x>` depends only on the double coset `NxN`, so one `x` per
/// double coset is tried.
pub fn proper_supergroups(g: &PermGroup, h: &PermGroup) -> Result<Vec<PermGroup>> {
    let hs = g.indices_of(h)?;
    let h_gens: Vec<usize> = h
        .generators()
        .iter()
        .map(|x| g.index_of(x).expect("member"))
        .collect();
    let mut found: BTreeSet<(usize, IndexSet)> = BTreeSet::new();
    let mut frontier = vec![(hs, h_gens)];
    while let Some((n, gens)) = frontier.pop() {
        let members: Vec<usize> = n.iter().collect();
        let mut done = n.clone();
        for x in 0..g.order() {
            if done.contains(x) {
                continue;
            }
            for &a in &members {
                let ax = g.mul(a, x);
                for &b in &members {
                    done.insert(g.mul(ax, b));
                }
            }
            let mut seeds = gens.clone();
            seeds.push(x);
            let bigger = g.closure(&seeds);
            if found.insert((bigger.len(), bigger.clone())) {
                frontier.push((bigger, seeds));
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(_, s)| g.subgroup_from_set(&s))
        .collect())
}

/// Every subgroup of `G` as an index set, ordered by order then elements.
/// Built as the join-closure of the cyclic subgroups.
pub(crate) fn all_subgroup_sets(g: &PermGroup) -> Vec<IndexSet> {
    let mut cyclic: BTreeSet<IndexSet> = BTreeSet::new();
    for x in 1..g.order() {
        cyclic.insert(g.closure(&[x]));
    }
    let cyclic_gens: Vec<usize> = cyclic.iter().map(|s| min_generator(g, s)).collect();
    let trivial = IndexSet::from_indices(g.order(), [0]);
    let mut found: BTreeSet<(usize, IndexSet)> = BTreeSet::from([(1, trivial.clone())]);
    let mut frontier = vec![(trivial, Vec::<usize>::new())];
    while let Some((s, gens)) = frontier.pop() {
        for &c in &cyclic_gens {
            if s.contains(c) {
                continue;
            }
            let mut seeds = gens.clone();
            seeds.push(c);
            let bigger = g.closure(&seeds);
            if found.insert((bigger.len(), bigger.clone())) {
                frontier.push((bigger, seeds));
            }
        }
    }
    found.into_iter().map(|(_, s)| s).collect()
}

/// Every subgroup of `G`, ordered by order and then by element indices.
pub fn all_subgroups(g: &PermGroup) -> Vec<PermGroup> {
    all_subgroup_sets(g)
        .iter()
        .map(|s| g.subgroup_from_set(s))
        .collect()
}

/// Every subgroup of `G` grouped into conjugacy classes, classes ordered by
/// the order and elements of their first member.
pub fn subgroup_classes(g: &PermGroup) -> Vec<Vec<PermGroup>> {
    let sets = all_subgroup_sets(g);
    group_into_classes(g, &sets)
        .into_iter()
        .map(|class| class.into_iter().map(|s| g.subgroup_from_set(s)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(p: usize) -> PermGroup {
        let sigma = Perm::from_cycles(p, &[(1..=p).collect()]).unwrap();
        let tau: Vec<usize> = (1..=p)
            .map(|i| if i == 1 { 1 } else { p + 2 - i })
            .collect();
        PermGroup::generate(p, &[sigma, Perm::from_images(&tau).unwrap()]).unwrap()
    }

    /// Brute force: every subset closure of at most two elements.
    fn brute_subgroups(g: &PermGroup) -> BTreeSet<IndexSet> {
        let mut out = BTreeSet::new();
        for a in 0..g.order() {
            for b in a..g.order() {
                out.insert(g.closure(&[a, b]));
            }
        }
        out
    }

    #[test]
    fn dihedral_cyclic_classes() {
        for p in [3usize, 5, 7, 11] {
            let g = dihedral(p);
            let classes = cyclic_subgroup_classes(&g);
            assert_eq!(classes.len(), 2);
            assert_eq!(classes[0][0].order(), 2);
            assert_eq!(classes[0].len(), p);
            assert_eq!(classes[1][0].order(), p);
            assert_eq!(classes[1].len(), 1);
        }
        assert!(cyclic_subgroup_classes(&PermGroup::trivial(3)).is_empty());
    }

    #[test]
    fn cores() {
        let g = dihedral(5);
        assert_eq!(core(&g, &g).unwrap(), g);
        let tau = g
            .subgroup(&[Perm::parse("(2 5)(3 4)", Some(5)).unwrap()])
            .unwrap();
        assert_eq!(core(&g, &tau).unwrap().order(), 1);
        let rot = g
            .subgroup(&[Perm::parse("(1 2 3 4 5)", None).unwrap()])
            .unwrap();
        assert_eq!(core(&g, &rot).unwrap(), rot);
        assert!(is_normal(&g, &rot).unwrap());
        assert!(!is_normal(&g, &tau).unwrap());
    }

    #[test]
    fn supergroups_of_reflection() {
        let g = dihedral(7);
        let tau = g
            .subgroup(&[Perm::parse("(2 7)(3 6)(4 5)", None).unwrap()])
            .unwrap();
        let sup = proper_supergroups(&g, &tau).unwrap();
        assert_eq!(sup, vec![g.clone()]);
        assert!(proper_supergroups(&g, &g).unwrap().is_empty());
    }

    #[test]
    fn lattice_matches_brute_force() {
        // D_6 is 2-generated, so pair closures reach every subgroup
        let d6 = PermGroup::generate(
            6,
            &[
                Perm::parse("(1 2 3 4 5 6)", None).unwrap(),
                Perm::parse("(2 6)(3 5)", Some(6)).unwrap(),
            ],
        )
        .unwrap();
        let ours: BTreeSet<IndexSet> = all_subgroup_sets(&d6).into_iter().collect();
        assert_eq!(ours, brute_subgroups(&d6));
        assert_eq!(ours.len(), 16);
        assert_eq!(subgroup_classes(&d6).len(), 10);
    }

    #[test]
    fn conjugation_helpers() {
        let g = dihedral(5);
        let classes = cyclic_subgroup_classes(&g);
        let a = &classes[0][0];
        let b = &classes[0][3];
        assert!(are_conjugate(&g, a, b).unwrap());
        assert!(!are_conjugate(&g, a, &classes[1][0]).unwrap());
        let x = g.element(7).clone();
        let c = conjugate(a, &x);
        assert!(are_conjugate(&g, a, &c).unwrap());
        assert_eq!(intersection(a, b).order(), 1);
        assert_eq!(join(&g, a, b).unwrap(), g);
    }
}
