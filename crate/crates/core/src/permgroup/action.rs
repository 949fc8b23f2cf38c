use std::collections::{BTreeSet, HashSet, VecDeque};
use std::hash::Hash;

use super::{IndexSet, Perm, PermGroup};
use crate::error::{Error, Result};

/// Orbit of a 1-based point, sorted.
pub fn orbit(g: &PermGroup, point: usize) -> Result<Vec<usize>> {
    check_point(g, point)?;
    Ok(orbit_under(g.generators(), point, |&x, s| s.image(x)))
}

/// All orbits on `{1..degree}`, ordered by smallest point.
pub fn orbits(g: &PermGroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.degree() + 1];
    let mut out = Vec::new();
    for x in 1..=g.degree() {
        if !seen[x] {
            let o = orbit_under(g.generators(), x, |&y, s| s.image(y));
            for &y in &o {
                seen[y] = true;
            }
            out.push(o);
        }
    }
    out
}

/// Whether `g` acts transitively on `points`. The set must be nonempty and
/// `g`-invariant; otherwise the answer is `false`.
pub fn is_transitive(g: &PermGroup, points: &[usize]) -> bool {
    let Some(&first) = points.first() else {
        return false;
    };
    if first == 0 || first > g.degree() {
        return false;
    }
    let target: BTreeSet<usize> = points.iter().copied().collect();
    let o: BTreeSet<usize> = orbit_under(g.generators(), first, |&y, s| s.image(y))
        .into_iter()
        .collect();
    o == target
}

pub fn stabilizer(g: &PermGroup, point: usize) -> Result<PermGroup> {
    check_point(g, point)?;
    Ok(stabilizer_under(g, &point, |&x, s| s.image(x)))
}

fn check_point(g: &PermGroup, point: usize) -> Result<()> {
    if point == 0 || point > g.degree() {
        return Err(Error::PointOutOfRange {
            point,
            degree: g.degree(),
        });
    }
    Ok(())
}

/// Orbit of `start` under an induced right action `act(x, g)`, sorted.
pub fn orbit_under<T, F>(gens: &[Perm], start: T, act: F) -> Vec<T>
where
    T: Clone + Eq + Hash + Ord,
    F: Fn(&T, &Perm) -> T,
{
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = act(&x, s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<T> = seen.into_iter().collect();
    out.sort();
    out
}

/// Stabilizer of `x` under an induced action.
pub fn stabilizer_under<T, F>(g: &PermGroup, x: &T, act: F) -> PermGroup
where
    T: Eq,
    F: Fn(&T, &Perm) -> T,
{
    let set = IndexSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&i| act(x, g.element(i)) == *x),
    );
    g.subgroup_from_set(&set)
}

/// A system of imprimitivity: blocks sorted internally and by smallest point.
pub type BlockSystem = Vec<Vec<usize>>;

/// Finest block system in which all of `seed` lie in one block.
fn minimal_block_system(g: &PermGroup, seed: &[usize]) -> BlockSystem {
    let n = g.degree();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut pending = VecDeque::new();
    let union = |parent: &mut Vec<usize>, pending: &mut VecDeque<(usize, usize)>, a, b| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
            pending.push_back((a, b));
        }
    };
    for &s in &seed[1..] {
        union(&mut parent, &mut pending, seed[0], s);
    }
    while let Some((a, b)) = pending.pop_front() {
        for s in g.generators() {
            union(&mut parent, &mut pending, s.image(a), s.image(b));
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for x in 1..=n {
        let r = find(&mut parent, x);
        blocks[r].push(x);
    }
    blocks.retain(|b| !b.is_empty());
    blocks.sort();
    blocks
}

/// Every nontrivial block system of a transitive group, sorted by block size
/// and then lexicographically. Empty for intransitive groups.
pub fn block_systems(g: &PermGroup) -> Vec<BlockSystem> {
    let n = g.degree();
    if n < 2 || !is_transitive(g, &(1..=n).collect::<Vec<_>>()) {
        return Vec::new();
    }
    // blocks containing 1, grown one point at a time
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([vec![1]]);
    let mut systems: BTreeSet<(usize, BlockSystem)> = BTreeSet::new();
    while let Some(block) = queue.pop_front() {
        for c in 1..=n {
            if block.binary_search(&c).is_ok() {
                continue;
            }
            let mut seed = block.clone();
            seed.push(c);
            let system = minimal_block_system(g, &seed);
            let b1 = system[0].clone();
            if b1.len() == n {
                continue;
            }
            if found.insert(b1.clone()) {
                systems.insert((b1.len(), system));
                queue.push_back(b1);
            }
        }
    }
    systems.into_iter().map(|(_, s)| s).collect()
}

/// Block systems whose blocks contain no smaller nontrivial block.
pub fn minimal_block_systems(g: &PermGroup) -> Vec<BlockSystem> {
    let all = block_systems(g);
    all.iter()
        .filter(|s| {
            !all.iter().any(|t| {
                t[0].len() < s[0].len() && t[0].iter().all(|x| s[0].binary_search(x).is_ok())
            })
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn transitivity() {
        let s2 = PermGroup::generate(2, &[p("(1 2)", 2)]).unwrap();
        assert!(is_transitive(&s2, &[1, 2]));
        let v = PermGroup::generate(4, &[p("(1 2)", 4), p("(3 4)", 4)]).unwrap();
        assert!(!is_transitive(&v, &[1, 2, 3, 4]));
        assert!(is_transitive(&v, &[3, 4]));
        assert_eq!(orbits(&v), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn stabilizers_and_errors() {
        let triv = PermGroup::trivial(3);
        assert_eq!(stabilizer(&triv, 2).unwrap().order(), 1);
        assert!(stabilizer(&triv, 4).is_err());
        assert!(orbit(&triv, 0).is_err());
        let d4 = PermGroup::generate(4, &[p("(1 2 3 4)", 4), p("(2 4)", 4)]).unwrap();
        for x in 1..=4 {
            let st = stabilizer(&d4, x).unwrap();
            assert_eq!(st.order() * orbit(&d4, x).unwrap().len(), d4.order());
        }
    }

    #[test]
    fn blocks_of_dihedral_square() {
        // D_4 on a square: the diagonals form the only nontrivial system
        let d4 = PermGroup::generate(4, &[p("(1 2 3 4)", 4), p("(2 4)", 4)]).unwrap();
        assert_eq!(block_systems(&d4), vec![vec![vec![1, 3], vec![2, 4]]]);
        let c6 = PermGroup::generate(6, &[p("(1 2 3 4 5 6)", 6)]).unwrap();
        let sizes: Vec<usize> = block_systems(&c6).iter().map(|s| s[0].len()).collect();
        assert_eq!(sizes, vec![2, 3]);
        assert_eq!(minimal_block_systems(&c6).len(), 2);
        let s3 = PermGroup::generate(3, &[p("(1 2 3)", 3), p("(1 2)", 3)]).unwrap();
        assert!(block_systems(&s3).is_empty());
    }

    #[test]
    fn induced_action_on_pairs() {
        let g = PermGroup::generate(4, &[p("(1 2 3 4)", 4)]).unwrap();
        let act = |s: &Vec<usize>, x: &Perm| {
            let mut v: Vec<usize> = s.iter().map(|&a| x.image(a)).collect();
            v.sort();
            v
        };
        let o = orbit_under(g.generators(), vec![1, 3], act);
        assert_eq!(o, vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(stabilizer_under(&g, &vec![1, 3], act).order(), 2);
    }
}
