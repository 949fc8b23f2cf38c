use super::{IndexSet, Perm, PermGroup};
use crate::error::{Error, Result};

/// A right coset `Hg`, as sorted element indices of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub members: Vec<usize>,
    /// Smallest member; also the canonical representative.
    pub rep: usize,
}

/// Right cosets of `H` in `G`, ordered by smallest member, with the
/// right-multiplication action of `G` on them.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub cosets: Vec<Coset>,
    coset_of: Vec<usize>,
}

impl CosetSpace {
    pub fn new(g: &PermGroup, h: &PermGroup) -> Result<Self> {
        let h_idx: Vec<usize> = g.indices_of(h)?.iter().collect();
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = cosets.len();
            let mut members: Vec<usize> = h_idx.iter().map(|&hh| g.mul(hh, x)).collect();
            members.sort_unstable();
            for &m in &members {
                coset_of[m] = c;
            }
            cosets.push(Coset {
                rep: members[0],
                members,
            });
        }
        Ok(Self { cosets, coset_of })
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Coset containing element `x`.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Image of coset `c` under right multiplication by element `x`.
    pub fn act(&self, g: &PermGroup, c: usize, x: usize) -> usize {
        self.coset_of[g.mul(self.cosets[c].rep, x)]
    }
}

pub fn right_cosets(g: &PermGroup, h: &PermGroup) -> Result<Vec<Coset>> {
    Ok(CosetSpace::new(g, h)?.cosets)
}

/// Double coset decomposition `G = ⊔ H g_i1 H` with, inside each double
/// coset, representatives `g_ij` that are simultaneously a transversal of
/// the left cosets `g_ij H` and of the right cosets `H g_ij`.
#[derive(Clone, Debug)]
pub struct DoubleCosetData {
    /// `g_i1`; the first is the identity.
    pub reps: Vec<Perm>,
    /// `g_ij` for `j = 1..n_i`, with `right_reps[i][0] == reps[i]`.
    pub right_reps: Vec<Vec<Perm>>,
    /// `n_i`, the number of right (equivalently left) cosets in each double coset.
    pub sizes: Vec<usize>,
    /// Element indices of each double coset, sorted.
    pub members: Vec<Vec<usize>>,
    double_coset_of: Vec<usize>,
}

impl DoubleCosetData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Double coset containing element index `x`.
    pub fn double_coset_of(&self, x: usize) -> usize {
        self.double_coset_of[x]
    }
}

/// Double cosets of `H` in `G`, identity first, then ordered by smallest member.
///
/// Common left/right transversals always exist: within `HgH` the bipartite
/// graph joining left and right cosets through shared elements is
/// `|H|`-regular, so it has a perfect matching. One is found by augmenting
/// paths, scanning elements in order, and the result is verified.
pub fn double_cosets(g: &PermGroup, h: &PermGroup) -> Result<DoubleCosetData> {
    let h_idx: Vec<usize> = g.indices_of(h)?.iter().collect();
    let n = g.order();
    let mut double_coset_of = vec![usize::MAX; n];
    let mut members_all = Vec::new();
    for x in 0..n {
        if double_coset_of[x] != usize::MAX {
            continue;
        }
        let d = members_all.len();
        let mut set = IndexSet::new(n);
        for &a in &h_idx {
            let ax = g.mul(a, x);
            for &b in &h_idx {
                set.insert(g.mul(ax, b));
            }
        }
        let members: Vec<usize> = set.iter().collect();
        for &m in &members {
            double_coset_of[m] = d;
        }
        members_all.push(members);
    }

    let right = CosetSpace::new(g, h)?;
    let mut reps = Vec::new();
    let mut right_reps = Vec::new();
    let mut sizes = Vec::new();
    for members in &members_all {
        let chosen = common_transversal(g, &h_idx, &right, members)?;
        sizes.push(chosen.len());
        reps.push(g.element(chosen[0]).clone());
        right_reps.push(chosen.iter().map(|&i| g.element(i).clone()).collect());
    }
    let data = DoubleCosetData {
        reps,
        right_reps,
        sizes,
        members: members_all,
        double_coset_of,
    };
    verify_double_cosets(g, h, &data)?;
    Ok(data)
}

/// Left coset `xH` of element `x`, identified by its smallest member.
fn left_coset_key(g: &PermGroup, h_idx: &[usize], x: usize) -> usize {
    h_idx
        .iter()
        .map(|&hh| g.mul(x, hh))
        .min()
        .expect("H nonempty")
}

fn common_transversal(
    g: &PermGroup,
    h_idx: &[usize],
    right: &CosetSpace,
    members: &[usize],
) -> Result<Vec<usize>> {
    let mut right_ids: Vec<usize> = members.iter().map(|&m| right.coset_of(m)).collect();
    right_ids.sort_unstable();
    right_ids.dedup();
    let mut left_ids: Vec<usize> = members
        .iter()
        .map(|&m| left_coset_key(g, h_idx, m))
        .collect();
    left_ids.sort_unstable();
    left_ids.dedup();
    if left_ids.len() != right_ids.len() {
        return Err(Error::Consistency(
            "left and right coset counts differ".into(),
        ));
    }
    let k = right_ids.len();
    // adjacency: right coset r -> list of (element, left coset)
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for &m in members {
        let r = right_ids
            .binary_search(&right.coset_of(m))
            .expect("present");
        let l = left_ids
            .binary_search(&left_coset_key(g, h_idx, m))
            .expect("present");
        adj[r].push((m, l));
    }
    let mut match_left: Vec<Option<(usize, usize)>> = vec![None; k]; // left -> (right, element)
    for r in 0..k {
        let mut visited = vec![false; k];
        if !augment(r, &adj, &mut match_left, &mut visited) {
            return Err(Error::Consistency(
                "no common left/right transversal found".into(),
            ));
        }
    }
    let mut chosen: Vec<usize> = match_left.iter().map(|m| m.expect("perfect").1).collect();
    chosen.sort_unstable();
    Ok(chosen)
}

fn augment(
    r: usize,
    adj: &[Vec<(usize, usize)>],
    match_left: &mut [Option<(usize, usize)>],
    visited: &mut [bool],
) -> bool {
    for &(elem, l) in &adj[r] {
        if visited[l] {
            continue;
        }
        visited[l] = true;
        let free = match match_left[l] {
            None => true,
            Some((r2, _)) => augment(r2, adj, match_left, visited),
        };
        if free {
            match_left[l] = Some((r, elem));
            return true;
        }
    }
    false
}

/// Checks the partition identities: the double cosets partition `G`, and in each
/// the chosen representatives hit every left and every right coset exactly once.
pub fn verify_double_cosets(g: &PermGroup, h: &PermGroup, data: &DoubleCosetData) -> Result<()> {
    let h_idx: Vec<usize> = g.indices_of(h)?.iter().collect();
    if !data.reps.first().is_some_and(Perm::is_identity) {
        return Err(Error::Consistency("g_11 is not the identity".into()));
    }
    let mut covered = IndexSet::new(g.order());
    for (i, members) in data.members.iter().enumerate() {
        for &m in members {
            if !covered.insert(m) {
                return Err(Error::Consistency("double cosets overlap".into()));
            }
        }
        let mut left = IndexSet::new(g.order());
        let mut right = IndexSet::new(g.order());
        for rep in &data.right_reps[i] {
            let x = g
                .index_of(rep)
                .ok_or_else(|| Error::Consistency("rep outside G".into()))?;
            for &hh in &h_idx {
                if !left.insert(g.mul(x, hh)) || !right.insert(g.mul(hh, x)) {
                    return Err(Error::Consistency(format!(
                        "representatives of double coset {i} repeat a coset"
                    )));
                }
            }
        }
        let exact =
            |s: &IndexSet| s.len() == members.len() && members.iter().all(|&m| s.contains(m));
        if !exact(&left) || !exact(&right) {
            return Err(Error::Consistency(format!(
                "representatives of double coset {i} do not cover it"
            )));
        }
    }
    if covered.len() != g.order() {
        return Err(Error::Consistency("double cosets do not cover G".into()));
    }
    let total: usize = data.sizes.iter().map(|n| n * h.order()).sum();
    if total != g.order() {
        return Err(Error::Consistency("sum of n_i |H| differs from |G|".into()));
    }
    Ok(())
}

/// `|H \ G / K|`, the number of orbits of `K` on the right cosets of `H`.
pub fn double_coset_count(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<usize> {
    let space = CosetSpace::new(g, h)?;
    let k_idx: Vec<usize> = g.indices_of(k)?.iter().collect();
    let mut seen = vec![false; space.len()];
    let mut orbits = 0;
    for start in 0..space.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            for &x in &k_idx {
                let d = space.act(g, c, x);
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(p: usize) -> (PermGroup, Perm, Perm) {
        let sigma = Perm::from_cycles(p, &[(1..=p).collect()]).unwrap();
        let tau_images: Vec<usize> = (1..=p)
            .map(|i| if i == 1 { 1 } else { p + 2 - i })
            .collect();
        let tau = Perm::from_images(&tau_images).unwrap();
        let g = PermGroup::generate(p, &[sigma.clone(), tau.clone()]).unwrap();
        (g, sigma, tau)
    }

    #[test]
    fn dihedral_over_reflection() {
        for p in [3usize, 5, 7, 11] {
            let (g, _, tau) = dihedral(p);
            let h = g.subgroup(&[tau]).unwrap();
            let dc = double_cosets(&g, &h).unwrap();
            assert_eq!(dc.len(), p.div_ceil(2));
            assert_eq!(dc.sizes[0], 1);
            assert!(dc.sizes[1..].iter().all(|&n| n == 2));
            assert!(dc.reps[0].is_identity());
            assert_eq!(right_cosets(&g, &h).unwrap().len(), p);
        }
    }

    #[test]
    fn whole_group_single_double_coset() {
        let (g, _, _) = dihedral(5);
        let dc = double_cosets(&g, &g).unwrap();
        assert_eq!(dc.len(), 1);
        assert_eq!(dc.right_reps[0].len(), 1);
        assert_eq!(right_cosets(&g, &g).unwrap().len(), 1);
    }

    #[test]
    fn rejects_non_subgroup() {
        let (g, _, _) = dihedral(5);
        let other = PermGroup::generate(5, &[Perm::parse("(1 2)", Some(5)).unwrap()]).unwrap();
        assert!(double_cosets(&g, &other).is_err());
    }

    #[test]
    fn coset_ordering_is_by_minimal_element() {
        let (g, _, tau) = dihedral(7);
        let h = g.subgroup(&[tau]).unwrap();
        let cosets = right_cosets(&g, &h).unwrap();
        assert!(cosets.windows(2).all(|w| w[0].rep < w[1].rep));
        assert_eq!(cosets[0].rep, 0);
        for c in &cosets {
            assert_eq!(c.rep, c.members[0]);
        }
    }

    #[test]
    fn double_coset_count_matches_decomposition() {
        let (g, sigma, tau) = dihedral(5);
        let h = g.subgroup(&[tau]).unwrap();
        assert_eq!(double_coset_count(&g, &h, &h).unwrap(), 3);
        let rot = g.subgroup(&[sigma]).unwrap();
        assert_eq!(double_coset_count(&g, &h, &rot).unwrap(), 1);
        let triv = PermGroup::trivial(5);
        assert_eq!(double_coset_count(&g, &h, &triv).unwrap(), 5);
    }
}
