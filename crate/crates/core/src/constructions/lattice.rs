use super::grid::{build_phis, Phis};
use crate::error::Result;
use crate::permgroup::{
    all_subgroups, are_conjugate, conjugate, core, intersection, is_normal, Perm, PermGroup,
};
use crate::pt_engine::GeometricSignature;

/// `D_p x D_p = <phi_1, ..., phi_4>` with the subgroups defining the curves
/// `X = Z/H`, `X_i = Z/H_i`, `Y~_j = Z/L_j`, `Y = Z/M` and `X~ = Z/<tau_1 tau_2>`.
#[derive(Clone)]
pub struct DihedralSquare {
    pub phis: Phis,
    /// `<tau_1, tau_2>`.
    pub h: PermGroup,
    /// `<sigma_2, tau_1, tau_2>` and `<sigma_1, tau_1, tau_2>`.
    pub h_factors: [PermGroup; 2],
    /// `<sigma_1^j sigma_2, tau_1 tau_2>` for `j = 1..(p-1)/2`.
    pub l: Vec<PermGroup>,
    /// `<sigma_1, sigma_2, tau_1 tau_2>`.
    pub m: PermGroup,
    /// `<tau_1 tau_2>`.
    pub diagonal: PermGroup,
}

impl DihedralSquare {
    pub fn new(p: u32) -> Result<Self> {
        let phis = build_phis(p)?;
        let g = phis.group();
        let (s1, s2) = (phis.sigma(0).clone(), phis.sigma(1).clone());
        let (t1, t2) = (phis.tau(0).clone(), phis.tau(1).clone());
        let tt = t1.then(&t2);
        let h = g.subgroup(&[t1.clone(), t2.clone()])?;
        let h_factors = [
            g.subgroup(&[s2.clone(), t1.clone(), t2.clone()])?,
            g.subgroup(&[s1.clone(), t1, t2])?,
        ];
        let l = (1..=(p as i64 - 1) / 2)
            .map(|j| g.subgroup(&[s1.pow(j).then(&s2), tt.clone()]))
            .collect::<Result<Vec<_>>>()?;
        let m = g.subgroup(&[s1, s2, tt.clone()])?;
        let diagonal = g.subgroup(&[tt])?;
        Ok(Self {
            phis,
            h,
            h_factors,
            l,
            m,
            diagonal,
        })
    }

    pub fn p(&self) -> u32 {
        self.phis.p
    }

    pub fn group(&self) -> &PermGroup {
        self.phis.group()
    }

    /// `[0; (<tau_1>, s1), (<tau_2>, s2)]`.
    pub fn signature(&self, s1: u32, s2: u32) -> Result<GeometricSignature> {
        let g = self.group();
        Ok(GeometricSignature::new(
            0,
            vec![
                (g.subgroup(&[self.phis.tau(0).clone()])?, s1),
                (g.subgroup(&[self.phis.tau(1).clone()])?, s2),
            ],
        ))
    }

    /// Named subgroups in a fixed order.
    pub fn named(&self) -> Vec<(String, &PermGroup)> {
        let mut out = vec![
            ("H".to_string(), &self.h),
            ("H_1".to_string(), &self.h_factors[0]),
            ("H_2".to_string(), &self.h_factors[1]),
        ];
        out.extend(
            self.l
                .iter()
                .enumerate()
                .map(|(j, l)| (format!("L_{}", j + 1), l)),
        );
        out.push(("M".to_string(), &self.m));
        out.push(("<tau_1 tau_2>".to_string(), &self.diagonal));
        out
    }

    /// Every stabilizer of a point of `Z` over a branch point: the conjugates
    /// of `<tau_1>` and `<tau_2>`.
    pub fn branch_stabilizers(&self) -> Vec<PermGroup> {
        let g = self.group();
        let mut out: Vec<PermGroup> = Vec::new();
        for t in [self.phis.tau(0), self.phis.tau(1)] {
            for x in g.elements() {
                let c = t.conjugate_by(x);
                if !out.iter().any(|s| s.contains(&c)) {
                    out.push(PermGroup::generate(g.degree(), &[c]).expect("order two"));
                }
            }
        }
        out
    }
}

/// `Z/U' -> Z/U` for `U' <= U` is étale iff every point stabilizer meets `U`
/// inside `U'`.
pub fn is_etale(stabilizers: &[PermGroup], sub: &PermGroup, sup: &PermGroup) -> bool {
    sub.is_subgroup_of(sup)
        && stabilizers
            .iter()
            .all(|s| intersection(sup, s).is_subgroup_of(sub))
}

#[derive(Clone, Debug)]
pub struct NamedClaim {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub p: u32,
    pub group_order: usize,
    /// Name and order of every named subgroup.
    pub orders: Vec<(String, usize)>,
    pub claims: Vec<NamedClaim>,
    pub subgroup_count: usize,
}

impl LatticeReport {
    pub fn all(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn claim(&self, name: &str) -> Option<&NamedClaim> {
        self.claims.iter().find(|c| c.name == name)
    }
}

fn avoids(u: &PermGroup, stabs: &[PermGroup]) -> bool {
    stabs.iter().all(|s| intersection(u, s).order() == 1)
}

/// Groups subgroups into conjugacy classes.
fn classes<'a>(g: &PermGroup, subs: &[&'a PermGroup]) -> Result<Vec<Vec<&'a PermGroup>>> {
    let mut out: Vec<Vec<&PermGroup>> = Vec::new();
    'next: for &u in subs {
        for class in out.iter_mut() {
            if are_conjugate(g, class[0], u)? {
                class.push(u);
                continue 'next;
            }
        }
        out.push(vec![u]);
    }
    Ok(out)
}

/// Whether `q: Z/H -> Z/K` factors through an étale cyclic cover of `Z/K`:
/// some `H <= N < K` with `N` normal in `K`, `K/N` cyclic and `Z/N -> Z/K` étale.
pub fn factors_through_etale_cyclic(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    stabs: &[PermGroup],
) -> Result<Option<PermGroup>> {
    for n in all_subgroups(k) {
        if n.order() == k.order() || !h.is_subgroup_of(&n) || !is_normal(k, &n)? {
            continue;
        }
        let cyclic = k.elements().iter().any(|x| {
            let mut gens: Vec<Perm> = n.generators().to_vec();
            gens.push(x.clone());
            PermGroup::generate(g.degree(), &gens).map(|c| c.order()) == Ok(k.order())
        });
        if cyclic && is_etale(stabs, &n, k) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Orders of the named subgroups, étale claims and the uniqueness claims,
/// the latter by exhaustive subgroup enumeration.
pub fn showcase_lattice(p: u32) -> Result<LatticeReport> {
    let sq = DihedralSquare::new(p)?;
    let g = sq.group();
    let pp = p as usize;
    let stabs = sq.branch_stabilizers();
    let mut claims = Vec::new();
    let mut claim = |name: &str, holds: bool, detail: String| {
        claims.push(NamedClaim {
            name: name.to_string(),
            holds,
            detail,
        })
    };

    let orders: Vec<(String, usize)> = sq
        .named()
        .iter()
        .map(|(n, u)| (n.clone(), u.order()))
        .collect();
    let mut expected = vec![4, 4 * pp, 4 * pp];
    expected.extend(std::iter::repeat_n(2 * pp, sq.l.len()));
    expected.extend([2 * pp * pp, 2]);
    let got: Vec<usize> = orders.iter().map(|(_, o)| *o).collect();
    claim(
        "orders",
        g.order() == 4 * pp * pp && got == expected,
        format!("|G| = {}, orders {got:?}", g.order()),
    );

    let chain_ok =
        sq.l.iter()
            .all(|l| is_etale(&stabs, &sq.diagonal, l) && is_etale(&stabs, l, &sq.m));
    let trivial = PermGroup::trivial(g.degree());
    claim(
        "etale",
        avoids(&sq.m, &stabs) && is_etale(&stabs, &trivial, &sq.diagonal) && chain_ok,
        "Z -> Y, Z -> X~, X~ -> Y~_j and Y~_j -> Y".into(),
    );

    let subgroups = all_subgroups(g);
    let index_two: Vec<&PermGroup> = subgroups
        .iter()
        .filter(|u| 2 * u.order() == g.order())
        .collect();
    let avoiding: Vec<&&PermGroup> = index_two.iter().filter(|u| avoids(u, &stabs)).collect();
    claim(
        "unique_hyperelliptic",
        avoiding.len() == 1 && **avoiding[0] == sq.m,
        format!(
            "{} index-two subgroups, {} avoid every stabilizer",
            index_two.len(),
            avoiding.len()
        ),
    );

    let mut coreless: Vec<&PermGroup> = Vec::new();
    for u in subgroups.iter().filter(|u| u.order() == 2 * pp) {
        if core(g, u)?.order() == 1 {
            coreless.push(u);
        }
    }
    let coreless_classes = classes(g, &coreless)?;
    let l_refs: Vec<&PermGroup> = sq.l.iter().collect();
    let l_classes = classes(g, &l_refs)?;
    let every_class_has_l = coreless_classes
        .iter()
        .all(|c| c.iter().any(|u| sq.l.contains(u)));
    claim(
        "etale_p_covers",
        every_class_has_l
            && l_classes.len() == sq.l.len()
            && coreless_classes.len() == sq.l.len()
            && sq.l.iter().all(|l| l.is_subgroup_of(&sq.m)),
        format!(
            "{} trivial-core subgroups of index {} in {} classes",
            coreless.len(),
            2 * pp,
            coreless_classes.len()
        ),
    );

    let order_four: Vec<&PermGroup> = subgroups.iter().filter(|u| u.order() == 4).collect();
    let four_classes = classes(g, &order_four)?;
    let noncyclic = order_four
        .iter()
        .all(|u| u.elements().iter().all(|x| x.order() <= 2));
    claim(
        "unique_order_four",
        four_classes.len() == 1 && order_four.len() == pp * pp && noncyclic,
        format!(
            "{} subgroups of order 4 in {} classes",
            order_four.len(),
            four_classes.len()
        ),
    );

    for (i, hi) in sq.h_factors.iter().enumerate() {
        let through = factors_through_etale_cyclic(g, &sq.h, hi, &stabs)?;
        claim(
            &format!("no_etale_cyclic_factor_{}", i + 1),
            through.is_none(),
            match through {
                Some(n) => format!("factors through Z/N with |N| = {}", n.order()),
                None => format!("X -> X_{} has no étale cyclic factor", i + 1),
            },
        );
    }

    let conj_ok = sq.l.iter().all(|l| {
        g.elements().iter().all(|x| {
            let c = conjugate(l, x);
            !sq.l.iter().any(|o| o != l && *o == c)
        })
    });
    claim(
        "l_pairwise_nonconjugate",
        conj_ok && l_classes.len() == sq.l.len(),
        format!("{} classes among {} subgroups", l_classes.len(), sq.l.len()),
    );

    Ok(LatticeReport {
        p,
        group_order: g.order(),
        orders,
        claims,
        subgroup_count: subgroups.len(),
    })
}
