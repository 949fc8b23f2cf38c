use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::product::{dihedral_product, ProductPresentation};
use crate::characters::{dihedral_table, Factor, GroupModel};
use crate::error::{Error, Result};
use crate::exact_algebra::check_conductor;
use crate::matrix::Matrix;
use crate::permgroup::{is_transitive, orbit_under, stabilizer_under, CosetSpace, Perm, PermGroup};
use crate::pt_engine::{
    corr_matrix, exponent, kanev_coefficients, matrix_properties, CorrMatrix, MatrixProperties,
};

fn odd_prime(p: u32) -> Result<u32> {
    check_conductor(p as u64)
}

/// Residue of `k` in `1..=p`.
fn res(p: u32, k: i64) -> u32 {
    let r = k.rem_euclid(p as i64) as u32;
    if r == 0 {
        p
    } else {
        r
    }
}

/// The involutions `phi_1, ..., phi_4` of `S_2p` generating `D_p x D_p`,
/// with the model `sigma_1 = phi_1 phi_2`, `tau_1 = phi_1`,
/// `sigma_2 = phi_3 phi_4`, `tau_2 = phi_3`.
#[derive(Clone)]
pub struct Phis {
    pub p: u32,
    pub phis: [Perm; 4],
    pub model: GroupModel,
}

impl Phis {
    pub fn group(&self) -> &PermGroup {
        self.model.group()
    }

    /// `tau_f` and `sigma_f` for `f = 0, 1`.
    pub fn tau(&self, f: usize) -> &Perm {
        self.model.tau(f)
    }

    pub fn sigma(&self, f: usize) -> &Perm {
        self.model.sigma(f).expect("dihedral factor")
    }
}

/// Builds the four involutions and checks the relations of `D_p x D_p`.
/// A failed relation is a construction bug and returns `Consistency`.
pub fn build_phis(p: u32) -> Result<Phis> {
    let p = odd_prime(p)? as usize;
    let n = 2 * p;
    let c = |pairs: Vec<Vec<usize>>| Perm::from_cycles(n, &pairs);
    let phi1 = c((1..=p).map(|i| vec![i, i + p]).collect())?;
    let mut v2: Vec<Vec<usize>> = (1..p).map(|i| vec![i, i + p + 1]).collect();
    v2.push(vec![p, p + 1]);
    let phi2 = c(v2)?;
    let mut v3 = vec![vec![1, p + 1]];
    v3.extend((2..=p).map(|i| vec![i, 2 * p + 2 - i]));
    let phi3 = c(v3)?;
    let mut v4 = vec![vec![1, p + 2], vec![2, p + 1]];
    v4.extend((3..=p).map(|i| vec![i, 2 * p + 3 - i]));
    let phi4 = c(v4)?;

    let fail = |what: String| Err(Error::Consistency(what));
    for (k, f) in [&phi1, &phi2, &phi3, &phi4].into_iter().enumerate() {
        if f.order() != 2 {
            return fail(format!("phi_{} = {f} is not an involution", k + 1));
        }
    }
    let s1 = phi1.then(&phi2);
    let s2 = phi3.then(&phi4);
    let mut down: Vec<usize> = vec![1];
    down.extend((2..=p).rev());
    let up: Vec<usize> = (p + 1..=n).collect();
    if s1 != c(vec![down, up.clone()])? {
        return fail(format!("phi_1 phi_2 = {s1}"));
    }
    if s2 != c(vec![(1..=p).collect(), up])? {
        return fail(format!("phi_3 phi_4 = {s2}"));
    }
    for a in [&phi1, &phi2] {
        for b in [&phi3, &phi4] {
            if a.then(b) != b.then(a) {
                return fail(format!("{a} and {b} do not commute"));
            }
        }
    }
    let factors = vec![
        Factor::Dihedral {
            p: p as u32,
            sigma: s1,
            tau: phi1.clone(),
        },
        Factor::Dihedral {
            p: p as u32,
            sigma: s2,
            tau: phi3.clone(),
        },
    ];
    let model = GroupModel::new(n, factors)?;
    if model.group().order() != 4 * p * p {
        return fail(format!("generated order {}", model.group().order()));
    }
    Ok(Phis {
        p: p as u32,
        phis: [phi1, phi2, phi3, phi4],
        model,
    })
}

/// Image of the point `P_ij = x_i + y_j`, where `x_i = i` and `y_j = p + j`;
/// `None` if `g` does not map it to a point of the same form.
pub fn pair_image(g: &Perm, p: u32, (i, j): (u32, u32)) -> Option<(u32, u32)> {
    let p = p as usize;
    let (a, b) = (g.image(i as usize), g.image(p + j as usize));
    let (x, y) = if a <= p { (a, b) } else { (b, a) };
    (x <= p && y > p).then(|| (x as u32, (y - p) as u32))
}

/// Row-major index of `P_ij`.
pub fn grid_index(p: u32, (i, j): (u32, u32)) -> usize {
    ((i - 1) * p + (j - 1)) as usize
}

pub fn grid_point(p: u32, idx: usize) -> (u32, u32) {
    (idx as u32 / p + 1, idx as u32 % p + 1)
}

#[derive(Clone, Debug)]
pub struct PairActionReport {
    pub orbit_size: usize,
    /// Stabilizer of `P_11` equals `<phi_1, phi_3>` and has order 4.
    pub stabilizer_is_klein: bool,
}

/// Transitivity of the group on the `p^2` points `P_ij` and the stabilizer of `P_11`.
pub fn pair_action(phis: &Phis) -> Result<PairActionReport> {
    let p = phis.p;
    let act = |x: &(u32, u32), g: &Perm| pair_image(g, p, *x).expect("phi preserves the pairs");
    let orbit = orbit_under(&phis.phis, (1, 1), act);
    let stab = stabilizer_under(phis.group(), &(1, 1), act);
    let klein = phis
        .group()
        .subgroup(&[phis.phis[0].clone(), phis.phis[2].clone()])?;
    Ok(PairActionReport {
        orbit_size: orbit.len(),
        stabilizer_is_klein: stab == klein && stab.order() == 4,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyReport {
    pub valid: bool,
    pub transitive: bool,
    /// `{1..p}` and `{p+1..2p}` form a block system.
    pub imprimitive: bool,
    /// Every element is a product of `p` transpositions `(j, p + k)`.
    pub transposition_form: bool,
    pub reasons: Vec<String>,
}

/// Checks a monodromy tuple in `S_2p` for an étale `p`-fold cover of a
/// hyperelliptic curve. The tuple must multiply to the identity.
pub fn validate_monodromy(p: u32, tuple: &[Perm]) -> Result<MonodromyReport> {
    let p = odd_prime(p)? as usize;
    let n = 2 * p;
    if tuple.is_empty() {
        return Err(Error::InvalidPresentation("empty monodromy tuple".into()));
    }
    if let Some(bad) = tuple.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch {
            expected: n,
            got: bad.degree(),
        });
    }
    let prod = tuple.iter().fold(Perm::identity(n), |acc, g| acc.then(g));
    if !prod.is_identity() {
        return Err(Error::InvalidPresentation(format!(
            "product of the tuple is {prod}, not 1"
        )));
    }
    let mut reasons = Vec::new();
    let group = PermGroup::generate(n, tuple)?;
    let points: Vec<usize> = (1..=n).collect();
    let transitive = is_transitive(&group, &points);
    if !transitive {
        reasons.push("(1) the generated group is not transitive".to_string());
    }
    let block = |x: usize| usize::from(x > p);
    let imprimitive = tuple.iter().all(|g| {
        let shift = block(g.image(1)) ^ block(1);
        (1..=n).all(|x| block(g.image(x)) == block(x) ^ shift)
    });
    if !imprimitive {
        reasons.push(format!(
            "(1) {{1..{p}}}, {{{}..{n}}} is not a block system",
            p + 1
        ));
    }
    let mut transposition_form = true;
    for (k, g) in tuple.iter().enumerate() {
        let cycles = g.cycles();
        let ok = cycles.len() == p && cycles.iter().all(|c| c.len() == 2 && c[0] <= p && c[1] > p);
        if !ok {
            transposition_form = false;
            reasons.push(format!(
                "(2) element {} = {g} is not of the form prod (j, p+k)",
                k + 1
            ));
        }
    }
    Ok(MonodromyReport {
        valid: transitive && imprimitive && transposition_form,
        transitive,
        imprimitive,
        transposition_form,
        reasons,
    })
}

/// The fiber correspondence `D(P_ij) = sum_{(k,l) in I_ij} P_kl` with
/// `I_ij = {k + l != i + j, k - l != i - j mod p}`.
#[derive(Clone, Debug)]
pub struct GridCorrespondence {
    pub p: u32,
    /// Rows and columns in the order of [`grid_index`].
    pub corr: CorrMatrix,
    /// `I_ij` per point, in the same order.
    pub index_sets: Vec<Vec<(u32, u32)>>,
}

pub fn grid_correspondence(p: u32) -> Result<GridCorrespondence> {
    let p = odd_prime(p)?;
    let pts: Vec<(u32, u32)> = (1..=p).flat_map(|i| (1..=p).map(move |j| (i, j))).collect();
    let index_sets: Vec<Vec<(u32, u32)>> = pts
        .iter()
        .map(|&(i, j)| {
            let (sum, diff) = (res(p, (i + j) as i64), res(p, i as i64 - j as i64));
            pts.iter()
                .copied()
                .filter(|&(k, l)| {
                    res(p, (k + l) as i64) != sum && res(p, k as i64 - l as i64) != diff
                })
                .collect()
        })
        .collect();
    let n = pts.len();
    let mut m: Matrix<BigInt> = Matrix::zeros(n, n);
    for (c, set) in index_sets.iter().enumerate() {
        for &kl in set {
            m.set(grid_index(p, kl), c, BigInt::one());
        }
    }
    let labels = pts.iter().map(|(i, j)| format!("P({i},{j})")).collect();
    Ok(GridCorrespondence {
        p,
        corr: CorrMatrix { labels, matrix: m },
        index_sets,
    })
}

/// The action of `phi_k` on the grid as displayed in closed form.
pub fn displayed_action(k: usize, p: u32, (i, j): (u32, u32)) -> (u32, u32) {
    let (i, j, q) = (i as i64, j as i64, p as i64);
    let (a, b) = match k {
        1 => (j, i),
        2 => (j - 1, i + 1),
        3 => (q - j + 2, q - i + 2),
        4 => (q - j + 3, q - i + 3),
        _ => panic!("phi_{k} does not exist"),
    };
    (res(p, a), res(p, b))
}

/// Whether `M[f(a)][f(b)] = M[a][b]` for a bijection `f` of the grid.
fn commutes(m: &Matrix<BigInt>, f: &[usize]) -> bool {
    m.permuted(f) == *m
}

/// Whether `g` commutes with the grid correspondence; `None` if `g` does not
/// act on the points `P_ij`.
pub fn commutes_with(gc: &GridCorrespondence, g: &Perm) -> Option<bool> {
    let p = gc.p;
    let f: Option<Vec<usize>> = (0..(p * p) as usize)
        .map(|x| pair_image(g, p, grid_point(p, x)).map(|y| grid_index(p, y)))
        .collect();
    Some(commutes(&gc.corr.matrix, &f?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub name: String,
    /// The closed-form action agrees with the permutation on every point.
    pub formula_matches_action: bool,
    pub commutes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub generators: Vec<GeneratorCheck>,
}

impl EquivarianceReport {
    pub fn all(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.formula_matches_action && g.commutes)
    }
}

/// Checks `phi_k D = D phi_k` for `k = 1..4` using the closed-form actions,
/// and checks the closed forms against the permutations themselves.
pub fn verify_equivariance(gc: &GridCorrespondence) -> Result<EquivarianceReport> {
    let p = gc.p;
    let phis = build_phis(p)?;
    let n = (p * p) as usize;
    let mut generators = Vec::new();
    for k in 1..=4 {
        let f: Vec<usize> = (0..n)
            .map(|x| grid_index(p, displayed_action(k, p, grid_point(p, x))))
            .collect();
        let phi = &phis.phis[k - 1];
        let formula_matches_action =
            (0..n).all(|x| pair_image(phi, p, grid_point(p, x)) == Some(grid_point(p, f[x])));
        generators.push(GeneratorCheck {
            name: format!("phi_{k}"),
            formula_matches_action,
            commutes: commutes(&gc.corr.matrix, &f),
        });
    }
    Ok(EquivarianceReport { generators })
}

#[derive(Clone, Debug)]
pub struct KanevGridReport {
    pub equal: bool,
    /// Kanev matrix of the product presentation, transported to the grid.
    pub kanev: CorrMatrix,
    pub grid: GridCorrespondence,
    pub kanev_properties: MatrixProperties,
    pub grid_properties: MatrixProperties,
    pub exponent: BigInt,
    pub residual: Option<Matrix<BigInt>>,
}

/// The isomorphism from the product group on the disjoint union onto
/// `<phi_1, ..., phi_4>` matching the model coordinates, checked to be a
/// homomorphism on generators.
fn product_to_phis(pp: &ProductPresentation, phis: &Phis) -> Result<Vec<usize>> {
    let p = phis.p;
    let base = dihedral_table(p)?.model;
    if **base.group() != *pp.base.group {
        return Err(Error::GroupMismatch);
    }
    let g2 = &pp.product.group;
    let target = phis.group();
    let iota: Vec<usize> = (0..g2.order())
        .map(|x| {
            let (a, b) = pp.split(x);
            let coords = [base.coordinates(a)[0], base.coordinates(b)[0]];
            phis.model
                .element_at(&coords)
                .expect("coordinates in range")
        })
        .collect();
    for s in g2.generators() {
        let si = g2.index_of(s).expect("generator");
        for x in 0..g2.order() {
            if iota[g2.mul(x, si)] != target.mul(iota[x], iota[si]) {
                return Err(Error::Consistency(format!("coordinate map fails at {s}")));
            }
        }
    }
    Ok(iota)
}

/// Builds the Kanev correspondence of the `D_p x D_p` product presentation,
/// carries the coset `H g` to the point `P_11 . g` and compares with the grid.
pub fn verify_kanev_equals_grid(p: u32, s1: u32, s2: u32) -> Result<KanevGridReport> {
    let pp = dihedral_product(p, s1, s2)?;
    let phis = build_phis(p)?;
    let grid = grid_correspondence(p)?;
    let pres = &pp.product;
    let q = exponent(pres)?.q;
    let kanev = corr_matrix(pres, &kanev_coefficients(pres)?)?;
    let iota = product_to_phis(&pp, &phis)?;
    let space = CosetSpace::new(&pres.group, &pres.subgroup)?;
    let target = phis.group();
    let mut to_grid = Vec::with_capacity(space.len());
    for coset in &space.cosets {
        let point = |x: usize| pair_image(target.element(iota[x]), p, (1, 1));
        let pt = point(coset.rep).ok_or_else(|| Error::Consistency("pair not preserved".into()))?;
        if coset.members.iter().any(|&x| point(x) != Some(pt)) {
            return Err(Error::Consistency(format!(
                "coset {} is not one point",
                coset.rep
            )));
        }
        to_grid.push(grid_index(p, pt));
    }
    let mut seen = to_grid.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != to_grid.len() {
        return Err(Error::Consistency(
            "coset to point map is not injective".into(),
        ));
    }
    let transported = kanev.matrix.permuted(&to_grid);
    let residual = &transported - &grid.corr.matrix;
    let equal = residual.all(Zero::is_zero);
    Ok(KanevGridReport {
        equal,
        kanev_properties: matrix_properties(&transported, &q)?,
        grid_properties: matrix_properties(&grid.corr.matrix, &q)?,
        kanev: CorrMatrix {
            labels: grid.corr.labels.clone(),
            matrix: transported,
        },
        grid,
        exponent: q,
        residual: (!equal).then_some(residual),
    })
}
