use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::characters::{
    dihedral_table, rational_rep_of, ClassFunction, Factor, GroupModel, RationalRep,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::permgroup::{direct_product, CosetSpace, Perm, PermGroup};
use crate::pt_engine::{
    coefficients, corr_matrix, exponent, pt_dimension, quotient_genus, signature_condition,
    CorrMatrix, GeometricSignature, PTPresentation,
};

/// The fiber product of two presentations sharing `(G, H, {W_k})`: the group
/// `G x G` on the disjoint union of the point sets, `H x H`, the
/// representations `W_k (x) V_0` and `V_0 (x) W_k`, and the two signatures
/// embedded in the first and second factor.
#[derive(Clone)]
pub struct ProductPresentation {
    /// Base data with the left signature.
    pub base: PTPresentation,
    pub left_signature: GeometricSignature,
    pub right_signature: GeometricSignature,
    pub product: PTPresentation,
    /// The two covers of the line are assumed to have disjoint branch loci.
    /// This cannot be checked at the level of groups and signatures.
    pub assumes_disjoint_branch_loci: bool,
}

impl ProductPresentation {
    /// Degree of the base permutation group.
    pub fn base_degree(&self) -> usize {
        self.base.group.degree()
    }

    /// Base element indices of the two coordinates of a product element.
    pub fn split(&self, x: usize) -> (usize, usize) {
        let n = self.base_degree();
        let g = self.product.group.element(x);
        let left = g.restrict(0, n).expect("left factor is invariant");
        let right = g.restrict(n, n).expect("right factor is invariant");
        let base = &self.base.group;
        (
            base.index_of(&left).expect("left coordinate in G"),
            base.index_of(&right).expect("right coordinate in G"),
        )
    }

    /// The base presentation with the left or right signature.
    pub fn factor(&self, right: bool) -> Result<PTPresentation> {
        let sig = if right {
            &self.right_signature
        } else {
            &self.left_signature
        };
        self.base.with_signature(sig.clone())
    }
}

fn same_base(a: &PTPresentation, b: &PTPresentation) -> bool {
    *a.group == *b.group
        && a.subgroup == b.subgroup
        && a.reps.len() == b.reps.len()
        && a.reps
            .iter()
            .zip(&b.reps)
            .all(|(x, y)| x.seed() == y.seed())
}

fn embed(x: &Perm, n: usize, right: bool) -> Perm {
    let id = Perm::identity(n);
    if right {
        id.juxtapose(x)
    } else {
        x.juxtapose(&id)
    }
}

fn lift_rep(
    rep: &RationalRep,
    g2: &Arc<PermGroup>,
    base: &PermGroup,
    right: bool,
) -> Result<RationalRep> {
    let n = base.degree();
    let seed = rep.seed();
    let chi = ClassFunction::from_fn(g2.clone(), seed.conductor(), |x| {
        let e = g2.element(x);
        let part = if right {
            e.restrict(n, n)
        } else {
            e.restrict(0, n)
        };
        let i = base
            .index_of(&part.expect("factor is invariant"))
            .expect("coordinate in G");
        seed.value(i).clone()
    })?;
    let name = if right {
        format!("tensor(trivial,{})", rep.name)
    } else {
        format!("tensor({},trivial)", rep.name)
    };
    Ok(rational_rep_of(&chi, &name)?.with_schur_index(rep.schur_index))
}

/// Builds the product presentation on `G x G`.
pub fn fiber_product(
    pres1: &PTPresentation,
    pres2: &PTPresentation,
) -> Result<ProductPresentation> {
    if !same_base(pres1, pres2) {
        return Err(Error::InvalidPresentation(
            "the two presentations do not share G, H and the representations".into(),
        ));
    }
    for (side, pres) in [("left", pres1), ("right", pres2)] {
        if pres.signature.gamma != 0 {
            return Err(Error::InvalidSignature(format!(
                "{side} signature has positive genus"
            )));
        }
        if !signature_condition(pres)?.holds {
            return Err(Error::InvalidPresentation(format!(
                "{side} presentation fails the signature condition"
            )));
        }
    }
    let base = &pres1.group;
    let n = base.degree();
    let g2 = Arc::new(direct_product(base, base));
    let mut h_gens: Vec<Perm> = Vec::new();
    for right in [false, true] {
        h_gens.extend(
            pres1
                .subgroup
                .generators()
                .iter()
                .map(|h| embed(h, n, right)),
        );
    }
    let h2 = g2.subgroup(&h_gens)?;
    let mut reps = Vec::new();
    for right in [false, true] {
        for r in &pres1.reps {
            reps.push(lift_rep(r, &g2, base, right)?);
        }
    }
    let mut entries = Vec::new();
    for (pres, right) in [(pres1, false), (pres2, true)] {
        for e in &pres.signature.entries {
            let gens: Vec<Perm> = e
                .class_rep
                .generators()
                .iter()
                .map(|c| embed(c, n, right))
                .collect();
            entries.push((g2.subgroup(&gens)?, e.s));
        }
    }
    let product = PTPresentation::new(g2, h2, reps, GeometricSignature::new(0, entries))?;
    Ok(ProductPresentation {
        base: pres1.clone(),
        left_signature: pres1.signature.clone(),
        right_signature: pres2.signature.clone(),
        product,
        assumes_disjoint_branch_loci: true,
    })
}

/// `G = D_p` on `p` points, `H = <tau>`, the rational representation `W` of
/// degree `p - 1` and `s` branch points of reflection type.
pub fn dihedral_presentation(p: u32, s: u32) -> Result<PTPresentation> {
    let t = dihedral_table(p)?;
    let g = t.model.group().clone();
    let h = g.subgroup(std::slice::from_ref(&t.tau))?;
    let sig = GeometricSignature::new(0, vec![(h.clone(), s)]);
    PTPresentation::new(g, h, vec![t.w], sig)
}

/// `G = Z_2` acting on two points, `H = 1`, the sign representation and
/// `s` branch points.
pub fn cyclic2_presentation(s: u32) -> Result<PTPresentation> {
    let tau = Perm::parse("(1 2)", None)?;
    let model = GroupModel::new(2, vec![Factor::Cyclic2 { tau }])?;
    let g = model.group().clone();
    let h = PermGroup::trivial(2);
    let sig = GeometricSignature::new(0, vec![((*g).clone(), s)]);
    PTPresentation::new(g, h, vec![model.resolve("alternating")?], sig)
}

/// Product of two dihedral presentations with `s1` and `s2` branch points.
pub fn dihedral_product(p: u32, s1: u32, s2: u32) -> Result<ProductPresentation> {
    fiber_product(
        &dihedral_presentation(p, s1)?,
        &dihedral_presentation(p, s2)?,
    )
}

/// Product of two hyperelliptic covers of genus `g1` and `g2`.
pub fn hyperelliptic_product(g1: u32, g2: u32) -> Result<ProductPresentation> {
    fiber_product(
        &cyclic2_presentation(2 * g1 + 2)?,
        &cyclic2_presentation(2 * g2 + 2)?,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductExponentReport {
    pub b_base: BigInt,
    pub q_base: BigInt,
    pub b_product: BigInt,
    pub q_product: BigInt,
    pub index: usize,
    pub subgroup_order: usize,
    pub scaling_ok: bool,
}

/// Recomputes the exponent on the product and compares it with
/// `q' = [G:H] q` and `b' = |H| b`.
pub fn verify_product_exponent(pp: &ProductPresentation) -> Result<ProductExponentReport> {
    let base = exponent(&pp.base)?;
    let prod = exponent(&pp.product)?;
    let index = pp.base.index();
    let subgroup_order = pp.base.subgroup.order();
    let scaling_ok =
        prod.q == &base.q * BigInt::from(index) && prod.b == &base.b * BigInt::from(subgroup_order);
    Ok(ProductExponentReport {
        b_base: base.b,
        q_base: base.q,
        b_product: prod.b,
        q_product: prod.q,
        index,
        subgroup_order,
        scaling_ok,
    })
}

#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub holds: bool,
    /// `b_ik = |H| (a_i + a_k)` on every product double coset.
    pub coefficient_identity: bool,
    pub base_coefficients: Vec<BigInt>,
    pub product_coefficients: Vec<BigInt>,
    pub product: CorrMatrix,
    /// `|H| (q_1^* D_1 + q_2^* D_2)` in the coset order of `product`.
    pub pullback: Matrix<BigInt>,
    /// `D - |H| (q_1^* D_1 + q_2^* D_2)` when nonzero.
    pub residual: Option<Matrix<BigInt>>,
}

/// Compares the product correspondence with the pullback of the two factor
/// correspondences.
///
/// The pullback of `D_i` along `q_i` sends a point `(x_1, x_2)` of the fiber
/// to every point whose `i`-th coordinate lies in `D_i(x_i)`, whatever its
/// other coordinate: `(q_1^* D_1)[(x', y')][(x, y)] = D_1[x'][x]`.
pub fn verify_pullback(pp: &ProductPresentation) -> Result<PullbackReport> {
    let a = coefficients(&pp.base)?;
    let d1 = corr_matrix(&pp.factor(false)?, &a)?;
    let d2 = corr_matrix(&pp.factor(true)?, &a)?;
    let b = coefficients(&pp.product)?;
    let d = corr_matrix(&pp.product, &b)?;
    let g2 = &pp.product.group;
    let base = &pp.base.group;
    let h_order = BigInt::from(pp.base.subgroup.order());

    let base_dc = pp.base.double_cosets();
    let prod_dc = pp.product.double_cosets();
    let coefficient_identity = prod_dc.reps.iter().zip(&b).all(|(r, bi)| {
        let (x, y) = pp.split(g2.index_of(r).expect("member"));
        let expected = &h_order * (&a[base_dc.double_coset_of(x)] + &a[base_dc.double_coset_of(y)]);
        *bi == expected
    });

    let space = CosetSpace::new(g2, &pp.product.subgroup)?;
    let base_space = CosetSpace::new(base, &pp.base.subgroup)?;
    let pairs: Vec<(usize, usize)> = space
        .cosets
        .iter()
        .map(|c| {
            let (x, y) = pp.split(c.rep);
            (base_space.coset_of(x), base_space.coset_of(y))
        })
        .collect();
    let n = pairs.len();
    let pullback = Matrix::from_fn(n, n, |r, c| {
        let ((x1, y1), (x0, y0)) = (pairs[r], pairs[c]);
        &h_order * (d1.matrix.get(x1, x0) + d2.matrix.get(y1, y0))
    });
    let residual = &d.matrix - &pullback;
    let holds = residual.all(Zero::is_zero);
    Ok(PullbackReport {
        holds,
        coefficient_identity,
        base_coefficients: a,
        product_coefficients: b,
        product: d,
        pullback,
        residual: (!holds).then_some(residual),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityReport {
    pub product_dim: BigInt,
    pub left_dim: BigInt,
    pub right_dim: BigInt,
    /// Genera of the two base quotients `Z_i / H`.
    pub left_genus: BigInt,
    pub right_genus: BigInt,
    pub holds: bool,
}

/// `dim P = dim P_1 + dim P_2`, each side from the dimension formula.
pub fn verify_dimension_additivity(pp: &ProductPresentation) -> Result<AdditivityReport> {
    let left = pp.factor(false)?;
    let right = pp.factor(true)?;
    let product_dim = pt_dimension(&pp.product)?;
    let left_dim = pt_dimension(&left)?;
    let right_dim = pt_dimension(&right)?;
    let holds = product_dim == &left_dim + &right_dim;
    Ok(AdditivityReport {
        product_dim,
        left_dim,
        right_dim,
        left_genus: quotient_genus(&left)?,
        right_genus: quotient_genus(&right)?,
        holds,
    })
}
