use num_bigint::BigInt;
use num_traits::Zero;

use super::lattice::DihedralSquare;
use crate::characters::{
    first_difference, fixed_space_dim, perm_character, sum, u_pairs_galois, u_pairs_printed_rule,
    ClassFunction, RationalRep,
};
use crate::error::{Error, Result};
use crate::exact_algebra::integer;
use crate::permgroup::PermGroup;
use crate::pt_engine::{quotient_genus_of, total_space_genus, GeometricSignature};
use crate::Rational;

/// Genera of the curves of the dihedral showcase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genera {
    pub y: BigInt,
    /// One entry per `j = 1..(p-1)/2`.
    pub y_tilde: Vec<BigInt>,
    pub x1: BigInt,
    pub x2: BigInt,
    pub x: BigInt,
    pub z: BigInt,
}

#[derive(Clone, Debug)]
pub struct GenusTable {
    pub p: u32,
    pub s1: u32,
    pub s2: u32,
    /// Closed forms, with `s_i` in the genus of `X_i`.
    pub closed: Genera,
    /// Riemann-Hurwitz through the subgroup lattice.
    pub lattice: Genera,
    /// `s_1 (p - 1)/4 - p + 1`, the closed form for `X_1` evaluated for `X_2`.
    pub x2_with_s1: BigInt,
    pub agree: bool,
    /// `g_Z - 1 = |M| (g_Y - 1)` and `g_Y~ - 1 = p (g_Y - 1)`.
    pub etale_consistent: bool,
    /// `g_X = g_X1 + g_X2 + sum_j (g_Y~j - g_Y)`.
    pub bookkeeping: bool,
    pub disagreements: Vec<String>,
}

impl GenusTable {
    pub fn all(&self) -> bool {
        self.agree && self.etale_consistent && self.bookkeeping
    }
}

fn check_branching(s1: u32, s2: u32) -> Result<()> {
    for s in [s1, s2] {
        if s < 4 || s % 2 != 0 {
            return Err(Error::InvalidSignature(format!(
                "{s} reflection branch points; D_p needs an even number >= 4"
            )));
        }
    }
    Ok(())
}

fn closed_forms(p: u32, s1: u32, s2: u32) -> Result<(Genera, BigInt)> {
    let r = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let (p, a, b) = (p as i64, s1 as i64, s2 as i64);
    let int = |q: Rational| integer(&q, "closed-form genus");
    let y = int(r(a + b, 2) - r(1, 1))?;
    let yt = int(r(p * (a + b), 2) - r(2 * p - 1, 1))?;
    let xi = |s: i64| int(r(s * (p - 1), 4) - r(p - 1, 1));
    let x = int(r((a + b) * (p * p - p), 4) - r(p * p - 1, 1))?;
    let z = int(r(1 - 4 * p * p + p * p * (a + b), 1))?;
    let genera = Genera {
        y,
        y_tilde: vec![yt; (p as usize - 1) / 2],
        x1: xi(a)?,
        x2: xi(b)?,
        x,
        z,
    };
    Ok((genera, xi(a)?))
}

fn lattice_genera(sq: &DihedralSquare, sig: &GeometricSignature) -> Result<Genera> {
    let g = sq.group();
    let gen = |u: &PermGroup| quotient_genus_of(g, u, sig);
    Ok(Genera {
        y: gen(&sq.m)?,
        y_tilde: sq.l.iter().map(gen).collect::<Result<_>>()?,
        x1: gen(&sq.h_factors[0])?,
        x2: gen(&sq.h_factors[1])?,
        x: gen(&sq.h)?,
        z: total_space_genus(sig, g.order())?,
    })
}

fn table(sq: &DihedralSquare, s1: u32, s2: u32) -> Result<GenusTable> {
    check_branching(s1, s2)?;
    let p = sq.p();
    let (closed, x2_with_s1) = closed_forms(p, s1, s2)?;
    let lattice = lattice_genera(sq, &sq.signature(s1, s2)?)?;
    let mut disagreements = Vec::new();
    let mut cmp = |name: String, a: &BigInt, b: &BigInt| {
        if a != b {
            disagreements.push(format!("{name}: closed form {a}, lattice {b}"));
        }
    };
    cmp("Y (M)".into(), &closed.y, &lattice.y);
    for (j, (a, b)) in closed.y_tilde.iter().zip(&lattice.y_tilde).enumerate() {
        cmp(format!("Y~_{} (L_{})", j + 1, j + 1), a, b);
    }
    cmp("X_1 (H_1)".into(), &closed.x1, &lattice.x1);
    cmp("X_2 (H_2)".into(), &closed.x2, &lattice.x2);
    cmp("X (H)".into(), &closed.x, &lattice.x);
    cmp("Z".into(), &closed.z, &lattice.z);

    let one = BigInt::from(1);
    let m_order = BigInt::from(sq.m.order());
    let pb = BigInt::from(p);
    let etale_consistent = &lattice.z - &one == &m_order * (&lattice.y - &one)
        && lattice
            .y_tilde
            .iter()
            .all(|yt| yt - &one == &pb * (&lattice.y - &one));
    let prym_sum: BigInt = lattice.y_tilde.iter().map(|yt| yt - &lattice.y).sum();
    let bookkeeping = lattice.x == &lattice.x1 + &lattice.x2 + prym_sum;
    Ok(GenusTable {
        p,
        s1,
        s2,
        agree: disagreements.is_empty(),
        closed,
        lattice,
        x2_with_s1,
        etale_consistent,
        bookkeeping,
        disagreements,
    })
}

/// Genera of `Y`, `Y~_j`, `X_1`, `X_2`, `X` and `Z`, by closed forms and by
/// the subgroup lattice.
pub fn genus_table(p: u32, s1: u32, s2: u32) -> Result<GenusTable> {
    check_branching(s1, s2)?;
    table(&DihedralSquare::new(p)?, s1, s2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub name: String,
    pub multiplicity: usize,
    /// `dim B_W`.
    pub dimension: BigInt,
}

/// Isogeny decomposition of a Jacobian or Prym variety into the `B_W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveDecomposition {
    pub curve: String,
    pub summands: Vec<Summand>,
    pub total_dimension: BigInt,
    /// Genus, or genus difference for a Prym variety, from the lattice.
    pub expected_dimension: BigInt,
    /// Names of the summands with positive multiplicity are exactly the predicted ones.
    pub as_predicted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// An element where the two sides differ.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub genera: GenusTable,
    pub identities: Vec<IdentityCheck>,
    pub curves: Vec<CurveDecomposition>,
    /// `dim B_W1 = g_X1`, `dim B_W2 = g_X2`, `dim B_Uj = g_Y~j - g_Y`.
    pub component_dimensions: bool,
    /// Whether the additive pairing `V_i (x) V_{j+i-1}` reproduces the Galois orbits.
    pub additive_u_rule_agrees: bool,
}

impl DecompositionReport {
    pub fn all(&self) -> bool {
        self.genera.all()
            && self.identities.iter().all(|c| c.holds)
            && self
                .curves
                .iter()
                .all(|c| c.as_predicted && c.total_dimension == c.expected_dimension)
            && self.component_dimensions
    }
}

/// `dim B_W = m [K_V : Q] (-dim V + 1/2 sum_j s_j (dim V - dim V^{G_j}))`.
fn component_dimension(rep: &RationalRep, sig: &GeometricSignature) -> Result<BigInt> {
    let n = rep.dim as i64;
    let mut acc = Rational::from_integer(BigInt::from(-n));
    for e in &sig.entries {
        let drop = n - fixed_space_dim(rep.seed(), &e.class_rep)? as i64;
        acc += Rational::new(BigInt::from(e.s as i64 * drop), BigInt::from(2));
    }
    acc *= Rational::from_integer(BigInt::from(rep.field_degree * rep.schur_index));
    integer(&acc, &format!("dim B for {}", rep.name))
}

fn multiplicity_in(rep: &RationalRep, sub: &PermGroup, over: Option<&PermGroup>) -> Result<usize> {
    let mut fixed = fixed_space_dim(rep.seed(), sub)?;
    if let Some(n) = over {
        fixed = fixed
            .checked_sub(fixed_space_dim(rep.seed(), n)?)
            .ok_or_else(|| {
                Error::Consistency(format!("{} has more invariants upstairs", rep.name))
            })?;
    }
    if fixed % rep.schur_index != 0 {
        return Err(Error::NonIntegral {
            what: format!("multiplicity of {}", rep.name),
            value: format!("{fixed}/{}", rep.schur_index),
        });
    }
    Ok(fixed / rep.schur_index)
}

/// Checks the permutation-character identities, assembles the decompositions
/// of `JX`, `JX_i`, `JY`, `JY~_j` and `P(Y~_j/Y)`, and compares dimensions
/// with the lattice genera.
pub fn jacobian_decomposition(p: u32, s1: u32, s2: u32) -> Result<DecompositionReport> {
    check_branching(s1, s2)?;
    let sq = DihedralSquare::new(p)?;
    let genera = table(&sq, s1, s2)?;
    let sig = sq.signature(s1, s2)?;
    let model = &sq.phis.model;
    let g = model.group();
    let cond = model.conductor();
    let half = (p as usize - 1) / 2;

    let v0 = model.resolve("trivial")?;
    let v0_alt = model.resolve("alternating")?;
    let w = [
        model.resolve("tensor(W,trivial)")?,
        model.resolve("tensor(trivial,W)")?,
    ];
    let u: Vec<RationalRep> = (1..=half)
        .map(|j| model.resolve(&format!("U({j})")))
        .collect::<Result<_>>()?;

    let display = |r: &RationalRep| -> String {
        let named = [
            (&v0, "V_0".to_string()),
            (&v0_alt, "V_0'".into()),
            (&w[0], "W_1".into()),
            (&w[1], "W_2".into()),
        ];
        for (c, name) in named {
            if c.orbit.contains(r.seed()) {
                return name;
            }
        }
        for (j, uj) in u.iter().enumerate() {
            if uj.orbit.contains(r.seed()) {
                return format!("U_{}", j + 1);
            }
        }
        r.name.clone()
    };

    let mut identities = Vec::new();
    let mut identity =
        |name: String, lhs: ClassFunction, parts: Vec<ClassFunction>| -> Result<()> {
            let rhs = sum(g, cond, &parts)?;
            let diff = first_difference(&lhs, &rhs);
            identities.push(IdentityCheck {
                name,
                holds: diff.is_none(),
                counterexample: diff.map(|x| g.element(x).to_string()),
            });
            Ok(())
        };
    let rho = |sub: &PermGroup| perm_character(g, sub, cond);
    let mut parts_h = vec![v0.character(), w[0].character(), w[1].character()];
    parts_h.extend(u.iter().map(RationalRep::character));
    identity(
        "rho_H = V_0 + W_1 + W_2 + sum U_j".into(),
        rho(&sq.h)?,
        parts_h,
    )?;
    for (i, (hi, wi)) in sq.h_factors.iter().zip(&w).enumerate() {
        identity(
            format!("rho_H_{} = V_0 + W_{}", i + 1, i + 1),
            rho(hi)?,
            vec![v0.character(), wi.character()],
        )?;
    }
    let rho_m = rho(&sq.m)?;
    identity(
        "rho_M = V_0 + V_0'".into(),
        rho_m.clone(),
        vec![v0.character(), v0_alt.character()],
    )?;
    for (j, l) in sq.l.iter().enumerate() {
        identity(
            format!("rho_L_{} = rho_M + U_{}", j + 1, j + 1),
            rho(l)?,
            vec![rho_m.clone(), u[j].character()],
        )?;
    }

    let irreps: Vec<RationalRep> = model
        .rational_irreducibles()?
        .into_iter()
        .filter(|r| !r.is_trivial())
        .collect();
    let dims: Vec<BigInt> = irreps
        .iter()
        .map(|r| component_dimension(r, &sig))
        .collect::<Result<_>>()?;
    let dim_of = |r: &RationalRep| -> BigInt {
        let k = irreps
            .iter()
            .position(|x| x.orbit.contains(r.seed()))
            .expect("irreducible");
        dims[k].clone()
    };

    let lat = &genera.lattice;
    let decompose = |curve: String,
                     sub: &PermGroup,
                     over: Option<&PermGroup>,
                     expected_dimension: BigInt,
                     predicted: Vec<String>|
     -> Result<CurveDecomposition> {
        let mut summands = Vec::new();
        let mut total = BigInt::zero();
        for (r, d) in irreps.iter().zip(&dims) {
            let c = multiplicity_in(r, sub, over)?;
            if c > 0 {
                total += BigInt::from(c) * d;
                summands.push(Summand {
                    name: display(r),
                    multiplicity: c,
                    dimension: d.clone(),
                });
            }
        }
        let mut names: Vec<&str> = summands
            .iter()
            .filter(|s| s.multiplicity == 1)
            .map(|s| s.name.as_str())
            .collect();
        names.sort_unstable();
        let mut want: Vec<&str> = predicted.iter().map(String::as_str).collect();
        want.sort_unstable();
        Ok(CurveDecomposition {
            curve,
            as_predicted: names == want && names.len() == summands.len(),
            summands,
            total_dimension: total,
            expected_dimension,
        })
    };

    let mut predicted_x = vec!["W_1".to_string(), "W_2".to_string()];
    predicted_x.extend((1..=half).map(|j| format!("U_{j}")));
    let mut curves = vec![
        decompose("X".into(), &sq.h, None, lat.x.clone(), predicted_x)?,
        decompose(
            "X_1".into(),
            &sq.h_factors[0],
            None,
            lat.x1.clone(),
            vec!["W_1".into()],
        )?,
        decompose(
            "X_2".into(),
            &sq.h_factors[1],
            None,
            lat.x2.clone(),
            vec!["W_2".into()],
        )?,
        decompose("Y".into(), &sq.m, None, lat.y.clone(), vec!["V_0'".into()])?,
    ];
    for (j, l) in sq.l.iter().enumerate() {
        let uj = format!("U_{}", j + 1);
        curves.push(decompose(
            format!("Y~_{}", j + 1),
            l,
            None,
            lat.y_tilde[j].clone(),
            vec!["V_0'".into(), uj.clone()],
        )?);
        curves.push(decompose(
            format!("P(Y~_{}/Y)", j + 1),
            l,
            Some(&sq.m),
            &lat.y_tilde[j] - &lat.y,
            vec![uj],
        )?);
    }

    let component_dimensions = dim_of(&w[0]) == lat.x1
        && dim_of(&w[1]) == lat.x2
        && u.iter()
            .zip(&lat.y_tilde)
            .all(|(uj, yt)| dim_of(uj) == yt - &lat.y);
    let additive_u_rule_agrees = (1..=half as u32).all(|j| {
        let mut a = u_pairs_galois(p, j);
        let mut b = u_pairs_printed_rule(p, j);
        a.sort_unstable();
        b.sort_unstable();
        a == b
    });

    Ok(DecompositionReport {
        genera,
        identities,
        curves,
        component_dimensions,
        additive_u_rule_agrees,
    })
}
