//! Prym-Tyurin presentations: hypothesis checks, correspondence coefficients,
//! exponent, signature condition, dimension and genus formulas, Kanev
//! coefficients and correspondence matrices.

mod corr;
mod report;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{fixed_space_dim, RationalRep};
use crate::error::{Error, Result};
use crate::exact_algebra::{integer, non_negative_integer};
use crate::permgroup::{
    are_conjugate, double_coset_count, double_cosets, proper_supergroups, DoubleCosetData, Perm,
    PermGroup,
};
use crate::Rational;

pub use corr::{corr_matrix, matrix_properties, CorrMatrix, MatrixProperties};
pub use report::{analyze, PresentationReport, SCOPE_NOTE};

/// One branch type: a representative cyclic subgroup `G_j` of its class and
/// the number `s_j` of branch points of that type.
#[derive(Clone, Debug)]
pub struct SignatureEntry {
    pub class_rep: PermGroup,
    pub s: u32,
}

/// `[gamma; (C_1, s_1), ..., (C_t, s_t)]`. Entries with `s = 0` are dropped.
#[derive(Clone, Debug)]
pub struct GeometricSignature {
    pub gamma: u32,
    pub entries: Vec<SignatureEntry>,
}

impl GeometricSignature {
    pub fn new(gamma: u32, entries: Vec<(PermGroup, u32)>) -> Self {
        Self {
            gamma,
            entries: entries
                .into_iter()
                .filter(|(_, s)| *s > 0)
                .map(|(class_rep, s)| SignatureEntry { class_rep, s })
                .collect(),
        }
    }

    /// Checks the entries against `G`: nontrivial cyclic subgroups, pairwise
    /// non-conjugate.
    pub fn validate(&self, g: &PermGroup) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            let c = &e.class_rep;
            if !c.is_subgroup_of(g) {
                return Err(Error::InvalidSignature(format!(
                    "{c:?} is not a subgroup of G"
                )));
            }
            if c.order() == 1 || !c.elements().iter().any(|x| x.order() == c.order()) {
                return Err(Error::InvalidSignature(format!(
                    "{c:?} is not a nontrivial cyclic subgroup"
                )));
            }
            for other in &self.entries[..i] {
                if are_conjugate(g, c, &other.class_rep)? {
                    return Err(Error::InvalidSignature(format!(
                        "{c:?} and {:?} are conjugate",
                        other.class_rep
                    )));
                }
            }
        }
        Ok(())
    }

    fn require_genus_zero(&self) -> Result<()> {
        if self.gamma != 0 {
            return Err(Error::InvalidSignature(format!(
                "base genus {} is not 0",
                self.gamma
            )));
        }
        Ok(())
    }

    /// Total number of branch points.
    pub fn branch_points(&self) -> u64 {
        self.entries.iter().map(|e| e.s as u64).sum()
    }
}

/// The data `(G, H, {W_k}, signature)`.
#[derive(Clone)]
pub struct PTPresentation {
    pub group: Arc<PermGroup>,
    pub subgroup: PermGroup,
    pub reps: Vec<RationalRep>,
    pub signature: GeometricSignature,
    double_cosets: DoubleCosetData,
}

impl PTPresentation {
    pub fn new(
        group: Arc<PermGroup>,
        subgroup: PermGroup,
        reps: Vec<RationalRep>,
        signature: GeometricSignature,
    ) -> Result<Self> {
        if !subgroup.is_subgroup_of(&group) {
            return Err(Error::NotASubgroup(format!("{subgroup:?}")));
        }
        if reps.is_empty() {
            return Err(Error::InvalidPresentation("no representations".into()));
        }
        for (i, r) in reps.iter().enumerate() {
            if **r.seed().group() != *group {
                return Err(Error::InvalidPresentation(format!(
                    "{} is not a representation of G",
                    r.name
                )));
            }
            if r.is_trivial() {
                return Err(Error::InvalidPresentation(format!("{} is trivial", r.name)));
            }
            for other in &reps[..i] {
                if other.orbit.contains(r.seed()) {
                    return Err(Error::InvalidPresentation(format!(
                        "{} and {} are isomorphic",
                        other.name, r.name
                    )));
                }
            }
        }
        signature.validate(&group)?;
        let double_cosets = double_cosets(&group, &subgroup)?;
        Ok(Self {
            group,
            subgroup,
            reps,
            signature,
            double_cosets,
        })
    }

    pub fn double_cosets(&self) -> &DoubleCosetData {
        &self.double_cosets
    }

    /// `[G : H]`.
    pub fn index(&self) -> usize {
        self.group.order() / self.subgroup.order()
    }

    /// Same data with another signature.
    pub fn with_signature(&self, signature: GeometricSignature) -> Result<Self> {
        signature.validate(&self.group)?;
        let mut out = self.clone();
        out.signature = signature;
        Ok(out)
    }

    /// `[L : Q]`, taken from the first representation.
    pub fn field_degree(&self) -> usize {
        self.reps[0].field_degree
    }

    /// `n`, taken from the first representation.
    pub fn dim(&self) -> usize {
        self.reps[0].dim
    }
}

/// Outcome of the four-part hypothesis check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// All `dim V_k` equal.
    pub a: bool,
    /// All character fields `K_{V_k}` equal.
    pub b: bool,
    /// Every `dim V_k^H = 1`.
    pub c: bool,
    /// Every proper supergroup of `H` kills some `V_k`.
    pub d: bool,
    pub fixed_dims: Vec<usize>,
    pub witnesses: Vec<String>,
}

impl HypothesisReport {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.d
    }
}

pub fn check_hypothesis(pres: &PTPresentation) -> Result<HypothesisReport> {
    let mut witnesses = Vec::new();
    let first = &pres.reps[0];
    let mut a = true;
    let mut b = true;
    let stab0 = first.galois_stabilizer();
    for r in &pres.reps[1..] {
        if r.dim != first.dim {
            a = false;
            witnesses.push(format!(
                "(a) dim {} = {} but dim {} = {}",
                r.name, r.dim, first.name, first.dim
            ));
        }
        if r.galois_stabilizer() != stab0 {
            b = false;
            witnesses.push(format!(
                "(b) character fields of {} and {} differ",
                r.name, first.name
            ));
        }
    }
    let fixed_dims = pres
        .reps
        .iter()
        .map(|r| fixed_space_dim(r.seed(), &pres.subgroup))
        .collect::<Result<Vec<_>>>()?;
    let mut c = true;
    for (r, &d) in pres.reps.iter().zip(&fixed_dims) {
        if d != 1 {
            c = false;
            witnesses.push(format!("(c) dim {}^H = {d}", r.name));
        }
    }
    let mut d = true;
    for n in proper_supergroups(&pres.group, &pres.subgroup)? {
        let mut killed = false;
        for r in &pres.reps {
            if fixed_space_dim(r.seed(), &n)? == 0 {
                killed = true;
                break;
            }
        }
        if !killed {
            d = false;
            let gens: Vec<String> = n.generators().iter().map(Perm::to_string).collect();
            witnesses.push(format!(
                "(d) every V_k has invariants under <{}> of order {}",
                gens.join(", "),
                n.order()
            ));
        }
    }
    Ok(HypothesisReport {
        a,
        b,
        c,
        d,
        fixed_dims,
        witnesses,
    })
}

/// `sum_k sum_{h in H} tr_{K/Q}(chi_{V_k}(h x^-1))` for an arbitrary element `x`.
pub fn coefficient_at(pres: &PTPresentation, x: &Perm) -> Result<BigInt> {
    let g = &pres.group;
    let xi = g
        .index_of(x)
        .ok_or_else(|| Error::NotASubgroup(format!("{x} is not in G")))?;
    let x_inv = g.inv(xi);
    let hs = g.indices_of(&pres.subgroup)?;
    let mut total = Rational::zero();
    for r in &pres.reps {
        let chi = r.seed();
        let mut acc = Rational::zero();
        for h in hs.iter() {
            acc += chi.value(g.mul(h, x_inv)).trace_full();
        }
        total += acc / Rational::from_integer(BigInt::from(r.trace_index()));
    }
    integer(&total, "correspondence coefficient")
}

/// `b_i` for each double coset, in double-coset order (`b_1` at the identity).
pub fn coefficients(pres: &PTPresentation) -> Result<Vec<BigInt>> {
    pres.double_cosets
        .reps
        .iter()
        .map(|g1| coefficient_at(pres, g1))
        .collect()
}

/// `b = gcd{b_1 - b_i}` and `q = |G| / (b n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponent {
    pub b: BigInt,
    pub q: BigInt,
}

pub fn exponent_from(coeffs: &[BigInt], group_order: usize, n: usize) -> Result<Exponent> {
    if coeffs.len() < 2 {
        return Err(Error::DegeneratePresentation);
    }
    let b = coeffs[1..]
        .iter()
        .fold(BigInt::zero(), |acc, bi| acc.gcd(&(&coeffs[0] - bi).abs()));
    let denom = &b * BigInt::from(n);
    if denom.is_zero() {
        return Err(Error::NonIntegral {
            what: "exponent q".into(),
            value: format!("{group_order}/0"),
        });
    }
    let q = Rational::new(BigInt::from(group_order), denom);
    Ok(Exponent {
        q: non_negative_integer(&q, "exponent q")?,
        b,
    })
}

pub fn exponent(pres: &PTPresentation) -> Result<Exponent> {
    exponent_from(&coefficients(pres)?, pres.group.order(), pres.dim())
}

/// Per-entry brackets of the signature condition and their weighted total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureCondition {
    pub holds: bool,
    pub brackets: Vec<BigInt>,
    pub total: BigInt,
}

/// `q [L:Q] sum_k (dim V_k - dim V_k^{G_j}) - ([G:H] - |H\G/G_j|)` for each
/// entry, and the sum weighted by `s_j`.
pub fn signature_condition(pres: &PTPresentation) -> Result<SignatureCondition> {
    pres.signature.require_genus_zero()?;
    let q = exponent(pres)?.q;
    let l = BigInt::from(pres.field_degree());
    let index = pres.index() as i64;
    let mut brackets = Vec::new();
    let mut total = BigInt::zero();
    for e in &pres.signature.entries {
        let mut drop = 0i64;
        for r in &pres.reps {
            drop += r.dim as i64 - fixed_space_dim(r.seed(), &e.class_rep)? as i64;
        }
        let dc = double_coset_count(&pres.group, &pres.subgroup, &e.class_rep)? as i64;
        let bracket = &q * &l * BigInt::from(drop) - BigInt::from(index - dc);
        total += &bracket * BigInt::from(e.s);
        brackets.push(bracket);
    }
    Ok(SignatureCondition {
        holds: total.is_zero(),
        brackets,
        total,
    })
}

/// `[L:Q] sum_i [ -n + 1/2 sum_j s_j (dim V_i - dim V_i^{G_j}) ]`.
pub fn pt_dimension(pres: &PTPresentation) -> Result<BigInt> {
    pres.signature.require_genus_zero()?;
    let mut acc = Rational::zero();
    for r in &pres.reps {
        let mut inner = Rational::from_integer(-BigInt::from(r.dim));
        for e in &pres.signature.entries {
            let drop = r.dim as i64 - fixed_space_dim(r.seed(), &e.class_rep)? as i64;
            inner += Rational::new(BigInt::from(e.s as i64 * drop), BigInt::from(2));
        }
        acc += inner;
    }
    acc *= Rational::from_integer(BigInt::from(pres.field_degree()));
    non_negative_integer(&acc, "dim P")
}

/// Genus of `Z/U` for a signature of `G`:
/// `1 - [G:U] + 1/2 sum_j s_j ([G:U] - |U\G/G_j|)`.
pub fn quotient_genus_of(g: &PermGroup, u: &PermGroup, sig: &GeometricSignature) -> Result<BigInt> {
    sig.require_genus_zero()?;
    let index = (g.order() / u.order()) as i64;
    let mut acc = Rational::from_integer(BigInt::from(1 - index));
    for e in &sig.entries {
        let dc = double_coset_count(g, u, &e.class_rep)? as i64;
        acc += Rational::new(BigInt::from(e.s as i64 * (index - dc)), BigInt::from(2));
    }
    non_negative_integer(&acc, "quotient genus")
}

/// Genus of `X = Z/H`.
pub fn quotient_genus(pres: &PTPresentation) -> Result<BigInt> {
    quotient_genus_of(&pres.group, &pres.subgroup, &pres.signature)
}

/// Genus of `Z` from `2 g_Z - 2 = -2|G| + sum_j s_j |G| (1 - 1/|G_j|)`.
pub fn total_space_genus(sig: &GeometricSignature, group_order: usize) -> Result<BigInt> {
    sig.require_genus_zero()?;
    let n = group_order as i64;
    let mut two_g_minus_two = Rational::from_integer(BigInt::from(-2 * n));
    for e in &sig.entries {
        let stab = e.class_rep.order() as i64;
        two_g_minus_two += Rational::new(
            BigInt::from(e.s as i64 * n * (stab - 1)),
            BigInt::from(stab),
        );
    }
    let g = (two_g_minus_two + Rational::from_integer(BigInt::from(2)))
        / Rational::from_integer(BigInt::from(2));
    non_negative_integer(&g, "genus of Z")
}

/// `(b_1 - b_i)/b - 1` for every double coset; the identity entry is 0.
pub fn kanev_from(coeffs: &[BigInt], b: &BigInt) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::zero()];
    for (i, bi) in coeffs.iter().enumerate().skip(1) {
        let num = &coeffs[0] - bi;
        let (quot, rem): (BigInt, BigInt) = num.div_rem(b);
        if !rem.is_zero() {
            return Err(Error::NonIntegral {
                what: format!("Kanev coefficient {}", i + 1),
                value: format!("{num}/{b} - 1"),
            });
        }
        let k = quot - BigInt::from(1);
        if k.is_negative() {
            return Err(Error::KanevEffectivity {
                index: i + 1,
                value: k.to_string(),
            });
        }
        out.push(k);
    }
    Ok(out)
}

pub fn kanev_coefficients(pres: &PTPresentation) -> Result<Vec<BigInt>> {
    let coeffs = coefficients(pres)?;
    let e = exponent_from(&coeffs, pres.group.order(), pres.dim())?;
    kanev_from(&coeffs, &e.b)
}

#[cfg(test)]
mod tests;
