//! Class functions with cyclotomic values and the character operations built
//! on them: inner products, permutation characters, fixed-space dimensions,
//! outer tensor products and Galois orbits.

mod model;
mod rational;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_algebra::non_negative_integer;
use crate::permgroup::{CosetSpace, PermGroup};
use crate::{Cyclotomic, Rational};

pub use model::{
    dihedral_generators, dihedral_table, DihedralTable, Factor, FactorChar, GroupModel,
};
pub use rational::{rational_rep_of, u_pairs_galois, u_pairs_printed_rule, RationalRep};

/// A function on a group constant on conjugacy classes, with values in
/// `Q(zeta_p)` for a single conductor `p`. Values are stored per class, in
/// the group's class order.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<PermGroup>,
    conductor: u32,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    /// From one value per element (in element order); constancy on classes is verified.
    pub fn from_element_values(
        group: Arc<PermGroup>,
        conductor: u32,
        values: Vec<Cyclotomic>,
    ) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DegreeMismatch {
                expected: group.order(),
                got: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.conductor() != conductor) {
            return Err(Error::ConductorMismatch(conductor, v.conductor()));
        }
        let (classes, _) = group.conjugacy_classes();
        let mut per_class = Vec::with_capacity(classes.len());
        for class in classes {
            let v = &values[class[0]];
            if let Some(&bad) = class.iter().find(|&&x| values[x] != *v) {
                return Err(Error::NotAClassFunction(format!(
                    "value {} at {} differs from {} at {}",
                    values[bad],
                    group.element(bad),
                    v,
                    group.element(class[0])
                )));
            }
            per_class.push(v.clone());
        }
        Ok(Self {
            group,
            conductor,
            values: per_class,
        })
    }

    /// Evaluates `f` on every element and verifies constancy on classes.
    pub fn from_fn(
        group: Arc<PermGroup>,
        conductor: u32,
        f: impl Fn(usize) -> Cyclotomic,
    ) -> Result<Self> {
        let values = (0..group.order()).map(f).collect();
        Self::from_element_values(group, conductor, values)
    }

    /// From integer values per element.
    pub fn from_integers(group: Arc<PermGroup>, conductor: u32, values: &[i64]) -> Result<Self> {
        let vals = values.iter().map(|&v| int(conductor, v)).collect();
        Self::from_element_values(group, conductor, vals)
    }

    pub fn trivial(group: Arc<PermGroup>, conductor: u32) -> Self {
        let n = group.num_classes();
        Self {
            group,
            conductor,
            values: vec![int(conductor, 1); n],
        }
    }

    pub fn zero(group: Arc<PermGroup>, conductor: u32) -> Self {
        let n = group.num_classes();
        Self {
            group,
            conductor,
            values: vec![int(conductor, 0); n],
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Value at element index `x`.
    pub fn value(&self, x: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(x)]
    }

    /// Values per conjugacy class.
    pub fn class_values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value at the identity, which must be a non-negative integer for a character.
    pub fn degree(&self) -> Result<usize> {
        let v = self.value(0);
        let q = v
            .as_scalar()
            .ok_or_else(|| Error::NotRational(v.to_string()))?;
        let n = non_negative_integer(&q, "character degree")?;
        usize::try_from(n).map_err(|_| Error::Unsupported("character degree too large".into()))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            group: self.group.clone(),
            conductor: self.conductor,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            group: self.group.clone(),
            conductor: self.conductor,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = Rational::from_integer(c.into());
        Self {
            group: self.group.clone(),
            conductor: self.conductor,
            values: self.values.iter().map(|v| v.scale(&c)).collect(),
        }
    }

    /// Values under `zeta -> zeta^k`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        Ok(Self {
            group: self.group.clone(),
            conductor: self.conductor,
            values: self
                .values
                .iter()
                .map(|v| v.galois(k))
                .collect::<Result<_>>()?,
        })
    }

    /// Units `k` modulo the conductor fixing every value; it determines the
    /// character field.
    pub fn galois_stabilizer(&self) -> Vec<u32> {
        (1..self.conductor)
            .filter(|&k| {
                self.values
                    .iter()
                    .all(|v| v.galois(k as i64).expect("unit") == *v)
            })
            .collect()
    }

    /// Whether every value is rational.
    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.as_scalar().is_some())
    }

    /// Rational values per element, if every value is rational.
    pub fn rational_values(&self) -> Option<Vec<Rational>> {
        (0..self.group.order())
            .map(|x| self.value(x).as_scalar())
            .collect()
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group)
            && self.conductor == other.conductor
            && self.values == other.values
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "ClassFunction[{}]", vals.join(", "))
    }
}

fn same_group(a: &Arc<PermGroup>, b: &Arc<PermGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn int(p: u32, n: i64) -> Cyclotomic {
    Cyclotomic::from_i64(p as u64, n).expect("conductor validated")
}

fn rational_of(v: &Cyclotomic) -> Result<Rational> {
    v.as_scalar()
        .ok_or_else(|| Error::NotRational(v.to_string()))
}

/// `(1/|G|) sum_g a(g) b(g^-1)`, summed over every element.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Rational> {
    a.check_compatible(b)?;
    let g = &a.group;
    let mut acc = int(a.conductor, 0);
    for x in 0..g.order() {
        acc = acc + a.value(x) * b.value(g.inv(x));
    }
    let total = rational_of(&acc)?;
    Ok(total / Rational::from_integer(BigInt::from(g.order())))
}

/// The same inner product weighted by class sizes.
pub fn inner_product_by_classes(a: &ClassFunction, b: &ClassFunction) -> Result<Rational> {
    a.check_compatible(b)?;
    let g = &a.group;
    let (classes, class_of) = g.conjugacy_classes();
    let mut acc = int(a.conductor, 0);
    for (c, members) in classes.iter().enumerate() {
        let inv_class = class_of[g.inv(members[0])];
        let term = &a.values[c] * &b.values[inv_class];
        acc = acc + term.scale(&Rational::from_integer(BigInt::from(members.len())));
    }
    let total = rational_of(&acc)?;
    Ok(total / Rational::from_integer(BigInt::from(g.order())))
}

/// `dim V^H = (1/|H|) sum_{h in H} chi(h)`, required to be a non-negative integer.
pub fn fixed_space_dim(chi: &ClassFunction, h: &PermGroup) -> Result<usize> {
    let g = &chi.group;
    let hs = g.indices_of(h)?;
    let mut acc = int(chi.conductor, 0);
    for x in hs.iter() {
        acc = acc + chi.value(x).clone();
    }
    let q = rational_of(&acc)? / Rational::from_integer(BigInt::from(h.order()));
    let n = non_negative_integer(&q, "dim V^H")?;
    usize::try_from(n).map_err(|_| Error::Unsupported("dimension too large".into()))
}

/// The permutation character `rho_H`: the number of right cosets of `H`
/// fixed by right multiplication.
pub fn perm_character(g: &Arc<PermGroup>, h: &PermGroup, conductor: u32) -> Result<ClassFunction> {
    let space = CosetSpace::new(g, h)?;
    let vals: Vec<i64> = (0..g.order())
        .map(|x| {
            (0..space.len())
                .filter(|&c| space.act(g, c, x) == c)
                .count() as i64
        })
        .collect();
    ClassFunction::from_integers(g.clone(), conductor, &vals)
}

/// Outer tensor product on `product`, which must be the disjoint-union direct
/// product of the groups of `a` and `b` (first factor on the low points).
pub fn tensor_on(
    product: &Arc<PermGroup>,
    a: &ClassFunction,
    b: &ClassFunction,
) -> Result<ClassFunction> {
    if a.conductor != b.conductor {
        return Err(Error::ConductorMismatch(a.conductor, b.conductor));
    }
    let (ga, gb) = (&a.group, &b.group);
    let (na, nb) = (ga.degree(), gb.degree());
    if product.degree() != na + nb || product.order() != ga.order() * gb.order() {
        return Err(Error::GroupMismatch);
    }
    let mut vals = Vec::with_capacity(product.order());
    for x in product.elements() {
        let (xa, xb) = match (x.restrict(0, na), x.restrict(na, nb)) {
            (Some(xa), Some(xb)) => (xa, xb),
            _ => return Err(Error::GroupMismatch),
        };
        let (ia, ib) = match (ga.index_of(&xa), gb.index_of(&xb)) {
            (Some(ia), Some(ib)) => (ia, ib),
            _ => return Err(Error::GroupMismatch),
        };
        vals.push(a.value(ia) * b.value(ib));
    }
    ClassFunction::from_element_values(product.clone(), a.conductor, vals)
}

/// Outer tensor product, building `G1 x G2` on the disjoint union of points.
pub fn tensor(a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
    let product = Arc::new(crate::permgroup::direct_product(&a.group, &b.group));
    tensor_on(&product, a, b)
}

/// Whether `<chi, chi> = 1`.
pub fn is_irreducible(chi: &ClassFunction) -> Result<bool> {
    Ok(inner_product(chi, chi)?.is_one())
}

/// Multiplicity of `chi` in `psi`, required to be a non-negative integer.
pub fn multiplicity(psi: &ClassFunction, chi: &ClassFunction) -> Result<usize> {
    let q = inner_product(psi, chi)?;
    let n = non_negative_integer(&q, "multiplicity")?;
    usize::try_from(n).map_err(|_| Error::Unsupported("multiplicity too large".into()))
}

/// First element where two class functions differ, for diagnostics.
pub fn first_difference(a: &ClassFunction, b: &ClassFunction) -> Option<usize> {
    if a.check_compatible(b).is_err() {
        return Some(0);
    }
    (0..a.group.order()).find(|&x| a.value(x) != b.value(x))
}

/// Sum of a list of class functions on one group.
pub fn sum(
    group: &Arc<PermGroup>,
    conductor: u32,
    parts: &[ClassFunction],
) -> Result<ClassFunction> {
    parts
        .iter()
        .try_fold(ClassFunction::zero(group.clone(), conductor), |acc, c| {
            acc.try_add(c)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Perm;

    fn s3() -> Arc<PermGroup> {
        Arc::new(
            PermGroup::generate(
                3,
                &[
                    Perm::parse("(1 2 3)", None).unwrap(),
                    Perm::parse("(1 2)", Some(3)).unwrap(),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn constancy_is_enforced() {
        let g = s3();
        let vals: Vec<i64> = (0..6).map(|i| i as i64).collect();
        assert!(matches!(
            ClassFunction::from_integers(g.clone(), 3, &vals),
            Err(Error::NotAClassFunction(_))
        ));
        let sign: Vec<i64> = g
            .elements()
            .iter()
            .map(|x| if x.cycle_type() == vec![2] { -1 } else { 1 })
            .collect();
        let chi = ClassFunction::from_integers(g.clone(), 3, &sign).unwrap();
        assert!(is_irreducible(&chi).unwrap());
        assert_eq!(chi.degree().unwrap(), 1);
    }

    #[test]
    fn permutation_characters() {
        let g = s3();
        let triv = PermGroup::trivial(3);
        let reg = perm_character(&g, &triv, 3).unwrap();
        assert_eq!(reg.degree().unwrap(), 6);
        assert_eq!(
            inner_product(&reg, &reg).unwrap(),
            Rational::from_integer(6.into())
        );
        let whole = perm_character(&g, &g, 3).unwrap();
        assert_eq!(whole, ClassFunction::trivial(g.clone(), 3));
        let h = g
            .subgroup(&[Perm::parse("(1 2)", Some(3)).unwrap()])
            .unwrap();
        let rho = perm_character(&g, &h, 3).unwrap();
        let t = ClassFunction::trivial(g.clone(), 3);
        assert_eq!(multiplicity(&rho, &t).unwrap(), 1);
        assert_eq!(fixed_space_dim(&rho, &h).unwrap(), 2);
        assert_eq!(
            inner_product(&rho, &rho).unwrap(),
            inner_product_by_classes(&rho, &rho).unwrap()
        );
    }

    #[test]
    fn tensor_of_trivials() {
        let g = s3();
        let t = ClassFunction::trivial(g.clone(), 3);
        let tt = tensor(&t, &t).unwrap();
        assert_eq!(tt.group().order(), 36);
        assert!(tt.is_rational());
        assert_eq!(tt, ClassFunction::trivial(tt.group().clone(), 3));
    }
}
