use std::sync::Arc;

use super::{int, rational_rep_of, ClassFunction, RationalRep};
use crate::error::{Error, Result};
use crate::exact_algebra::check_conductor;
use crate::permgroup::{Perm, PermGroup, DEFAULT_ORDER_CAP};
use crate::Cyclotomic;

/// One direct factor of a [`GroupModel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `D_p = <sigma, tau>` with `sigma^p = tau^2 = 1` and `tau sigma tau = sigma^-1`.
    Dihedral { p: u32, sigma: Perm, tau: Perm },
    /// `Z_2 = <tau>`.
    Cyclic2 { tau: Perm },
}

impl Factor {
    fn tau(&self) -> &Perm {
        match self {
            Factor::Dihedral { tau, .. } | Factor::Cyclic2 { tau } => tau,
        }
    }

    fn rotation_order(&self) -> u32 {
        match self {
            Factor::Dihedral { p, .. } => *p,
            Factor::Cyclic2 { .. } => 1,
        }
    }

    fn generators(&self) -> Vec<Perm> {
        match self {
            Factor::Dihedral { sigma, tau, .. } => vec![sigma.clone(), tau.clone()],
            Factor::Cyclic2 { tau } => vec![tau.clone()],
        }
    }

    fn validate(&self) -> Result<()> {
        let tau = self.tau();
        if tau.order() != 2 {
            return Err(Error::InvalidPresentation(format!(
                "{tau} is not an involution"
            )));
        }
        if let Factor::Dihedral { p, sigma, .. } = self {
            check_conductor(*p as u64)?;
            if sigma.order() != *p as usize {
                return Err(Error::InvalidPresentation(format!(
                    "{sigma} does not have order {p}"
                )));
            }
            if sigma.conjugate_by(tau) != sigma.inverse() {
                return Err(Error::InvalidPresentation(format!(
                    "{tau} does not invert {sigma}"
                )));
            }
        }
        Ok(())
    }
}

/// An irreducible character of one factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorChar {
    Trivial,
    /// The sign character, `-1` on reflections.
    Alternating,
    /// The two-dimensional `V_j` of a dihedral factor.
    V(u32),
}

impl FactorChar {
    fn name(&self) -> String {
        match self {
            FactorChar::Trivial => "trivial".into(),
            FactorChar::Alternating => "alternating".into(),
            FactorChar::V(j) => format!("V({j})"),
        }
    }

    /// Value at `sigma^h tau^e`.
    fn value(&self, conductor: u32, e: u8, h: u32) -> Cyclotomic {
        match self {
            FactorChar::Trivial => int(conductor, 1),
            FactorChar::Alternating => int(conductor, if e == 0 { 1 } else { -1 }),
            FactorChar::V(j) => {
                if e == 1 {
                    int(conductor, 0)
                } else {
                    Cyclotomic::two_cos(conductor, *j as i64 * h as i64)
                }
            }
        }
    }
}

/// A finite group realized as an internal direct product of dihedral and
/// order-two factors, with every element written in coordinates
/// `prod_f sigma_f^h tau_f^e`. Irreducible characters are products of the
/// factor characters.
#[derive(Clone)]
pub struct GroupModel {
    group: Arc<PermGroup>,
    factors: Vec<Factor>,
    conductor: u32,
    /// Per element, per factor: `(e, h)`.
    coords: Vec<Vec<(u8, u32)>>,
}

impl GroupModel {
    pub fn new(degree: usize, factors: Vec<Factor>) -> Result<Self> {
        Self::with_cap(degree, factors, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(degree: usize, factors: Vec<Factor>, cap: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidPresentation("no factors".into()));
        }
        let mut conductor = None;
        for f in &factors {
            f.validate()?;
            if let Factor::Dihedral { p, .. } = f {
                match conductor {
                    None => conductor = Some(*p),
                    Some(q) if q != *p => {
                        return Err(Error::Unsupported(format!(
                            "dihedral factors of different primes {q} and {p}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        let conductor = conductor.unwrap_or(3);
        let gens: Vec<Perm> = factors.iter().flat_map(Factor::generators).collect();
        for (i, a) in factors.iter().enumerate() {
            for b in &factors[i + 1..] {
                for x in a.generators() {
                    for y in b.generators() {
                        if x.degree() != y.degree() || x.then(&y) != y.then(&x) {
                            return Err(Error::InvalidPresentation(format!(
                                "factor generators {x} and {y} do not commute"
                            )));
                        }
                    }
                }
            }
        }
        let group = PermGroup::generate_with_cap(degree, &gens, cap)?;
        let expected: usize = factors
            .iter()
            .map(|f| 2 * f.rotation_order() as usize)
            .product();
        if group.order() != expected {
            return Err(Error::InvalidPresentation(format!(
                "factors generate a group of order {}, not the direct product of order {expected}",
                group.order()
            )));
        }
        let mut coords: Vec<Option<Vec<(u8, u32)>>> = vec![None; group.order()];
        let mut tuple = vec![(0u8, 0u32); factors.len()];
        Self::fill(
            &factors,
            &group,
            0,
            Perm::identity(degree),
            &mut tuple,
            &mut coords,
        )?;
        let coords = coords
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidPresentation("factor coordinates miss elements".into()))?;
        Ok(Self {
            group: Arc::new(group),
            factors,
            conductor,
            coords,
        })
    }

    fn fill(
        factors: &[Factor],
        group: &PermGroup,
        f: usize,
        acc: Perm,
        tuple: &mut Vec<(u8, u32)>,
        coords: &mut [Option<Vec<(u8, u32)>>],
    ) -> Result<()> {
        if f == factors.len() {
            let i = group.index_of(&acc).expect("product of generators");
            if coords[i].replace(tuple.clone()).is_some() {
                return Err(Error::InvalidPresentation(
                    "factor coordinates are not unique".into(),
                ));
            }
            return Ok(());
        }
        let factor = &factors[f];
        let sigma = match factor {
            Factor::Dihedral { sigma, .. } => sigma.clone(),
            Factor::Cyclic2 { tau } => Perm::identity(tau.degree()),
        };
        let mut rot = Perm::identity(acc.degree());
        for h in 0..factor.rotation_order() {
            for e in 0..2u8 {
                let x = if e == 0 {
                    rot.clone()
                } else {
                    rot.then(factor.tau())
                };
                tuple[f] = (e, h);
                Self::fill(factors, group, f + 1, acc.then(&x), tuple, coords)?;
            }
            rot = rot.then(&sigma);
        }
        Ok(())
    }

    /// `self x other` on the disjoint union of the point sets.
    pub fn product(&self, other: &GroupModel) -> Result<GroupModel> {
        let (n1, n2) = (self.group.degree(), other.group.degree());
        let id1 = Perm::identity(n1);
        let id2 = Perm::identity(n2);
        let lift = |f: &Factor, left: bool| {
            let l = |x: &Perm| {
                if left {
                    x.juxtapose(&id2)
                } else {
                    id1.juxtapose(x)
                }
            };
            match f {
                Factor::Dihedral { p, sigma, tau } => Factor::Dihedral {
                    p: *p,
                    sigma: l(sigma),
                    tau: l(tau),
                },
                Factor::Cyclic2 { tau } => Factor::Cyclic2 { tau: l(tau) },
            }
        };
        let mut factors: Vec<Factor> = self.factors.iter().map(|f| lift(f, true)).collect();
        factors.extend(other.factors.iter().map(|f| lift(f, false)));
        GroupModel::new(n1 + n2, factors)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `(e, h)` per factor for element index `x`.
    pub fn coordinates(&self, x: usize) -> &[(u8, u32)] {
        &self.coords[x]
    }

    /// Element index with the given coordinates.
    pub fn element_at(&self, coords: &[(u8, u32)]) -> Option<usize> {
        self.coords.iter().position(|c| c == coords)
    }

    /// Rotation and reflection generators of factor `f`.
    pub fn sigma(&self, f: usize) -> Option<&Perm> {
        match &self.factors[f] {
            Factor::Dihedral { sigma, .. } => Some(sigma),
            Factor::Cyclic2 { .. } => None,
        }
    }

    pub fn tau(&self, f: usize) -> &Perm {
        self.factors[f].tau()
    }

    fn check_chars(&self, chars: &[FactorChar]) -> Result<()> {
        if chars.len() != self.factors.len() {
            return Err(Error::Parse(format!(
                "{} factor characters given for {} factors",
                chars.len(),
                self.factors.len()
            )));
        }
        for (c, f) in chars.iter().zip(&self.factors) {
            if let FactorChar::V(j) = c {
                match f {
                    Factor::Dihedral { p, .. } if *j >= 1 && *j <= (p - 1) / 2 => {}
                    Factor::Dihedral { p, .. } => {
                        return Err(Error::Parse(format!(
                            "V({j}) needs 1 <= j <= {}",
                            (p - 1) / 2
                        )))
                    }
                    Factor::Cyclic2 { .. } => {
                        return Err(Error::Parse(format!("V({j}) on an order-two factor")))
                    }
                }
            }
        }
        Ok(())
    }

    /// The irreducible character `chars[0] (x) chars[1] (x) ...`.
    pub fn character(&self, chars: &[FactorChar]) -> Result<ClassFunction> {
        self.check_chars(chars)?;
        let p = self.conductor;
        ClassFunction::from_fn(self.group.clone(), p, |x| {
            let mut v = int(p, 1);
            for (c, &(e, h)) in chars.iter().zip(&self.coords[x]) {
                v = v * c.value(p, e, h);
            }
            v
        })
    }

    /// Every combination of factor characters, in lexicographic order.
    pub fn irreducible_labels(&self) -> Vec<Vec<FactorChar>> {
        let mut out: Vec<Vec<FactorChar>> = vec![Vec::new()];
        for f in &self.factors {
            let mut options = vec![FactorChar::Trivial, FactorChar::Alternating];
            if let Factor::Dihedral { p, .. } = f {
                options.extend((1..=(p - 1) / 2).map(FactorChar::V));
            }
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.push(*o);
                        v
                    })
                })
                .collect();
        }
        out
    }

    pub fn label_name(chars: &[FactorChar]) -> String {
        if chars.len() == 1 {
            chars[0].name()
        } else {
            let parts: Vec<String> = chars.iter().map(FactorChar::name).collect();
            format!("tensor({})", parts.join(","))
        }
    }

    /// Complete list of irreducible characters with their labels.
    pub fn irreducibles(&self) -> Result<Vec<(Vec<FactorChar>, ClassFunction)>> {
        self.irreducible_labels()
            .into_iter()
            .map(|l| Ok((l.clone(), self.character(&l)?)))
            .collect()
    }

    /// Every rational irreducible representation, each named by its first label.
    pub fn rational_irreducibles(&self) -> Result<Vec<RationalRep>> {
        let mut out: Vec<RationalRep> = Vec::new();
        for (label, chi) in self.irreducibles()? {
            if out.iter().any(|r| r.orbit.contains(&chi)) {
                continue;
            }
            out.push(rational_rep_of(&chi, &Self::label_name(&label))?);
        }
        Ok(out)
    }

    /// Resolves a symbolic name to a rational irreducible representation.
    ///
    /// Names: `trivial`, `alternating` (sign on every factor), `V(j)` and `W`
    /// (one factor), `tensor(a,b,...)` with one factor name per factor, and
    /// `U(j)` (two dihedral factors, the orbit of `V(1) (x) V(j)`). Inside
    /// `tensor`, `W` stands for `V(1)` on a dihedral factor and for
    /// `alternating` on an order-two factor.
    pub fn resolve(&self, name: &str) -> Result<RationalRep> {
        let name = name.trim();
        let k = self.factors.len();
        let seed: Vec<FactorChar> = match parse_call(name)? {
            ("trivial", None) => vec![FactorChar::Trivial; k],
            ("alternating", None) => vec![FactorChar::Alternating; k],
            ("W", None) if k == 1 => vec![self.w_seed(0)],
            ("V", Some(args)) if k == 1 => vec![parse_v(&args)?],
            ("U", Some(args)) => {
                let both_dihedral = k == 2
                    && self
                        .factors
                        .iter()
                        .all(|f| matches!(f, Factor::Dihedral { .. }));
                if !both_dihedral {
                    return Err(Error::Parse("U(j) needs two dihedral factors".into()));
                }
                vec![FactorChar::V(1), parse_v(&args)?]
            }
            ("tensor", Some(args)) => {
                if args.len() != k {
                    return Err(Error::Parse(format!(
                        "tensor needs {k} arguments, got {}",
                        args.len()
                    )));
                }
                args.iter()
                    .enumerate()
                    .map(|(f, a)| self.factor_name(f, a))
                    .collect::<Result<_>>()?
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unknown representation name {name:?}"
                )))
            }
        };
        let chi = self.character(&seed)?;
        rational_rep_of(&chi, name)
    }

    fn w_seed(&self, f: usize) -> FactorChar {
        match self.factors[f] {
            Factor::Dihedral { .. } => FactorChar::V(1),
            Factor::Cyclic2 { .. } => FactorChar::Alternating,
        }
    }

    fn factor_name(&self, f: usize, name: &str) -> Result<FactorChar> {
        match parse_call(name.trim())? {
            ("trivial", None) => Ok(FactorChar::Trivial),
            ("alternating", None) => Ok(FactorChar::Alternating),
            ("W", None) => Ok(self.w_seed(f)),
            ("V", Some(args)) => parse_v(&args),
            _ => Err(Error::Parse(format!(
                "unknown factor representation {name:?}"
            ))),
        }
    }
}

/// Splits `head(arg, arg, ...)` at top-level commas; `head` alone has no args.
fn parse_call(s: &str) -> Result<(&str, Option<Vec<String>>)> {
    let Some(open) = s.find('(') else {
        return Ok((s, None));
    };
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    args.push(cur.trim().to_string());
    Ok((s[..open].trim(), Some(args)))
}

fn parse_v(args: &[String]) -> Result<FactorChar> {
    match args {
        [j] => j
            .parse::<u32>()
            .map(FactorChar::V)
            .map_err(|_| Error::Parse(format!("bad index {j:?}"))),
        _ => Err(Error::Parse("V(j) takes one index".into())),
    }
}

/// The dihedral group `D_p` on `p` points with its irreducible characters.
#[derive(Clone)]
pub struct DihedralTable {
    pub model: GroupModel,
    /// `(1 2 ... p)`.
    pub sigma: Perm,
    /// The reflection fixing 1.
    pub tau: Perm,
    pub trivial: ClassFunction,
    pub alternating: ClassFunction,
    /// `V_1, ..., V_{(p-1)/2}`.
    pub v: Vec<ClassFunction>,
    /// The rational representation `W`, the orbit of `V_1`.
    pub w: RationalRep,
}

pub fn dihedral_generators(p: u32) -> (Perm, Perm) {
    let n = p as usize;
    let sigma = Perm::from_cycles(n, &[(1..=n).collect()]).expect("cycle");
    let tau_images: Vec<usize> = (1..=n)
        .map(|i| if i == 1 { 1 } else { n + 2 - i })
        .collect();
    let tau = Perm::from_images(&tau_images).expect("reflection");
    (sigma, tau)
}

pub fn dihedral_table(p: u32) -> Result<DihedralTable> {
    check_conductor(p as u64)?;
    let (sigma, tau) = dihedral_generators(p);
    let model = GroupModel::new(
        p as usize,
        vec![Factor::Dihedral {
            p,
            sigma: sigma.clone(),
            tau: tau.clone(),
        }],
    )?;
    let trivial = model.character(&[FactorChar::Trivial])?;
    let alternating = model.character(&[FactorChar::Alternating])?;
    let v = (1..=(p - 1) / 2)
        .map(|j| model.character(&[FactorChar::V(j)]))
        .collect::<Result<Vec<_>>>()?;
    let w = rational_rep_of(&v[0], "W")?;
    Ok(DihedralTable {
        model,
        sigma,
        tau,
        trivial,
        alternating,
        v,
        w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{fixed_space_dim, inner_product, tensor};
    use crate::exact_algebra::rat;
    use crate::Rational;

    #[test]
    fn dihedral_values() {
        for p in [3u32, 5, 7, 11] {
            let t = dihedral_table(p).unwrap();
            let g = t.model.group();
            assert_eq!(g.order(), 2 * p as usize);
            let s = g.index_of(&t.sigma).unwrap();
            assert_eq!(t.v[0].value(s), &Cyclotomic::two_cos(p, 1));
            assert_eq!(t.v[0].value(s).trace_real().unwrap(), rat(-1));
            assert_eq!(t.w.field_degree, (p as usize - 1) / 2);
            assert_eq!(t.w.dim, 2);
            assert_eq!(t.w.schur_index, 1);
            let dims: usize = 2 + t
                .v
                .iter()
                .map(|c| c.degree().unwrap().pow(2))
                .sum::<usize>();
            assert_eq!(dims, 2 * p as usize);
            let h = g.subgroup(std::slice::from_ref(&t.tau)).unwrap();
            for v in &t.v {
                assert_eq!(inner_product(v, v).unwrap(), rat(1));
                assert_eq!(fixed_space_dim(v, &h).unwrap(), 1);
            }
        }
    }

    #[test]
    fn model_matches_tensor() {
        let t = dihedral_table(5).unwrap();
        let prod = t.model.product(&t.model).unwrap();
        let direct = tensor(&t.v[0], &t.v[1]).unwrap();
        let ours = prod
            .character(&[FactorChar::V(1), FactorChar::V(2)])
            .unwrap();
        // same group, possibly distinct allocations
        assert_eq!(direct, ours);
        assert_eq!(
            inner_product(&ours, &ours).unwrap(),
            Rational::from_integer(1.into())
        );
    }

    #[test]
    fn names_resolve() {
        let t = dihedral_table(7).unwrap();
        assert_eq!(t.model.resolve("W").unwrap().orbit.len(), 3);
        let v2 = t.model.resolve("V(2)").unwrap();
        assert!(v2.orbit.iter().all(|c| t.w.orbit.contains(c)));
        assert!(t.model.resolve("trivial").unwrap().is_trivial());
        assert!(t.model.resolve("V(4)").is_err());
        assert!(t.model.resolve("U(1)").is_err());
        let prod = t.model.product(&t.model).unwrap();
        let u2 = prod.resolve("U(2)").unwrap();
        assert_eq!(u2.field_degree, 3);
        let w1 = prod.resolve("tensor(W,trivial)").unwrap();
        assert_eq!(w1.field_degree, 3);
        assert_eq!(w1.dim, 2);
        assert!(prod.resolve("tensor(W)").is_err());
        assert!(prod.resolve("bogus").is_err());
        assert_eq!(prod.rational_irreducibles().unwrap().len(), 4 + 4 + 3);
    }

    #[test]
    fn klein_model() {
        let c2 = GroupModel::new(
            2,
            vec![Factor::Cyclic2 {
                tau: Perm::parse("(1 2)", None).unwrap(),
            }],
        )
        .unwrap();
        assert_eq!(c2.conductor(), 3);
        let v = c2.product(&c2).unwrap();
        assert_eq!(v.group().order(), 4);
        let w1 = v.resolve("tensor(W,trivial)").unwrap();
        assert_eq!(w1.field_degree, 1);
        assert_eq!(v.rational_irreducibles().unwrap().len(), 4);
    }

    #[test]
    fn rejects_bad_factors() {
        let bad = Factor::Dihedral {
            p: 5,
            sigma: Perm::parse("(1 2 3 4 5)", None).unwrap(),
            tau: Perm::parse("(1 2)", Some(5)).unwrap(),
        };
        assert!(GroupModel::new(5, vec![bad]).is_err());
    }
}
