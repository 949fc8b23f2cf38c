//! Turns the textual group, subgroup, representation and signature specs of a
//! config into engine objects.

use anyhow::{anyhow, bail, Context, Result};
use prymcheck::characters::{dihedral_table, Factor, GroupModel};
use prymcheck::permgroup::{cyclic_subgroup_classes, Perm, PermGroup, DEFAULT_ORDER_CAP};
use prymcheck::pt_engine::{GeometricSignature, PTPresentation};

use crate::config::RunConfig;

fn parse_perm(s: &str, degree: Option<usize>) -> Result<Perm> {
    Perm::parse(s, degree).with_context(|| format!("bad permutation {s:?}"))
}

fn parse_prime(s: &str) -> Result<u32> {
    s.trim().parse().with_context(|| format!("bad prime {s:?}"))
}

fn check_order(order: u64, cap: usize) -> Result<()> {
    if order > cap as u64 {
        bail!("group order {order} exceeds cap {cap}");
    }
    Ok(())
}

/// One factor of `generators:`: `sigma/tau` for a dihedral factor, `tau`
/// alone for an order-two factor.
fn parse_factor(s: &str) -> Result<Factor> {
    match s.split_once('/') {
        Some((sigma, tau)) => {
            let sigma = parse_perm(sigma, None)?;
            let tau = parse_perm(tau, None)?;
            let p = u32::try_from(sigma.order()).context("rotation order")?;
            Ok(Factor::Dihedral { p, sigma, tau })
        }
        None => Ok(Factor::Cyclic2 {
            tau: parse_perm(s, None)?,
        }),
    }
}

fn pad(f: Factor, n: usize) -> Result<Factor> {
    let grow = |x: Perm| -> Result<Perm> {
        let extra = n.checked_sub(x.degree()).ok_or_else(|| anyhow!("degree"))?;
        Ok(x.juxtapose(&Perm::identity(extra)))
    };
    Ok(match f {
        Factor::Dihedral { p, sigma, tau } => Factor::Dihedral {
            p,
            sigma: grow(sigma)?,
            tau: grow(tau)?,
        },
        Factor::Cyclic2 { tau } => Factor::Cyclic2 { tau: grow(tau)? },
    })
}

fn degree_of(f: &Factor) -> usize {
    match f {
        Factor::Dihedral { sigma, tau, .. } => sigma.degree().max(tau.degree()),
        Factor::Cyclic2 { tau } => tau.degree(),
    }
}

/// Group specs:
/// - `dihedral:p`: `D_p` on `p` points;
/// - `dihedral:p^2`: `D_p x D_p` on `2p` points;
/// - `klein`: `Z_2 x Z_2` generated by `(1 2)` and `(3 4)`;
/// - `generators:F;F;...`: direct product of the factors `F`, each `sigma/tau`
///   (dihedral) or `tau` (order two) in cycle notation.
pub fn parse_group(spec: &str, cap: usize) -> Result<GroupModel> {
    let spec = spec.trim();
    let model = if let Some(rest) = spec.strip_prefix("dihedral:") {
        match rest.split_once('^') {
            None => {
                let p = parse_prime(rest)?;
                check_order(2 * p as u64, cap)?;
                dihedral_table(p)?.model
            }
            Some((p, "2")) => {
                let p = parse_prime(p)?;
                check_order(4 * (p as u64).pow(2), cap)?;
                let base = dihedral_table(p)?.model;
                base.product(&base)?
            }
            Some(_) => bail!("only dihedral:p and dihedral:p^2 are supported, got {spec:?}"),
        }
    } else if spec == "klein" {
        let a = Perm::parse("(1 2)", Some(4))?;
        let b = Perm::parse("(3 4)", Some(4))?;
        GroupModel::with_cap(
            4,
            vec![Factor::Cyclic2 { tau: a }, Factor::Cyclic2 { tau: b }],
            cap,
        )?
    } else if let Some(rest) = spec.strip_prefix("generators:") {
        let factors: Vec<Factor> = rest
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(parse_factor)
            .collect::<Result<_>>()?;
        let n = factors.iter().map(degree_of).max().unwrap_or(0);
        let factors = factors
            .into_iter()
            .map(|f| pad(f, n))
            .collect::<Result<_>>()?;
        GroupModel::with_cap(n, factors, cap)?
    } else {
        bail!("unknown group {spec:?}; expected dihedral:p, dihedral:p^2, klein or generators:...")
    };
    Ok(model)
}

/// Subgroup specs: `trivial`, `whole`, `tau` (all reflection generators),
/// `tau(k)` (that of factor `k`, from 1), or generators separated by `;`.
pub fn parse_subgroup(model: &GroupModel, spec: &str) -> Result<PermGroup> {
    let g = model.group();
    let spec = spec.trim();
    let k = model.factors().len();
    let gens: Vec<Perm> = match spec {
        "trivial" => Vec::new(),
        "whole" => g.generators().to_vec(),
        "tau" => (0..k).map(|f| model.tau(f).clone()).collect(),
        _ => {
            if let Some(f) = spec.strip_prefix("tau(").and_then(|r| r.strip_suffix(')')) {
                let f: usize = f
                    .trim()
                    .parse()
                    .with_context(|| format!("bad factor in {spec:?}"))?;
                if f == 0 || f > k {
                    bail!("tau({f}): the group has {k} factors");
                }
                vec![model.tau(f - 1).clone()]
            } else {
                spec.split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_perm(s, Some(g.degree())))
                    .collect::<Result<_>>()?
            }
        }
    };
    for x in &gens {
        if !g.contains(x) {
            bail!("subgroup generator {x} is not in G");
        }
    }
    Ok(g.subgroup(&gens)?)
}

/// Signature entries `class:s`. `C<k>` is the `k`-th conjugacy class of
/// nontrivial cyclic subgroups, ordered by subgroup order and then by the
/// smallest generating element; anything else is a generator in cycle notation.
pub fn parse_signature(g: &PermGroup, entries: &[String]) -> Result<GeometricSignature> {
    let mut classes = None;
    let mut out = Vec::new();
    for entry in entries {
        let (class, s) = entry
            .rsplit_once(':')
            .ok_or_else(|| anyhow!("signature entry {entry:?} is not class:s"))?;
        let s: u32 = s
            .trim()
            .parse()
            .with_context(|| format!("bad count in {entry:?}"))?;
        let class = class.trim();
        let sub = match class.strip_prefix('C').map(str::parse::<usize>) {
            Some(Ok(k)) => {
                let cls = classes.get_or_insert_with(|| cyclic_subgroup_classes(g));
                if k == 0 || k > cls.len() {
                    bail!("{class}: G has {} classes of cyclic subgroups", cls.len());
                }
                cls[k - 1][0].clone()
            }
            _ => {
                let x = parse_perm(class, Some(g.degree()))?;
                if !g.contains(&x) {
                    bail!("signature generator {x} is not in G");
                }
                g.subgroup(&[x])?
            }
        };
        out.push((sub, s));
    }
    let sig = GeometricSignature::new(0, out);
    sig.validate(g)?;
    Ok(sig)
}

/// The presentation described by `group`, `subgroup`, `reps` and the given
/// signature entries.
pub fn presentation(cfg: &RunConfig, signature: &[String]) -> Result<PTPresentation> {
    let group = cfg
        .group
        .as_deref()
        .ok_or_else(|| anyhow!("no group given"))?;
    let subgroup = cfg
        .subgroup
        .as_deref()
        .ok_or_else(|| anyhow!("no subgroup given"))?;
    if cfg.reps.is_empty() {
        bail!("no representations given");
    }
    if signature.is_empty() {
        bail!("no signature given");
    }
    let model = parse_group(group, cfg.order_cap.unwrap_or(DEFAULT_ORDER_CAP))?;
    let h = parse_subgroup(&model, subgroup)?;
    let reps = cfg
        .reps
        .iter()
        .map(|r| {
            model
                .resolve(r)
                .with_context(|| format!("representation {r:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    let sig = parse_signature(model.group(), signature)?;
    Ok(PTPresentation::new(model.group().clone(), h, reps, sig)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups() {
        assert_eq!(
            parse_group("dihedral:5", DEFAULT_ORDER_CAP)
                .unwrap()
                .group()
                .order(),
            10
        );
        assert_eq!(
            parse_group("dihedral:3^2", DEFAULT_ORDER_CAP)
                .unwrap()
                .group()
                .order(),
            36
        );
        assert_eq!(
            parse_group("klein", DEFAULT_ORDER_CAP)
                .unwrap()
                .group()
                .order(),
            4
        );
        let g = parse_group("generators:(1 2 3)/(2 3);(4 5)", DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.group().order(), 12);
        assert!(parse_group("dihedral:4", DEFAULT_ORDER_CAP).is_err());
        assert!(parse_group("dihedral:7", 10).is_err());
        assert!(parse_group("cyclic:5", DEFAULT_ORDER_CAP).is_err());
    }

    #[test]
    fn subgroups_and_signatures() {
        let m = parse_group("dihedral:5", DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(parse_subgroup(&m, "tau").unwrap().order(), 2);
        assert_eq!(parse_subgroup(&m, "(1 2 3 4 5)").unwrap().order(), 5);
        assert!(parse_subgroup(&m, "(1 2)").is_err());
        let sig = parse_signature(m.group(), &["C1:6".into(), "C2:0".into()]).unwrap();
        assert_eq!(sig.entries.len(), 1);
        assert_eq!(sig.entries[0].class_rep.order(), 2);
        let rot = parse_signature(m.group(), &["C2:2".into()]).unwrap();
        assert_eq!(rot.entries[0].class_rep.order(), 5);
        assert!(parse_signature(m.group(), &["C3:2".into()]).is_err());
        assert!(parse_signature(m.group(), &["C1".into()]).is_err());
    }
}
