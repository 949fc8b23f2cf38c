//! Group families and property checks shared by the property suites and the
//! acceptance runner. Each check returns a description of the first failure.

#![allow(dead_code)]

use prymcheck::characters::{
    dihedral_table, fixed_space_dim, inner_product, perm_character, Factor, GroupModel,
};
use prymcheck::exact_algebra::rat;
use prymcheck::permgroup::{
    double_coset_count, double_cosets, orbit, stabilizer, verify_double_cosets, Perm, PermGroup,
};
use prymcheck::{Cyclotomic, Rational};

pub const FAMILY_COUNT: usize = 7;

/// Small groups with known character tables: `D_3`, `D_5`, `D_7`, `D_3 x D_3`,
/// `D_3 x Z_2`, `Z_2 x Z_2` and `D_5 x Z_2`.
pub fn family(k: usize) -> GroupModel {
    let c2 = || {
        GroupModel::new(
            2,
            vec![Factor::Cyclic2 {
                tau: Perm::parse("(1 2)", None).unwrap(),
            }],
        )
        .unwrap()
    };
    let d = |p| dihedral_table(p).unwrap().model;
    match k % FAMILY_COUNT {
        0 => d(3),
        1 => d(5),
        2 => d(7),
        3 => d(3).product(&d(3)).unwrap(),
        4 => d(3).product(&c2()).unwrap(),
        5 => c2().product(&c2()).unwrap(),
        _ => d(5).product(&c2()).unwrap(),
    }
}

pub fn subgroup_from(g: &PermGroup, a: usize, b: usize, two: bool) -> PermGroup {
    let mut gens = vec![g.element(a % g.order()).clone()];
    if two {
        gens.push(g.element(b % g.order()).clone());
    }
    g.subgroup(&gens).unwrap()
}

/// `trace(zeta^j) = -1` for `p` not dividing `j`, `p - 1` otherwise; the trace
/// is additive and Galois invariant.
pub fn trace_identities(p: u64, j: i64, coords: &[i64], k: i64) -> Result<(), String> {
    let z = Cyclotomic::root_power(p, j).map_err(|e| e.to_string())?;
    let expected = if j.rem_euclid(p as i64) == 0 {
        rat(p as i64 - 1)
    } else {
        rat(-1)
    };
    if z.trace_full() != expected {
        return Err(format!("trace(zeta_{p}^{j}) = {}", z.trace_full()));
    }
    let x = Cyclotomic::from_coords(
        p,
        coords
            .iter()
            .take(p as usize - 1)
            .map(|&c| rat(c))
            .collect(),
    )
    .map_err(|e| e.to_string())?;
    let sum = x.try_add(&z).map_err(|e| e.to_string())?;
    if sum.trace_full() != x.trace_full() + z.trace_full() {
        return Err(format!("trace not additive at {x} + {z}"));
    }
    if k.rem_euclid(p as i64) != 0 {
        let y = x.galois(k).map_err(|e| e.to_string())?;
        if y.trace_full() != x.trace_full() {
            return Err(format!("trace of {x} changes under zeta -> zeta^{k}"));
        }
    }
    Ok(())
}

/// `<Ind_H^G 1, chi>_G = <1, Res_H chi>_H` for every irreducible `chi`.
pub fn frobenius(model: &GroupModel, a: usize, b: usize, two: bool) -> Result<(), String> {
    let g = model.group();
    let h = subgroup_from(g, a, b, two);
    let rho = perm_character(g, &h, model.conductor()).map_err(|e| e.to_string())?;
    for (label, chi) in model.irreducibles().map_err(|e| e.to_string())? {
        let lhs = inner_product(&rho, &chi).map_err(|e| e.to_string())?;
        let rhs = fixed_space_dim(&chi, &h).map_err(|e| e.to_string())?;
        if lhs != Rational::from_integer(rhs.into()) {
            return Err(format!("{label:?} on {h:?}: {lhs} vs {rhs}"));
        }
    }
    Ok(())
}

/// `|orbit(x)| |Stab(x)| = |G|` for a point of a subgroup.
pub fn orbit_stabilizer(
    model: &GroupModel,
    a: usize,
    b: usize,
    two: bool,
    point: usize,
) -> Result<(), String> {
    let u = subgroup_from(model.group(), a, b, two);
    let x = point % u.degree() + 1;
    let orb = orbit(&u, x).map_err(|e| e.to_string())?;
    let stab = stabilizer(&u, x).map_err(|e| e.to_string())?;
    if orb.len() * stab.order() != u.order() {
        return Err(format!(
            "{} * {} != {} at point {x}",
            orb.len(),
            stab.order(),
            u.order()
        ));
    }
    Ok(())
}

/// The double cosets `H g K` partition `G`, the counts agree with the orbit
/// count on cosets, and `H g H` holds `|H|^2 / |H cap H^g|` elements.
pub fn double_coset_partition(
    model: &GroupModel,
    a: usize,
    b: usize,
    two: bool,
) -> Result<(), String> {
    let g = model.group();
    let h = subgroup_from(g, a, b, two);
    let data = double_cosets(g, &h).map_err(|e| e.to_string())?;
    verify_double_cosets(g, &h, &data).map_err(|e| e.to_string())?;
    let count = double_coset_count(g, &h, &h).map_err(|e| e.to_string())?;
    if count != data.len() {
        return Err(format!("{} double cosets but {count} orbits", data.len()));
    }
    let total: usize = data.members.iter().map(Vec::len).sum();
    if total != g.order() {
        return Err(format!(
            "double cosets cover {total} of {} elements",
            g.order()
        ));
    }
    for (rep, members) in data.reps.iter().zip(&data.members) {
        let conj = prymcheck::permgroup::conjugate(&h, rep);
        let meet = prymcheck::permgroup::intersection(&h, &conj).order();
        if members.len() * meet != h.order() * h.order() {
            return Err(format!("H {rep} H has {} elements", members.len()));
        }
    }
    Ok(())
}

/// `sum_chi chi(x) conj(chi(y)) = |C_G(x)|` if `x ~ y`, else 0.
pub fn column_orthogonality(model: &GroupModel, x: usize, y: usize) -> Result<(), String> {
    let g = model.group();
    let (x, y) = (x % g.order(), y % g.order());
    let p = model.conductor() as u64;
    let mut acc = Cyclotomic::zero(p).unwrap();
    for (_, chi) in model.irreducibles().map_err(|e| e.to_string())? {
        acc = acc + chi.value(x).clone() * chi.value(y).conj();
    }
    let expected = if g.class_of(x) == g.class_of(y) {
        g.centralizer_order(x) as i64
    } else {
        0
    };
    if acc != Cyclotomic::from_i64(p, expected).unwrap() {
        return Err(format!("columns {x}, {y}: {acc} vs {expected}"));
    }
    Ok(())
}

/// The irreducibles are pairwise orthonormal and `sum chi(1)^2 = |G|`.
pub fn decomposition_complete(model: &GroupModel) -> Result<(), String> {
    let irr = model.irreducibles().map_err(|e| e.to_string())?;
    let mut total = 0usize;
    for (i, (_, a)) in irr.iter().enumerate() {
        total += a.degree().map_err(|e| e.to_string())?.pow(2);
        for (_, b) in &irr[i..] {
            let ip = inner_product(a, b).map_err(|e| e.to_string())?;
            let want = if std::ptr::eq(a, b) { rat(1) } else { rat(0) };
            if ip != want {
                return Err(format!("<chi, psi> = {ip}"));
            }
        }
    }
    let order = model.group().order();
    if total != order || irr.len() != model.group().num_classes() {
        return Err(format!("sum of squares {total}, |G| = {order}"));
    }
    Ok(())
}
