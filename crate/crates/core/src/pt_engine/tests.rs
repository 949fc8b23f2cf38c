use super::*;
use crate::characters::{dihedral_table, Factor, GroupModel};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn dihedral_pres(p: u32, s: u32) -> PTPresentation {
    let t = dihedral_table(p).unwrap();
    let g = t.model.group().clone();
    let h = g.subgroup(std::slice::from_ref(&t.tau)).unwrap();
    let sig = GeometricSignature::new(0, vec![(h.clone(), s)]);
    PTPresentation::new(g, h, vec![t.w.clone()], sig).unwrap()
}

fn product_pres(model: &GroupModel, h_gens: &[Perm], s1: u32, s2: u32) -> PTPresentation {
    let prod = model.product(model).unwrap();
    let g = prod.group().clone();
    let h = g.subgroup(h_gens).unwrap();
    let reps = vec![
        prod.resolve("tensor(W,trivial)").unwrap(),
        prod.resolve("tensor(trivial,W)").unwrap(),
    ];
    let c1 = g.subgroup(&[prod.tau(0).clone()]).unwrap();
    let c2 = g.subgroup(&[prod.tau(1).clone()]).unwrap();
    let sig = GeometricSignature::new(0, vec![(c1, s1), (c2, s2)]);
    PTPresentation::new(g, h, reps, sig).unwrap()
}

fn dihedral_square(p: u32, s1: u32, s2: u32) -> PTPresentation {
    let t = dihedral_table(p).unwrap();
    let prod = t.model.product(&t.model).unwrap();
    let h_gens = [prod.tau(0).clone(), prod.tau(1).clone()];
    product_pres(&t.model, &h_gens, s1, s2)
}

fn klein(s1: u32, s2: u32) -> PTPresentation {
    let c2 = GroupModel::new(
        2,
        vec![Factor::Cyclic2 {
            tau: Perm::parse("(1 2)", None).unwrap(),
        }],
    )
    .unwrap();
    product_pres(&c2, &[], s1, s2)
}

#[test]
fn dihedral_battery() {
    for p in [3u32, 5, 7] {
        let pres = dihedral_pres(p, 6);
        let hyp = check_hypothesis(&pres).unwrap();
        assert!(hyp.all(), "{:?}", hyp.witnesses);
        let coeffs = coefficients(&pres).unwrap();
        assert_eq!(coeffs.len(), (p as usize).div_ceil(2));
        assert_eq!(coeffs[0], big(p as i64 - 1));
        assert!(coeffs[1..].iter().all(|b| *b == big(-1)));
        let e = exponent(&pres).unwrap();
        assert_eq!((e.b, e.q), (big(p as i64), big(1)));
        let cond = signature_condition(&pres).unwrap();
        assert!(cond.holds && cond.brackets.iter().all(Zero::is_zero));
        let pi = p as i64;
        assert_eq!(pt_dimension(&pres).unwrap(), big((pi - 1) * (6 - 4) / 4));
        assert_eq!(
            quotient_genus(&pres).unwrap(),
            big(6 * (pi - 1) / 4 - pi + 1)
        );
        assert_eq!(
            total_space_genus(&pres.signature, 2 * p as usize).unwrap(),
            big(1 - 2 * pi + 3 * pi)
        );
        assert!(kanev_coefficients(&pres).unwrap().iter().all(Zero::is_zero));
    }
}

#[test]
fn rotation_branches_keep_brackets_zero() {
    // <sigma> is transitive on the p cosets of <tau> and V_j^<sigma> = 0, so
    // the rotation bracket is 1 * (p-1)/2 * 2 - (p - 1) = 0 for every p
    for p in [3u32, 5, 7] {
        let t = dihedral_table(p).unwrap();
        let g = t.model.group().clone();
        let h = g.subgroup(std::slice::from_ref(&t.tau)).unwrap();
        let rot = g.subgroup(std::slice::from_ref(&t.sigma)).unwrap();
        let sig = GeometricSignature::new(0, vec![(h.clone(), 4), (rot, 1)]);
        let pres = PTPresentation::new(g, h, vec![t.w.clone()], sig).unwrap();
        let cond = signature_condition(&pres).unwrap();
        assert_eq!(cond.brackets, vec![big(0), big(0)]);
        assert!(cond.holds);
    }
}

#[test]
fn klein_battery() {
    let pres = klein(6, 8);
    let hyp = check_hypothesis(&pres).unwrap();
    assert!(hyp.all(), "{:?}", hyp.witnesses);
    assert_eq!(
        coefficients(&pres).unwrap(),
        vec![big(2), big(0), big(0), big(-2)]
    );
    let e = exponent(&pres).unwrap();
    assert_eq!((e.b.clone(), e.q.clone()), (big(2), big(2)));
    assert!(signature_condition(&pres).unwrap().holds);
    let k = kanev_coefficients(&pres).unwrap();
    assert_eq!(k, vec![big(0), big(0), big(0), big(1)]);
    let m = corr_matrix(&pres, &k).unwrap();
    let props = matrix_properties(&m.matrix, &e.q).unwrap();
    assert!(props.fixed_point_free && props.symmetric);
    assert_eq!(props.quadratic_certificate, Some(big(0)));
    // X = Z, so the genus is that of the fiber product: g1 + g2 + ... via Riemann-Hurwitz
    assert_eq!(
        quotient_genus(&pres).unwrap(),
        total_space_genus(&pres.signature, 4).unwrap()
    );
}

#[test]
fn dihedral_square_battery() {
    for p in [3u32, 5] {
        let pres = dihedral_square(p, 4, 6);
        let pi = p as i64;
        assert!(check_hypothesis(&pres).unwrap().all());
        let coeffs = coefficients(&pres).unwrap();
        assert_eq!(coeffs.len(), (p as usize).div_ceil(2).pow(2));
        assert_eq!(coeffs[0], big(4 * pi - 4));
        for b in &coeffs[1..] {
            assert!(*b == big(2 * pi - 4) || *b == big(-4), "{b}");
        }
        let mixed = coeffs.iter().filter(|b| **b == big(2 * pi - 4)).count();
        assert_eq!(mixed, 2 * (p as usize - 1) / 2);
        let e = exponent(&pres).unwrap();
        assert_eq!((e.b.clone(), e.q.clone()), (big(2 * pi), big(pi)));
        assert!(signature_condition(&pres).unwrap().holds);
        assert_eq!(pt_dimension(&pres).unwrap(), big((pi - 1) * (10 - 8) / 4));
        assert_eq!(
            quotient_genus(&pres).unwrap(),
            big(10 * (pi * pi - pi) / 4 - pi * pi + 1)
        );
        assert_eq!(
            total_space_genus(&pres.signature, 4 * (p * p) as usize).unwrap(),
            big(1 - 4 * pi * pi + 10 * pi * pi)
        );
        let k = kanev_coefficients(&pres).unwrap();
        let m = corr_matrix(&pres, &k).unwrap();
        let props = matrix_properties(&m.matrix, &e.q).unwrap();
        assert!(props.effective && props.symmetric && props.fixed_point_free);
        assert_eq!(props.degree, Some(big((pi - 1).pow(2))));
        assert_eq!(props.quadratic_certificate, Some(big((pi - 1) * (pi - 2))));
    }
}

#[test]
fn coefficients_depend_only_on_double_coset() {
    let pres = dihedral_square(3, 4, 4);
    let g = &pres.group;
    let dc = pres.double_cosets();
    let coeffs = coefficients(&pres).unwrap();
    for x in 0..g.order() {
        let i = dc.double_coset_of(x);
        assert_eq!(coefficient_at(&pres, g.element(x)).unwrap(), coeffs[i]);
    }
}

#[test]
fn hypothesis_failures_are_reported() {
    let t = dihedral_table(5).unwrap();
    let g = t.model.group().clone();
    let sig = GeometricSignature::new(0, vec![]);
    let pres =
        PTPresentation::new(g.clone(), (*g).clone(), vec![t.w.clone()], sig.clone()).unwrap();
    let hyp = check_hypothesis(&pres).unwrap();
    assert!(!hyp.c);
    assert_eq!(hyp.fixed_dims, vec![0]);
    assert!(matches!(
        exponent(&pres),
        Err(Error::DegeneratePresentation)
    ));
    // trivial H: dim V^H = 2
    let triv = PermGroup::trivial(5);
    let pres = PTPresentation::new(g.clone(), triv, vec![t.w.clone()], sig.clone()).unwrap();
    let hyp = check_hypothesis(&pres).unwrap();
    assert!(!hyp.c && !hyp.d);
    // the trivial representation is rejected outright
    let trivial = t.model.resolve("trivial").unwrap();
    assert!(PTPresentation::new(g.clone(), (*g).clone(), vec![trivial], sig).is_err());
}

#[test]
fn signature_validation() {
    let t = dihedral_table(5).unwrap();
    let g = t.model.group().clone();
    let h = g.subgroup(std::slice::from_ref(&t.tau)).unwrap();
    let other = g.subgroup(&[t.tau.then(&t.sigma)]).unwrap();
    let sig = GeometricSignature::new(0, vec![(h.clone(), 2), (other, 2)]);
    assert!(matches!(sig.validate(&g), Err(Error::InvalidSignature(_))));
    let zero = GeometricSignature::new(0, vec![(h.clone(), 0)]);
    assert!(zero.entries.is_empty());
    assert!(total_space_genus(&zero, 10).is_err());
    let one = GeometricSignature::new(1, vec![(h, 4)]);
    assert!(quotient_genus_of(&g, &PermGroup::trivial(5), &one).is_err());
}

#[test]
fn whole_group_has_genus_zero() {
    let t = dihedral_table(7).unwrap();
    let g = t.model.group().clone();
    let h = g.subgroup(std::slice::from_ref(&t.tau)).unwrap();
    let sig = GeometricSignature::new(0, vec![(h, 8)]);
    assert_eq!(quotient_genus_of(&g, &g, &sig).unwrap(), big(0));
}

#[test]
fn report_round_trips() {
    let pres = dihedral_pres(5, 6);
    let (report, matrix) = analyze(&pres);
    assert!(report.passes(), "{:?}", report.errors);
    assert_eq!(report.b.as_deref(), Some("5"));
    assert_eq!(report.genus.as_deref(), Some("2"));
    assert_eq!(matrix.unwrap().matrix.rows(), 5);
    let json = serde_json::to_string(&report).unwrap();
    let back: PresentationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}
