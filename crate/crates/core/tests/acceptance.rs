//! Acceptance runner: one line per criterion, non-zero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use prymcheck::constructions::{
    cyclic2_presentation, dihedral_presentation, dihedral_product, grid_correspondence,
    hyperelliptic_product, jacobian_decomposition, showcase_lattice, verify_equivariance,
    verify_kanev_equals_grid, verify_product_exponent, verify_pullback,
};
use prymcheck::matrix::Matrix;
use prymcheck::permgroup::CosetSpace;
use prymcheck::pt_engine::{
    check_hypothesis, coefficients, corr_matrix, exponent, kanev_coefficients, matrix_properties,
    signature_condition,
};
use prymcheck::Rational;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= budget, || {
        format!("{what} took {t:.2?}, budget {budget:?}")
    })
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn dihedral_battery() -> Check {
    for p in [3i64, 5, 7, 11] {
        let start = Instant::now();
        let pres = dihedral_presentation(p as u32, 6).map_err(e)?;
        ensure(
            pres.double_cosets().len() == (p as usize).div_ceil(2),
            || format!("d at p = {p}"),
        )?;
        let b = coefficients(&pres).map_err(e)?;
        let mut want = vec![big(p - 1)];
        want.resize((p as usize).div_ceil(2), big(-1));
        ensure(b == want, || format!("b-vector {b:?} at p = {p}"))?;
        let x = exponent(&pres).map_err(e)?;
        ensure(x.b == big(p) && x.q == big(1), || {
            format!("b = {}, q = {} at p = {p}", x.b, x.q)
        })?;
        let hyp = check_hypothesis(&pres).map_err(e)?;
        ensure(hyp.all(), || {
            format!("hypothesis at p = {p}: {:?}", hyp.witnesses)
        })?;
        let cond = signature_condition(&pres).map_err(e)?;
        ensure(
            cond.holds && cond.brackets.iter().all(Zero::is_zero),
            || format!("brackets {:?} at p = {p}", cond.brackets),
        )?;
        within(start, Duration::from_secs(1), &format!("p = {p}"))?;
    }
    Ok("p = 3, 5, 7, 11: b = p, q = 1, brackets 0".into())
}

fn klein_battery() -> Check {
    let start = Instant::now();
    let pp = hyperelliptic_product(1, 2).map_err(e)?;
    let pres = &pp.product;
    let b = coefficients(pres).map_err(e)?;
    ensure(b == vec![big(2), big(0), big(0), big(-2)], || {
        format!("b-vector {b:?}")
    })?;
    let x = exponent(pres).map_err(e)?;
    ensure(x.b == big(2) && x.q == big(2), || {
        format!("b = {}, q = {}", x.b, x.q)
    })?;
    let kanev = corr_matrix(pres, &kanev_coefficients(pres).map_err(e)?).map_err(e)?;
    // graph of the involution acting on both factors at once
    let g = &pres.group;
    let both = g
        .index_of(&pp.base.group.element(1).juxtapose(pp.base.group.element(1)))
        .unwrap();
    let space = CosetSpace::new(g, &pres.subgroup).map_err(e)?;
    let n = space.len();
    let graph = Matrix::from_fn(n, n, |r, c| {
        BigInt::from(u8::from(space.act(g, c, both) == r))
    });
    ensure(kanev.matrix == graph, || {
        format!("Kanev matrix {:?}", kanev.matrix)
    })?;
    let props = matrix_properties(&kanev.matrix, &x.q).map_err(e)?;
    ensure(props.quadratic_certificate == Some(big(0)), || {
        format!("{props:?}")
    })?;
    ensure(
        props.predicted_certificate == Some(Rational::from_integer(big(0))),
        || format!("{props:?}"),
    )?;
    ensure(cyclic2_presentation(4).is_ok(), || "base".into())?;
    within(start, Duration::from_secs(1), "Klein battery")?;
    Ok("b = (2,0,0,-2), b = 2, q = 2, Kanev = involution graph, certificate 0".into())
}

fn product_exponent() -> Check {
    for p in [3i64, 5, 7] {
        let start = Instant::now();
        let pp = dihedral_product(p as u32, 4, 6).map_err(e)?;
        let r = verify_product_exponent(&pp).map_err(e)?;
        ensure(
            r.scaling_ok && r.q_product == big(p) && r.b_product == big(2 * p),
            || format!("{r:?}"),
        )?;
        let b = coefficients(&pp.product).map_err(e)?;
        let half = (p as usize - 1) / 2;
        let count = |v: i64| b.iter().filter(|x| **x == big(v)).count();
        ensure(
            b[0] == big(4 * p - 4)
                && count(4 * p - 4) == 1
                && count(2 * p - 4) == 2 * half
                && count(-4) == half * half,
            || format!("b table {b:?} at p = {p}"),
        )?;
        within(start, Duration::from_secs(5), &format!("p = {p}"))?;
    }
    Ok("p = 3, 5, 7: q = p, b = 2p, table (4p-4, 2p-4, -4)".into())
}

fn pullback() -> Check {
    let start = Instant::now();
    for p in [3u32, 5, 7] {
        let r = verify_pullback(&dihedral_product(p, 4, 6).map_err(e)?).map_err(e)?;
        ensure(r.holds && r.coefficient_identity, || {
            format!("residual at p = {p}: {:?}", r.residual)
        })?;
        ensure(r.product.matrix.rows() == (p * p) as usize, || {
            "size".into()
        })?;
    }
    within(start, Duration::from_secs(5), "pullback")?;
    Ok("p = 3, 5, 7: D = |H| (q1* D1 + q2* D2) entry-wise".into())
}

fn kanev_grid() -> Check {
    for p in [3i64, 5, 7] {
        let start = Instant::now();
        let r = verify_kanev_equals_grid(p as u32, 4, 6).map_err(e)?;
        ensure(r.equal, || format!("residual at p = {p}: {:?}", r.residual))?;
        let k = &r.kanev_properties;
        let c = (p - 1) * (p - 2);
        ensure(
            k.symmetric
                && k.fixed_point_free
                && k.effective
                && k.degree == Some(big((p - 1) * (p - 1)))
                && k.quadratic_certificate == Some(big(c))
                && k.predicted_certificate == Some(Rational::from_integer(big(c))),
            || format!("properties at p = {p}: {k:?}"),
        )?;
        within(start, Duration::from_secs(10), &format!("p = {p}"))?;
    }
    Ok("p = 3, 5, 7: Kanev = grid, M^2 + (p-2)M - (p-1)I = (p-1)(p-2)J".into())
}

fn equivariance() -> Check {
    let start = Instant::now();
    for p in [3u32, 5, 7] {
        let r = verify_equivariance(&grid_correspondence(p).map_err(e)?).map_err(e)?;
        ensure(r.all(), || format!("p = {p}: {:?}", r.generators))?;
    }
    within(start, Duration::from_secs(1), "equivariance")?;
    Ok("p = 3, 5, 7: phi_1..phi_4 commute with the grid".into())
}

fn lattice() -> Check {
    let mut detail = Vec::new();
    for p in [3u32, 5] {
        let start = Instant::now();
        let r = showcase_lattice(p).map_err(e)?;
        ensure(r.all(), || {
            format!(
                "p = {p}: {:?}",
                r.claims.iter().filter(|c| !c.holds).collect::<Vec<_>>()
            )
        })?;
        within(start, Duration::from_secs(30), &format!("p = {p}"))?;
        detail.push(format!("p = {p}: {} subgroups", r.subgroup_count));
    }
    Ok(detail.join(", "))
}

fn bookkeeping() -> Check {
    let mut n = 0;
    for p in [3u32, 5] {
        for s1 in [4u32, 6, 8] {
            for s2 in [4u32, 6, 8] {
                let start = Instant::now();
                let r = jacobian_decomposition(p, s1, s2).map_err(e)?;
                let tag = format!("(p, s1, s2) = ({p}, {s1}, {s2})");
                ensure(r.genera.bookkeeping && r.genera.agree, || {
                    format!("{tag}: {:?}", r.genera.disagreements)
                })?;
                ensure(r.identities.iter().all(|c| c.holds), || {
                    format!("{tag}: {:?}", r.identities)
                })?;
                ensure(r.all(), || format!("{tag}: {:?}", r.curves))?;
                let zero_one = r
                    .curves
                    .iter()
                    .flat_map(|c| &c.summands)
                    .all(|s| s.multiplicity <= 1);
                ensure(zero_one, || format!("{tag}: multiplicity above 1"))?;
                within(start, Duration::from_secs(10), &tag)?;
                n += 1;
            }
        }
    }
    Ok(format!(
        "{n} tuples: genera, character identities, 0/1 multiplicities"
    ))
}

fn properties() -> Check {
    let cases = 250;
    let runner = || {
        TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        })
    };
    let fam = 0..common::FAMILY_COUNT;
    let idx = 0usize..200;
    let lift = |r: Result<(), String>| r.map_err(TestCaseError::fail);

    let primes = prop::sample::select(vec![3u64, 5, 7, 11, 13]);
    runner()
        .run(
            &(
                primes,
                -40i64..40,
                prop::collection::vec(-9i64..9, 12),
                1i64..30,
            ),
            |(p, j, c, k)| lift(common::trace_identities(p, j, &c, k)),
        )
        .map_err(|x| format!("{}: {x}", "trace"))?;
    runner()
        .run(
            &(fam.clone(), idx.clone(), idx.clone(), any::<bool>()),
            |(f, a, b, two)| lift(common::frobenius(&common::family(f), a, b, two)),
        )
        .map_err(|x| format!("{}: {x}", "Frobenius"))?;
    runner()
        .run(
            &(
                fam.clone(),
                idx.clone(),
                idx.clone(),
                any::<bool>(),
                0usize..20,
            ),
            |(f, a, b, two, x)| lift(common::orbit_stabilizer(&common::family(f), a, b, two, x)),
        )
        .map_err(|x| format!("{}: {x}", "orbit-stabilizer"))?;
    runner()
        .run(&(fam, idx.clone(), idx, any::<bool>()), |(f, a, b, two)| {
            lift(common::double_coset_partition(
                &common::family(f),
                a,
                b,
                two,
            ))
        })
        .map_err(|x| format!("{}: {x}", "double cosets"))?;
    Ok(format!("{} randomized cases, 0 failures", 4 * cases))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("dihedral exponent-one battery", dihedral_battery),
        ("Klein group battery", klein_battery),
        ("product exponent scaling", product_exponent),
        ("pullback identity", pullback),
        ("Kanev correspondence equals grid", kanev_grid),
        ("grid equivariance", equivariance),
        ("subgroup lattice and uniqueness", lattice),
        ("genus and decomposition bookkeeping", bookkeeping),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} [{t:.2?}] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{t:.2?}] {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
