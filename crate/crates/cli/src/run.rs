use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use prymcheck::constructions::{
    build_phis, dihedral_product, fiber_product, genus_table, grid_correspondence,
    jacobian_decomposition, pair_action, showcase_lattice, verify_dimension_additivity,
    verify_equivariance, verify_kanev_equals_grid, verify_product_exponent, verify_pullback,
    Genera, ProductPresentation,
};
use prymcheck::pt_engine::{analyze, PTPresentation};
use rayon::prelude::*;

use crate::config::{Command, RunConfig};
use crate::input::presentation;
use crate::report::{Check, MatrixSection, Report};

const DISJOINT_BRANCH_LOCI: &str =
    "the two covers of the line have disjoint branch loci (not checkable from group data)";

/// A validated run, ready to execute.
pub enum Job {
    Verify(Box<PTPresentation>),
    Product(Box<ProductPresentation>),
    DihedralDemo { p: u32, s1: u32, s2: u32 },
    Decompose { p: u32, s1: u32, s2: u32 },
    Regress(Vec<(String, RunConfig)>),
}

/// Fixture directory used when the config names none.
pub fn default_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Fixture configs in `dir`, sorted by file name.
pub fn load_fixtures(dir: &Path) -> Result<Vec<(String, RunConfig)>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read fixture directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    if paths.is_empty() {
        bail!("no fixtures in {}", dir.display());
    }
    paths
        .iter()
        .map(|p| {
            let name = p
                .file_stem()
                .expect("file name")
                .to_string_lossy()
                .into_owned();
            Ok((name, RunConfig::load(p)?))
        })
        .collect()
}

fn dihedral_parameters(cfg: &RunConfig) -> Result<(u32, u32, u32)> {
    let (p, s1, s2) = cfg.dihedral_parameters()?;
    for s in [s1, s2] {
        if s < 4 || s % 2 != 0 {
            bail!("{s} branch points of reflection type; D_p needs an even number >= 4");
        }
    }
    build_phis(p)?;
    Ok((p, s1, s2))
}

/// Resolves every name and validates every parameter. Errors here are input errors.
pub fn prepare(cfg: &RunConfig) -> Result<Job> {
    Ok(match cfg.command()? {
        Command::Verify => Job::Verify(Box::new(presentation(cfg, &cfg.signature)?)),
        Command::Product => {
            let pp = if cfg.group.is_none() {
                let (p, s1, s2) = dihedral_parameters(cfg)?;
                dihedral_product(p, s1, s2)?
            } else {
                let left = presentation(cfg, &cfg.signature)?;
                let right_sig = if cfg.right_signature.is_empty() {
                    &cfg.signature
                } else {
                    &cfg.right_signature
                };
                let right = presentation(cfg, right_sig)?;
                fiber_product(&left, &right)?
            };
            Job::Product(Box::new(pp))
        }
        Command::DihedralDemo => {
            let (p, s1, s2) = dihedral_parameters(cfg)?;
            Job::DihedralDemo { p, s1, s2 }
        }
        Command::Decompose => {
            let (p, s1, s2) = dihedral_parameters(cfg)?;
            Job::Decompose { p, s1, s2 }
        }
        Command::Regress => {
            let dir = cfg.fixtures.clone().unwrap_or_else(default_fixtures);
            let fixtures = load_fixtures(&dir)?;
            for (name, f) in &fixtures {
                if f.command()? == Command::Regress {
                    bail!("fixture {name} is itself a regress run");
                }
            }
            Job::Regress(fixtures)
        }
    })
}

/// Parses, prepares and executes.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let job = prepare(cfg)?;
    Ok(execute(cfg, job))
}

pub fn execute(cfg: &RunConfig, job: Job) -> Report {
    let start = Instant::now();
    let mut report = Report::new(cfg.command.unwrap_or(Command::Verify), cfg);
    match job {
        Job::Verify(pres) => verify(&mut report, &pres),
        Job::Product(pp) => product(&mut report, &pp),
        Job::DihedralDemo { p, s1, s2 } => dihedral_demo(&mut report, p, s1, s2),
        Job::Decompose { p, s1, s2 } => decompose(&mut report, p, s1, s2),
        Job::Regress(fixtures) => regress(&mut report, &fixtures),
    }
    let mut report = report.finish();
    report.timing.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

fn list<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn opt(v: &Option<String>) -> String {
    v.clone().unwrap_or_else(|| "undefined".into())
}

/// Checks of one presentation, names prefixed by `prefix`.
fn presentation_checks(report: &mut Report, pres: &PTPresentation, prefix: &str) {
    let (r, kanev) = analyze(pres);
    let name = |s: &str| format!("{prefix}{s}");
    if !r.errors.is_empty() {
        report.check(Check::new(name("computations"), false).witnesses(r.errors.clone()));
    }
    match &r.hypothesis {
        Some(h) => report.check(
            Check::new(name("hypothesis"), h.all())
                .value("a", h.a)
                .value("b", h.b)
                .value("c", h.c)
                .value("d", h.d)
                .value("fixed_dims", list(&h.fixed_dims))
                .witnesses(h.witnesses.clone()),
        ),
        None => report.check(Check::new(name("hypothesis"), false)),
    }
    report.check(
        Check::new(name("exponent"), r.b.is_some() && r.q.is_some())
            .value("b", opt(&r.b))
            .value("q", opt(&r.q))
            .value("coefficients", list(&r.coefficients))
            .value("double_coset_sizes", list(&r.double_coset_sizes)),
    );
    report.check(
        Check::new(name("signature_condition"), r.condition_holds == Some(true))
            .value("brackets", list(&r.brackets))
            .value("total", opt(&r.condition_total)),
    );
    let flag = |b: Option<bool>| b.map_or("undefined".to_string(), |b| b.to_string());
    report.check(
        Check::new(
            name("kanev_correspondence"),
            r.kanev_effective == Some(true)
                && r.kanev_symmetric == Some(true)
                && r.kanev_fixed_point_free == Some(true),
        )
        .value("coefficients", list(&r.kanev))
        .value("effective", flag(r.kanev_effective))
        .value("symmetric", flag(r.kanev_symmetric))
        .value("fixed_point_free", flag(r.kanev_fixed_point_free))
        .value("degree", opt(&r.kanev_degree)),
    );
    report.check(
        Check::new(
            name("quadratic_certificate"),
            r.quadratic_certificate.is_some(),
        )
        .value("c", opt(&r.quadratic_certificate)),
    );
    let values = [
        ("b", &r.b),
        ("q", &r.q),
        ("dimension", &r.dimension),
        ("genus", &r.genus),
        ("total_space_genus", &r.total_space_genus),
        ("certificate", &r.quadratic_certificate),
    ];
    for (k, v) in values {
        if let Some(v) = v {
            report.value(&name(k), v);
        }
    }
    report.value(&name("group_order"), r.group_order);
    report.value(&name("index"), pres.index());
    report.value(&name("coefficients"), list(&r.coefficients));
    if let Some(k) = kanev {
        report
            .matrices
            .push(MatrixSection::from_corr(name("kanev"), &k));
    }
}

fn verify(report: &mut Report, pres: &PTPresentation) {
    presentation_checks(report, pres, "");
}

fn product(report: &mut Report, pp: &ProductPresentation) {
    report.assumptions.push(DISJOINT_BRANCH_LOCI.into());
    presentation_checks(report, &pp.product, "");
    product_checks(report, pp);
}

/// Exponent scaling, pullback and dimension additivity.
fn product_checks(report: &mut Report, pp: &ProductPresentation) {
    match verify_product_exponent(pp) {
        Ok(x) => report.check(
            Check::new("product_exponent", x.scaling_ok)
                .value("b_base", &x.b_base)
                .value("q_base", &x.q_base)
                .value("b_product", &x.b_product)
                .value("q_product", &x.q_product)
                .value("index", x.index)
                .value("subgroup_order", x.subgroup_order),
        ),
        Err(e) => report.check(Check::error("product_exponent", e)),
    }
    match verify_pullback(pp) {
        Ok(x) => {
            let nonzero = x.residual.as_ref().map_or(0, |m| {
                m.to_rows()
                    .iter()
                    .flatten()
                    .filter(|v| **v != 0.into())
                    .count()
            });
            report.check(
                Check::new("pullback_identity", x.holds)
                    .value("base_coefficients", list(&x.base_coefficients))
                    .value("product_coefficients", list(&x.product_coefficients))
                    .value("residual_nonzero_entries", nonzero),
            );
            report.check(Check::new("coefficient_identity", x.coefficient_identity));
            if let Some(res) = &x.residual {
                report.matrices.push(MatrixSection::new(
                    "pullback_residual",
                    x.product.labels.clone(),
                    res,
                ));
            }
        }
        Err(e) => report.check(Check::error("pullback_identity", e)),
    }
    match verify_dimension_additivity(pp) {
        Ok(x) => report.check(
            Check::new("dimension_additivity", x.holds)
                .value("product", &x.product_dim)
                .value("left", &x.left_dim)
                .value("right", &x.right_dim)
                .value("left_genus", &x.left_genus)
                .value("right_genus", &x.right_genus),
        ),
        Err(e) => report.check(Check::error("dimension_additivity", e)),
    }
}

fn genera_values(report: &mut Report, g: &Genera) {
    report.value("genus_Y", &g.y);
    for (j, y) in g.y_tilde.iter().enumerate() {
        report.value(&format!("genus_Y~_{}", j + 1), y);
    }
    report.value("genus_X_1", &g.x1);
    report.value("genus_X_2", &g.x2);
    report.value("genus_X", &g.x);
    report.value("genus_Z", &g.z);
}

fn genus_checks(report: &mut Report, p: u32, s1: u32, s2: u32) {
    match genus_table(p, s1, s2) {
        Ok(t) => {
            report.check(
                Check::new("genera_closed_forms_match_lattice", t.agree)
                    .value("x2_printed_reading", &t.x2_with_s1)
                    .witnesses(t.disagreements.clone()),
            );
            report.check(Check::new("genera_etale_consistent", t.etale_consistent));
            report.check(Check::new("genera_bookkeeping", t.bookkeeping));
            genera_values(report, &t.lattice);
        }
        Err(e) => report.check(Check::error("genus_table", e)),
    }
}

fn decomposition_checks(report: &mut Report, p: u32, s1: u32, s2: u32) {
    let d = match jacobian_decomposition(p, s1, s2) {
        Ok(d) => d,
        Err(e) => return report.check(Check::error("jacobian_decomposition", e)),
    };
    for id in &d.identities {
        let c = Check::new(format!("identity {}", id.name), id.holds);
        report.check(match &id.counterexample {
            Some(x) => c.witness(format!("differs at {x}")),
            None => c,
        });
    }
    for curve in &d.curves {
        let summands = curve
            .summands
            .iter()
            .map(|s| format!("{}^{} (dim {})", s.name, s.multiplicity, s.dimension));
        report.check(
            Check::new(
                format!("decomposition {}", curve.curve),
                curve.as_predicted && curve.total_dimension == curve.expected_dimension,
            )
            .value("dimension", &curve.total_dimension)
            .value("expected", &curve.expected_dimension)
            .witnesses(summands),
        );
    }
    report.check(Check::new("component_dimensions", d.component_dimensions));
    report.value("additive_u_rule_agrees", d.additive_u_rule_agrees);
}

fn dihedral_demo(report: &mut Report, p: u32, s1: u32, s2: u32) {
    report.assumptions.push(DISJOINT_BRANCH_LOCI.into());
    report.value("p", p);
    match dihedral_product(p, s1, s2) {
        Ok(pp) => {
            presentation_checks(report, &pp.product, "product.");
            product_checks(report, &pp);
        }
        Err(e) => report.check(Check::error("product", e)),
    }
    match build_phis(p).and_then(|phis| Ok((pair_action(&phis)?, phis))) {
        Ok((a, phis)) => report.check(
            Check::new(
                "phi_action_on_pairs",
                a.orbit_size == (p * p) as usize && a.stabilizer_is_klein,
            )
            .value("orbit_size", a.orbit_size)
            .value("stabilizer_is_klein", a.stabilizer_is_klein)
            .witnesses(
                phis.phis
                    .iter()
                    .enumerate()
                    .map(|(k, x)| format!("phi_{} = {x}", k + 1)),
            ),
        ),
        Err(e) => report.check(Check::error("phi_action_on_pairs", e)),
    }
    match grid_correspondence(p).and_then(|gc| Ok((verify_equivariance(&gc)?, gc))) {
        Ok((eq, gc)) => {
            for g in &eq.generators {
                report.check(
                    Check::new(
                        format!("equivariance {}", g.name),
                        g.commutes && g.formula_matches_action,
                    )
                    .value("commutes", g.commutes)
                    .value("formula_matches_action", g.formula_matches_action),
                );
            }
            report
                .matrices
                .push(MatrixSection::from_corr("grid", &gc.corr));
        }
        Err(e) => report.check(Check::error("equivariance", e)),
    }
    match verify_kanev_equals_grid(p, s1, s2) {
        Ok(k) => {
            let props = &k.kanev_properties;
            report.check(
                Check::new(
                    "kanev_equals_grid",
                    k.equal
                        && props.symmetric
                        && props.fixed_point_free
                        && props.quadratic_certificate.is_some(),
                )
                .value("q", &k.exponent)
                .value(
                    "degree",
                    props
                        .degree
                        .as_ref()
                        .map_or("undefined".into(), ToString::to_string),
                )
                .value(
                    "certificate",
                    props
                        .quadratic_certificate
                        .as_ref()
                        .map_or("undefined".into(), ToString::to_string),
                )
                .value(
                    "predicted_certificate",
                    props
                        .predicted_certificate
                        .as_ref()
                        .map_or("undefined".into(), ToString::to_string),
                ),
            );
            if let Some(res) = &k.residual {
                report.matrices.push(MatrixSection::new(
                    "kanev_minus_grid",
                    k.grid.corr.labels.clone(),
                    res,
                ));
            }
        }
        Err(e) => report.check(Check::error("kanev_equals_grid", e)),
    }
    match showcase_lattice(p) {
        Ok(l) => {
            for c in &l.claims {
                report.check(
                    Check::new(format!("lattice {}", c.name), c.holds).witness(c.detail.clone()),
                );
            }
            report.value("subgroup_count", l.subgroup_count);
            for (name, order) in &l.orders {
                report.value(&format!("order {name}"), order);
            }
        }
        Err(e) => report.check(Check::error("lattice", e)),
    }
    genus_checks(report, p, s1, s2);
    decomposition_checks(report, p, s1, s2);
}

fn decompose(report: &mut Report, p: u32, s1: u32, s2: u32) {
    report.value("p", p);
    genus_checks(report, p, s1, s2);
    decomposition_checks(report, p, s1, s2);
}

/// Runs one fixture and compares its `expect` map with the report values.
fn run_fixture(name: &str, cfg: &RunConfig) -> Check {
    let report = match run(cfg) {
        Ok(r) => r,
        Err(e) => {
            return Check::new(format!("fixture {name}"), false)
                .witness(format!("input error: {e:#}"))
        }
    };
    let mut witnesses: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("failed check {}", c.name))
        .collect();
    for (k, want) in &cfg.expect {
        match report.values.get(k) {
            Some(got) if got == want => {}
            Some(got) => witnesses.push(format!("{k}: expected {want}, got {got}")),
            None => witnesses.push(format!("{k}: expected {want}, not reported")),
        }
    }
    Check::new(
        format!("fixture {name}"),
        report.passed && witnesses.is_empty(),
    )
    .value("command", report.command)
    .value("checks", report.checks.len())
    .value("expectations", cfg.expect.len())
    .witnesses(witnesses)
}

fn regress(report: &mut Report, fixtures: &[(String, RunConfig)]) {
    let checks: Vec<Check> = fixtures
        .par_iter()
        .map(|(name, cfg)| run_fixture(name, cfg))
        .collect();
    report.value("fixtures", fixtures.len());
    report.checks.extend(checks);
}
