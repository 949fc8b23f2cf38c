use serde::{Deserialize, Serialize};

use super::{
    check_hypothesis, coefficients, corr_matrix, exponent_from, kanev_from, matrix_properties,
    pt_dimension, quotient_genus, signature_condition, total_space_genus, CorrMatrix,
    HypothesisReport, PTPresentation,
};
use crate::permgroup::Perm;

/// Statement of what the checks establish, carried in every report.
pub const SCOPE_NOTE: &str = "All checks are exact combinatorial identities on cosets, \
characters and integer matrices. The quadratic certificate verifies \
M^2 + (q-2)M - (q-1)I = cJ on the fiber module, which is the identity \
gamma^2 + (q-2)gamma - (q-1) = 0 restricted to degree-zero divisors supported on a \
generic fiber; statements about polarizations and isomorphisms of abelian \
varieties are not checked.";

/// Every quantity of a presentation, exact values as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub reps: Vec<String>,
    /// `(generators of G_j, s_j)`.
    pub signature: Vec<(Vec<String>, u32)>,
    pub hypothesis: Option<HypothesisReport>,
    pub double_coset_sizes: Vec<usize>,
    pub coefficients: Vec<String>,
    pub b: Option<String>,
    pub q: Option<String>,
    pub brackets: Vec<String>,
    pub condition_total: Option<String>,
    pub condition_holds: Option<bool>,
    pub dimension: Option<String>,
    pub genus: Option<String>,
    pub total_space_genus: Option<String>,
    pub kanev: Vec<String>,
    pub kanev_effective: Option<bool>,
    pub kanev_symmetric: Option<bool>,
    pub kanev_fixed_point_free: Option<bool>,
    pub kanev_degree: Option<String>,
    pub quadratic_certificate: Option<String>,
    /// Failed computations, as `step: message`.
    pub errors: Vec<String>,
    pub scope: String,
}

impl PresentationReport {
    /// Whether every computation succeeded and every check passed.
    pub fn passes(&self) -> bool {
        self.errors.is_empty()
            && self.hypothesis.as_ref().is_some_and(HypothesisReport::all)
            && self.condition_holds == Some(true)
            && self.kanev_effective == Some(true)
            && self.kanev_symmetric == Some(true)
            && self.kanev_fixed_point_free == Some(true)
            && self.quadratic_certificate.is_some()
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Runs every computation on a presentation; failures are recorded in the
/// report rather than aborting. The Kanev matrix is returned alongside.
pub fn analyze(pres: &PTPresentation) -> (PresentationReport, Option<CorrMatrix>) {
    let mut errors = Vec::new();
    let mut note = |step: &str, e: crate::Error| errors.push(format!("{step}: {e}"));

    let hypothesis = check_hypothesis(pres)
        .map_err(|e| note("hypothesis", e))
        .ok();
    let coeffs = coefficients(pres).map_err(|e| note("coefficients", e)).ok();
    let exp = coeffs.as_ref().and_then(|c| {
        exponent_from(c, pres.group.order(), pres.dim())
            .map_err(|e| note("exponent", e))
            .ok()
    });
    let condition = exp.as_ref().and_then(|_| {
        signature_condition(pres)
            .map_err(|e| note("signature condition", e))
            .ok()
    });
    let dimension = pt_dimension(pres).map_err(|e| note("dimension", e)).ok();
    let genus = quotient_genus(pres).map_err(|e| note("genus", e)).ok();
    let total = total_space_genus(&pres.signature, pres.group.order())
        .map_err(|e| note("total space genus", e))
        .ok();
    let kanev = match (&coeffs, &exp) {
        (Some(c), Some(e)) => kanev_from(c, &e.b).map_err(|e| note("kanev", e)).ok(),
        _ => None,
    };
    let matrix = kanev.as_ref().and_then(|k| {
        corr_matrix(pres, k)
            .map_err(|e| note("kanev matrix", e))
            .ok()
    });
    let props = match (&matrix, &exp) {
        (Some(m), Some(e)) => matrix_properties(&m.matrix, &e.q)
            .map_err(|e| note("matrix properties", e))
            .ok(),
        _ => None,
    };

    let report = PresentationReport {
        group_order: pres.group.order(),
        subgroup_order: pres.subgroup.order(),
        reps: pres.reps.iter().map(|r| r.name.clone()).collect(),
        signature: pres
            .signature
            .entries
            .iter()
            .map(|e| {
                (
                    e.class_rep
                        .generators()
                        .iter()
                        .map(Perm::to_string)
                        .collect(),
                    e.s,
                )
            })
            .collect(),
        hypothesis,
        double_coset_sizes: pres.double_cosets().sizes.clone(),
        coefficients: coeffs.as_deref().map(strings).unwrap_or_default(),
        b: exp.as_ref().map(|e| e.b.to_string()),
        q: exp.as_ref().map(|e| e.q.to_string()),
        brackets: condition
            .as_ref()
            .map(|c| strings(&c.brackets))
            .unwrap_or_default(),
        condition_total: condition.as_ref().map(|c| c.total.to_string()),
        condition_holds: condition.as_ref().map(|c| c.holds),
        dimension: dimension.map(|d| d.to_string()),
        genus: genus.map(|g| g.to_string()),
        total_space_genus: total.map(|g| g.to_string()),
        kanev: kanev.as_deref().map(strings).unwrap_or_default(),
        kanev_effective: props.as_ref().map(|p| p.effective),
        kanev_symmetric: props.as_ref().map(|p| p.symmetric),
        kanev_fixed_point_free: props.as_ref().map(|p| p.fixed_point_free),
        kanev_degree: props
            .as_ref()
            .and_then(|p| p.degree.as_ref().map(ToString::to_string)),
        quadratic_certificate: props
            .as_ref()
            .and_then(|p| p.quadratic_certificate.as_ref().map(ToString::to_string)),
        errors,
        scope: SCOPE_NOTE.to_string(),
    };
    (report, matrix)
}
