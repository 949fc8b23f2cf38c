use super::{inner_product, ClassFunction};
use crate::error::{Error, Result};

/// A rational irreducible representation, given by the Galois orbit of one
/// of its complex irreducible constituents.
#[derive(Clone, Debug)]
pub struct RationalRep {
    pub name: String,
    /// Galois conjugates of the seed, seed first, ordered by the smallest `k`
    /// with `zeta -> zeta^k` producing them.
    pub orbit: Vec<ClassFunction>,
    /// Common complex dimension `n`.
    pub dim: usize,
    /// `[K_V : Q]` for the character field `K_V`; equals the orbit length.
    pub field_degree: usize,
    pub schur_index: usize,
}

impl RationalRep {
    pub fn seed(&self) -> &ClassFunction {
        &self.orbit[0]
    }

    pub fn with_schur_index(mut self, m: usize) -> Self {
        self.schur_index = m;
        self
    }

    /// Character of the rational representation: `m` times the orbit sum.
    pub fn character(&self) -> ClassFunction {
        let mut acc = self.orbit[0].clone();
        for c in &self.orbit[1..] {
            acc = acc.try_add(c).expect("orbit shares group and conductor");
        }
        acc.scale(self.schur_index as i64)
    }

    /// Units fixing the seed character; determines `K_V`.
    pub fn galois_stabilizer(&self) -> Vec<u32> {
        self.orbit[0].galois_stabilizer()
    }

    /// `[Q(zeta_p) : K_V]`, the factor relating full traces to traces from `K_V`.
    pub fn trace_index(&self) -> usize {
        self.galois_stabilizer().len()
    }

    /// Whether this is the trivial representation.
    pub fn is_trivial(&self) -> bool {
        let t = ClassFunction::trivial(self.orbit[0].group().clone(), self.orbit[0].conductor());
        self.orbit.len() == 1 && self.orbit[0] == t
    }

    /// Complex dimension of the whole rational representation.
    pub fn rational_dim(&self) -> usize {
        self.dim * self.field_degree * self.schur_index
    }
}

/// Closes an irreducible character under the Galois action.
pub fn rational_rep_of(seed: &ClassFunction, name: &str) -> Result<RationalRep> {
    let norm = inner_product(seed, seed)?;
    if norm != crate::exact_algebra::rat(1) {
        return Err(Error::Reducible(norm.to_string()));
    }
    let dim = seed.degree()?;
    let mut orbit: Vec<ClassFunction> = Vec::new();
    for k in 1..seed.conductor() as i64 {
        let c = seed.galois(k)?;
        if !orbit.contains(&c) {
            orbit.push(c);
        }
    }
    let field_degree = orbit.len();
    if !(seed.conductor() as usize - 1).is_multiple_of(field_degree) {
        return Err(Error::Consistency(
            "orbit length does not divide p - 1".into(),
        ));
    }
    Ok(RationalRep {
        name: name.to_string(),
        orbit,
        dim,
        field_degree,
        schur_index: 1,
    })
}

/// Representative of `k` modulo `p` up to sign, in `1..=(p-1)/2`.
pub(crate) fn fold_index(p: u32, k: i64) -> u32 {
    let r = k.rem_euclid(p as i64) as u32;
    r.min(p - r)
}

/// Index pairs `(i, k)` with `V_i (x) V_k` in the Galois orbit of `V_1 (x) V_j`:
/// the conjugate by `zeta -> zeta^i` is `V_i (x) V_{ij}`.
pub fn u_pairs_galois(p: u32, j: u32) -> Vec<(u32, u32)> {
    (1..=(p - 1) / 2)
        .map(|i| (i, fold_index(p, i as i64 * j as i64)))
        .collect()
}

/// Index pairs from the additive rule `k = j + i - 1`, wrapped into `1..=(p-1)/2`.
pub fn u_pairs_printed_rule(p: u32, j: u32) -> Vec<(u32, u32)> {
    let m = (p - 1) / 2;
    (1..=m).map(|i| (i, (j + i - 2) % m + 1)).collect()
}
