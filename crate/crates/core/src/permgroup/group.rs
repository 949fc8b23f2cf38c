use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use super::{IndexSet, Perm};
use crate::error::{Error, Result};

/// Default refusal threshold for [`PermGroup::generate`].
pub const DEFAULT_ORDER_CAP: usize = 100_000;

/// Groups up to this order get a precomputed multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A finite permutation group with every element materialized.
///
/// Elements are sorted lexicographically by image array, so the identity is
/// always element 0 and every index-based structure derived from the group
/// is reproducible.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    table: OnceLock<Vec<u32>>,
    inverses: OnceLock<Vec<u32>>,
    classes: OnceLock<(Vec<Vec<usize>>, Vec<usize>)>,
}

impl PermGroup {
    pub fn generate(degree: usize, gens: &[Perm]) -> Result<Self> {
        Self::generate_with_cap(degree, gens, DEFAULT_ORDER_CAP)
    }

    /// Closes `gens` under multiplication by breadth-first products.
    pub fn generate_with_cap(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in gens {
                let y = x.then(s);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::OrderCapExceeded {
                            cap,
                            partial: seen.len() + 1,
                        });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_keys().collect();
        Ok(Self::from_closed(degree, gens.to_vec(), elements))
    }

    /// Builds a group from an element list already known to be closed.
    pub(crate) fn from_closed(
        degree: usize,
        generators: Vec<Perm>,
        mut elements: Vec<Perm>,
    ) -> Self {
        elements.sort();
        let lookup = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Self {
            degree,
            generators,
            elements,
            lookup,
            table: OnceLock::new(),
            inverses: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::from_closed(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    /// Subgroup generated by `gens`, each of which must lie in `self`.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermGroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::NotASubgroup(format!("{g} is not in the group")));
            }
        }
        Self::generate(self.degree, gens)
    }

    /// Subgroup whose elements are the given (closed) set of indices.
    /// Generators are chosen greedily in element order.
    pub fn subgroup_from_set(&self, set: &IndexSet) -> PermGroup {
        let elements: Vec<Perm> = set.iter().map(|i| self.elements[i].clone()).collect();
        let mut gens = Vec::new();
        let mut span = IndexSet::from_indices(self.order(), [0]);
        for i in set.iter() {
            if !span.contains(i) {
                gens.push(i);
                span = self.closure(&gens);
            }
        }
        let gens = gens.into_iter().map(|i| self.elements[i].clone()).collect();
        Self::from_closed(self.degree, gens, elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn identity(&self) -> &Perm {
        &self.elements[0]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.lookup.contains_key(g)
    }

    /// Index of the product `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let n = self.order();
        if n <= TABLE_LIMIT {
            let t = self.table.get_or_init(|| {
                let mut t = vec![0u32; n * n];
                for a in 0..n {
                    for b in 0..n {
                        t[a * n + b] =
                            self.lookup[&self.elements[a].then(&self.elements[b])] as u32;
                    }
                }
                t
            });
            t[i * n + j] as usize
        } else {
            self.lookup[&self.elements[i].then(&self.elements[j])]
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        let inv = self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|g| self.lookup[&g.inverse()] as u32)
                .collect()
        });
        inv[i] as usize
    }

    /// Index of `g^-1 x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Closure of a set of element indices under multiplication.
    pub fn closure(&self, seeds: &[usize]) -> IndexSet {
        let mut set = IndexSet::from_indices(self.order(), [0]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in seeds {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Index set of a subgroup's elements within `self`.
    pub fn indices_of(&self, sub: &PermGroup) -> Result<IndexSet> {
        if sub.degree != self.degree {
            return Err(Error::NotASubgroup(format!(
                "degree {} vs {}",
                sub.degree, self.degree
            )));
        }
        let mut set = IndexSet::new(self.order());
        for g in &sub.elements {
            let i = self
                .index_of(g)
                .ok_or_else(|| Error::NotASubgroup(format!("{g} is not in the group")))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    /// Conjugacy classes as lists of element indices, ordered by smallest member;
    /// and the class index of every element.
    pub fn conjugacy_classes(&self) -> &(Vec<Vec<usize>>, Vec<usize>) {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for x in 0..n {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let c = classes.len();
                let mut members = Vec::new();
                for g in 0..n {
                    let y = self.conj(x, g);
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        members.push(y);
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            (classes, class_of)
        })
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.conjugacy_classes().1[i]
    }

    pub fn num_classes(&self) -> usize {
        self.conjugacy_classes().0.len()
    }

    /// Size of the centralizer of element `i`.
    pub fn centralizer_order(&self, i: usize) -> usize {
        (0..self.order())
            .filter(|&g| self.mul(i, g) == self.mul(g, i))
            .count()
    }
}

/// `A x B` acting on the disjoint union of the point sets, `A` first.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let ida = a.identity().clone();
    let idb = b.identity().clone();
    let mut gens: Vec<Perm> = a.generators.iter().map(|g| g.juxtapose(&idb)).collect();
    gens.extend(b.generators.iter().map(|g| ida.juxtapose(g)));
    let mut elements = Vec::with_capacity(a.order() * b.order());
    for x in &a.elements {
        for y in &b.elements {
            elements.push(x.juxtapose(y));
        }
    }
    PermGroup::from_closed(a.degree + b.degree, gens, elements)
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        Self::from_closed(self.degree, self.generators.clone(), self.elements.clone())
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(Perm::to_string).collect();
        write!(f, "<{}> (order {})", gens.join(", "), self.order())
    }
}
