//! Permutation groups by full element enumeration.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_divisors, valuation};
use crate::perm::Perm;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 20_000;

/// A finite permutation group with its elements enumerated in
/// lexicographic order of image sequences. Index 0 is always the identity.
///
/// Subgroups keep the degree of the group they were cut out of.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// Result of [`PermGroup::subgroup_tests`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgroupInfo {
    pub is_subgroup: bool,
    pub is_normal: bool,
    pub index: Option<u64>,
}

/// Result of [`PermGroup::structure_predicates`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureInfo {
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    pub pi: Vec<u64>,
}

fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Perm> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        Self::from_generators_with_cap(degree, gens, DEFAULT_CAP)
    }

    pub fn from_generators_with_cap(degree: usize, gens: Vec<Perm>, cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Validation("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let elements = closure(degree, &gens, cap)?;
        Ok(Self::assemble(degree, gens, elements))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::assemble(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    fn assemble(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
        }
    }

    /// Wraps an already closed, sorted element set, choosing generators
    /// greedily in element order.
    fn from_closed_elements(degree: usize, elements: Vec<Perm>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let mut gens: Vec<Perm> = Vec::new();
        let mut current: HashSet<Perm> = [Perm::identity(degree)].into_iter().collect();
        for x in &elements {
            if !current.contains(x) {
                gens.push(x.clone());
                current = closure(degree, &gens, usize::MAX)
                    .expect("uncapped closure")
                    .into_iter()
                    .collect();
                if current.len() == elements.len() {
                    break;
                }
            }
        }
        Self::assemble(degree, gens, elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
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

    pub fn index_of(&self, x: &Perm) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.index.contains_key(x)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    /// Index of the product of elements `a` and `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// True when every element of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|x| other.contains(x))
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subset_of(other)
    }

    /// Subgroup generated by elements of `self`.
    pub fn subgroup_generated(&self, gens: &[Perm]) -> Result<PermGroup> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(Error::NotInGroup);
        }
        let elements = closure(self.degree, gens, usize::MAX)?;
        Ok(Self::assemble(self.degree, gens.to_vec(), elements))
    }

    /// Subgroup consisting of the elements satisfying `keep`; the caller
    /// guarantees closure.
    pub(crate) fn subgroup_by_filter(&self, keep: impl Fn(&Perm) -> bool) -> PermGroup {
        let elements = self.elements.iter().filter(|x| keep(x)).cloned().collect();
        Self::from_closed_elements(self.degree, elements)
    }

    pub fn centralizer(&self, x: &Perm) -> Result<PermGroup> {
        if !self.contains(x) {
            return Err(Error::NotInGroup);
        }
        Ok(self.subgroup_by_filter(|g| g.compose(x) == x.compose(g)))
    }

    /// `{g in G : C^g = C}` for a subset `set` given by its elements.
    pub fn set_stabilizer(&self, set: &[Perm]) -> PermGroup {
        let members: HashSet<&Perm> = set.iter().collect();
        self.subgroup_by_filter(|g| set.iter().all(|c| members.contains(&c.conjugate_by(g))))
    }

    pub fn subgroup_tests(&self, h: &PermGroup) -> SubgroupInfo {
        let is_subgroup = h.degree == self.degree && h.generators.iter().all(|g| self.contains(g));
        if !is_subgroup {
            return SubgroupInfo {
                is_subgroup: false,
                is_normal: false,
                index: None,
            };
        }
        let is_normal = self
            .generators
            .iter()
            .all(|g| h.generators.iter().all(|x| h.contains(&x.conjugate_by(g))));
        SubgroupInfo {
            is_subgroup,
            is_normal,
            index: Some(self.order() / h.order()),
        }
    }

    pub fn is_normal_subgroup(&self, h: &PermGroup) -> bool {
        self.subgroup_tests(h).is_normal
    }

    /// Smallest normal subgroup of `self` containing `set`.
    pub fn normal_closure(&self, set: &[Perm]) -> PermGroup {
        let mut gens: Vec<Perm> = set.iter().filter(|x| !x.is_identity()).cloned().collect();
        let mut current: HashSet<Perm> = closure(self.degree, &gens, usize::MAX)
            .expect("uncapped closure")
            .into_iter()
            .collect();
        loop {
            let mut grew = false;
            'scan: for x in gens.clone() {
                for g in &self.generators {
                    let y = x.conjugate_by(g);
                    if !current.contains(&y) {
                        gens.push(y);
                        current = closure(self.degree, &gens, usize::MAX)
                            .expect("uncapped closure")
                            .into_iter()
                            .collect();
                        grew = true;
                        break 'scan;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut elements: Vec<Perm> = current.into_iter().collect();
        elements.sort();
        Self::from_closed_elements(self.degree, elements)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut commutators = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                if !c.is_identity() {
                    commutators.push(c);
                }
            }
        }
        self.normal_closure(&commutators)
    }

    /// The subgroup `H^g = g^-1 H g`.
    pub fn conjugate_subgroup(&self, h: &PermGroup, g: &Perm) -> PermGroup {
        let mut elements: Vec<Perm> = h.elements.iter().map(|x| x.conjugate_by(g)).collect();
        elements.sort();
        let gens = h.generators.iter().map(|x| x.conjugate_by(g)).collect();
        Self::assemble(self.degree, gens, elements)
    }

    /// Some `g` in `self` with `a^g = b` as subgroups, if one exists.
    pub fn conjugating_element(&self, a: &PermGroup, b: &PermGroup) -> Option<Perm> {
        if a.order() != b.order() {
            return None;
        }
        self.elements
            .iter()
            .find(|g| a.generators.iter().all(|x| b.contains(&x.conjugate_by(g))))
            .cloned()
    }

    fn normalizes(&self, g: &Perm, h: &HashSet<Perm>, h_gens: &[Perm]) -> bool {
        h_gens.iter().all(|x| h.contains(&x.conjugate_by(g)))
    }

    /// A Sylow p-subgroup, grown from a cyclic p-subgroup by adjoining
    /// normalizing p-elements in element order.
    pub fn sylow_subgroup(&self, p: u64) -> Result<PermGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let target = p.pow(valuation(self.order(), p));
        let mut gens: Vec<Perm> = Vec::new();
        if let Some(x) = self.elements.iter().find(|x| x.order() % p == 0) {
            let o = x.order();
            gens.push(x.pow(o / p.pow(valuation(o, p))));
        }
        let mut current: HashSet<Perm> = closure(self.degree, &gens, usize::MAX)?.into_iter().collect();
        while (current.len() as u64) < target {
            let next = self.elements.iter().find(|g| {
                !current.contains(*g)
                    && g.order() == p.pow(valuation(g.order(), p))
                    && self.normalizes(g, &current, &gens)
            });
            let g = next.expect("a proper p-subgroup has a normalizing p-element outside it");
            gens.push(g.clone());
            current = closure(self.degree, &gens, usize::MAX)?.into_iter().collect();
        }
        let mut elements: Vec<Perm> = current.into_iter().collect();
        elements.sort();
        Ok(Self::assemble(self.degree, gens, elements))
    }

    /// Largest normal p'-subgroup: the product of the normal closures of
    /// p'-classes whose closure is itself a p'-group.
    pub fn o_p_prime(&self, p: u64) -> Result<PermGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut included: Vec<Perm> = Vec::new();
        let mut seen: HashSet<Perm> = HashSet::new();
        for x in &self.elements {
            if x.is_identity() || x.order() % p == 0 || seen.contains(x) {
                continue;
            }
            for g in &self.elements {
                seen.insert(x.conjugate_by(g));
            }
            let closure = self.normal_closure(std::slice::from_ref(x));
            if closure.order() % p != 0 {
                included.push(x.clone());
            }
        }
        Ok(self.normal_closure(&included))
    }

    pub fn structure_predicates(&self) -> StructureInfo {
        let pi = prime_divisors(self.order());
        let mut current = self.clone();
        while current.order() > 1 {
            let next = current.derived_subgroup();
            if next.order() == current.order() {
                break;
            }
            current = next;
        }
        let is_solvable = current.order() == 1;
        let is_nilpotent = pi.iter().all(|&p| {
            let s = self.sylow_subgroup(p).expect("prime");
            self.is_normal_subgroup(&s)
        });
        StructureInfo {
            is_solvable,
            is_nilpotent,
            pi,
        }
    }

    /// Whether `self / n` is solvable, for a normal subgroup `n`.
    pub fn quotient_is_solvable(&self, n: &PermGroup) -> bool {
        let mut current = self.clone();
        loop {
            if current.is_subset_of(n) {
                return true;
            }
            let next = current.derived_subgroup();
            if next.order() == current.order() {
                return false;
            }
            current = next;
        }
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, c).unwrap()
    }

    fn a4() -> PermGroup {
        PermGroup::from_generators(4, vec![cyc(4, &[&[1, 2, 3]]), cyc(4, &[&[1, 2], &[3, 4]])]).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::from_generators(4, vec![cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])]).unwrap()
    }

    fn c7c3() -> PermGroup {
        PermGroup::from_generators(
            7,
            vec![cyc(7, &[&[1, 2, 3, 4, 5, 6, 7]]), cyc(7, &[&[2, 3, 5], &[4, 7, 6]])],
        )
        .unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(a4().order(), 12);
        assert_eq!(PermGroup::from_generators(3, vec![]).unwrap().order(), 1);
        assert_eq!(c7c3().order(), 21);
        assert!(a4().element(0).is_identity());
    }

    #[test]
    fn closure_errors() {
        assert!(matches!(
            PermGroup::from_generators(4, vec![cyc(3, &[&[1, 2]])]),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            PermGroup::from_generators_with_cap(4, s4().generators().to_vec(), 10),
            Err(Error::GroupTooLarge { cap: 10 })
        ));
    }

    #[test]
    fn centralizers() {
        let g = a4();
        assert_eq!(g.centralizer(&g.identity()).unwrap().order(), 12);
        let v = cyc(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(g.centralizer(&v).unwrap().order(), 4);
        assert_eq!(s4().centralizer(&v).unwrap().order(), 8);
        assert!(g.centralizer(&cyc(4, &[&[1, 2]])).is_err());
    }

    #[test]
    fn subgroup_relations() {
        let g = a4();
        let k4 = g
            .subgroup_generated(&[cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])])
            .unwrap();
        assert_eq!(
            g.subgroup_tests(&k4),
            SubgroupInfo { is_subgroup: true, is_normal: true, index: Some(3) }
        );
        let s = s4();
        assert_eq!(s.subgroup_tests(&g).index, Some(2));
        assert!(s.subgroup_tests(&g).is_normal);
        let t = s.subgroup_generated(&[cyc(4, &[&[1, 2]])]).unwrap();
        assert_eq!(
            s.subgroup_tests(&t),
            SubgroupInfo { is_subgroup: true, is_normal: false, index: Some(12) }
        );
    }

    #[test]
    fn sylow() {
        let g = a4();
        let p2 = g.sylow_subgroup(2).unwrap();
        assert_eq!(p2.order(), 4);
        assert!(g.is_normal_subgroup(&p2));
        assert_eq!(s4().sylow_subgroup(3).unwrap().order(), 3);
        assert_eq!(s4().sylow_subgroup(2).unwrap().order(), 8);
        assert_eq!(PermGroup::trivial(3).sylow_subgroup(5).unwrap().order(), 1);
        assert!(g.sylow_subgroup(4).is_err());
    }

    #[test]
    fn o_p_prime_examples() {
        let g = a4();
        let o = g.o_p_prime(3).unwrap();
        assert_eq!(o.order(), 4);
        assert_eq!(s4().o_p_prime(2).unwrap().order(), 1);
        let k4 = PermGroup::from_generators(4, vec![cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])]).unwrap();
        assert_eq!(k4.o_p_prime(2).unwrap().order(), 1);
    }

    #[test]
    fn predicates() {
        let s = s4().structure_predicates();
        assert_eq!(s, StructureInfo { is_solvable: true, is_nilpotent: false, pi: vec![2, 3] });
        let c = c7c3().structure_predicates();
        assert_eq!(c, StructureInfo { is_solvable: true, is_nilpotent: false, pi: vec![3, 7] });
        let a5 = PermGroup::from_generators(5, vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2, 3]])]).unwrap();
        assert!(!a5.structure_predicates().is_solvable);
    }

    #[test]
    fn derived_series_of_s4() {
        let s = s4();
        let d1 = s.derived_subgroup();
        assert_eq!(d1.order(), 12);
        assert_eq!(d1.derived_subgroup().order(), 4);
    }
}
