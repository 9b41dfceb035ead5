//! Conjugacy classes with power maps.

use std::collections::VecDeque;

use crate::group::PermGroup;
use crate::numtheory::lcm;
use crate::perm::Perm;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Perm,
    /// Sorted element indices into the parent group.
    pub members: Vec<usize>,
    pub size: u64,
    pub element_order: u64,
}

/// Conjugacy classes of a group in canonical order: by element order, then
/// class size, then smallest member index. Class 0 is the identity class.
#[derive(Clone, Debug)]
pub struct ClassTable {
    group: PermGroup,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    exponent: u64,
    /// `power_map[i][s]` is the class of `rep_i^s` for `0 <= s < exponent`.
    power_map: Vec<Vec<usize>>,
    inverse_map: Vec<usize>,
}

impl ClassTable {
    pub fn new(group: PermGroup) -> Self {
        let n = group.order() as usize;
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for g in group.generators() {
                    let y = group.index_of(&group.element(x).conjugate_by(g)).expect("closed");
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }

        let mut classes: Vec<ConjugacyClass> = raw
            .into_iter()
            .map(|members| {
                let representative = group.element(members[0]).clone();
                ConjugacyClass {
                    element_order: representative.order(),
                    size: members.len() as u64,
                    representative,
                    members,
                }
            })
            .collect();
        classes.sort_by_key(|c| (c.element_order, c.size, c.members[0]));
        for (i, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = i;
            }
        }

        let exponent = classes.iter().fold(1, |acc, c| lcm(acc, c.element_order));
        let power_map = classes
            .iter()
            .map(|c| {
                let mut out = Vec::with_capacity(exponent as usize);
                let mut x = group.identity();
                for _ in 0..exponent {
                    out.push(class_of[group.index_of(&x).expect("closed")]);
                    x = x.compose(&c.representative);
                }
                out
            })
            .collect::<Vec<_>>();
        let inverse_map = power_map
            .iter()
            .map(|row| row[(exponent - 1) as usize % exponent as usize])
            .collect();

        ClassTable {
            group,
            classes,
            class_of,
            exponent,
            power_map,
            inverse_map,
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ConjugacyClass {
        &self.classes[i]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Class of the element with the given index.
    pub fn class_of_index(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn class_of(&self, x: &Perm) -> Option<usize> {
        self.group.index_of(x).map(|i| self.class_of[i])
    }

    /// Class of `rep_i^s`.
    pub fn power(&self, i: usize, s: u64) -> usize {
        self.power_map[i][(s % self.exponent) as usize]
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_map[i]
    }

    pub fn centralizer_order(&self, i: usize) -> u64 {
        self.order() / self.classes[i].size
    }

    /// Classes whose elements have order prime to `p`.
    pub fn p_regular(&self, p: u64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.classes[i].element_order % p != 0)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::from_generators(n, gens.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect()).unwrap()
    }

    fn sizes(ct: &ClassTable) -> Vec<u64> {
        ct.classes().iter().map(|c| c.size).collect()
    }

    /// Classes by testing every pair for conjugacy.
    fn brute_force_classes(g: &PermGroup) -> Vec<Vec<usize>> {
        let n = g.order() as usize;
        let mut assigned = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut cls: Vec<usize> = (0..n)
                .filter(|&y| g.elements().iter().any(|h| g.element(x).conjugate_by(h) == *g.element(y)))
                .collect();
            cls.sort_unstable();
            for &y in &cls {
                assigned[y] = true;
            }
            out.push(cls);
        }
        out
    }

    #[test]
    fn a4_s4_c7c3() {
        let a4 = ClassTable::new(group(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]));
        assert_eq!(sizes(&a4), vec![1, 3, 4, 4]);
        let s4 = ClassTable::new(group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]));
        assert_eq!(s4.len(), 5);
        let f21 = ClassTable::new(group(7, &[&[&[1, 2, 3, 4, 5, 6, 7]], &[&[2, 3, 5], &[4, 7, 6]]]));
        let mut s = sizes(&f21);
        s.sort_unstable();
        assert_eq!(s, vec![1, 3, 3, 7, 7]);
        assert_eq!(f21.exponent(), 21);
    }

    #[test]
    fn class_invariants_and_oracle() {
        for ct in [
            ClassTable::new(group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]])),
            ClassTable::new(group(5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]])),
        ] {
            let g = ct.group();
            assert_eq!(ct.classes().iter().map(|c| c.size).sum::<u64>(), g.order());
            for (i, c) in ct.classes().iter().enumerate() {
                assert_eq!(g.order() % c.size, 0);
                assert_eq!(g.centralizer(&c.representative).unwrap().order() * c.size, g.order());
                assert_eq!(ct.power(i, 1), i);
                assert_eq!(ct.power(i, 0), 0);
                assert_eq!(ct.class(ct.inverse_class(i)).element_order, c.element_order);
            }
            let mut ours: Vec<Vec<usize>> = ct.classes().iter().map(|c| c.members.clone()).collect();
            ours.sort();
            let mut brute = brute_force_classes(g);
            brute.sort();
            assert_eq!(ours, brute);
        }
    }
}
