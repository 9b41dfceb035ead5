//! Blocks across a normal subgroup: conjugation actions, inertia families,
//! covering, and Frobenius corresponding pairs.

mod checks;
mod report;
mod separation;

use std::collections::BTreeMap;
use std::sync::OnceLock;

pub use checks::{
    brauer_counts, counting_checks, find_complement, structural_checks, BrauerCounts, ComplementSearch, CountingRecord,
    FamilyTally, StructuralRecord, Tally,
};
pub use report::{analyze, AnalysisOptions, FrobeniusReport, PairReport, PrimeReport};
pub use separation::{separation_analysis, SeparationRecord};

use crate::blocks::{BlockSystem, ClassBlockAction};
use crate::chartab::{decompose, induce, inner_product, restrict_row, CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// A normal subgroup together with the action of a transversal on its
/// characters and classes.
pub struct NormalEmbedding {
    g: CharacterTable,
    n: CharacterTable,
    class_map: Vec<usize>,
    transversal: Vec<Perm>,
    /// `char_action[t][r]` is the row of `chi_r^t`, `chi^t(x) = chi(t x t^-1)`.
    char_action: Vec<Vec<usize>>,
    /// `class_action[t][c]` is the class of `x_c^t = t^-1 x_c t`.
    class_action: Vec<Vec<usize>>,
    /// Multiplicities of `Irr(N)` in each restricted `chi in Irr(G)`.
    restrictions: Vec<Vec<u64>>,
    induced: Vec<OnceLock<ClassFunction>>,
    systems: BTreeMap<u64, (BlockSystem, BlockSystem)>,
}

/// Right transversal of `n` in `g`: the smallest element of each coset.
pub fn right_transversal(g: &PermGroup, n: &PermGroup) -> Vec<Perm> {
    let mut covered = vec![false; g.order() as usize];
    let mut out = Vec::new();
    for (i, x) in g.elements().iter().enumerate() {
        if covered[i] {
            continue;
        }
        for y in n.elements() {
            covered[g.index_of(&y.compose(x)).expect("subgroup")] = true;
        }
        out.push(x.clone());
    }
    out
}

fn find_row(tbl: &CharacterTable, values: &[Cyclotomic]) -> Result<usize> {
    (0..tbl.len())
        .find(|&r| tbl.row(r) == values)
        .ok_or_else(|| Error::TableInconsistent("conjugate character not found in table".into()))
}

impl NormalEmbedding {
    pub fn new(g: CharacterTable, n: CharacterTable) -> Result<Self> {
        let gg = g.group();
        let ng = n.group();
        if !ng.is_subset_of(gg) {
            return Err(Error::NotSubgroup);
        }
        if !gg.is_normal_subgroup(ng) {
            return Err(Error::NotNormal);
        }
        let nct = n.class_table();
        let class_map = nct
            .classes()
            .iter()
            .map(|c| g.class_table().class_of(&c.representative).expect("subgroup"))
            .collect();
        let transversal = right_transversal(gg, ng);
        let mut char_action = Vec::with_capacity(transversal.len());
        let mut class_action = Vec::with_capacity(transversal.len());
        for t in &transversal {
            let t_inv = t.inverse();
            let fwd: Vec<usize> = nct
                .classes()
                .iter()
                .map(|c| nct.class_of(&c.representative.conjugate_by(t)).expect("normal"))
                .collect();
            let back: Vec<usize> = nct
                .classes()
                .iter()
                .map(|c| nct.class_of(&c.representative.conjugate_by(&t_inv)).expect("normal"))
                .collect();
            let rows = (0..n.len())
                .map(|r| {
                    let v: Vec<Cyclotomic> = back.iter().map(|&c| n.value(r, c).clone()).collect();
                    find_row(&n, &v)
                })
                .collect::<Result<Vec<_>>>()?;
            class_action.push(fwd);
            char_action.push(rows);
        }
        let restrictions = (0..g.len())
            .map(|r| decompose(&restrict_row(&g, r, nct)?, &n))
            .collect::<Result<Vec<_>>>()?;
        let induced = (0..n.len()).map(|_| OnceLock::new()).collect();
        Ok(NormalEmbedding {
            g,
            n,
            class_map,
            transversal,
            char_action,
            class_action,
            restrictions,
            induced,
            systems: BTreeMap::new(),
        })
    }

    pub fn g(&self) -> &CharacterTable {
        &self.g
    }

    pub fn n(&self) -> &CharacterTable {
        &self.n
    }

    pub fn index(&self) -> u64 {
        self.g.group().order() / self.n.group().order()
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_map
    }

    pub fn transversal(&self) -> &[Perm] {
        &self.transversal
    }

    pub fn char_action(&self, t: usize) -> &[usize] {
        &self.char_action[t]
    }

    pub fn class_action(&self, t: usize) -> &[usize] {
        &self.class_action[t]
    }

    /// Multiplicity of `phi in Irr(N)` in `chi_N`.
    pub fn restriction_multiplicity(&self, chi: usize, phi: usize) -> u64 {
        self.restrictions[chi][phi]
    }

    pub fn induced(&self, phi: usize) -> &ClassFunction {
        self.induced[phi].get_or_init(|| {
            induce(self.n.class_table(), self.n.row(phi), self.g.class_table()).expect("N is a subgroup of G")
        })
    }

    /// `chi^t(x^t) = chi(x)` for all rows, classes and transversal elements,
    /// and elements of `N` act trivially.
    pub fn check_actions(&self) -> Result<()> {
        for t in 0..self.transversal.len() {
            for r in 0..self.n.len() {
                for c in 0..self.n.len() {
                    if self.n.value(self.char_action[t][r], self.class_action[t][c]) != self.n.value(r, c) {
                        return Err(Error::TableInconsistent(format!(
                            "action incompatible at transversal element {t}"
                        )));
                    }
                }
            }
        }
        let nct = self.n.class_table();
        for x in self.n.group().generators() {
            for c in nct.classes() {
                if nct.class_of(&c.representative.conjugate_by(x)) != nct.class_of(&c.representative) {
                    return Err(Error::TableInconsistent("N acts nontrivially on its classes".into()));
                }
            }
        }
        Ok(())
    }

    /// Block systems of `G` and `N` at `p`; the partition of `Cl(N)` is
    /// stable under the transversal.
    pub fn prepare(&mut self, p: u64) -> Result<()> {
        if self.systems.contains_key(&p) {
            return Ok(());
        }
        let gs = BlockSystem::new(&self.g, p)?;
        let mut ns = BlockSystem::without_partition(&self.n, p)?;
        let actions: Vec<ClassBlockAction> = (0..self.transversal.len())
            .map(|t| ClassBlockAction {
                classes: self.class_action[t].clone(),
                blocks: (0..ns.len())
                    .map(|b| ns.block_of_char(self.char_action[t][ns.block(b).chars[0]]))
                    .collect(),
            })
            .collect();
        ns.partition_classes(&actions)?;
        self.systems.insert(p, (gs, ns));
        Ok(())
    }

    /// Block systems `(G, N)` at `p`; `prepare(p)` must have run.
    pub fn systems(&self, p: u64) -> &(BlockSystem, BlockSystem) {
        self.systems.get(&p).expect("prepare the prime first")
    }

    pub fn block_action(&self, p: u64, t: usize, b: usize) -> usize {
        let ns = &self.systems(p).1;
        ns.block_of_char(self.char_action[t][ns.block(b).chars[0]])
    }

    /// Subgroup generated by `N` and the transversal elements in `fixing`.
    fn generated_with(&self, fixing: impl Iterator<Item = usize>) -> PermGroup {
        let mut gens: Vec<Perm> = self.n.group().generators().to_vec();
        gens.extend(fixing.map(|t| self.transversal[t].clone()));
        self.g.group().subgroup_generated(&gens).expect("elements of G")
    }

    /// `T(phi)`.
    pub fn inertia_of_character(&self, phi: usize) -> PermGroup {
        self.generated_with((0..self.transversal.len()).filter(|&t| self.char_action[t][phi] == phi))
    }

    /// Inertia families of the blocks of `N` at `p`, one per orbit, keyed by
    /// the smallest block in the orbit.
    pub fn inertia_families(&self, p: u64) -> Vec<InertiaFamily> {
        let ns = &self.systems(p).1;
        let mut seen = vec![false; ns.len()];
        let mut out = Vec::new();
        for b in 0..ns.len() {
            if seen[b] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.transversal.len()).map(|t| self.block_action(p, t, b)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &x in &orbit {
                seen[x] = true;
            }
            let stabilizer: Vec<usize> = (0..self.transversal.len())
                .filter(|&t| self.block_action(p, t, b) == b)
                .collect();
            let mut chars: Vec<usize> = orbit.iter().flat_map(|&x| ns.block(x).chars.iter().copied()).collect();
            let mut classes: Vec<usize> = orbit.iter().flat_map(|&x| ns.block(x).class_set.iter().copied()).collect();
            chars.sort_unstable();
            classes.sort_unstable();
            out.push(InertiaFamily {
                p,
                base: b,
                inertia: self.generated_with(stabilizer.iter().copied()),
                orbit,
                stabilizer,
                chars,
                classes,
            });
        }
        out
    }

    pub fn family_of(&self, p: u64, b: usize) -> InertiaFamily {
        self.inertia_families(p)
            .into_iter()
            .find(|f| f.orbit.contains(&b))
            .expect("every block lies in a family")
    }

    /// Blocks of `G` covering block `b` of `N`.
    pub fn covering_blocks(&self, p: u64, b: usize) -> Vec<usize> {
        let (gs, ns) = self.systems(p);
        let irr_b = &ns.block(b).chars;
        (0..gs.len())
            .filter(|&bg| {
                gs.block(bg)
                    .chars
                    .iter()
                    .any(|&chi| irr_b.iter().any(|&phi| self.restrictions[chi][phi] > 0))
            })
            .collect()
    }

    /// Constituents of every `chi_N`, for `chi` in a block of `G` covering a
    /// block of `N`, lie in one orbit and meet every block in that orbit.
    pub fn check_constituent_orbits(&self, p: u64) -> Result<()> {
        let (gs, ns) = self.systems(p);
        let families = self.inertia_families(p);
        for bg in 0..gs.len() {
            for &chi in &gs.block(bg).chars {
                let hit: Vec<usize> = (0..self.n.len())
                    .filter(|&phi| self.restrictions[chi][phi] > 0)
                    .map(|phi| ns.block_of_char(phi))
                    .collect();
                let fam = families
                    .iter()
                    .find(|f| f.orbit.contains(&hit[0]))
                    .expect("family");
                if !hit.iter().all(|b| fam.orbit.contains(b)) || !fam.orbit.iter().all(|b| hit.contains(b)) {
                    return Err(Error::TableInconsistent(format!(
                        "constituents of character {chi} of G do not form a single orbit of blocks"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Induction criterion: every `chi in Irr(b)` other than the trivial
    /// character induces irreducibly.
    pub fn verdict_char(&self, p: u64, b: usize, big_b: usize) -> Result<CharVerdict> {
        if !self.covering_blocks(p, b).contains(&big_b) {
            return Err(Error::NotCovering);
        }
        let ns = &self.systems(p).1;
        let gct = self.g.class_table();
        for &phi in &ns.block(b).chars {
            if phi == self.n.trivial() {
                continue;
            }
            let ind = self.induced(phi);
            let norm = inner_product(gct, ind, ind);
            if norm != Cyclotomic::one() {
                let constituents = decompose(ind, &self.g)?
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, m)| m > 0)
                    .collect();
                return Ok(CharVerdict {
                    holds: false,
                    witness: Some(CharWitness {
                        character: phi,
                        degree: self.n.degree(phi),
                        induced_norm: norm.as_integer().map_or(0, |v| u64::try_from(v).unwrap_or(0)),
                        constituents,
                    }),
                });
            }
        }
        Ok(CharVerdict {
            holds: true,
            witness: None,
        })
    }

    fn centralizer_outside_n(&self, a: &Perm) -> Option<Perm> {
        let n = self.n.group();
        self.g
            .group()
            .elements()
            .iter()
            .find(|g| !n.contains(g) && g.compose(a) == a.compose(g))
            .cloned()
    }

    /// Centralizer criterion on `Omega_b`, evaluated on all elements, on
    /// class representatives, and through class stabilizers.
    pub fn verdict_class(&self, p: u64, b: usize) -> ClassVerdict {
        let ns = &self.systems(p).1;
        let nct = self.n.class_table();
        let ng = self.n.group();
        let mut all_elements = None;
        let mut representatives = None;
        let mut stabilizers = None;
        for &c in &ns.block(b).class_set {
            let class = nct.class(c);
            if class.representative.is_identity() {
                continue;
            }
            if all_elements.is_none() {
                for &m in &class.members {
                    if let Some(g) = self.centralizer_outside_n(ng.element(m)) {
                        all_elements = Some(ClassWitness {
                            class: c,
                            element: ng.element(m).clone(),
                            centralizing: g,
                        });
                        break;
                    }
                }
            }
            if representatives.is_none() {
                if let Some(g) = self.centralizer_outside_n(&class.representative) {
                    representatives = Some(ClassWitness {
                        class: c,
                        element: class.representative.clone(),
                        centralizing: g,
                    });
                }
            }
            if stabilizers.is_none() {
                if let Some(t) = (1..self.transversal.len()).find(|&t| self.class_action[t][c] == c) {
                    stabilizers = Some((c, t));
                }
            }
        }
        let holds = all_elements.is_none();
        ClassVerdict {
            holds,
            forms_agree: representatives.is_none() == holds && stabilizers.is_none() == holds,
            witness: all_elements,
        }
    }
}

#[derive(Clone, Debug)]
pub struct InertiaFamily {
    pub p: u64,
    pub base: usize,
    pub orbit: Vec<usize>,
    /// Transversal indices fixing the base block.
    pub stabilizer: Vec<usize>,
    pub inertia: PermGroup,
    pub chars: Vec<usize>,
    pub classes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CharWitness {
    pub character: usize,
    pub degree: u64,
    pub induced_norm: u64,
    /// `(row of G, multiplicity)` for the constituents of the induced character.
    pub constituents: Vec<(usize, u64)>,
}

#[derive(Clone, Debug)]
pub struct CharVerdict {
    pub holds: bool,
    pub witness: Option<CharWitness>,
}

#[derive(Clone, Debug)]
pub struct ClassWitness {
    pub class: usize,
    pub element: Perm,
    /// An element of `C_G(element)` outside `N`.
    pub centralizing: Perm,
}

#[derive(Clone, Debug)]
pub struct ClassVerdict {
    pub holds: bool,
    pub forms_agree: bool,
    pub witness: Option<ClassWitness>,
}

/// Number of characters of `G` with `N` in the kernel.
pub fn quotient_characters(g: &CharacterTable, n: &PermGroup) -> Vec<usize> {
    (0..g.len()).filter(|&r| g.kernel_contains(r, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn embedding(name: &str, normal: &str) -> NormalEmbedding {
        let e = catalog::lookup(name).unwrap();
        let g = e.group().unwrap();
        let n = e.normal_subgroup(&g, normal).unwrap().unwrap();
        NormalEmbedding::new(CharacterTable::compute(g).unwrap(), CharacterTable::compute(n).unwrap()).unwrap()
    }

    #[test]
    fn a4_over_k4_actions() {
        let emb = embedding("A4", "K4");
        assert_eq!(emb.transversal().len(), 3);
        emb.check_actions().unwrap();
        let t = emb.char_action(1);
        assert_eq!(t[0], 0);
        assert!((1..4).all(|r| t[r] != r));
        assert_eq!(emb.inertia_of_character(1).order(), 4);
        assert_eq!(emb.inertia_of_character(0).order(), 12);
    }

    #[test]
    fn s4_over_a4_inertia() {
        let emb = embedding("S4", "A4");
        emb.check_actions().unwrap();
        assert_eq!(emb.transversal().len(), 2);
        let cubic = (0..4).find(|&r| emb.n().degree(r) == 3).unwrap();
        assert_eq!(emb.inertia_of_character(cubic).order(), 24);
        assert_eq!(emb.inertia_of_character(1).order(), 12);
        assert_eq!(emb.char_action(1)[1], 2);
    }

    #[test]
    fn s4_over_a4_pairs() {
        let mut emb = embedding("S4", "A4");
        emb.prepare(3).unwrap();
        emb.prepare(2).unwrap();
        let b1 = emb.systems(3).1.block_of_char((0..4).find(|&r| emb.n().degree(r) == 3).unwrap());
        assert_eq!(emb.covering_blocks(3, b1), vec![1, 2]);
        assert!(emb.verdict_char(3, 0, 0).unwrap().holds);
        assert!(!emb.verdict_char(3, b1, 1).unwrap().holds);
        assert!(!emb.verdict_char(3, b1, 2).unwrap().holds);
        let v = emb.verdict_char(2, 0, 0).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.degree, 3);
        assert_eq!(w.constituents.iter().map(|&(r, _)| emb.g().degree(r)).collect::<Vec<_>>(), vec![3, 3]);
        let c = emb.verdict_class(2, 0);
        assert!(!c.holds && c.forms_agree);
        assert!(matches!(emb.verdict_char(3, b1, 0), Err(Error::NotCovering)));
        emb.check_constituent_orbits(2).unwrap();
        emb.check_constituent_orbits(3).unwrap();
    }

    #[test]
    fn a4_over_k4_families() {
        let mut emb = embedding("A4", "K4");
        emb.prepare(3).unwrap();
        let fams = emb.inertia_families(3);
        assert_eq!(fams.len(), 2);
        assert_eq!(fams[1].orbit.len(), 3);
        assert_eq!(fams[1].inertia.order(), 4);
        assert_eq!(fams[0].inertia.order(), 12);
    }
}
