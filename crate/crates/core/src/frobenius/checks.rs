use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{quotient_characters, InertiaFamily, NormalEmbedding};
use crate::error::Result;
use crate::group::PermGroup;
use crate::numtheory::gcd;
use crate::perm::Perm;

#[derive(Clone, Debug, Serialize)]
pub struct Tally {
    pub element: usize,
    pub fixed_chars: usize,
    pub fixed_classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyTally {
    pub base: usize,
    pub orbit: Vec<usize>,
    pub inertia_order: u64,
    pub chars: Vec<usize>,
    pub classes: Vec<usize>,
    pub tallies: Vec<Tally>,
    pub char_orbits: usize,
    pub class_orbits: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerCounts {
    pub families: Vec<FamilyTally>,
    pub global: Vec<Tally>,
    pub global_char_orbits: usize,
    pub global_class_orbits: usize,
    pub ok: bool,
}

fn orbit_count(set: &[usize], perms: &[&[usize]]) -> usize {
    let mut seen: Vec<usize> = Vec::new();
    let mut count = 0;
    for &x in set {
        if seen.contains(&x) {
            continue;
        }
        count += 1;
        let mut stack = vec![x];
        seen.push(x);
        while let Some(y) = stack.pop() {
            for p in perms {
                let z = p[y];
                if !seen.contains(&z) {
                    seen.push(z);
                    stack.push(z);
                }
            }
        }
    }
    count
}

fn tallies(emb: &NormalEmbedding, chars: &[usize], classes: &[usize]) -> Vec<Tally> {
    (0..emb.transversal().len())
        .map(|t| Tally {
            element: t,
            fixed_chars: chars.iter().filter(|&&r| emb.char_action(t)[r] == r).count(),
            fixed_classes: classes.iter().filter(|&&c| emb.class_action(t)[c] == c).count(),
        })
        .collect()
}

/// Fixed points and orbits of the transversal on each family and on all of
/// `Irr(N)` and `Cl(N)`.
pub fn brauer_counts(emb: &NormalEmbedding, families: &[InertiaFamily]) -> BrauerCounts {
    let char_perms: Vec<&[usize]> = (0..emb.transversal().len()).map(|t| emb.char_action(t)).collect();
    let class_perms: Vec<&[usize]> = (0..emb.transversal().len()).map(|t| emb.class_action(t)).collect();
    let mut ok = true;
    let fams: Vec<FamilyTally> = families
        .iter()
        .map(|f| {
            let t = tallies(emb, &f.chars, &f.classes);
            let co = orbit_count(&f.chars, &char_perms);
            let lo = orbit_count(&f.classes, &class_perms);
            ok &= co == lo && t.iter().all(|x| x.fixed_chars == x.fixed_classes);
            FamilyTally {
                base: f.base,
                orbit: f.orbit.clone(),
                inertia_order: f.inertia.order(),
                chars: f.chars.clone(),
                classes: f.classes.clone(),
                tallies: t,
                char_orbits: co,
                class_orbits: lo,
            }
        })
        .collect();
    let all: Vec<usize> = (0..emb.n().len()).collect();
    let global = tallies(emb, &all, &all);
    let gco = orbit_count(&all, &char_perms);
    let glo = orbit_count(&all, &class_perms);
    ok &= gco == glo && global.iter().all(|x| x.fixed_chars == x.fixed_classes);
    BrauerCounts {
        families: fams,
        global,
        global_char_orbits: gco,
        global_class_orbits: glo,
        ok,
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CountingRecord {
    Principal {
        applicable: bool,
        k_block: usize,
        k_quotient: usize,
        k_normal_block: usize,
        index: u64,
        divisible: bool,
        rhs: Option<u64>,
        quotient_in_block: bool,
        holds: bool,
    },
    NonPrincipal {
        k_block: usize,
        normal_order: u64,
        k_normal_block: usize,
        inertia_order: u64,
        divisible: bool,
        rhs: Option<u64>,
        holds: bool,
    },
}

impl CountingRecord {
    pub fn holds(&self) -> bool {
        match self {
            CountingRecord::Principal { holds, .. } | CountingRecord::NonPrincipal { holds, .. } => *holds,
        }
    }
}

/// Character counts of the covering block against the block of `N`.
pub fn counting_checks(emb: &NormalEmbedding, p: u64, b: usize, big_b: usize) -> CountingRecord {
    let (gs, ns) = emb.systems(p);
    let k_block = gs.block(big_b).size();
    let k_normal_block = ns.block(b).size();
    if ns.block(b).is_principal {
        let quotient = quotient_characters(emb.g(), emb.n().group());
        let index = emb.index();
        let num = k_normal_block as u64 - 1;
        let divisible = num % index == 0;
        let rhs = divisible.then(|| quotient.len() as u64 + num / index);
        let quotient_in_block = quotient.iter().all(|r| gs.block(big_b).chars.contains(r));
        let applicable = emb.n().group().order() % p == 0;
        CountingRecord::Principal {
            applicable,
            k_block,
            k_quotient: quotient.len(),
            k_normal_block,
            index,
            divisible,
            rhs,
            quotient_in_block,
            holds: !applicable || (rhs == Some(k_block as u64) && quotient_in_block),
        }
    } else {
        let normal_order = emb.n().group().order();
        let inertia_order = emb.family_of(p, b).inertia.order();
        let num = normal_order * k_normal_block as u64;
        let divisible = num % inertia_order == 0;
        let rhs = divisible.then(|| num / inertia_order);
        CountingRecord::NonPrincipal {
            k_block,
            normal_order,
            k_normal_block,
            inertia_order,
            divisible,
            rhs,
            holds: rhs == Some(k_block as u64),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructuralRecord {
    Principal {
        /// Whether `p` divides `|N|`; otherwise the checks are not asserted.
        applicable: bool,
        quotient_is_p_prime: bool,
        sylow_in_normal: bool,
        holds: bool,
    },
    NonPrincipal {
        defect_group_order: u64,
        normal_defect_group_order: u64,
        defect_group_in_normal: bool,
        inertia_index_p_prime: bool,
        orders_equal: bool,
        conjugate: bool,
        holds: bool,
    },
}

impl StructuralRecord {
    pub fn holds(&self) -> bool {
        match self {
            StructuralRecord::Principal { holds, .. } | StructuralRecord::NonPrincipal { holds, .. } => *holds,
        }
    }
}

/// Structure of a Frobenius pair: p'-quotient and Sylow containment for the
/// principal pair, defect groups and inertia index otherwise.
pub fn structural_checks(emb: &NormalEmbedding, p: u64, b: usize, big_b: usize) -> Result<StructuralRecord> {
    let (gs, ns) = emb.systems(p);
    let g = emb.g().group();
    let n = emb.n().group();
    if ns.block(b).is_principal {
        let applicable = n.order() % p == 0;
        let quotient_is_p_prime = emb.index() % p != 0;
        let sylow_in_normal = g.sylow_subgroup(p)?.is_subset_of(n);
        return Ok(StructuralRecord::Principal {
            applicable,
            quotient_is_p_prime,
            sylow_in_normal,
            holds: !applicable || (quotient_is_p_prime && sylow_in_normal),
        });
    }
    let (_, d_big) = gs.defect_group(emb.g(), big_b)?;
    let (_, d_small) = ns.defect_group(emb.n(), b)?;
    let inertia = emb.family_of(p, b).inertia;
    let defect_group_in_normal = d_big.is_subset_of(n);
    let inertia_index_p_prime = (inertia.order() / n.order()) % p != 0;
    let orders_equal = d_big.order() == d_small.order();
    let conjugate = orders_equal && g.conjugating_element(&d_small, &d_big).is_some();
    Ok(StructuralRecord::NonPrincipal {
        defect_group_order: d_big.order(),
        normal_defect_group_order: d_small.order(),
        defect_group_in_normal,
        inertia_index_p_prime,
        orders_equal,
        conjugate,
        holds: defect_group_in_normal && inertia_index_p_prime && orders_equal && conjugate,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementSearch {
    pub coprime: bool,
    pub found: bool,
    pub generators: Vec<Vec<usize>>,
    pub attempts: usize,
    pub status: String,
}

pub const COMPLEMENT_ATTEMPTS: usize = 400;

/// Seeded randomized search for `H` with `G = NH` and `N cap H = 1`.
pub fn find_complement(g: &PermGroup, n: &PermGroup, seed: u64) -> ComplementSearch {
    let index = g.order() / n.order();
    let coprime = gcd(n.order(), index) == 1;
    let candidates: Vec<&Perm> = g
        .elements()
        .iter()
        .filter(|x| !x.is_identity() && index % x.order() == 0 && !n.contains(x))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if index == 1 {
        return ComplementSearch {
            coprime,
            found: true,
            generators: Vec::new(),
            attempts: 0,
            status: "trivial complement".into(),
        };
    }
    for attempt in 1..=COMPLEMENT_ATTEMPTS {
        let mut gens: Vec<Perm> = Vec::new();
        let mut h = PermGroup::trivial(g.degree());
        for _ in 0..8 {
            let Some(x) = candidates.choose(&mut rng) else { break };
            if h.contains(x) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push((*x).clone());
            let Ok(next) = g.subgroup_generated(&trial) else { break };
            let meets = next.elements().iter().any(|y| !y.is_identity() && n.contains(y));
            if index % next.order() != 0 || meets {
                continue;
            }
            gens = trial;
            h = next;
            if h.order() == index {
                return ComplementSearch {
                    coprime,
                    found: true,
                    generators: gens.iter().map(Perm::images_one_based).collect(),
                    attempts: attempt,
                    status: "found".into(),
                };
            }
        }
    }
    ComplementSearch {
        coprime,
        found: false,
        generators: Vec::new(),
        attempts: COMPLEMENT_ATTEMPTS,
        status: "complement not found within budget".into(),
    }
}
