use serde::Serialize;

use super::checks::{brauer_counts, counting_checks, find_complement, structural_checks};
use super::separation::separation_analysis;
use super::{BrauerCounts, ComplementSearch, CountingRecord, NormalEmbedding, SeparationRecord, StructuralRecord};
use crate::error::Result;
use crate::numtheory::prime_divisors;
use crate::perm::Perm;
use crate::report::{block_summaries, BlockSummary};

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub group_name: String,
    pub normal_name: String,
    pub primes: Vec<u64>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharWitnessReport {
    pub character: usize,
    pub degree: u64,
    pub induced_norm: u64,
    /// `[row, degree, multiplicity]` for each constituent of the induced character.
    pub constituents: Vec<[u64; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassWitnessReport {
    pub class: usize,
    pub element: Vec<usize>,
    pub centralizing: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub normal_block: usize,
    pub block: usize,
    pub principal: bool,
    pub coverers: Vec<usize>,
    pub cover_unique: bool,
    /// False for a principal pair when `p` does not divide `|N|`; its consequences are reported only.
    pub asserted: bool,
    pub verdict_char: bool,
    pub verdict_class: bool,
    pub class_forms_agree: bool,
    pub char_witness: Option<CharWitnessReport>,
    pub class_witness: Option<ClassWitnessReport>,
    pub counting: Option<CountingRecord>,
    pub structural: Option<StructuralRecord>,
    pub notes: Vec<String>,
}

impl PairReport {
    pub fn is_frobenius(&self) -> bool {
        self.verdict_char && self.verdict_class
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeReport {
    pub p: u64,
    pub blocks: Vec<BlockSummary>,
    pub normal_blocks: Vec<BlockSummary>,
    pub pairs: Vec<PairReport>,
    pub brauer_counts: BrauerCounts,
    pub constituent_orbits_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HallRecord {
    /// Principal pairs hold for every prime dividing `|N|`.
    pub all_principal_pairs: bool,
    pub coprime: bool,
    pub complement: Option<ComplementSearch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub schema: u32,
    pub group: String,
    pub normal_subgroup: String,
    pub group_order: u64,
    pub normal_order: u64,
    pub transversal: Vec<Vec<usize>>,
    pub primes: Vec<PrimeReport>,
    pub hall: HallRecord,
    pub separation: SeparationRecord,
    pub failures: Vec<String>,
    pub consistent: bool,
}

fn pair_report(emb: &NormalEmbedding, p: u64, b: usize, big_b: usize, failures: &mut Vec<String>) -> Result<PairReport> {
    let coverers = emb.covering_blocks(p, b);
    let vc = emb.verdict_char(p, b, big_b)?;
    let vk = emb.verdict_class(p, b);
    let principal = emb.systems(p).1.block(b).is_principal;
    let mut notes = Vec::new();
    let tag = format!("p={p} (b{b}, B{big_b})");
    if vc.holds != vk.holds {
        failures.push(format!("{tag}: induction and centralizer criteria disagree"));
    }
    if !vk.forms_agree {
        failures.push(format!("{tag}: centralizer criterion forms disagree"));
    }
    let frobenius = vc.holds || vk.holds;
    let asserted = !principal || emb.n().group().order() % p == 0;
    let (counting, structural) = if frobenius {
        if asserted && coverers.len() != 1 {
            failures.push(format!("{tag}: Frobenius pair with {} covering blocks", coverers.len()));
        }
        let c = counting_checks(emb, p, b, big_b);
        if !c.holds() {
            failures.push(format!("{tag}: character count formula fails"));
        }
        let s = structural_checks(emb, p, b, big_b)?;
        if !s.holds() {
            failures.push(format!("{tag}: structural check fails"));
        }
        match &s {
            StructuralRecord::Principal { applicable: false, .. } => {
                notes.push("p does not divide |N|; the principal pair holds vacuously".into());
            }
            StructuralRecord::NonPrincipal { .. } => {
                notes.push("defect groups compared by order and conjugacy in G".into());
            }
            _ => {}
        }
        (Some(c), Some(s))
    } else {
        (None, None)
    };
    let g = emb.g();
    Ok(PairReport {
        normal_block: b,
        block: big_b,
        principal,
        cover_unique: coverers.len() == 1,
        asserted,
        coverers,
        verdict_char: vc.holds,
        verdict_class: vk.holds,
        class_forms_agree: vk.forms_agree,
        char_witness: vc.witness.map(|w| CharWitnessReport {
            character: w.character,
            degree: w.degree,
            induced_norm: w.induced_norm,
            constituents: w
                .constituents
                .iter()
                .map(|&(r, m)| [r as u64, g.degree(r), m])
                .collect(),
        }),
        class_witness: vk.witness.map(|w| ClassWitnessReport {
            class: w.class,
            element: w.element.images_one_based(),
            centralizing: w.centralizing.images_one_based(),
        }),
        counting,
        structural,
        notes,
    })
}

/// Full analysis of the requested primes plus the prime-independent checks.
pub fn analyze(emb: &mut NormalEmbedding, opts: &AnalysisOptions) -> Result<FrobeniusReport> {
    let mut failures = Vec::new();
    if let Err(e) = emb.check_actions() {
        failures.push(e.to_string());
    }
    let pi_n = prime_divisors(emb.n().group().order());
    for &p in opts.primes.iter().chain(&pi_n) {
        emb.prepare(p)?;
    }
    let mut primes = Vec::new();
    for &p in &opts.primes {
        let (gs, ns) = emb.systems(p);
        let blocks = block_summaries(emb.g(), gs)?;
        let normal_blocks = block_summaries(emb.n(), ns)?;
        let mut pairs = Vec::new();
        for b in 0..ns.len() {
            for big_b in emb.covering_blocks(p, b) {
                pairs.push(pair_report(emb, p, b, big_b, &mut failures)?);
            }
        }
        let families = emb.inertia_families(p);
        let counts = brauer_counts(emb, &families);
        if !counts.ok {
            failures.push(format!("p={p}: fixed-point or orbit counts differ"));
        }
        let constituent_orbits_ok = match emb.check_constituent_orbits(p) {
            Ok(()) => true,
            Err(e) => {
                failures.push(format!("p={p}: {e}"));
                false
            }
        };
        primes.push(PrimeReport {
            p,
            blocks,
            normal_blocks,
            pairs,
            brauer_counts: counts,
            constituent_orbits_ok,
        });
    }

    let all_principal_pairs = pi_n
        .iter()
        .map(|&p| emb.verdict_char(p, 0, 0).map(|v| v.holds))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|h| h);
    let g = emb.g().group();
    let n = emb.n().group();
    let search = find_complement(g, n, opts.seed);
    let applies = all_principal_pairs && !pi_n.is_empty() && emb.index() > 1;
    if applies && !search.coprime {
        failures.push("principal pairs hold for every prime of |N| but |N| and |G:N| are not coprime".into());
    }
    let hall = HallRecord {
        all_principal_pairs,
        coprime: search.coprime,
        complement: applies.then_some(search),
    };

    let separation = separation_analysis(emb)?;
    if !separation.ok {
        failures.push("principal block intersection checks fail".into());
    }
    Ok(FrobeniusReport {
        schema: 1,
        group: opts.group_name.clone(),
        normal_subgroup: opts.normal_name.clone(),
        group_order: emb.g().group().order(),
        normal_order: emb.n().group().order(),
        transversal: emb.transversal().iter().map(Perm::images_one_based).collect(),
        primes,
        hall,
        separation,
        consistent: failures.is_empty(),
        failures,
    })
}
