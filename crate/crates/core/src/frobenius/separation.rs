use serde::Serialize;

use super::{quotient_characters, NormalEmbedding};
use crate::error::Result;
use crate::group::PermGroup;
use crate::numtheory::prime_divisors;

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalPairStatus {
    pub p: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairwiseRecord {
    pub p: u64,
    pub q: u64,
    /// `Irr(G/N) = Irr(B_0(p)) cap Irr(B_0(q))`.
    pub quotient_equals_intersection: bool,
    /// `Irr(b_0(p)) cap Irr(b_0(q)) = {1}`.
    pub normal_blocks_meet_trivially: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotencyRecord {
    pub status: String,
    pub normal_nilpotent: bool,
    pub criterion: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientIntersection {
    pub status: String,
    pub quotient: Vec<usize>,
    pub intersection: Vec<usize>,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HallQuotient {
    pub status: String,
    pub h_order: u64,
    pub quotient: Vec<usize>,
    pub principal_intersection: Vec<usize>,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationRecord {
    pub pi_normal: Vec<u64>,
    pub principal_pairs: Vec<PrincipalPairStatus>,
    pub precondition: bool,
    pub pairwise_status: String,
    pub pairwise: Vec<PairwiseRecord>,
    pub nilpotency: NilpotencyRecord,
    pub quotient_intersection: QuotientIntersection,
    pub hall_quotient: HallQuotient,
    pub ok: bool,
}

fn intersect(sets: impl IntoIterator<Item = Vec<usize>>, universe: usize) -> Vec<usize> {
    let mut acc: Vec<usize> = (0..universe).collect();
    for s in sets {
        acc.retain(|x| s.contains(x));
    }
    acc
}

/// Principal-block intersections against quotient characters and the
/// nilpotency of `N`.
pub fn separation_analysis(emb: &mut NormalEmbedding) -> Result<SeparationRecord> {
    let g_order = emb.g().group().order();
    let pi_g = prime_divisors(g_order);
    let pi_n = prime_divisors(emb.n().group().order());
    for &p in &pi_g {
        emb.prepare(p)?;
    }
    let emb = &*emb;
    let principal_pairs: Vec<PrincipalPairStatus> = pi_n
        .iter()
        .map(|&p| Ok(PrincipalPairStatus { p, holds: emb.verdict_char(p, 0, 0)?.holds }))
        .collect::<Result<_>>()?;
    let precondition = principal_pairs.iter().all(|s| s.holds);
    let quotient = quotient_characters(emb.g(), emb.n().group());
    let b0_g = |p: u64| emb.systems(p).0.block(0).chars.clone();
    let b0_n = |p: u64| emb.systems(p).1.block(0).chars.clone();
    let mut ok = true;

    let mut pairwise = Vec::new();
    let pairwise_status = if !precondition {
        "precondition failed"
    } else if pi_n.len() < 2 {
        "vacuous"
    } else {
        for (i, &p) in pi_n.iter().enumerate() {
            for &q in &pi_n[i + 1..] {
                let big = intersect([b0_g(p), b0_g(q)], emb.g().len());
                let small = intersect([b0_n(p), b0_n(q)], emb.n().len());
                let quotient_equals_intersection = big == quotient;
                let normal_blocks_meet_trivially = small == vec![emb.n().trivial()];
                let agree = quotient_equals_intersection == normal_blocks_meet_trivially;
                ok &= agree;
                pairwise.push(PairwiseRecord {
                    p,
                    q,
                    quotient_equals_intersection,
                    normal_blocks_meet_trivially,
                    agree,
                });
            }
        }
        "checked"
    };

    let normal_nilpotent = emb.n().group().structure_predicates().is_nilpotent;
    let criterion = pairwise.iter().all(|r| r.quotient_equals_intersection);
    let nilpotency = match pairwise_status {
        "checked" => {
            let agree = criterion == normal_nilpotent;
            ok &= agree;
            NilpotencyRecord {
                status: "checked".into(),
                normal_nilpotent,
                criterion,
                agree,
            }
        }
        s => NilpotencyRecord {
            status: s.into(),
            normal_nilpotent,
            criterion,
            agree: true,
        },
    };

    let intersection = intersect(pi_n.iter().map(|&p| b0_g(p)), emb.g().len());
    let equal = intersection == quotient;
    let status = if !precondition {
        "precondition failed"
    } else if !normal_nilpotent {
        "not applicable"
    } else if pi_n.len() < 2 {
        "reported"
    } else {
        ok &= equal;
        "checked"
    };
    let quotient_intersection = QuotientIntersection {
        status: status.into(),
        quotient: quotient.clone(),
        intersection,
        equal,
    };

    let g = emb.g().group();
    let solvable_quotient = g.quotient_is_solvable(emb.n().group());
    let pi_quotient = prime_divisors(emb.index());
    let mut h = PermGroup::trivial(g.degree());
    for &p in &pi_quotient {
        let o = g.o_p_prime(p)?;
        let mut gens = h.generators().to_vec();
        gens.extend(o.generators().iter().cloned());
        h = g.subgroup_generated(&gens)?;
    }
    let hall_q = quotient_characters(emb.g(), &h);
    let principal_intersection = intersect(pi_g.iter().map(|&p| b0_g(p)), emb.g().len());
    let equal = hall_q == principal_intersection;
    let status = if !solvable_quotient {
        "quotient not solvable"
    } else if !precondition {
        "precondition failed"
    } else {
        ok &= equal;
        "checked"
    };
    let hall_quotient = HallQuotient {
        status: status.into(),
        h_order: h.order(),
        quotient: hall_q,
        principal_intersection,
        equal,
    };

    Ok(SeparationRecord {
        pi_normal: pi_n,
        principal_pairs,
        precondition,
        pairwise_status: pairwise_status.into(),
        pairwise,
        nilpotency,
        quotient_intersection,
        hall_quotient,
        ok,
    })
}
