//! Serializable reports and their text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::blocks::BlockSystem;
use crate::chartab::CharacterTable;
use crate::error::Result;
use crate::frobenius::{CountingRecord, FrobeniusReport, StructuralRecord};

#[derive(Clone, Debug, Serialize)]
pub struct CharRef {
    pub index: usize,
    pub degree: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub index: usize,
    pub principal: bool,
    pub chars: Vec<CharRef>,
    pub defect: u32,
    pub omega_class_set: Vec<usize>,
    pub defect_class: usize,
    pub defect_group_order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeBlocks {
    pub p: u64,
    pub residue_degree: u32,
    pub blocks: Vec<BlockSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub schema: u32,
    pub group: String,
    pub order: u64,
    pub primes: Vec<PrimeBlocks>,
}

pub fn block_summaries(tbl: &CharacterTable, sys: &BlockSystem) -> Result<Vec<BlockSummary>> {
    sys.blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let (defect_class, dg) = sys.defect_group(tbl, i)?;
            Ok(BlockSummary {
                index: i,
                principal: b.is_principal,
                chars: b
                    .chars
                    .iter()
                    .map(|&r| CharRef {
                        index: r,
                        degree: tbl.degree(r),
                    })
                    .collect(),
                defect: b.defect,
                omega_class_set: b.class_set.clone(),
                defect_class,
                defect_group_order: dg.order(),
            })
        })
        .collect()
}

pub fn block_report(name: &str, tbl: &CharacterTable, systems: &[BlockSystem]) -> Result<BlockReport> {
    Ok(BlockReport {
        schema: 1,
        group: name.to_string(),
        order: tbl.group().order(),
        primes: systems
            .iter()
            .map(|s| {
                Ok(PrimeBlocks {
                    p: s.p(),
                    residue_degree: s.context().degree(),
                    blocks: block_summaries(tbl, s)?,
                })
            })
            .collect::<Result<_>>()?,
    })
}

fn pad_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn render_table(name: &str, tbl: &CharacterTable) -> String {
    let ct = tbl.class_table();
    let mut out = format!(
        "{name}: order {}, {} classes, exponent {}\n",
        ct.order(),
        ct.len(),
        ct.exponent()
    );
    let mut rows = vec![
        std::iter::once("class".to_string()).chain((0..ct.len()).map(|c| format!("{c}"))).collect(),
        std::iter::once("order".to_string())
            .chain(ct.classes().iter().map(|c| c.element_order.to_string()))
            .collect(),
        std::iter::once("size".to_string())
            .chain(ct.classes().iter().map(|c| c.size.to_string()))
            .collect::<Vec<_>>(),
    ];
    for r in 0..tbl.len() {
        rows.push(
            std::iter::once(format!("X.{r}"))
                .chain(tbl.row(r).iter().map(|v| v.to_string()))
                .collect(),
        );
    }
    out.push_str(&pad_table(&rows));
    out.push_str("representatives:\n");
    for (i, c) in ct.classes().iter().enumerate() {
        let _ = writeln!(out, "  {i}: {}", c.representative);
    }
    out
}

fn fmt_set(xs: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn render_block_lines(out: &mut String, blocks: &[BlockSummary], indent: &str) {
    for b in blocks {
        let chars: Vec<String> = b.chars.iter().map(|c| format!("X.{}({})", c.index, c.degree)).collect();
        let _ = writeln!(
            out,
            "{indent}B{}{}: chars [{}], defect {}, classes {}, defect class {}, |D| = {}",
            b.index,
            if b.principal { " (principal)" } else { "" },
            chars.join(", "),
            b.defect,
            fmt_set(b.omega_class_set.iter().copied()),
            b.defect_class,
            b.defect_group_order
        );
    }
}

pub fn render_blocks(report: &BlockReport) -> String {
    let mut out = format!("{}: order {}\n", report.group, report.order);
    for pb in &report.primes {
        let _ = writeln!(
            out,
            "p = {}: {} block(s), residue field degree {}",
            pb.p,
            pb.blocks.len(),
            pb.residue_degree
        );
        render_block_lines(&mut out, &pb.blocks, "  ");
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_frobenius(r: &FrobeniusReport) -> String {
    let mut out = format!(
        "{} > {}: |G| = {}, |N| = {}, |G:N| = {}\n",
        r.group,
        r.normal_subgroup,
        r.group_order,
        r.normal_order,
        r.group_order / r.normal_order
    );
    for pr in &r.primes {
        let _ = writeln!(out, "p = {}", pr.p);
        out.push_str("  blocks of G:\n");
        render_block_lines(&mut out, &pr.blocks, "    ");
        out.push_str("  blocks of N:\n");
        render_block_lines(&mut out, &pr.normal_blocks, "    ");
        for pair in &pr.pairs {
            let _ = writeln!(
                out,
                "  (b{}, B{}): Frobenius pair: {} [induction {}, centralizer {}], coverers {}",
                pair.normal_block,
                pair.block,
                yes(pair.is_frobenius()),
                yes(pair.verdict_char),
                yes(pair.verdict_class),
                fmt_set(pair.coverers.iter().copied())
            );
            if let Some(w) = &pair.char_witness {
                let cons: Vec<String> = w
                    .constituents
                    .iter()
                    .map(|[r, d, m]| if *m == 1 { format!("X.{r}({d})") } else { format!("{m}*X.{r}({d})") })
                    .collect();
                let _ = writeln!(
                    out,
                    "    witness: character {} of N (degree {}) induces to {} (norm {})",
                    w.character,
                    w.degree,
                    cons.join(" + "),
                    w.induced_norm
                );
            }
            if let Some(w) = &pair.class_witness {
                let _ = writeln!(
                    out,
                    "    centralizer witness: class {}, element {:?} commutes with {:?} outside N",
                    w.class, w.element, w.centralizing
                );
            }
            match &pair.counting {
                Some(CountingRecord::Principal {
                    applicable,
                    k_block,
                    k_quotient,
                    k_normal_block,
                    index,
                    rhs,
                    holds,
                    ..
                }) => {
                    let _ = writeln!(
                        out,
                        "    k(B) = {k_block}; k(G/N) + (k(b) - 1)/|G:N| = {k_quotient} + ({k_normal_block} - 1)/{index} = {} [{}]",
                        rhs.map_or("not integral".to_string(), |v| v.to_string()),
                        if !*applicable { "not asserted" } else if *holds { "ok" } else { "FAIL" }
                    );
                }
                Some(CountingRecord::NonPrincipal {
                    k_block,
                    normal_order,
                    k_normal_block,
                    inertia_order,
                    rhs,
                    holds,
                    ..
                }) => {
                    let _ = writeln!(
                        out,
                        "    k(B) = {k_block}; |N| k(b)/|T(b)| = {normal_order}*{k_normal_block}/{inertia_order} = {} [{}]",
                        rhs.map_or("not integral".to_string(), |v| v.to_string()),
                        if *holds { "ok" } else { "FAIL" }
                    );
                }
                None => {}
            }
            match &pair.structural {
                Some(StructuralRecord::Principal {
                    applicable,
                    quotient_is_p_prime,
                    sylow_in_normal,
                    ..
                }) => {
                    let _ = writeln!(
                        out,
                        "    structure: p' quotient {}, Sylow in N {}{}",
                        yes(*quotient_is_p_prime),
                        yes(*sylow_in_normal),
                        if *applicable { "" } else { " (not asserted: p does not divide |N|)" }
                    );
                }
                Some(StructuralRecord::NonPrincipal {
                    defect_group_order,
                    defect_group_in_normal,
                    inertia_index_p_prime,
                    orders_equal,
                    conjugate,
                    ..
                }) => {
                    let _ = writeln!(
                        out,
                        "    structure: |D(B)| = {defect_group_order}, D(B) in N {}, |T(b):N| prime to p {}, |D(b)| = |D(B)| {}, conjugate {}",
                        yes(*defect_group_in_normal),
                        yes(*inertia_index_p_prime),
                        yes(*orders_equal),
                        yes(*conjugate)
                    );
                }
                None => {}
            }
        }
        let bc = &pr.brauer_counts;
        let _ = writeln!(
            out,
            "  fixed points and orbits: {} (global orbits {} characters / {} classes)",
            if bc.ok { "ok" } else { "FAIL" },
            bc.global_char_orbits,
            bc.global_class_orbits
        );
        for f in &bc.families {
            let tallies: Vec<String> = f
                .tallies
                .iter()
                .map(|t| format!("{}:{}/{}", t.element, t.fixed_chars, t.fixed_classes))
                .collect();
            let _ = writeln!(
                out,
                "    family of b{} (orbit {}, |T| = {}): fixed chars/classes {}; orbits {}/{}",
                f.base,
                fmt_set(f.orbit.iter().copied()),
                f.inertia_order,
                tallies.join(" "),
                f.char_orbits,
                f.class_orbits
            );
        }
    }
    let h = &r.hall;
    let _ = writeln!(
        out,
        "principal pairs for every prime of |N|: {}; gcd(|N|, |G:N|) = 1: {}",
        yes(h.all_principal_pairs),
        yes(h.coprime)
    );
    if let Some(c) = &h.complement {
        let _ = writeln!(out, "  complement search: {} {:?}", c.status, c.generators);
    }
    let s = &r.separation;
    let _ = writeln!(out, "separation over pi(N) = {:?}: {}", s.pi_normal, s.pairwise_status);
    for pw in &s.pairwise {
        let _ = writeln!(
            out,
            "  p={}, q={}: Irr(G/N) = B0(p) cap B0(q) {}, b0(p) cap b0(q) = {{1}} {} [{}]",
            pw.p,
            pw.q,
            yes(pw.quotient_equals_intersection),
            yes(pw.normal_blocks_meet_trivially),
            if pw.agree { "ok" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        out,
        "  N nilpotent: {}; pairwise criterion: {} ({})",
        yes(s.nilpotency.normal_nilpotent),
        yes(s.nilpotency.criterion),
        s.nilpotency.status
    );
    let q = &s.quotient_intersection;
    let _ = writeln!(
        out,
        "  Irr(G/N) = {} vs principal intersection {}: {} ({})",
        fmt_set(q.quotient.iter().copied()),
        fmt_set(q.intersection.iter().copied()),
        yes(q.equal),
        q.status
    );
    let hq = &s.hall_quotient;
    let _ = writeln!(
        out,
        "  |H| = {}: Irr(G/H) = {} vs B0(G) = {}: {} ({})",
        hq.h_order,
        fmt_set(hq.quotient.iter().copied()),
        fmt_set(hq.principal_intersection.iter().copied()),
        yes(hq.equal),
        hq.status
    );
    if r.failures.is_empty() {
        out.push_str("consistent\n");
    } else {
        for f in &r.failures {
            let _ = writeln!(out, "FAILURE: {f}");
        }
    }
    out
}
