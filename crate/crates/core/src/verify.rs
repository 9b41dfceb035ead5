//! Invariant suites over single groups and the whole catalog.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::blocks::BlockSystem;
use crate::catalog::{self, CatalogEntry};
use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::frobenius::{analyze, AnalysisOptions, FrobeniusReport, NormalEmbedding};
use crate::group::PermGroup;
use crate::linalg::Field;
use crate::numtheory::{prime_divisors, valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Orthogonality,
    Linkage,
    Idempotency,
    Partition,
    BrauerCounts,
    Covering,
    Counting,
    Structural,
    Separation,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Orthogonality,
        Suite::Linkage,
        Suite::Idempotency,
        Suite::Partition,
        Suite::BrauerCounts,
        Suite::Covering,
        Suite::Counting,
        Suite::Structural,
        Suite::Separation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Linkage => "linkage",
            Suite::Idempotency => "idempotency",
            Suite::Partition => "partition",
            Suite::BrauerCounts => "brauer-counts",
            Suite::Covering => "covering",
            Suite::Counting => "counting",
            Suite::Structural => "structural",
            Suite::Separation => "separation",
        }
    }

    pub fn needs_normal(self) -> bool {
        matches!(
            self,
            Suite::BrauerCounts | Suite::Covering | Suite::Counting | Suite::Structural | Suite::Separation
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses one suite name or `all`.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    s.split(',').map(|x| x.trim().parse()).collect()
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brauer" => Ok(Suite::BrauerCounts),
            _ => Suite::ALL
                .into_iter()
                .find(|x| x.name() == s)
                .ok_or_else(|| Error::Validation(format!("unknown suite '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub results: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    pub fn new(results: Vec<CheckResult>) -> Self {
        let passed = results.iter().filter(|r| r.passed).count();
        VerifyReport {
            schema: 1,
            failed: results.len() - passed,
            passed,
            results,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!(
                "[{}] {:<14} {}: {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.suite,
                r.subject,
                r.detail
            ));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

fn check(out: &mut Vec<CheckResult>, suite: Suite, subject: &str, outcome: std::result::Result<String, String>) {
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    out.push(CheckResult {
        suite: suite.name().into(),
        subject: subject.into(),
        passed,
        detail,
    });
}

fn golden(entry: &CatalogEntry, tbl: &CharacterTable, systems: &[BlockSystem]) -> std::result::Result<(), String> {
    let ex = &entry.expected;
    if tbl.group().order() != ex.order {
        return Err(format!("order {} differs from {}", tbl.group().order(), ex.order));
    }
    if tbl.len() != ex.class_count {
        return Err(format!("{} classes, expected {}", tbl.len(), ex.class_count));
    }
    if let Some(d) = &ex.degrees {
        if tbl.degrees() != d.as_slice() {
            return Err(format!("degrees {:?}, expected {:?}", tbl.degrees(), d));
        }
    }
    for (p, shape) in &ex.block_shapes {
        if let Some(s) = systems.iter().find(|s| s.p() == *p) {
            let got: Vec<usize> = s.blocks().iter().map(|b| b.size()).collect();
            if &got != shape {
                return Err(format!("p={p}: block sizes {got:?}, expected {shape:?}"));
            }
        }
    }
    Ok(())
}

fn linkage(tbl: &CharacterTable, sys: &BlockSystem) -> std::result::Result<String, String> {
    let total: usize = sys.blocks().iter().map(|b| b.size()).sum();
    if total != tbl.len() {
        return Err(format!("sum of k(B) = {total}, k(G) = {}", tbl.len()));
    }
    let p = sys.p();
    let full = valuation(tbl.group().order(), p);
    let f = sys.field();
    let ct = tbl.class_table();
    for (i, b) in sys.blocks().iter().enumerate() {
        if b.defect > full {
            return Err(format!("block {i} defect {} exceeds {full}", b.defect));
        }
        if b.omega_star[0] != Some(f.one()) {
            return Err(format!("block {i}: omega at the identity class is not 1"));
        }
        if b.is_principal {
            for c in ct.p_regular(p) {
                let expected = f.from_int((ct.class(c).size % p) as i64);
                if b.omega_star[c] != Some(expected) {
                    return Err(format!("principal omega differs from |C| at class {c}"));
                }
            }
        }
    }
    if !sys.blocks()[0].is_principal || sys.blocks().iter().filter(|b| b.is_principal).count() != 1 {
        return Err("principal block is not unique or not first".into());
    }
    sys.check_partition(tbl).map_err(|e| e.to_string())?;
    Ok(format!("{} blocks", sys.len()))
}

fn partition(tbl: &CharacterTable, sys: &BlockSystem) -> std::result::Result<String, String> {
    sys.check_partition(tbl).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for (i, b) in sys.blocks().iter().enumerate() {
        if b.class_set.len() != b.size() {
            return Err(format!("block {i}: |Omega_B| = {} but k(B) = {}", b.class_set.len(), b.size()));
        }
        sys.defect_group(tbl, i).map_err(|e| e.to_string())?;
        sizes.push(b.class_set.len());
    }
    Ok(format!("|Omega_B| = k(B) = {sizes:?}"))
}

/// Table-level suites for one group at every prime dividing its order.
pub fn verify_table(
    name: &str,
    tbl: &CharacterTable,
    entry: Option<&CatalogEntry>,
    suites: &[Suite],
) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let primes = prime_divisors(tbl.group().order());
    let systems = primes
        .iter()
        .map(|&p| BlockSystem::new(tbl, p))
        .collect::<Result<Vec<_>>>()?;
    if suites.contains(&Suite::Orthogonality) {
        let outcome = tbl
            .validate()
            .and_then(|()| tbl.check_multiplicativity())
            .map_err(|e| e.to_string())
            .and_then(|()| entry.map_or(Ok(()), |e| golden(e, tbl, &systems)))
            .map(|()| format!("{} characters, degrees {:?}", tbl.len(), tbl.degrees()));
        check(&mut out, Suite::Orthogonality, name, outcome);
    }
    for sys in &systems {
        let subject = format!("{name} p={}", sys.p());
        if suites.contains(&Suite::Linkage) {
            check(&mut out, Suite::Linkage, &subject, linkage(tbl, sys));
        }
        if suites.contains(&Suite::Idempotency) {
            let outcome = sys
                .check_idempotents(tbl)
                .map(|()| "e_B^2 = e_B, e_B e_B' = 0, sum e_B = 1".to_string())
                .map_err(|e| e.to_string());
            check(&mut out, Suite::Idempotency, &subject, outcome);
        }
        if suites.contains(&Suite::Partition) {
            check(&mut out, Suite::Partition, &subject, partition(tbl, sys));
        }
    }
    Ok(out)
}

/// Runs the full analysis of `n` inside `g` at every prime dividing `|G|`.
pub fn analyze_pair(
    g_name: &str,
    g_tbl: &CharacterTable,
    n_name: &str,
    n: PermGroup,
    seed: u64,
) -> Result<FrobeniusReport> {
    let n_tbl = CharacterTable::compute(n)?;
    let mut emb = NormalEmbedding::new(g_tbl.clone(), n_tbl)?;
    let opts = AnalysisOptions {
        group_name: g_name.into(),
        normal_name: n_name.into(),
        primes: prime_divisors(g_tbl.group().order()),
        seed,
    };
    analyze(&mut emb, &opts)
}

fn ok_if(cond: bool, pass: String, fail: String) -> std::result::Result<String, String> {
    if cond {
        Ok(pass)
    } else {
        Err(fail)
    }
}

/// Pair-level suites derived from a Frobenius report.
pub fn verify_report(report: &FrobeniusReport, suites: &[Suite]) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let base = format!("{} > {}", report.group, report.normal_subgroup);
    for pr in &report.primes {
        let subject = format!("{base} p={}", pr.p);
        if suites.contains(&Suite::BrauerCounts) {
            let bc = &pr.brauer_counts;
            let fams: Vec<String> = bc
                .families
                .iter()
                .map(|f| {
                    let fixed: Vec<String> =
                        f.tallies.iter().map(|t| format!("{}/{}", t.fixed_chars, t.fixed_classes)).collect();
                    format!("b{}: fixed {} orbits {}/{}", f.base, fixed.join(","), f.char_orbits, f.class_orbits)
                })
                .collect();
            let detail = format!(
                "{}; global orbits {}/{}",
                fams.join("; "),
                bc.global_char_orbits,
                bc.global_class_orbits
            );
            check(&mut out, Suite::BrauerCounts, &subject, ok_if(bc.ok, detail.clone(), detail));
        }
        if suites.contains(&Suite::Covering) {
            let mut bad = Vec::new();
            for pair in &pr.pairs {
                if pair.verdict_char != pair.verdict_class || !pair.class_forms_agree {
                    bad.push(format!("(b{}, B{}) criteria disagree", pair.normal_block, pair.block));
                }
                if pair.verdict_char && pair.asserted && !pair.cover_unique {
                    bad.push(format!("(b{}, B{}) has several coverers", pair.normal_block, pair.block));
                }
            }
            if !pr.constituent_orbits_ok {
                bad.push("restriction constituents do not form orbits".into());
            }
            let frob = pr.pairs.iter().filter(|x| x.is_frobenius()).count();
            check(
                &mut out,
                Suite::Covering,
                &subject,
                ok_if(
                    bad.is_empty(),
                    format!("{} pairs, {} Frobenius, criteria agree", pr.pairs.len(), frob),
                    bad.join("; "),
                ),
            );
        }
        if suites.contains(&Suite::Counting) {
            let checked: Vec<_> = pr.pairs.iter().filter_map(|x| x.counting.as_ref()).collect();
            let ok = checked.iter().all(|c| c.holds());
            check(
                &mut out,
                Suite::Counting,
                &subject,
                ok_if(
                    ok,
                    format!("{} Frobenius pairs counted", checked.len()),
                    "character count formula fails".into(),
                ),
            );
        }
        if suites.contains(&Suite::Structural) {
            let checked: Vec<_> = pr.pairs.iter().filter_map(|x| x.structural.as_ref()).collect();
            let ok = checked.iter().all(|c| c.holds());
            check(
                &mut out,
                Suite::Structural,
                &subject,
                ok_if(
                    ok,
                    format!("{} Frobenius pairs checked", checked.len()),
                    "structural check fails".into(),
                ),
            );
        }
    }
    if suites.contains(&Suite::Structural) {
        let h = &report.hall;
        let asserted = h.complement.is_some();
        let detail = match &h.complement {
            Some(c) => format!("coprime {}, complement {}", h.coprime, c.status),
            None => "not applicable".into(),
        };
        check(&mut out, Suite::Structural, &format!("{base} hall"), ok_if(!asserted || h.coprime, detail.clone(), detail));
    }
    if suites.contains(&Suite::Separation) {
        let s = &report.separation;
        let detail = format!(
            "pairwise {}, nilpotency {}, quotient intersection {}, hall quotient {}",
            s.pairwise_status, s.nilpotency.status, s.quotient_intersection.status, s.hall_quotient.status
        );
        check(&mut out, Suite::Separation, &base, ok_if(s.ok, detail.clone(), detail));
    }
    out
}

/// All suites for one catalog entry and each of its named normal subgroups.
pub fn verify_entry(entry: &CatalogEntry, suites: &[Suite], seed: u64) -> Result<Vec<CheckResult>> {
    let g = entry.group()?;
    let tbl = CharacterTable::compute(g.clone())?;
    let mut out = verify_table(&entry.name, &tbl, Some(entry), suites)?;
    if suites.iter().any(|s| s.needs_normal()) {
        for (n_name, gens) in &entry.normal_subgroups {
            let n = g.subgroup_generated(gens)?;
            let report = analyze_pair(&entry.name, &tbl, n_name, n, seed)?;
            out.extend(verify_report(&report, suites));
        }
    }
    Ok(out)
}

pub fn verify_catalog(suites: &[Suite], seed: u64) -> Result<VerifyReport> {
    let mut results = Vec::new();
    for entry in catalog::catalog() {
        results.extend(verify_entry(&entry, suites, seed)?);
    }
    Ok(VerifyReport::new(results))
}
