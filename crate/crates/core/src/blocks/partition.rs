//! Partition of the classes into sets `Omega_B` such that
//! `{e_B C : C in Omega_B}` is a basis of `e_B Z(FG)` for every block.
//!
//! Rows of `A` are classes, columns are the pivot coordinates of every
//! block. Each block takes the lexicographically first row set with a
//! nonzero minor on its columns and a nonzero complementary minor. The
//! equivariant variant picks unions of orbits and may backtrack.

use crate::error::{Error, Result};
use crate::finite_field::{FFElem, GaloisField};
use crate::linalg::rank;

/// A permutation of the classes together with the induced permutation of
/// the blocks, for one group element acting by conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBlockAction {
    pub classes: Vec<usize>,
    pub blocks: Vec<usize>,
}

pub(crate) const NODE_BUDGET: usize = 2_000_000;

pub(crate) struct PartitionProblem<'a> {
    pub field: &'a GaloisField,
    /// `a[c]` is the row of class `c`; columns grouped by block.
    pub a: Vec<Vec<FFElem>>,
    /// Column indices of each block inside `a`.
    pub cols: Vec<Vec<usize>>,
}

struct Search<'a, 'b> {
    prob: &'b PartitionProblem<'a>,
    actions: &'b [ClassBlockAction],
    owner: Vec<Option<usize>>,
    block_done: Vec<bool>,
    nodes: usize,
}

impl PartitionProblem<'_> {
    fn minor_rank(&self, rows: &[usize], blocks: &[usize]) -> usize {
        let cols: Vec<usize> = blocks.iter().flat_map(|&b| self.cols[b].iter().copied()).collect();
        let m: Vec<Vec<FFElem>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.a[r][c]).collect())
            .collect();
        if m.is_empty() {
            return 0;
        }
        rank(self.field, &m)
    }
}

fn orbits(n: usize, perms: &[&Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for p in perms {
                let y = p[x];
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

impl Search<'_, '_> {
    fn solve(&mut self) -> Result<bool> {
        let Some(b) = (0..self.block_done.len()).find(|&b| !self.block_done[b]) else {
            return Ok(true);
        };
        let stab: Vec<&ClassBlockAction> = self.actions.iter().filter(|t| t.blocks[b] == b).collect();
        let stab_perms: Vec<&Vec<usize>> = stab.iter().map(|t| &t.classes).collect();
        let units: Vec<Vec<usize>> = orbits(self.owner.len(), &stab_perms)
            .into_iter()
            .filter(|u| u.iter().all(|&c| self.owner[c].is_none()))
            .collect();
        // one representative action per block in the orbit of b
        let mut movers: Vec<(usize, &ClassBlockAction)> = Vec::new();
        for t in self.actions {
            let image = t.blocks[b];
            if image != b && !movers.iter().any(|(x, _)| *x == image) {
                movers.push((image, t));
            }
        }
        let k = self.prob.cols[b].len();
        let mut chosen = Vec::new();
        self.choose(b, k, &units, 0, &mut chosen, &movers)
    }

    fn choose(
        &mut self,
        b: usize,
        k: usize,
        units: &[Vec<usize>],
        from: usize,
        chosen: &mut Vec<usize>,
        movers: &[(usize, &ClassBlockAction)],
    ) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(Error::PartitionFailure { block: b, rank: k });
        }
        if chosen.len() == k {
            return self.commit(b, chosen, movers);
        }
        for u in from..units.len() {
            if chosen.len() + units[u].len() > k {
                continue;
            }
            let before = chosen.len();
            chosen.extend(&units[u]);
            if self.prob.minor_rank(chosen, &[b]) == chosen.len() && self.choose(b, k, units, u + 1, chosen, movers)? {
                return Ok(true);
            }
            chosen.truncate(before);
        }
        Ok(false)
    }

    fn commit(&mut self, b: usize, chosen: &[usize], movers: &[(usize, &ClassBlockAction)]) -> Result<bool> {
        let mut assigned: Vec<(usize, Vec<usize>)> = vec![(b, chosen.to_vec())];
        for (image, t) in movers {
            assigned.push((*image, chosen.iter().map(|&c| t.classes[c]).collect()));
        }
        let mut taken = self.owner.clone();
        for (blk, set) in &assigned {
            for &c in set {
                if taken[c].is_some() {
                    return Ok(false);
                }
                taken[c] = Some(*blk);
            }
        }
        let rest_rows: Vec<usize> = (0..taken.len()).filter(|&c| taken[c].is_none()).collect();
        let rest_blocks: Vec<usize> = (0..self.block_done.len())
            .filter(|&x| !self.block_done[x] && !assigned.iter().any(|(y, _)| *y == x))
            .collect();
        if self.prob.minor_rank(&rest_rows, &rest_blocks) != rest_rows.len() {
            return Ok(false);
        }
        let saved = self.owner.clone();
        self.owner = taken;
        for (blk, _) in &assigned {
            self.block_done[*blk] = true;
        }
        if self.solve()? {
            return Ok(true);
        }
        self.owner = saved;
        for (blk, _) in &assigned {
            self.block_done[*blk] = false;
        }
        Ok(false)
    }
}

/// Returns the owning block of every class. `actions` lists the action of
/// every element of a transversal; an empty list means no symmetry is
/// imposed.
pub(crate) fn partition(prob: &PartitionProblem<'_>, actions: &[ClassBlockAction]) -> Result<Vec<usize>> {
    let n = prob.a.len();
    let mut search = Search {
        prob,
        actions,
        owner: vec![None; n],
        block_done: vec![false; prob.cols.len()],
        nodes: 0,
    };
    if !search.solve()? {
        let block = (0..prob.cols.len()).find(|&b| !search.block_done[b]).unwrap_or(0);
        return Err(Error::PartitionFailure {
            block,
            rank: prob.cols.get(block).map_or(0, Vec::len),
        });
    }
    Ok(search.owner.into_iter().map(|o| o.expect("complete")).collect())
}
