//! p-blocks of a character table: linkage through reduced central
//! characters, central idempotents over the residue field, the class
//! partition and defect groups.

mod partition;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use partition::ClassBlockAction;
use partition::PartitionProblem;

use crate::chartab::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::finite_field::{FFElem, GaloisField, ReductionContext};
use crate::group::PermGroup;
use crate::linalg::{rank, rref, Field};
use crate::numtheory::{is_prime, p_prime_part, valuation};

#[derive(Clone, Debug)]
pub struct Block {
    pub chars: Vec<usize>,
    pub defect: u32,
    pub is_principal: bool,
    /// Coefficients of `e_B` in the class-sum basis.
    pub idempotent: Vec<FFElem>,
    /// Reduced central character, `None` on p-singular classes.
    pub omega_star: Vec<Option<FFElem>>,
    /// `Omega_B`, sorted.
    pub class_set: Vec<usize>,
    /// Pivot coordinates spanning `e_B Z(FG)`.
    pub pivots: Vec<usize>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.chars.len()
    }
}

#[derive(Clone, Debug)]
pub struct BlockSystem {
    p: u64,
    ctx: ReductionContext,
    blocks: Vec<Block>,
    class_assignment: Vec<usize>,
    block_of_char: Vec<usize>,
    /// `coords[b][c]` holds the coordinates of `e_B C` in the class-sum basis.
    coords: Vec<Vec<Vec<FFElem>>>,
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Central character values `|C| chi(x_C) / chi(1)`; all must be integral.
pub fn central_characters(tbl: &CharacterTable) -> Result<Vec<Vec<Cyclotomic>>> {
    (0..tbl.len())
        .map(|r| {
            let w = tbl.central_character(r);
            if w.iter().all(Cyclotomic::is_integral) {
                Ok(w)
            } else {
                Err(Error::IntegralityViolation(format!("central character of row {r}")))
            }
        })
        .collect()
}

impl BlockSystem {
    /// Blocks, idempotents and the plain class partition.
    pub fn new(tbl: &CharacterTable, p: u64) -> Result<Self> {
        let mut sys = Self::without_partition(tbl, p)?;
        sys.partition_classes(&[])?;
        Ok(sys)
    }

    /// Blocks and idempotents; the class partition is left empty.
    pub fn without_partition(tbl: &CharacterTable, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let ct = tbl.class_table();
        let k = tbl.len();
        let n_reg = p_prime_part(tbl.exponent(), p) as u32;
        let ctx = ReductionContext::new(p, n_reg)?;
        let regular = ct.p_regular(p);
        let omega = central_characters(tbl)?;

        let internal = |e: Error| Error::TableInconsistent(format!("reduction failed: {e}"));
        let mut stars = Vec::with_capacity(k);
        for w in &omega {
            let mut star = vec![None; k];
            for &c in &regular {
                star[c] = Some(ctx.reduce(&w[c]).map_err(internal)?);
            }
            stars.push(star);
        }

        let mut groups: BTreeMap<Vec<Option<FFElem>>, Vec<usize>> = BTreeMap::new();
        for (r, star) in stars.iter().enumerate() {
            groups.entry(star.clone()).or_default().push(r);
        }
        let order_val = valuation(ct.order(), p);
        let trivial = tbl.trivial();
        let mut blocks: Vec<Block> = groups
            .into_values()
            .map(|chars| {
                let min_val = chars.iter().map(|&r| valuation(tbl.degree(r), p)).min().unwrap_or(0);
                Block {
                    is_principal: chars.contains(&trivial),
                    defect: order_val - min_val,
                    omega_star: stars[chars[0]].clone(),
                    chars,
                    idempotent: Vec::new(),
                    class_set: Vec::new(),
                    pivots: Vec::new(),
                }
            })
            .collect();
        blocks.sort_by(|a, b| {
            b.is_principal
                .cmp(&a.is_principal)
                .then(b.defect.cmp(&a.defect))
                .then(a.chars[0].cmp(&b.chars[0]))
        });

        let mut block_of_char = vec![0; k];
        for (i, b) in blocks.iter().enumerate() {
            for &r in &b.chars {
                block_of_char[r] = i;
            }
        }

        let field = ctx.field().clone();
        let g_order = rat(ct.order());
        let mut coords = Vec::with_capacity(blocks.len());
        for b in blocks.iter_mut() {
            let mut idem = vec![field.zero(); k];
            for &c in &regular {
                let inv = ct.inverse_class(c);
                let mut sum = Cyclotomic::zero(1);
                for &r in &b.chars {
                    sum = &sum + &tbl.value(r, inv).scale(&rat(tbl.degree(r)));
                }
                let coeff = sum.scale(&(rat(1) / &g_order));
                idem[c] = ctx.reduce(&coeff).map_err(internal)?;
            }
            let consts = tbl.constants();
            let m: Vec<Vec<FFElem>> = (0..k)
                .map(|c| {
                    (0..k)
                        .map(|e| {
                            let mut acc = field.zero();
                            for (d, &x) in idem.iter().enumerate() {
                                let a = consts.get(d, c, e);
                                if a != 0 && x != field.zero() {
                                    acc = field.add(acc, field.mul(x, field.from_int(a as i64)));
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            let mut echelon = m.clone();
            let pivots = rref(&field, &mut echelon);
            if pivots.len() != b.chars.len() {
                return Err(Error::TableInconsistent(format!(
                    "e_B Z(FG) has dimension {} but the block has {} characters",
                    pivots.len(),
                    b.chars.len()
                )));
            }
            b.idempotent = idem;
            b.pivots = pivots;
            coords.push(m);
        }

        Ok(BlockSystem {
            p,
            ctx,
            blocks,
            class_assignment: Vec::new(),
            block_of_char,
            coords,
        })
    }

    /// Computes `Omega_B` for every block. With a nonempty `actions` list
    /// the partition is stable: `Omega_{B^t} = Omega_B^t` for each action.
    pub fn partition_classes(&mut self, actions: &[ClassBlockAction]) -> Result<()> {
        let k = self.class_count();
        let mut a = vec![Vec::with_capacity(k); k];
        let mut cols = Vec::with_capacity(self.blocks.len());
        let mut next = 0;
        for (bi, b) in self.blocks.iter().enumerate() {
            let mut group = Vec::new();
            for &piv in &b.pivots {
                for (c, row) in a.iter_mut().enumerate() {
                    row.push(self.coords[bi][c][piv]);
                }
                group.push(next);
                next += 1;
            }
            cols.push(group);
        }
        let prob = PartitionProblem {
            field: self.ctx.field(),
            a,
            cols,
        };
        let owner = partition::partition(&prob, actions)?;
        for b in self.blocks.iter_mut() {
            b.class_set.clear();
        }
        for (c, &b) in owner.iter().enumerate() {
            self.blocks[b].class_set.push(c);
        }
        self.class_assignment = owner;
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn context(&self) -> &ReductionContext {
        &self.ctx
    }

    pub fn field(&self) -> &GaloisField {
        self.ctx.field()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Block {
        &self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.block_of_char.len()
    }

    pub fn block_of_char(&self, r: usize) -> usize {
        self.block_of_char[r]
    }

    /// Block owning each class; empty before partitioning.
    pub fn class_assignment(&self) -> &[usize] {
        &self.class_assignment
    }

    pub fn principal(&self) -> usize {
        0
    }

    /// Coordinates of `e_B C` in the class-sum basis.
    pub fn coordinates(&self, b: usize, class: usize) -> &[FFElem] {
        &self.coords[b][class]
    }

    /// Product of two elements of `Z(FG)` given in the class-sum basis.
    pub fn multiply(&self, tbl: &CharacterTable, x: &[FFElem], y: &[FFElem]) -> Vec<FFElem> {
        let f = self.field();
        let consts = tbl.constants();
        let k = x.len();
        let mut out = vec![f.zero(); k];
        for (d, &xd) in x.iter().enumerate() {
            if xd == f.zero() {
                continue;
            }
            for (c, &yc) in y.iter().enumerate() {
                if yc == f.zero() {
                    continue;
                }
                let w = f.mul(xd, yc);
                for (e, o) in out.iter_mut().enumerate() {
                    let a = consts.get(d, c, e);
                    if a != 0 {
                        *o = f.add(*o, f.mul(w, f.from_int(a as i64)));
                    }
                }
            }
        }
        out
    }

    /// `e_B^2 = e_B`, `e_B e_B' = 0` and `sum e_B = 1`.
    pub fn check_idempotents(&self, tbl: &CharacterTable) -> Result<()> {
        let f = self.field();
        let k = self.class_count();
        let mut total = vec![f.zero(); k];
        for (i, bi) in self.blocks.iter().enumerate() {
            for (t, &x) in total.iter_mut().zip(&bi.idempotent) {
                *t = f.add(*t, x);
            }
            for (j, bj) in self.blocks.iter().enumerate() {
                let prod = self.multiply(tbl, &bi.idempotent, &bj.idempotent);
                let ok = if i == j {
                    prod == bi.idempotent
                } else {
                    prod.iter().all(|&x| x == f.zero())
                };
                if !ok {
                    return Err(Error::TableInconsistent(format!(
                        "idempotent relation fails for blocks {i},{j}"
                    )));
                }
            }
        }
        let mut unit = vec![f.zero(); k];
        unit[0] = f.one();
        if total != unit {
            return Err(Error::TableInconsistent("block idempotents do not sum to 1".into()));
        }
        Ok(())
    }

    /// `omega_star` agrees across each block, and `{e_B C : C in Omega_B}`
    /// has full rank `k(B)`.
    pub fn check_partition(&self, tbl: &CharacterTable) -> Result<()> {
        let ct = tbl.class_table();
        let omega = central_characters(tbl)?;
        let mut seen = vec![false; self.class_count()];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &r in &b.chars {
                for c in ct.p_regular(self.p) {
                    if Some(self.ctx.reduce(&omega[r][c])?) != b.omega_star[c] {
                        return Err(Error::TableInconsistent(format!("linkage differs inside block {bi}")));
                    }
                }
            }
            if b.class_set.len() != b.size() {
                return Err(Error::PartitionFailure { block: bi, rank: b.size() });
            }
            for &c in &b.class_set {
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Error::TableInconsistent(format!("class {c} in two class sets")));
                }
            }
            let rows: Vec<Vec<FFElem>> = b.class_set.iter().map(|&c| self.coords[bi][c].clone()).collect();
            if !rows.is_empty() && rank(self.field(), &rows) != b.size() {
                return Err(Error::PartitionFailure { block: bi, rank: b.size() });
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::TableInconsistent("class partition is not exhaustive".into()));
        }
        Ok(())
    }

    /// Defect class of block `b` and a defect group (Sylow p-subgroup of
    /// its centralizer).
    pub fn defect_group(&self, tbl: &CharacterTable, b: usize) -> Result<(usize, PermGroup)> {
        let ct = tbl.class_table();
        let block = &self.blocks[b];
        let zero = self.field().zero();
        let mut best: Option<(u32, usize)> = None;
        for (c, &x) in block.idempotent.iter().enumerate() {
            if x == zero {
                continue;
            }
            let d = valuation(ct.centralizer_order(c), self.p);
            if best.map_or(true, |(bd, _)| d > bd) {
                best = Some((d, c));
            }
        }
        let (d, c) = best.ok_or_else(|| Error::TableInconsistent(format!("block {b} has zero idempotent")))?;
        if d != block.defect {
            return Err(Error::DefectMismatch {
                block: b,
                expected: block.defect,
                found: d,
            });
        }
        let g = tbl.group();
        let cent = g.centralizer(&ct.class(c).representative)?;
        Ok((c, cent.sylow_subgroup(self.p)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn table(n: usize, gens: &[&[&[usize]]]) -> CharacterTable {
        CharacterTable::compute(
            PermGroup::from_generators(n, gens.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect()).unwrap(),
        )
        .unwrap()
    }

    fn shape(sys: &BlockSystem) -> Vec<usize> {
        sys.blocks().iter().map(Block::size).collect()
    }

    #[test]
    fn a4_blocks() {
        let t = table(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        let s2 = BlockSystem::new(&t, 2).unwrap();
        assert_eq!(shape(&s2), vec![4]);
        let s3 = BlockSystem::new(&t, 3).unwrap();
        assert_eq!(shape(&s3), vec![3, 1]);
        assert_eq!(s3.block(0).chars, vec![0, 1, 2]);
        assert_eq!(s3.block(1).defect, 0);
        for s in [&s2, &s3] {
            s.check_idempotents(&t).unwrap();
            s.check_partition(&t).unwrap();
        }
        let (_, d) = s2.defect_group(&t, 0).unwrap();
        assert_eq!(d.order(), 4);
        let (_, d) = s3.defect_group(&t, 1).unwrap();
        assert_eq!(d.order(), 1);
    }

    #[test]
    fn s4_blocks() {
        let t = table(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        let s3 = BlockSystem::new(&t, 3).unwrap();
        assert_eq!(shape(&s3), vec![3, 1, 1]);
        assert_eq!(s3.block(0).class_set.len(), 3);
        let (_, d) = s3.defect_group(&t, 0).unwrap();
        assert_eq!(d.order(), 3);
        assert_eq!(shape(&BlockSystem::new(&t, 2).unwrap()), vec![5]);
    }

    #[test]
    fn p_group_unit_idempotent() {
        let t = table(4, &[&[&[1, 2, 3, 4]]]);
        let s = BlockSystem::new(&t, 2).unwrap();
        assert_eq!(s.len(), 1);
        let f = s.field();
        assert_eq!(s.block(0).idempotent, vec![f.one(), f.zero(), f.zero(), f.zero()]);
    }

    #[test]
    fn a4_central_character_value() {
        let t = table(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        let w = central_characters(&t).unwrap();
        let r = (0..4).find(|&r| t.degree(r) == 3).unwrap();
        let c = (0..4).find(|&c| t.class_table().class(c).size == 3).unwrap();
        assert_eq!(w[r][c], Cyclotomic::from_int(-1));
    }
}
