//! Ordinary character tables.

mod classfn;
mod constants;
mod dixon;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use classfn::{decompose, induce, inner_product, restrict, restrict_row, ClassFunction};
pub use constants::ClassConstants;

use crate::classes::ClassTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::PermGroup;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    class_table: ClassTable,
    constants: ClassConstants,
    values: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
}

fn row_cmp(a: &[Cyclotomic], b: &[Cyclotomic], da: u64, db: u64) -> Ordering {
    let trivial = |r: &[Cyclotomic]| r.iter().all(|v| *v == Cyclotomic::one());
    da.cmp(&db)
        .then_with(|| trivial(b).cmp(&trivial(a)))
        .then_with(|| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.canonical_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

impl CharacterTable {
    /// Computes the table of `group`.
    pub fn compute(group: PermGroup) -> Result<Self> {
        Self::from_class_table(ClassTable::new(group))
    }

    pub fn from_class_table(class_table: ClassTable) -> Result<Self> {
        let constants = ClassConstants::new(&class_table);
        let values = dixon::character_values(&class_table, &constants)?;
        let table = Self::assemble(class_table, constants, values)?;
        table.validate()?;
        Ok(table)
    }

    /// Builds a table from externally supplied values and validates it.
    pub fn from_values(class_table: ClassTable, values: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let constants = ClassConstants::new(&class_table);
        let table = Self::assemble(class_table, constants, values)?;
        table.validate()?;
        Ok(table)
    }

    fn assemble(class_table: ClassTable, constants: ClassConstants, values: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let k = class_table.len();
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(Error::TableInconsistent(format!(
                "expected a {k}x{k} table of values"
            )));
        }
        let e = class_table.exponent() as u32;
        let mut rows = Vec::with_capacity(k);
        for row in values {
            let row = row
                .iter()
                .map(|v| v.change_order(e))
                .collect::<Result<Vec<_>>>()
                .map_err(|_| Error::TableInconsistent("value outside Q(zeta_e)".into()))?;
            let degree = row[0]
                .as_integer()
                .and_then(|d| u64::try_from(d).ok())
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::TableInconsistent("degree is not a positive integer".into()))?;
            rows.push((degree, row));
        }
        rows.sort_by(|(da, a), (db, b)| row_cmp(a, b, *da, *db));
        let (degrees, values) = rows.into_iter().unzip();
        Ok(CharacterTable {
            class_table,
            constants,
            values,
            degrees,
        })
    }

    /// Checks column orthogonality, then row orthogonality, degree sum and
    /// integrality.
    pub fn validate(&self) -> Result<()> {
        let ct = &self.class_table;
        let k = ct.len();
        let conj: Vec<Vec<Cyclotomic>> = self
            .values
            .iter()
            .map(|r| r.iter().map(Cyclotomic::complex_conjugate).collect())
            .collect();
        for i in 0..k {
            for j in i..k {
                let mut s = Cyclotomic::zero(1);
                for r in 0..k {
                    s = &s + &(&self.values[r][i] * &conj[r][j]);
                }
                let expected = if i == j { ct.centralizer_order(i) as i64 } else { 0 };
                if s != Cyclotomic::from_int(expected) {
                    return Err(Error::TableInconsistent(format!(
                        "column orthogonality violated (classes {i},{j})"
                    )));
                }
            }
        }
        for r in 0..k {
            for s in r..k {
                let ip = inner_product(ct, &self.values[r], &self.values[s]);
                let expected = Cyclotomic::from_int(i64::from(r == s));
                if ip != expected {
                    return Err(Error::TableInconsistent(format!(
                        "row orthogonality violated (characters {r},{s})"
                    )));
                }
            }
        }
        let sum: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum != ct.order() {
            return Err(Error::TableInconsistent("sum of squared degrees differs from |G|".into()));
        }
        if self.values.iter().flatten().any(|v| !v.is_integral()) {
            return Err(Error::IntegralityViolation("character value is not an algebraic integer".into()));
        }
        Ok(())
    }

    pub fn class_table(&self) -> &ClassTable {
        &self.class_table
    }

    pub fn group(&self) -> &PermGroup {
        self.class_table.group()
    }

    pub fn constants(&self) -> &ClassConstants {
        &self.constants
    }

    pub fn exponent(&self) -> u64 {
        self.class_table.exponent()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn row(&self, r: usize) -> &[Cyclotomic] {
        &self.values[r]
    }

    pub fn value(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.values[r][c]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, r: usize) -> u64 {
        self.degrees[r]
    }

    /// Central character `omega_chi(C) = |C| chi(x_C) / chi(1)`.
    pub fn central_character(&self, r: usize) -> Vec<Cyclotomic> {
        let d = BigRational::from_integer(BigInt::from(self.degrees[r]));
        self.values[r]
            .iter()
            .enumerate()
            .map(|(c, v)| {
                let size = BigRational::from_integer(BigInt::from(self.class_table.class(c).size));
                v.scale(&(size / &d))
            })
            .collect()
    }

    /// Classes on which the character takes its degree.
    pub fn kernel_classes(&self, r: usize) -> Vec<usize> {
        let d = Cyclotomic::from_int(self.degrees[r] as i64);
        (0..self.len()).filter(|&c| self.values[r][c] == d).collect()
    }

    /// Whether `N` (given as a subgroup of the table's group) lies in the
    /// kernel of character `r`.
    pub fn kernel_contains(&self, r: usize, n: &PermGroup) -> bool {
        let kernel = self.kernel_classes(r);
        n.elements().iter().all(|x| {
            self.class_table
                .class_of(x)
                .is_some_and(|c| kernel.contains(&c))
        })
    }

    /// `omega(C_i) omega(C_j) = sum_l a_ijl omega(C_l)` for every row.
    pub fn check_multiplicativity(&self) -> Result<()> {
        let k = self.len();
        for r in 0..k {
            let w = self.central_character(r);
            for i in 0..k {
                for j in 0..k {
                    let lhs = &w[i] * &w[j];
                    let mut rhs = Cyclotomic::zero(1);
                    for l in 0..k {
                        let a = self.constants.get(i, j, l);
                        if a != 0 {
                            rhs = &rhs + &w[l].scale(&BigRational::from_integer(BigInt::from(a)));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::TableInconsistent(format!(
                            "central character {r} not multiplicative on classes {i},{j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Index of the trivial character (always 0).
    pub fn trivial(&self) -> usize {
        debug_assert!(self.values[0].iter().all(|v| *v == Cyclotomic::one()));
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::from_generators(n, gens.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect()).unwrap()
    }

    fn sorted_degrees(t: &CharacterTable) -> Vec<u64> {
        t.degrees().to_vec()
    }

    #[test]
    fn small_tables() {
        let a4 = CharacterTable::compute(group(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]])).unwrap();
        assert_eq!(sorted_degrees(&a4), vec![1, 1, 1, 3]);
        let s4 = CharacterTable::compute(group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]])).unwrap();
        assert_eq!(sorted_degrees(&s4), vec![1, 1, 2, 3, 3]);
        let f21 = CharacterTable::compute(group(7, &[&[&[1, 2, 3, 4, 5, 6, 7]], &[&[2, 3, 5], &[4, 7, 6]]])).unwrap();
        assert_eq!(sorted_degrees(&f21), vec![1, 1, 1, 3, 3]);
        for t in [&a4, &s4, &f21] {
            t.check_multiplicativity().unwrap();
            assert!(t.row(0).iter().all(|v| *v == Cyclotomic::one()));
        }
    }

    #[test]
    fn trivial_group_table() {
        let t = CharacterTable::compute(PermGroup::trivial(3)).unwrap();
        assert_eq!(t.degrees(), &[1]);
    }

    #[test]
    fn rejects_bad_values() {
        let a4 = CharacterTable::compute(group(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]])).unwrap();
        let mut v = a4.values().to_vec();
        v[1][1] = Cyclotomic::from_int(2);
        let err = CharacterTable::from_values(a4.class_table().clone(), v).unwrap_err();
        assert!(err.to_string().contains("orthogonality"));
    }
}
