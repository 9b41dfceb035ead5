use num_bigint::BigInt;
use num_rational::BigRational;

use super::CharacterTable;
use crate::classes::ClassTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Values on the classes of some class table, in class order.
pub type ClassFunction = Vec<Cyclotomic>;

fn rational(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `<f, g> = (1/|G|) sum_C |C| f(C) conj(g(C))`.
pub fn inner_product(ct: &ClassTable, f: &[Cyclotomic], g: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(1);
    for (c, (a, b)) in f.iter().zip(g).enumerate() {
        let term = a * &b.complex_conjugate();
        acc = &acc + &term.scale(&rational(ct.class(c).size));
    }
    acc.scale(&(BigRational::from_integer(1.into()) / rational(ct.order())))
}

/// Restriction of a class function of `G` to the subgroup `H`.
pub fn restrict(ct_g: &ClassTable, f: &[Cyclotomic], ct_h: &ClassTable) -> Result<ClassFunction> {
    ct_h.classes()
        .iter()
        .map(|c| {
            ct_g.class_of(&c.representative)
                .map(|i| f[i].clone())
                .ok_or(Error::NotSubgroup)
        })
        .collect()
}

pub fn restrict_row(tbl: &CharacterTable, r: usize, ct_h: &ClassTable) -> Result<ClassFunction> {
    restrict(tbl.class_table(), tbl.row(r), ct_h)
}

/// Induction from `H` to `G`:
/// `f^G(g) = (1/|H|) sum_{x in G} f(x g x^-1)`, with `f` zero off `H`.
/// Evaluated through `|C_G(g)|/|H| sum_{y in g^G cap H} f(y)`.
pub fn induce(ct_h: &ClassTable, f: &[Cyclotomic], ct_g: &ClassTable) -> Result<ClassFunction> {
    let h = ct_h.group();
    if !h.is_subset_of(ct_g.group()) {
        return Err(Error::NotSubgroup);
    }
    let g = ct_g.group();
    let h_order = rational(h.order());
    let mut out = Vec::with_capacity(ct_g.len());
    for (c, class) in ct_g.classes().iter().enumerate() {
        let mut acc = Cyclotomic::zero(1);
        for &m in &class.members {
            if let Some(hc) = ct_h.class_of(g.element(m)) {
                acc = &acc + &f[hc];
            }
        }
        out.push(acc.scale(&(rational(ct_g.centralizer_order(c)) / &h_order)));
    }
    Ok(out)
}

/// Multiplicities of the irreducible characters of `tbl` in `f`.
pub fn decompose(f: &[Cyclotomic], tbl: &CharacterTable) -> Result<Vec<u64>> {
    let ct = tbl.class_table();
    (0..tbl.len())
        .map(|r| {
            let ip = inner_product(ct, f, tbl.row(r));
            ip.as_integer()
                .and_then(|m| u64::try_from(m).ok())
                .ok_or_else(|| Error::NotACharacter(format!("multiplicity {ip} of constituent {r}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;
    use crate::perm::Perm;

    fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::from_generators(n, gens.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect()).unwrap()
    }

    /// Literal induction sum over all of `G`.
    fn induce_naive(ct_h: &ClassTable, f: &[Cyclotomic], ct_g: &ClassTable) -> ClassFunction {
        let g = ct_g.group();
        ct_g.classes()
            .iter()
            .map(|c| {
                let mut acc = Cyclotomic::zero(1);
                for x in g.elements() {
                    let y = c.representative.conjugate_by(&x.inverse());
                    if let Some(hc) = ct_h.class_of(&y) {
                        acc = &acc + &f[hc];
                    }
                }
                acc.div_int(ct_h.order() as i64).unwrap()
            })
            .collect()
    }

    #[test]
    fn induction_matches_literal_sum_and_reciprocity() {
        let s4 = group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        let a4 = s4.subgroup_generated(&[Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap(), Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap()]).unwrap();
        let tg = CharacterTable::compute(s4).unwrap();
        let th = CharacterTable::compute(a4).unwrap();
        for phi in 0..th.len() {
            let ind = induce(th.class_table(), th.row(phi), tg.class_table()).unwrap();
            assert_eq!(ind, induce_naive(th.class_table(), th.row(phi), tg.class_table()));
            for chi in 0..tg.len() {
                let res = restrict_row(&tg, chi, th.class_table()).unwrap();
                assert_eq!(
                    inner_product(tg.class_table(), &ind, tg.row(chi)),
                    inner_product(th.class_table(), th.row(phi), &res)
                );
            }
        }
        // degree-1 non-trivial characters of A4 induce to the degree-2 character of S4
        let ind = induce(th.class_table(), th.row(1), tg.class_table()).unwrap();
        assert_eq!(inner_product(tg.class_table(), &ind, &ind), Cyclotomic::one());
        assert_eq!(decompose(&ind, &tg).unwrap(), vec![0, 0, 1, 0, 0]);
    }

    #[test]
    fn restriction_of_trivial() {
        let a4 = group(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        let k4 = a4.subgroup_generated(&[Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap(), Perm::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap()]).unwrap();
        let tg = CharacterTable::compute(a4).unwrap();
        let th = CharacterTable::compute(k4).unwrap();
        let res = restrict_row(&tg, 0, th.class_table()).unwrap();
        assert_eq!(decompose(&res, &th).unwrap(), vec![1, 0, 0, 0]);
        let res = restrict_row(&tg, 3, th.class_table()).unwrap();
        assert_eq!(decompose(&res, &th).unwrap(), vec![0, 1, 1, 1]);
    }

    #[test]
    fn non_subgroup_rejected() {
        let a = group(4, &[&[&[1, 2, 3]]]);
        let b = group(4, &[&[&[1, 2, 4]]]);
        let ta = CharacterTable::compute(a).unwrap();
        let tb = CharacterTable::compute(b).unwrap();
        assert!(matches!(restrict_row(&ta, 0, tb.class_table()), Err(Error::NotSubgroup)));
        assert!(matches!(induce(ta.class_table(), ta.row(0), tb.class_table()), Err(Error::NotSubgroup)));
    }
}
