use crate::classes::ClassTable;

/// Class multiplication coefficients: `C_i C_j = sum_k a(i, j, k) C_k` in
/// the class-sum basis of the centre of the group algebra, with
/// `a(i, j, k) = #{(x, y) in C_i x C_j : xy = z_k}` for a fixed `z_k in C_k`.
#[derive(Clone, Debug)]
pub struct ClassConstants {
    k: usize,
    data: Vec<u64>,
}

impl ClassConstants {
    pub fn new(ct: &ClassTable) -> Self {
        let k = ct.len();
        let g = ct.group();
        let mut data = vec![0u64; k * k * k];
        for (i, ci) in ct.classes().iter().enumerate() {
            for (l, cl) in ct.classes().iter().enumerate() {
                let z = &cl.representative;
                for &x in &ci.members {
                    let y = g.element(x).inverse().compose(z);
                    let j = ct.class_of(&y).expect("closed");
                    data[(i * k + j) * k + l] += 1;
                }
            }
        }
        ClassConstants { k, data }
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        self.data[(i * self.k + j) * self.k + l]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;
    use crate::perm::Perm;

    fn table(n: usize, gens: &[&[&[usize]]]) -> ClassTable {
        ClassTable::new(
            PermGroup::from_generators(n, gens.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect()).unwrap(),
        )
    }

    /// Direct count over all pairs of elements.
    fn pair_count(ct: &ClassTable, i: usize, j: usize, l: usize) -> u64 {
        let g = ct.group();
        let z = &ct.class(l).representative;
        let mut n = 0;
        for &x in &ct.class(i).members {
            for &y in &ct.class(j).members {
                if g.element(x).compose(g.element(y)) == *z {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn trivial_group() {
        let ct = ClassTable::new(PermGroup::trivial(2));
        assert_eq!(ClassConstants::new(&ct).get(0, 0, 0), 1);
    }

    #[test]
    fn a4_counts_and_sums() {
        let ct = table(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        let a = ClassConstants::new(&ct);
        let k = ct.len();
        for i in 0..k {
            for j in 0..k {
                let lhs: u64 = (0..k).map(|l| a.get(i, j, l) * ct.class(l).size).sum();
                assert_eq!(lhs, ct.class(i).size * ct.class(j).size);
                for l in 0..k {
                    assert_eq!(a.get(i, j, l), pair_count(&ct, i, j, l));
                    assert_eq!(a.get(0, j, l), u64::from(j == l));
                }
            }
        }
    }
}
