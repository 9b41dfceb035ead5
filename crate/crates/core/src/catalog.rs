//! Builtin groups with named normal subgroups and golden data.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

#[derive(Clone, Debug)]
pub struct Expected {
    pub order: u64,
    pub class_count: usize,
    /// Sorted character degrees, when recorded.
    pub degrees: Option<Vec<u64>>,
    /// `(p, sizes of the blocks in block order)`.
    pub block_shapes: Vec<(u64, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub normal_subgroups: Vec<(String, Vec<Perm>)>,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn group(&self) -> Result<PermGroup> {
        PermGroup::from_generators(self.degree, self.generators.clone())
    }

    pub fn group_with_cap(&self, cap: usize) -> Result<PermGroup> {
        PermGroup::from_generators_with_cap(self.degree, self.generators.clone(), cap)
    }

    pub fn normal_subgroup(&self, g: &PermGroup, name: &str) -> Option<Result<PermGroup>> {
        self.normal_subgroups
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, gens)| g.subgroup_generated(gens))
    }
}

fn cyc(degree: usize, cycles: &[&[usize]]) -> Perm {
    Perm::from_cycles(degree, cycles).expect("catalog cycles are valid")
}

fn long_cycle(n: usize) -> Perm {
    let points: Vec<usize> = (1..=n).collect();
    cyc(n, &[&points])
}

fn expected(order: u64, class_count: usize, degrees: Option<&[u64]>) -> Expected {
    Expected {
        order,
        class_count,
        degrees: degrees.map(<[u64]>::to_vec),
        block_shapes: Vec::new(),
    }
}

fn entry(name: &str, degree: usize, generators: Vec<Perm>, normals: Vec<(&str, Vec<Perm>)>, expected: Expected) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        degree,
        generators,
        normal_subgroups: normals.into_iter().map(|(n, g)| (n.to_string(), g)).collect(),
        expected,
    }
}

fn cyclic(n: usize) -> CatalogEntry {
    let x = long_cycle(n);
    let normals = (2..n)
        .filter(|d| n % d == 0)
        .map(|d| (format!("C{d}"), vec![x.pow((n / d) as u64)]))
        .collect::<Vec<_>>();
    CatalogEntry {
        name: format!("C{n}"),
        degree: n,
        generators: vec![x],
        normal_subgroups: normals,
        expected: expected(n as u64, n, Some(&vec![1; n])),
    }
}

/// Right regular representation of the quaternion group on 8 points.
fn quaternion() -> (Perm, Perm) {
    // units 1, i, j, k with sign; index = 2 * unit + (sign < 0)
    let table = [[0usize, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let signs = [[1i8, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];
    let right_mul = |u: usize| {
        let images: Vec<usize> = (0..8)
            .map(|x| {
                let (a, s) = (x / 2, if x % 2 == 1 { -1 } else { 1 });
                let sign = s * signs[a][u];
                2 * table[a][u] + usize::from(sign < 0)
            })
            .collect();
        Perm::from_images(images).expect("quaternion multiplication is a bijection")
    };
    (right_mul(1), right_mul(2))
}

/// Action of a 2x2 matrix over F_3 on the 8 nonzero column vectors.
fn f3_matrix(m: [[i64; 2]; 2]) -> Perm {
    let vectors: Vec<(i64, i64)> = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect();
    let images = vectors
        .iter()
        .map(|&(a, b)| {
            let w = ((m[0][0] * a + m[0][1] * b).rem_euclid(3), (m[1][0] * a + m[1][1] * b).rem_euclid(3));
            vectors.iter().position(|&v| v == w).expect("nonzero image")
        })
        .collect();
    Perm::from_images(images).expect("invertible matrix")
}

/// Dihedral group of order `2n` on `n` points with its rotation subgroup.
fn dihedral(n: usize, degrees: Option<&[u64]>, class_count: usize) -> CatalogEntry {
    let r = long_cycle(n);
    let s = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).expect("reflection");
    entry(
        &format!("D{n}"),
        n,
        vec![r.clone(), s],
        vec![(&format!("C{n}"), vec![r])],
        expected(2 * n as u64, class_count, degrees),
    )
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (2..=12).map(cyclic).collect();

    out.push(entry(
        "K4",
        4,
        vec![cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])],
        vec![("C2", vec![cyc(4, &[&[1, 2], &[3, 4]])])],
        expected(4, 4, Some(&[1, 1, 1, 1])),
    ));
    out.push(dihedral(4, Some(&[1, 1, 1, 1, 2]), 5));
    out.push(dihedral(5, Some(&[1, 1, 2, 2]), 4));
    out.push(dihedral(6, Some(&[1, 1, 1, 1, 2, 2]), 6));
    out.push(dihedral(15, None, 9));

    let (qi, qj) = quaternion();
    out.push(entry(
        "Q8",
        8,
        vec![qi.clone(), qj],
        vec![("C4", vec![qi])],
        expected(8, 5, Some(&[1, 1, 1, 1, 2])),
    ));
    out.push(entry(
        "S3",
        3,
        vec![cyc(3, &[&[1, 2, 3]]), cyc(3, &[&[1, 2]])],
        vec![("C3", vec![cyc(3, &[&[1, 2, 3]])])],
        expected(6, 3, Some(&[1, 1, 2])),
    ));

    let k4 = vec![cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])];
    let mut s4 = entry(
        "S4",
        4,
        vec![cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])],
        vec![("A4", vec![cyc(4, &[&[1, 2, 3]]), cyc(4, &[&[2, 3, 4]])]), ("K4", k4.clone())],
        expected(24, 5, Some(&[1, 1, 2, 3, 3])),
    );
    s4.expected.block_shapes = vec![(2, vec![5]), (3, vec![3, 1, 1])];
    out.push(s4);

    let mut a4 = entry(
        "A4",
        4,
        vec![cyc(4, &[&[1, 2, 3]]), cyc(4, &[&[1, 2], &[3, 4]])],
        vec![("K4", k4)],
        expected(12, 4, Some(&[1, 1, 1, 3])),
    );
    a4.expected.block_shapes = vec![(2, vec![4]), (3, vec![3, 1])];
    out.push(a4);

    let mut a5 = entry(
        "A5",
        5,
        vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2, 3]])],
        vec![],
        expected(60, 5, Some(&[1, 3, 3, 4, 5])),
    );
    a5.expected.block_shapes = vec![(2, vec![4, 1]), (3, vec![3, 1, 1]), (5, vec![4, 1])];
    out.push(a5);

    out.push(entry(
        "SL(2,3)",
        8,
        vec![f3_matrix([[1, 1], [0, 1]]), f3_matrix([[1, 0], [1, 1]])],
        vec![("Q8", vec![f3_matrix([[0, -1], [1, 0]]), f3_matrix([[1, 1], [1, -1]])])],
        expected(24, 7, Some(&[1, 1, 1, 2, 2, 2, 3])),
    ));
    out.push(entry(
        "C7:C3",
        7,
        vec![long_cycle(7), cyc(7, &[&[2, 3, 5], &[4, 7, 6]])],
        vec![("C7", vec![long_cycle(7)])],
        expected(21, 5, Some(&[1, 1, 1, 3, 3])),
    ));
    out.push(entry(
        "C5:C4",
        5,
        vec![long_cycle(5), cyc(5, &[&[2, 3, 5, 4]])],
        vec![("C5", vec![long_cycle(5)])],
        expected(20, 5, Some(&[1, 1, 1, 1, 4])),
    ));
    out.push(entry(
        "C3xS3",
        6,
        vec![cyc(6, &[&[1, 2, 3]]), cyc(6, &[&[4, 5, 6]]), cyc(6, &[&[4, 5]])],
        vec![("C3xC3", vec![cyc(6, &[&[1, 2, 3]]), cyc(6, &[&[4, 5, 6]])])],
        expected(18, 9, Some(&[1, 1, 1, 1, 1, 1, 2, 2, 2])),
    ));
    out
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    find(name).ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_normality() {
        for e in catalog() {
            let g = e.group().unwrap();
            assert_eq!(g.order(), e.expected.order, "{}", e.name);
            for (n, _) in &e.normal_subgroups {
                let h = e.normal_subgroup(&g, n).unwrap().unwrap();
                assert!(g.is_normal_subgroup(&h), "{} > {}", e.name, n);
            }
        }
    }

    #[test]
    fn lookup_is_case_insensitive() {
        assert_eq!(lookup("a4").unwrap().name, "A4");
        assert!(matches!(lookup("nope"), Err(Error::UnknownGroup(_))));
    }
}
