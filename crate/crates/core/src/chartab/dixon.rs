//! Dixon–Schneider: simultaneous eigenvectors of the class matrices over a
//! prime field `F_q` with `q = 1 mod exponent`, lifted exactly to
//! `Q(zeta_e)` through eigenvalue multiplicities.

use num_rational::BigRational;

use super::constants::ClassConstants;
use crate::classes::ClassTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::finite_field::{dixon_prime, primitive_root};
use crate::linalg::{nullspace, rref, Field, Matrix, PrimeField};

struct Subspace {
    basis: Matrix<u64>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_vectors(field: &PrimeField, mut vectors: Matrix<u64>) -> Self {
        let pivots = rref(field, &mut vectors);
        vectors.truncate(pivots.len());
        Subspace {
            basis: vectors,
            pivots,
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Splits `space` into the eigenspaces of `m` restricted to it.
fn split(field: &PrimeField, m: &Matrix<u64>, space: Subspace) -> Result<Vec<Subspace>> {
    let d = space.dim();
    // restricted[r][c]: coordinate r of m * basis_c
    let mut restricted = vec![vec![0u64; d]; d];
    for (c, b) in space.basis.iter().enumerate() {
        let image = crate::linalg::mat_vec(field, m, b);
        for (r, &pc) in space.pivots.iter().enumerate() {
            restricted[r][c] = image[pc];
        }
    }
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..field.p {
        if found == d {
            break;
        }
        let shifted: Matrix<u64> = restricted
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, &x)| if r == c { field.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let ns = nullspace(field, &shifted, d);
        if ns.is_empty() {
            continue;
        }
        found += ns.len();
        let vectors = ns
            .iter()
            .map(|coords| {
                let mut v = vec![0u64; space.basis[0].len()];
                for (c, &w) in coords.iter().enumerate() {
                    if w != 0 {
                        for (x, &y) in v.iter_mut().zip(&space.basis[c]) {
                            *x = field.add(*x, field.mul(w, y));
                        }
                    }
                }
                v
            })
            .collect();
        out.push(Subspace::from_vectors(field, vectors));
    }
    if found != d {
        return Err(Error::TableInconsistent(
            "class matrix not diagonalizable over the Dixon prime field".into(),
        ));
    }
    Ok(out)
}

/// Irreducible character values, one row per character, columns in class
/// order, each value at order `ct.exponent()`. Rows are unsorted.
pub fn character_values(ct: &ClassTable, constants: &ClassConstants) -> Result<Vec<Vec<Cyclotomic>>> {
    let k = ct.len();
    let order = ct.order();
    let e = ct.exponent();
    let q = dixon_prime(e, order);
    let field = PrimeField::new(q);

    let identity: Matrix<u64> = (0..k)
        .map(|r| (0..k).map(|c| u64::from(r == c)).collect())
        .collect();
    let mut spaces = vec![Subspace::from_vectors(&field, identity)];
    for j in 1..k {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let m: Matrix<u64> = (0..k)
            .map(|i| (0..k).map(|l| constants.get(j, i, l) % q).collect())
            .collect();
        let mut next = Vec::new();
        for s in spaces {
            if s.dim() == 1 {
                next.push(s);
            } else {
                next.extend(split(&field, &m, s)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.dim() != 1) {
        return Err(Error::TableInconsistent(
            "class matrices do not split into one-dimensional eigenspaces".into(),
        ));
    }

    let z = field.pow(primitive_root(q), (q - 1) / e);
    let e_inv = field.inv(e % q);
    let sqrt_bound = (1..).take_while(|d: &u64| d * d <= order).last().unwrap_or(1);

    let mut rows = Vec::with_capacity(k);
    for s in &spaces {
        let v = &s.basis[0];
        let scale = field.inv(v[0]);
        // central character values mod q
        let omega: Vec<u64> = v.iter().map(|&x| field.mul(x, scale)).collect();
        let mut norm = 0u64;
        for (c, &w) in omega.iter().enumerate() {
            let term = field.mul(field.mul(w, omega[ct.inverse_class(c)]), field.inv(ct.class(c).size % q));
            norm = field.add(norm, term);
        }
        if norm == 0 {
            return Err(Error::TableInconsistent("degenerate central character".into()));
        }
        let d2 = field.mul(order % q, field.inv(norm));
        let degree = (1..=sqrt_bound)
            .find(|&d| field.mul(d, d) == d2)
            .ok_or_else(|| Error::TableInconsistent("no degree matches the orthogonality norm".into()))?;
        let theta: Vec<u64> = omega
            .iter()
            .enumerate()
            .map(|(c, &w)| field.mul(field.mul(degree, w), field.inv(ct.class(c).size % q)))
            .collect();

        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let mut terms = Vec::new();
            let mut total = 0u64;
            for j in 0..e {
                let mut acc = 0u64;
                for s in 0..e {
                    let val = theta[ct.power(c, s)];
                    let exp = (e - (j * s) % e) % e;
                    acc = field.add(acc, field.mul(val, field.pow(z, exp)));
                }
                let m = field.mul(acc, e_inv);
                if m > degree {
                    return Err(Error::TableInconsistent(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree}"
                    )));
                }
                total += m;
                if m != 0 {
                    terms.push((j as i64, BigRational::from_integer(m.into())));
                }
            }
            if total != degree {
                return Err(Error::TableInconsistent("multiplicities do not sum to the degree".into()));
            }
            row.push(Cyclotomic::from_terms(e as u32, terms));
        }
        rows.push(row);
    }
    Ok(rows)
}
