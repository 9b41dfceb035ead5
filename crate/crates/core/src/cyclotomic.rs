//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are stored in the power basis `1, z, .., z^(phi(n)-1)` with
//! `z = exp(2 pi i / n)`, reduced modulo the n-th cyclotomic polynomial.
//! An element is an algebraic integer exactly when every coefficient is an
//! integer.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, gcd, lcm};

struct FieldData {
    n: u32,
    phi: usize,
    /// `z^k` in the power basis for `0 <= k < n`.
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_poly(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d, memo);
            poly = poly_div_exact(&poly, &phi_d);
        }
    }
    memo.insert(n, poly.clone());
    poly
}

impl FieldData {
    fn build(n: u32) -> Self {
        let poly = cyclotomic_poly(n, &mut HashMap::new());
        let phi = poly.len() - 1;
        debug_assert_eq!(phi as u64, euler_phi(n as u64));
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by z and reduce the overflow term
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..phi - 1]);
            if top != 0 {
                for j in 0..phi {
                    next[j] -= top * poly[j];
                }
            }
            cur = next;
        }
        FieldData { n, phi, powers }
    }
}

fn field(n: u32) -> Arc<FieldData> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = map.lock().expect("field cache").get(&n) {
        return f.clone();
    }
    let f = Arc::new(FieldData::build(n));
    map.lock().expect("field cache").insert(n, f.clone());
    f
}

/// Coefficient recovery for `Q(zeta_m) -> Q(zeta_l)`: `phi(m)` pivot rows of
/// the embedding matrix and the inverse of that square block.
struct SubfieldSolver {
    pivot_rows: Vec<usize>,
    inverse: Vec<Vec<BigRational>>,
}

fn subfield_solver(l: u32, m: u32) -> Arc<SubfieldSolver> {
    static SOLVERS: OnceLock<Mutex<HashMap<(u32, u32), Arc<SubfieldSolver>>>> = OnceLock::new();
    let map = SOLVERS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = map.lock().expect("solver cache").get(&(l, m)) {
        return s.clone();
    }
    let fl = field(l);
    let fm = field(m);
    let step = (l / m) as usize;
    // columns: images of z_m^j in Q(zeta_l)
    let cols: Vec<&Vec<i64>> = (0..fm.phi).map(|j| &fl.powers[j * step]).collect();
    let rows = fl.phi;
    let width = fm.phi;
    // Gaussian elimination on [E | I_rows] restricted to choosing pivot rows.
    let mut mat: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| (0..width).map(|c| BigRational::from_integer(cols[c][r].into())).collect())
        .collect();
    let mut pivot_rows = Vec::new();
    let mut used = vec![false; rows];
    for c in 0..width {
        let r = (0..rows)
            .find(|&r| !used[r] && !mat[r][c].is_zero())
            .expect("embedding has full column rank");
        used[r] = true;
        pivot_rows.push(r);
        let inv = mat[r][c].recip();
        let pivot_row: Vec<BigRational> = mat[r].iter().map(|x| x * &inv).collect();
        for (rr, row) in mat.iter_mut().enumerate() {
            if rr != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    // invert the square block E[pivot_rows, :]
    let mut sq: Vec<Vec<BigRational>> = pivot_rows
        .iter()
        .map(|&r| {
            let mut row: Vec<BigRational> =
                (0..width).map(|c| BigRational::from_integer(cols[c][r].into())).collect();
            row.extend((0..width).map(|_| BigRational::zero()));
            row
        })
        .collect();
    for (i, row) in sq.iter_mut().enumerate() {
        row[width + i] = BigRational::one();
    }
    for c in 0..width {
        let r = (c..width).find(|&r| !sq[r][c].is_zero()).expect("nonsingular block");
        sq.swap(r, c);
        let inv = sq[c][c].recip();
        for x in sq[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = sq[c].clone();
        for (rr, row) in sq.iter_mut().enumerate() {
            if rr != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    let inverse = sq.into_iter().map(|row| row[width..].to_vec()).collect();
    let solver = Arc::new(SubfieldSolver { pivot_rows, inverse });
    map.lock().expect("solver cache").insert((l, m), solver.clone());
    solver
}

/// An element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        let phi = field(n).phi;
        Cyclotomic {
            n,
            coeffs: vec![BigRational::zero(); phi],
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic { n: 1, coeffs: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_power(n: u32, k: i64) -> Self {
        let f = field(n);
        let k = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            n,
            coeffs: f.powers[k].iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_power(n, 1)
    }

    /// Builds `sum c_k zeta_n^k` from arbitrary exponents.
    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let f = field(n);
        let mut coeffs = vec![BigRational::zero(); f.phi];
        for (k, c) in terms {
            let k = k.rem_euclid(n as i64) as usize;
            for (dst, &b) in coeffs.iter_mut().zip(&f.powers[k]) {
                if b != 0 {
                    *dst += &c * BigRational::from_integer(b.into());
                }
            }
        }
        Cyclotomic { n, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Nonzero power-basis terms `(k, c_k)`.
    pub fn terms(&self) -> Vec<(u32, BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let r = self.change_order(1).ok()?;
        Some(r.coeffs[0].clone())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Rewrites the element in `Q(zeta_m)` for a multiple `m` of its order.
    pub fn embed(&self, m: u32) -> Self {
        assert!(m % self.n == 0, "embedding target {m} is not a multiple of {}", self.n);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as i64;
        Self::from_terms(
            m,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 * step, c.clone())),
        )
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let l = lcm(a.n as u64, b.n as u64) as u32;
        (a.embed(l), b.embed(l))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn div_rational(&self, q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&q.recip()))
    }

    pub fn div_int(&self, k: i64) -> Result<Self> {
        self.div_rational(&BigRational::from_integer(k.into()))
    }

    /// Image under `zeta_n -> zeta_n^k`.
    pub fn galois_conjugate(&self, k: i64) -> Result<Self> {
        let n = self.n as i64;
        if gcd(k.rem_euclid(n) as u64, n as u64) != 1 {
            return Err(Error::GaloisIndex { k: k.rem_euclid(n) as u64, n: self.n });
        }
        Ok(Self::from_terms(
            self.n,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as i64 * k, c.clone())),
        ))
    }

    pub fn complex_conjugate(&self) -> Self {
        self.galois_conjugate(self.n as i64 - 1).expect("n-1 is a unit")
    }

    /// Rewrites the element at order `m`, failing when it does not lie in
    /// `Q(zeta_m)`.
    pub fn change_order(&self, m: u32) -> Result<Self> {
        if self.n == m {
            return Ok(self.clone());
        }
        if m % self.n == 0 {
            return Ok(self.embed(m));
        }
        let l = lcm(self.n as u64, m as u64) as u32;
        let a = self.embed(l);
        let not_in = Error::NotInSubfield { from: self.n, to: m };
        // fixed field of {k : k = 1 mod m} is Q(zeta_m)
        for k in (1..l as u64).step_by(m as usize) {
            if gcd(k, l as u64) == 1 && k != 1 && a.galois_conjugate(k as i64)?.coeffs != a.coeffs {
                return Err(not_in);
            }
        }
        let solver = subfield_solver(l, m);
        let coeffs: Vec<BigRational> = solver
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&solver.pivot_rows)
                    .fold(BigRational::zero(), |acc, (w, &r)| acc + w * &a.coeffs[r])
            })
            .collect();
        let out = Cyclotomic { n: m, coeffs };
        if out.embed(l).coeffs != a.coeffs {
            return Err(not_in);
        }
        Ok(out)
    }

    /// Complex value, for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Total order used for canonical sorting: lexicographic on the
    /// coefficient vectors at a common order.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = Self::common(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == rhs.n {
            return Cyclotomic {
                n: self.n,
                coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            };
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        &a + &b
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n != rhs.n {
            let (a, b) = Cyclotomic::common(self, rhs);
            return &a * &b;
        }
        let f = field(self.n);
        let phi = f.phi;
        let mut buf = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    buf[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = buf[..phi].to_vec();
        for (d, c) in buf.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (dst, &p) in coeffs.iter_mut().zip(&f.powers[d % f.n as usize]) {
                if p != 0 {
                    *dst += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { n: self.n, coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let z = match k {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, k),
            };
            if z.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&z);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&mag), z));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.n, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    n: u32,
    terms: Vec<(u32, String)>,
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator in '{s}'"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator in '{s}'"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(BigRational::new(num, den))
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            n: self.n,
            terms: self
                .terms()
                .into_iter()
                .map(|(k, c)| (k, format!("{}/{}", c.numer(), c.denom())))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CyclotomicRepr::deserialize(d)?;
        if repr.n == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        let mut terms = Vec::with_capacity(repr.terms.len());
        for (k, s) in repr.terms {
            terms.push((k as i64, parse_rational(&s).map_err(D::Error::custom)?));
        }
        Ok(Cyclotomic::from_terms(repr.n, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn i_squared() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
        assert_eq!((&i * &i).coeffs(), &[q(-1, 1), q(0, 1)]);
    }

    #[test]
    fn vanishing_sum() {
        let z = Cyclotomic::zeta(3);
        let s = &(&Cyclotomic::one() + &z) + &(&z * &z);
        assert!(s.is_zero());
    }

    #[test]
    fn conjugate_of_zeta7() {
        let c = Cyclotomic::zeta(7).complex_conjugate();
        // z^6 = -(1 + z + .. + z^5)
        assert_eq!(c.coeffs(), vec![q(-1, 1); 6].as_slice());
        let (re, im) = c.to_complex();
        let t = 2.0 * std::f64::consts::PI / 7.0;
        assert!((re - t.cos()).abs() < 1e-9 && (im + t.sin()).abs() < 1e-9);
    }

    #[test]
    fn galois_requires_unit() {
        assert!(matches!(Cyclotomic::zeta(6).galois_conjugate(3), Err(Error::GaloisIndex { .. })));
        assert!(Cyclotomic::one().div_int(0).is_err());
    }

    #[test]
    fn change_order_examples() {
        let five = Cyclotomic::from_int(5).embed(12);
        let r = five.change_order(1).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.coeffs(), &[q(5, 1)]);

        let z6 = Cyclotomic::zeta(6);
        let at3 = z6.change_order(3).unwrap();
        assert_eq!(at3.order(), 3);
        // zeta_6 = -zeta_3^2 = 1 + zeta_3
        assert_eq!(at3.coeffs(), &[q(1, 1), q(1, 1)]);
        let (a, b) = (z6.to_complex(), at3.to_complex());
        assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
        assert_eq!(at3, -&Cyclotomic::zeta_power(3, 2));

        assert!(matches!(Cyclotomic::zeta(8).change_order(4), Err(Error::NotInSubfield { .. })));
        // sqrt(2) = z8 + z8^7 is not in Q(i) either, but i = z8^2 is
        assert_eq!(Cyclotomic::zeta_power(8, 2).change_order(4).unwrap(), Cyclotomic::zeta(4));
    }

    #[test]
    fn json_shape() {
        let x = &Cyclotomic::zeta(12).scale(&q(-3, 2)) + &Cyclotomic::from_int(2);
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!({"n": 12, "terms": [[0, "2/1"], [1, "-3/2"]]}));
        let back: Cyclotomic = serde_json::from_value(v).unwrap();
        assert_eq!(back, x);
        assert_eq!(x.to_string(), "2 - 3/2*z12");
    }
}
