//! The residue field `F_{p^f}` and the reduction map from cyclotomic
//! integers of p'-order.

use num_rational::BigRational;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::{Field, PrimeField};
use crate::numtheory::{big_mod, gcd, inv_mod, is_prime, multiplicative_order, prime_divisors};

/// Largest field size for which log/antilog tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// An element of `F_{p^f}` encoded as `sum c_i p^i`, where `c_i` are the
/// coefficients of its polynomial representative modulo the field modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem(u32);

impl FFElem {
    pub fn encoding(self) -> u32 {
        self.0
    }
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = r[d] * lead_inv % p;
        for (j, &mj) in m.iter().enumerate() {
            let idx = d - dm + j;
            r[idx] = (r[idx] + p - c * mj % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_pow_x(e: u64, m: &[u64], p: u64) -> Vec<u64> {
    // x^e mod m by square and multiply
    let mut result = vec![1u64];
    let mut base = poly_rem(&[0, 1], m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &base, m, p);
        }
        base = poly_mul_mod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    poly_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

/// Rabin's irreducibility test for a monic polynomial of degree `f`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = (m.len() - 1) as u32;
    let x = vec![0, 1];
    if poly_sub(&poly_pow_x(p.pow(f), m, p), &poly_rem(&x, m, p), p) != Vec::<u64>::new() {
        return false;
    }
    prime_divisors(f as u64).into_iter().all(|r| {
        let h = poly_sub(&poly_pow_x(p.pow(f / r as u32), m, p), &x, p);
        poly_gcd(m, &h, p).len() == 1
    })
}

/// `F_{p^f}` with a deterministic modulus and log tables.
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u64,
    f: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GaloisField {
    /// The modulus is the monic irreducible polynomial of degree `f` whose
    /// lower coefficients `(c_{f-1}, .., c_0)` are lexicographically
    /// smallest, i.e. whose encoding `sum c_i p^i` is smallest.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p, f })?;
        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|code| {
                    let mut poly = decode_digits(code, p, f);
                    poly.push(1);
                    poly
                })
                .find(|poly| is_irreducible(poly, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let mut field = GaloisField {
            p,
            f,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = q - 1;
        let primes = prime_divisors(order);
        let generator = (1..q)
            .find(|&code| {
                primes
                    .iter()
                    .all(|&r| field.slow_pow(code as u32, order / r) != 1)
            })
            .expect("multiplicative group is cyclic") as u32;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i as u32;
            x = field.slow_mul(x, generator);
        }
        debug_assert_eq!(x, 1);
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn decode(&self, code: u32) -> Vec<u64> {
        decode_digits(code as u64, self.p, self.f)
    }

    fn encode(&self, coeffs: &[u64]) -> u32 {
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as u32
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mul_mod(&self.decode(a), &self.decode(b), &self.modulus, self.p);
        self.encode(&prod)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients from constant term up to the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Coefficients `c_0..c_{f-1}` of the polynomial representative.
    pub fn coeffs(&self, a: FFElem) -> Vec<u64> {
        self.decode(a.0)
    }

    pub fn from_int(&self, k: i64) -> FFElem {
        FFElem(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FFElem> {
        let den = big_mod(q.denom(), self.p);
        if den == 0 {
            return Err(Error::NonPIntegral { p: self.p });
        }
        let num = big_mod(q.numer(), self.p);
        Ok(FFElem((num * inv_mod(den, self.p) % self.p) as u32))
    }

    pub fn pow(&self, a: FFElem, e: u64) -> FFElem {
        if a.0 == 0 {
            return if e == 0 { self.one() } else { a };
        }
        let l = self.log[a.0 as usize] as u64;
        FFElem(self.exp[((l * (e % (self.q - 1))) % (self.q - 1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FFElem) -> u64 {
        let l = self.log[a.0 as usize] as u64;
        (self.q - 1) / gcd(l, self.q - 1)
    }

    /// Smallest-encoding generator of the multiplicative group.
    pub fn generator(&self) -> FFElem {
        FFElem(self.exp[1 % self.exp.len()])
    }
}

fn decode_digits(mut code: u64, p: u64, f: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(f as usize);
    for _ in 0..f {
        out.push(code % p);
        code /= p;
    }
    out
}

impl Field for GaloisField {
    type Elem = FFElem;

    fn zero(&self) -> FFElem {
        FFElem(0)
    }
    fn one(&self) -> FFElem {
        FFElem(1)
    }
    fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        if self.p == 2 {
            return FFElem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.f {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FFElem(out as u32)
    }
    fn neg(&self, a: FFElem) -> FFElem {
        let mut x = a.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.f {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FFElem(out as u32)
    }
    fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.0 == 0 || b.0 == 0 {
            return FFElem(0);
        }
        let s = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.q - 1);
        FFElem(self.exp[s as usize])
    }
    fn inv(&self, a: FFElem) -> FFElem {
        assert!(a.0 != 0, "inverse of zero");
        let l = self.log[a.0 as usize] as u64;
        FFElem(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }
}

/// Reduction `Z_(p)[zeta_n] -> F_{p^f}` for a p'-number `n`, fixed by the
/// image of `zeta_n`.
#[derive(Clone, Debug)]
pub struct ReductionContext {
    p: u64,
    n_reg: u32,
    field: GaloisField,
    zeta_image: FFElem,
}

impl ReductionContext {
    pub fn new(p: u64, n_reg: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n_reg == 0 || n_reg as u64 % p == 0 {
            return Err(Error::Validation(format!("{n_reg} is not a {p}'-number")));
        }
        let f = multiplicative_order(p, n_reg as u64) as u32;
        let field = GaloisField::new(p, f)?;
        let step = (field.size() - 1) / n_reg as u64;
        let g = field.generator();
        let zeta_image = (1..=n_reg as u64)
            .filter(|&j| gcd(j, n_reg as u64) == 1)
            .map(|j| field.pow(g, step * j))
            .min()
            .expect("n_reg >= 1");
        assert_eq!(field.element_order(zeta_image), n_reg as u64);
        Ok(ReductionContext {
            p,
            n_reg,
            field,
            zeta_image,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n_reg(&self) -> u32 {
        self.n_reg
    }

    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn zeta_image(&self) -> FFElem {
        self.zeta_image
    }

    /// The image of `a`; `a` must lie in `Q(zeta_{n_reg})` with p-integral
    /// coefficients.
    pub fn reduce(&self, a: &Cyclotomic) -> Result<FFElem> {
        let b = a.change_order(self.n_reg).map_err(|_| Error::PSingular)?;
        let f = &self.field;
        let mut acc = f.zero();
        for (k, c) in b.terms() {
            let c = f.from_rational(&c)?;
            acc = f.add(acc, f.mul(c, f.pow(self.zeta_image, k as u64)));
        }
        Ok(acc)
    }

    pub fn reduce_rational(&self, q: &BigRational) -> Result<FFElem> {
        self.field.from_rational(q)
    }
}

/// Smallest prime `q` with `q = 1 mod e` and `q^2 > 4 * order`.
pub fn dixon_prime(e: u64, order: u64) -> u64 {
    let mut q = e + 1;
    loop {
        if is_prime(q) && q * q > 4 * order {
            return q;
        }
        q += e;
    }
}

/// Smallest primitive root modulo the prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    let f = PrimeField::new(q);
    let primes = prime_divisors(q - 1);
    (1..q)
        .find(|&g| primes.iter().all(|&r| f.pow(g, (q - 1) / r) != 1))
        .expect("prime fields have primitive roots")
}
