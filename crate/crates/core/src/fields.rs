//! Finite fields GF(p^f) with dense element indices.
//!
//! An element is stored as the index `c_0 + c_1 p + ... + c_{f-1} p^{f-1}` of
//! its coefficient vector modulo the field's defining polynomial. Addition is
//! digit-wise; multiplication goes through discrete log / antilog tables built
//! from the primitive element at construction time.

use std::fmt;

use crate::arith::{factorize, prime_power};
use crate::error::{Error, Result};

/// Largest extension degree supported by the brute-force irreducibility test.
pub const MAX_DEGREE: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    /// Monic, constant term first, length `f + 1`.
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(q). The defining polynomial is the lexicographically least
    /// monic irreducible of degree f, comparing coefficients constant term
    /// first; for prime fields it is `x`.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("field order {q} < 2")));
        }
        let (p, f) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        if f > MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "extension degree {f} exceeds {MAX_DEGREE}"
            )));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = least_irreducible(p, f);
        let mut field = Field {
            p,
            f,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_log_tables();
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidParameter(format!(
                "index {index} out of range for GF({})",
                self.q
            )))
        }
    }

    /// The image of an integer under `Z -> GF(p) -> GF(q)`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut idx = a.0;
        (0..self.f)
            .map(|_| {
                let d = idx % self.p;
                idx /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.f as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient vector {coeffs:?} invalid for GF({})",
                self.q
            )));
        }
        Ok(FieldElement(encode(coeffs, self.p)))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.f == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.f == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        self.digitwise(a, FieldElement(0), |x, _| (self.p - x) % self.p)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let n = self.q - 1;
        let k = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        FieldElement(self.exp[k as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let k = (n - self.log[a.0 as usize]) % n;
        Ok(FieldElement(self.exp[k as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent; negative exponents go through the inverse.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match e.signum() {
                1 => Ok(FieldElement(0)),
                0 => Ok(FieldElement(1)),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = (self.q - 1) as i64;
        let k = (self.log[a.0 as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Ok(FieldElement(self.exp[k as usize]))
    }

    /// The least-indexed generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.primitive)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(n / crate::arith::gcd(n, self.log[a.0 as usize]))
    }

    fn digitwise(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: impl Fn(u32, u32) -> u32,
    ) -> FieldElement {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += op(x % self.p, y % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    fn build_log_tables(&mut self) {
        let n = self.q - 1;
        let prime_divisors: Vec<u64> = factorize(n as u64).into_iter().map(|(l, _)| l).collect();
        let primitive = (1..self.q)
            .find(|&idx| {
                let a = decode(idx, self.p, self.f);
                prime_divisors.iter().all(|&l| {
                    let t = poly_pow(&a, n as u64 / l, self.p, &self.modulus);
                    encode(&t, self.p) != 1
                })
            })
            .expect("multiplicative group of a finite field is cyclic");
        self.primitive = primitive;
        let gen = decode(primitive, self.p, self.f);
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0; self.q as usize];
        let mut cur = decode(1, self.p, self.f);
        for k in 0..n {
            let idx = encode(&cur, self.p);
            exp.push(idx);
            log[idx as usize] = k;
            cur = poly_mulmod(&cur, &gen, self.p, &self.modulus);
        }
        self.exp = exp;
        self.log = log;
    }
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut idx: u32, p: u32, f: u32) -> Vec<u32> {
    (0..f)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

/// Product of two residues (length f) modulo the monic `modulus` (length f+1).
fn poly_mulmod(a: &[u32], b: &[u32], p: u32, modulus: &[u32]) -> Vec<u32> {
    let f = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * f];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (f..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (k, &m) in modulus.iter().enumerate() {
            let slot = top - f + k;
            prod[slot] = (prod[slot] + (p - c) * m % p) % p;
        }
    }
    prod.truncate(f);
    prod
}

fn poly_pow(a: &[u32], mut e: u64, p: u32, modulus: &[u32]) -> Vec<u32> {
    let f = modulus.len() - 1;
    let mut acc = decode(1, p, f as u32);
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, p, modulus);
        }
        base = poly_mulmod(&base, &base, p, modulus);
        e >>= 1;
    }
    acc
}

/// Remainder of `num` modulo a monic `den`, both constant term first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let d = den.len() - 1;
    while r.len() > d {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if c != 0 {
            for (k, &m) in den.iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p - c) * m % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomials of degree `deg`, constant term first.
fn monic_polys(p: u32, deg: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg);
    (0..count).map(move |mut k| {
        // constant term is the most significant digit, giving constant-first lexicographic order
        let mut coeffs = vec![0u32; deg as usize + 1];
        for i in (0..deg as usize).rev() {
            coeffs[i] = (k % p as u64) as u32;
            k /= p as u64;
        }
        coeffs[deg as usize] = 1;
        coeffs
    })
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    (1..=deg / 2)
        .all(|d| monic_polys(p, d).all(|factor| poly_rem(poly, &factor, p).iter().any(|&c| c != 0)))
}

fn least_irreducible(p: u32, f: u32) -> Vec<u32> {
    monic_polys(p, f)
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL_ORDERS: [u64; 22] = [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49,
    ];

    /// Schoolbook polynomial product reduced by the field's modulus, independent
    /// of the log tables.
    fn oracle_mul(fld: &Field, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = fld.characteristic();
        let (ca, cb) = (fld.coeffs(a), fld.coeffs(b));
        let mut prod = vec![0u32; ca.len() + cb.len()];
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let rem = poly_rem(&prod, fld.modulus(), p);
        fld.from_coeffs(&rem).unwrap()
    }

    #[test]
    fn construction() {
        let f5 = Field::new(5).unwrap();
        assert_eq!((f5.characteristic(), f5.degree()), (5, 1));
        assert_eq!(f5.modulus(), &[0, 1]);

        // monic quadratics over GF(3), constant first: x^2 (c=0) has root 0;
        // x^2+1 has no root in {0,1,2} since squares are {0,1}.
        let f9 = Field::new(9).unwrap();
        assert_eq!((f9.characteristic(), f9.degree()), (3, 2));
        assert_eq!(f9.modulus(), &[1, 0, 1]);

        assert_eq!(Field::new(6), Err(Error::NotAPrimePower(6)));
        assert!(matches!(Field::new(1), Err(Error::InvalidParameter(_))));
        assert!(matches!(Field::new(32), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn small_arithmetic() {
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.add(f5.from_int(2), f5.from_int(3)), f5.zero());
        let f7 = Field::new(7).unwrap();
        assert_eq!(f7.inv(f7.from_int(3)).unwrap(), f7.from_int(5));
        assert_eq!(f7.inv(f7.zero()), Err(Error::DivisionByZero));
        assert_eq!(f7.div(f7.one(), f7.zero()), Err(Error::DivisionByZero));
        assert_eq!(f7.pow(f7.from_int(3), -1).unwrap(), f7.from_int(5));
        assert_eq!(f7.pow(f7.zero(), 0).unwrap(), f7.one());
        assert_eq!(f7.pow(f7.zero(), -2), Err(Error::DivisionByZero));

        // GF(9) = GF(3)[x]/(x^2+1): x*x = -1 = 2, index of x is 3.
        let f9 = Field::new(9).unwrap();
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(x.index(), 3);
        assert_eq!(f9.mul(x, x), f9.from_coeffs(&[2, 0]).unwrap());
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::new(5).unwrap().primitive_element().index(), 2);
        assert_eq!(Field::new(3).unwrap().primitive_element().index(), 2);
        assert_eq!(Field::new(13).unwrap().primitive_element().index(), 2);
        for q in SMALL_ORDERS {
            let fld = Field::new(q).unwrap();
            let nu = fld.primitive_element();
            // oracle: least index whose powers by schoolbook multiplication hit q-1 values
            let least = (1..fld.order())
                .map(|i| fld.element(i).unwrap())
                .find(|&a| {
                    let mut seen = std::collections::HashSet::new();
                    let mut cur = fld.one();
                    for _ in 0..fld.order() - 1 {
                        seen.insert(cur);
                        cur = oracle_mul(&fld, cur, a);
                    }
                    seen.len() as u32 == fld.order() - 1
                })
                .unwrap();
            assert_eq!(nu, least, "GF({q})");
            let mut powers: Vec<_> = (0..q as i64 - 1).map(|k| fld.pow(nu, k).unwrap()).collect();
            powers.sort();
            powers.dedup();
            assert_eq!(powers.len() as u64, q - 1);
            assert_eq!(fld.multiplicative_order(nu).unwrap() as u64, q - 1);
        }
    }

    #[test]
    fn axioms_exhaustive() {
        for q in SMALL_ORDERS {
            let fld = Field::new(q).unwrap();
            let els: Vec<_> = fld.elements().collect();
            for &a in &els {
                assert_eq!(fld.pow(a, q as i64).unwrap(), a, "Frobenius in GF({q})");
                assert_eq!(fld.add(a, fld.neg(a)), fld.zero());
                if !a.is_zero() {
                    assert_eq!(fld.mul(a, fld.inv(a).unwrap()), fld.one());
                }
                for &b in &els {
                    assert_eq!(fld.mul(a, b), oracle_mul(&fld, a, b));
                    assert_eq!(fld.add(a, b), fld.add(b, a));
                    assert_eq!(fld.mul(a, b), fld.mul(b, a));
                }
            }
            for &a in &els {
                for &b in &els {
                    for &c in &els {
                        assert_eq!(fld.mul(fld.mul(a, b), c), fld.mul(a, fld.mul(b, c)));
                        assert_eq!(fld.add(fld.add(a, b), c), fld.add(a, fld.add(b, c)));
                        assert_eq!(
                            fld.mul(a, fld.add(b, c)),
                            fld.add(fld.mul(a, b), fld.mul(a, c))
                        );
                    }
                }
            }
        }
    }
}
