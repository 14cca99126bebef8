//! Finite fields GF(q) for prime powers q up to 2^16.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits of the
//! encoding are the polynomial coefficients, lowest degree in the least
//! significant digit. Extension fields are built modulo the lexicographically
//! smallest monic irreducible polynomial (coefficients compared from the
//! highest degree down), so encodings are deterministic but not
//! Conway-compatible.
//!
//! Fields with `q <= 4096` carry log/antilog tables; larger fields fall back
//! to polynomial multiplication.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 1 << 16;
const TABLE_LIMIT: u32 = 1 << 12;

/// Returns `(p, e)` with `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

fn smallest_prime_factor(x: u64) -> u64 {
    let mut f = 2;
    while f * f <= x {
        if x.is_multiple_of(f) {
            return f;
        }
        f += 1;
    }
    x
}

fn distinct_prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while x > 1 {
        let f = smallest_prime_factor(x);
        out.push(f);
        while x.is_multiple_of(f) {
            x /= f;
        }
    }
    out
}

/// An element of some GF(q), tagged with its field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement {
    value: u32,
    order: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct LogTables {
    // exp has length 2(q-1) so that log a + log b never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    tables: Option<LogTables>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        if !(2..=MAX_ORDER as u64).contains(&q) {
            return match prime_power(q) {
                Some(_) => Err(Error::FieldOrderOutOfRange(q)),
                None => Err(Error::NotPrimePower(q)),
            };
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let (q, p) = (q as u32, p as u32);
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, e)
        };
        let mut field = FiniteField {
            q,
            p,
            e,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Monic modulus, coefficients from degree 0 up to degree `e`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.q as u64 {
            return Err(Error::ValueOutOfRange {
                value,
                order: self.q,
            });
        }
        Ok(FieldElement {
            value: value as u32,
            order: self.q,
        })
    }

    /// All elements in encoding order `0, 1, ..., q-1`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |value| FieldElement {
            value,
            order: self.q,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            value: 0,
            order: self.q,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            value: 1,
            order: self.q,
        }
    }

    // ---- raw arithmetic on encodings; callers guarantee values < q ----

    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if self.e == 1 {
            (a + b) % self.p
        } else if self.p == 2 {
            a ^ b
        } else {
            self.digitwise(a, b, |x, y| (x + y) % self.p)
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        debug_assert!(a < self.q);
        if self.e == 1 {
            (self.p - a) % self.p
        } else if self.p == 2 {
            a
        } else {
            self.digitwise(a, 0, |x, _| (self.p - x) % self.p)
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None if self.e == 1 => ((a as u64 * b as u64) % self.p as u64) as u32,
            None => self.poly_mul(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let order = self.q - 1;
                t.exp[((order - t.log[a as usize]) % order) as usize]
            }
            None => self.pow(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u32, exp: u64) -> u32 {
        if exp == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let order = (self.q - 1) as u64;
            let l = (t.log[a as usize] as u64 * (exp % order)) % order;
            return t.exp[l as usize];
        }
        let (mut base, mut e, mut acc) = (a, exp, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    // ---- checked arithmetic on tagged elements ----

    fn check(&self, a: FieldElement) -> Result<u32> {
        if a.order != self.q {
            return Err(Error::FieldMismatch {
                left: self.q,
                right: a.order,
            });
        }
        Ok(a.value)
    }

    fn check_pair(&self, a: FieldElement, b: FieldElement) -> Result<(u32, u32)> {
        if a.order != b.order {
            return Err(Error::FieldMismatch {
                left: a.order,
                right: b.order,
            });
        }
        Ok((self.check(a)?, self.check(b)?))
    }

    fn wrap(&self, value: u32) -> FieldElement {
        FieldElement {
            value,
            order: self.q,
        }
    }

    pub fn try_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check_pair(a, b)?;
        Ok(self.wrap(self.add(a, b)))
    }

    pub fn try_sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check_pair(a, b)?;
        Ok(self.wrap(self.sub(a, b)))
    }

    pub fn try_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check_pair(a, b)?;
        Ok(self.wrap(self.mul(a, b)))
    }

    pub fn try_div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check_pair(a, b)?;
        self.div(a, b).map(|v| self.wrap(v)).ok_or(Error::DivisionByZero)
    }

    pub fn try_neg(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.neg(self.check(a)?)))
    }

    pub fn try_inv(&self, a: FieldElement) -> Result<FieldElement> {
        let a = self.check(a)?;
        self.inv(a).map(|v| self.wrap(v)).ok_or(Error::DivisionByZero)
    }

    pub fn try_pow(&self, a: FieldElement, exp: u64) -> Result<FieldElement> {
        Ok(self.wrap(self.pow(self.check(a)?, exp)))
    }

    // ---- internals ----

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0; self.e as usize];
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn digitwise(&self, a: u32, b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let out: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| op(x, y)).collect();
        self.pack(&out)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let product = poly::mul(&self.digits(a), &self.digits(b), self.p);
        let mut rem = poly::rem(&product, &self.modulus, self.p);
        rem.resize(self.e as usize, 0);
        self.pack(&rem)
    }

    fn build_tables(&self) -> LogTables {
        let order = self.q - 1;
        let factors = distinct_prime_factors(order as u64);
        let generator = (1..self.q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.slow_pow(g, order as u64 / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0; self.q as usize];
        let mut x = 1;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i;
            x = self.slow_mul(x, generator);
        }
        exp.extend_from_within(..);
        LogTables { exp, log }
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else {
            self.poly_mul(a, b)
        }
    }

    fn slow_pow(&self, a: u32, mut exp: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Lexicographically smallest monic irreducible of degree `e` over GF(p).
///
/// Monic polynomials are enumerated by packing the lower coefficients as a
/// base-`p` integer, which orders them high-degree coefficient first.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    (0..(p as u64).pow(e))
        .map(|v| {
            let mut coeffs = Vec::with_capacity(e as usize + 1);
            let mut v = v;
            for _ in 0..e {
                coeffs.push((v % p as u64) as u32);
                v /= p as u64;
            }
            coeffs.push(1);
            coeffs
        })
        .find(|f| poly::is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Dense polynomials over GF(p), coefficients lowest degree first.
pub(crate) mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap() as u64;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = (lead * c as u64) % p as u64;
                let slot = &mut r[shift + i];
                *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            for v in 0..(p as u64).pow(d as u32) {
                let mut g = Vec::with_capacity(d + 1);
                let mut v = v;
                for _ in 0..d {
                    g.push((v % p as u64) as u32);
                    v /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = FiniteField::new(5).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (5, 1));
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.neg(0), 0);
        let values: Vec<u32> = f.elements().map(FieldElement::value).collect();
        assert_eq!(values, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(FiniteField::new(6), Err(Error::NotPrimePower(6)));
        assert_eq!(FiniteField::new(1), Err(Error::NotPrimePower(1)));
        assert_eq!(FiniteField::new(1 << 17), Err(Error::FieldOrderOutOfRange(1 << 17)));
        assert!(FiniteField::new(12).is_err());
    }

    #[test]
    fn gf4_modulus_is_the_unique_irreducible_quadratic() {
        // Oracle: a monic quadratic over GF(2) is irreducible iff it has no root.
        let irreducible: Vec<[u32; 3]> = (0..4)
            .map(|v| [v & 1, v >> 1, 1])
            .filter(|c| (0..2).all(|x| (c[0] + c[1] * x + c[2] * x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf4_multiplication() {
        // x * x = x^2 = x + 1 mod x^2 + x + 1, i.e. 2 * 2 = 3.
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn moduli_are_irreducible_and_smallest() {
        for q in [4u64, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 256] {
            let f = FiniteField::new(q).unwrap();
            let p = f.characteristic();
            assert!(poly::is_irreducible(f.modulus(), p), "GF({q})");
            let packed = f.modulus()[..f.degree() as usize]
                .iter()
                .rev()
                .fold(0u64, |acc, &c| acc * p as u64 + c as u64);
            for smaller in 0..packed {
                let mut g: Vec<u32> = (0..f.degree())
                    .map(|i| ((smaller / (p as u64).pow(i)) % p as u64) as u32)
                    .collect();
                g.push(1);
                assert!(!poly::is_irreducible(&g, p), "GF({q}) {g:?}");
            }
        }
        assert_eq!(FiniteField::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(9).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FiniteField::new(q).unwrap();
            let q = q as u32;
            let p = f.characteristic() as u64;
            for a in 0..q {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, q as u64 - 1), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_polynomial_paths_agree() {
        let f = FiniteField::new(81).unwrap();
        for a in 0..81 {
            for b in 0..81 {
                assert_eq!(f.mul(a, b), f.slow_mul(a, b));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = FiniteField::new(1 << 16).unwrap();
        assert!(f.tables.is_none());
        for a in [1u32, 2, 3, 12345, 65535] {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        let g = FiniteField::new(65521).unwrap();
        assert_eq!(g.mul(65520, 65520), 1);
        assert_eq!(g.pow(7, 65520), 1);
    }

    #[test]
    fn construction_is_deterministic() {
        assert_eq!(FiniteField::new(27).unwrap(), FiniteField::new(27).unwrap());
    }

    #[test]
    fn checked_arithmetic() {
        let f5 = FiniteField::new(5).unwrap();
        let f7 = FiniteField::new(7).unwrap();
        let a = f5.element(3).unwrap();
        let b = f5.element(4).unwrap();
        assert_eq!(f5.try_mul(a, b).unwrap().value(), 2);
        assert_eq!(f5.try_inv(f5.element(2).unwrap()).unwrap().value(), 3);
        assert_eq!(f5.try_div(a, f5.zero()), Err(Error::DivisionByZero));
        assert_eq!(f5.try_inv(f5.zero()), Err(Error::DivisionByZero));
        assert_eq!(f5.try_pow(a, 0).unwrap(), f5.one());
        assert_eq!(f5.try_neg(a).unwrap().value(), 2);
        assert_eq!(f5.try_sub(a, b).unwrap().value(), 4);
        let c = f7.element(3).unwrap();
        assert!(matches!(f5.try_add(a, c), Err(Error::FieldMismatch { .. })));
        assert!(matches!(f7.try_neg(a), Err(Error::FieldMismatch { .. })));
        assert!(f5.element(5).is_err());
        let f9 = FiniteField::new(9).unwrap();
        assert_eq!(f9.elements().count(), 9);
        assert!(f9.elements().next().unwrap().is_zero());
    }
}
