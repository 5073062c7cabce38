//! Finite fields GF(p^f) with elements encoded as integers.
//!
//! Element `x` stands for the polynomial whose base-`p` digits (lowest first) are the
//! coefficients of `1, t, t^2, ...` modulo the defining polynomial. So `0` is zero, `1` is one
//! and the prime subfield is `0..p`. Multiplication goes through log/antilog tables.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};

pub type Elt = u32;

/// Largest supported field order.
pub const FIELD_CAP: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u32,
    pub f: u32,
    pub q: u32,
}

impl PrimePower {
    pub fn new(p: u32, f: u32) -> Result<Self> {
        if !arith::is_prime(p as u64) {
            return Err(Error::Param(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::Param("field degree must be positive".into()));
        }
        let q = (p as u64)
            .checked_pow(f)
            .filter(|&q| q <= FIELD_CAP as u64)
            .ok_or_else(|| Error::Cap(format!("field order {p}^{f} exceeds {FIELD_CAP}")))?;
        Ok(PrimePower { p, f, q: q as u32 })
    }

    pub fn from_q(q: u32) -> Result<Self> {
        let (p, f) = arith::prime_power(q as u64)
            .ok_or_else(|| Error::Param(format!("{q} is not a prime power")))?;
        Self::new(p as u32, f)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

pub struct FieldTable {
    pub spec: PrimePower,
    poly: Vec<Elt>,
    prim: Elt,
    log: Vec<u32>,
    exp: Vec<Elt>,
    add: Vec<Elt>,
    neg: Vec<Elt>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.spec.q)
    }
}

impl PartialEq for FieldTable {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for FieldTable {}

fn digits(x: u32, p: u32, f: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(f as usize);
    let mut x = x;
    for _ in 0..f {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiplication by `t` in GF(p)[t]/(poly), poly monic of degree f given by its low coefficients.
fn mul_t(x: u32, low: &[u32], p: u32) -> u32 {
    let f = low.len() as u32;
    let d = digits(x, p, f);
    let top = d[f as usize - 1];
    let mut out = vec![0u32; f as usize];
    for i in 0..f as usize {
        let shifted = if i == 0 { 0 } else { d[i - 1] };
        out[i] = (shifted + (p - (top * low[i]) % p)) % p;
    }
    undigits(&out, p)
}

/// Walks the powers of `t`; returns the antilog table if `t` has order `p^f - 1`.
fn power_cycle(low: &[u32], p: u32, q: u32) -> Option<Vec<u32>> {
    if low[0] == 0 {
        return None;
    }
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut x = 1u32;
    for k in 0..q - 1 {
        if k > 0 && x == 1 {
            return None;
        }
        exp.push(x);
        x = mul_t(x, low, p);
    }
    (x == 1).then_some(exp)
}

fn prime_field_order(g: u32, p: u32) -> u32 {
    let mut x = g % p;
    let mut k = 1;
    while x != 1 {
        x = ((x as u64 * g as u64) % p as u64) as u32;
        k += 1;
    }
    k
}

impl FieldTable {
    /// Builds GF(p^f). The defining polynomial is the lexicographically least primitive one
    /// (coefficients compared from the constant term up). For `f = 1` the tables use the least
    /// primitive root, which is generally not the root of that linear polynomial.
    pub fn new(p: u32, f: u32) -> Result<Self> {
        let spec = PrimePower::new(p, f)?;
        let q = spec.q;
        let (poly, exp, prim) = if f == 1 {
            let g = (1..p.max(2)).find(|&g| prime_field_order(g, p) == p - 1).unwrap_or(1);
            let mut exp = Vec::with_capacity(p as usize - 1);
            let mut x = 1u32;
            for _ in 0..p - 1 {
                exp.push(x);
                x = ((x as u64 * g as u64) % p as u64) as u32;
            }
            // x + c with -c primitive, c least
            let c = (1..p.max(2))
                .find(|&c| prime_field_order((p - c) % p, p) == p - 1 && !(p - c).is_multiple_of(p))
                .unwrap_or(1);
            (vec![c % p, 1], exp, g)
        } else {
            let mut found = None;
            for k in 0..p.pow(f) {
                // constant term varies slowest: lexicographic from the low end
                let mut low = vec![0u32; f as usize];
                let mut r = k;
                for i in (0..f as usize).rev() {
                    low[i] = r % p;
                    r /= p;
                }
                if let Some(exp) = power_cycle(&low, p, q) {
                    found = Some((low, exp));
                    break;
                }
            }
            let (mut low, exp) = found.expect("primitive polynomial exists");
            low.push(1);
            (low, exp, p)
        };
        let mut log = vec![u32::MAX; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        let mut exp2 = exp.clone();
        exp2.extend_from_slice(&exp);
        let neg: Vec<Elt> = (0..q)
            .map(|x| {
                let d: Vec<u32> = digits(x, p, f).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();
        let add = if p != 2 && q <= 1024 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = digits(a, p, f);
                for b in 0..q {
                    let db = digits(b, p, f);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = undigits(&s, p);
                }
            }
            t
        } else {
            Vec::new()
        };
        Ok(FieldTable { spec, poly, prim, log, exp: exp2, add, neg })
    }

    pub fn shared(p: u32, f: u32) -> Result<Arc<Self>> {
        Self::new(p, f).map(Arc::new)
    }

    pub fn of_order(q: u32) -> Result<Arc<Self>> {
        let s = PrimePower::from_q(q)?;
        Self::shared(s.p, s.f)
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.spec.q
    }
    #[inline]
    pub fn p(&self) -> u32 {
        self.spec.p
    }
    /// Defining polynomial, coefficients lowest degree first (monic).
    pub fn poly(&self) -> &[Elt] {
        &self.poly
    }
    pub fn primitive(&self) -> Elt {
        self.prim
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.spec.p == 2 {
            a ^ b
        } else if !self.add.is_empty() {
            self.add[(a * self.spec.q + b) as usize]
        } else {
            let (p, f) = (self.spec.p, self.spec.f);
            let s: Vec<u32> = digits(a, p, f)
                .iter()
                .zip(digits(b, p, f))
                .map(|(x, y)| (x + y) % p)
                .collect();
            undigits(&s, p)
        }
    }
    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }
    pub fn inv(&self, a: Elt) -> Elt {
        assert!(a != 0, "inverse of zero");
        let qm1 = self.spec.q - 1;
        self.exp[((qm1 - self.log[a as usize]) % qm1) as usize]
    }
    pub fn div(&self, a: Elt, b: Elt) -> Elt {
        self.mul(a, self.inv(b))
    }
    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let qm1 = (self.spec.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % qm1)) % qm1) as usize]
    }
    /// Discrete log base the primitive element.
    pub fn log(&self, a: Elt) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }
    pub fn exp(&self, k: u64) -> Elt {
        self.exp[(k % (self.spec.q as u64 - 1)) as usize]
    }
    /// `x^(p^k)`.
    pub fn frobenius(&self, x: Elt, k: u32) -> Elt {
        if x == 0 {
            return 0;
        }
        let qm1 = (self.spec.q - 1) as u64;
        let mut e = 1u64;
        for _ in 0..(k % self.spec.f) {
            e = (e * self.spec.p as u64) % qm1.max(1);
        }
        self.pow(x, e)
    }
    pub fn is_square(&self, x: Elt) -> bool {
        x == 0 || self.spec.p == 2 || self.log[x as usize].is_multiple_of(2)
    }
    pub fn order(&self, x: Elt) -> u64 {
        assert!(x != 0);
        let qm1 = (self.spec.q - 1) as u64;
        qm1 / arith::gcd64(qm1, self.log[x as usize] as u64)
    }
    /// The integer `k` read in the prime field.
    pub fn from_int(&self, k: i64) -> Elt {
        k.rem_euclid(self.spec.p as i64) as Elt
    }
    pub fn elements(&self) -> std::ops::Range<Elt> {
        0..self.spec.q
    }
    pub fn nonzero(&self) -> std::ops::Range<Elt> {
        1..self.spec.q
    }
    /// Least non-square (odd q).
    pub fn least_nonsquare(&self) -> Option<Elt> {
        self.nonzero().find(|&x| !self.is_square(x))
    }
    pub fn sqrt(&self, x: Elt) -> Option<Elt> {
        self.elements().find(|&y| self.mul(y, y) == x)
    }
}

/// An embedding GF(q) -> GF(q^k) as a table of images.
pub fn subfield_embedding(small: &FieldTable, big: &FieldTable) -> Result<Vec<Elt>> {
    let (s, b) = (small.spec, big.spec);
    if s.p != b.p || b.f % s.f != 0 {
        return Err(Error::Param(format!("GF({}) is not a subfield of GF({})", s.q, b.q)));
    }
    let mut img = vec![0u32; s.q as usize];
    if s.f == 1 {
        for x in 0..s.q {
            img[x as usize] = x;
        }
        return Ok(img);
    }
    // image of the primitive element: a root of its minimal polynomial of norm-type power
    let step = ((b.q - 1) / (s.q - 1)) as u64;
    let poly = small.poly();
    for j in 1..s.q as u64 - 1 {
        if arith::gcd64(j, s.q as u64 - 1) != 1 {
            continue;
        }
        let h = big.exp(step * j);
        let mut val = 0u32;
        for &c in poly.iter().rev() {
            val = big.add(big.mul(val, h), c);
        }
        if val == 0 {
            for k in 0..s.q as u64 - 1 {
                img[small.exp(k) as usize] = big.pow(h, k);
            }
            return Ok(img);
        }
    }
    Err(Error::Internal("no root of the subfield polynomial".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf7_primitive_is_3() {
        let f = FieldTable::new(7, 1).unwrap();
        assert_eq!(f.primitive(), 3);
        // oracle: least residue of multiplicative order 6
        let brute = (1..7u32).find(|&g| (1..7).map(|k| g.pow(k) % 7).filter(|&v| v == 1).count() == 1);
        assert_eq!(brute, Some(3));
        assert_eq!(f.poly(), &[2, 1]);
    }

    #[test]
    fn gf2_primitive_is_1() {
        let f = FieldTable::new(2, 1).unwrap();
        assert_eq!(f.primitive(), 1);
    }

    #[test]
    fn gf9_has_four_nonzero_squares() {
        let f = FieldTable::new(3, 2).unwrap();
        let mut sq: Vec<u32> = f.nonzero().map(|x| f.mul(x, x)).collect();
        sq.sort();
        sq.dedup();
        assert_eq!(sq.len(), 4);
        assert_eq!(f.poly(), &[2, 1, 1]);
        assert_eq!(f.nonzero().filter(|&x| f.is_square(x)).count(), 4);
    }

    #[test]
    fn frobenius_examples() {
        let f4 = FieldTable::new(2, 2).unwrap();
        let w = f4.primitive();
        assert_eq!(f4.frobenius(w, 1), f4.mul(w, w));
        assert_eq!(f4.frobenius(0, 1), 0);
        let f9 = FieldTable::new(3, 2).unwrap();
        for x in f9.elements() {
            assert_eq!(f9.frobenius(x, 2), x);
        }
    }

    #[test]
    fn is_square_examples() {
        let f7 = FieldTable::new(7, 1).unwrap();
        assert!(f7.is_square(2));
        assert!(f7.is_square(0));
        let f3 = FieldTable::new(3, 1).unwrap();
        assert!(!f3.is_square(2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldTable::new(6, 1).is_err());
        assert!(FieldTable::new(2, 17).is_err());
    }

    #[test]
    fn subfield_is_homomorphism() {
        for (p, a, b) in [(2, 1, 2), (2, 2, 4), (3, 1, 2), (2, 3, 6), (3, 2, 4)] {
            let s = FieldTable::new(p, a).unwrap();
            let l = FieldTable::new(p, b).unwrap();
            let e = subfield_embedding(&s, &l).unwrap();
            for x in s.elements() {
                for y in s.elements() {
                    assert_eq!(e[s.add(x, y) as usize], l.add(e[x as usize], e[y as usize]));
                    assert_eq!(e[s.mul(x, y) as usize], l.mul(e[x as usize], e[y as usize]));
                }
            }
        }
    }

    fn small_fields() -> Vec<(u32, u32)> {
        vec![(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (2, 9), (3, 4), (23, 2), (5, 3)]
    }

    #[test]
    fn exhaustive_axioms_small() {
        for (p, f) in small_fields() {
            let k = FieldTable::new(p, f).unwrap();
            let q = k.q();
            assert!(q <= 529);
            for x in k.nonzero() {
                assert_eq!(k.pow(x, (q - 1) as u64), 1);
                assert_eq!(k.mul(x, k.inv(x)), 1);
                assert_eq!(k.add(x, k.neg(x)), 0);
            }
            for x in k.elements() {
                for y in k.elements() {
                    let fx = k.frobenius(x, 1);
                    let fy = k.frobenius(y, 1);
                    assert_eq!(k.frobenius(k.add(x, y), 1), k.add(fx, fy));
                    assert_eq!(k.frobenius(k.mul(x, y), 1), k.mul(fx, fy));
                }
            }
            if p != 2 {
                let sq = k.nonzero().filter(|&x| k.is_square(x)).count() as u32;
                assert_eq!(sq, (q - 1) / 2);
            }
        }
    }

    proptest! {
        #[test]
        fn distributive(idx in 0usize..12, a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
            let (p, f) = small_fields()[idx];
            let k = FieldTable::new(p, f).unwrap();
            let q = k.q();
            let (a, b, c) = (a % q, b % q, c % q);
            prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
            prop_assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
            prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        }
    }
}
