//! Dense univariate polynomials over a `FieldTable`, lowest coefficient first.

use crate::arith;
use crate::field::{Elt, FieldTable};

pub type Poly = Vec<Elt>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(a: &[Elt]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(k: &FieldTable, a: &[Elt], b: &[Elt]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| k.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn sub(k: &FieldTable, a: &[Elt], b: &[Elt]) -> Poly {
    let nb: Poly = b.iter().map(|&c| k.neg(c)).collect();
    add(k, a, &nb)
}

pub fn mul(k: &FieldTable, a: &[Elt], b: &[Elt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    trim(out)
}

pub fn divrem(k: &FieldTable, a: &[Elt], b: &[Elt]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    let lead_inv = k.inv(b[db]);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![0; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = k.mul(r[dr], lead_inv);
        quo[dr - db] = c;
        for i in 0..=db {
            r[dr - db + i] = k.sub(r[dr - db + i], k.mul(c, b[i]));
        }
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn rem(k: &FieldTable, a: &[Elt], b: &[Elt]) -> Poly {
    divrem(k, a, b).1
}

pub fn monic(k: &FieldTable, a: &[Elt]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = k.inv(a[d]);
            trim(a.iter().map(|&c| k.mul(c, inv)).collect())
        }
    }
}

pub fn gcd(k: &FieldTable, a: &[Elt], b: &[Elt]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

pub fn mulmod(k: &FieldTable, a: &[Elt], b: &[Elt], m: &[Elt]) -> Poly {
    rem(k, &mul(k, a, b), m)
}

pub fn powmod(k: &FieldTable, base: &[Elt], mut e: u128, m: &[Elt]) -> Poly {
    let mut result = rem(k, &[1], m);
    let mut b = rem(k, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(k, &result, &b, m);
        }
        b = mulmod(k, &b, &b, m);
        e >>= 1;
    }
    result
}

/// Rabin's irreducibility test.
pub fn is_irreducible(k: &FieldTable, f: &[Elt]) -> bool {
    let d = match degree(f) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    let q = k.q() as u128;
    let x: Poly = vec![0, 1];
    // x^(q^i) mod f by repeated q-th powers
    let mut frob = vec![x.clone()];
    for i in 1..=d {
        let prev = frob[i - 1].clone();
        frob.push(powmod(k, &prev, q, f));
    }
    if sub(k, &frob[d], &x).iter().any(|&c| c != 0) {
        return false;
    }
    for (r, _) in arith::factorize(d as u64) {
        let h = sub(k, &frob[d / r as usize], &x);
        if degree(&gcd(k, &h, f)) != Some(0) {
            return false;
        }
    }
    true
}

/// Monic polynomials of degree `d` in lexicographic order of coefficient vectors read
/// from the constant term upward.
pub fn monic_of_degree(k: &FieldTable, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = k.q() as u64;
    let total = q.pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut c = vec![0u32; d + 1];
        for i in (0..d).rev() {
            c[i] = (idx % q) as u32;
            idx /= q;
        }
        c[d] = 1;
        c
    })
}

pub fn monic_irreducibles(k: &FieldTable, d: usize) -> Vec<Poly> {
    monic_of_degree(k, d).filter(|f| is_irreducible(k, f)).collect()
}

/// Whether `x` has order exactly `q^d - 1` modulo the degree-`d` polynomial `f`.
pub fn is_primitive(k: &FieldTable, f: &[Elt]) -> bool {
    let d = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if f[0] == 0 || !is_irreducible(k, f) {
        return false;
    }
    let n = arith::ipow128(k.q() as u128, d as u32) - 1;
    let x: Poly = vec![0, 1];
    if powmod(k, &x, n, f) != vec![1] {
        return false;
    }
    arith::prime_divisors(n)
        .into_iter()
        .all(|r| powmod(k, &x, n / r as u128, f) != vec![1])
}

pub fn least_primitive(k: &FieldTable, d: usize) -> Poly {
    monic_of_degree(k, d)
        .find(|f| is_primitive(k, f))
        .expect("primitive polynomials exist in every degree")
}

/// Distinct degrees of the irreducible factors of `f` (distinct-degree factorization).
pub fn factor_degrees(k: &FieldTable, f: &[Elt]) -> Vec<usize> {
    let mut f = monic(k, f);
    let mut out = Vec::new();
    let x: Poly = vec![0, 1];
    let mut xq = x.clone();
    let mut d = 0;
    while degree(&f).is_some_and(|n| n > 0) {
        d += 1;
        if 2 * d > degree(&f).unwrap() {
            out.push(degree(&f).unwrap());
            break;
        }
        xq = powmod(k, &xq, k.q() as u128, &f);
        let h = gcd(k, &sub(k, &xq, &x), &f);
        if degree(&h).is_some_and(|n| n > 0) {
            out.push(d);
            loop {
                let g = gcd(k, &f, &h);
                if degree(&g) == Some(0) {
                    break;
                }
                f = divrem(k, &f, &g).0;
            }
            xq = rem(k, &xq, &f);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn eval(k: &FieldTable, f: &[Elt], x: Elt) -> Elt {
    f.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTable;

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over GF(q): (1/d) sum mu(d/e) q^e
        let k = FieldTable::new(2, 1).unwrap();
        let counts: Vec<usize> = (1..=6).map(|d| monic_irreducibles(&k, d).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
        let k3 = FieldTable::new(3, 1).unwrap();
        assert_eq!(monic_irreducibles(&k3, 2).len(), 3);
        let k4 = FieldTable::new(2, 2).unwrap();
        assert_eq!(monic_irreducibles(&k4, 2).len(), 6);
    }

    #[test]
    fn irreducible_brute_force_gf3() {
        let k = FieldTable::new(3, 1).unwrap();
        for f in monic_of_degree(&k, 3) {
            let has_root = k.elements().any(|x| eval(&k, &f, x) == 0);
            assert_eq!(is_irreducible(&k, &f), !has_root);
        }
    }

    #[test]
    fn division_identity() {
        let k = FieldTable::new(5, 1).unwrap();
        let a = vec![1, 2, 3, 4, 1];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&k, &a, &b);
        assert_eq!(add(&k, &mul(&k, &q, &b), &r), trim(a));
        assert!(degree(&r).is_none_or(|d| d < 2));
    }

    #[test]
    fn factor_degrees_of_products() {
        let k = FieldTable::new(2, 1).unwrap();
        // (x+1)(x^2+x+1)(x^3+x+1)
        let f = mul(&k, &mul(&k, &[1, 1], &[1, 1, 1]), &[1, 1, 0, 1]);
        assert_eq!(factor_degrees(&k, &f), vec![1, 2, 3]);
        let g = mul(&k, &[1, 1, 1], &[1, 1, 1]);
        assert_eq!(factor_degrees(&k, &g), vec![2]);
        let h = mul(&k, &[1, 1, 0, 1], &[1, 0, 1, 1]);
        assert_eq!(factor_degrees(&k, &h), vec![3]);
    }

    #[test]
    fn least_primitive_gf2_degree3() {
        let k = FieldTable::new(2, 1).unwrap();
        assert_eq!(least_primitive(&k, 3), vec![1, 0, 1, 1]);
        assert_eq!(least_primitive(&k, 4), vec![1, 0, 0, 1, 1]);
    }
}
