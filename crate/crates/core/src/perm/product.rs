//! Product action of `G wr P` on `Delta^d` and the imprimitive action on `d` copies.

use super::{Perm, PermGroup};
use crate::error::{Error, Result};

pub const PRODUCT_CAP: usize = 100_000;

/// Mixed-radix index of the tuple `coords` (coordinate 0 least significant).
pub fn product_point(m: usize, coords: &[u32]) -> u32 {
    coords.iter().rev().fold(0u32, |acc, &c| acc * m as u32 + c)
}

fn coords_of(m: usize, d: usize, mut x: u32) -> Vec<u32> {
    (0..d)
        .map(|_| {
            let c = x % m as u32;
            x /= m as u32;
            c
        })
        .collect()
}

/// The element `(g_0, ..., g_{d-1}; sigma)`: coordinate `i` is moved by `g_i` and then
/// placed in position `sigma(i)`.
pub fn product_element(m: usize, gs: &[Perm], sigma: &Perm) -> Perm {
    let d = gs.len();
    let n = m.pow(d as u32);
    let images = (0..n as u32)
        .map(|x| {
            let c = coords_of(m, d, x);
            let mut out = vec![0u32; d];
            for i in 0..d {
                out[sigma.image(i as u32) as usize] = gs[i].image(c[i]);
            }
            product_point(m, &out)
        })
        .collect();
    Perm::from_images_unchecked(images)
}

pub fn product_action(g1: &PermGroup, d: usize, top: &PermGroup) -> Result<PermGroup> {
    let m = g1.degree();
    let n = (m as u64).checked_pow(d as u32).filter(|&n| n <= PRODUCT_CAP as u64);
    if n.is_none() {
        return Err(Error::Cap(format!("product action of degree {m}^{d} exceeds {PRODUCT_CAP}")));
    }
    if top.degree() != d {
        return Err(Error::Param("top group must act on the coordinates".into()));
    }
    let id = Perm::identity(m);
    let mut gens = Vec::new();
    for i in 0..d {
        for g in g1.gens() {
            let mut gs = vec![id.clone(); d];
            gs[i] = g.clone();
            gens.push(product_element(m, &gs, &Perm::identity(d)));
        }
    }
    for s in top.gens() {
        gens.push(product_element(m, &vec![id.clone(); d], s));
    }
    Ok(PermGroup::new(m.pow(d as u32), gens))
}

/// `(g_0, ..., g_{d-1}; sigma)` on `d` disjoint copies of the `m` points, point `(i, x)`
/// numbered `i m + x`. This representation is faithful and small, which makes it the
/// convenient place to compute orders.
pub fn imprimitive_wreath(m: usize, gs: &[Perm], sigma: &Perm) -> Perm {
    let d = gs.len();
    let mut images = vec![0u32; m * d];
    for i in 0..d {
        for x in 0..m as u32 {
            images[i * m + x as usize] = sigma.image(i as u32) * m as u32 + gs[i].image(x);
        }
    }
    Perm::from_images_unchecked(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_wr_s2() {
        let s3 = PermGroup::symmetric(3);
        let w = product_action(&s3, 2, &PermGroup::symmetric(2)).unwrap();
        assert_eq!(w.degree(), 9);
        assert_eq!(w.order(), 72);
        let one = product_action(&s3, 1, &PermGroup::trivial(1)).unwrap();
        assert_eq!(one.order(), 6);
    }

    #[test]
    fn element_encodings_agree() {
        let a = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let sigma = Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        let x = product_element(3, &[a.clone(), b.clone()], &sigma);
        let y = product_element(3, &[b.clone(), a.clone()], &Perm::identity(2));
        // orders agree with the faithful imprimitive model
        let xi = imprimitive_wreath(3, &[a.clone(), b.clone()], &sigma);
        let yi = imprimitive_wreath(3, &[b, a], &Perm::identity(2));
        assert_eq!(x.mul(&y).order(), xi.mul(&yi).order());
    }
}
