//! Permutation groups: elements, stabilizer chains, orbits, structure and searches.

mod action;
mod bsgs;
mod group;
mod product;
mod search;
mod structure;

pub use action::{coset_action, orbit_transversal, stabilizer_of_action, CosetAction, OrbitTransversal};
pub use bsgs::Bsgs;
pub use group::{PermGroup, ProductReplacement, ENUM_CAP};
pub use product::{imprimitive_wreath, product_action, product_element, product_point, PRODUCT_CAP};
pub use search::{are_conjugate_regular, regular_subgroup_search, RegularClass};
pub use structure::{extraspecial_type, identify, p_part, ExtraspecialType};

use std::fmt;

/// A permutation of `0..n`, stored by images. Products compose left to right:
/// `x^(gh) = (x^g)^h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for c in self.cycles() {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    /// Checked constructor.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return None;
            }
        }
        Some(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_some());
        Perm { images }
    }

    /// From disjoint cycles on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Option<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x as usize >= n || y as usize >= n || std::mem::replace(&mut touched[x as usize], true) {
                    return None;
                }
                images[x as usize] = y;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn mul(&self, o: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), o.degree());
        Perm { images: self.images.iter().map(|&x| o.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Perm::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        result
    }

    /// `g^-1 self g`.
    pub fn conj(&self, g: &Perm) -> Perm {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Perm { images: out }
    }

    pub fn comm(&self, o: &Perm) -> Perm {
        self.inverse().mul(&o.inverse()).mul(self).mul(o)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 != x)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.images[s] == s as u32 {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                c.push(x);
                x = self.images[x as usize];
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths including fixed points, sorted decreasingly.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.extend(std::iter::repeat_n(1, self.fixed_points()));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| crate::arith::lcm(acc as u128, c.len() as u128) as u64)
    }

    /// Restriction to an invariant subset listed in `points`, renumbered by position.
    pub fn restrict(&self, points: &[u32]) -> Option<Perm> {
        let mut pos = std::collections::HashMap::with_capacity(points.len());
        for (i, &p) in points.iter().enumerate() {
            pos.insert(p, i as u32);
        }
        let images: Option<Vec<u32>> = points.iter().map(|&p| pos.get(&self.image(p)).copied()).collect();
        Perm::from_images(images?)
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`.
    pub fn parse_cycles(n: usize, s: &str) -> Option<Perm> {
        let mut cycles = Vec::new();
        for part in s.split('(').skip(1) {
            let body = part.split(')').next()?;
            let c: Option<Vec<u32>> = body
                .split(',')
                .map(|t| t.trim().parse::<u32>().ok().and_then(|v| v.checked_sub(1)))
                .collect();
            cycles.push(c?);
        }
        Perm::from_cycles(n, &cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(a.mul(&a.inverse()), Perm::identity(3));
        let c = a.conj(&b);
        assert_eq!(c, b.inverse().mul(&a).mul(&b));
    }

    #[test]
    fn parse_and_order() {
        let p = Perm::parse_cycles(11, "(3,7,11,8)(4,10,5,6)").unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.cycle_type(), vec![4, 4, 1, 1, 1]);
        assert!(Perm::parse_cycles(3, "(1,2)(2,3)").is_none());
        assert!(Perm::from_images(vec![0, 0]).is_none());
    }
}
