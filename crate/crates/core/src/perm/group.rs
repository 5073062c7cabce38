use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bsgs::Bsgs;
use super::Perm;
use crate::error::{Error, Result};

/// Largest group order for which elements are listed explicitly.
pub const ENUM_CAP: u128 = 200_000;

/// A permutation group given by generators, with a lazily built stabilizer chain.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    bsgs: OnceLock<Bsgs>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let bsgs = OnceLock::new();
        if let Some(b) = self.bsgs.get() {
            let _ = bsgs.set(b.clone());
        }
        PermGroup { degree: self.degree, gens: self.gens.clone(), bsgs }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree {}, {} gens)", self.degree, self.gens.len())
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Self {
        for g in &gens {
            assert_eq!(g.degree(), degree, "generator of wrong degree");
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        PermGroup { degree, gens, bsgs: OnceLock::new() }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new())
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::from_cycles(degree, &[(0..degree as u32).collect()]).unwrap());
            gens.push(Perm::from_cycles(degree, &[vec![0, 1]]).unwrap());
        }
        Self::new(degree, gens)
    }

    pub fn from_bsgs(bsgs: Bsgs) -> Self {
        let degree = bsgs.degree();
        let gens = bsgs.strong_generators();
        let lock = OnceLock::new();
        let _ = lock.set(bsgs);
        PermGroup { degree, gens, bsgs: lock }
    }

    /// Generators together with a chain already known to describe the group they generate.
    pub(crate) fn with_bsgs(gens: Vec<Perm>, bsgs: Bsgs) -> Self {
        let g = PermGroup::new(bsgs.degree(), gens);
        let _ = g.bsgs.set(bsgs);
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn bsgs(&self) -> &Bsgs {
        self.bsgs.get_or_init(|| Bsgs::new(self.degree, &self.gens))
    }

    pub fn order(&self) -> u128 {
        self.bsgs().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.bsgs().contains(g)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Orbit in breadth-first order, generators applied in list order.
    pub fn orbit(&self, x: u32) -> Vec<u32> {
        assert!((x as usize) < self.degree, "point out of range");
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            let y = out[i];
            for g in &self.gens {
                let z = g.image(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    out.push(z);
                }
            }
            i += 1;
        }
        out
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree as u32 {
            if !seen[x as usize] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y as usize] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    pub fn stabilizer(&self, x: u32) -> PermGroup {
        self.pointwise_stabilizer(&[x])
    }

    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let b = Bsgs::with_base(self.degree, &self.bsgs().strong_generators(), points);
        let k = points.len().min(b.depth());
        // levels past the prefix may still move later prefix points if the chain ended early
        let sub = b.suffix(k);
        PermGroup::from_bsgs(sub)
    }

    /// Every orbit has length `|G|`.
    pub fn is_semiregular(&self) -> bool {
        let n = self.order();
        self.orbits().iter().all(|o| o.len() as u128 == n)
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree as u128
    }

    pub fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        PermGroup::new(self.degree, gens)
    }

    pub fn elements(&self) -> Result<Vec<Perm>> {
        let n = self.order();
        if n > ENUM_CAP {
            return Err(Error::Cap(format!("group of order {n} is too large to enumerate")));
        }
        Ok(self.bsgs().elements())
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Perm {
        self.bsgs().random_element(|n| rng.gen_range(0..n))
    }

    /// Smallest subgroup of `self` containing `xs` and normalized by `self`.
    pub fn normal_closure(&self, xs: &[Perm]) -> PermGroup {
        let mut b = Bsgs::new(self.degree, &[]);
        let mut gens = Vec::new();
        let mut queue: VecDeque<Perm> = xs.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if b.add_generator(x.clone(), None).unwrap() {
                gens.push(x.clone());
                for g in &self.gens {
                    queue.push_back(x.conj(g));
                }
            }
        }
        PermGroup::with_bsgs(gens, b)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// `[N, G]` for `N` normal in `self`.
    pub fn commutator_with(&self, n: &PermGroup) -> PermGroup {
        let comms: Vec<Perm> = n
            .gens
            .iter()
            .flat_map(|x| self.gens.iter().map(move |g| x.comm(g)))
            .filter(|c| !c.is_identity())
            .collect();
        self.normal_closure(&comms)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        self.commutator_with(self)
    }

    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_with(last);
            if next.order() == last.order() {
                break;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_trivial()
    }

    /// Nilpotency class, if nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last().unwrap().is_trivial().then(|| s.len() - 1)
    }

    pub fn center(&self) -> Result<PermGroup> {
        let els = self.elements()?;
        let z: Vec<Perm> = els
            .into_iter()
            .filter(|x| !x.is_identity() && self.gens.iter().all(|g| x.mul(g) == g.mul(x)))
            .collect();
        Ok(self.closure_of(&z))
    }

    /// The subgroup generated by `xs`, keeping only the generators that enlarge it.
    pub fn closure_of(&self, xs: &[Perm]) -> PermGroup {
        let mut b = Bsgs::new(self.degree, &[]);
        let mut gens = Vec::new();
        for x in xs {
            if b.add_generator(x.clone(), None).unwrap() {
                gens.push(x.clone());
            }
        }
        PermGroup::with_bsgs(gens, b)
    }

    /// Element orders as a sorted list of `(order, count)` pairs.
    pub fn order_statistics(&self) -> Result<Vec<(u64, usize)>> {
        let mut counts = std::collections::BTreeMap::new();
        for g in self.elements()? {
            *counts.entry(g.order()).or_insert(0usize) += 1;
        }
        Ok(counts.into_iter().collect())
    }

    pub fn exponent(&self) -> Result<u64> {
        Ok(self.order_statistics()?.iter().fold(1u64, |a, &(o, _)| crate::arith::lcm(a as u128, o as u128) as u64))
    }

    /// The restriction to an invariant set of points, renumbered by position.
    pub fn restrict(&self, points: &[u32]) -> Option<PermGroup> {
        let gens: Option<Vec<Perm>> = self.gens.iter().map(|g| g.restrict(points)).collect();
        Some(PermGroup::new(points.len(), gens?))
    }

    /// Conjugate subgroup `g^-1 self g`.
    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        PermGroup::new(self.degree, self.gens.iter().map(|x| x.conj(g)).collect())
    }

    /// Elements as a hash set (small groups only).
    pub fn element_set(&self) -> Result<HashSet<Perm>> {
        Ok(self.elements()?.into_iter().collect())
    }
}

/// Seeded product-replacement random walk over the generators.
pub struct ProductReplacement {
    slots: Vec<Perm>,
    acc: Perm,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    pub fn new(g: &PermGroup, seed: u64) -> Self {
        let mut slots: Vec<Perm> = g.gens().to_vec();
        if slots.is_empty() {
            slots.push(g.identity());
        }
        let base = slots.clone();
        while slots.len() < 10 {
            slots.push(base[slots.len() % base.len()].clone());
        }
        let mut pr = ProductReplacement { slots, acc: g.identity(), rng: ChaCha8Rng::seed_from_u64(seed) };
        for _ in 0..60 {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> Perm {
        let n = self.slots.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let inv = self.rng.gen_bool(0.5);
        let right = self.rng.gen_bool(0.5);
        let sj = if inv { self.slots[j].inverse() } else { self.slots[j].clone() };
        self.slots[i] = if right { self.slots[i].mul(&sj) } else { sj.mul(&self.slots[i]) };
        self.acc = self.acc.mul(&self.slots[i]);
        self.acc.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[u32]) -> Perm {
        Perm::from_cycles(n, &[c.to_vec()]).unwrap()
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for n in 1..=8usize {
            let s = PermGroup::symmetric(n);
            assert_eq!(s.order(), (1..=n as u128).product::<u128>());
        }
        let a5 = PermGroup::new(5, vec![cyc(5, &[0, 1, 2]), cyc(5, &[0, 1, 2, 3, 4])]);
        assert_eq!(a5.order(), 60);
        assert!(!a5.is_solvable());
        assert_eq!(a5.stabilizer(0).order(), 12);
        assert_eq!(PermGroup::trivial(4).order(), 1);
    }

    #[test]
    fn orbit_stabilizer_and_membership() {
        let g = PermGroup::new(6, vec![cyc(6, &[0, 1, 2]), cyc(6, &[3, 4])]);
        assert_eq!(g.order(), 6);
        assert_eq!(g.orbits().len(), 3);
        assert!(g.contains(&cyc(6, &[0, 2, 1])));
        assert!(!g.contains(&cyc(6, &[0, 1])));
        for x in 0..6 {
            assert_eq!(g.orbit(x).len() as u128 * g.stabilizer(x).order(), g.order());
        }
        assert!(g.is_abelian() && g.is_nilpotent());
    }

    #[test]
    fn series_of_s4() {
        let s4 = PermGroup::symmetric(4);
        let d: Vec<u128> = s4.derived_series().iter().map(|h| h.order()).collect();
        assert_eq!(d, vec![24, 12, 4, 1]);
        assert!(!s4.is_nilpotent());
        let d8 = PermGroup::new(4, vec![cyc(4, &[0, 1, 2, 3]), Perm::from_cycles(4, &[vec![0, 2]]).unwrap()]);
        assert_eq!(d8.nilpotency_class(), Some(2));
        assert_eq!(d8.center().unwrap().order(), 2);
    }

    #[test]
    fn base_images_determine_elements() {
        let s5 = PermGroup::symmetric(5);
        let b = s5.bsgs();
        for g in s5.elements().unwrap() {
            let imgs: Vec<u32> = b.base().iter().map(|&x| g.image(x)).collect();
            assert_eq!(b.element_from_base_images(&imgs).unwrap(), g);
        }
        let m = b.map_tuple(&[0, 1], &[3, 4]).unwrap();
        assert_eq!((m.image(0), m.image(1)), (3, 4));
    }
}
