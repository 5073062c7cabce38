//! Orbits of arbitrary actions, stabilizers by random Schreier generators, and the
//! action on right cosets of a subgroup.

use std::collections::HashMap;
use std::hash::Hash;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bsgs::Bsgs;
use super::{Perm, PermGroup};
use crate::error::{Error, Result};

/// An orbit with a Schreier tree over the group's generators.
pub struct OrbitTransversal<T> {
    pub points: Vec<T>,
    pub index: HashMap<T, usize>,
    parent: Vec<(u32, u32)>,
    gens: Vec<Perm>,
}

impl<T: Clone + Eq + Hash> OrbitTransversal<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// An element taking the start point to `points[i]`.
    pub fn transversal(&self, mut i: usize) -> Perm {
        let mut word = Vec::new();
        while i != 0 {
            let (p, g) = self.parent[i];
            word.push(g);
            i = p as usize;
        }
        let mut t = Perm::identity(self.gens.first().map_or(0, |g| g.degree()));
        for &g in word.iter().rev() {
            t = t.mul(&self.gens[g as usize]);
        }
        t
    }
}

pub fn orbit_transversal<T, F>(g: &PermGroup, start: T, act: F, cap: usize) -> Result<OrbitTransversal<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &Perm) -> T,
{
    let gens = g.gens().to_vec();
    let mut points = vec![start.clone()];
    let mut index = HashMap::new();
    index.insert(start, 0usize);
    let mut parent = vec![(0u32, 0u32)];
    let mut i = 0;
    while i < points.len() {
        for (k, s) in gens.iter().enumerate() {
            let y = act(&points[i], s);
            if !index.contains_key(&y) {
                if points.len() >= cap {
                    return Err(Error::Cap(format!("orbit exceeds {cap} points")));
                }
                index.insert(y.clone(), points.len());
                points.push(y);
                parent.push((i as u32, k as u32));
            }
        }
        i += 1;
    }
    Ok(OrbitTransversal { points, index, parent, gens })
}

/// Stabilizer of `start` under `act`, assembled from random Schreier generators until its
/// order reaches `|G| / |orbit|`.
pub fn stabilizer_of_action<T, F>(g: &PermGroup, start: T, act: F, cap: usize, seed: u64) -> Result<(PermGroup, usize)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &Perm) -> T,
{
    let orb = orbit_transversal(g, start.clone(), &act, cap)?;
    let target = g.order() / orb.len() as u128;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Bsgs::new(g.degree(), &[]);
    let mut gens = Vec::new();
    let mut misses = 0u32;
    while b.order() < target {
        let x = g.random_element(&mut rng);
        let y = act(&start, &x);
        let i = *orb.index.get(&y).ok_or_else(|| Error::Internal("orbit not closed".into()))?;
        let s = x.mul(&orb.transversal(i).inverse());
        if b.add_generator(s.clone(), None).unwrap() {
            gens.push(s);
            misses = 0;
        } else {
            misses += 1;
            if misses > 10_000 {
                return Err(Error::Internal("stabilizer search stalled".into()));
            }
        }
    }
    Ok((PermGroup::with_bsgs(gens, b), orb.len()))
}

impl PermGroup {
    /// Centralizer of an element, as the stabilizer under conjugation.
    pub fn centralizer(&self, x: &Perm, cap: usize, seed: u64) -> Result<PermGroup> {
        Ok(stabilizer_of_action(self, x.clone(), |a, g| a.conj(g), cap, seed)?.0)
    }

    /// Normalizer of a small subgroup, as the stabilizer of its element set.
    pub fn normalizer(&self, h: &PermGroup, cap: usize, seed: u64) -> Result<PermGroup> {
        let mut key = h.elements()?;
        key.sort();
        let act = |s: &Vec<Perm>, g: &Perm| {
            let mut v: Vec<Perm> = s.iter().map(|x| x.conj(g)).collect();
            v.sort();
            v
        };
        Ok(stabilizer_of_action(self, key, act, cap, seed)?.0)
    }

    /// `N_G(<a>)`. Each conjugate subgroup is keyed by the base images of a canonical
    /// generator: the one sending the first point of a regular `<a>`-orbit lowest.
    pub fn normalizer_of_cyclic(&self, a: &Perm, cap: usize, seed: u64) -> Result<PermGroup> {
        let o = a.order();
        let chain = self.bsgs();
        let base = chain.base();
        let canonical = |x: &Perm| -> Perm {
            let n = x.degree() as u32;
            let start = (0..n).find(|&p| {
                let mut q = x.image(p);
                let mut len = 1;
                while q != p {
                    q = x.image(q);
                    len += 1;
                }
                len == o
            });
            match start {
                Some(p) => {
                    let (mut best, mut best_k, mut q) = (u32::MAX, 1u64, p);
                    for k in 1..=o {
                        q = x.image(q);
                        if crate::arith::gcd64(k, o) == 1 && q < best {
                            best = q;
                            best_k = k;
                        }
                    }
                    x.pow(best_k as i64)
                }
                None => (1..o.max(2))
                    .filter(|&k| crate::arith::gcd64(k, o) == 1)
                    .map(|k| x.pow(k as i64))
                    .min()
                    .unwrap_or_else(|| x.clone()),
            }
        };
        let key_of = |x: &Perm| -> Vec<u32> {
            let c = canonical(x);
            base.iter().map(|&b| c.image(b)).collect()
        };
        let start = key_of(a);
        let act = |s: &Vec<u32>, g: &Perm| {
            let x = chain.element_from_base_images(s).expect("key outside the group");
            key_of(&x.conj(g))
        };
        Ok(stabilizer_of_action(self, start, act, cap, seed)?.0)
    }

    /// Setwise stabilizer of a set of points.
    pub fn set_stabilizer(&self, set: &[u32], cap: usize, seed: u64) -> Result<PermGroup> {
        let mut key = set.to_vec();
        key.sort_unstable();
        let act = |s: &Vec<u32>, g: &Perm| {
            let mut v: Vec<u32> = s.iter().map(|&x| g.image(x)).collect();
            v.sort_unstable();
            v
        };
        Ok(stabilizer_of_action(self, key, act, cap, seed)?.0)
    }
}

/// `G` acting on the right cosets of `K`, cosets named by lexicographically least
/// representatives.
pub struct CosetAction {
    pub degree: usize,
    pub group: PermGroup,
    k_chain: Bsgs,
    g_base: Vec<u32>,
    reps: Vec<Perm>,
    index: HashMap<Vec<u32>, usize>,
}

impl CosetAction {
    fn canonical(&self, g: &Perm) -> Perm {
        canonical_rep(&self.k_chain, g)
    }

    fn key(&self, g: &Perm) -> Vec<u32> {
        self.g_base.iter().map(|&b| g.image(b)).collect()
    }

    /// Coset index of `K g`.
    pub fn coset_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(&self.key(&self.canonical(g))).copied()
    }

    /// The permutation of cosets induced by an element of `G`.
    pub fn act(&self, g: &Perm) -> Result<Perm> {
        let images: Option<Vec<u32>> =
            self.reps.iter().map(|r| self.coset_of(&r.mul(g)).map(|i| i as u32)).collect();
        let images = images.ok_or_else(|| Error::Precondition("element not in the acting group".into()))?;
        Ok(Perm::from_images_unchecked(images))
    }

    pub fn act_group(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens: Result<Vec<Perm>> = h.gens().iter().map(|g| self.act(g)).collect();
        Ok(PermGroup::new(self.degree, gens?))
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.reps
    }
}

fn canonical_rep(k: &Bsgs, g: &Perm) -> Perm {
    let mut h = g.clone();
    for lv in &k.levels {
        let best = lv.orbit.iter().copied().min_by_key(|&p| h.image(p)).unwrap();
        if best != lv.base {
            h = lv.rep(best).unwrap().mul(&h);
        }
    }
    h
}

pub fn coset_action(g: &PermGroup, k: &PermGroup, cap: usize) -> Result<CosetAction> {
    let n = g.degree();
    let index_size = g.order() / k.order();
    if index_size > cap as u128 {
        return Err(Error::Cap(format!("coset action of degree {index_size} exceeds {cap}")));
    }
    let prefix: Vec<u32> = (0..n as u32).collect();
    let k_chain = Bsgs::with_base(n, k.gens(), &prefix);
    let g_base = g.bsgs().base();
    let mut ca = CosetAction {
        degree: 0,
        group: PermGroup::trivial(1),
        k_chain,
        g_base,
        reps: Vec::new(),
        index: HashMap::new(),
    };
    let id = canonical_rep(&ca.k_chain, &g.identity());
    ca.index.insert(ca.key(&id), 0);
    ca.reps.push(id);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.gens().len()];
    let mut i = 0;
    while i < ca.reps.len() {
        for (j, x) in g.gens().iter().enumerate() {
            let c = ca.canonical(&ca.reps[i].mul(x));
            let key = ca.key(&c);
            let idx = match ca.index.get(&key) {
                Some(&idx) => idx,
                None => {
                    let idx = ca.reps.len();
                    if idx >= cap {
                        return Err(Error::Cap(format!("coset action exceeds {cap} points")));
                    }
                    ca.index.insert(key, idx);
                    ca.reps.push(c);
                    idx
                }
            };
            images[j].push(idx as u32);
        }
        i += 1;
    }
    ca.degree = ca.reps.len();
    if ca.degree as u128 != index_size {
        return Err(Error::Internal(format!("found {} cosets, expected {index_size}", ca.degree)));
    }
    let gens = images.into_iter().map(Perm::from_images_unchecked).collect();
    ca.group = PermGroup::new(ca.degree, gens);
    Ok(ca)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_of_s3_in_s5() {
        let s5 = PermGroup::symmetric(5);
        let s3 = PermGroup::new(5, vec![Perm::from_cycles(5, &[vec![0, 1, 2]]).unwrap(), Perm::from_cycles(5, &[vec![0, 1]]).unwrap()]);
        let ca = coset_action(&s5, &s3, 1000).unwrap();
        assert_eq!(ca.degree, 20);
        assert!(ca.group.is_transitive());
        assert_eq!(ca.group.order(), 120);
        assert_eq!(ca.group.stabilizer(0).order(), 6);
        let whole = coset_action(&s5, &s5, 10).unwrap();
        assert_eq!(whole.degree, 1);
    }

    #[test]
    fn centralizer_and_normalizer() {
        let s5 = PermGroup::symmetric(5);
        let t = Perm::from_cycles(5, &[vec![0, 1]]).unwrap();
        assert_eq!(s5.centralizer(&t, 1000, 0).unwrap().order(), 12);
        let c5 = PermGroup::new(5, vec![Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap()]);
        assert_eq!(s5.normalizer(&c5, 1000, 0).unwrap().order(), 20);
        assert_eq!(s5.set_stabilizer(&[0, 1], 1000, 0).unwrap().order(), 12);
    }
}
