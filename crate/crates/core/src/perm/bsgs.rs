//! Deterministic Schreier-Sims in Knuth's add/extend formulation, with explicit
//! transversals.

use super::Perm;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: u32,
    /// Strong generators first introduced at this level.
    pub gens: Vec<Perm>,
    pub orbit: Vec<u32>,
    index: Vec<u32>,
    reps: Vec<Perm>,
    inv: Vec<Perm>,
}

impl Level {
    fn new(base: u32, n: usize) -> Self {
        let mut index = vec![NONE; n];
        index[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            index,
            reps: vec![Perm::identity(n)],
            inv: vec![Perm::identity(n)],
        }
    }

    /// Transversal element mapping the base point to `p`.
    pub fn rep(&self, p: u32) -> Option<&Perm> {
        let i = self.index[p as usize];
        (i != NONE).then(|| &self.reps[i as usize])
    }

    pub fn rep_inv(&self, p: u32) -> Option<&Perm> {
        let i = self.index[p as usize];
        (i != NONE).then(|| &self.inv[i as usize])
    }
}

enum Work {
    Add(usize, Perm),
    Extend(usize, Perm),
}

/// Base and strong generating set.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    pub(crate) levels: Vec<Level>,
    prefix: Vec<u32>,
}

/// Returned when the order bound of a bounded build is exceeded.
#[derive(Debug)]
pub struct OrderExceeded;

impl Bsgs {
    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        Self::with_base(degree, gens, &[])
    }

    /// Uses the points of `prefix` as the leading base points (in order), creating trivial
    /// levels where needed.
    pub fn with_base(degree: usize, gens: &[Perm], prefix: &[u32]) -> Self {
        let mut b = Bsgs { degree, levels: Vec::new(), prefix: prefix.to_vec() };
        for g in gens {
            b.add_generator(g.clone(), None).expect("unbounded build");
        }
        b
    }

    /// Builds, giving up as soon as the group order is seen to exceed `bound`.
    pub fn bounded(degree: usize, gens: &[Perm], bound: u128) -> Result<Self, OrderExceeded> {
        let mut b = Bsgs { degree, levels: Vec::new(), prefix: Vec::new() };
        for g in gens {
            b.add_generator(g.clone(), Some(bound))?;
        }
        Ok(b)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Strong generators lying in the pointwise stabilizer of the first `l` base points.
    pub fn generators_from(&self, l: usize) -> Vec<Perm> {
        self.levels[l.min(self.levels.len())..].iter().flat_map(|lv| lv.gens.iter().cloned()).collect()
    }

    /// The chain from level `l` on: a BSGS of the pointwise stabilizer of the first `l`
    /// base points.
    pub fn suffix(&self, l: usize) -> Bsgs {
        let l = l.min(self.levels.len());
        Bsgs { degree: self.degree, levels: self.levels[l..].to_vec(), prefix: Vec::new() }
    }

    /// Sifts `g`; returns the residue and the level where sifting stopped.
    pub fn strip(&self, g: &Perm) -> (Perm, usize) {
        self.strip_from(0, g.clone())
    }

    fn strip_from(&self, l: usize, mut h: Perm) -> (Perm, usize) {
        let mut j = l;
        while j < self.levels.len() {
            let lv = &self.levels[j];
            match lv.rep_inv(h.image(lv.base)) {
                Some(inv) => h = h.mul(inv),
                None => return (h, j),
            }
            j += 1;
        }
        (h, j)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g);
        j == self.levels.len() && h.is_identity()
    }

    fn gens_ge(&self, l: usize) -> Vec<Perm> {
        self.generators_from(l)
    }

    /// Adds a generator to the group, updating the chain.
    pub fn add_generator(&mut self, g: Perm, bound: Option<u128>) -> Result<bool, OrderExceeded> {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        if self.contains(&g) {
            return Ok(false);
        }
        let mut stack = vec![Work::Add(0, g)];
        while let Some(w) = stack.pop() {
            match w {
                Work::Add(l, g) => self.add(l, g, &mut stack),
                Work::Extend(l, g) => {
                    let lv = &self.levels[l];
                    let p = g.image(lv.base);
                    if let Some(inv) = lv.rep_inv(p) {
                        let s = g.mul(inv);
                        if !s.is_identity() {
                            stack.push(Work::Add(l + 1, s));
                        }
                    } else {
                        let inv = g.inverse();
                        let lv = &mut self.levels[l];
                        lv.index[p as usize] = lv.orbit.len() as u32;
                        lv.orbit.push(p);
                        lv.reps.push(g.clone());
                        lv.inv.push(inv);
                        if let Some(b) = bound {
                            if self.order() > b {
                                return Err(OrderExceeded);
                            }
                        }
                        for s in self.gens_ge(l) {
                            stack.push(Work::Extend(l, g.mul(&s)));
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    fn add(&mut self, l: usize, g: Perm, stack: &mut Vec<Work>) {
        let (h, mut j) = self.strip_from(l, g);
        if j == self.levels.len() {
            if h.is_identity() {
                return;
            }
            loop {
                let next = self.levels.len();
                let b = match self.prefix.get(next) {
                    Some(&b) => b,
                    None => h.first_moved().expect("nonidentity residue"),
                };
                self.levels.push(Level::new(b, self.degree));
                if h.image(b) != b {
                    break;
                }
                j += 1;
            }
        }
        self.levels[j].gens.push(h.clone());
        for lp in 0..=j {
            let ts: Vec<Perm> = self.levels[lp].reps.iter().map(|t| t.mul(&h)).collect();
            for t in ts {
                stack.push(Work::Extend(lp, t));
            }
        }
    }

    /// Every element, as products of transversal elements.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        // g = u_{k-1} ... u_0
        for lv in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lv.reps.len());
            for g in &out {
                for u in &lv.reps {
                    next.push(g.mul(u));
                }
            }
            out = next;
        }
        out
    }

    /// Calls `f` on every element without storing the list.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm)) {
        fn walk(levels: &[Level], acc: &Perm, f: &mut dyn FnMut(&Perm)) {
            match levels.split_last() {
                None => f(acc),
                Some((lv, rest)) => {
                    for u in &lv.reps {
                        walk(rest, &acc.mul(u), f);
                    }
                }
            }
        }
        walk(&self.levels, &Perm::identity(self.degree), &mut f);
    }

    /// Uniformly random element driven by `pick(len)`.
    pub fn random_element(&self, mut pick: impl FnMut(usize) -> usize) -> Perm {
        let mut g = Perm::identity(self.degree);
        for lv in self.levels.iter().rev() {
            g = g.mul(&lv.reps[pick(lv.reps.len())]);
        }
        g
    }

    /// The element of the group with the given images of the base points, if any.
    pub fn element_from_base_images(&self, images: &[u32]) -> Option<Perm> {
        // g = u_{k-1} ... u_0 is built from level 0 upward: at level i we need
        // b_i^{u_i suffix} = target, i.e. b_i^{u_i} = target^{suffix^-1}
        let mut suffix = Perm::identity(self.degree);
        for (lv, &target) in self.levels.iter().zip(images) {
            let want = suffix.inverse().image(target);
            suffix = lv.rep(want)?.mul(&suffix);
        }
        Some(suffix)
    }

    /// Some element mapping the points `from[i]` to `to[i]`, using a chain whose base
    /// starts with `from`.
    pub fn map_tuple(&self, from: &[u32], to: &[u32]) -> Option<Perm> {
        let chain = Bsgs::with_base(self.degree, &self.strong_generators(), from);
        let mut suffix = Perm::identity(self.degree);
        for (lv, &target) in chain.levels.iter().zip(to) {
            let want = suffix.inverse().image(target);
            let u = lv.rep(want)?;
            suffix = u.mul(&suffix);
        }
        from.iter().zip(to).all(|(&a, &b)| suffix.image(a) == b).then_some(suffix)
    }
}
