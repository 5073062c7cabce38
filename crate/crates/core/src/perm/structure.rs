//! Structural tests on small groups: extraspecial type, Sylow subgroups, names.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Perm, PermGroup};
use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtraspecialType {
    Plus,
    Minus,
    NotExtraspecial,
}

fn p_power(n: u128) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let f = arith::factorize128(n);
    (f.len() == 1).then(|| f[0])
}

pub fn extraspecial_type(g: &PermGroup) -> Result<ExtraspecialType> {
    use ExtraspecialType::*;
    let n = g.order();
    let Some((p, e)) = p_power(n) else { return Ok(NotExtraspecial) };
    if e < 3 || e % 2 == 0 {
        return Ok(NotExtraspecial);
    }
    let z = g.center()?;
    if z.order() != p as u128 {
        return Ok(NotExtraspecial);
    }
    let d = g.derived_subgroup();
    if d.order() != p as u128 || !d.is_subgroup_of(&z) {
        return Ok(NotExtraspecial);
    }
    let els = g.elements()?;
    if !els.iter().all(|x| z.contains(&x.pow(p as i64))) {
        return Ok(NotExtraspecial);
    }
    let m = (e - 1) / 2;
    if p == 2 {
        let sq_one = els.iter().filter(|x| x.pow(2).is_identity()).count() as u64;
        Ok(if sq_one == (1 << (2 * m)) + (1 << m) { Plus } else { Minus })
    } else {
        Ok(if els.iter().all(|x| x.pow(p as i64).is_identity()) { Plus } else { Minus })
    }
}

/// `|G|_p`.
pub fn p_part(n: u128, p: u64) -> u128 {
    let mut m = 1u128;
    let mut n = n;
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
        m *= p as u128;
    }
    m
}

fn is_p_power(n: u128, p: u64) -> bool {
    p_part(n, p) == n
}

impl PermGroup {
    /// A Sylow `p`-subgroup. Small groups are handled by growing a `p`-subgroup one
    /// normalizing element at a time; larger ones by passing to the centralizer of a
    /// random `p`-element that contains a full Sylow subgroup.
    pub fn sylow_subgroup(&self, p: u64, seed: u64) -> Result<PermGroup> {
        let target = p_part(self.order(), p);
        if target == 1 {
            return Ok(PermGroup::trivial(self.degree()));
        }
        if self.order() <= super::ENUM_CAP {
            return self.sylow_by_growth(p, target);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let x = self.random_element(&mut rng);
            let o = x.order() as u128;
            let pp = p_part(o, p);
            if pp == 1 {
                continue;
            }
            let y = x.pow((o / pp) as i64);
            // an element of the centre of a Sylow subgroup: raise to order p first
            let y = y.pow((pp / p as u128) as i64);
            let c = self.centralizer(&y, 4_000_000, seed)?;
            if p_part(c.order(), p) == target && c.order() < self.order() {
                return c.sylow_subgroup(p, seed.wrapping_add(1));
            }
        }
        Err(Error::Internal(format!("no Sylow {p}-subgroup found")))
    }

    /// Some subgroup of order exactly `n`, found by seeded random 2-generation: each
    /// generator is a random element powered down to an order dividing `n`. Failure after
    /// `budget` attempts says nothing about existence.
    pub fn random_subgroup_of_order(&self, n: u128, budget: usize, seed: u64) -> Result<Option<PermGroup>> {
        let order = self.order();
        if n == 0 || !order.is_multiple_of(n) {
            return Err(Error::Param(format!("{n} does not divide |G| = {order}")));
        }
        if n == order {
            return Ok(Some(self.clone()));
        }
        if n == 1 {
            return Ok(Some(PermGroup::trivial(self.degree())));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pr = super::ProductReplacement::new(self, seed);
        let primes = arith::prime_divisors(n);
        let draw = |rng: &mut ChaCha8Rng, pr: &mut super::ProductReplacement| -> Perm {
            let x = pr.next_element();
            let o = x.order() as u128;
            let d = arith::gcd(o, n);
            let y = x.pow((o / d) as i64);
            // now and then cut down to a single prime order
            if d > 1 && rng.gen_bool(0.3) {
                let ps: Vec<u64> = primes.iter().copied().filter(|&p| d.is_multiple_of(p as u128)).collect();
                let p = ps[rng.gen_range(0..ps.len())] as u128;
                return y.pow((d / p) as i64);
            }
            y
        };
        for _ in 0..budget {
            let a = draw(&mut rng, &mut pr);
            let b = draw(&mut rng, &mut pr);
            if a.is_identity() || b.is_identity() {
                continue;
            }
            let gens = vec![a, b];
            if let Ok(chain) = super::Bsgs::bounded(self.degree(), &gens, n) {
                if chain.order() == n {
                    return Ok(Some(PermGroup::with_bsgs(gens, chain)));
                }
            }
        }
        Ok(None)
    }

    fn sylow_by_growth(&self, p: u64, target: u128) -> Result<PermGroup> {
        let els = self.elements()?;
        let pels: Vec<&Perm> = els.iter().filter(|x| !x.is_identity() && is_p_power(x.order() as u128, p)).collect();
        let mut s = PermGroup::trivial(self.degree());
        while s.order() < target {
            let mut grown = false;
            for x in &pels {
                if s.contains(x) || !s.contains(&x.pow(p as i64)) {
                    continue;
                }
                let mut gens = s.gens().to_vec();
                gens.push((*x).clone());
                if let Ok(b) = super::Bsgs::bounded(self.degree(), &gens, target) {
                    if is_p_power(b.order(), p) {
                        s = PermGroup::with_bsgs(gens, b);
                        grown = true;
                        break;
                    }
                }
            }
            if !grown {
                return Err(Error::Internal("Sylow growth stalled".into()));
            }
        }
        Ok(s)
    }

    /// Nilpotency via the count of `p`-elements for each prime: an independent check of
    /// the lower-central-series test.
    pub fn is_nilpotent_by_sylow_counts(&self) -> Result<bool> {
        let els = self.elements()?;
        let n = self.order();
        for (p, _) in arith::factorize128(n) {
            let count = els.iter().filter(|x| is_p_power(x.order() as u128, p)).count() as u128;
            if count != p_part(n, p) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn abelian_invariants(stats: &[(u64, usize)], n: u128) -> Vec<u64> {
    // per prime: number of elements of order dividing p^k determines the partition
    let mut parts: Vec<Vec<u64>> = Vec::new();
    for (p, e) in arith::factorize128(n) {
        let mut prev_rank = 0u32;
        let mut at_least = Vec::new();
        for k in 1..=e {
            let pk = p.pow(k);
            let count: usize = stats.iter().filter(|(o, _)| pk % o == 0).map(|(_, c)| c).sum();
            let rank = (count as f64).log(p as f64).round() as u32;
            at_least.push(rank - prev_rank);
            prev_rank = rank;
        }
        // at_least[k-1] = number of cyclic factors of order >= p^k
        let mut sizes = Vec::new();
        for k in (1..=e as usize).rev() {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            for _ in 0..exactly {
                sizes.push(p.pow(k as u32));
            }
        }
        parts.push(sizes);
    }
    let len = parts.iter().map(|v| v.len()).max().unwrap_or(0);
    (0..len).map(|i| parts.iter().map(|v| v.get(i).copied().unwrap_or(1)).product()).collect()
}

fn abelian_name(inv: &[u64]) -> String {
    if inv.is_empty() {
        return "1".into();
    }
    inv.iter().map(|k| format!("C{k}")).collect::<Vec<_>>().join("x")
}

fn count_of(stats: &[(u64, usize)], o: u64) -> usize {
    stats.iter().find(|(k, _)| *k == o).map_or(0, |(_, c)| *c)
}

fn profile(stats: &[(u64, usize)]) -> String {
    stats.iter().map(|(o, c)| format!("{o}^{c}")).collect::<Vec<_>>().join(",")
}

fn p_group_name(g: &PermGroup, p: u64, stats: &[(u64, usize)]) -> Result<String> {
    let n = g.order();
    if g.is_abelian() {
        return Ok(abelian_name(&abelian_invariants(stats, n)));
    }
    match extraspecial_type(g)? {
        ExtraspecialType::NotExtraspecial => {}
        t if n == 8 => return Ok(if t == ExtraspecialType::Plus { "D8" } else { "Q8" }.into()),
        t => {
            let e = arith::factorize128(n)[0].1;
            let sign = if t == ExtraspecialType::Plus { "+" } else { "-" };
            return Ok(format!("{p}^(1+{}){sign}", e - 1));
        }
    }
    let half = n / p as u128;
    if p == 2 && stats.iter().any(|&(o, _)| o as u128 == half) {
        let invol = count_of(stats, 2) as u128;
        let name = if invol == half + 1 {
            "D"
        } else if invol == half / 2 + 1 {
            "SD"
        } else if invol == 1 {
            "Q"
        } else {
            "M"
        };
        return Ok(format!("{name}{n}"));
    }
    Ok(format!("[{n}:{}]", profile(stats)))
}

/// A descriptive name for a small group, derived from its element statistics. Covers the
/// groups met in the factorization tables; anything else gets its order profile.
pub fn identify(g: &PermGroup) -> Result<String> {
    let n = g.order();
    if n == 1 {
        return Ok("1".into());
    }
    let stats = g.order_statistics()?;
    if g.is_abelian() {
        return Ok(abelian_name(&abelian_invariants(&stats, n)));
    }
    if g.is_nilpotent() {
        let els = g.elements()?;
        let mut names = Vec::new();
        for (p, _) in arith::factorize128(n) {
            let pels: Vec<Perm> = els.iter().filter(|x| is_p_power(x.order() as u128, p)).cloned().collect();
            let s = g.closure_of(&pels);
            let sstats = s.order_statistics()?;
            names.push(p_group_name(&s, p, &sstats)?);
        }
        return Ok(names.join("x"));
    }
    let invol = count_of(&stats, 2) as u128;
    // dihedral: a cyclic subgroup of index 2 and only involutions outside it
    let half = n / 2;
    if n.is_multiple_of(2) && n >= 6 && stats.iter().any(|&(o, _)| o as u128 == half) && invol == half + half.is_multiple_of(2) as u128 {
        return Ok(format!("D{n}"));
    }
    let prof: Vec<(u64, usize)> = stats.clone();
    let table: &[(&str, &[(u64, usize)])] = &[
        ("A4", &[(1, 1), (2, 3), (3, 8)]),
        ("Dic3", &[(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)]),
        ("S4", &[(1, 1), (2, 9), (3, 8), (4, 6)]),
        ("SL(2,3)", &[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]),
        ("A4xC2", &[(1, 1), (2, 7), (3, 8), (6, 8)]),
        ("C3:D8", &[(1, 1), (2, 9), (3, 2), (4, 6), (6, 6)]),
        ("S3xC2xC2", &[(1, 1), (2, 15), (3, 2), (6, 6)]),
        ("S3xC3", &[(1, 1), (2, 3), (3, 8), (6, 6)]),
        ("A5", &[(1, 1), (2, 15), (3, 20), (5, 24)]),
        ("S5", &[(1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20)]),
        ("PSL(2,7)", &[(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)]),
        ("A6", &[(1, 1), (2, 45), (3, 80), (4, 90), (5, 144)]),
        ("PSL(2,11)", &[(1, 1), (2, 55), (3, 110), (5, 264), (6, 110), (11, 120)]),
    ];
    for (name, p) in table {
        if prof.as_slice() == *p {
            return Ok((*name).into());
        }
    }
    // Frobenius-type p:k with a normal Sylow p-subgroup of prime order
    let f = arith::factorize128(n);
    let (p, e) = *f.last().unwrap();
    if e == 1 && count_of(&stats, p) == p as usize - 1 {
        let k = n / p as u128;
        if stats.iter().any(|&(o, _)| o as u128 == k) {
            return Ok(format!("{p}:{k}"));
        }
    }
    Ok(format!("[{n}:{}]", profile(&stats)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, cs: &[&[u32]]) -> Perm {
        Perm::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn names_of_small_groups() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(identify(&s4).unwrap(), "S4");
        let a4 = PermGroup::new(4, vec![c(4, &[&[0, 1, 2]]), c(4, &[&[1, 2, 3]])]);
        assert_eq!(identify(&a4).unwrap(), "A4");
        let c6c2 = PermGroup::new(7, vec![c(7, &[&[0, 1, 2], &[3, 4]]), c(7, &[&[5, 6]])]);
        assert_eq!(identify(&c6c2).unwrap(), "C6xC2");
        let d12 = PermGroup::new(6, vec![c(6, &[&[0, 1, 2, 3, 4, 5]]), c(6, &[&[1, 5], &[2, 4]])]);
        assert_eq!(identify(&d12).unwrap(), "D12");
        let d8 = PermGroup::new(4, vec![c(4, &[&[0, 1, 2, 3]]), c(4, &[&[0, 2]])]);
        assert_eq!(identify(&d8).unwrap(), "D8");
        assert_eq!(extraspecial_type(&d8).unwrap(), ExtraspecialType::Plus);
        // Q8 in its regular representation
        let i = c(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]);
        let j = c(8, &[&[0, 4, 2, 6], &[1, 7, 3, 5]]);
        let q8 = PermGroup::new(8, vec![i, j]);
        assert_eq!(q8.order(), 8);
        assert_eq!(identify(&q8).unwrap(), "Q8");
        let c9 = PermGroup::new(9, vec![c(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]])]);
        assert_eq!(extraspecial_type(&c9).unwrap(), ExtraspecialType::NotExtraspecial);
        let borel = PermGroup::new(11, vec![c(11, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]]), c(11, &[&[1, 3, 9, 5, 4], &[2, 6, 7, 10, 8]])]);
        assert_eq!(borel.order(), 55);
        assert_eq!(identify(&borel).unwrap(), "11:5");
        assert!(borel.is_solvable() && !borel.is_nilpotent());
    }

    #[test]
    fn heisenberg_groups_mod_3() {
        // 3^(1+2)+ acting on Z3^2 by (x,y) -> (x+1,y), (x,y) -> (x,y+x)
        let pt = |x: u32, y: u32| x % 3 * 3 + y % 3;
        let a = Perm::from_images((0..9).map(|v| pt(v / 3 + 1, v % 3)).collect()).unwrap();
        let b = Perm::from_images((0..9).map(|v| pt(v / 3, v % 3 + v / 3)).collect()).unwrap();
        let t = Perm::from_images((0..9).map(|v| pt(v / 3, v % 3 + 1)).collect()).unwrap();
        let h = PermGroup::new(9, vec![a, b, t]);
        assert_eq!(h.order(), 27);
        assert_eq!(extraspecial_type(&h).unwrap(), ExtraspecialType::Plus);
        assert_eq!(h.nilpotency_class(), Some(2));
        // 3^(1+2)- as C9:C3 on 9 points: x -> x+1, x -> 4x
        let r = c(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]]);
        let s = Perm::from_images((0..9).map(|v| v * 4 % 9).collect()).unwrap();
        let m = PermGroup::new(9, vec![r, s]);
        assert_eq!(m.order(), 27);
        assert_eq!(extraspecial_type(&m).unwrap(), ExtraspecialType::Minus);
        assert_eq!(identify(&m).unwrap(), "3^(1+2)-");
    }

    #[test]
    fn sylow_and_nilpotency_oracle() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.sylow_subgroup(2, 0).unwrap().order(), 8);
        assert_eq!(s4.sylow_subgroup(3, 0).unwrap().order(), 3);
        assert!(!s4.is_nilpotent_by_sylow_counts().unwrap());
        let s6 = PermGroup::symmetric(6);
        assert_eq!(s6.sylow_subgroup(2, 0).unwrap().order(), 16);
        assert_eq!(s6.sylow_subgroup(3, 0).unwrap().order(), 9);
    }
}
