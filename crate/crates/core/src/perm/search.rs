//! Regular subgroups of transitive groups of small degree, up to conjugacy.
//!
//! A regular subgroup consists, apart from the identity, of fixed-point-free elements and
//! contains exactly one element sending `0` to each point. Subgroups are grown one such
//! element at a time from a seed, keeping every intermediate subgroup semiregular with
//! order dividing the degree.

use std::collections::{HashMap, HashSet};

use super::structure::{extraspecial_type, identify, p_part, ExtraspecialType};
use super::{orbit_transversal, Perm, PermGroup, ENUM_CAP};
use crate::arith;
use crate::error::{Error, Result};

pub const SEARCH_DEGREE_CAP: usize = 64;
const CLASS_CAP: usize = 4_000_000;

#[derive(Clone, Debug)]
pub struct RegularClass {
    pub group: PermGroup,
    pub name: String,
    pub nilpotent: bool,
    pub extraspecial: ExtraspecialType,
}

/// Closure of `gens` as an element list, or `None` once it exceeds `bound` elements.
fn closure(gens: &[Perm], bound: usize) -> Option<Vec<Perm>> {
    let n = gens.first()?.degree();
    let mut seen: HashSet<Perm> = HashSet::new();
    let id = Perm::identity(n);
    seen.insert(id.clone());
    let mut els = vec![id];
    let mut i = 0;
    while i < els.len() {
        for s in gens {
            let y = els[i].mul(s);
            if seen.insert(y.clone()) {
                els.push(y);
                if els.len() > bound {
                    return None;
                }
            }
        }
        i += 1;
    }
    Some(els)
}

fn nilpotent_elements(els: &[Perm]) -> bool {
    let n = els.len() as u128;
    arith::factorize128(n).into_iter().all(|(p, _)| {
        let c = els.iter().filter(|x| p_part(x.order() as u128, p) == x.order() as u128).count();
        c as u128 == p_part(n, p)
    })
}

fn key_of(els: &[Perm]) -> Vec<Perm> {
    let mut k = els.to_vec();
    k.sort();
    k
}

/// Grows regular subgroups containing `seed` inside the subgroup whose fixed-point-free
/// elements are `pool` (indexed by the image of `0`).
fn grow(
    n: usize,
    seed: Vec<Perm>,
    pool: &HashMap<u32, Vec<Perm>>,
    nilpotent_only: bool,
    found: &mut Vec<Vec<Perm>>,
) {
    let mut visited: HashSet<Vec<Perm>> = HashSet::new();
    let Some(start) = closure(&seed, n) else { return };
    let mut stack = vec![(seed, start)];
    while let Some((gens, els)) = stack.pop() {
        if !visited.insert(key_of(&els)) {
            continue;
        }
        if els.len() == n {
            found.push(gens);
            continue;
        }
        let covered: HashSet<u32> = els.iter().map(|g| g.image(0)).collect();
        let x = (0..n as u32).find(|p| !covered.contains(p)).unwrap();
        for g in pool.get(&x).map(|v| v.as_slice()).unwrap_or(&[]) {
            let mut ng = gens.clone();
            ng.push(g.clone());
            let Some(t) = closure(&ng, n) else { continue };
            if !n.is_multiple_of(t.len()) || !t.iter().all(|y| y.is_identity() || y.is_fixed_point_free()) {
                continue;
            }
            if nilpotent_only && !nilpotent_elements(&t) {
                continue;
            }
            stack.push((ng, t));
        }
    }
}

fn pool_of(els: impl IntoIterator<Item = Perm>) -> HashMap<u32, Vec<Perm>> {
    let mut pool: HashMap<u32, Vec<Perm>> = HashMap::new();
    for g in els {
        if g.is_fixed_point_free() {
            pool.entry(g.image(0)).or_default().push(g);
        }
    }
    pool
}

/// Representatives of the `G`-classes of the elements in `cands`.
fn class_reps(g: &PermGroup, cands: Vec<Perm>) -> Result<Vec<Perm>> {
    let mut reps = Vec::new();
    let mut classes: Vec<HashSet<Perm>> = Vec::new();
    for x in cands {
        if classes.iter().any(|c| c.contains(&x)) {
            continue;
        }
        let orb = orbit_transversal(g, x.clone(), |a, s| a.conj(s), CLASS_CAP)?;
        classes.push(orb.points.into_iter().collect());
        reps.push(x);
    }
    Ok(reps)
}

/// Fixed-point-free elements of order `p`, one per `G`-class.
fn fpf_prime_class_reps(g: &PermGroup, p: u64, seed: u64) -> Result<Vec<Perm>> {
    let sylow = g.sylow_subgroup(p, seed)?;
    let cands: Vec<Perm> = sylow
        .elements()?
        .into_iter()
        .filter(|x| x.order() == p && x.is_fixed_point_free())
        .collect();
    class_reps(g, cands)
}

/// Conjugacy of two regular subgroups inside `g`: every conjugating element can be taken
/// to fix `0`, and then it is determined by an isomorphism between the two subgroups.
pub fn are_conjugate_regular(g: &PermGroup, r1: &PermGroup, r2: &PermGroup) -> Result<bool> {
    let n = g.degree();
    if r1.order() != r2.order() || r1.order() != n as u128 {
        return Ok(false);
    }
    let gens1 = r1.gens().to_vec();
    let els2 = r2.elements()?;
    let cands: Vec<Vec<&Perm>> = gens1
        .iter()
        .map(|x| els2.iter().filter(|y| y.order() == x.order()).collect())
        .collect();
    let orbit = r1.orbit(0);
    // BFS tree of the regular action of r1 from 0
    let mut tree: Vec<(u32, usize, u32)> = Vec::new();
    {
        let mut seen = vec![false; n];
        seen[0] = true;
        for &a in &orbit {
            for (k, x) in gens1.iter().enumerate() {
                let b = x.image(a);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    tree.push((a, k, b));
                }
            }
        }
    }
    let mut idx = vec![0usize; gens1.len()];
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(false);
    }
    loop {
        let ys: Vec<&Perm> = idx.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
        let mut f = vec![u32::MAX; n];
        f[0] = 0;
        for &(a, k, b) in &tree {
            f[b as usize] = ys[k].image(f[a as usize]);
        }
        let consistent = (0..n as u32).all(|a| gens1.iter().zip(&ys).all(|(x, y)| f[x.image(a) as usize] == y.image(f[a as usize])));
        if consistent {
            if let Some(fp) = Perm::from_images(f) {
                if g.contains(&fp) {
                    return Ok(true);
                }
            }
        }
        let mut t = 0;
        loop {
            if t == idx.len() {
                return Ok(false);
            }
            idx[t] += 1;
            if idx[t] < cands[t].len() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

fn finish(g: &PermGroup, found: Vec<Vec<Perm>>) -> Result<Vec<RegularClass>> {
    let mut classes: Vec<RegularClass> = Vec::new();
    let mut seen_keys: HashSet<Vec<Perm>> = HashSet::new();
    for gens in found {
        let r = PermGroup::new(g.degree(), gens);
        let r = r.closure_of(r.gens());
        if !seen_keys.insert(key_of(&r.elements()?)) {
            continue;
        }
        let mut dup = false;
        for c in &classes {
            if are_conjugate_regular(g, &r, &c.group)? {
                dup = true;
                break;
            }
        }
        if !dup {
            let name = identify(&r)?;
            let nilpotent = r.is_nilpotent();
            let extraspecial = extraspecial_type(&r)?;
            classes.push(RegularClass { group: r, name, nilpotent, extraspecial });
        }
    }
    classes.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(classes)
}

/// Regular subgroups of the transitive group `g`, one per conjugacy class.
///
/// When `g` is small enough to list, the search is exhaustive. Otherwise each candidate is
/// anchored on an elementary abelian normal subgroup `N` of rank at most 2 and grown
/// inside `N_G(N)`; this finds every solvable regular subgroup with such a minimal normal
/// subgroup (in particular every nilpotent one, anchored at a central subgroup of prime
/// order).
pub fn regular_subgroup_search(g: &PermGroup, nilpotent_only: bool, seed: u64) -> Result<Vec<RegularClass>> {
    let n = g.degree();
    if n > SEARCH_DEGREE_CAP {
        return Err(Error::Cap(format!("degree {n} exceeds search cap {SEARCH_DEGREE_CAP}")));
    }
    if !g.is_transitive() {
        return Err(Error::Precondition("group is not transitive".into()));
    }
    if n == 1 {
        return finish(g, vec![vec![]]);
    }
    let primes = arith::prime_divisors(n as u128);
    let mut found = Vec::new();
    if g.order() <= ENUM_CAP {
        let els = g.elements()?;
        let p = *primes.last().unwrap();
        let cands: Vec<Perm> = els.iter().filter(|x| x.order() == p && x.is_fixed_point_free()).cloned().collect();
        let reps = class_reps(g, cands)?;
        let pool = pool_of(els);
        for z in reps {
            grow(n, vec![z], &pool, nilpotent_only, &mut found);
        }
        return finish(g, found);
    }
    for &p in &primes {
        let reps = fpf_prime_class_reps(g, p, seed)?;
        for a in &reps {
            let class = orbit_transversal(g, a.clone(), |x, s| x.conj(s), CLASS_CAP)?;
            let cent = g.centralizer(a, CLASS_CAP, seed)?;
            let cent_els = cent.elements()?;
            let mut anchors: Vec<Vec<Perm>> = vec![vec![a.clone()]];
            if !nilpotent_only && (n as u64).is_multiple_of(p * p) {
                let mut keys = HashSet::new();
                for b in &cent_els {
                    if b.order() != p || !b.is_fixed_point_free() {
                        continue;
                    }
                    let Some(v) = closure(&[a.clone(), b.clone()], (p * p) as usize) else { continue };
                    if v.len() as u64 != p * p || !v.iter().all(|y| y.is_identity() || y.is_fixed_point_free()) {
                        continue;
                    }
                    if keys.insert(key_of(&v)) {
                        anchors.push(vec![a.clone(), b.clone()]);
                    }
                }
            }
            for anchor in anchors {
                let nn = closure(&anchor, n).unwrap();
                let nset: HashSet<Perm> = nn.iter().cloned().collect();
                // N_G(N): elements c * x_v with a^{x_v} = v for v in N, c in C_G(a)
                let mut normalizer = Vec::new();
                for v in &nn {
                    let Some(&i) = class.index.get(v) else { continue };
                    let xv = class.transversal(i);
                    for c in &cent_els {
                        let h = c.mul(&xv);
                        if anchor.iter().all(|w| nset.contains(&w.conj(&h))) {
                            normalizer.push(h);
                        }
                    }
                }
                let pool = pool_of(normalizer);
                grow(n, anchor, &pool, nilpotent_only, &mut found);
            }
        }
    }
    finish(g, found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_subgroups_of_s4() {
        // S4 on 4 points: regular subgroups are C4 and the normal V4
        let s4 = PermGroup::symmetric(4);
        let all = regular_subgroup_search(&s4, false, 0).unwrap();
        let names: Vec<&str> = all.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["C2xC2", "C4"]);
        assert!(all.iter().all(|c| c.group.is_regular()));
    }

    #[test]
    fn regular_subgroups_of_s6_on_6() {
        let s6 = PermGroup::symmetric(6);
        let all = regular_subgroup_search(&s6, false, 0).unwrap();
        let names: Vec<&str> = all.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["C6", "D6"]);
    }
}
