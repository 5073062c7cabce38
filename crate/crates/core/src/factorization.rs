//! Verification of a factorization `G = HK` through the action of `H` on `G/K`.
//!
//! `H` is transitive on the cosets of `K` exactly when `G = HK`, and regular exactly when
//! the factorization is exact. Every report carries the computed values next to the
//! expected ones; a mismatch is recorded and never stops the run.

use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

/// Largest `|H|` for which the orbit-counting sum runs over all elements.
pub const ORBIT_COUNT_LIMIT: u128 = 1_000_000;

/// Elements of `H` (as permutations of the domain) sharing a descriptor such as a Jordan
/// rank or an involution type, with the predicted number of fixed points of each.
#[derive(Clone, Debug)]
pub struct FixClass {
    pub descriptor: String,
    pub elements: Vec<Perm>,
    pub predicted_fix: Option<u64>,
    pub predicted_count: Option<u64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CensusEntry {
    pub descriptor: String,
    pub predicted: Option<u64>,
    pub observed: u64,
}

/// Outcome for one irreducible summand `W` when `H = W:C` is built from it.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SummandOutcome {
    pub index: usize,
    pub dim: usize,
    pub h_order: u128,
    pub orbits: usize,
    pub transitive: bool,
    pub selected: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Expectation {
    pub domain_size: Option<u128>,
    pub h_matrix_order: Option<u128>,
    pub transitive: Option<bool>,
    pub exact: Option<bool>,
    pub stabilizer_order: Option<u128>,
    pub divisible: Option<bool>,
}

/// A second action of `H` used for the exactness test when it differs from the
/// transitivity domain (for instance cosets of `Omega` rather than `O`).
#[derive(Clone, Debug)]
pub struct ExactAction {
    pub description: String,
    pub h: PermGroup,
}

/// `G_0` and `H` acting on the same domain, for the divisibility of `|G_0 : K cap G_0|`
/// by `|H cap G_0|`. With `k` set, all three live in some other faithful action and the
/// index is computed from `K cap G_0` instead of the orbit of `G_0` on the domain.
#[derive(Clone, Debug)]
pub struct Socle {
    pub name: String,
    pub g0: PermGroup,
    pub h: PermGroup,
    pub k: Option<PermGroup>,
}

#[derive(Clone, Debug)]
pub struct FactorizationInstance {
    pub label: String,
    pub ambient: String,
    pub h_name: String,
    pub k_name: String,
    pub domain: String,
    /// `H` acting on the domain.
    pub h: PermGroup,
    pub h_matrix_order: Option<u128>,
    /// The table value the acting order must match.
    pub ell: u128,
    pub exact_action: Option<ExactAction>,
    pub fix_classes: Vec<FixClass>,
    pub census: Vec<CensusEntry>,
    pub summands: Vec<SummandOutcome>,
    pub socle: Option<Socle>,
    pub expect: Expectation,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
}

impl FactorizationInstance {
    pub fn new(label: impl Into<String>, h: PermGroup, ell: u128) -> Self {
        FactorizationInstance {
            label: label.into(),
            ambient: String::new(),
            h_name: String::new(),
            k_name: String::new(),
            domain: String::new(),
            h,
            h_matrix_order: None,
            ell,
            exact_action: None,
            fix_classes: Vec::new(),
            census: Vec::new(),
            summands: Vec::new(),
            socle: None,
            expect: Expectation::default(),
            citations: Vec::new(),
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Every computed value matched, but some expectation could not be computed.
    Partial,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FixObservation {
    pub descriptor: String,
    pub count: u64,
    pub predicted_count: Option<u64>,
    /// Distinct fixed-point counts seen in the class.
    pub fix: Vec<u64>,
    pub predicted_fix: Option<u64>,
}

impl FixObservation {
    pub fn matches(&self) -> bool {
        self.predicted_count.is_none_or(|c| c == self.count)
            && self.predicted_fix.is_none_or(|f| self.fix == [f])
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DivisibilityWitness {
    pub socle: String,
    pub h_cap_g0: u128,
    pub index: u128,
    pub divides: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub label: String,
    pub ambient: String,
    pub h: String,
    pub k: String,
    pub domain: String,
    pub ell: u128,
    pub h_order: u128,
    pub h_matrix_order: Option<u128>,
    pub kernel_order: Option<u128>,
    pub domain_size: usize,
    pub orbit_sizes: Vec<usize>,
    pub transitive: bool,
    pub stabilizer_order: u128,
    pub exact: bool,
    pub exact_domain: String,
    /// The orbit-counting average as an exact fraction, `None` past the enumeration limit.
    pub orbit_count: Option<String>,
    pub fix_profile: Vec<FixObservation>,
    pub census: Vec<CensusEntry>,
    pub summands: Vec<SummandOutcome>,
    pub divisibility: Option<DivisibilityWitness>,
    pub checks: Vec<Check>,
    pub mismatches: Vec<String>,
    pub verdict: Verdict,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `(1/|H|) sum_h fix(h)` as an exact fraction.
pub fn orbit_count_check(h: &PermGroup) -> Result<Ratio<u128>> {
    let order = h.order();
    if order > ORBIT_COUNT_LIMIT {
        return Err(Error::Cap(format!("|H| = {order} is past the orbit-counting limit")));
    }
    let mut total: u128 = 0;
    h.bsgs().for_each_element(|g| total += g.fixed_points() as u128);
    Ok(Ratio::new(total, order))
}

/// The same average when `fix(h) = 0` outside the listed classes: only the identity and
/// the class elements contribute.
pub fn orbit_count_reduced(h: &PermGroup, classes: &[FixClass]) -> Ratio<u128> {
    let mut total = h.degree() as u128;
    for c in classes {
        total += c.elements.iter().map(|x| x.fixed_points() as u128).sum::<u128>();
    }
    Ratio::new(total, h.order())
}

pub fn fixpoint_profile(domain_size: usize, classes: &[FixClass]) -> Vec<FixObservation> {
    let mut out = vec![FixObservation {
        descriptor: "identity".into(),
        count: 1,
        predicted_count: Some(1),
        fix: vec![domain_size as u64],
        predicted_fix: Some(domain_size as u64),
    }];
    for c in classes {
        let mut fix: Vec<u64> = c.elements.iter().map(|x| x.fixed_points() as u64).collect();
        fix.sort_unstable();
        fix.dedup();
        out.push(FixObservation {
            descriptor: c.descriptor.clone(),
            count: c.elements.len() as u64,
            predicted_count: c.predicted_count,
            fix,
            predicted_fix: c.predicted_fix,
        });
    }
    out
}

pub fn divisibility_check(s: &Socle) -> Result<DivisibilityWitness> {
    if s.h.order() > ORBIT_COUNT_LIMIT {
        return Err(Error::Cap("H is too large to intersect with the socle by enumeration".into()));
    }
    let g0 = s.g0.bsgs();
    let mut inter: u128 = 0;
    s.h.bsgs().for_each_element(|x| inter += g0.contains(x) as u128);
    let index = match &s.k {
        None => s.g0.orbit(0).len() as u128,
        // G_0 is normal in <K, G_0>, so |K cap G_0| = |K||G_0| / |<K, G_0>|
        Some(k) => {
            let mut gens = k.gens().to_vec();
            gens.extend(s.g0.gens().iter().cloned());
            let join = PermGroup::new(s.g0.degree(), gens).order();
            s.g0.order() / (k.order() / (join / s.g0.order()))
        }
    };
    Ok(DivisibilityWitness { socle: s.name.clone(), h_cap_g0: inter, index, divides: index % inter == 0 })
}

/// A subgroup of index 2 in `h`, if there is one. Every such subgroup contains the
/// subgroup `N` generated by the squares, and `H/N` is elementary abelian, so dropping one
/// generator from a basis of `H/N` gives a hyperplane.
pub fn index_two_subgroup(h: &PermGroup) -> Option<PermGroup> {
    let gens = h.gens();
    let mut squares = Vec::new();
    for (i, s) in gens.iter().enumerate() {
        squares.push(s.mul(s));
        for t in &gens[i + 1..] {
            let st = s.mul(t);
            squares.push(st.mul(&st));
        }
    }
    let n = h.normal_closure(&squares);
    let mut basis: Vec<Perm> = Vec::new();
    let mut span = n.clone();
    for s in gens {
        if !span.contains(s) {
            basis.push(s.clone());
            let mut g = span.gens().to_vec();
            g.push(s.clone());
            span = h.subgroup(g);
        }
    }
    if basis.is_empty() {
        return None;
    }
    let mut kg = n.gens().to_vec();
    kg.extend(basis[1..].iter().cloned());
    Some(h.subgroup(kg))
}

/// The instance with `H` replaced by a subgroup of index 2, which must be intransitive.
pub fn index_two_control(inst: &FactorizationInstance) -> Result<FactorizationInstance> {
    let sub = index_two_subgroup(&inst.h)
        .ok_or_else(|| Error::Precondition(format!("{}: H = {} has no subgroup of index 2", inst.label, inst.h_name)))?;
    let mut out = FactorizationInstance::new(format!("{}/index-2", inst.label), sub.clone(), sub.order());
    out.ambient = inst.ambient.clone();
    out.h_name = format!("index-2 subgroup of {}", inst.h_name);
    out.k_name = inst.k_name.clone();
    out.domain = inst.domain.clone();
    out.expect.domain_size = inst.expect.domain_size;
    out.expect.transitive = Some(false);
    out.citations = inst.citations.clone();
    out.notes.push("negative control: an index-2 subgroup of H".into());
    Ok(out)
}

struct Checks(Vec<Check>);

impl Checks {
    fn push<T: PartialEq + std::fmt::Display>(&mut self, name: &str, expected: Option<T>, observed: T) {
        if let Some(e) = expected {
            let ok = e == observed;
            self.0.push(Check { name: name.into(), expected: e.to_string(), observed: observed.to_string(), ok });
        }
    }
}

pub fn verify(inst: &FactorizationInstance) -> VerificationReport {
    let start = Instant::now();
    let h = &inst.h;
    let n = h.degree();
    let h_order = h.order();
    let mut orbit_sizes: Vec<usize> = h.orbits().iter().map(|o| o.len()).collect();
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let transitive = orbit_sizes.len() == 1;
    let first_orbit = if n == 0 { 0 } else { h.orbit(0).len() as u128 };
    let stabilizer_order = if first_orbit == 0 { h_order } else { h_order / first_orbit };
    let (exact, exact_domain) = match &inst.exact_action {
        Some(a) => (a.h.is_regular(), a.description.clone()),
        None => (h.is_regular(), inst.domain.clone()),
    };
    let kernel_order = inst.h_matrix_order.map(|m| m / h_order);

    let mut checks = Checks(Vec::new());
    let mut notes = inst.notes.clone();
    checks.push("acting order equals ell", Some(inst.ell), h_order);
    checks.push("domain size", inst.expect.domain_size, n as u128);
    checks.push("matrix-level order", inst.expect.h_matrix_order, inst.h_matrix_order.unwrap_or(0));
    checks.push("transitive", inst.expect.transitive, transitive);
    checks.push("exact", inst.expect.exact, exact);
    checks.push("stabilizer order", inst.expect.stabilizer_order, stabilizer_order);
    if let Some(m) = inst.h_matrix_order {
        if m % h_order != 0 {
            checks.push("kernel divides matrix order", Some(true), false);
        }
    }

    let mut partial = false;
    let orbit_count = match orbit_count_check(h) {
        Ok(r) => {
            let ok = r.is_integer() && *r.numer() == orbit_sizes.len() as u128;
            checks.push("orbit count equals orbit-counting average", Some(true), ok);
            Some(format!("{}/{}", r.numer(), r.denom()))
        }
        Err(e) => {
            partial = true;
            notes.push(format!("orbit count not cross-checked: {e}"));
            None
        }
    };
    if !inst.fix_classes.is_empty() && orbit_count.is_none() {
        let r = orbit_count_reduced(h, &inst.fix_classes);
        notes.push(format!("class-restricted orbit count {}/{}", r.numer(), r.denom()));
    }

    let fix_profile = fixpoint_profile(n, &inst.fix_classes);
    for f in &fix_profile {
        if f.predicted_fix.is_some() || f.predicted_count.is_some() {
            checks.push(&format!("fix profile {}", f.descriptor), Some(true), f.matches());
        }
    }
    for c in &inst.census {
        checks.push(&format!("census {}", c.descriptor), c.predicted, c.observed);
    }

    let divisibility = match &inst.socle {
        Some(s) => match divisibility_check(s) {
            Ok(w) => {
                checks.push("socle divisibility", inst.expect.divisible, w.divides);
                Some(w)
            }
            Err(e) => {
                partial = true;
                notes.push(format!("divisibility not computed: {e}"));
                None
            }
        },
        None => None,
    };
    if exact && divisibility.as_ref().is_some_and(|w| !w.divides) {
        checks.push("exact implies divisibility", Some(true), false);
    }

    let checks = checks.0;
    let mismatches: Vec<String> = checks
        .iter()
        .filter(|c| !c.ok)
        .map(|c| format!("{}: expected {}, observed {}", c.name, c.expected, c.observed))
        .collect();
    let verdict = if !mismatches.is_empty() {
        Verdict::Fail
    } else if partial {
        Verdict::Partial
    } else {
        Verdict::Pass
    };
    VerificationReport {
        label: inst.label.clone(),
        ambient: inst.ambient.clone(),
        h: inst.h_name.clone(),
        k: inst.k_name.clone(),
        domain: inst.domain.clone(),
        ell: inst.ell,
        h_order,
        h_matrix_order: inst.h_matrix_order,
        kernel_order,
        domain_size: n,
        orbit_sizes,
        transitive,
        stabilizer_order,
        exact,
        exact_domain,
        orbit_count,
        fix_profile,
        census: inst.census.clone(),
        summands: inst.summands.clone(),
        divisibility,
        checks,
        mismatches,
        verdict,
        citations: inst.citations.clone(),
        notes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> PermGroup {
        let c = Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap();
        PermGroup::new(n, vec![c])
    }

    #[test]
    fn trivial_group_counts_every_point() {
        let h = PermGroup::trivial(9);
        assert_eq!(orbit_count_check(&h).unwrap(), Ratio::from_integer(9));
    }

    #[test]
    fn regular_cyclic_group_passes() {
        let mut inst = FactorizationInstance::new("C7", cyclic(7), 7);
        inst.expect = Expectation { transitive: Some(true), exact: Some(true), stabilizer_order: Some(1), ..Default::default() };
        let r = verify(&inst);
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.mismatches);
        assert_eq!(r.orbit_count.as_deref(), Some("1/1"));
    }

    #[test]
    fn mismatches_are_itemized_not_fatal() {
        let mut inst = FactorizationInstance::new("C6 on 7", PermGroup::new(7, vec![Perm::from_cycles(7, &[vec![0, 1, 2], vec![3, 4]]).unwrap()]), 7);
        inst.expect.transitive = Some(true);
        inst.expect.exact = Some(true);
        let r = verify(&inst);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.mismatches.len(), 3);
        assert_eq!(r.orbit_sizes, vec![3, 2, 1, 1]);
        assert_eq!(r.orbit_count.as_deref(), Some("4/1"));
    }

    #[test]
    fn divisibility_witness() {
        let s = Socle { name: "C7".into(), g0: cyclic(7), h: cyclic(7), k: None };
        let w = divisibility_check(&s).unwrap();
        assert_eq!((w.h_cap_g0, w.index, w.divides), (7, 7, true));
    }
}
