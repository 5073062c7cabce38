//! Nilpotent transitive subgroups: the semilinear groups on vectors and points, the
//! degree-27 model of `PSp4(3)` and its product actions.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use crate::arith;
use crate::constructions::classical::{induced_group, special_unitary_gens};
use crate::error::{Error, Result};
use crate::field::FieldTable;
use crate::forms::{ClassicalForm, DomainKind, FormKind, GeometricDomain, TypeSign};
use crate::perm::{
    extraspecial_type, identify, imprimitive_wreath, product_element, regular_subgroup_search, ExtraspecialType, Perm, PermGroup,
    PRODUCT_CAP,
};

/// A subgroup together with the name it was built under and structural tags.
#[derive(Clone, Debug)]
pub struct SubgroupWitness {
    pub name: String,
    pub group: PermGroup,
    /// Computed on a faithful model when the action is too large for a stabilizer chain.
    pub order: u128,
    pub tags: Vec<String>,
}

impl SubgroupWitness {
    fn new(name: String, group: PermGroup, order: u128, mut tags: Vec<String>) -> Self {
        tags.insert(0, format!("order {order}"));
        if group.is_transitive() {
            tags.push(if order == group.degree() as u128 { "regular" } else { "transitive" }.into());
        } else {
            tags.push("intransitive".into());
        }
        SubgroupWitness { name, group, order, tags }
    }

    /// Transitive with order equal to the degree.
    pub fn is_regular(&self) -> bool {
        self.order == self.group.degree() as u128 && self.group.is_transitive()
    }
}

/// `PSU4(2)` on the 27 totally isotropic 2-spaces of the hermitian form on `GF(4)^4`.
pub fn psp43_deg27() -> Result<PermGroup> {
    static CELL: OnceLock<PermGroup> = OnceLock::new();
    if let Some(g) = CELL.get() {
        return Ok(g.clone());
    }
    let k = FieldTable::of_order(4)?;
    let form = ClassicalForm::standard(FormKind::Hermitian, 4, &k, TypeSign::NotApplicable)?;
    let gens = special_unitary_gens(&form)?;
    let dom = GeometricDomain::new(&k, 4, Some(form), DomainKind::TotallySingular(2))?;
    if dom.points.len() != 27 {
        return Err(Error::Internal(format!("{} totally isotropic lines, expected 27", dom.points.len())));
    }
    let g = induced_group(&dom, &gens)?;
    if g.order() != 25920 || !g.is_transitive() || g.stabilizer(0).order() != 960 {
        return Err(Error::Internal(format!("degree-27 model has order {}", g.order())));
    }
    Ok(CELL.get_or_init(|| g).clone())
}

/// Regular `3^(1+2)` subgroups of the degree-27 group, `(plus, minus)`.
pub fn psp43_extraspecial_regular() -> Result<(PermGroup, PermGroup)> {
    static CELL: OnceLock<(PermGroup, PermGroup)> = OnceLock::new();
    if let Some(p) = CELL.get() {
        return Ok(p.clone());
    }
    let g = psp43_deg27()?;
    let found = regular_subgroup_search(&g, true, 0)?;
    let pick = |t: ExtraspecialType| {
        found
            .iter()
            .find(|c| c.extraspecial == t)
            .map(|c| c.group.clone())
            .ok_or_else(|| Error::Internal(format!("no regular 3^(1+2){t:?}")))
    };
    let pair = (pick(ExtraspecialType::Plus)?, pick(ExtraspecialType::Minus)?);
    Ok(CELL.get_or_init(|| pair).clone())
}

/// `P = X:<y>` with `X` elementary abelian of order 9 containing `Z(P)`.
fn split_extraspecial(p: &PermGroup) -> Result<(Vec<Perm>, Perm)> {
    let z = p.center()?;
    let zg = z.gens().iter().find(|x| !x.is_identity()).cloned().ok_or_else(|| Error::Internal("trivial centre".into()))?;
    let els = p.elements()?;
    let a = els.iter().find(|x| !z.contains(x)).cloned().unwrap();
    let x = p.subgroup(vec![zg.clone(), a.clone()]);
    if x.order() != 9 {
        return Err(Error::Internal("no abelian subgroup of order 9 through the centre".into()));
    }
    let y = els.into_iter().find(|e| !x.contains(e)).unwrap();
    Ok((vec![zg, a], y))
}

/// The regular subgroup `(3_+^(1+2))^e x (3^6:3^(1+2))^f` of `PSp4(3) wr S_d`, `d = e + 3f`,
/// in the product action on `27^d` points.
///
/// In each block of three coordinates the base is `X_1 x X_2 x X_3` with
/// `y_1 y_2^-1, y_2 y_3^-1` and a top element cycling the coordinates. The top element is
/// `y_1 pi`: its coordinate product lies outside `X`, so every element of the coset of the
/// base it generates is fixed-point-free.
pub fn example54(e: usize, f: usize) -> Result<SubgroupWitness> {
    let d = e + 3 * f;
    if d == 0 {
        return Err(Error::Param("e + 3f must be positive".into()));
    }
    if 27u64.checked_pow(d as u32).is_none_or(|n| n > PRODUCT_CAP as u64) {
        return Err(Error::Cap(format!("27^{d} points exceed {PRODUCT_CAP}")));
    }
    let (plus, _) = psp43_extraspecial_regular()?;
    let (xs, y) = split_extraspecial(&plus)?;
    let m = 27;
    let id = Perm::identity(m);
    let top_id = Perm::identity(d);
    // each generator in the product action and in the imprimitive model on 27d points
    let at = |pairs: &[(usize, &Perm)], sigma: &Perm| {
        let mut gs = vec![id.clone(); d];
        for &(i, g) in pairs {
            gs[i] = g.clone();
        }
        (product_element(m, &gs, sigma), imprimitive_wreath(m, &gs, sigma))
    };
    let mut gens = Vec::new();
    for i in 0..e {
        for g in plus.gens() {
            gens.push(at(&[(i, g)], &top_id));
        }
    }
    let yi = y.inverse();
    for b in 0..f {
        let c = e + 3 * b;
        for j in 0..3 {
            for x in &xs {
                gens.push(at(&[(c + j, x)], &top_id));
            }
        }
        gens.push(at(&[(c, &y), (c + 1, &yi)], &top_id));
        gens.push(at(&[(c + 1, &y), (c + 2, &yi)], &top_id));
        let mut img: Vec<u32> = (0..d as u32).collect();
        img[c] = c as u32 + 1;
        img[c + 1] = c as u32 + 2;
        img[c + 2] = c as u32;
        let pi = Perm::from_images(img).unwrap();
        gens.push(at(&[(c, &y)], &pi));
    }
    let (prod, model): (Vec<Perm>, Vec<Perm>) = gens.into_iter().unzip();
    let order = PermGroup::new(m * d, model).order();
    let group = PermGroup::new(m.pow(d as u32), prod);
    Ok(SubgroupWitness::new(format!("(3_+^(1+2))^{e} x (3^6:3^(1+2))^{f}"), group, order, vec![]))
}

/// `(3_-^(1+2))^d` with trivial top group, regular on `27^d` points.
pub fn extraspecial_minus_power(d: usize) -> Result<SubgroupWitness> {
    if d == 0 || 27u64.pow(d as u32) > PRODUCT_CAP as u64 {
        return Err(Error::Param(format!("d = {d} out of range")));
    }
    let (_, minus) = psp43_extraspecial_regular()?;
    let id = Perm::identity(27);
    let mut gens = Vec::new();
    for i in 0..d {
        for g in minus.gens() {
            let mut gs = vec![id.clone(); d];
            gs[i] = g.clone();
            gens.push(product_element(27, &gs, &Perm::identity(d)));
        }
    }
    let group = PermGroup::new(27usize.pow(d as u32), gens);
    Ok(SubgroupWitness::new(format!("(3_-^(1+2))^{d}"), group.clone(), group.order(), vec![]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaVariant {
    FullCycle,
    SemiDihedral,
    Quaternion,
    DihedralTransitive,
    DihedralIntransitive,
    ExtraspecialMinus,
}

impl GammaVariant {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "full-cycle" => Self::FullCycle,
            "SD" => Self::SemiDihedral,
            "Q" => Self::Quaternion,
            "D-transitive" => Self::DihedralTransitive,
            "D-intransitive" => Self::DihedralIntransitive,
            "3^{1+2}-minus" | "3-minus" => Self::ExtraspecialMinus,
            _ => return None,
        })
    }
}

/// Multiplication by a primitive element and a field automorphism, written on the
/// exponents `0..n` of a cyclic domain: `x: i -> i + 1`, `y: i -> t i`.
fn shift_and_scale(n: u64, t: u64) -> (Perm, Perm) {
    let x = Perm::from_images((0..n).map(|i| ((i + 1) % n) as u32).collect()).unwrap();
    let y = Perm::from_images((0..n).map(|i| (i * t % n) as u32).collect()).unwrap();
    (x, y)
}

/// The full semilinear group on the nonzero vectors of `GF(q)^m = GF(q^m)`:
/// `GL_1(q^m):m`, with the automorphism `v -> v^q`.
pub fn gamma_l1_vectors(q: u64, m: u32) -> Result<(PermGroup, Perm, Perm)> {
    let n = q.checked_pow(m).filter(|&n| n <= 1 << 20).ok_or_else(|| Error::Cap("field too large".into()))? - 1;
    let (x, y) = shift_and_scale(n, q % n.max(1));
    Ok((PermGroup::new(n as usize, vec![x.clone(), y.clone()]), x, y))
}

/// A nilpotent subgroup of `GammaL_1(q^m)` on nonzero vectors, or of its image modulo
/// scalars on the points of `PG(m-1, q)`.
pub fn gamma_l1_nilpotent(q: u64, m: u32, which: GammaVariant) -> Result<SubgroupWitness> {
    let (p, _) = arith::prime_power(q).ok_or_else(|| Error::Param(format!("{q} is not a prime power")))?;
    if m < 2 {
        return Err(Error::Param("m must be at least 2".into()));
    }
    let mersenne = arith::is_prime(q) && (q + 1).is_power_of_two();
    let (name, group) = match which {
        GammaVariant::FullCycle => {
            let (_, x, _) = gamma_l1_vectors(q, m)?;
            (format!("C{}", q.pow(m) - 1), PermGroup::new(x.degree(), vec![x]))
        }
        GammaVariant::SemiDihedral | GammaVariant::Quaternion => {
            if m != 2 || !mersenne {
                return Err(Error::Param("SD and Q need m = 2 and a Mersenne prime q".into()));
            }
            let (_, x, y) = gamma_l1_vectors(q, 2)?;
            let x1 = x.pow(2 * (q as i64 + 1));
            let x2 = x.pow((q as i64 - 1) / 2);
            if which == GammaVariant::SemiDihedral {
                (format!("C{} x SD{}", (q - 1) / 2, 4 * (q + 1)), PermGroup::new(x.degree(), vec![x1, x2, y]))
            } else {
                let z = x2.mul(&y);
                (format!("C{} x Q{}", (q - 1) / 2, 2 * (q + 1)), PermGroup::new(x.degree(), vec![x1, x2.pow(2), z]))
            }
        }
        GammaVariant::DihedralTransitive | GammaVariant::DihedralIntransitive => {
            if m != 2 || !mersenne {
                return Err(Error::Param("the dihedral variants need m = 2 and a Mersenne prime q".into()));
            }
            // q + 1 points; y fixes the point 0
            let (x, y) = shift_and_scale(q + 1, q);
            let gens = if which == GammaVariant::DihedralTransitive {
                vec![x.pow(2), x.mul(&y)]
            } else {
                vec![x.pow(2), y]
            };
            (format!("D{}", q + 1), PermGroup::new(q as usize + 1, gens))
        }
        GammaVariant::ExtraspecialMinus => {
            if (q, m) != (8, 2) {
                return Err(Error::Param("3_-^(1+2) occurs only for (q, m) = (8, 2)".into()));
            }
            // points of PG(1, 8) as exponents mod 9; v -> v^2 acts as i -> 2i
            let (x, phi) = shift_and_scale(9, p);
            ("3_-^(1+2)".to_string(), PermGroup::new(9, vec![x, phi.pow(2)]))
        }
    };
    let mut tags = Vec::new();
    if group.is_nilpotent() {
        tags.push("nilpotent".into());
    }
    if which == GammaVariant::ExtraspecialMinus && extraspecial_type(&group)? == ExtraspecialType::Minus {
        tags.push("extraspecial minus".into());
    }
    let order = group.order();
    Ok(SubgroupWitness::new(name, group, order, tags))
}

/// A conjugacy class of subgroups found by the exhaustive enumeration.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub name: String,
    pub order: u128,
    pub class_size: usize,
    pub representative: PermGroup,
}

/// Every subgroup of a metacyclic group is 2-generated, so closing all pairs of elements
/// lists every subgroup. Returns the nilpotent subgroups transitive on the domain, one per
/// conjugacy class.
pub fn nilpotent_transitive_classes_metacyclic(g: &PermGroup) -> Result<Vec<SubgroupClass>> {
    let els = g.elements()?;
    if els.len() > 2000 {
        return Err(Error::Cap("pair enumeration is limited to 2000 elements".into()));
    }
    let index: HashMap<Perm, usize> = els.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mul: Vec<Vec<usize>> = els.iter().map(|a| els.iter().map(|b| index[&a.mul(b)]).collect()).collect();
    let close = |a: usize, b: usize| -> Vec<usize> {
        let mut seen = vec![false; els.len()];
        let id = index[&g.identity()];
        seen[id] = true;
        let mut list = vec![id];
        let mut i = 0;
        while i < list.len() {
            for s in [a, b] {
                let y = mul[list[i]][s];
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    };
    let mut subgroups: HashSet<Vec<usize>> = HashSet::new();
    for a in 0..els.len() {
        for b in a..els.len() {
            subgroups.insert(close(a, b));
        }
    }
    let inv: Vec<usize> = els.iter().map(|x| index[&x.inverse()]).collect();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let mut done: HashSet<Vec<usize>> = HashSet::new();
    let mut sorted: Vec<Vec<usize>> = subgroups.into_iter().collect();
    sorted.sort();
    for s in sorted {
        if done.contains(&s) {
            continue;
        }
        let mut conj: HashSet<Vec<usize>> = HashSet::new();
        for c in 0..els.len() {
            let mut t: Vec<usize> = s.iter().map(|&x| mul[mul[inv[c]][x]][c]).collect();
            t.sort_unstable();
            conj.insert(t);
        }
        let class_size = conj.len();
        done.extend(conj);
        let h = g.subgroup(s.iter().map(|&i| els[i].clone()).collect());
        if h.is_transitive() && h.is_nilpotent() {
            classes.push(SubgroupClass { name: identify(&h)?, order: h.order(), class_size, representative: h });
        }
    }
    classes.sort_by(|a, b| a.order.cmp(&b.order).then(a.name.cmp(&b.name)));
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_27_model() {
        let g = psp43_deg27().unwrap();
        assert_eq!((g.degree(), g.order()), (27, 25920));
    }

    #[test]
    fn quaternion_variant_is_regular() {
        let w = gamma_l1_nilpotent(7, 2, GammaVariant::Quaternion).unwrap();
        assert_eq!(w.group.order(), 48);
        assert!(w.group.is_regular() && w.group.is_nilpotent());
        let sd = gamma_l1_nilpotent(7, 2, GammaVariant::SemiDihedral).unwrap();
        assert_eq!(sd.group.order(), 96);
        assert!(sd.group.is_transitive() && !sd.group.is_regular());
    }

    #[test]
    fn dihedral_pair_splits() {
        let t = gamma_l1_nilpotent(7, 2, GammaVariant::DihedralTransitive).unwrap();
        let i = gamma_l1_nilpotent(7, 2, GammaVariant::DihedralIntransitive).unwrap();
        assert_eq!((t.group.order(), i.group.order()), (8, 8));
        assert!(t.group.is_transitive() && !i.group.is_transitive());
    }

    #[test]
    fn minus_type_on_nine_points() {
        let w = gamma_l1_nilpotent(8, 2, GammaVariant::ExtraspecialMinus).unwrap();
        assert_eq!(w.group.order(), 27);
        assert!(w.group.is_transitive());
    }

    #[test]
    fn literal_top_element_has_fixed_points() {
        let (plus, _) = psp43_extraspecial_regular().unwrap();
        let (_, y) = split_extraspecial(&plus).unwrap();
        let id = Perm::identity(27);
        let pi = Perm::from_images(vec![1, 2, 0]).unwrap();
        // the bare coordinate cycle fixes every constant triple
        let bare = product_element(27, &[id.clone(), id.clone(), id.clone()], &pi);
        assert_eq!(bare.fixed_points(), 27);
        let twisted = product_element(27, &[y, id.clone(), id], &pi);
        assert!(twisted.is_fixed_point_free());
        let w = example54(0, 1).unwrap();
        assert!(w.is_regular());
    }

    #[test]
    fn full_cycle_is_cyclic() {
        let w = gamma_l1_nilpotent(3, 3, GammaVariant::FullCycle).unwrap();
        assert_eq!(w.group.order(), 26);
        assert!(w.group.is_regular() && w.group.is_abelian());
    }
}
