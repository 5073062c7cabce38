//! Type I factorizations: `H` lies in a maximal parabolic subgroup `U:L` and is built as
//! `W:C`, with `W` a submodule of the unipotent radical `U` and `C` a cyclic subgroup of a
//! Levi Singer torus. `K` is the stabilizer of a point of the domain.
//!
//! Radicals are written `u(B) = [[I, 0], [B, I]]` in the standard basis
//! `e_1..e_m, f_1..f_m (, v)`, and the Levi element `diag(A, D)` acts by `B -> D^-1 B A`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::classical::{
    induced_group, matrix_group_order, prime_basis, sl_gens, special_unitary_gens, symplectic_gens,
};
use crate::arith::ipow128;
use crate::error::{Error, Result};
use crate::factorization::{
    CensusEntry, ExactAction, Expectation, FactorizationInstance, FixClass, Socle, SummandOutcome,
};
use crate::field::{subfield_embedding, Elt, FieldTable};
use crate::forms::{
    involution_type, ClassicalForm, DomainKind, FormKind, GeometricDomain, MatrixDomain, MinusFormsDomain,
    TypeSign,
};
use crate::matrix::{invariant_summands, singer, wedge_pairs, Mat, Subspace};
use crate::perm::{coset_action, Perm, PermGroup};

/// Largest coset degree built for Case 2.
pub const COSET_CAP: usize = 20_000;

fn pw(q: u32, e: u32) -> u128 {
    ipow128(q as u128, e)
}

fn gf(q: u32) -> Result<Arc<FieldTable>> {
    FieldTable::of_order(q)
}

/// `[[I, 0], [B, I]]` followed by an identity block of size `extra`.
pub fn lower_unipotent(b: &Mat, extra: usize) -> Mat {
    let m = b.rows;
    let n = 2 * m + extra;
    Mat::from_fn(&b.field, n, n, |i, j| {
        if i == j {
            1
        } else if (m..2 * m).contains(&i) && j < m {
            b.get(i - m, j)
        } else {
            0
        }
    })
}

fn levi(a: &Mat, d: &Mat, extra: usize) -> Mat {
    if extra == 0 {
        Mat::block_diag(&[a, d])
    } else {
        Mat::block_diag(&[a, d, &Mat::identity(&a.field, extra)])
    }
}

/// A unipotent radical as a vector space over `small`, realized by `m x m` matrices over
/// the matrix field.
struct Radical {
    small: Arc<FieldTable>,
    embed: Vec<Elt>,
    basis: Vec<Mat>,
    coords: Box<dyn Fn(&Mat) -> Vec<Elt>>,
}

impl Radical {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn matrix(&self, v: &[Elt]) -> Mat {
        let b0 = &self.basis[0];
        let mut out = Mat::zero(&b0.field, b0.rows, b0.cols);
        for (b, &c) in self.basis.iter().zip(v) {
            if c != 0 {
                out = out.add(&b.scale(self.embed[c as usize]));
            }
        }
        out
    }

    /// Matrix over `small` of the linear map `act` in the coordinates of the basis.
    fn module(&self, act: &dyn Fn(&Mat) -> Mat) -> Mat {
        let rows: Vec<Vec<Elt>> = self.basis.iter().map(|b| (self.coords)(&act(b))).collect();
        Mat::from_rows(&self.small, &rows)
    }

    /// Additive generators of the subgroup of matrices with coordinates in `w`.
    fn generators(&self, w: &Subspace) -> Vec<Mat> {
        let k = &*self.small;
        let mut out = Vec::new();
        for i in 0..w.dim() {
            for &l in &prime_basis(k) {
                let v: Vec<Elt> = w.basis.row(i).iter().map(|&x| k.mul(x, l)).collect();
                out.push(self.matrix(&v));
            }
        }
        out
    }

    fn nonzero_elements(&self, w: &Subspace) -> Vec<Mat> {
        w.elements().into_iter().skip(1).map(|v| self.matrix(&v)).collect()
    }
}

fn symmetric_radical(k: &Arc<FieldTable>, m: usize) -> Radical {
    let mut basis = Vec::new();
    for i in 0..m {
        let mut b = Mat::zero(k, m, m);
        b.set(i, i, 1);
        basis.push(b);
    }
    for (i, j) in wedge_pairs(m) {
        let mut b = Mat::zero(k, m, m);
        b.set(i, j, 1);
        b.set(j, i, 1);
        basis.push(b);
    }
    let coords = move |b: &Mat| {
        let mut v: Vec<Elt> = (0..m).map(|i| b.get(i, i)).collect();
        v.extend(wedge_pairs(m).into_iter().map(|(i, j)| b.get(i, j)));
        v
    };
    Radical { small: k.clone(), embed: k.elements().collect(), basis, coords: Box::new(coords) }
}

fn alternating_radical(k: &Arc<FieldTable>, m: usize) -> Radical {
    let kk = k.clone();
    let basis = wedge_pairs(m)
        .into_iter()
        .map(|(i, j)| {
            let mut b = Mat::zero(k, m, m);
            b.set(i, j, 1);
            b.set(j, i, kk.neg(1));
            b
        })
        .collect();
    let coords = move |b: &Mat| wedge_pairs(m).into_iter().map(|(i, j)| b.get(i, j)).collect();
    Radical { small: k.clone(), embed: k.elements().collect(), basis, coords: Box::new(coords) }
}

/// Skew-hermitian `m x m` matrices over `GF(q^2)` as a `GF(q)`-space of dimension `m^2`.
fn skew_hermitian_radical(small: &Arc<FieldTable>, big: &Arc<FieldTable>, m: usize) -> Result<Radical> {
    let embed = subfield_embedding(small, big)?;
    let mut back = vec![u32::MAX; big.q() as usize];
    for (i, &e) in embed.iter().enumerate() {
        back[e as usize] = i as Elt;
    }
    let q = small.q();
    let f = big.spec.f;
    let theta = big.primitive();
    let sigma = move |k: &FieldTable, x: Elt| k.frobenius(x, f / 2);
    // tau + tau^q = 0
    let tau = if q.is_multiple_of(2) { 1 } else { big.exp(q.div_ceil(2) as u64) };
    let mut basis = Vec::new();
    for i in 0..m {
        let mut b = Mat::zero(big, m, m);
        b.set(i, i, tau);
        basis.push(b);
    }
    for (i, j) in wedge_pairs(m) {
        for l in [1, theta] {
            let mut b = Mat::zero(big, m, m);
            b.set(i, j, l);
            b.set(j, i, big.neg(sigma(big, l)));
            basis.push(b);
        }
    }
    let k = big.clone();
    let denom = k.inv(k.sub(theta, sigma(&k, theta)));
    let tau_inv = k.inv(tau);
    let coords = move |b: &Mat| {
        let to_small = |x: Elt| {
            let y = back[x as usize];
            assert!(y != u32::MAX, "coordinate outside the subfield");
            y
        };
        let mut v: Vec<Elt> = (0..m).map(|i| to_small(k.mul(b.get(i, i), tau_inv))).collect();
        for (i, j) in wedge_pairs(m) {
            let x = b.get(i, j);
            let bb = k.mul(k.sub(x, sigma(&k, x)), denom);
            let aa = k.sub(x, k.mul(bb, theta));
            v.push(to_small(aa));
            v.push(to_small(bb));
        }
        v
    };
    Ok(Radical { small: small.clone(), embed, basis, coords: Box::new(coords) })
}

/// Fixed-point classes and rank census of the nonzero elements of `W`.
struct Classified {
    classes: Vec<FixClass>,
    census: Vec<CensusEntry>,
}

/// `label(B, u(B))` names each element's class; `predict(rank)` gives the predicted
/// number of elements of that rank and the predicted fixed-point count.
fn classify(
    rad: &Radical,
    w: &Subspace,
    extra: usize,
    dom: &dyn MatrixDomain,
    label: &dyn Fn(&Mat, &Mat) -> Result<String>,
    predict: &dyn Fn(usize) -> (Option<u64>, Option<u64>),
) -> Result<Classified> {
    let mut by_class: BTreeMap<(usize, String), Vec<Perm>> = BTreeMap::new();
    let mut by_rank: BTreeMap<usize, u64> = BTreeMap::new();
    for b in rad.nonzero_elements(w) {
        let u = lower_unipotent(&b, extra);
        let r = b.rank();
        let name = label(&b, &u)?;
        by_class.entry((r, name)).or_default().push(dom.perm_of(&u)?);
        *by_rank.entry(r).or_default() += 1;
    }
    let classes = by_class
        .into_iter()
        .map(|((r, name), elements)| FixClass {
            descriptor: name,
            elements,
            predicted_fix: predict(r).1,
            predicted_count: None,
        })
        .collect();
    let mut census: Vec<CensusEntry> = by_rank
        .iter()
        .map(|(&r, &c)| CensusEntry { descriptor: format!("rank {r}"), predicted: predict(r).0, observed: c })
        .collect();
    // predicted ranks that never occur
    for r in 0..=w.ambient {
        if let (Some(p @ 1..), None) = (predict(r).0, by_rank.get(&r)) {
            census.push(CensusEntry { descriptor: format!("rank {r}"), predicted: Some(p), observed: 0 });
        }
    }
    census.sort_by(|a, b| a.descriptor.cmp(&b.descriptor));
    Ok(Classified { classes, census })
}

fn rank_label(b: &Mat, _: &Mat) -> Result<String> {
    Ok(format!("rank {}", b.rank()))
}

/// `H = W:C` for every summand, recording orbit data.
fn summand_outcomes(
    rad: &Radical,
    summands: &[Subspace],
    extra: usize,
    torus: &Mat,
    dom: &dyn MatrixDomain,
    selected: usize,
) -> Result<Vec<SummandOutcome>> {
    summands
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let mut gens: Vec<Mat> = rad.generators(w).iter().map(|b| lower_unipotent(b, extra)).collect();
            gens.push(torus.clone());
            let h = induced_group(dom, &gens)?;
            let orbits = h.orbits().len();
            Ok(SummandOutcome { index: i, dim: w.dim(), h_order: h.order(), orbits, transitive: orbits == 1, selected: i == selected })
        })
        .collect()
}

fn pick_summand(summands: &[Subspace], index: Option<usize>, default: usize) -> Result<usize> {
    let i = index.unwrap_or(default);
    if i >= summands.len() {
        return Err(Error::Param(format!("summand index {i} out of range ({} summands)", summands.len())));
    }
    Ok(i)
}

fn transitive_on(dom: &dyn MatrixDomain, gens: &[Mat]) -> Result<bool> {
    Ok(induced_group(dom, gens)?.is_transitive())
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(what.into()))
    }
}

/// Case 1: a Singer cycle of `PGL_n(q)` on projective points.
pub fn build_case1(n: usize, q: u32) -> Result<FactorizationInstance> {
    if n < 2 {
        return Err(Error::Param("Case 1 needs n >= 2".into()));
    }
    let k = gf(q)?;
    let s = singer(n, &k)?;
    let dom = GeometricDomain::new(&k, n, None, DomainKind::ProjectivePoints)?;
    let h = induced_group(&dom, std::slice::from_ref(&s.c))?;
    let g0 = induced_group(&dom, &sl_gens(&k, n))?;
    let ell = (pw(q, n as u32) - 1) / (q as u128 - 1);
    let mut inst = FactorizationInstance::new(format!("T2/case1/n={n},q={q}"), h.clone(), ell);
    inst.ambient = format!("PGL_{n}({q})");
    inst.h_name = format!("Singer cycle C_{ell}");
    inst.k_name = "point stabilizer P_1".into();
    inst.domain = dom.describe();
    inst.h_matrix_order = Some(s.c.order());
    inst.socle = Some(Socle { name: format!("PSL_{n}({q})"), g0, h, k: None });
    inst.expect = Expectation {
        domain_size: Some(ell),
        h_matrix_order: Some(pw(q, n as u32) - 1),
        transitive: Some(true),
        exact: Some(true),
        stabilizer_order: Some(1),
        divisible: Some(true),
    };
    inst.citations.push("T2 row 1: ell = (q^n-1)/(q-1)".into());
    Ok(inst)
}

/// Case 2 data: `G_1` (the square-determinant subgroup of `PGL_4(q)`) on cosets of the
/// symplectic-similitude subgroup.
struct Case2 {
    k: Arc<FieldTable>,
    points: GeometricDomain,
    cosets: crate::perm::CosetAction,
    g0_on_points: PermGroup,
}

impl Case2 {
    fn new(q: u32) -> Result<Self> {
        let k = gf(q)?;
        let points = GeometricDomain::new(&k, 4, None, DomainKind::ProjectivePoints)?;
        let mut g1_gens = sl_gens(&k, 4);
        let w = k.primitive();
        if q % 2 == 1 {
            g1_gens.push(Mat::diag(&k, &[k.mul(w, w), 1, 1, 1]));
        }
        let g1 = induced_group(&points, &g1_gens)?;
        let g0_on_points = induced_group(&points, &sl_gens(&k, 4))?;
        let sp = ClassicalForm::standard(FormKind::Symplectic, 4, &k, TypeSign::NotApplicable)?;
        let mut k_gens = symplectic_gens(&sp)?;
        // similitude with multiplier w; its determinant w^2 is a square
        k_gens.push(Mat::diag(&k, &[1, 1, w, w]));
        let kk = induced_group(&points, &k_gens)?;
        require(kk.is_subgroup_of(&g1), "symplectic subgroup lies outside G_1")?;
        let cosets = coset_action(&g1, &kk, COSET_CAP)?;
        Ok(Case2 { k, points, cosets, g0_on_points })
    }

    fn act(&self, gens: &[Mat]) -> Result<PermGroup> {
        let on_points = induced_group(&self.points, gens)?;
        self.cosets.act_group(&on_points)
    }

    fn radical(&self, rows: &[usize]) -> Vec<Mat> {
        let k = &self.k;
        let mut out = Vec::new();
        for &i in rows {
            for &l in &prime_basis(k) {
                let mut x = Mat::identity(k, 4);
                x.set(i, 0, l);
                out.push(x);
            }
        }
        out
    }
}

/// Case 2: `H = U:C` in the stabilizer of a point of `PG(3, q)`, with `C` of index
/// `(2, q-1)` in a Levi Singer torus, against the symplectic subgroup.
pub fn build_case2(q: u32) -> Result<FactorizationInstance> {
    let c2 = Case2::new(q)?;
    let k = &c2.k;
    let c = singer(3, k)?.c;
    let t = Mat::block_diag(&[&Mat::identity(k, 1), &c]);
    let e = if q % 2 == 1 { 2 } else { 1 };
    let mut gens = c2.radical(&[1, 2, 3]);
    gens.push(t.pow(e));
    let h = c2.act(&gens)?;
    let g0 = c2.cosets.act_group(&c2.g0_on_points)?;
    let ell = pw(q, 3) * (pw(q, 3) - 1) / e;
    let mut inst = FactorizationInstance::new(format!("T2/case2/q={q}"), h.clone(), ell);
    inst.ambient = if q % 4 == 1 { format!("PSL_4({q}).2") } else { format!("PSL_4({q})") };
    inst.h_name = format!("q^3:(q^3-1)/{e}");
    inst.k_name = format!("PSp_4({q}) with similitudes");
    inst.domain = format!("cosets of the symplectic subgroup ({} points)", c2.cosets.degree);
    inst.socle = Some(Socle { name: format!("PSL_4({q})"), g0, h, k: None });
    let delta = pw(q, 2) * (pw(q, 3) - 1) / e;
    inst.expect = Expectation {
        domain_size: Some(delta),
        transitive: Some(true),
        exact: Some(false),
        stabilizer_order: Some(q as u128),
        divisible: Some(false),
        ..Default::default()
    };
    inst.citations.push("T2 row 2: ell = q^3(q^3-1)/(2,q-1)".into());
    inst.notes.push("G_1 is the subgroup of PGL_4(q) of square determinant".into());
    Ok(inst)
}

/// Case 2 with `U` replaced by the two root groups `x_21, x_31` and `C` by the Levi part
/// normalizing them. Such an `H` misses part of `U` and must be intransitive.
pub fn case2_partial_radical(q: u32) -> Result<FactorizationInstance> {
    let c2 = Case2::new(q)?;
    let k = &c2.k;
    let w = k.primitive();
    let mut gens = c2.radical(&[1, 2]);
    for a in sl_gens(k, 2) {
        gens.push(Mat::block_diag(&[&Mat::identity(k, 1), &a, &Mat::identity(k, 1)]));
    }
    let wi = k.inv(w);
    gens.push(Mat::diag(k, &[w, 1, 1, wi]));
    gens.push(Mat::diag(k, &[1, w, 1, wi]));
    gens.push(Mat::diag(k, &[w, w, 1, 1]));
    let h = c2.act(&gens)?;
    let order = h.order();
    let mut inst = FactorizationInstance::new(format!("T2/case2/q={q}/partial-radical"), h, order);
    inst.ambient = format!("PSL_4({q})");
    inst.h_name = "q^2:(GL_1 x GL_2 x GL_1) without the root group x_41".into();
    inst.k_name = format!("PSp_4({q}) with similitudes");
    inst.domain = format!("cosets of the symplectic subgroup ({} points)", c2.cosets.degree);
    inst.expect.transitive = Some(false);
    inst.notes.push("negative control: H does not contain the unipotent radical".into());
    Ok(inst)
}

struct Case3 {
    m: usize,
    sp_gens: Vec<Mat>,
    forms: MinusFormsDomain,
    labeled: MinusFormsDomain,
    sp: ClassicalForm,
    rad: Radical,
    summands: Vec<Subspace>,
    torus: Mat,
}

impl Case3 {
    fn new(m: usize, q: u32) -> Result<Self> {
        if !q.is_multiple_of(2) || m < 2 {
            return Err(Error::Param("Case 3 needs q even and m >= 2".into()));
        }
        let k = gf(q)?;
        let sp = ClassicalForm::standard(FormKind::Symplectic, 2 * m, &k, TypeSign::NotApplicable)?;
        let sp_gens = symplectic_gens(&sp)?;
        let forms = MinusFormsDomain::new(&sp, &sp_gens, false)?;
        let labeled = MinusFormsDomain::new(&sp, &sp_gens, true)?;
        let c = singer(m, &k)?.c;
        let ct = c.transpose();
        let torus = levi(&c, &ct.inverse().unwrap(), 0);
        let rad = symmetric_radical(&k, m);
        let module = rad.module(&|b: &Mat| ct.mul(b).mul(&c));
        let summands = invariant_summands(&module, &Subspace::whole(&k, rad.dim()), m)?;
        if summands.is_empty() {
            return Err(Error::Internal(format!("no {m}-dimensional summand in the radical")));
        }
        Ok(Case3 { m, sp_gens, forms, labeled, sp, rad, summands, torus })
    }

    fn default_summand(&self) -> usize {
        self.summands
            .iter()
            .position(|w| self.rad.nonzero_elements(w).iter().all(|b| b.rank() == self.m))
            .unwrap_or(0)
    }

    fn h_gens(&self, w: &Subspace) -> Vec<Mat> {
        let mut gens: Vec<Mat> = self.rad.generators(w).iter().map(|b| lower_unipotent(b, 0)).collect();
        gens.push(self.torus.clone());
        gens
    }
}

/// Case 3: `H = W:C < Sp_2m(q)`, q even, on the minus-type quadratic forms polarizing to
/// the symplectic form (the cosets of `O^-_2m(q)`). Exactness is tested on the cosets of
/// `Omega^-_2m(q)`.
pub fn build_case3(m: usize, q: u32, summand: Option<usize>) -> Result<FactorizationInstance> {
    let c3 = Case3::new(m, q)?;
    let sel = pick_summand(&c3.summands, summand, c3.default_summand())?;
    let w = &c3.summands[sel];
    let gens = c3.h_gens(w);
    for g in &gens {
        require(c3.sp.is_isometry(g), "H generator is not symplectic")?;
    }
    let h = induced_group(&c3.forms, &gens)?;
    let h_lab = induced_group(&c3.labeled, &gens)?;
    let g0_lab = induced_group(&c3.labeled, &c3.sp_gens)?;
    let qm = pw(q, m as u32);
    let ell = qm * (qm - 1);
    let mut inst = FactorizationInstance::new(format!("T2/case3/m={m},q={q}"), h, ell);
    inst.ambient = format!("Sp_{}({q})", 2 * m);
    inst.h_name = format!("q^m:(q^m-1) from summand {sel}");
    inst.k_name = format!("O^-_{}({q})", 2 * m);
    inst.domain = c3.forms.describe();
    inst.h_matrix_order = Some(matrix_group_order(&gens)?);
    inst.exact_action = Some(ExactAction { description: c3.labeled.describe(), h: h_lab.clone() });
    inst.socle = Some(Socle { name: inst.ambient.clone(), g0: g0_lab, h: h_lab, k: None });
    let half = qm / 2;
    let m64 = m;
    let predict = move |r: usize| if r == m64 { (Some(qm as u64 - 1), Some(half as u64)) } else { (Some(0), None) };
    let sp = c3.sp.clone();
    let label = move |b: &Mat, u: &Mat| Ok(format!("rank {} ({})", b.rank(), involution_type(u, &sp)?));
    let cl = classify(&c3.rad, w, 0, &c3.forms, &label, &|r| if r == 0 { (None, None) } else { predict(r) })?;
    inst.fix_classes = cl.classes;
    inst.census = cl.census;
    inst.summands = summand_outcomes(&c3.rad, &c3.summands, 0, &c3.torus, &c3.forms, sel)?;
    let exact = if m == 2 {
        Some(false)
    } else if m % 2 == 1 {
        Some(true)
    } else {
        None
    };
    inst.expect = Expectation {
        domain_size: Some(qm * (qm - 1) / 2),
        h_matrix_order: Some(ell),
        transitive: Some(true),
        exact,
        stabilizer_order: Some(2),
        divisible: Some(true),
    };
    inst.citations.push("T2 row 3: ell = q^m(q^m-1)".into());
    if m == 2 || m % 2 == 1 {
        inst.citations.push("T5 row iv: exact iff m >= 3 odd".into());
    } else {
        inst.notes.push("exactness for even m >= 4 is open; no expectation".into());
    }
    Ok(inst)
}

/// The factor of Case 3 as matrices, with the symplectic form and the chosen `W`
/// (nonzero elements), for callers that examine individual elements.
pub fn case3_parts(m: usize, q: u32) -> Result<(ClassicalForm, Vec<Mat>, Vec<Mat>)> {
    let c3 = Case3::new(m, q)?;
    let w = &c3.summands[c3.default_summand()];
    let elements = c3.rad.nonzero_elements(w).iter().map(|b| lower_unipotent(b, 0)).collect();
    Ok((c3.sp.clone(), c3.h_gens(w), elements))
}

/// Case 4 is Case 3 with `m = 2`, reached through the graph automorphism of `Sp_4(q)`.
pub fn build_case4(q: u32) -> Result<FactorizationInstance> {
    let mut inst = build_case3(2, q, None)?;
    inst.label = format!("T2/case4/q={q}");
    inst.citations.push("T2 row 4: Case 3 at m = 2 under the graph automorphism".into());
    inst.notes.push("built as Case 3 with m = 2".into());
    Ok(inst)
}

/// Case 6: `H = W:C < GU_2m(q)` on nondegenerate points, `W` a `2m`-dimensional summand of
/// the skew-hermitian radical.
pub fn build_case6(m: usize, q: u32, summand: Option<usize>) -> Result<FactorizationInstance> {
    if m < 2 {
        return Err(Error::Param("Case 6 needs m >= 2".into()));
    }
    let small = gf(q)?;
    let big = gf(q * q)?;
    let f = big.spec.f;
    let form = ClassicalForm::standard(FormKind::Hermitian, 2 * m, &big, TypeSign::NotApplicable)?;
    let dom = GeometricDomain::new(&big, 2 * m, Some(form.clone()), DomainKind::NondegeneratePoints)?;
    require(transitive_on(&dom, &special_unitary_gens(&form)?)?, "SU is not transitive on nondegenerate points")?;
    let c = singer(m, &big)?.c;
    let cstar = c.frobenius(f / 2).transpose();
    let torus = levi(&c, &cstar.inverse().unwrap(), 0);
    let rad = skew_hermitian_radical(&small, &big, m)?;
    let module = rad.module(&|b: &Mat| cstar.mul(b).mul(&c));
    let summands = invariant_summands(&module, &Subspace::whole(&small, rad.dim()), 2 * m)?;
    if summands.is_empty() {
        return Err(Error::Internal(format!("no {}-dimensional summand in the radical", 2 * m)));
    }
    let sel = pick_summand(&summands, summand, 0)?;
    let w = &summands[sel];
    let mut gens: Vec<Mat> = rad.generators(w).iter().map(|b| lower_unipotent(b, 0)).collect();
    gens.push(torus.clone());
    for g in &gens {
        require(form.is_isometry(g), "H generator is not unitary")?;
    }
    let h = induced_group(&dom, &gens)?;
    let q2m = pw(q, 2 * m as u32);
    let qq = q as u128;
    let ell = q2m * (q2m - 1) / (qq + 1);
    let mut inst = FactorizationInstance::new(format!("T2/case6/m={m},q={q}"), h, ell);
    inst.ambient = format!("PGU_{}({q})", 2 * m);
    inst.h_name = format!("q^2m:(q^2m-1)/(q+1) from summand {sel}");
    inst.k_name = "stabilizer of a nondegenerate point".into();
    inst.domain = dom.describe();
    inst.h_matrix_order = Some(matrix_group_order(&gens)?);
    let count_low = ((q2m - 1) / (qq + 1)) as u64;
    let fix_low = (pw(q, 2 * m as u32 - 1) * (qq - 1)) as u64;
    let total = (q2m - 1) as u64;
    let predict = move |r: usize| {
        if r + 1 == m {
            (Some(count_low), Some(fix_low))
        } else if r == m {
            (Some(total - count_low), Some(0))
        } else {
            (None, None)
        }
    };
    let cl = classify(&rad, w, 0, &dom, &rank_label, &predict)?;
    inst.fix_classes = cl.classes;
    inst.census = cl.census;
    inst.summands = summand_outcomes(&rad, &summands, 0, &torus, &dom, sel)?;
    inst.expect = Expectation {
        domain_size: Some(pw(q, 2 * m as u32 - 1) * (q2m - 1) / (qq + 1)),
        h_matrix_order: Some(q2m * (q2m - 1)),
        transitive: Some(true),
        exact: Some(false),
        stabilizer_order: Some(qq),
        divisible: None,
    };
    inst.citations.push("T2 row 6: ell = q^2m(q^2m-1)/(q+1)".into());
    Ok(inst)
}

struct Case7 {
    form: ClassicalForm,
    dom: GeometricDomain,
    u_gens: Vec<Mat>,
    z_gens: Vec<Mat>,
    torus: Mat,
}

impl Case7 {
    fn new(m: usize, q: u32) -> Result<Self> {
        if q.is_multiple_of(2) || m < 2 {
            return Err(Error::Param("Case 7 needs q odd and m >= 2".into()));
        }
        let k = gf(q)?;
        let n = 2 * m + 1;
        let form = ClassicalForm::standard(FormKind::Quadratic, n, &k, TypeSign::Odd)?;
        let qm = pw(q, m as u32);
        let want = qm * (qm - 1) / 2;
        let mu = k.least_nonsquare().unwrap();
        let mut dom = GeometricDomain::new(&k, n, Some(form.clone()), DomainKind::SquareClassPoints(mu))?;
        if dom.points.len() as u128 != want {
            dom = GeometricDomain::new(&k, n, Some(form.clone()), DomainKind::SquareClassPoints(1))?;
        }
        require(dom.points.len() as u128 == want, "no square class of minus-type points")?;
        let v = 2 * m;
        let mut u_gens = Vec::new();
        let mut z_gens = Vec::new();
        for &l in &prime_basis(&k) {
            let l2 = k.mul(l, l);
            for i in 0..m {
                let mut x = Mat::identity(&k, n);
                x.set(m + i, v, l);
                x.set(m + i, i, k.neg(l2));
                x.set(v, i, k.neg(k.add(l, l)));
                u_gens.push(x);
            }
            for (i, j) in wedge_pairs(m) {
                let mut y = Mat::identity(&k, n);
                y.set(m + i, j, l);
                y.set(m + j, i, k.neg(l));
                u_gens.push(y.clone());
                z_gens.push(y);
            }
        }
        let c = singer(m, &k)?.c;
        let torus = levi(&c, &c.transpose().inverse().unwrap(), 1);
        Ok(Case7 { form, dom, u_gens, z_gens, torus })
    }
}

/// `q^m` residue deciding the index of `D` in the torus.
pub fn case7_e(m: usize, q: u32) -> u32 {
    if pw(q, m as u32) % 4 == 3 {
        2
    } else {
        1
    }
}

fn case7_instance(m: usize, q: u32, d_index: u128, label: String) -> Result<FactorizationInstance> {
    let c7 = Case7::new(m, q)?;
    let qm = pw(q, m as u32);
    if !(qm - 1).is_multiple_of(d_index) {
        return Err(Error::Param(format!("{d_index} does not divide q^m - 1")));
    }
    let mut gens = c7.u_gens.clone();
    gens.push(c7.torus.pow(d_index));
    for g in &gens {
        require(c7.form.is_isometry(g), "H generator is not an isometry")?;
    }
    let h = induced_group(&c7.dom, &gens)?;
    let d = (qm - 1) / d_index;
    let u_order = pw(q, (m * (m + 1) / 2) as u32);
    let mut inst = FactorizationInstance::new(label, h, u_order * d);
    inst.ambient = format!("SO_{}({q})", 2 * m + 1);
    inst.h_name = format!("U:D with |D| = {d}");
    inst.k_name = "N_1^-, stabilizer of a minus-type nondegenerate point".into();
    inst.domain = c7.dom.describe();
    inst.h_matrix_order = Some(matrix_group_order(&gens)?);
    if m == 2 {
        inst.notes.push("Case 5 is this case at m = 2".into());
    }
    Ok(inst)
}

/// Case 7: `H = U:D < SO_2m+1(q)`, q odd, with `D` of index `e` in a Levi Singer torus.
pub fn build_case7(m: usize, q: u32) -> Result<FactorizationInstance> {
    let e = case7_e(m, q) as u128;
    let mut inst = case7_instance(m, q, e, format!("T2/case7/m={m},q={q}"))?;
    let qm = pw(q, m as u32);
    let u_order = pw(q, (m * (m + 1) / 2) as u32);
    let ell = u_order * (qm - 1) / e;
    inst.expect = Expectation {
        domain_size: Some(qm * (qm - 1) / 2),
        h_matrix_order: Some(ell),
        transitive: Some(true),
        exact: Some(false),
        stabilizer_order: Some(2 * pw(q, (m * (m - 1) / 2) as u32) / e),
        divisible: None,
    };
    inst.citations.push("T2 row 7: ell = q^(m(m+1)/2)(q^m-1)/e".into());
    Ok(inst)
}

/// Case 7 with `D` replaced by the subgroup of index `d_index` of the torus. Expected
/// transitive exactly when `D` maps onto the torus modulo its involution, that is when
/// `|D|` is odd or `D` is the whole torus.
pub fn build_case7_variant(m: usize, q: u32, d_index: u128) -> Result<FactorizationInstance> {
    let mut inst = case7_instance(m, q, d_index, format!("T2/case7/m={m},q={q}/index={d_index}"))?;
    let qm = pw(q, m as u32);
    let d = (qm - 1) / d_index;
    // the U-orbits are blocks permuted by the torus with the involution z in the kernel
    let transitive = d_index == 1 || (d_index == 2 && d % 2 == 1);
    inst.expect.transitive = Some(transitive);
    inst.notes.push(format!("variant with |D| = {d}"));
    Ok(inst)
}

/// The largest proper subgroup of even order of the Case 7 torus, as a negative control.
pub fn case7_negative_control(m: usize, q: u32) -> Result<FactorizationInstance> {
    let qm = pw(q, m as u32);
    let order = qm - 1;
    let best = (1..order).filter(|&d| order.is_multiple_of(d) && d % 2 == 0).max().unwrap_or(2);
    let mut inst = build_case7_variant(m, q, order / best)?;
    inst.label = format!("T2/case7/m={m},q={q}/negative-control");
    inst.expect.transitive = Some(false);
    inst.notes.push(format!("negative control: D of even order {best}"));
    Ok(inst)
}

/// Unipotent radical generators of Case 7 and the generators of its center.
pub fn case7_radical(m: usize, q: u32) -> Result<(ClassicalForm, Vec<Mat>, Vec<Mat>)> {
    let c7 = Case7::new(m, q)?;
    Ok((c7.form, c7.u_gens, c7.z_gens))
}

/// Case 8: `H = W:C` in the stabilizer of a totally singular `m`-space of a plus-type
/// orthogonal space, on nonsingular points (q even) or the points of one square class
/// (q odd).
pub fn build_case8(m: usize, q: u32, summand: Option<usize>) -> Result<FactorizationInstance> {
    if m < 4 {
        return Err(Error::Param("Case 8 needs m >= 4".into()));
    }
    let k = gf(q)?;
    let n = 2 * m;
    let form = ClassicalForm::standard(FormKind::Quadratic, n, &k, TypeSign::Plus)?;
    let c = singer(m, &k)?.c;
    let ct = c.transpose();
    let torus = levi(&c, &ct.inverse().unwrap(), 0);
    let rad = alternating_radical(&k, m);
    let module = rad.module(&|b: &Mat| ct.mul(b).mul(&c));
    let summands = invariant_summands(&module, &Subspace::whole(&k, rad.dim()), m)?;
    if summands.is_empty() {
        return Err(Error::Internal(format!("no {m}-dimensional summand in the radical")));
    }
    let sel = pick_summand(&summands, summand, 0)?;
    let w = &summands[sel];
    let mut gens: Vec<Mat> = rad.generators(w).iter().map(|b| lower_unipotent(b, 0)).collect();
    gens.push(torus.clone());
    for g in &gens {
        require(form.is_isometry(g), "H generator is not an isometry")?;
    }
    let odd = q % 2 == 1;
    let qm = pw(q, m as u32);
    let qq = q as u128;
    let size = pw(q, m as u32 - 1) * (qm - 1) / if odd { 2 } else { 1 };
    let mut notes = Vec::new();
    let dom = if odd {
        let mut chosen = None;
        for class in [1, k.least_nonsquare().unwrap()] {
            let d = GeometricDomain::new(&k, n, Some(form.clone()), DomainKind::SquareClassPoints(class))?;
            let orbits = induced_group(&d, &gens)?.orbits().len();
            notes.push(format!("square class of {class}: {} points, {orbits} H-orbits", d.points.len()));
            if chosen.is_none() && orbits == 1 {
                chosen = Some(d);
            }
        }
        match chosen {
            Some(d) => d,
            None => GeometricDomain::new(&k, n, Some(form.clone()), DomainKind::SquareClassPoints(1))?,
        }
    } else {
        GeometricDomain::new(&k, n, Some(form.clone()), DomainKind::NondegeneratePoints)?
    };
    let h = induced_group(&dom, &gens)?;
    let ell = qm * (qm - 1) / if odd { 2 } else { 1 };
    let mut inst = FactorizationInstance::new(format!("T2/case8/m={m},q={q}"), h, ell);
    inst.ambient = if odd { format!("PSO^+_{n}({q})") } else { format!("Omega^+_{n}({q})") };
    inst.h_name = format!("q^m:(q^m-1) from summand {sel}");
    inst.k_name = "stabilizer of a nondegenerate point".into();
    inst.domain = dom.describe();
    inst.h_matrix_order = Some(matrix_group_order(&gens)?);
    inst.notes = notes;
    let half = if odd { 2 } else { 1 };
    let total = (qm - 1) as u64;
    let (low_rank, low_count, low_fix) = if m.is_multiple_of(2) {
        (m - 2, ((qm - 1) / (qq + 1)) as u64, (pw(q, m as u32 - 1) * (qq * qq - 1) / half) as u64)
    } else {
        (m - 1, total, (pw(q, m as u32 - 1) * (qq - 1) / half) as u64)
    };
    let predict = move |r: usize| {
        if r == low_rank {
            (Some(low_count), Some(low_fix))
        } else if r == m && m.is_multiple_of(2) {
            (Some(total - low_count), Some(0))
        } else if r == 0 {
            (None, None)
        } else {
            (Some(0), None)
        }
    };
    let label: Box<dyn Fn(&Mat, &Mat) -> Result<String>> = if odd {
        Box::new(rank_label)
    } else {
        let polar = ClassicalForm { kind: FormKind::Symplectic, dim: n, gram: form.gram.clone(), quad: None, sign: TypeSign::NotApplicable };
        Box::new(move |b: &Mat, u: &Mat| Ok(format!("rank {} ({})", b.rank(), involution_type(u, &polar)?)))
    };
    let cl = classify(&rad, w, 0, &dom, &*label, &predict)?;
    inst.fix_classes = cl.classes;
    inst.census = cl.census;
    inst.summands = summand_outcomes(&rad, &summands, 0, &torus, &dom, sel)?;
    inst.expect = Expectation {
        domain_size: Some(size),
        h_matrix_order: Some(qm * (qm - 1)),
        transitive: Some(true),
        exact: Some(false),
        stabilizer_order: Some(qq),
        divisible: None,
    };
    inst.citations.push("T2 row 8: ell = q^m(q^m-1)/(2,q-1)".into());
    if m == 4 {
        inst.notes.push("Case 9 is this case at m = 4".into());
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{verify, Verdict};
    use crate::matrix::exterior_square_action;

    fn pass(inst: &FactorizationInstance) -> crate::factorization::VerificationReport {
        let r = verify(inst);
        assert_eq!(r.verdict, Verdict::Pass, "{}: {:?}", r.label, r.mismatches);
        r
    }

    #[test]
    fn case1_points() {
        for (n, q, ell) in [(3, 2, 7), (2, 5, 6), (4, 2, 15)] {
            let r = pass(&build_case1(n, q).unwrap());
            assert_eq!(r.h_order, ell);
            assert!(r.exact);
        }
    }

    #[test]
    fn case3_small() {
        let r = pass(&build_case3(3, 2, None).unwrap());
        assert_eq!((r.h_order, r.domain_size), (56, 28));
        assert!(r.exact);
        let r = pass(&build_case3(2, 2, None).unwrap());
        assert_eq!((r.h_order, r.domain_size, r.stabilizer_order), (12, 6, 2));
        assert!(!r.exact);
    }

    #[test]
    fn alternating_module_is_exterior_square() {
        let k = gf(2).unwrap();
        let c = singer(4, &k).unwrap().c;
        let rad = alternating_radical(&k, 4);
        let ct = c.transpose();
        assert_eq!(rad.module(&|b: &Mat| ct.mul(b).mul(&c)), exterior_square_action(&c));
    }

    #[test]
    fn case7_radical_and_center() {
        let (form, u, z) = case7_radical(2, 3).unwrap();
        assert!(u.iter().all(|g| form.is_isometry(g)));
        assert_eq!(matrix_group_order(&u).unwrap(), 27);
        assert_eq!(matrix_group_order(&z).unwrap(), 3);
    }
}
