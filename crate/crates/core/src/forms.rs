//! Classical forms in standard bases, isometry tests, geometric domains and the
//! involution/Dickson machinery for even characteristic.
//!
//! Standard bases are ordered `e_1..e_m, f_1..f_m` followed by `v` in odd dimension, with
//! `(e_i, f_j) = delta_ij`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldTable};
use crate::matrix::{Mat, Subspace};
use crate::perm::Perm;

pub const DOMAIN_CAP: usize = 200_000;
const VECTOR_CAP: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Symplectic,
    Hermitian,
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeSign {
    Plus,
    Minus,
    Odd,
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct ClassicalForm {
    pub kind: FormKind,
    pub dim: usize,
    /// Gram matrix of the bilinear or sesquilinear part (the polar form when quadratic).
    pub gram: Mat,
    /// `Q(b_i)` on the basis, quadratic forms only.
    pub quad: Option<Vec<Elt>>,
    pub sign: TypeSign,
}

/// Least `delta` with `x^2 + x + delta` irreducible.
pub fn anisotropic_delta(k: &FieldTable) -> Elt {
    k.elements()
        .find(|&d| k.elements().all(|x| k.add(k.add(k.mul(x, x), x), d) != 0))
        .expect("every finite field has an irreducible quadratic")
}

impl ClassicalForm {
    pub fn field(&self) -> &Arc<FieldTable> {
        &self.gram.field
    }

    /// Standard form of the given kind. For hermitian forms `field` is `GF(q^2)`. For
    /// minus-type quadratic forms the last hyperbolic pair is replaced by `Q(e_m) = 1`,
    /// `Q(f_m) = delta`, `(e_m, f_m) = 1` with `x^2 + x + delta` irreducible.
    pub fn standard(kind: FormKind, dim: usize, field: &Arc<FieldTable>, sign: TypeSign) -> Result<Self> {
        let k = &**field;
        let m = dim / 2;
        let odd = dim % 2 == 1;
        if dim == 0 {
            return Err(Error::Param("form of dimension 0".into()));
        }
        let mut gram = Mat::zero(field, dim, dim);
        let one = 1;
        match kind {
            FormKind::Symplectic => {
                if odd {
                    return Err(Error::Param("symplectic forms need even dimension".into()));
                }
                for i in 0..m {
                    gram.set(i, m + i, one);
                    gram.set(m + i, i, k.neg(one));
                }
                Ok(ClassicalForm { kind, dim, gram, quad: None, sign: TypeSign::NotApplicable })
            }
            FormKind::Hermitian => {
                if !k.spec.f.is_multiple_of(2) {
                    return Err(Error::Param(format!("hermitian forms need a square field order, got {}", k.q())));
                }
                for i in 0..m {
                    gram.set(i, m + i, one);
                    gram.set(m + i, i, one);
                }
                if odd {
                    gram.set(dim - 1, dim - 1, one);
                }
                Ok(ClassicalForm { kind, dim, gram, quad: None, sign: TypeSign::NotApplicable })
            }
            FormKind::Quadratic => {
                let expected = if odd { TypeSign::Odd } else { sign };
                if sign != expected || (!odd && !matches!(sign, TypeSign::Plus | TypeSign::Minus)) {
                    return Err(Error::Param(format!("quadratic form of dimension {dim} cannot have sign {sign:?}")));
                }
                if odd && k.p() == 2 {
                    return Err(Error::Param("odd-dimensional quadratic forms need odd q".into()));
                }
                let mut quad = vec![0; dim];
                for i in 0..m {
                    gram.set(i, m + i, one);
                    gram.set(m + i, i, one);
                }
                if odd {
                    quad[dim - 1] = one;
                    gram.set(dim - 1, dim - 1, k.add(one, one));
                }
                if sign == TypeSign::Minus {
                    if m == 0 {
                        return Err(Error::Param("minus type needs dimension >= 2".into()));
                    }
                    let d = anisotropic_delta(k);
                    quad[m - 1] = one;
                    quad[2 * m - 1] = d;
                    gram.set(m - 1, m - 1, k.add(one, one));
                    gram.set(2 * m - 1, 2 * m - 1, k.add(d, d));
                }
                Ok(ClassicalForm { kind, dim, gram, quad: Some(quad), sign: expected })
            }
        }
    }

    /// A quadratic form with the given basis values whose polar form is `gram`.
    pub fn quadratic_with_polar(gram: &Mat, quad: Vec<Elt>, sign: TypeSign) -> Self {
        ClassicalForm { kind: FormKind::Quadratic, dim: gram.rows, gram: gram.clone(), quad: Some(quad), sign }
    }

    /// The field automorphism twisting the second argument (`x -> x^q` for hermitian forms).
    pub fn sigma(&self, x: Elt) -> Elt {
        match self.kind {
            FormKind::Hermitian => self.field().frobenius(x, self.field().spec.f / 2),
            _ => x,
        }
    }

    pub fn bilinear(&self, u: &[Elt], v: &[Elt]) -> Elt {
        let k = &**self.field();
        let mut s = 0;
        for i in 0..self.dim {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                let g = self.gram.get(i, j);
                if g != 0 && v[j] != 0 {
                    s = k.add(s, k.mul(k.mul(u[i], g), self.sigma(v[j])));
                }
            }
        }
        s
    }

    /// `Q(v)` for quadratic forms, `(v, v)` otherwise.
    pub fn value(&self, v: &[Elt]) -> Elt {
        let k = &**self.field();
        match &self.quad {
            Some(a) => {
                let mut s = 0;
                for i in 0..self.dim {
                    if v[i] == 0 {
                        continue;
                    }
                    s = k.add(s, k.mul(a[i], k.mul(v[i], v[i])));
                    for j in i + 1..self.dim {
                        let g = self.gram.get(i, j);
                        if g != 0 && v[j] != 0 {
                            s = k.add(s, k.mul(g, k.mul(v[i], v[j])));
                        }
                    }
                }
                s
            }
            None => self.bilinear(v, v),
        }
    }

    fn basis_vector(&self, i: usize) -> Vec<Elt> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn is_isometry(&self, g: &Mat) -> bool {
        if g.rows != self.dim || g.cols != self.dim {
            return false;
        }
        let imgs: Vec<Vec<Elt>> = (0..self.dim).map(|i| g.row(i).to_vec()).collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.bilinear(&imgs[i], &imgs[j]) != self.gram.get(i, j) {
                    return false;
                }
            }
        }
        match &self.quad {
            Some(a) => (0..self.dim).all(|i| self.value(&imgs[i]) == a[i]),
            None => true,
        }
    }

    /// Whether `v` is isotropic (singular for quadratic forms).
    pub fn is_singular(&self, v: &[Elt]) -> bool {
        self.value(v) == 0
    }

    pub fn is_totally_singular(&self, s: &Subspace) -> bool {
        let rows: Vec<Vec<Elt>> = (0..s.dim()).map(|i| s.basis.row(i).to_vec()).collect();
        rows.iter().all(|u| self.is_singular(u)) && rows.iter().all(|u| rows.iter().all(|w| self.bilinear(u, w) == 0))
    }

    /// `e_i`, for tests and generator builders.
    pub fn e(&self, i: usize) -> Vec<Elt> {
        self.basis_vector(i)
    }
}

/// Index of a vector read in base `q`.
pub fn encode(q: u32, v: &[Elt]) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

pub fn decode(q: u32, n: usize, mut x: usize) -> Vec<Elt> {
    (0..n)
        .map(|_| {
            let c = (x % q as usize) as Elt;
            x /= q as usize;
            c
        })
        .collect()
}

/// Scales so that the first nonzero coordinate is 1.
pub fn normalize(k: &FieldTable, v: &mut [Elt]) -> bool {
    let Some(&lead) = v.iter().find(|&&x| x != 0) else { return false };
    if lead != 1 {
        let inv = k.inv(lead);
        for x in v.iter_mut() {
            *x = k.mul(*x, inv);
        }
    }
    true
}

/// Canonical representatives of all 1-spaces of `GF(q)^n`, ordered by leading position and
/// then by the remaining coordinates.
pub fn projective_points(k: &FieldTable, n: usize) -> Result<Vec<Vec<Elt>>> {
    let q = k.q() as u64;
    let count = (q.checked_pow(n as u32).unwrap_or(u64::MAX) - 1) / (q - 1);
    if count > DOMAIN_CAP as u64 {
        return Err(Error::Cap(format!("{count} projective points exceed {DOMAIN_CAP}")));
    }
    let mut out = Vec::with_capacity(count as usize);
    for lead in 0..n {
        let free = n - lead - 1;
        for idx in 0..q.pow(free as u32) as usize {
            let tail = decode(k.q(), free, idx);
            let mut v = vec![0; n];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&tail);
            out.push(v);
        }
    }
    Ok(out)
}

/// Anything a matrix group acts on through permutations of a finite list.
pub trait MatrixDomain {
    fn len(&self) -> usize;
    fn perm_of(&self, g: &Mat) -> Result<Perm>;
    fn describe(&self) -> String;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainKind {
    NonzeroVectors,
    ProjectivePoints,
    /// Points `<v>` with `(v, v) != 0` or `Q(v) != 0`.
    NondegeneratePoints,
    /// Nondegenerate points with `Q(v)` in the square class of the given value.
    SquareClassPoints(Elt),
    TotallySingular(usize),
}

/// An enumerated geometric domain with an index for constant-time lookup.
#[derive(Clone, Debug)]
pub struct GeometricDomain {
    pub form: Option<ClassicalForm>,
    pub field: Arc<FieldTable>,
    pub dim: usize,
    pub kind: DomainKind,
    pub points: Vec<Vec<Elt>>,
    index: HashMap<Vec<Elt>, u32>,
}

impl GeometricDomain {
    pub fn new(field: &Arc<FieldTable>, dim: usize, form: Option<ClassicalForm>, kind: DomainKind) -> Result<Self> {
        let k = &**field;
        let q = k.q() as u64;
        if q.checked_pow(dim as u32).is_none_or(|t| t > VECTOR_CAP) {
            return Err(Error::Cap(format!("GF({q})^{dim} is too large to enumerate")));
        }
        let needs_form = !matches!(kind, DomainKind::NonzeroVectors | DomainKind::ProjectivePoints);
        if needs_form && form.is_none() {
            return Err(Error::Param(format!("{kind:?} needs a form")));
        }
        let points: Vec<Vec<Elt>> = match kind {
            DomainKind::NonzeroVectors => (1..q.pow(dim as u32) as usize).map(|x| decode(k.q(), dim, x)).collect(),
            DomainKind::ProjectivePoints => projective_points(k, dim)?,
            DomainKind::NondegeneratePoints => {
                let f = form.as_ref().unwrap();
                projective_points(k, dim)?.into_iter().filter(|v| f.value(v) != 0).collect()
            }
            DomainKind::SquareClassPoints(c) => {
                let f = form.as_ref().unwrap();
                if c == 0 || k.p() == 2 {
                    return Err(Error::Param("square classes need odd q and a nonzero value".into()));
                }
                let sq = k.is_square(c);
                projective_points(k, dim)?
                    .into_iter()
                    .filter(|v| {
                        let x = f.value(v);
                        x != 0 && k.is_square(x) == sq
                    })
                    .collect()
            }
            DomainKind::TotallySingular(d) => totally_singular_spaces(form.as_ref().unwrap(), d)?,
        };
        if points.len() > DOMAIN_CAP {
            return Err(Error::Cap(format!("{} points exceed {DOMAIN_CAP}", points.len())));
        }
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        Ok(GeometricDomain { form, field: field.clone(), dim, kind, points, index })
    }

    pub fn index_of(&self, key: &[Elt]) -> Option<u32> {
        self.index.get(key).copied()
    }

    /// Canonical key of the image of point `i` under `g`.
    pub fn image_key(&self, i: usize, g: &Mat) -> Vec<Elt> {
        let k = &*self.field;
        match self.kind {
            DomainKind::NonzeroVectors => g.apply(&self.points[i]),
            DomainKind::TotallySingular(d) => {
                let rows: Vec<Vec<Elt>> =
                    self.points[i].chunks(self.dim).take(d).map(|r| g.apply(r)).collect();
                Subspace::from_vectors(&self.field, self.dim, &rows).basis.data
            }
            _ => {
                let mut v = g.apply(&self.points[i]);
                normalize(k, &mut v);
                v
            }
        }
    }
}

impl MatrixDomain for GeometricDomain {
    fn len(&self) -> usize {
        self.points.len()
    }

    fn perm_of(&self, g: &Mat) -> Result<Perm> {
        let images: Option<Vec<u32>> = (0..self.points.len()).map(|i| self.index_of(&self.image_key(i, g))).collect();
        let images = images.ok_or_else(|| Error::Precondition(format!("matrix does not preserve the domain {:?}", self.kind)))?;
        Perm::from_images(images).ok_or_else(|| Error::Precondition("matrix is singular on the domain".into()))
    }

    fn describe(&self) -> String {
        format!("{:?} of GF({})^{} ({} points)", self.kind, self.field.q(), self.dim, self.points.len())
    }
}

/// Totally singular `d`-spaces as flattened echelon bases, built by extending singular
/// vectors inside perpendicular spaces.
fn totally_singular_spaces(f: &ClassicalForm, d: usize) -> Result<Vec<Vec<Elt>>> {
    let k = f.field();
    let singular: Vec<Vec<Elt>> = projective_points(k, f.dim)?.into_iter().filter(|v| f.is_singular(v)).collect();
    let mut layer: Vec<Subspace> = vec![Subspace::from_vectors(k, f.dim, &[])];
    for _ in 0..d {
        let mut next: Vec<Subspace> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for s in &layer {
            let rows: Vec<Vec<Elt>> = (0..s.dim()).map(|i| s.basis.row(i).to_vec()).collect();
            for v in &singular {
                if s.contains(v) || !rows.iter().all(|r| f.bilinear(r, v) == 0) {
                    continue;
                }
                let mut ext = rows.clone();
                ext.push(v.clone());
                let t = Subspace::from_vectors(k, f.dim, &ext);
                if seen.insert(t.basis.data.clone()) {
                    next.push(t);
                }
                if next.len() > DOMAIN_CAP {
                    return Err(Error::Cap("too many totally singular subspaces".into()));
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<Vec<Elt>> = layer.into_iter().map(|s| s.basis.data).collect();
    out.sort();
    Ok(out)
}

/// The Dickson invariant `rank(g - 1) mod 2` of an isometry of a quadratic form over even q.
pub fn dickson_invariant(g: &Mat, f: &ClassicalForm) -> Result<u8> {
    if f.kind != FormKind::Quadratic || f.field().p() != 2 {
        return Err(Error::Param("the Dickson invariant needs a quadratic form over even q".into()));
    }
    if !f.is_isometry(g) {
        return Err(Error::Precondition("not an isometry of the form".into()));
    }
    let id = Mat::identity(f.field(), f.dim);
    Ok((g.sub(&id).rank() % 2) as u8)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvolutionLetter {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvolutionType {
    pub letter: InvolutionLetter,
    pub s: usize,
}

impl std::fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l = match self.letter {
            InvolutionLetter::A => 'a',
            InvolutionLetter::B => 'b',
            InvolutionLetter::C => 'c',
        };
        write!(f, "{l}{}", self.s)
    }
}

/// Type `a_s`, `b_s` or `c_s` of an involution in a symplectic group over even q. The map
/// `v -> (v, v^x)` is additive and semilinear in even characteristic, so it vanishes
/// everywhere once it vanishes on a basis.
pub fn involution_type(x: &Mat, f: &ClassicalForm) -> Result<InvolutionType> {
    if f.kind != FormKind::Symplectic || f.field().p() != 2 {
        return Err(Error::Param("involution types need a symplectic form over even q".into()));
    }
    let id = Mat::identity(f.field(), f.dim);
    if x.is_identity() || x.mul(x) != id {
        return Err(Error::Precondition("not an involution".into()));
    }
    if !f.is_isometry(x) {
        return Err(Error::Precondition("not an isometry of the form".into()));
    }
    let s = x.sub(&id).rank();
    let alt = (0..f.dim).all(|i| f.bilinear(x.row(i), &f.e(i)) == 0);
    let letter = if alt {
        InvolutionLetter::A
    } else if s % 2 == 1 {
        InvolutionLetter::B
    } else {
        InvolutionLetter::C
    };
    Ok(InvolutionType { letter, s })
}

/// Whether `x^2 + x + a` has no root, i.e. `a` is not of the form `y^2 + y` (even q).
pub fn arf_is_minus(k: &FieldTable, a: Elt) -> bool {
    k.elements().all(|y| k.add(k.mul(y, y), y) != a)
}

/// Quadratic forms over even q whose polar form is a fixed standard symplectic form,
/// restricted to those of minus type. `G = Sp_2m(q)` acts by `Q^g(v) = Q(v g^-1)`, and the
/// forms correspond to the cosets of `O^-_2m(q)`.
///
/// With `labeled`, each form carries a bit and the domain realizes the cosets of
/// `Omega^-_2m(q)`: a fixed transversal `t_Q` with `Q_0^{t_Q} = Q` is chosen and `g` sends
/// `(Q, e)` to `(Q^g, e + D(t_Q g t_{Q^g}^-1))` with `D` the Dickson invariant for `Q_0`.
#[derive(Clone, Debug)]
pub struct MinusFormsDomain {
    pub symplectic: ClassicalForm,
    pub forms: Vec<Vec<Elt>>,
    index: HashMap<Vec<Elt>, u32>,
    transversal: Option<Vec<Mat>>,
}

impl MinusFormsDomain {
    /// `gens` generate `Sp_2m(q)`; the base form is the standard minus form.
    pub fn new(symplectic: &ClassicalForm, gens: &[Mat], labeled: bool) -> Result<Self> {
        let k = symplectic.field().clone();
        if symplectic.kind != FormKind::Symplectic || k.p() != 2 {
            return Err(Error::Param("minus forms need a symplectic form over even q".into()));
        }
        let base = ClassicalForm::standard(FormKind::Quadratic, symplectic.dim, &k, TypeSign::Minus)?;
        let q0 = base.quad.clone().unwrap();
        let mut dom = MinusFormsDomain { symplectic: symplectic.clone(), forms: vec![q0.clone()], index: HashMap::new(), transversal: None };
        dom.index.insert(q0, 0);
        let inverses: Vec<Mat> = gens.iter().map(|g| g.inverse().expect("generators are invertible")).collect();
        let mut trans = vec![Mat::identity(&k, symplectic.dim)];
        let mut i = 0;
        while i < dom.forms.len() {
            for (g, gi) in gens.iter().zip(&inverses) {
                let img = dom.act_form(&dom.forms[i], gi);
                if !dom.index.contains_key(&img) {
                    if dom.forms.len() >= DOMAIN_CAP {
                        return Err(Error::Cap("too many quadratic forms".into()));
                    }
                    dom.index.insert(img.clone(), dom.forms.len() as u32);
                    dom.forms.push(img);
                    trans.push(trans[i].mul(g));
                }
            }
            i += 1;
        }
        if labeled {
            dom.transversal = Some(trans);
        }
        Ok(dom)
    }

    pub fn base_form(&self) -> ClassicalForm {
        ClassicalForm::quadratic_with_polar(&self.symplectic.gram, self.forms[0].clone(), TypeSign::Minus)
    }

    /// Values on the basis of `Q^g`, given `g^-1`.
    fn act_form(&self, a: &[Elt], g_inv: &Mat) -> Vec<Elt> {
        let f = ClassicalForm::quadratic_with_polar(&self.symplectic.gram, a.to_vec(), TypeSign::Minus);
        (0..self.symplectic.dim).map(|i| f.value(g_inv.row(i))).collect()
    }

    pub fn is_minus(&self, a: &[Elt]) -> bool {
        let k = self.symplectic.field();
        let m = self.symplectic.dim / 2;
        let arf = (0..m).fold(0, |s, i| k.add(s, k.mul(a[i], a[m + i])));
        arf_is_minus(k, arf)
    }

    pub fn form_count(&self) -> usize {
        self.forms.len()
    }
}

impl MatrixDomain for MinusFormsDomain {
    fn len(&self) -> usize {
        self.forms.len() * if self.transversal.is_some() { 2 } else { 1 }
    }

    fn perm_of(&self, g: &Mat) -> Result<Perm> {
        if !self.symplectic.is_isometry(g) {
            return Err(Error::Precondition("matrix is not symplectic".into()));
        }
        let gi = g.inverse().unwrap();
        let img: Vec<u32> = self
            .forms
            .iter()
            .map(|a| self.index[&self.act_form(a, &gi)])
            .collect();
        let Some(trans) = &self.transversal else {
            return Perm::from_images(img).ok_or_else(|| Error::Internal("form action is not a permutation".into()));
        };
        let base = self.base_form();
        let mut out = vec![0u32; self.len()];
        for (i, &j) in img.iter().enumerate() {
            let s = trans[i].mul(g).mul(&trans[j as usize].inverse().unwrap());
            let d = dickson_invariant(&s, &base)? as u32;
            out[2 * i] = 2 * j + d;
            out[2 * i + 1] = 2 * j + (1 - d);
        }
        Perm::from_images(out).ok_or_else(|| Error::Internal("labeled action is not a permutation".into()))
    }

    fn describe(&self) -> String {
        let what = if self.transversal.is_some() { "labeled minus-type forms" } else { "minus-type forms" };
        format!("{what} over GF({}) in dimension {} ({} points)", self.symplectic.field().q(), self.symplectic.dim, self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> Arc<FieldTable> {
        FieldTable::of_order(q).unwrap()
    }

    #[test]
    fn standard_forms() {
        let k = gf(2);
        let sp = ClassicalForm::standard(FormKind::Symplectic, 4, &k, TypeSign::NotApplicable).unwrap();
        assert_eq!(sp.gram.to_rows(), vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let o8 = ClassicalForm::standard(FormKind::Quadratic, 8, &k, TypeSign::Plus).unwrap();
        assert!(o8.quad.as_ref().unwrap().iter().all(|&a| a == 0));
        assert!((0..8).all(|i| o8.gram.get(i, i) == 0));
        let k3 = gf(3);
        let o5 = ClassicalForm::standard(FormKind::Quadratic, 5, &k3, TypeSign::Odd).unwrap();
        // <e_2 + 2 f_2> has Q = 2, a non-square
        let v = vec![0, 1, 0, 2, 0];
        assert_eq!(o5.value(&v), 2);
        assert!(!k3.is_square(2));
        assert!(ClassicalForm::standard(FormKind::Hermitian, 4, &k3, TypeSign::NotApplicable).is_err());
        assert!(ClassicalForm::standard(FormKind::Quadratic, 5, &k, TypeSign::Odd).is_err());
        assert!(ClassicalForm::standard(FormKind::Quadratic, 4, &k3, TypeSign::Odd).is_err());
    }

    #[test]
    fn isometry_checks() {
        let k3 = gf(3);
        let o5 = ClassicalForm::standard(FormKind::Quadratic, 5, &k3, TypeSign::Odd).unwrap();
        assert!(o5.is_isometry(&Mat::identity(&k3, 5)));
        // y_{1,2}(1): f_1 -> f_1 + e_2, f_2 -> f_2 - e_1
        let mut y = Mat::identity(&k3, 5);
        y.set(2, 1, 1);
        y.set(3, 0, 2);
        assert!(o5.is_isometry(&y));
        let mut bad = Mat::identity(&k3, 5);
        bad.set(0, 1, 1);
        assert!(!o5.is_isometry(&bad));
    }

    #[test]
    fn domain_counts() {
        let k4 = gf(4);
        let u4 = ClassicalForm::standard(FormKind::Hermitian, 4, &k4, TypeSign::NotApplicable).unwrap();
        let d = GeometricDomain::new(&k4, 4, Some(u4.clone()), DomainKind::NondegeneratePoints).unwrap();
        assert_eq!(d.len(), 40);
        let ts = GeometricDomain::new(&k4, 4, Some(u4), DomainKind::TotallySingular(2)).unwrap();
        assert_eq!(ts.len(), 27);
        let k2 = gf(2);
        let o8 = ClassicalForm::standard(FormKind::Quadratic, 8, &k2, TypeSign::Plus).unwrap();
        let d = GeometricDomain::new(&k2, 8, Some(o8), DomainKind::NondegeneratePoints).unwrap();
        assert_eq!(d.len(), 120);
        let k3 = gf(3);
        let o5 = ClassicalForm::standard(FormKind::Quadratic, 5, &k3, TypeSign::Odd).unwrap();
        let d = GeometricDomain::new(&k3, 5, Some(o5), DomainKind::SquareClassPoints(2)).unwrap();
        assert_eq!(d.len(), 36);
        assert_eq!(GeometricDomain::new(&k3, 3, None, DomainKind::ProjectivePoints).unwrap().len(), 13);
    }

    #[test]
    fn dickson_and_involution_types() {
        let k2 = gf(2);
        let o4 = ClassicalForm::standard(FormKind::Quadratic, 4, &k2, TypeSign::Plus).unwrap();
        let id = Mat::identity(&k2, 4);
        assert_eq!(dickson_invariant(&id, &o4).unwrap(), 0);
        // orthogonal transvection along e_1 + f_1 (Q = 1): swaps e_1 and f_1
        let t = Mat::from_rows(&k2, &[vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1]]);
        assert_eq!(dickson_invariant(&t, &o4).unwrap(), 1);
        let mut bad = id.clone();
        bad.set(0, 1, 1);
        assert!(dickson_invariant(&bad, &o4).is_err());

        let sp = ClassicalForm::standard(FormKind::Symplectic, 4, &k2, TypeSign::NotApplicable).unwrap();
        // e_1 -> e_1 + f_1: a symplectic transvection, type b_1
        let mut x = id.clone();
        x.set(0, 2, 1);
        assert_eq!(involution_type(&x, &sp).unwrap().to_string(), "b1");
        // f_1 -> f_1 + e_2, f_2 -> f_2 + e_1: type a_2
        let mut y = id.clone();
        y.set(2, 1, 1);
        y.set(3, 0, 1);
        assert_eq!(involution_type(&y, &sp).unwrap().to_string(), "a2");
        // both transvections at once: c_2
        let mut z = id.clone();
        z.set(0, 2, 1);
        z.set(1, 3, 1);
        assert_eq!(involution_type(&z, &sp).unwrap().to_string(), "c2");
        assert!(involution_type(&id, &sp).is_err());
    }

    fn random_orthogonal_word(gens: &[Mat], picks: &[usize]) -> Mat {
        picks.iter().fold(Mat::identity(&gens[0].field, gens[0].rows), |acc, &i| acc.mul(&gens[i % gens.len()]))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn dickson_is_additive(a in proptest::collection::vec(0usize..64, 1..12), b in proptest::collection::vec(0usize..64, 1..12)) {
            for (q, n, sign) in [(2, 4, TypeSign::Plus), (2, 4, TypeSign::Minus), (2, 6, TypeSign::Minus), (4, 4, TypeSign::Minus), (2, 8, TypeSign::Plus)] {
                let k = gf(q);
                let f = ClassicalForm::standard(FormKind::Quadratic, n, &k, sign).unwrap();
                let gens = crate::constructions::classical::full_orthogonal_gens(&f).unwrap();
                let g = random_orthogonal_word(&gens, &a);
                let h = random_orthogonal_word(&gens, &b);
                let d = |x: &Mat| dickson_invariant(x, &f).unwrap();
                prop_assert_eq!(d(&g.mul(&h)), d(&g) ^ d(&h));
            }
        }
    }
}
