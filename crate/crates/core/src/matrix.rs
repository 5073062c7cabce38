//! Matrices over GF(q) acting on row vectors from the right, subspaces in echelon form,
//! Singer cycles and the module constructions built from them.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Elt, FieldTable};
use crate::poly::{self, Poly};

#[derive(Clone)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elt>,
    pub field: Arc<FieldTable>,
}

impl PartialEq for Mat {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}
impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.rows.hash(h);
        self.cols.hash(h);
        self.data.hash(h);
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zero(field: &Arc<FieldTable>, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &Arc<FieldTable>, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Arc<FieldTable>, rows: &[Vec<Elt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data, field: field.clone() }
    }

    pub fn from_fn(field: &Arc<FieldTable>, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Elt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data, field: field.clone() }
    }

    pub fn diag(field: &Arc<FieldTable>, d: &[Elt]) -> Self {
        let n = d.len();
        Self::from_fn(field, n, n, |i, j| if i == j { d[i] } else { 0 })
    }

    /// Block diagonal matrix.
    pub fn block_diag(blocks: &[&Mat]) -> Self {
        let field = blocks[0].field.clone();
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(&field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as Elt))
    }

    /// Scalar matrices, returning the scalar.
    pub fn scalar_value(&self) -> Option<Elt> {
        let s = self.get(0, 0);
        let ok = (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { s } else { 0 }));
        ok.then_some(s)
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let k = &*self.field;
        let mut out = Mat::zero(&self.field, self.rows, o.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * o.cols..(i + 1) * o.cols];
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                if a == 0 {
                    continue;
                }
                let brow = &o.data[l * o.cols..(l + 1) * o.cols];
                for j in 0..o.cols {
                    if brow[j] != 0 {
                        orow[j] = k.add(orow[j], k.mul(a, brow[j]));
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Elt]) -> Vec<Elt> {
        let k = &*self.field;
        let mut out = vec![0; self.cols];
        for (l, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = self.row(l);
            for j in 0..self.cols {
                if row[j] != 0 {
                    out[j] = k.add(out[j], k.mul(a, row[j]));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat) -> Mat {
        let k = &*self.field;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| k.add(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        let k = &*self.field;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| k.sub(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn scale(&self, s: Elt) -> Mat {
        let k = &*self.field;
        let data = self.data.iter().map(|&a| k.mul(a, s)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise `x -> x^(p^k)`.
    pub fn frobenius(&self, k: u32) -> Mat {
        let f = &*self.field;
        let data = self.data.iter().map(|&a| f.frobenius(a, k)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let k = &*self.field;
        Mat::from_fn(&self.field, self.rows * o.rows, self.cols * o.cols, |i, j| {
            k.mul(self.get(i / o.rows, j / o.cols), o.get(i % o.rows, j % o.cols))
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let k = &*self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = k.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = m.get(r, j);
                m.set(r, j, k.mul(v, inv));
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && f != 0 {
                    for j in 0..m.cols {
                        let v = k.sub(m.get(i, j), k.mul(f, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}` for column vectors `x`.
    pub fn right_kernel_basis(&self) -> Vec<Vec<Elt>> {
        let k = &*self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Left kernel `{v : v M = 0}`, the natural kernel for the row-vector convention.
    pub fn kernel(&self) -> Subspace {
        let basis = self.transpose().right_kernel_basis();
        Subspace::from_vectors(&self.field, self.rows, &basis)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let k = &*self.field;
        let aug = Mat::from_fn(&self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else {
                (j - n == i) as Elt
            }
        });
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let _ = k;
        Some(Mat::from_fn(&self.field, n, n, |i, j| r.get(i, n + j)))
    }

    pub fn det(&self) -> Elt {
        assert!(self.is_square());
        let k = &*self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut d: Elt = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else { return 0 };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                d = k.neg(d);
            }
            let piv = m.get(c, c);
            d = k.mul(d, piv);
            let inv = k.inv(piv);
            for i in c + 1..n {
                let f = k.mul(m.get(i, c), inv);
                if f != 0 {
                    for j in c..n {
                        let v = k.sub(m.get(i, j), k.mul(f, m.get(c, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        d
    }

    pub fn pow(&self, mut e: u128) -> Mat {
        let mut result = Mat::identity(&self.field, self.rows);
        let mut b = self.clone();
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

    /// Characteristic polynomial `det(xI - M)`, via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let k = &*self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| h.get(i, j) != 0) else { continue };
            if p != j + 1 {
                for c in 0..n {
                    h.data.swap(p * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + p, r * n + j + 1);
                }
            }
            let inv = k.inv(h.get(j + 1, j));
            for r in j + 2..n {
                let u = k.mul(h.get(r, j), inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = k.sub(h.get(r, c), k.mul(u, h.get(j + 1, c)));
                    h.set(r, c, v);
                }
                for rr in 0..n {
                    let v = k.add(h.get(rr, j + 1), k.mul(u, h.get(rr, r)));
                    h.set(rr, j + 1, v);
                }
            }
        }
        // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{i<j<=k} h_{j,j-1}) p_{i-1}
        let mut ps: Vec<Poly> = vec![vec![1]];
        for kk in 0..n {
            let mut next = poly::mul(k, &[k.neg(h.get(kk, kk)), 1], &ps[kk]);
            let mut prod: Elt = 1;
            for i in (0..kk).rev() {
                prod = k.mul(prod, h.get(i + 1, i));
                if prod == 0 {
                    break;
                }
                let coeff = k.mul(h.get(i, kk), prod);
                if coeff != 0 {
                    let term: Poly = ps[i].iter().map(|&c| k.mul(c, coeff)).collect();
                    next = poly::sub(k, &next, &term);
                }
            }
            ps.push(next);
        }
        ps.pop().unwrap()
    }

    /// `f(M)` by Horner's rule.
    pub fn eval_poly(&self, f: &[Elt]) -> Mat {
        let mut acc = Mat::zero(&self.field, self.rows, self.cols);
        let id = Mat::identity(&self.field, self.rows);
        for &c in f.iter().rev() {
            acc = acc.mul(self).add(&id.scale(c));
        }
        acc
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self) -> u128 {
        assert!(self.is_square());
        let k = &*self.field;
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let q = k.q() as u64;
        let p = k.p() as u128;
        let mut bound: u128 = 1;
        for d in poly::factor_degrees(k, &self.charpoly()) {
            bound = arith::lcm(bound, arith::ipow(q, d as u32) as u128 - 1);
        }
        let mut pp = 1u128;
        while pp < n as u128 {
            pp *= p;
        }
        bound *= pp;
        let id = Mat::identity(&self.field, n);
        assert!(self.pow(bound) == id, "matrix is not invertible");
        arith::order_from_bound(bound, |e| self.pow(e) == id)
    }
}

/// A subspace of `GF(q)^n`, stored by its reduced echelon basis (unique per subspace).
#[derive(Clone)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Mat,
    pub pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.basis == o.basis
    }
}
impl Eq for Subspace {}
impl Hash for Subspace {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.ambient.hash(h);
        self.basis.data.hash(h);
    }
}
impl PartialOrd for Subspace {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Subspace {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.ambient, self.dim(), &self.basis.data).cmp(&(o.ambient, o.dim(), &o.basis.data))
    }
}
impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis.to_rows())
    }
}

impl Subspace {
    pub fn from_vectors(field: &Arc<FieldTable>, ambient: usize, vecs: &[Vec<Elt>]) -> Self {
        if vecs.is_empty() {
            return Subspace { ambient, basis: Mat::zero(field, 0, ambient), pivots: Vec::new() };
        }
        let (r, pivots) = Mat::from_rows(field, vecs).rref();
        let basis = Mat::from_fn(field, pivots.len(), ambient, |i, j| r.get(i, j));
        Subspace { ambient, basis, pivots }
    }

    pub fn whole(field: &Arc<FieldTable>, n: usize) -> Self {
        Subspace { ambient: n, basis: Mat::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.basis.field
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Elt]) -> Option<Vec<Elt>> {
        let c: Vec<Elt> = self.pivots.iter().map(|&p| v[p]).collect();
        (self.from_coords(&c) == v).then_some(c)
    }

    pub fn from_coords(&self, c: &[Elt]) -> Vec<Elt> {
        self.basis.apply(c)
    }

    pub fn contains(&self, v: &[Elt]) -> bool {
        self.coords(v).is_some()
    }

    pub fn is_invariant(&self, g: &Mat) -> bool {
        (0..self.dim()).all(|i| self.contains(&g.apply(self.basis.row(i))))
    }

    /// Action of an invariance-preserving `g` in echelon-basis coordinates.
    pub fn restrict(&self, g: &Mat) -> Result<Mat> {
        let mut rows = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let img = g.apply(self.basis.row(i));
            rows.push(self.coords(&img).ok_or_else(|| Error::Precondition("subspace is not invariant".into()))?);
        }
        if rows.is_empty() {
            return Ok(Mat::zero(self.field(), 0, 0));
        }
        Ok(Mat::from_rows(self.field(), &rows))
    }

    /// All vectors of the subspace, ordered by coordinate index in base `q`.
    pub fn elements(&self) -> Vec<Vec<Elt>> {
        let q = self.field().q() as u64;
        let d = self.dim();
        let total = q.pow(d as u32);
        (0..total)
            .map(|mut idx| {
                let mut c = vec![0; d];
                for slot in c.iter_mut() {
                    *slot = (idx % q) as Elt;
                    idx /= q;
                }
                self.from_coords(&c)
            })
            .collect()
    }

    pub fn image(&self, g: &Mat) -> Subspace {
        let vecs: Vec<Vec<Elt>> = (0..self.dim()).map(|i| g.apply(self.basis.row(i))).collect();
        Subspace::from_vectors(self.field(), self.ambient, &vecs)
    }
}

#[derive(Clone, Debug)]
pub struct SingerData {
    pub n: usize,
    pub q: u32,
    pub c: Mat,
    /// The `q`-power Frobenius on `GF(q^n)` in the power basis: `phi^-1 c phi = c^q`.
    pub phi: Mat,
    pub poly: Poly,
}

/// Singer cycle: the companion matrix of the least primitive polynomial of degree `n`.
pub fn singer(n: usize, field: &Arc<FieldTable>) -> Result<SingerData> {
    if n == 0 {
        return Err(Error::Param("Singer cycle needs n >= 1".into()));
    }
    let k = &**field;
    if n == 1 {
        let c = Mat::diag(field, &[k.primitive()]);
        return Ok(SingerData { n, q: k.q(), c, phi: Mat::identity(field, 1), poly: vec![k.neg(k.primitive()), 1] });
    }
    let f = poly::least_primitive(k, n);
    // row i holds the coordinates of x^(i+1)
    let c = Mat::from_fn(field, n, n, |i, j| {
        if i + 1 < n {
            (j == i + 1) as Elt
        } else {
            k.neg(f[j])
        }
    });
    let xq = poly::powmod(k, &[0, 1], k.q() as u128, &f);
    let mut rows = Vec::with_capacity(n);
    let mut cur: Poly = vec![1];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = poly::mulmod(k, &cur, &xq, &f);
    }
    let phi = Mat::from_rows(field, &rows);
    Ok(SingerData { n, q: k.q(), c, phi, poly: f })
}

/// Block sizes of a unipotent matrix in decreasing order.
pub fn jordan_partition_unipotent(u: &Mat) -> Result<Vec<usize>> {
    let n = u.rows;
    let nil = u.sub(&Mat::identity(&u.field, n));
    let mut ranks = vec![n];
    let mut pw = Mat::identity(&u.field, n);
    for _ in 0..n {
        pw = pw.mul(&nil);
        ranks.push(pw.rank());
    }
    if ranks[n] != 0 {
        return Err(Error::Precondition("matrix is not unipotent".into()));
    }
    // at_least[k] = number of blocks of size >= k
    let at_least: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut parts = Vec::new();
    for k in (1..=n).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k, exactly));
    }
    Ok(parts)
}

/// Index of `x_i ^ x_j` (`i < j`) in the lexicographic basis of the exterior square.
pub fn wedge_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * m - i * (i + 1) / 2 + (j - i - 1)
}

pub fn wedge_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

pub fn exterior_square_action(g: &Mat) -> Mat {
    let k = &*g.field;
    let pairs = wedge_pairs(g.rows);
    let n = pairs.len();
    Mat::from_fn(&g.field, n, n, |r, c| {
        let (i, j) = pairs[r];
        let (a, b) = pairs[c];
        k.sub(k.mul(g.get(i, a), g.get(j, b)), k.mul(g.get(i, b), g.get(j, a)))
    })
}

/// `g (x) g^(sigma)` with `sigma` the involutory field automorphism.
pub fn twisted_tensor_action(g: &Mat) -> Result<Mat> {
    let f = g.field.spec.f;
    if !f.is_multiple_of(2) {
        return Err(Error::Param(format!("GF({}) has no involutory automorphism", g.field.q())));
    }
    Ok(g.kron(&g.frobenius(f / 2)))
}

/// The `<c>`-irreducible invariant subspaces of `v` of dimension `target_dim`, sorted by
/// echelon form. Homogeneous components of multiplicity above one are expanded into all
/// their irreducible submodules, which requires enumerating the component.
pub fn invariant_summands(c: &Mat, v: &Subspace, target_dim: usize) -> Result<Vec<Subspace>> {
    let field = c.field.clone();
    let k = &*field;
    let a = v.restrict(c)?;
    if target_dim == 0 || target_dim > v.dim() {
        return Ok(Vec::new());
    }
    let chi = a.charpoly();
    let mut out = Vec::new();
    for g in poly::monic_of_degree(k, target_dim) {
        if !poly::rem(k, &chi, &g).is_empty() || !poly::is_irreducible(k, &g) {
            continue;
        }
        let kern = a.eval_poly(&g).kernel();
        let to_ambient = |coords: &[Elt]| v.from_coords(coords);
        if kern.dim() == target_dim {
            let vecs: Vec<Vec<Elt>> = (0..kern.dim()).map(|i| to_ambient(kern.basis.row(i))).collect();
            out.push(Subspace::from_vectors(&field, v.ambient, &vecs));
            continue;
        }
        let size = (k.q() as u64).checked_pow(kern.dim() as u32).unwrap_or(u64::MAX);
        if size > 200_000 {
            return Err(Error::Cap(format!("homogeneous component of size {size}")));
        }
        let mut seen = std::collections::BTreeSet::new();
        for w in kern.elements().into_iter().skip(1) {
            let mut vecs = vec![w.clone()];
            let mut cur = w;
            for _ in 1..target_dim {
                cur = a.apply(&cur);
                vecs.push(cur.clone());
            }
            let amb: Vec<Vec<Elt>> = vecs.iter().map(|x| to_ambient(x)).collect();
            seen.insert(Subspace::from_vectors(&field, v.ambient, &amb));
        }
        out.extend(seen);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> Arc<FieldTable> {
        FieldTable::of_order(q).unwrap()
    }

    fn all_subspaces(field: &Arc<FieldTable>, n: usize, d: usize) -> Vec<Subspace> {
        // every subspace is spanned by d vectors; enumerate spans of d-tuples of vectors
        let q = field.q() as usize;
        let vecs: Vec<Vec<Elt>> = (0..q.pow(n as u32))
            .map(|mut x| {
                (0..n).map(|_| { let c = (x % q) as Elt; x /= q; c }).collect()
            })
            .collect();
        let mut set = std::collections::BTreeSet::new();
        let mut idx = vec![0usize; d];
        loop {
            let chosen: Vec<Vec<Elt>> = idx.iter().map(|&i| vecs[i].clone()).collect();
            let s = Subspace::from_vectors(field, n, &chosen);
            if s.dim() == d {
                set.insert(s);
            }
            let mut t = 0;
            loop {
                if t == d {
                    return set.into_iter().collect();
                }
                idx[t] += 1;
                if idx[t] < vecs.len() {
                    break;
                }
                idx[t] = 0;
                t += 1;
            }
        }
    }

    #[test]
    fn identity_and_zero_rank() {
        let k = gf(5);
        assert_eq!(Mat::identity(&k, 4).rank(), 4);
        assert_eq!(Mat::identity(&k, 4).kernel().dim(), 0);
        assert_eq!(Mat::zero(&k, 4, 4).rank(), 0);
        assert_eq!(Mat::zero(&k, 4, 4).kernel().dim(), 4);
    }

    #[test]
    fn singer_orders() {
        let s = singer(2, &gf(5)).unwrap();
        assert_eq!(s.c.order(), 24);
        // modulo scalars: least e with c^e scalar
        let e = (1..=24u128).find(|&e| s.c.pow(e).scalar_value().is_some()).unwrap();
        assert_eq!(e, 6);
        let s1 = singer(1, &gf(7)).unwrap();
        assert_eq!(s1.c.get(0, 0), 3);
        assert_eq!(s1.c.order(), 6);
        for (n, q) in [(3usize, 2u32), (4, 2), (3, 3), (2, 4), (2, 9), (4, 3)] {
            let s = singer(n, &gf(q)).unwrap();
            assert_eq!(s.c.order(), (q as u128).pow(n as u32) - 1);
            let lhs = s.phi.inverse().unwrap().mul(&s.c).mul(&s.phi);
            assert_eq!(lhs, s.c.pow(q as u128), "n={n} q={q}");
        }
    }

    #[test]
    fn singer_irreducible_by_enumeration() {
        for (n, q) in [(3usize, 2u32), (4, 2), (2, 3)] {
            let k = gf(q);
            let s = singer(n, &k).unwrap();
            for d in 1..n {
                let inv = all_subspaces(&k, n, d).into_iter().filter(|w| w.is_invariant(&s.c)).count();
                assert_eq!(inv, 0, "n={n} q={q} d={d}");
                let whole = Subspace::whole(&k, n);
                assert!(invariant_summands(&s.c, &whole, d).unwrap().is_empty());
            }
            assert_eq!(invariant_summands(&s.c, &Subspace::whole(&k, n), n).unwrap().len(), 1);
        }
    }

    #[test]
    fn charpoly_agrees_with_determinants() {
        let k = gf(7);
        let m = Mat::from_rows(&k, &[vec![1, 2, 0, 3], vec![0, 0, 4, 1], vec![5, 0, 0, 2], vec![6, 1, 1, 0]]);
        let chi = m.charpoly();
        for x in k.elements() {
            let xi = Mat::identity(&k, 4).scale(x).sub(&m);
            assert_eq!(poly::eval(&k, &chi, x), xi.det());
        }
        assert!(m.eval_poly(&chi).data.iter().all(|&c| c == 0));
    }

    #[test]
    fn jordan_examples() {
        let k = gf(2);
        assert_eq!(jordan_partition_unipotent(&Mat::identity(&k, 6)).unwrap(), vec![1; 6]);
        let mut u = Mat::identity(&k, 4);
        u.set(0, 1, 1);
        u.set(2, 3, 1);
        assert_eq!(jordan_partition_unipotent(&u).unwrap(), vec![2, 2]);
        let k3 = gf(3);
        let j3 = Mat::from_rows(&k3, &[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(jordan_partition_unipotent(&j3).unwrap(), vec![3]);
        assert!(jordan_partition_unipotent(&Mat::diag(&k3, &[2, 1, 1])).is_err());
    }

    #[test]
    fn exterior_square_examples() {
        let k = gf(5);
        let d = Mat::diag(&k, &[2, 3]);
        assert_eq!(exterior_square_action(&d).data, vec![k.mul(2, 3)]);
        assert!(exterior_square_action(&Mat::identity(&k, 4)).is_identity());
        // Singer of GL4(2) on the exterior square has an invariant 4-dim summand
        let k2 = gf(2);
        let s = singer(4, &k2).unwrap();
        let l2 = exterior_square_action(&s.c);
        let sums = invariant_summands(&l2, &Subspace::whole(&k2, 6), 4).unwrap();
        assert_eq!(sums.len(), 1);
    }

    #[test]
    fn twisted_tensor_examples() {
        let k = gf(4);
        let lam = Mat::diag(&k, &[k.primitive()]);
        let t = twisted_tensor_action(&lam).unwrap();
        assert_eq!(t.data, vec![k.pow(k.primitive(), 3)]);
        assert!(twisted_tensor_action(&Mat::identity(&gf(8), 2)).is_err());
        // The Singer cycle of GL2(4) on the twisted tensor square: its characteristic
        // polynomial lies over GF(2) and is irreducible of degree 4 there.
        let s = singer(2, &k).unwrap();
        let tt = twisted_tensor_action(&s.c).unwrap();
        let chi = tt.charpoly();
        assert!(chi.iter().all(|&c| c < 2));
        let k2 = gf(2);
        assert!(poly::is_irreducible(&k2, &chi));
    }

    #[test]
    fn identity_summands_are_all_lines() {
        let k = gf(3);
        let id = Mat::identity(&k, 3);
        let lines = invariant_summands(&id, &Subspace::whole(&k, 3), 1).unwrap();
        assert_eq!(lines.len(), 13);
    }

    fn arb_mat(q: u32, n: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..q, n * n)
    }

    proptest! {
        #[test]
        fn rank_nullity(data in arb_mat(5, 4)) {
            let k = gf(5);
            let m = Mat { rows: 4, cols: 4, data, field: k };
            prop_assert_eq!(m.rank() + m.kernel().dim(), 4);
        }

        #[test]
        fn det_and_inverse(a in arb_mat(7, 3), b in arb_mat(7, 3)) {
            let k = gf(7);
            let a = Mat { rows: 3, cols: 3, data: a, field: k.clone() };
            let b = Mat { rows: 3, cols: 3, data: b, field: k.clone() };
            prop_assert_eq!(a.mul(&b).det(), k.mul(a.det(), b.det()));
            match a.inverse() {
                Some(ai) => prop_assert!(a.mul(&ai).is_identity()),
                None => prop_assert_eq!(a.det(), 0),
            }
        }

        #[test]
        fn module_constructions_multiplicative(a in arb_mat(4, 3), b in arb_mat(4, 3)) {
            let k = gf(4);
            let a = Mat { rows: 3, cols: 3, data: a, field: k.clone() };
            let b = Mat { rows: 3, cols: 3, data: b, field: k };
            let ab = a.mul(&b);
            prop_assert_eq!(exterior_square_action(&ab), exterior_square_action(&a).mul(&exterior_square_action(&b)));
            prop_assert_eq!(
                twisted_tensor_action(&ab).unwrap(),
                twisted_tensor_action(&a).unwrap().mul(&twisted_tensor_action(&b).unwrap())
            );
        }
    }
}
