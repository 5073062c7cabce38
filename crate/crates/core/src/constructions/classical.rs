//! Generators of classical groups from root elements in the standard bases.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldTable};
use crate::forms::{ClassicalForm, FormKind, GeometricDomain, DomainKind, MatrixDomain};
use crate::matrix::Mat;
use crate::perm::PermGroup;

/// `1, w, w^2, ...`: a basis of `GF(q)` over its prime field.
pub fn prime_basis(k: &FieldTable) -> Vec<Elt> {
    (0..k.spec.f as u64).map(|t| k.exp(t)).collect()
}

/// The matrix sending `e_i` to `e_i + lambda e_j` and fixing the other basis vectors.
pub fn elementary(k: &Arc<FieldTable>, n: usize, i: usize, j: usize, lambda: Elt) -> Mat {
    let mut m = Mat::identity(k, n);
    m.set(i, j, k.add(m.get(i, j), lambda));
    m
}

pub fn sl_gens(k: &Arc<FieldTable>, n: usize) -> Vec<Mat> {
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        for &l in &prime_basis(k) {
            gens.push(elementary(k, n, i, i + 1, l));
            gens.push(elementary(k, n, i + 1, i, l));
        }
    }
    gens
}

pub fn gl_gens(k: &Arc<FieldTable>, n: usize) -> Vec<Mat> {
    let mut gens = sl_gens(k, n);
    let mut d = vec![1; n];
    d[0] = k.primitive();
    gens.push(Mat::diag(k, &d));
    gens
}

/// Root elements of `Sp_2m(q)` for the simple roots and their negatives.
pub fn symplectic_gens(f: &ClassicalForm) -> Result<Vec<Mat>> {
    if f.kind != FormKind::Symplectic {
        return Err(Error::Param("not a symplectic form".into()));
    }
    let k = f.field();
    let (n, m) = (f.dim, f.dim / 2);
    let mut gens = Vec::new();
    for &l in &prime_basis(k) {
        for i in 0..m.saturating_sub(1) {
            for (a, b) in [(i, i + 1), (i + 1, i)] {
                // e_a -> e_a + l e_b, f_b -> f_b - l f_a
                let mut x = elementary(k, n, a, b, l);
                x.set(m + b, m + a, k.neg(l));
                gens.push(x);
            }
        }
        gens.push(elementary(k, n, m - 1, 2 * m - 1, l));
        gens.push(elementary(k, n, 2 * m - 1, m - 1, l));
    }
    check_all(f, gens)
}

fn check_all(f: &ClassicalForm, gens: Vec<Mat>) -> Result<Vec<Mat>> {
    if let Some(g) = gens.iter().find(|g| !f.is_isometry(g)) {
        return Err(Error::Internal(format!("generator is not an isometry: {g:?}")));
    }
    Ok(gens)
}

/// Root elements of `SU_n(q)` for the standard hermitian form over `GF(q^2)`.
pub fn special_unitary_gens(f: &ClassicalForm) -> Result<Vec<Mat>> {
    if f.kind != FormKind::Hermitian {
        return Err(Error::Param("not a hermitian form".into()));
    }
    let k = f.field();
    let (n, m) = (f.dim, f.dim / 2);
    let odd = n % 2 == 1;
    let sigma = |x: Elt| f.sigma(x);
    let mut gens = Vec::new();
    for &l in &prime_basis(k) {
        for i in 0..m.saturating_sub(1) {
            for (a, b) in [(i, i + 1), (i + 1, i)] {
                // e_a -> e_a + l e_b, f_b -> f_b - sigma(l) f_a
                let mut x = elementary(k, n, a, b, l);
                x.set(m + b, m + a, k.neg(sigma(l)));
                gens.push(x);
            }
        }
        if odd && m > 0 {
            // f_m -> f_m + l v + c e_m, v -> v - sigma(l) e_m, with c + sigma(c) = -N(l)
            let norm = k.mul(l, sigma(l));
            let c = k
                .elements()
                .find(|&c| k.add(c, sigma(c)) == k.neg(norm))
                .ok_or_else(|| Error::Internal("no solution of the trace equation".into()))?;
            for (a, b) in [(m - 1, 2 * m - 1), (2 * m - 1, m - 1)] {
                let mut x = Mat::identity(k, n);
                x.set(b, n - 1, l);
                x.set(b, a, c);
                x.set(n - 1, a, k.neg(sigma(l)));
                gens.push(x);
            }
        }
    }
    if !odd && m > 0 {
        // e_m -> e_m + a f_m with a + sigma(a) = 0, a running over a prime-field basis of
        // the trace-zero elements
        let trace_zero: Vec<Elt> = k.nonzero().filter(|&a| k.add(a, sigma(a)) == 0).collect();
        let basis = additive_basis(k, &trace_zero);
        for a in basis {
            gens.push(elementary(k, n, m - 1, 2 * m - 1, a));
            gens.push(elementary(k, n, 2 * m - 1, m - 1, a));
        }
    }
    check_all(f, gens)
}

/// `GU_n(q)`: `SU_n(q)` together with a torus element of determinant order `q + 1`.
pub fn general_unitary_gens(f: &ClassicalForm) -> Result<Vec<Mat>> {
    let mut gens = special_unitary_gens(f)?;
    let k = f.field();
    let w = k.primitive();
    let mut d = vec![1; f.dim];
    if f.dim >= 2 {
        let m = f.dim / 2;
        d[0] = w;
        d[m] = k.inv(f.sigma(w));
    } else {
        d[0] = k.pow(w, k.spec.q.isqrt() as u64 - 1);
    }
    gens.push(Mat::diag(k, &d));
    check_all(f, gens)
}

/// A subset of `elts` spanning the same additive group.
fn additive_basis(k: &FieldTable, elts: &[Elt]) -> Vec<Elt> {
    let mut span: std::collections::HashSet<Elt> = [0].into_iter().collect();
    let mut basis = Vec::new();
    for &x in elts {
        if span.contains(&x) {
            continue;
        }
        basis.push(x);
        let cur: Vec<Elt> = span.iter().copied().collect();
        for s in cur {
            let mut y = s;
            for _ in 1..k.p() {
                y = k.add(y, x);
                span.insert(y);
            }
        }
    }
    basis
}

/// The Eichler transformation `x -> x + (x,u) w - (x,w) u - Q(w) (x,u) u` for singular `u`
/// and `w` perpendicular to `u`.
pub fn eichler(f: &ClassicalForm, u: &[Elt], w: &[Elt]) -> Mat {
    let k = f.field();
    let qw = f.value(w);
    let rows: Vec<Vec<Elt>> = (0..f.dim)
        .map(|i| {
            let x = f.e(i);
            let xu = f.bilinear(&x, u);
            let xw = f.bilinear(&x, w);
            (0..f.dim)
                .map(|j| {
                    let mut y = x[j];
                    y = k.add(y, k.mul(xu, w[j]));
                    y = k.sub(y, k.mul(xw, u[j]));
                    k.sub(y, k.mul(k.mul(qw, xu), u[j]))
                })
                .collect()
        })
        .collect();
    Mat::from_rows(k, &rows)
}

/// Generators of `Omega(Q)`: Eichler transformations along singular basis vectors.
pub fn omega_gens(f: &ClassicalForm) -> Result<Vec<Mat>> {
    if f.kind != FormKind::Quadratic {
        return Err(Error::Param("not a quadratic form".into()));
    }
    let k = f.field();
    let singular: Vec<usize> = (0..f.dim).filter(|&i| f.value(&f.e(i)) == 0).collect();
    let mut gens = Vec::new();
    for &l in &prime_basis(k) {
        for &i in &singular {
            let u = f.e(i);
            for j in 0..f.dim {
                let b = f.e(j);
                if j == i || f.bilinear(&u, &b) != 0 {
                    continue;
                }
                let w: Vec<Elt> = b.iter().map(|&x| k.mul(x, l)).collect();
                let g = eichler(f, &u, &w);
                if !g.is_identity() && !gens.contains(&g) {
                    gens.push(g);
                }
            }
        }
    }
    check_all(f, gens)
}

/// `SO(Q)` for odd q: `Omega(Q)` and a Levi torus element of non-square spinor norm.
pub fn special_orthogonal_gens(f: &ClassicalForm) -> Result<Vec<Mat>> {
    let k = f.field();
    if k.p() == 2 {
        return Err(Error::Param("SO is only used for odd q".into()));
    }
    let mut gens = omega_gens(f)?;
    let m = f.dim / 2;
    let mut d = vec![1; f.dim];
    d[0] = k.primitive();
    d[m] = k.inv(k.primitive());
    gens.push(Mat::diag(k, &d));
    check_all(f, gens)
}

/// The full isometry group `O(Q)`: `Omega(Q)` and reflections in nonsingular vectors.
pub fn full_orthogonal_gens(f: &ClassicalForm) -> Result<Vec<Mat>> {
    let k = f.field();
    let mut gens = omega_gens(f)?;
    let m = f.dim / 2;
    let mut a = vec![0; f.dim];
    a[0] = 1;
    a[m] = 1;
    gens.push(reflection(f, &a)?);
    if k.p() != 2 {
        // a second reflection with the other square class of Q(a)
        let mut b = vec![0; f.dim];
        b[0] = 1;
        b[m] = k.primitive();
        gens.push(reflection(f, &b)?);
    }
    check_all(f, gens)
}

/// `x -> x - (x, a) Q(a)^-1 a`.
pub fn reflection(f: &ClassicalForm, a: &[Elt]) -> Result<Mat> {
    let k = f.field();
    let qa = f.value(a);
    if qa == 0 {
        return Err(Error::Param("reflection in a singular vector".into()));
    }
    let inv = k.inv(qa);
    let rows: Vec<Vec<Elt>> = (0..f.dim)
        .map(|i| {
            let x = f.e(i);
            let c = k.mul(f.bilinear(&x, a), inv);
            (0..f.dim).map(|j| k.sub(x[j], k.mul(c, a[j]))).collect()
        })
        .collect();
    Ok(Mat::from_rows(k, &rows))
}

/// Permutation group induced on a domain.
pub fn induced_group(domain: &dyn MatrixDomain, gens: &[Mat]) -> Result<PermGroup> {
    let perms: Result<Vec<_>> = gens.iter().map(|g| domain.perm_of(g)).collect();
    Ok(PermGroup::new(domain.len(), perms?))
}

/// Order of a matrix group, from its faithful action on nonzero vectors.
pub fn matrix_group_order(gens: &[Mat]) -> Result<u128> {
    let Some(g) = gens.first() else { return Ok(1) };
    let dom = GeometricDomain::new(&g.field, g.rows, None, DomainKind::NonzeroVectors)?;
    Ok(induced_group(&dom, gens)?.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::TypeSign;

    fn gf(q: u32) -> Arc<FieldTable> {
        FieldTable::of_order(q).unwrap()
    }

    fn order_of(gens: &[Mat]) -> u128 {
        matrix_group_order(gens).unwrap()
    }

    #[test]
    fn linear_orders() {
        assert_eq!(order_of(&sl_gens(&gf(2), 3)), 168);
        assert_eq!(order_of(&gl_gens(&gf(3), 2)), 48);
        assert_eq!(order_of(&sl_gens(&gf(4), 2)), 60);
    }

    #[test]
    fn symplectic_orders() {
        for (q, n, order) in [(2, 4, 720u128), (3, 4, 51840), (2, 6, 1451520), (4, 4, 979200)] {
            let f = ClassicalForm::standard(FormKind::Symplectic, n, &gf(q), TypeSign::NotApplicable).unwrap();
            assert_eq!(order_of(&symplectic_gens(&f).unwrap()), order, "Sp{n}({q})");
        }
    }

    #[test]
    fn unitary_orders() {
        for (q2, n, su, gu) in [(4, 4, 25920u128, 77760u128), (9, 3, 6048, 24192), (4, 3, 216, 648)] {
            let f = ClassicalForm::standard(FormKind::Hermitian, n, &gf(q2), TypeSign::NotApplicable).unwrap();
            assert_eq!(order_of(&special_unitary_gens(&f).unwrap()), su, "SU{n}({q2})");
            assert_eq!(order_of(&general_unitary_gens(&f).unwrap()), gu, "GU{n}({q2})");
        }
    }

    #[test]
    fn orthogonal_orders() {
        let cases = [
            (2, 4, TypeSign::Plus, 36u128),
            (2, 4, TypeSign::Minus, 60),
            (2, 6, TypeSign::Minus, 25920),
            (2, 8, TypeSign::Plus, 174182400),
            (3, 5, TypeSign::Odd, 25920),
            (4, 4, TypeSign::Minus, 4080),
        ];
        for (q, n, s, order) in cases {
            let f = ClassicalForm::standard(FormKind::Quadratic, n, &gf(q), s).unwrap();
            assert_eq!(order_of(&omega_gens(&f).unwrap()), order, "Omega{n}{s:?}({q})");
        }
        let f = ClassicalForm::standard(FormKind::Quadratic, 5, &gf(3), TypeSign::Odd).unwrap();
        assert_eq!(order_of(&special_orthogonal_gens(&f).unwrap()), 51840);
        let f = ClassicalForm::standard(FormKind::Quadratic, 4, &gf(2), TypeSign::Minus).unwrap();
        assert_eq!(order_of(&full_orthogonal_gens(&f).unwrap()), 120);
    }
}
