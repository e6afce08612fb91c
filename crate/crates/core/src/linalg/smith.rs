//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::scalar::Ring;
use crate::error::Error;

/// `U * A * V = diag(divisors)` padded with zeros, with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm {
    /// Nonzero elementary divisors, each dividing the next.
    pub divisors: Vec<BigInt>,
    pub left: Matrix,
    pub right: Matrix,
}

pub fn smith_normal_form(a: &Matrix) -> Result<SmithForm, Error> {
    let rows = a
        .int_rows()
        .ok_or_else(|| Error::TypeMismatch("Smith normal form needs an integer matrix".into()))?;
    let (divisors, u, v) = reduce(rows.clone(), a.ncols(), true);
    let (u, v) = (u.unwrap(), v.unwrap());
    let (m, n) = (a.nrows(), a.ncols());
    Ok(SmithForm {
        divisors,
        left: Matrix::from_int_rows(m, u),
        right: Matrix::from_int_rows(n, v),
    })
}

/// Nonzero elementary divisors only, without transforms.
pub fn elementary_divisors(a: &Matrix) -> Result<Vec<BigInt>, Error> {
    let rows = a
        .int_rows()
        .ok_or_else(|| Error::TypeMismatch("elementary divisors need an integer matrix".into()))?;
    Ok(reduce(rows.clone(), a.ncols(), false).0)
}

type Transforms = (Vec<BigInt>, Option<Vec<Vec<BigInt>>>, Option<Vec<Vec<BigInt>>>);

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

// Row and column operations mirrored into U (rows) and V (columns).
struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row[t] -= q * row[s]
    fn row_axpy(&mut self, t: usize, s: usize, q: &BigInt) {
        fn apply(m: &mut [Vec<BigInt>], t: usize, s: usize, q: &BigInt) {
            let src = m[s].clone();
            for (x, y) in m[t].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
        apply(&mut self.a, t, s, q);
        if let Some(u) = &mut self.u {
            apply(u, t, s, q);
        }
    }

    /// col[t] -= q * col[s]
    fn col_axpy(&mut self, t: usize, s: usize, q: &BigInt) {
        fn apply(m: &mut [Vec<BigInt>], t: usize, s: usize, q: &BigInt) {
            for row in m.iter_mut() {
                if !row[s].is_zero() {
                    let d = q * &row[s];
                    row[t] -= d;
                }
            }
        }
        apply(&mut self.a, t, s, q);
        if let Some(v) = &mut self.v {
            apply(v, t, s, q);
        }
    }

    /// Replaces rows `t`, `i` by a unimodular combination that puts
    /// `gcd(a[t][c], a[i][c])` at `(t, c)` and zero at `(i, c)`.
    fn row_bezout(&mut self, t: usize, i: usize, c: usize) {
        let (x, y) = (self.a[t][c].clone(), self.a[i][c].clone());
        if y.is_multiple_of(&x) {
            let q = &y / &x;
            self.row_axpy(i, t, &q);
            return;
        }
        let e = x.extended_gcd(&y);
        let (g, s, r) = (e.gcd, e.x, e.y);
        let (xg, yg) = (&x / &g, &y / &g);
        let combine = |m: &mut [Vec<BigInt>]| {
            let (rt, ri) = (m[t].clone(), m[i].clone());
            for k in 0..rt.len() {
                m[t][k] = &s * &rt[k] + &r * &ri[k];
                m[i][k] = &xg * &ri[k] - &yg * &rt[k];
            }
        };
        combine(&mut self.a);
        if let Some(u) = &mut self.u {
            combine(u);
        }
    }

    /// Column analogue of [`Work::row_bezout`].
    fn col_bezout(&mut self, t: usize, j: usize, r0: usize) {
        let (x, y) = (self.a[r0][t].clone(), self.a[r0][j].clone());
        if y.is_multiple_of(&x) {
            let q = &y / &x;
            self.col_axpy(j, t, &q);
            return;
        }
        let e = x.extended_gcd(&y);
        let (g, s, r) = (e.gcd, e.x, e.y);
        let (xg, yg) = (&x / &g, &y / &g);
        let combine = |m: &mut [Vec<BigInt>]| {
            for row in m.iter_mut() {
                let (ct, cj) = (row[t].clone(), row[j].clone());
                row[t] = &s * &ct + &r * &cj;
                row[j] = &xg * &cj - &yg * &ct;
            }
        };
        combine(&mut self.a);
        if let Some(v) = &mut self.v {
            combine(v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
}

fn reduce(a: Vec<Vec<BigInt>>, ncols: usize, track: bool) -> Transforms {
    let m = a.len();
    let n = ncols;
    let mut w = Work {
        a,
        u: track.then(|| identity(m)),
        v: track.then(|| identity(n)),
    };
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // Pivot of smallest absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !w.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    w.row_bezout(t, i, t);
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    w.col_bezout(t, j, t);
                }
            }
            if (t + 1..m).any(|i| !w.a[i][t].is_zero()) {
                continue;
            }
            // Pivot row and column are clear; enforce divisibility.
            let pivot = w.a[t][t].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match offender {
                // row[t] += row[i]
                Some(i) => w.row_axpy(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        divisors.push(w.a[t][t].clone());
        t += 1;
    }
    (divisors, w.u, w.v)
}

/// Checks `U A V = diag(d)` and the divisibility chain; used by tests and
/// the verification suite.
pub fn check_smith_form(a: &Matrix, form: &SmithForm) -> bool {
    let prod = form.left.mul(a).mul(&form.right);
    let mut expect = Matrix::zeros(Ring::Integers, a.nrows(), a.ncols());
    for (k, d) in form.divisors.iter().enumerate() {
        expect.set(k, k, &crate::linalg::Scalar::Int(d.clone()));
    }
    let chain = form
        .divisors
        .windows(2)
        .all(|w| w[1].is_multiple_of(&w[0]));
    let positive = form.divisors.iter().all(|d| d.is_positive());
    let unit = |m: &Matrix| {
        m.int_determinant()
            .is_some_and(|d| d.abs().is_one())
    };
    prod == expect && chain && positive && unit(&form.left) && unit(&form.right)
}
