use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rows::{self, BitRows, ModRows, RatRows, RowSpace};
use super::scalar::{Ring, Scalar};
use crate::error::Error;

/// Dense matrix over a single coefficient ring.
///
/// Storage depends on the ring: bit-packed rows over `F_2`, `u32` residues
/// over other prime fields, big rationals over `Q` and big integers over `Z`.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    ring: Ring,
    data: Data,
}

#[derive(Clone, PartialEq)]
enum Data {
    Int { ncols: usize, rows: Vec<Vec<BigInt>> },
    Rat(RatRows),
    Mod(ModRows),
    F2(BitRows),
}

impl PartialEq for BitRows {
    fn eq(&self, other: &Self) -> bool {
        self.nrows == other.nrows && self.ncols == other.ncols && self.words == other.words
    }
}

impl PartialEq for ModRows {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.ncols == other.ncols && self.rows == other.rows
    }
}

impl PartialEq for RatRows {
    fn eq(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.rows == other.rows
    }
}

/// Runs a generic row routine on whichever field backend holds the matrix.
macro_rules! with_field_rows {
    ($m:expr, $r:ident => $body:expr) => {
        match &$m.data {
            Data::F2(x) => {
                let $r = x.clone();
                $body
            }
            Data::Mod(x) => {
                let $r = x.clone();
                $body
            }
            Data::Rat(x) => {
                let $r = x.clone();
                $body
            }
            Data::Int { .. } => {
                let $r = $m.to_rational().into_rat_rows();
                $body
            }
        }
    };
}

impl Matrix {
    pub fn zeros(ring: Ring, nrows: usize, ncols: usize) -> Self {
        let data = match ring {
            Ring::Integers => Data::Int {
                ncols,
                rows: vec![vec![BigInt::zero(); ncols]; nrows],
            },
            Ring::Rationals => Data::Rat(RatRows {
                ncols,
                rows: vec![vec![BigRational::zero(); ncols]; nrows],
            }),
            Ring::Prime(2) => Data::F2(BitRows::new(nrows, ncols)),
            Ring::Prime(p) => Data::Mod(ModRows {
                p,
                ncols,
                rows: vec![vec![0; ncols]; nrows],
            }),
        };
        Matrix { ring, data }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set_i64(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing into `ring`.
    pub fn from_i64_rows(ring: Ring, ncols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Matrix::zeros(ring, rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix row {i}");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set_i64(i, j, v);
                }
            }
        }
        m
    }

    pub fn from_fn(ring: Ring, nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Matrix::zeros(ring, nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                let v = f(i, j);
                if v != 0 {
                    m.set_i64(i, j, v);
                }
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nrows(&self) -> usize {
        match &self.data {
            Data::Int { rows, .. } => rows.len(),
            Data::Rat(r) => r.rows.len(),
            Data::Mod(r) => r.rows.len(),
            Data::F2(r) => r.nrows,
        }
    }

    pub fn ncols(&self) -> usize {
        match &self.data {
            Data::Int { ncols, .. } => *ncols,
            Data::Rat(r) => r.ncols,
            Data::Mod(r) => r.ncols,
            Data::F2(r) => r.ncols,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows(), self.ncols())
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match &self.data {
            Data::Int { rows, .. } => Scalar::Int(rows[i][j].clone()),
            Data::Rat(r) => Scalar::Rat(r.rows[i][j].clone()),
            Data::Mod(r) => Scalar::Mod {
                value: r.rows[i][j],
                p: r.p,
            },
            Data::F2(r) => Scalar::Mod {
                value: r.get(i, j) as u32,
                p: 2,
            },
        }
    }

    pub fn is_nonzero_at(&self, i: usize, j: usize) -> bool {
        match &self.data {
            Data::Int { rows, .. } => !rows[i][j].is_zero(),
            Data::Rat(r) => !r.rows[i][j].is_zero(),
            Data::Mod(r) => r.rows[i][j] != 0,
            Data::F2(r) => r.get(i, j),
        }
    }

    /// Sets an entry; panics if the scalar lives in another ring.
    pub fn set(&mut self, i: usize, j: usize, v: &Scalar) {
        assert_eq!(v.ring(), self.ring, "scalar ring differs from matrix ring");
        match (&mut self.data, v) {
            (Data::Int { rows, .. }, Scalar::Int(x)) => rows[i][j] = x.clone(),
            (Data::Rat(r), Scalar::Rat(x)) => r.rows[i][j] = x.clone(),
            (Data::Mod(r), Scalar::Mod { value, .. }) => r.rows[i][j] = *value,
            (Data::F2(r), Scalar::Mod { value, .. }) => r.put(i, j, *value == 1),
            _ => unreachable!(),
        }
    }

    pub fn set_i64(&mut self, i: usize, j: usize, v: i64) {
        match &mut self.data {
            Data::Int { rows, .. } => rows[i][j] = BigInt::from(v),
            Data::Rat(r) => r.rows[i][j] = rows::rat(v),
            Data::Mod(r) => r.rows[i][j] = v.rem_euclid(r.p as i64) as u32,
            Data::F2(r) => r.put(i, j, v.rem_euclid(2) == 1),
        }
    }

    /// Adds an integer to an entry.
    pub fn add_i64(&mut self, i: usize, j: usize, v: i64) {
        if v == 0 {
            return;
        }
        match &mut self.data {
            Data::Int { rows, .. } => rows[i][j] += v,
            Data::Rat(r) => r.rows[i][j] += rows::rat(v),
            Data::Mod(r) => {
                let p = r.p as i64;
                r.rows[i][j] = ((r.rows[i][j] as i64 + v).rem_euclid(p)) as u32;
            }
            Data::F2(r) => {
                if v.rem_euclid(2) == 1 {
                    let cur = r.get(i, j);
                    r.put(i, j, !cur);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Int { rows, .. } => rows.iter().flatten().all(Zero::is_zero),
            Data::Rat(r) => r.rows.iter().flatten().all(Zero::is_zero),
            Data::Mod(r) => r.rows.iter().flatten().all(|&x| x == 0),
            Data::F2(r) => r.words.iter().all(|&w| w == 0),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.ncols() && *self == Matrix::identity(self.ring, self.nrows())
    }

    /// Matrix product; panics on a shape or ring mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch in product");
        assert_eq!(self.ncols(), other.nrows(), "shape mismatch in product");
        let (n, m) = (self.nrows(), other.ncols());
        let mut out = Matrix::zeros(self.ring, n, m);
        match (&self.data, &other.data, &mut out.data) {
            (Data::F2(a), Data::F2(b), Data::F2(c)) => {
                for i in 0..n {
                    let arow = a.row(i);
                    for (w, &word) in arow.iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let k = w * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            let brow = &b.words[k * b.stride..(k + 1) * b.stride];
                            let crow = &mut c.words[i * c.stride..(i + 1) * c.stride];
                            for (x, y) in crow.iter_mut().zip(brow) {
                                *x ^= *y;
                            }
                        }
                    }
                }
            }
            (Data::Mod(a), Data::Mod(b), Data::Mod(c)) => {
                let p = a.p as u64;
                let mut acc = vec![0u64; m];
                for i in 0..n {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for (k, &aik) in a.rows[i].iter().enumerate() {
                        if aik == 0 {
                            continue;
                        }
                        let aik = aik as u64;
                        for (x, &bkj) in acc.iter_mut().zip(&b.rows[k]) {
                            *x += aik * bkj as u64;
                        }
                        if k % 1024 == 1023 {
                            acc.iter_mut().for_each(|x| *x %= p);
                        }
                    }
                    for (dst, x) in c.rows[i].iter_mut().zip(&acc) {
                        *dst = (x % p) as u32;
                    }
                }
            }
            (Data::Rat(a), Data::Rat(b), Data::Rat(c)) => {
                for i in 0..n {
                    for (k, aik) in a.rows[i].iter().enumerate() {
                        if aik.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            if !b.rows[k][j].is_zero() {
                                c.rows[i][j] += aik * &b.rows[k][j];
                            }
                        }
                    }
                }
            }
            (Data::Int { rows: a, .. }, Data::Int { rows: b, .. }, Data::Int { rows: c, .. }) => {
                for i in 0..n {
                    for (k, aik) in a[i].iter().enumerate() {
                        if aik.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            if !b[k][j].is_zero() {
                                c[i][j] += aik * &b[k][j];
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let mut out = self.clone();
        out.add_block(0, 0, other);
        out
    }

    /// Multiplies every entry by -1.
    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        match &mut out.data {
            Data::Int { rows, .. } => rows.iter_mut().flatten().for_each(|x| *x = -&*x),
            Data::Rat(r) => r.rows.iter_mut().flatten().for_each(|x| *x = -&*x),
            Data::Mod(r) => {
                let p = r.p;
                r.rows.iter_mut().flatten().for_each(|x| *x = (p - *x) % p);
            }
            Data::F2(_) => {}
        }
        out
    }

    pub fn signed(&self, negative: bool) -> Matrix {
        if negative {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Kronecker product `self ⊗ other`: entry `((i, k), (j, l))` is
    /// `self[i][j] * other[k][l]`, with row index `i * other.nrows() + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch in Kronecker product");
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let mut out = Matrix::zeros(self.ring, r1 * r2, c1 * c2);
        for i in 0..r1 {
            for j in 0..c1 {
                if !self.is_nonzero_at(i, j) {
                    continue;
                }
                let a = self.get(i, j);
                for k in 0..r2 {
                    for l in 0..c2 {
                        if other.is_nonzero_at(k, l) {
                            out.set(i * r2 + k, j * c2 + l, &a.mul(&other.get(k, l)));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let (n, m) = self.shape();
        let mut out = Matrix::zeros(self.ring, m, n);
        match (&self.data, &mut out.data) {
            (Data::F2(a), Data::F2(b)) => {
                for i in 0..n {
                    for j in 0..m {
                        if a.get(i, j) {
                            b.put(j, i, true);
                        }
                    }
                }
            }
            _ => {
                for i in 0..n {
                    for j in 0..m {
                        if self.is_nonzero_at(i, j) {
                            out.set(j, i, &self.get(i, j));
                        }
                    }
                }
            }
        }
        out
    }

    /// Adds `block` into the entries starting at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert_eq!(self.ring, block.ring, "ring mismatch in block");
        assert!(r0 + block.nrows() <= self.nrows() && c0 + block.ncols() <= self.ncols());
        match (&mut self.data, &block.data) {
            (Data::F2(a), Data::F2(b)) => {
                for i in 0..b.nrows {
                    let brow = b.row(i);
                    for (w, &word) in brow.iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let j = w * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            let cur = a.get(r0 + i, c0 + j);
                            a.put(r0 + i, c0 + j, !cur);
                        }
                    }
                }
            }
            (Data::Mod(a), Data::Mod(b)) => {
                let p = a.p;
                for (i, row) in b.rows.iter().enumerate() {
                    for (j, &v) in row.iter().enumerate() {
                        if v != 0 {
                            let x = &mut a.rows[r0 + i][c0 + j];
                            *x = (*x + v) % p;
                        }
                    }
                }
            }
            (Data::Rat(a), Data::Rat(b)) => {
                for (i, row) in b.rows.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        if !v.is_zero() {
                            a.rows[r0 + i][c0 + j] += v;
                        }
                    }
                }
            }
            (Data::Int { rows: a, .. }, Data::Int { rows: b, .. }) => {
                for (i, row) in b.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        if !v.is_zero() {
                            a[r0 + i][c0 + j] += v;
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring, idx.len(), self.ncols());
        match (&self.data, &mut out.data) {
            (Data::F2(a), Data::F2(b)) => {
                for (i, &r) in idx.iter().enumerate() {
                    b.words[i * b.stride..(i + 1) * b.stride].copy_from_slice(a.row(r));
                }
            }
            (Data::Mod(a), Data::Mod(b)) => {
                for (i, &r) in idx.iter().enumerate() {
                    b.rows[i] = a.rows[r].clone();
                }
            }
            (Data::Rat(a), Data::Rat(b)) => {
                for (i, &r) in idx.iter().enumerate() {
                    b.rows[i] = a.rows[r].clone();
                }
            }
            (Data::Int { rows: a, .. }, Data::Int { rows: b, .. }) => {
                for (i, &r) in idx.iter().enumerate() {
                    b[i] = a[r].clone();
                }
            }
            _ => unreachable!(),
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let n = self.nrows();
        let mut out = Matrix::zeros(self.ring, n, idx.len());
        for i in 0..n {
            for (j, &c) in idx.iter().enumerate() {
                if self.is_nonzero_at(i, c) {
                    out.set(i, j, &self.get(i, c));
                }
            }
        }
        out
    }

    pub fn row_range(&self, start: usize, len: usize) -> Matrix {
        let idx: Vec<usize> = (start..start + len).collect();
        self.select_rows(&idx)
    }

    pub fn col_range(&self, start: usize, len: usize) -> Matrix {
        let idx: Vec<usize> = (start..start + len).collect();
        self.select_cols(&idx)
    }

    /// Horizontal concatenation; all parts need `nrows` rows.
    pub fn hstack(ring: Ring, nrows: usize, parts: &[&Matrix]) -> Matrix {
        let ncols = parts.iter().map(|m| m.ncols()).sum();
        let mut out = Matrix::zeros(ring, nrows, ncols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.nrows(), nrows, "row count mismatch in hstack");
            out.add_block(0, c0, m);
            c0 += m.ncols();
        }
        out
    }

    /// Vertical concatenation; all parts need `ncols` columns.
    pub fn vstack(ring: Ring, ncols: usize, parts: &[&Matrix]) -> Matrix {
        let nrows = parts.iter().map(|m| m.nrows()).sum();
        let mut out = Matrix::zeros(ring, nrows, ncols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.ncols(), ncols, "column count mismatch in vstack");
            out.add_block(r0, 0, m);
            r0 += m.nrows();
        }
        out
    }

    /// The same entries viewed over `Q` (integer matrices only).
    pub fn to_rational(&self) -> Matrix {
        match &self.data {
            Data::Int { ncols, rows } => Matrix {
                ring: Ring::Rationals,
                data: Data::Rat(RatRows {
                    ncols: *ncols,
                    rows: rows
                        .iter()
                        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
                        .collect(),
                }),
            },
            _ => self.clone(),
        }
    }

    /// Reduces an integer matrix into another ring.
    pub fn change_ring(&self, ring: Ring) -> Result<Matrix, Error> {
        if ring == self.ring {
            return Ok(self.clone());
        }
        let (n, m) = self.shape();
        let mut out = Matrix::zeros(ring, n, m);
        for i in 0..n {
            for j in 0..m {
                if self.is_nonzero_at(i, j) {
                    let v = self.get(i, j).to_i64().ok_or_else(|| {
                        Error::TypeMismatch(format!("entry ({i},{j}) is not an integer"))
                    })?;
                    out.set_i64(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn into_rat_rows(self) -> RatRows {
        match self.data {
            Data::Rat(r) => r,
            _ => unreachable!(),
        }
    }

    pub(crate) fn int_rows(&self) -> Option<&Vec<Vec<BigInt>>> {
        match &self.data {
            Data::Int { rows, .. } => Some(rows),
            _ => None,
        }
    }

    pub(crate) fn from_int_rows(ncols: usize, rows: Vec<Vec<BigInt>>) -> Matrix {
        Matrix {
            ring: Ring::Integers,
            data: Data::Int { ncols, rows },
        }
    }

    fn from_field_rows<R: IntoMatrix>(ring: Ring, r: R) -> Matrix {
        r.into_matrix(ring)
    }

    /// Rank over the fraction field (over `Q` for integer matrices).
    pub fn rank(&self) -> usize {
        with_field_rows!(self, r => rows::rank(r))
    }

    /// Columns form a basis of `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Result<Matrix, Error> {
        self.ring.require_field()?;
        let ring = self.ring;
        Ok(with_field_rows!(self, r => Matrix::from_field_rows(ring, rows::kernel(r))))
    }

    /// Columns form a basis of the column span.
    pub fn column_space_basis(&self) -> Result<Matrix, Error> {
        self.ring.require_field()?;
        let t = self.transpose();
        let ring = self.ring;
        let reduced = with_field_rows!(t, r => {
            let mut r = r;
            let k = rows::echelon(&mut r, true).len();
            let mut kept = r.zeroed(0, r.ncols());
            for i in 0..k {
                kept.push_row_from(&r, i);
            }
            Matrix::from_field_rows(ring, kept)
        });
        Ok(reduced.transpose())
    }

    /// Solves `self * X = targets` for a matrix `self` with independent
    /// columns. Returns `None` if some target column is outside the span.
    pub fn solve_independent(&self, targets: &Matrix) -> Result<Option<Matrix>, Error> {
        self.ring.require_field()?;
        assert_eq!(self.nrows(), targets.nrows());
        let k = self.ncols();
        let aug = Matrix::hstack(self.ring, self.nrows(), &[self, targets]);
        let ring = self.ring;
        let res = with_field_rows!(aug, r => rows::solve(r, k)
            .map(|x| x.map(|x| Matrix::from_field_rows(ring, x))));
        match res {
            None => Ok(None),
            Some(Ok(x)) => Ok(Some(x)),
            Some(Err(())) => Err(Error::Invalid("basis columns are dependent".into())),
        }
    }

    /// Pairs produced by reducing the rows left to right by their last
    /// nonzero entry (see [`rows::low_pairs`]).
    pub(crate) fn low_pairs(&self) -> Vec<(usize, usize)> {
        with_field_rows!(self, r => rows::low_pairs(r))
    }

    /// Entries as strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    /// Entries as integers; `None` if some entry is a non-integral rational.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }

    /// Determinant of a square integer matrix.
    pub fn int_determinant(&self) -> Option<BigInt> {
        let rows = self.int_rows()?;
        let n = rows.len();
        if n != self.ncols() {
            return None;
        }
        // Bareiss fraction-free elimination.
        let mut a = rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(s) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return Some(BigInt::one());
        }
        Some(sign * &a[n - 1][n - 1])
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        match &self.data {
            Data::F2(r) => r.words.iter().map(|w| w.count_ones() as usize).sum(),
            Data::Mod(r) => r.rows.iter().flatten().filter(|&&x| x != 0).count(),
            Data::Rat(r) => r.rows.iter().flatten().filter(|x| !x.is_zero()).count(),
            Data::Int { rows, .. } => rows.iter().flatten().filter(|x| !x.is_zero()).count(),
        }
    }

    /// Largest absolute value of an integer entry.
    pub fn max_abs_int(&self) -> Option<BigInt> {
        self.int_rows()
            .map(|rows| rows.iter().flatten().map(|x| x.abs()).max().unwrap_or_default())
    }
}

pub(crate) trait IntoMatrix {
    fn into_matrix(self, ring: Ring) -> Matrix;
}

impl IntoMatrix for BitRows {
    fn into_matrix(self, ring: Ring) -> Matrix {
        Matrix {
            ring,
            data: Data::F2(self),
        }
    }
}

impl IntoMatrix for ModRows {
    fn into_matrix(self, ring: Ring) -> Matrix {
        Matrix {
            ring,
            data: Data::Mod(self),
        }
    }
}

impl IntoMatrix for RatRows {
    fn into_matrix(self, ring: Ring) -> Matrix {
        Matrix {
            ring,
            data: Data::Rat(self),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over {} ({}x{})", self.ring, self.nrows(), self.ncols())?;
        for row in self.to_strings() {
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
