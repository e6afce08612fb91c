//! Row-reduction kernels shared by all field backends.
//!
//! Every field matrix is converted into one of three row stores (bit-packed
//! rows over `F_2`, `u32` residues over `F_p`, big rationals over `Q`) and the
//! generic routines below run on the [`RowSpace`] trait.

use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) trait RowSpace: Sized {
    type Elem: Clone;

    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn zeroed(&self, nrows: usize, ncols: usize) -> Self;
    fn nonzero(&self, r: usize, c: usize) -> bool;
    fn entry(&self, r: usize, c: usize) -> Self::Elem;
    fn set(&mut self, r: usize, c: usize, v: Self::Elem);
    fn one(&self) -> Self::Elem;
    fn neg(&self, v: &Self::Elem) -> Self::Elem;
    fn swap_rows(&mut self, a: usize, b: usize);
    /// Scales row `r` so that its entry in column `c` becomes one.
    fn make_monic(&mut self, r: usize, c: usize);
    /// `row[t] -= row[t][c] * row[s]` over the columns in `span`; row `s` must
    /// have a one in column `c` and vanish outside `span`.
    fn clear_with(&mut self, t: usize, s: usize, c: usize, span: Range<usize>);
    fn last_nonzero(&self, r: usize) -> Option<usize>;
    fn push_row_from(&mut self, other: &Self, r: usize);
}

/// Gaussian elimination in place. Returns the pivot columns in row order.
pub(crate) fn echelon<R: RowSpace>(m: &mut R, reduced: bool) -> Vec<usize> {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..nc {
        if row == nr {
            break;
        }
        let Some(found) = (row..nr).find(|&r| m.nonzero(r, col)) else {
            continue;
        };
        m.swap_rows(row, found);
        m.make_monic(row, col);
        for r in (row + 1)..nr {
            if m.nonzero(r, col) {
                m.clear_with(r, row, col, col..nc);
            }
        }
        pivots.push(col);
        row += 1;
    }
    if reduced {
        for (prow, &pcol) in pivots.iter().enumerate().rev() {
            for r in 0..prow {
                if m.nonzero(r, pcol) {
                    m.clear_with(r, prow, pcol, pcol..nc);
                }
            }
        }
    }
    pivots
}

pub(crate) fn rank<R: RowSpace>(mut m: R) -> usize {
    echelon(&mut m, false).len()
}

/// Basis of the right kernel `{x : A x = 0}`, one vector per column.
pub(crate) fn kernel<R: RowSpace>(mut m: R) -> R {
    let nc = m.ncols();
    let pivots = echelon(&mut m, true);
    let mut is_pivot = vec![false; nc];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..nc).filter(|&c| !is_pivot[c]).collect();
    let mut out = m.zeroed(nc, free.len());
    let one = m.one();
    for (j, &f) in free.iter().enumerate() {
        out.set(f, j, one.clone());
        for (prow, &pcol) in pivots.iter().enumerate() {
            if m.nonzero(prow, f) {
                let v = m.neg(&m.entry(prow, f));
                out.set(pcol, j, v);
            }
        }
    }
    out
}

/// Solves `B X = T` where `aug = [B | T]` and `B` has `k` columns. Returns
/// `None` when some column of `T` is outside the column span of `B`, and
/// requires the columns of `B` to be independent.
pub(crate) fn solve<R: RowSpace>(mut aug: R, k: usize) -> Option<Result<R, ()>> {
    let nc = aug.ncols();
    let pivots = echelon(&mut aug, true);
    if pivots.iter().any(|&c| c >= k) {
        return None;
    }
    if pivots.len() != k {
        return Some(Err(()));
    }
    let t = nc - k;
    let mut out = aug.zeroed(k, t);
    for (prow, &pcol) in pivots.iter().enumerate() {
        for c in 0..t {
            if aug.nonzero(prow, k + c) {
                out.set(pcol, c, aug.entry(prow, k + c));
            }
        }
    }
    Some(Ok(out))
}

/// Left-to-right reduction of the rows of `m` by their last nonzero entry.
/// Adds only earlier rows to later ones, so every rank of a "first `a` rows,
/// last `b` columns" corner is preserved and equals the number of returned
/// pairs `(row, low column)` inside that corner.
pub(crate) fn low_pairs<R: RowSpace>(mut m: R) -> Vec<(usize, usize)> {
    let nc = m.ncols();
    let mut owner: Vec<Option<usize>> = vec![None; nc];
    let mut pairs = Vec::new();
    for r in 0..m.nrows() {
        while let Some(low) = m.last_nonzero(r) {
            match owner[low] {
                Some(s) => m.clear_with(r, s, low, 0..low + 1),
                None => {
                    m.make_monic(r, low);
                    owner[low] = Some(r);
                    pairs.push((r, low));
                    break;
                }
            }
        }
    }
    pairs
}

// ---------------------------------------------------------------- F_2 rows

#[derive(Clone, Debug)]
pub(crate) struct BitRows {
    pub nrows: usize,
    pub ncols: usize,
    pub stride: usize,
    pub words: Vec<u64>,
}

impl BitRows {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        let stride = ncols.div_ceil(64);
        BitRows {
            nrows,
            ncols,
            stride,
            words: vec![0; nrows * stride],
        }
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.words[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn put(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.words[r * self.stride + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn xor_rows(&mut self, t: usize, s: usize, words: Range<usize>) {
        let st = self.stride;
        if t == s {
            return;
        }
        let (dst, src) = if t < s {
            let (a, b) = self.words.split_at_mut(s * st);
            (&mut a[t * st..(t + 1) * st], &b[..st])
        } else {
            let (a, b) = self.words.split_at_mut(t * st);
            (&mut b[..st], &a[s * st..(s + 1) * st])
        };
        for w in words {
            dst[w] ^= src[w];
        }
    }
}

impl RowSpace for BitRows {
    type Elem = bool;

    fn nrows(&self) -> usize {
        self.nrows
    }
    fn ncols(&self) -> usize {
        self.ncols
    }
    fn zeroed(&self, nrows: usize, ncols: usize) -> Self {
        BitRows::new(nrows, ncols)
    }
    fn nonzero(&self, r: usize, c: usize) -> bool {
        self.get(r, c)
    }
    fn entry(&self, r: usize, c: usize) -> bool {
        self.get(r, c)
    }
    fn set(&mut self, r: usize, c: usize, v: bool) {
        self.put(r, c, v)
    }
    fn one(&self) -> bool {
        true
    }
    fn neg(&self, v: &bool) -> bool {
        *v
    }
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.words.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }
    fn make_monic(&mut self, _r: usize, _c: usize) {}
    fn clear_with(&mut self, t: usize, s: usize, c: usize, span: Range<usize>) {
        if self.get(t, c) {
            let words = span.start / 64..span.end.div_ceil(64).min(self.stride);
            self.xor_rows(t, s, words);
        }
    }
    fn last_nonzero(&self, r: usize) -> Option<usize> {
        let row = self.row(r);
        (0..self.stride)
            .rev()
            .find(|&w| row[w] != 0)
            .map(|w| w * 64 + 63 - row[w].leading_zeros() as usize)
    }
    fn push_row_from(&mut self, other: &Self, r: usize) {
        self.words.extend_from_slice(other.row(r));
        self.nrows += 1;
    }
}

// ---------------------------------------------------------------- F_p rows

#[derive(Clone, Debug)]
pub(crate) struct ModRows {
    pub p: u32,
    pub ncols: usize,
    pub rows: Vec<Vec<u32>>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

impl RowSpace for ModRows {
    type Elem = u32;

    fn nrows(&self) -> usize {
        self.rows.len()
    }
    fn ncols(&self) -> usize {
        self.ncols
    }
    fn zeroed(&self, nrows: usize, ncols: usize) -> Self {
        ModRows {
            p: self.p,
            ncols,
            rows: vec![vec![0; ncols]; nrows],
        }
    }
    fn nonzero(&self, r: usize, c: usize) -> bool {
        self.rows[r][c] != 0
    }
    fn entry(&self, r: usize, c: usize) -> u32 {
        self.rows[r][c]
    }
    fn set(&mut self, r: usize, c: usize, v: u32) {
        self.rows[r][c] = v;
    }
    fn one(&self) -> u32 {
        1
    }
    fn neg(&self, v: &u32) -> u32 {
        (self.p - v) % self.p
    }
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }
    fn make_monic(&mut self, r: usize, c: usize) {
        let v = self.rows[r][c];
        if v != 1 {
            let inv = inv_mod(v, self.p) as u64;
            let p = self.p as u64;
            for x in self.rows[r].iter_mut() {
                *x = (*x as u64 * inv % p) as u32;
            }
        }
    }
    fn clear_with(&mut self, t: usize, s: usize, c: usize, span: Range<usize>) {
        let f = self.rows[t][c];
        if f == 0 || t == s {
            return;
        }
        let p = self.p as u64;
        let m = (p - f as u64) % p;
        let (dst, src) = if t < s {
            let (a, b) = self.rows.split_at_mut(s);
            (&mut a[t], &b[0])
        } else {
            let (a, b) = self.rows.split_at_mut(t);
            (&mut b[0], &a[s])
        };
        for k in span {
            if src[k] != 0 {
                dst[k] = ((dst[k] as u64 + m * src[k] as u64) % p) as u32;
            }
        }
    }
    fn last_nonzero(&self, r: usize) -> Option<usize> {
        self.rows[r].iter().rposition(|&x| x != 0)
    }
    fn push_row_from(&mut self, other: &Self, r: usize) {
        self.rows.push(other.rows[r].clone());
    }
}

// ---------------------------------------------------------------- Q rows

#[derive(Clone, Debug)]
pub(crate) struct RatRows {
    pub ncols: usize,
    pub rows: Vec<Vec<BigRational>>,
}

impl RowSpace for RatRows {
    type Elem = BigRational;

    fn nrows(&self) -> usize {
        self.rows.len()
    }
    fn ncols(&self) -> usize {
        self.ncols
    }
    fn zeroed(&self, nrows: usize, ncols: usize) -> Self {
        RatRows {
            ncols,
            rows: vec![vec![BigRational::zero(); ncols]; nrows],
        }
    }
    fn nonzero(&self, r: usize, c: usize) -> bool {
        !self.rows[r][c].is_zero()
    }
    fn entry(&self, r: usize, c: usize) -> BigRational {
        self.rows[r][c].clone()
    }
    fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.rows[r][c] = v;
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn neg(&self, v: &BigRational) -> BigRational {
        -v.clone()
    }
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }
    fn make_monic(&mut self, r: usize, c: usize) {
        let v = self.rows[r][c].clone();
        if !v.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x / &v;
                }
            }
        }
    }
    fn clear_with(&mut self, t: usize, s: usize, c: usize, span: Range<usize>) {
        let f = self.rows[t][c].clone();
        if f.is_zero() || t == s {
            return;
        }
        let (dst, src) = if t < s {
            let (a, b) = self.rows.split_at_mut(s);
            (&mut a[t], &b[0])
        } else {
            let (a, b) = self.rows.split_at_mut(t);
            (&mut b[0], &a[s])
        };
        for k in span {
            if !src[k].is_zero() {
                dst[k] = &dst[k] - &f * &src[k];
            }
        }
    }
    fn last_nonzero(&self, r: usize) -> Option<usize> {
        self.rows[r].iter().rposition(|x| !x.is_zero())
    }
    fn push_row_from(&mut self, other: &Self, r: usize) {
        self.rows.push(other.rows[r].clone());
    }
}

pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
