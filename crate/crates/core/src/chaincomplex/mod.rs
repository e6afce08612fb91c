//! Cochain complexes, first-quadrant double complexes and the spectral
//! sequence of the column filtration.

mod spectral;

use crate::error::{Error, Result};
use crate::linalg::{FgAbelianGroup, Matrix, Ring};

pub use spectral::{spectral_sequence, spectral_sequence_explicit, SpectralPages};

/// A bounded cochain complex `C^s -> C^{s+1} -> ... -> C^e`, zero outside.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex {
    ring: Ring,
    start: i64,
    dims: Vec<usize>,
    /// `differentials[k]` maps degree `start + k` to `start + k + 1`.
    differentials: Vec<Matrix>,
}

impl CochainComplex {
    /// Checks shapes, rings and `d^{n+1} d^n = 0`.
    pub fn new(ring: Ring, start: i64, dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        let c = Self::new_unchecked(ring, start, dims, differentials)?;
        for (k, pair) in c.differentials.windows(2).enumerate() {
            if !pair[1].mul(&pair[0]).is_zero() {
                return Err(Error::NotAComplex {
                    degree: start + k as i64 + 1,
                });
            }
        }
        Ok(c)
    }

    /// Shape checks only. For complexes that are complexes by construction.
    pub(crate) fn new_unchecked(
        ring: Ring,
        start: i64,
        dims: Vec<usize>,
        differentials: Vec<Matrix>,
    ) -> Result<Self> {
        if differentials.len() + 1 != dims.len().max(1) {
            return Err(Error::TypeMismatch(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::TypeMismatch(format!(
                    "differential in degree {} is over {}, expected {ring}",
                    start + k as i64,
                    d.ring()
                )));
            }
            if d.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::TypeMismatch(format!(
                    "differential in degree {} has shape {:?}, expected {:?}",
                    start + k as i64,
                    d.shape(),
                    (dims[k + 1], dims[k])
                )));
            }
        }
        Ok(CochainComplex {
            ring,
            start,
            dims,
            differentials,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last degree (inclusive); `start - 1` for the empty complex.
    pub fn end(&self) -> i64 {
        self.start + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension (rank) in degree `n`, zero outside the range.
    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.dims[k])
    }

    /// `d^n: C^n -> C^{n+1}`, a zero matrix outside the stored range.
    pub fn differential(&self, n: i64) -> Matrix {
        match self.index(n) {
            Some(k) if k < self.differentials.len() => self.differentials[k].clone(),
            _ => Matrix::zeros(self.ring, self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    fn index(&self, n: i64) -> Option<usize> {
        let k = n - self.start;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    /// Drops every degree above `n`.
    pub fn truncate_above(&self, n: i64) -> CochainComplex {
        let keep = (n - self.start + 1).clamp(0, self.dims.len() as i64) as usize;
        CochainComplex {
            ring: self.ring,
            start: self.start,
            dims: self.dims[..keep].to_vec(),
            differentials: self.differentials[..keep.saturating_sub(1)].to_vec(),
        }
    }
}

/// `H^n` for every stored degree `n`, in order.
pub fn complex_cohomology(c: &CochainComplex) -> Result<Vec<FgAbelianGroup>> {
    let degrees = c.start()..=c.end();
    if c.ring().is_field() {
        let ranks: Vec<usize> = c.differentials.iter().map(Matrix::rank).collect();
        return Ok(degrees
            .map(|n| {
                let k = (n - c.start) as usize;
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                FgAbelianGroup::free(c.dims[k] - out - inc)
            })
            .collect());
    }
    degrees
        .map(|n| crate::linalg::cohomology_unchecked(&c.differential(n - 1), &c.differential(n)))
        .collect()
}

/// Bounded first-quadrant double complex with commuting squares.
///
/// Cells are indexed `(p, q)` with `0 <= p <= pmax`, `0 <= q <= qmax`.
/// `d_h[p][q]: C^{p,q} -> C^{p+1,q}` exists for `p < pmax`, and
/// `d_v[p][q]: C^{p,q} -> C^{p,q+1}` for `q < qmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleComplex {
    ring: Ring,
    dims: Vec<Vec<usize>>,
    d_h: Vec<Vec<Matrix>>,
    d_v: Vec<Vec<Matrix>>,
}

impl DoubleComplex {
    /// Validates shapes, `d_h d_h = 0`, `d_v d_v = 0` and `d_v d_h = d_h d_v`.
    pub fn new(
        ring: Ring,
        dims: Vec<Vec<usize>>,
        d_h: Vec<Vec<Matrix>>,
        d_v: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        let d = Self::new_unchecked(ring, dims, d_h, d_v)?;
        let (pmax, qmax) = (d.pmax(), d.qmax());
        for p in 0..=pmax {
            for q in 0..=qmax {
                let deg = (p + q) as i64;
                if p + 1 < pmax && !d.d_h[p + 1][q].mul(&d.d_h[p][q]).is_zero() {
                    return Err(Error::NotAComplex { degree: deg });
                }
                if q + 1 < qmax && !d.d_v[p][q + 1].mul(&d.d_v[p][q]).is_zero() {
                    return Err(Error::NotAComplex { degree: deg });
                }
                if p < pmax && q < qmax {
                    let vh = d.d_v[p + 1][q].mul(&d.d_h[p][q]);
                    let hv = d.d_h[p][q + 1].mul(&d.d_v[p][q]);
                    if vh != hv {
                        return Err(Error::Invalid(format!("square at ({p}, {q}) does not commute")));
                    }
                }
            }
        }
        Ok(d)
    }

    pub(crate) fn new_unchecked(
        ring: Ring,
        dims: Vec<Vec<usize>>,
        d_h: Vec<Vec<Matrix>>,
        d_v: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        let cols = dims.len();
        let rows = dims.first().map_or(0, Vec::len);
        if cols == 0 || rows == 0 || dims.iter().any(|c| c.len() != rows) {
            return Err(Error::NotBounded("dimension grid must be a nonempty rectangle".into()));
        }
        let (pmax, qmax) = (cols - 1, rows - 1);
        let shape_err = |what: &str, p: usize, q: usize| {
            Error::TypeMismatch(format!("{what} at ({p}, {q}) has the wrong shape or ring"))
        };
        if d_h.len() != pmax || d_h.iter().any(|c| c.len() != rows) {
            return Err(Error::TypeMismatch(format!("need {pmax} x {rows} horizontal maps")));
        }
        if d_v.len() != cols || d_v.iter().any(|c| c.len() != qmax) {
            return Err(Error::TypeMismatch(format!("need {cols} x {qmax} vertical maps")));
        }
        for p in 0..=pmax {
            for q in 0..=qmax {
                if p < pmax {
                    let m = &d_h[p][q];
                    if m.ring() != ring || m.shape() != (dims[p + 1][q], dims[p][q]) {
                        return Err(shape_err("d_h", p, q));
                    }
                }
                if q < qmax {
                    let m = &d_v[p][q];
                    if m.ring() != ring || m.shape() != (dims[p][q + 1], dims[p][q]) {
                        return Err(shape_err("d_v", p, q));
                    }
                }
            }
        }
        Ok(DoubleComplex { ring, dims, d_h, d_v })
    }

    /// All differentials zero.
    pub fn zero(ring: Ring, dims: Vec<Vec<usize>>) -> Result<Self> {
        let cols = dims.len();
        let rows = dims.first().map_or(0, Vec::len);
        if dims.iter().any(|c| c.len() != rows) {
            return Err(Error::NotBounded("dimension grid must be a nonempty rectangle".into()));
        }
        let d_h = (0..cols.saturating_sub(1))
            .map(|p| (0..rows).map(|q| Matrix::zeros(ring, dims[p + 1][q], dims[p][q])).collect())
            .collect();
        let d_v = (0..cols)
            .map(|p| {
                (0..rows.saturating_sub(1))
                    .map(|q| Matrix::zeros(ring, dims[p][q + 1], dims[p][q]))
                    .collect()
            })
            .collect();
        Self::new_unchecked(ring, dims, d_h, d_v)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn pmax(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn qmax(&self) -> usize {
        self.dims[0].len() - 1
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    pub fn d_h(&self, p: usize, q: usize) -> &Matrix {
        &self.d_h[p][q]
    }

    pub fn d_v(&self, p: usize, q: usize) -> &Matrix {
        &self.d_v[p][q]
    }

    /// Cells `(p, q)` with `p + q = n`, in increasing `p`, paired with their
    /// offsets inside `Tot^n`.
    pub fn layout(&self, n: usize) -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for p in 0..=self.pmax().min(n) {
            let q = n - p;
            if q <= self.qmax() {
                out.push((p, off, self.dims[p][q]));
                off += self.dims[p][q];
            }
        }
        out
    }

    pub fn total_dim(&self, n: usize) -> usize {
        self.layout(n).iter().map(|&(_, _, d)| d).sum()
    }

    /// Top total degree `pmax + qmax`.
    pub fn top_degree(&self) -> usize {
        self.pmax() + self.qmax()
    }

    /// Total differential `Tot^n -> Tot^{n+1}`, blocks ordered by `p`.
    pub fn total_differential(&self, n: usize) -> Matrix {
        let src = self.layout(n);
        let tgt = self.layout(n + 1);
        let rows = tgt.iter().map(|&(_, _, d)| d).sum();
        let cols = src.iter().map(|&(_, _, d)| d).sum();
        let mut out = Matrix::zeros(self.ring, rows, cols);
        let offset = |p: usize| tgt.iter().find(|&&(tp, _, _)| tp == p).map(|&(_, o, _)| o);
        for &(p, c0, _) in &src {
            let q = n - p;
            if p < self.pmax() {
                if let Some(r0) = offset(p + 1) {
                    out.add_block(r0, c0, &self.d_h[p][q]);
                }
            }
            if q < self.qmax() {
                if let Some(r0) = offset(p) {
                    out.add_block(r0, c0, &self.d_v[p][q].signed(p % 2 == 1));
                }
            }
        }
        out
    }
}

/// `Tot^n = ⊕_{p+q=n} C^{p,q}` with differential `d_h + (-1)^p d_v`.
pub fn total_complex(d: &DoubleComplex) -> CochainComplex {
    let top = d.top_degree();
    let dims = (0..=top).map(|n| d.total_dim(n)).collect();
    let diffs = (0..top).map(|n| d.total_differential(n)).collect();
    CochainComplex::new_unchecked(d.ring(), 0, dims, diffs).expect("total complex shapes are consistent")
}

/// Dimensions of `H^n(Tot)` over a field, from the ranks of the total
/// differentials.
pub fn total_cohomology_dims(d: &DoubleComplex) -> Result<Vec<usize>> {
    d.ring().require_field()?;
    let c = total_complex(d);
    Ok(complex_cohomology(&c)?.into_iter().map(|g| g.rank).collect())
}

