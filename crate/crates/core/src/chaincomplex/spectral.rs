//! Spectral sequence of the column filtration `F^a Tot = ⊕_{p >= a} C^{p,*}`.
//!
//! Notation used below, for a total degree `n`:
//! `K_n(a, b) = { x in F^a Tot^n : d x in F^b Tot^{n+1} }`. Then
//! `Z_r^{p,q}` is the image of `K_n(p, p + r)` in `C^{p,q}` and `B_r^{p,q}` is
//! the image of `d K_{n-1}(max(0, p - r + 1), p)` in `C^{p,q}`.

use serde::Serialize;

use super::{total_complex, complex_cohomology, DoubleComplex};
use crate::error::Result;
use crate::linalg::{subquotient_dim, Matrix};

/// Page dimensions of the column-filtration spectral sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralPages {
    /// First page from which every later differential vanishes.
    pub r_max: usize,
    /// `pages[r][p][q] = dim E_r^{p,q}` for `0 <= r <= max(r_max, 2)`.
    pub pages: Vec<Vec<Vec<usize>>>,
    pub einf: Vec<Vec<usize>>,
    /// `total[n] = dim H^n(Tot)` for `0 <= n <= pmax + qmax`.
    pub total: Vec<usize>,
}

impl SpectralPages {
    pub fn page(&self, r: usize) -> &Vec<Vec<usize>> {
        &self.pages[r.min(self.pages.len() - 1)]
    }

    /// `Σ_{p+q=n} dim E_∞^{p,q} = dim H^n(Tot)` for every `n`.
    pub fn converges(&self) -> bool {
        (0..self.total.len()).all(|n| self.einf_diagonal(n) == self.total[n])
    }

    pub fn einf_diagonal(&self, n: usize) -> usize {
        self.einf
            .iter()
            .enumerate()
            .filter(|(p, _)| *p <= n)
            .filter_map(|(p, col)| col.get(n - p))
            .sum()
    }

    /// Page dimensions are nonincreasing in `r`.
    pub fn monotone(&self) -> bool {
        self.pages.windows(2).all(|w| {
            w[0].iter()
                .flatten()
                .zip(w[1].iter().flatten())
                .all(|(a, b)| b <= a)
        })
    }

    fn assemble(mut pages: Vec<Vec<Vec<usize>>>, einf: Vec<Vec<usize>>, total: Vec<usize>) -> Self {
        let r_max = (1..pages.len()).find(|&r| pages[r] == einf).unwrap_or(pages.len() - 1);
        pages.truncate(r_max.max(2) + 1);
        SpectralPages {
            r_max,
            pages,
            einf,
            total,
        }
    }
}

/// Past this page every differential leaves or enters the first quadrant.
fn last_page(d: &DoubleComplex) -> usize {
    d.pmax().max(d.qmax() + 1) + 1
}

/// All pages, `E_∞` and `H^*(Tot)` by a filtered row reduction.
///
/// For each total degree the transposed differential, with sources and
/// targets both listed by decreasing `p`, is reduced by pivot ("low")
/// columns. The pairs `(source p, target p)` of the reduction give every rank
/// `R_n(a, b) = rank(F^a Tot^n -> Tot^{n+1} / F^b)` at once.
pub fn spectral_sequence(d: &DoubleComplex) -> Result<SpectralPages> {
    d.ring().require_field()?;
    let top = d.top_degree();
    let ranks: Vec<FilteredRanks> = (0..=top).map(|n| FilteredRanks::new(d, n)).collect();
    let r_of = |n: i64, a: usize, b: usize| -> usize {
        if n < 0 {
            0
        } else {
            ranks[n as usize].rank(a, b)
        }
    };
    let inf = usize::MAX;
    let cells = |r: Option<usize>| -> Vec<Vec<usize>> {
        (0..=d.pmax())
            .map(|p| {
                (0..=d.qmax())
                    .map(|q| {
                        let n = (p + q) as i64;
                        let dim = d.dim(p, q);
                        match r {
                            Some(r) => {
                                let b = p + r;
                                let a = (p + 1).saturating_sub(r);
                                dim + r_of(n, p + 1, b) + r_of(n - 1, a, p)
                                    - r_of(n, p, b)
                                    - r_of(n - 1, a, p + 1)
                            }
                            None => {
                                // dim F^p H^n - dim F^{p+1} H^n
                                dim + r_of(n, p + 1, inf) + r_of(n - 1, 0, p)
                                    - r_of(n, p, inf)
                                    - r_of(n - 1, 0, p + 1)
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let pages: Vec<_> = (0..=last_page(d)).map(|r| cells(Some(r))).collect();
    let einf = cells(None);
    let total = (0..=top)
        .map(|n| d.total_dim(n) - r_of(n as i64, 0, inf) - r_of(n as i64 - 1, 0, inf))
        .collect();
    Ok(SpectralPages::assemble(pages, einf, total))
}

/// Pivot pairs of the filtered reduction of `d^n`, as filtration indices.
struct FilteredRanks {
    pairs: Vec<(usize, usize)>,
}

impl FilteredRanks {
    fn new(d: &DoubleComplex, n: usize) -> Self {
        let src = d.layout(n);
        let tgt = d.layout(n + 1);
        if src.is_empty() || tgt.is_empty() {
            return FilteredRanks { pairs: Vec::new() };
        }
        let diff = d.total_differential(n);
        let order = |cells: &[(usize, usize, usize)]| -> (Vec<usize>, Vec<usize>) {
            let mut idx = Vec::new();
            let mut filt = Vec::new();
            for &(p, off, len) in cells.iter().rev() {
                idx.extend(off..off + len);
                filt.extend(std::iter::repeat_n(p, len));
            }
            (idx, filt)
        };
        let (src_idx, src_p) = order(&src);
        let (tgt_idx, tgt_p) = order(&tgt);
        let m = diff.select_cols(&src_idx).select_rows(&tgt_idx).transpose();
        let pairs = m
            .low_pairs()
            .into_iter()
            .map(|(row, col)| (src_p[row], tgt_p[col]))
            .collect();
        FilteredRanks { pairs }
    }

    /// Rank of `F^a Tot^n -> Tot^{n+1} / F^b`.
    fn rank(&self, a: usize, b: usize) -> usize {
        self.pairs.iter().filter(|&&(s, t)| s >= a && t < b).count()
    }
}

/// The same pages computed literally: bases of `Z_r` and `B_r` are built as
/// column spans inside `C^{p,q}` and compared with [`subquotient_dim`].
/// Slower; kept as the reference implementation.
pub fn spectral_sequence_explicit(d: &DoubleComplex) -> Result<SpectralPages> {
    d.ring().require_field()?;
    let top = d.top_degree();
    let diffs: Vec<Matrix> = (0..=top).map(|n| d.total_differential(n)).collect();
    let last = last_page(d);
    let mut pages = vec![vec![vec![0; d.qmax() + 1]; d.pmax() + 1]; last + 1];
    let mut einf = vec![vec![0; d.qmax() + 1]; d.pmax() + 1];
    for p in 0..=d.pmax() {
        for q in 0..=d.qmax() {
            let n = p + q;
            for r in 0..=last + 1 {
                let z = project(d, n, p, &kernel_part(d, &diffs[n], n, p, p + r)?);
                let b = match n {
                    0 => Matrix::zeros(d.ring(), d.dim(p, q), 0),
                    _ => {
                        let a = (p + 1).saturating_sub(r);
                        let k = kernel_part(d, &diffs[n - 1], n - 1, a, p)?;
                        project(d, n, p, &diffs[n - 1].mul(&k))
                    }
                };
                let dim = subquotient_dim(&z, &b)?;
                if r <= last {
                    pages[r][p][q] = dim;
                } else {
                    einf[p][q] = dim;
                }
            }
        }
    }
    let total = complex_cohomology(&total_complex(d))?
        .into_iter()
        .map(|g| g.rank)
        .collect();
    Ok(SpectralPages::assemble(pages, einf, total))
}

/// Basis of `K_n(a, b)` as columns in `Tot^n` coordinates.
fn kernel_part(d: &DoubleComplex, diff: &Matrix, n: usize, a: usize, b: usize) -> Result<Matrix> {
    let src = d.layout(n);
    let tgt = d.layout(n + 1);
    let dim_n = d.total_dim(n);
    let start = src.iter().find(|c| c.0 >= a).map_or(dim_n, |c| c.1);
    let below: usize = tgt.iter().filter(|c| c.0 < b).map(|c| c.2).sum();
    let restricted = diff.row_range(0, below).col_range(start, dim_n - start);
    let k = restricted.kernel_basis()?;
    let mut out = Matrix::zeros(d.ring(), dim_n, k.ncols());
    out.add_block(start, 0, &k);
    Ok(out)
}

/// Rows of the `C^{p, n-p}` block of vectors in `Tot^n`.
fn project(d: &DoubleComplex, n: usize, p: usize, v: &Matrix) -> Matrix {
    match d.layout(n).into_iter().find(|c| c.0 == p) {
        Some((_, off, len)) => v.row_range(off, len),
        None => Matrix::zeros(d.ring(), 0, v.ncols()),
    }
}
