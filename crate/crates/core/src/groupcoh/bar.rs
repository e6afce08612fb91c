//! Unnormalized bar cochains `C^q(G, M) = Map(G^q, M)`.
//!
//! A `q`-tuple `(g_1, …, g_q)` has index `Σ g_i |G|^{q-i}`; its block of
//! `C^q` starts at `index · dim M`.

use super::GModule;
use crate::chaincomplex::{complex_cohomology, CochainComplex};
use crate::error::Result;
use crate::linalg::{FgAbelianGroup, Matrix};

/// `(df)(g_1, …, g_{q+1}) = g_1 f(g_2, …) + Σ_j (-1)^j f(…, g_j g_{j+1}, …)
/// + (-1)^{q+1} f(g_1, …, g_q)`.
pub fn bar_differential(m: &GModule, q: usize) -> Matrix {
    let g = m.group();
    let n = g.order();
    let dim = m.dim();
    let ring = m.ring();
    let rows = n.pow(q as u32 + 1);
    let id = Matrix::identity(ring, dim);
    let minus = id.neg();
    let mut d = Matrix::zeros(ring, rows * dim, n.pow(q as u32) * dim);
    let mut t = vec![0usize; q + 1];
    for idx in 0..rows {
        let mut rest = idx;
        for slot in t.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        let row = idx * dim;
        d.add_block(row, (idx % n.pow(q as u32)) * dim, m.action(t[0]));
        for j in 1..=q {
            let mut col = 0;
            for (k, &x) in t.iter().enumerate() {
                if k == j {
                    continue;
                }
                col = col * n + if k == j - 1 { g.mul(x, t[j]) } else { x };
            }
            d.add_block(row, col * dim, if j % 2 == 1 { &minus } else { &id });
        }
        d.add_block(row, (idx / n) * dim, if (q + 1) % 2 == 1 { &minus } else { &id });
    }
    d
}

/// `C^0, …, C^{q_max}`; `d d = 0` is checked.
pub fn bar_complex(m: &GModule, q_max: usize) -> Result<CochainComplex> {
    let n = m.group().order();
    let dims = (0..=q_max).map(|q| n.pow(q as u32) * m.dim()).collect();
    let diffs = (0..q_max).map(|q| bar_differential(m, q)).collect();
    CochainComplex::new(m.ring(), 0, dims, diffs)
}

/// `H^0(G, M), …, H^{q_max}(G, M)`.
pub fn group_cohomology(m: &GModule, q_max: usize) -> Result<Vec<FgAbelianGroup>> {
    let c = bar_complex(m, q_max + 1)?;
    let mut h = complex_cohomology(&c)?;
    h.truncate(q_max + 1);
    Ok(h)
}

/// Columns span the 1-cocycles `d(gh) = g d(h) + d(g)`, as maps `G -> M`
/// stored like `C^1`.
pub fn derivations(m: &GModule) -> Result<Matrix> {
    m.ring().require_field()?;
    let g = m.group();
    let (n, dim, ring) = (g.order(), m.dim(), m.ring());
    let id = Matrix::identity(ring, dim);
    let mut sys = Matrix::zeros(ring, n * n * dim, n * dim);
    for a in 0..n {
        for b in 0..n {
            let row = (a * n + b) * dim;
            sys.add_block(row, g.mul(a, b) * dim, &id);
            sys.add_block(row, b * dim, &m.action(a).neg());
            sys.add_block(row, a * dim, &id.neg());
        }
    }
    sys.kernel_basis()
}
