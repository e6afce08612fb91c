//! `C^{p,q} = ⊕_{p-chains c} C^q(A(src c), A(c)^* M(dst c))`, horizontally
//! the Baues-Wirsching differential on cochains and vertically the bar
//! differential.

use std::collections::HashMap;

use super::{Convention, DiagramModule, GroupDiagram};
use crate::chaincomplex::{complex_cohomology, total_complex, DoubleComplex};
use crate::error::Result;
use crate::fincat::{chains, Chain};
use crate::groupcoh::{bar_differential, derivations, GModule, GroupHom};
use crate::linalg::{FgAbelianGroup, Matrix, Ring};
use crate::natsys::{bw_differential, ChainLevel};

/// Postcomposition with `m: M -> M'` on `C^k(G, -)` for `|G| = order`.
pub(crate) fn push_cochains(order: usize, k: usize, m: &Matrix) -> Matrix {
    Matrix::identity(m.ring(), order.pow(k as u32)).kron(m)
}

/// Precomposition with `φ: H -> G` on `C^k(G, M)`, `dim M = dim`.
pub(crate) fn pull_cochains(ring: Ring, phi: &GroupHom, k: usize, dim: usize) -> Matrix {
    let (nh, ng) = (phi.src().order(), phi.dst().order());
    let rows = nh.pow(k as u32);
    let mut p = Matrix::zeros(ring, rows * dim, ng.pow(k as u32) * dim);
    for idx in 0..rows {
        let (mut rest, mut col, mut place) = (idx, 0, 1);
        for _ in 0..k {
            col += phi.apply(rest % nh) * place;
            rest /= nh;
            place *= ng;
        }
        for x in 0..dim {
            p.set_i64(idx * dim + x, col * dim + x, 1);
        }
    }
    p
}

/// The vertical differential of `module` out of vertical degree `q`.
pub(crate) fn vertical_differential(module: &GModule, q: usize, conv: Convention) -> Matrix {
    let dim = |q: usize| conv.bar_degree(q).map_or(0, |k| module.group().order().pow(k as u32) * module.dim());
    match conv.bar_degree(q) {
        Some(k) => bar_differential(module, k),
        None => Matrix::zeros(module.ring(), dim(q + 1), 0),
    }
}

/// The bicomplex on `0 <= p <= p_max`, `0 <= q <= q_max`.
pub fn diagram_bicomplex(
    a: &GroupDiagram,
    m: &DiagramModule,
    p_max: usize,
    q_max: usize,
    conv: Convention,
) -> Result<DoubleComplex> {
    diagram_bicomplex_truncated(a, m, p_max, q_max, None, conv)
}

/// As [`diagram_bicomplex`], with cells of total degree above `total_max`
/// replaced by zero. The result is a quotient complex whose cohomology and
/// spectral sequence agree with the full one below `total_max`.
pub fn diagram_bicomplex_truncated(
    a: &GroupDiagram,
    m: &DiagramModule,
    p_max: usize,
    q_max: usize,
    total_max: Option<usize>,
    conv: Convention,
) -> Result<DoubleComplex> {
    m.check_over(a)?;
    let cat = a.index();
    let ring = m.ring();
    let keep = |p: usize, q: usize| total_max.is_none_or(|t| p + q <= t);
    let order = |x: usize| a.group(x).order();
    let block = |c: &Chain, q: usize| {
        conv.bar_degree(q)
            .map_or(0, |k| order(c.source()).pow(k as u32) * m.space(c.target()).dim())
    };
    let levels: Vec<Vec<ChainLevel>> = (0..=p_max)
        .map(|p| {
            let ch = if keep(p, 0) { chains(cat, p) } else { Vec::new() };
            (0..=q_max)
                .map(|q| ChainLevel::from_chains(ch.clone(), p, &|c| if keep(p, q) { block(c, q) } else { 0 }))
                .collect()
        })
        .collect();
    let dims: Vec<Vec<usize>> = levels.iter().map(|col| col.iter().map(|l| l.total).collect()).collect();

    let mut modules: HashMap<usize, GModule> = HashMap::new();
    let mut module_at = |f: usize| modules.entry(f).or_insert_with(|| m.pulled_back(a, f)).clone();

    let mut d_h = Vec::with_capacity(p_max);
    for p in 0..p_max {
        let mut col = Vec::with_capacity(q_max + 1);
        for q in 0..=q_max {
            let (lower, upper) = (&levels[p][q], &levels[p + 1][q]);
            if upper.total == 0 || lower.total == 0 {
                col.push(Matrix::zeros(ring, upper.total, lower.total));
                continue;
            }
            let k = conv.bar_degree(q).expect("nonzero cells have a bar degree");
            let mut push_cache: HashMap<(usize, usize), Matrix> = HashMap::new();
            let mut pull_cache: HashMap<(usize, usize), Matrix> = HashMap::new();
            let d = bw_differential(
                cat,
                ring,
                lower,
                upper,
                &mut |alpha, c| {
                    push_cache
                        .entry((alpha, c.source()))
                        .or_insert_with(|| push_cochains(order(c.source()), k, m.map(alpha)))
                        .clone()
                },
                &mut |beta, c| {
                    pull_cache
                        .entry((beta, c.target()))
                        .or_insert_with(|| pull_cochains(ring, a.map(beta), k, m.space(c.target()).dim()))
                        .clone()
                },
                &mut |c| Matrix::identity(ring, block(c, q)),
            );
            col.push(d);
        }
        d_h.push(col);
    }

    let mut d_v = Vec::with_capacity(p_max + 1);
    for col in &levels {
        let mut out = Vec::with_capacity(q_max);
        for q in 0..q_max {
            let (lower, upper) = (&col[q], &col[q + 1]);
            let mut d = Matrix::zeros(ring, upper.total, lower.total);
            if upper.total > 0 {
                let mut cache: HashMap<usize, Matrix> = HashMap::new();
                for (i, c) in lower.chains.iter().enumerate() {
                    let v = cache
                        .entry(c.composite)
                        .or_insert_with(|| vertical_differential(&module_at(c.composite), q, conv));
                    d.add_block(upper.offsets[i], lower.offsets[i], v);
                }
            }
            out.push(d);
        }
        d_v.push(out);
    }
    DoubleComplex::new(ring, dims, d_h, d_v)
}

/// `H^0, …, H^{n_max}` of the total complex in the given convention.
pub fn diagram_cohomology(
    a: &GroupDiagram,
    m: &DiagramModule,
    n_max: usize,
    conv: Convention,
) -> Result<Vec<FgAbelianGroup>> {
    let top = n_max + 1;
    let d = diagram_bicomplex_truncated(a, m, top, top, Some(top), conv)?;
    let mut h = complex_cohomology(&total_complex(&d))?;
    h.truncate(n_max + 1);
    Ok(h)
}

/// Columns span the families of derivations `ψ(i): A(i) -> M(i)` with
/// `M(α) ψ(i) = ψ(j) A(α)` for every `α: i -> j`, stacked by object.
pub fn compatible_derivations(a: &GroupDiagram, m: &DiagramModule) -> Result<Matrix> {
    m.check_over(a)?;
    let c = a.index();
    let ring = m.ring();
    let bases: Vec<Matrix> = m.spaces().iter().map(derivations).collect::<Result<_>>()?;
    let mut offsets = Vec::new();
    let mut total = 0;
    for b in &bases {
        offsets.push(total);
        total += b.ncols();
    }
    // ψ(i) = bases[i] * x_i; one block of equations per morphism
    let mut rows: Vec<Matrix> = Vec::new();
    for f in 0..c.morphism_count() {
        let (i, j) = (c.src(f), c.dst(f));
        let lhs = push_cochains(a.group(i).order(), 1, m.map(f)).mul(&bases[i]);
        let rhs = pull_cochains(ring, a.map(f), 1, m.space(j).dim()).mul(&bases[j]);
        let mut eq = Matrix::zeros(ring, lhs.nrows(), total);
        eq.add_block(0, offsets[i], &lhs);
        eq.add_block(0, offsets[j], &rhs.neg());
        rows.push(eq);
    }
    let refs: Vec<&Matrix> = rows.iter().collect();
    let coords = Matrix::vstack(ring, total, &refs).kernel_basis()?;
    // back to cochain coordinates
    let mut block = Matrix::zeros(ring, bases.iter().map(Matrix::nrows).sum(), total);
    let mut r = 0;
    for (b, &o) in bases.iter().zip(&offsets) {
        block.add_block(r, o, b);
        r += b.nrows();
    }
    Ok(block.mul(&coords))
}
