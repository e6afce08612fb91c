//! The Baues-Wirsching cochain complex.
//!
//! `C^n = ⊕_{chains c of length n} D(composite c)`, blocks in chain order,
//! with
//! `(df)(α_1, …, α_{n+1}) = α_1* f(α_2, …) + Σ_{j=1}^{n} (-1)^j f(…, α_j α_{j+1}, …)
//!                          + (-1)^{n+1} α_{n+1}^* f(α_1, …, α_n)`.

use std::collections::HashMap;

use super::NaturalSystem;
use crate::chaincomplex::{complex_cohomology, CochainComplex};
use crate::error::Result;
use crate::fincat::{chains, Chain, FiniteCategory};
use crate::linalg::{FgAbelianGroup, Matrix, Ring};

/// The chains of one length with block offsets.
pub(crate) struct ChainLevel {
    pub chains: Vec<Chain>,
    pub offsets: Vec<usize>,
    pub total: usize,
    index: HashMap<Vec<usize>, usize>,
}

impl ChainLevel {
    pub fn new(cat: &FiniteCategory, p: usize, dim: &dyn Fn(&Chain) -> usize) -> Self {
        Self::from_chains(chains(cat, p), p, dim)
    }

    /// `chains` must be all chains of length `p` in chain order.
    pub fn from_chains(chains: Vec<Chain>, p: usize, dim: &dyn Fn(&Chain) -> usize) -> Self {
        let mut offsets = Vec::with_capacity(chains.len());
        let mut total = 0;
        for c in &chains {
            offsets.push(total);
            total += dim(c);
        }
        let index = if p == 0 {
            HashMap::new()
        } else {
            chains.iter().enumerate().map(|(i, c)| (c.arrows.clone(), i)).collect()
        };
        ChainLevel {
            chains,
            offsets,
            total,
            index,
        }
    }

    /// Index of the chain with these arrows, or of the object for length 0.
    fn find(&self, arrows: &[usize], object: usize) -> usize {
        if arrows.is_empty() {
            object
        } else {
            self.index[arrows]
        }
    }
}

/// `d: C^n -> C^{n+1}` for a coefficient system given by closures.
///
/// `push(α, c)` must map the block of chain `c` (length `n`) into the
/// block over `α∘composite(c)`, and `pull(β, c)` into the block over
/// `composite(c)∘β`; `merge(c)` is the map used for the inner faces of the
/// upper chain `c` (the identity for ordinary natural systems).
pub(crate) fn bw_differential(
    cat: &FiniteCategory,
    ring: Ring,
    lower: &ChainLevel,
    upper: &ChainLevel,
    push: &mut dyn FnMut(usize, &Chain) -> Matrix,
    pull: &mut dyn FnMut(usize, &Chain) -> Matrix,
    merge: &mut dyn FnMut(&Chain) -> Matrix,
) -> Matrix {
    let mut d = Matrix::zeros(ring, upper.total, lower.total);
    for (ci, c) in upper.chains.iter().enumerate() {
        let a = &c.arrows;
        let n = a.len() - 1;
        let row = upper.offsets[ci];
        // front face: drop α_1
        let front = lower.find(&a[1..], c.objects[1]);
        d.add_block(row, lower.offsets[front], &push(a[0], &lower.chains[front]));
        // inner faces: merge α_j α_{j+1}
        if n > 0 {
            let id = merge(c);
            for j in 1..=n {
                let mut merged = Vec::with_capacity(n);
                merged.extend_from_slice(&a[..j - 1]);
                merged.push(cat.compose_idx(a[j - 1], a[j]));
                merged.extend_from_slice(&a[j + 1..]);
                let col = lower.offsets[lower.find(&merged, 0)];
                d.add_block(row, col, &id.signed(j % 2 == 1));
            }
        }
        // back face: drop α_{n+1}
        let back = lower.find(&a[..n], c.objects[0]);
        d.add_block(row, lower.offsets[back], &pull(a[n], &lower.chains[back]).signed((n + 1) % 2 == 1));
    }
    d
}

/// `C^0, …, C^{n_max}` with the Baues-Wirsching differential; `d d = 0` is
/// checked.
pub fn bw_complex(sys: &NaturalSystem, n_max: usize) -> Result<CochainComplex> {
    let cat = sys.base();
    let dim = |c: &Chain| sys.dim(c.composite);
    let levels: Vec<ChainLevel> = (0..=n_max).map(|p| ChainLevel::new(cat, p, &dim)).collect();
    let ring = sys.ring();
    let diffs = levels
        .windows(2)
        .map(|w| {
            bw_differential(
                cat,
                ring,
                &w[0],
                &w[1],
                &mut |a, c| sys.push(a, c.composite).clone(),
                &mut |b, c| sys.pull(b, c.composite).clone(),
                &mut |c| Matrix::identity(ring, sys.dim(c.composite)),
            )
        })
        .collect();
    CochainComplex::new(ring, 0, levels.iter().map(|l| l.total).collect(), diffs)
}

/// `H^0, …, H^{n_max}` of the Baues-Wirsching complex.
pub fn bw_cohomology(sys: &NaturalSystem, n_max: usize) -> Result<Vec<FgAbelianGroup>> {
    let c = bw_complex(sys, n_max + 1)?;
    let mut h = complex_cohomology(&c)?;
    h.truncate(n_max + 1);
    Ok(h)
}
