//! The natural systems `f ↦ H^q(A(src f), A(f)^* M(dst f))`.

use super::bicomplex::{pull_cochains, push_cochains, vertical_differential};
use super::{Convention, DiagramModule, GroupDiagram};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::natsys::NaturalSystem;

/// A local cohomology natural system with the cocycles representing the
/// chosen basis of each value.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalCohomologySystem {
    pub q: usize,
    pub convention: Convention,
    pub system: NaturalSystem,
    /// Columns are cocycles in `C^k` whose classes form the basis of `D(f)`.
    pub representatives: Vec<Matrix>,
}

/// Cocycles and coboundaries of one value.
struct Value {
    /// `[B | reps]`, a basis of the cocycles.
    basis: Matrix,
    coboundaries: usize,
    reps: Matrix,
}

impl Value {
    fn new(d_in: &Matrix, d_out: &Matrix) -> Result<Self> {
        let z = d_out.kernel_basis()?;
        let b = d_in.column_space_basis()?;
        // coordinates of B in Z; complement = unit vectors off the pivots
        let xb = z
            .solve_independent(&b)?
            .ok_or(Error::NotAComplex { degree: 0 })?;
        let reduced = xb.column_space_basis()?;
        let pivots: Vec<usize> = (0..reduced.ncols())
            .map(|j| (0..reduced.nrows()).find(|&i| reduced.is_nonzero_at(i, j)).expect("basis columns are nonzero"))
            .collect();
        let free: Vec<usize> = (0..z.ncols()).filter(|i| !pivots.contains(i)).collect();
        let reps = z.select_cols(&free);
        let ring = z.ring();
        Ok(Value {
            basis: Matrix::hstack(ring, z.nrows(), &[&b, &reps]),
            coboundaries: b.ncols(),
            reps,
        })
    }

    /// Coordinates in the class basis of cocycles `w`; fails if some column
    /// is not a cocycle.
    fn classes(&self, w: &Matrix) -> Result<Matrix> {
        let x = self.basis.solve_independent(w)?.ok_or_else(|| {
            Error::Invalid("an induced map does not send cocycles to cocycles".into())
        })?;
        Ok(x.row_range(self.coboundaries, self.reps.ncols()))
    }
}

/// `D(f: i -> j) = H^q(A(i), A(f)^* M(j))` in the degrees of `conv`, with
/// `α_*` induced by `M(α)` and `β^*` by precomposition with `A(β)`. Both are
/// checked to send coboundaries to coboundaries, and the result is validated
/// as a natural system.
pub fn local_system(a: &GroupDiagram, m: &DiagramModule, q: usize, conv: Convention) -> Result<LocalCohomologySystem> {
    m.check_over(a)?;
    let c = a.index();
    let ring = m.ring();
    ring.require_field()?;
    let Some(k) = conv.bar_degree(q) else {
        let system = NaturalSystem::constant(c, ring, 0);
        let representatives = (0..c.morphism_count()).map(|_| Matrix::zeros(ring, 0, 0)).collect();
        return Ok(LocalCohomologySystem {
            q,
            convention: conv,
            system,
            representatives,
        });
    };
    let values: Vec<Value> = (0..c.morphism_count())
        .map(|f| {
            let n = m.pulled_back(a, f);
            let d_out = vertical_differential(&n, q, conv);
            let d_in = match q {
                0 => Matrix::zeros(ring, d_out.ncols(), 0),
                _ => vertical_differential(&n, q - 1, conv),
            };
            Value::new(&d_in, &d_out)
        })
        .collect::<Result<_>>()?;

    let induce = |map: &Matrix, from: &Value, to: &Value| -> Result<Matrix> {
        let coboundaries = map.mul(&from.basis.col_range(0, from.coboundaries));
        if !to.classes(&coboundaries)?.is_zero() {
            return Err(Error::Invalid("an induced map does not preserve coboundaries".into()));
        }
        to.classes(&map.mul(&from.reps))
    };
    let mut failure = None;
    let mut record = |r: Result<Matrix>, rows: usize, cols: usize| {
        r.unwrap_or_else(|e| {
            failure.get_or_insert(e);
            Matrix::zeros(ring, rows, cols)
        })
    };
    let dims: Vec<usize> = values.iter().map(|v| v.reps.ncols()).collect();
    let mut push = std::collections::HashMap::new();
    let mut pull = std::collections::HashMap::new();
    for f in 0..c.morphism_count() {
        for alpha in c.out_of(c.dst(f)) {
            let g = c.compose_idx(alpha, f);
            let map = push_cochains(a.group(c.src(f)).order(), k, m.map(alpha));
            push.insert((alpha, f), record(induce(&map, &values[f], &values[g]), dims[g], dims[f]));
        }
        for beta in c.into(c.src(f)) {
            let g = c.compose_idx(f, beta);
            let map = pull_cochains(ring, a.map(beta), k, m.space(c.dst(f)).dim());
            pull.insert((beta, f), record(induce(&map, &values[f], &values[g]), dims[g], dims[f]));
        }
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let system = NaturalSystem::new(c, ring, dims, |x, f| push[&(x, f)].clone(), |x, f| pull[&(x, f)].clone())?;
    Ok(LocalCohomologySystem {
        q,
        convention: conv,
        system,
        representatives: values.into_iter().map(|v| v.reps).collect(),
    })
}
