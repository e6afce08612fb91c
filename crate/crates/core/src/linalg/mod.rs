//! Exact linear algebra over `Z`, `Q` and `F_p`.

mod matrix;
pub(crate) mod rows;
mod scalar;
mod smith;

use std::fmt;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use matrix::Matrix;
pub use scalar::{parse_scalar, Ring, Scalar};
pub use smith::{check_smith_form, elementary_divisors, smith_normal_form, SmithForm};

use crate::error::Error;

/// Finitely generated abelian group `Z^rank + Z/t_1 + ... + Z/t_k` with
/// `t_1 | t_2 | ... | t_k` and every `t_i >= 2`. Over a field only `rank`
/// is used and it is the dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl FgAbelianGroup {
    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// Builds the group from elementary divisors, dropping units and
    /// validating the divisibility chain.
    pub fn new(rank: usize, divisors: &[u64]) -> Result<Self, Error> {
        let torsion: Vec<u64> = divisors.iter().copied().filter(|&d| d != 1).collect();
        if torsion.contains(&0) {
            return Err(Error::Invalid("torsion coefficient 0".into()));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Invalid(format!("torsion {torsion:?} is not a divisibility chain")));
        }
        Ok(FgAbelianGroup { rank, torsion })
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Renders the group, naming the free part after `ring`.
    pub fn display_over(&self, ring: Ring) -> String {
        let base = match ring {
            Ring::Integers => "Z".to_string(),
            Ring::Rationals => "Q".to_string(),
            Ring::Prime(p) => format!("F{p}"),
        };
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(base.clone()),
            r => parts.push(format!("{base}^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_over(Ring::Integers))
    }
}

/// One matrix entry in JSON: an integer, or text such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

/// Reads a row-major entry table into a `nrows x ncols` matrix over `ring`.
pub fn matrix_from_entries(ring: Ring, nrows: usize, ncols: usize, rows: &[Vec<Entry>]) -> Result<Matrix, Error> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse(format!("expected a {nrows} x {ncols} matrix")));
    }
    let mut m = Matrix::zeros(ring, nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let v = match e {
                Entry::Int(v) => ring.from_i64(*v),
                Entry::Text(t) => parse_scalar(ring, t)?,
            };
            m.set(i, j, &v);
        }
    }
    Ok(m)
}

/// Row-major entries, integers where possible.
pub fn matrix_to_entries(m: &Matrix) -> Vec<Vec<Entry>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| {
                    let v = m.get(i, j);
                    match v.to_i64() {
                        Some(x) => Entry::Int(x),
                        None => Entry::Text(v.to_string()),
                    }
                })
                .collect()
        })
        .collect()
}

/// `dim span(z) - dim span(b)` after checking that every column of `b` lies
/// in the span of `z`.
pub fn subquotient_dim(z: &Matrix, b: &Matrix) -> Result<usize, Error> {
    z.ring().require_field()?;
    let rz = z.rank();
    if b.ncols() == 0 {
        return Ok(rz);
    }
    assert_eq!(z.nrows(), b.nrows(), "ambient dimensions differ");
    let rb = b.rank();
    let joint = Matrix::hstack(z.ring(), z.nrows(), &[z, b]).rank();
    if joint != rz {
        // Locate an offending column for the error message.
        let column = (0..b.ncols())
            .find(|&j| Matrix::hstack(z.ring(), z.nrows(), &[z, &b.col_range(j, 1)]).rank() != rz)
            .unwrap_or(0);
        return Err(Error::SubspaceViolation { column });
    }
    Ok(rz - rb)
}

/// Cohomology `ker(d_out) / im(d_in)` at the middle term of
/// `C_prev --d_in--> C --d_out--> C_next`.
pub fn cohomology_at(d_in: &Matrix, d_out: &Matrix) -> Result<FgAbelianGroup, Error> {
    if d_in.ring() != d_out.ring() {
        return Err(Error::TypeMismatch("differentials over different rings".into()));
    }
    if d_in.nrows() != d_out.ncols() {
        return Err(Error::TypeMismatch(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.nrows(),
            d_out.ncols()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::NotAComplex { degree: 0 });
    }
    cohomology_unchecked(d_in, d_out)
}

pub(crate) fn cohomology_unchecked(d_in: &Matrix, d_out: &Matrix) -> Result<FgAbelianGroup, Error> {
    let n = d_in.nrows();
    let kernel = n - d_out.rank();
    match d_in.ring() {
        Ring::Integers => {
            let divisors = elementary_divisors(d_in)?;
            let rank = kernel - divisors.len();
            let torsion = divisors
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| {
                    d.to_u64()
                        .ok_or_else(|| Error::TooLarge { what: "torsion coefficient".into(), bound: usize::MAX })
                })
                .collect::<Result<Vec<_>, _>>()?;
            FgAbelianGroup::new(rank, &torsion)
        }
        _ => Ok(FgAbelianGroup::free(kernel - d_in.rank())),
    }
}

