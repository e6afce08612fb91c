use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupHom};
use crate::error::{Error, Result};
use crate::linalg::{matrix_from_entries, matrix_to_entries, Entry, Matrix, Ring};

/// A free module `R^dim` with a linear action of a finite group.
#[derive(Clone, Debug, PartialEq)]
pub struct GModule {
    group: FiniteGroup,
    ring: Ring,
    dim: usize,
    action: Vec<Matrix>,
}

/// `{dimension, prime, action: {g: matrix}}`. Without `prime` the
/// coefficients are the integers; omitted elements act trivially.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<Entry>>>,
}

impl GModule {
    pub fn new(group: &FiniteGroup, ring: Ring, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::TypeMismatch(format!("{} action matrices for {} elements", action.len(), group.order())));
        }
        for (g, m) in action.iter().enumerate() {
            if m.ring() != ring || m.shape() != (dim, dim) {
                return Err(Error::TypeMismatch(format!("action of `{}` has the wrong shape or ring", group.name(g))));
            }
        }
        if !action[group.unit()].is_identity() {
            return Err(Error::ModuleAxiomFailure("the unit does not act as the identity".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if action[group.mul(g, h)] != action[g].mul(&action[h]) {
                    return Err(Error::ModuleAxiomFailure(format!(
                        "(`{}` `{}`) m differs from `{}` (`{}` m)",
                        group.name(g),
                        group.name(h),
                        group.name(g),
                        group.name(h)
                    )));
                }
            }
        }
        Ok(GModule {
            group: group.clone(),
            ring,
            dim,
            action,
        })
    }

    pub fn trivial(group: &FiniteGroup, ring: Ring, dim: usize) -> Self {
        GModule {
            group: group.clone(),
            ring,
            dim,
            action: vec![Matrix::identity(ring, dim); group.order()],
        }
    }

    /// The module on `R^dim` where `g` acts through `rho(g)`.
    pub fn from_fn(group: &FiniteGroup, ring: Ring, dim: usize, rho: impl Fn(usize) -> Matrix) -> Result<Self> {
        Self::new(group, ring, dim, (0..group.order()).map(rho).collect())
    }

    /// The permutation module of a left action `act(g, x)` on `0..points`.
    pub fn permutation(group: &FiniteGroup, ring: Ring, points: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::from_fn(group, ring, points, |g| {
            let mut m = Matrix::zeros(ring, points, points);
            for x in 0..points {
                m.set_i64(act(g, x), x, 1);
            }
            m
        })
    }

    pub fn from_spec(group: &FiniteGroup, spec: &ModuleSpec) -> Result<Self> {
        let ring = match spec.prime {
            Some(p) => Ring::prime(p)?,
            None => Ring::Integers,
        };
        let mut action = vec![None; group.order()];
        for (g, rows) in &spec.action {
            let m = matrix_from_entries(ring, spec.dimension, spec.dimension, rows)
                .map_err(|e| Error::Parse(format!("action of `{g}`: {e}")))?;
            action[group.element(g)?] = Some(m);
        }
        let action = action
            .into_iter()
            .map(|m| m.unwrap_or_else(|| Matrix::identity(ring, spec.dimension)))
            .collect();
        Self::new(group, ring, spec.dimension, action)
    }

    /// Serializes the action of every element other than the unit.
    pub fn to_spec(&self) -> ModuleSpec {
        let prime = match self.ring {
            Ring::Prime(p) => Some(p),
            _ => None,
        };
        ModuleSpec {
            dimension: self.dim,
            prime,
            action: (0..self.group.order())
                .filter(|&g| g != self.group.unit())
                .map(|g| (self.group.name(g).to_string(), matrix_to_entries(&self.action[g])))
                .collect(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if self.group != other.group || self.ring != other.ring {
            return Err(Error::TypeMismatch("direct sum of modules over different groups or rings".into()));
        }
        let dim = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(self.ring, dim, dim);
                m.add_block(0, 0, a);
                m.add_block(self.dim, self.dim, b);
                m
            })
            .collect();
        Ok(GModule {
            action,
            dim,
            ..self.clone()
        })
    }

    /// The isomorphic module `P M` for an invertible `P` with inverse `p_inv`.
    pub fn conjugate(&self, p: &Matrix, p_inv: &Matrix) -> GModule {
        GModule {
            action: self.action.iter().map(|a| p.mul(a).mul(p_inv)).collect(),
            ..self.clone()
        }
    }

    /// Columns span `M^G`.
    pub fn fixed_points(&self) -> Result<Matrix> {
        let id = Matrix::identity(self.ring, self.dim);
        let parts: Vec<Matrix> = self.action.iter().map(|a| a.add(&id.neg())).collect();
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::vstack(self.ring, self.dim, &refs).kernel_basis()
    }
}

/// `φ^* M`: the same space with `g` acting as `φ(g)`.
pub fn restrict_module(phi: &GroupHom, m: &GModule) -> Result<GModule> {
    if phi.dst() != m.group() {
        return Err(Error::TypeMismatch("module is not over the target of the homomorphism".into()));
    }
    Ok(GModule {
        group: phi.src().clone(),
        ring: m.ring,
        dim: m.dim,
        action: phi.table().iter().map(|&g| m.action[g].clone()).collect(),
    })
}

/// A basis of the `φ`-equivariant maps `X: src -> dst`, i.e.
/// `X src(g) = dst(φ(g)) X` for all `g`.
pub fn equivariant_maps(phi: &GroupHom, src: &GModule, dst: &GModule) -> Result<Vec<Matrix>> {
    if phi.src() != src.group() || phi.dst() != dst.group() || src.ring != dst.ring {
        return Err(Error::TypeMismatch("modules do not match the homomorphism".into()));
    }
    let ring = src.ring;
    let (r, c) = (dst.dim, src.dim);
    // row-major vec(X): vec(X A) = (I ⊗ A^T) vec X, vec(B X) = (B ⊗ I) vec X
    let blocks: Vec<Matrix> = (0..src.group.order())
        .map(|g| {
            let lhs = Matrix::identity(ring, r).kron(&src.action[g].transpose());
            let rhs = dst.action[phi.apply(g)].kron(&Matrix::identity(ring, c));
            lhs.add(&rhs.neg())
        })
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let kernel = Matrix::vstack(ring, r * c, &refs).kernel_basis()?;
    Ok((0..kernel.ncols())
        .map(|k| {
            let mut x = Matrix::zeros(ring, r, c);
            for i in 0..r {
                for j in 0..c {
                    x.set(i, j, &kernel.get(i * c + j, k));
                }
            }
            x
        })
        .collect())
}
