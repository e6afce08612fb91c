//! Natural systems on finite categories and Baues-Wirsching cohomology.

mod bw;
mod io;

use crate::error::{Error, Result};
use crate::fincat::FiniteCategory;
use crate::linalg::{Matrix, Ring};

pub use bw::{bw_cohomology, bw_complex};
pub(crate) use bw::{bw_differential, ChainLevel};
pub use io::{ActionSpec, NaturalSystemSpec};

/// A functor `I -> R-mod` with free values `R^{dims[x]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctor {
    pub ring: Ring,
    pub dims: Vec<usize>,
    /// `maps[α]: R^{dims[src α]} -> R^{dims[dst α]}`.
    pub maps: Vec<Matrix>,
}

impl LinearFunctor {
    pub fn validate(&self, cat: &FiniteCategory) -> Result<()> {
        if self.dims.len() != cat.object_count() || self.maps.len() != cat.morphism_count() {
            return Err(Error::TypeMismatch("functor tables do not cover the category".into()));
        }
        for a in 0..cat.morphism_count() {
            let m = &self.maps[a];
            if m.ring() != self.ring || m.shape() != (self.dims[cat.dst(a)], self.dims[cat.src(a)]) {
                return Err(Error::TypeMismatch(format!(
                    "map of `{}` has the wrong shape or ring",
                    cat.morphism_name(a)
                )));
            }
        }
        for x in 0..cat.object_count() {
            if !self.maps[cat.identity(x)].is_identity() {
                return Err(Error::IdentityViolation(format!(
                    "functor sends the identity of `{}` to a non-identity",
                    cat.object_name(x)
                )));
            }
        }
        for g in 0..cat.morphism_count() {
            for f in cat.into(cat.src(g)) {
                if self.maps[cat.compose_idx(g, f)] != self.maps[g].mul(&self.maps[f]) {
                    return Err(Error::Invalid(format!(
                        "functor does not preserve `{}` ∘ `{}`",
                        cat.morphism_name(g),
                        cat.morphism_name(f)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `R^k` everywhere, identity maps.
    pub fn constant(cat: &FiniteCategory, ring: Ring, k: usize) -> Self {
        LinearFunctor {
            ring,
            dims: vec![k; cat.object_count()],
            maps: (0..cat.morphism_count()).map(|_| Matrix::identity(ring, k)).collect(),
        }
    }

    /// `x ↦ R[hom(c, x)]` with maps by postcomposition.
    pub fn representable(cat: &FiniteCategory, ring: Ring, c: usize) -> Self {
        let homs: Vec<Vec<usize>> = (0..cat.object_count()).map(|x| cat.hom(c, x)).collect();
        let maps = (0..cat.morphism_count())
            .map(|a| {
                let (s, d) = (cat.src(a), cat.dst(a));
                let mut m = Matrix::zeros(ring, homs[d].len(), homs[s].len());
                for (j, &u) in homs[s].iter().enumerate() {
                    let i = homs[d].iter().position(|&v| v == cat.compose_idx(a, u)).expect("hom sets are closed");
                    m.set_i64(i, j, 1);
                }
                m
            })
            .collect();
        LinearFunctor {
            ring,
            dims: homs.iter().map(Vec::len).collect(),
            maps,
        }
    }

    /// Objectwise direct sum.
    pub fn direct_sum(&self, other: &LinearFunctor) -> Self {
        let ring = self.ring;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(ring, a.nrows() + b.nrows(), a.ncols() + b.ncols());
                m.add_block(0, 0, a);
                m.add_block(a.nrows(), a.ncols(), b);
                m
            })
            .collect();
        LinearFunctor { ring, dims, maps }
    }
}

/// A functor on the factorization category with free values: `D(f)` has
/// rank `dims[f]`, `α_*: D(f) -> D(αf)` and `β^*: D(f) -> D(fβ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalSystem {
    base: FiniteCategory,
    ring: Ring,
    dims: Vec<usize>,
    /// `push[α * m + f]` when `dst f = src α`.
    push: Vec<Option<Matrix>>,
    /// `pull[β * m + f]` when `dst β = src f`.
    pull: Vec<Option<Matrix>>,
}

impl NaturalSystem {
    /// Tabulates the actions and validates functoriality.
    pub fn new(
        base: &FiniteCategory,
        ring: Ring,
        dims: Vec<usize>,
        push: impl Fn(usize, usize) -> Matrix,
        pull: impl Fn(usize, usize) -> Matrix,
    ) -> Result<Self> {
        let d = Self::new_unchecked(base, ring, dims, push, pull)?;
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(
        base: &FiniteCategory,
        ring: Ring,
        dims: Vec<usize>,
        push: impl Fn(usize, usize) -> Matrix,
        pull: impl Fn(usize, usize) -> Matrix,
    ) -> Result<Self> {
        let m = base.morphism_count();
        if dims.len() != m {
            return Err(Error::TypeMismatch(format!("{} values for {m} morphisms", dims.len())));
        }
        let mut push_t = vec![None; m * m];
        let mut pull_t = vec![None; m * m];
        for f in 0..m {
            for a in base.out_of(base.dst(f)) {
                push_t[a * m + f] = Some(push(a, f));
            }
            for b in base.into(base.src(f)) {
                pull_t[b * m + f] = Some(pull(b, f));
            }
        }
        Ok(NaturalSystem {
            base: base.clone(),
            ring,
            dims,
            push: push_t,
            pull: pull_t,
        })
    }

    pub fn base(&self) -> &FiniteCategory {
        &self.base
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, f: usize) -> usize {
        self.dims[f]
    }

    /// `α_*: D(f) -> D(α∘f)`.
    pub fn push(&self, alpha: usize, f: usize) -> &Matrix {
        self.push[alpha * self.base.morphism_count() + f]
            .as_ref()
            .expect("push needs dst f = src α")
    }

    /// `β^*: D(f) -> D(f∘β)`.
    pub fn pull(&self, beta: usize, f: usize) -> &Matrix {
        self.pull[beta * self.base.morphism_count() + f]
            .as_ref()
            .expect("pull needs dst β = src f")
    }

    /// Checks shapes, identities, `(α'α)_* = α'_* α_*`, `(ββ')^* = β'^* β^*`
    /// and `α_* β^* = β^* α_*`.
    pub fn validate(&self) -> Result<()> {
        let c = &self.base;
        let name = |f: usize| c.morphism_name(f).to_string();
        let fail = |msg: String| Err(Error::Invalid(format!("not a natural system: {msg}")));
        for f in 0..c.morphism_count() {
            for a in c.out_of(c.dst(f)) {
                let m = self.push(a, f);
                if m.ring() != self.ring || m.shape() != (self.dims[c.compose_idx(a, f)], self.dims[f]) {
                    return Err(Error::TypeMismatch(format!("push of `{}` at `{}` has the wrong shape", name(a), name(f))));
                }
            }
            for b in c.into(c.src(f)) {
                let m = self.pull(b, f);
                if m.ring() != self.ring || m.shape() != (self.dims[c.compose_idx(f, b)], self.dims[f]) {
                    return Err(Error::TypeMismatch(format!("pull of `{}` at `{}` has the wrong shape", name(b), name(f))));
                }
            }
        }
        for f in 0..c.morphism_count() {
            if !self.push(c.identity(c.dst(f)), f).is_identity() {
                return fail(format!("the identity pushes nontrivially at `{}`", name(f)));
            }
            if !self.pull(c.identity(c.src(f)), f).is_identity() {
                return fail(format!("the identity pulls nontrivially at `{}`", name(f)));
            }
            for a in c.out_of(c.dst(f)) {
                let af = c.compose_idx(a, f);
                for a2 in c.out_of(c.dst(a)) {
                    let lhs = self.push(c.compose_idx(a2, a), f);
                    if *lhs != self.push(a2, af).mul(self.push(a, f)) {
                        return fail(format!("pushes along `{}` then `{}` at `{}` do not compose", name(a), name(a2), name(f)));
                    }
                }
                for b in c.into(c.src(f)) {
                    let lhs = self.push(a, c.compose_idx(f, b)).mul(self.pull(b, f));
                    let rhs = self.pull(b, af).mul(self.push(a, f));
                    if lhs != rhs {
                        return fail(format!("push `{}` and pull `{}` do not commute at `{}`", name(a), name(b), name(f)));
                    }
                }
            }
            for b in c.into(c.src(f)) {
                let fb = c.compose_idx(f, b);
                for b2 in c.into(c.src(b)) {
                    let lhs = self.pull(c.compose_idx(b, b2), f);
                    if *lhs != self.pull(b2, fb).mul(self.pull(b, f)) {
                        return fail(format!("pulls along `{}` then `{}` at `{}` do not compose", name(b), name(b2), name(f)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `D(f) = F(dst f)`, `α_* = F(α)`, `β^* = id`.
    pub fn from_functor(base: &FiniteCategory, functor: &LinearFunctor) -> Result<Self> {
        functor.validate(base)?;
        let dims = (0..base.morphism_count()).map(|f| functor.dims[base.dst(f)]).collect();
        let ring = functor.ring;
        Self::new(
            base,
            ring,
            dims,
            |a, _| functor.maps[a].clone(),
            |_, f| Matrix::identity(ring, functor.dims[base.dst(f)]),
        )
    }

    /// `D(f: a -> b) = B(a, b)`, `α_* = B(id, α)`, `β^* = B(β, id)`.
    ///
    /// `covariant(α, a)` is `B(a, src α) -> B(a, dst α)` and
    /// `contravariant(β, b)` is `B(dst β, b) -> B(src β, b)`.
    pub fn from_bifunctor(
        base: &FiniteCategory,
        ring: Ring,
        dim: impl Fn(usize, usize) -> usize,
        contravariant: impl Fn(usize, usize) -> Matrix,
        covariant: impl Fn(usize, usize) -> Matrix,
    ) -> Result<Self> {
        let dims = (0..base.morphism_count()).map(|f| dim(base.src(f), base.dst(f))).collect();
        Self::new(
            base,
            ring,
            dims,
            |a, f| covariant(a, base.src(f)),
            |b, f| contravariant(b, base.dst(f)),
        )
    }

    /// `R^k` at every morphism with identity actions.
    pub fn constant(base: &FiniteCategory, ring: Ring, k: usize) -> Self {
        Self::new_unchecked(
            base,
            ring,
            vec![k; base.morphism_count()],
            |_, _| Matrix::identity(ring, k),
            |_, _| Matrix::identity(ring, k),
        )
        .expect("constant systems have matching shapes")
    }

    /// The isomorphic system `D'(f) = P_f D(f)` for invertible `P_f`, given
    /// as pairs `(P_f, P_f^{-1})`.
    pub fn conjugate(&self, bases: &[(Matrix, Matrix)]) -> NaturalSystem {
        let c = &self.base;
        Self::new_unchecked(
            c,
            self.ring,
            self.dims.clone(),
            |a, f| bases[c.compose_idx(a, f)].0.mul(self.push(a, f)).mul(&bases[f].1),
            |b, f| bases[c.compose_idx(f, b)].0.mul(self.pull(b, f)).mul(&bases[f].1),
        )
        .expect("conjugation keeps shapes")
    }
}

