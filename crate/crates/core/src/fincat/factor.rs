//! The category of factorizations.

use std::collections::HashMap;

use super::FiniteCategory;
use crate::error::{Error, Result};

/// A morphism `(α, β): f -> α∘f∘β` of the factorization category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorMorphism {
    pub alpha: usize,
    pub beta: usize,
    pub source: usize,
    pub target: usize,
}

/// Objects are the morphisms of `base`; maps `f -> g` are pairs `(α, β)`
/// with `α∘f∘β = g`, composed as `(α', β')(α, β) = (α'α, ββ')`.
#[derive(Clone, Debug)]
pub struct FactorizationCategory {
    base: FiniteCategory,
    morphisms: Vec<FactorMorphism>,
    index: HashMap<(usize, usize, usize), usize>,
}

pub fn factorization_category(base: &FiniteCategory) -> FactorizationCategory {
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    for f in 0..base.morphism_count() {
        for alpha in base.out_of(base.dst(f)) {
            for beta in base.into(base.src(f)) {
                let target = base.compose_idx(base.compose_idx(alpha, f), beta);
                index.insert((alpha, f, beta), morphisms.len());
                morphisms.push(FactorMorphism {
                    alpha,
                    beta,
                    source: f,
                    target,
                });
            }
        }
    }
    FactorizationCategory {
        base: base.clone(),
        morphisms,
        index,
    }
}

impl FactorizationCategory {
    pub fn base(&self) -> &FiniteCategory {
        &self.base
    }

    pub fn object_count(&self) -> usize {
        self.base.morphism_count()
    }

    pub fn morphisms(&self) -> &[FactorMorphism] {
        &self.morphisms
    }

    /// Index of `(α, β)` out of `f`.
    pub fn find(&self, alpha: usize, f: usize, beta: usize) -> Option<usize> {
        self.index.get(&(alpha, f, beta)).copied()
    }

    pub fn identity(&self, f: usize) -> usize {
        let b = &self.base;
        self.index[&(b.identity(b.dst(f)), f, b.identity(b.src(f)))]
    }

    /// `second ∘ first`, when the target of `first` is the source of `second`.
    pub fn compose(&self, second: usize, first: usize) -> Option<usize> {
        let (s, f) = (self.morphisms[second], self.morphisms[first]);
        if f.target != s.source {
            return None;
        }
        let alpha = self.base.compose_idx(s.alpha, f.alpha);
        let beta = self.base.compose_idx(f.beta, s.beta);
        self.find(alpha, f.source, beta)
    }

    /// Maps `f -> g`.
    pub fn hom(&self, f: usize, g: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&i| self.morphisms[i].source == f && self.morphisms[i].target == g)
            .collect()
    }

    /// The factorization category as a validated [`FiniteCategory`].
    /// Morphism names are `(α,β)@f`.
    pub fn to_category(&self, cap: usize) -> Result<FiniteCategory> {
        if self.morphisms.len() > cap {
            return Err(Error::TooLarge {
                what: format!("factorization category with {} morphisms", self.morphisms.len()),
                bound: cap,
            });
        }
        let b = &self.base;
        let objects = (0..b.morphism_count()).map(|f| b.morphism_name(f).to_string()).collect();
        let mors = self
            .morphisms
            .iter()
            .map(|m| {
                let name = format!(
                    "({},{})@{}",
                    b.morphism_name(m.alpha),
                    b.morphism_name(m.beta),
                    b.morphism_name(m.source)
                );
                (name, m.source, m.target)
            })
            .collect();
        let identity = (0..b.morphism_count()).map(|f| self.identity(f)).collect();
        FiniteCategory::from_parts(objects, mors, identity, |g, f| {
            self.compose(g, f).expect("composable by construction")
        })
    }
}
