//! Diagrams of finite groups, their modules, the diagram bicomplex and the
//! local-to-global spectral sequence.

mod bicomplex;
mod io;
mod local;
mod spectral;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::FiniteCategory;
use crate::groupcoh::{restrict_module, FiniteGroup, GModule, GroupHom};
use crate::linalg::{Matrix, Ring};

pub use bicomplex::{compatible_derivations, diagram_bicomplex, diagram_bicomplex_truncated, diagram_cohomology};
pub use io::DiagramBundle;
pub use local::{local_system, LocalCohomologySystem};
pub use spectral::{compare_e2, local_to_global, local_to_global_with, LocalToGlobal};

/// Degree conventions for the vertical (group) direction.
///
/// `Plain` uses Eilenberg-MacLane degrees. `Cegarra` drops the degree 0
/// cochains, so its local values read `0, Der, H^2, H^3, …`. `Comonad` is
/// `Cegarra` shifted down by one: `Der, H^2, H^3, …` in degrees `0, 1, 2, …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Plain,
    Cegarra,
    Comonad,
}

impl Convention {
    /// Bar cochain degree sitting in vertical degree `q`, if any.
    pub fn bar_degree(self, q: usize) -> Option<usize> {
        match self {
            Convention::Plain => Some(q),
            Convention::Cegarra => (q >= 1).then_some(q),
            Convention::Comonad => Some(q + 1),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Plain => "plain",
            Convention::Cegarra => "cegarra",
            Convention::Comonad => "comonad",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Convention::Plain),
            "cegarra" => Ok(Convention::Cegarra),
            "comonad" => Ok(Convention::Comonad),
            _ => Err(Error::Parse(format!("unknown convention `{s}` (use plain, cegarra or comonad)"))),
        }
    }
}

/// A functor from a finite category to finite groups.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupDiagram {
    index: FiniteCategory,
    groups: Vec<FiniteGroup>,
    maps: Vec<GroupHom>,
}

impl GroupDiagram {
    /// `maps[α]: groups[src α] -> groups[dst α]`; functoriality is checked.
    pub fn new(index: &FiniteCategory, groups: Vec<FiniteGroup>, maps: Vec<GroupHom>) -> Result<Self> {
        if groups.len() != index.object_count() || maps.len() != index.morphism_count() {
            return Err(Error::TypeMismatch("diagram tables do not cover the index category".into()));
        }
        for (a, phi) in maps.iter().enumerate() {
            if *phi.src() != groups[index.src(a)] || *phi.dst() != groups[index.dst(a)] {
                return Err(Error::TypeMismatch(format!(
                    "homomorphism for `{}` has the wrong source or target",
                    index.morphism_name(a)
                )));
            }
        }
        for x in 0..index.object_count() {
            if maps[index.identity(x)] != GroupHom::identity(&groups[x]) {
                return Err(Error::IdentityViolation(format!(
                    "identity of `{}` is not sent to the identity",
                    index.object_name(x)
                )));
            }
        }
        for g in 0..index.morphism_count() {
            for f in index.into(index.src(g)) {
                if maps[index.compose_idx(g, f)] != maps[g].after(&maps[f])? {
                    return Err(Error::Invalid(format!(
                        "diagram does not preserve `{}` ∘ `{}`",
                        index.morphism_name(g),
                        index.morphism_name(f)
                    )));
                }
            }
        }
        Ok(GroupDiagram {
            index: index.clone(),
            groups,
            maps,
        })
    }

    /// Every object sent to `group`, every morphism to the identity.
    pub fn constant(index: &FiniteCategory, group: &FiniteGroup) -> Self {
        GroupDiagram {
            index: index.clone(),
            groups: vec![group.clone(); index.object_count()],
            maps: vec![GroupHom::identity(group); index.morphism_count()],
        }
    }

    pub fn index(&self) -> &FiniteCategory {
        &self.index
    }

    pub fn group(&self, x: usize) -> &FiniteGroup {
        &self.groups[x]
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    pub fn map(&self, a: usize) -> &GroupHom {
        &self.maps[a]
    }
}

/// Modules `M(i)` over `A(i)` with equivariant maps `M(α): M(i) -> M(j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramModule {
    ring: Ring,
    spaces: Vec<GModule>,
    maps: Vec<Matrix>,
}

impl DiagramModule {
    /// Checks functoriality and `M(α)(g m) = A(α)(g) M(α)(m)`.
    pub fn new(diagram: &GroupDiagram, ring: Ring, spaces: Vec<GModule>, maps: Vec<Matrix>) -> Result<Self> {
        let c = diagram.index();
        if spaces.len() != c.object_count() || maps.len() != c.morphism_count() {
            return Err(Error::TypeMismatch("module tables do not cover the index category".into()));
        }
        for (x, m) in spaces.iter().enumerate() {
            if m.group() != diagram.group(x) || m.ring() != ring {
                return Err(Error::TypeMismatch(format!(
                    "module at `{}` is over the wrong group or ring",
                    c.object_name(x)
                )));
            }
        }
        for (a, m) in maps.iter().enumerate() {
            if m.ring() != ring || m.shape() != (spaces[c.dst(a)].dim(), spaces[c.src(a)].dim()) {
                return Err(Error::TypeMismatch(format!("map of `{}` has the wrong shape", c.morphism_name(a))));
            }
        }
        for x in 0..c.object_count() {
            if !maps[c.identity(x)].is_identity() {
                return Err(Error::IdentityViolation(format!(
                    "module map of the identity of `{}` is not the identity",
                    c.object_name(x)
                )));
            }
        }
        for g in 0..c.morphism_count() {
            for f in c.into(c.src(g)) {
                if maps[c.compose_idx(g, f)] != maps[g].mul(&maps[f]) {
                    return Err(Error::Invalid(format!(
                        "module maps do not preserve `{}` ∘ `{}`",
                        c.morphism_name(g),
                        c.morphism_name(f)
                    )));
                }
            }
        }
        for a in 0..c.morphism_count() {
            let (src, dst) = (&spaces[c.src(a)], &spaces[c.dst(a)]);
            let phi = diagram.map(a);
            for g in 0..src.group().order() {
                if maps[a].mul(src.action(g)) != dst.action(phi.apply(g)).mul(&maps[a]) {
                    return Err(Error::ModuleAxiomFailure(format!(
                        "map of `{}` is not equivariant at `{}`",
                        c.morphism_name(a),
                        src.group().name(g)
                    )));
                }
            }
        }
        Ok(DiagramModule { ring, spaces, maps })
    }

    /// The trivial module `R^dim` everywhere with identity maps.
    pub fn trivial(diagram: &GroupDiagram, ring: Ring, dim: usize) -> Self {
        let c = diagram.index();
        DiagramModule {
            ring,
            spaces: diagram.groups().iter().map(|g| GModule::trivial(g, ring, dim)).collect(),
            maps: (0..c.morphism_count()).map(|_| Matrix::identity(ring, dim)).collect(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn space(&self, x: usize) -> &GModule {
        &self.spaces[x]
    }

    pub fn spaces(&self) -> &[GModule] {
        &self.spaces
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    /// `A(f)^* M(dst f)` as a module over `A(src f)`.
    pub fn pulled_back(&self, diagram: &GroupDiagram, f: usize) -> GModule {
        restrict_module(diagram.map(f), &self.spaces[diagram.index().dst(f)]).expect("diagram maps land in A(dst f)")
    }

    fn check_over(&self, diagram: &GroupDiagram) -> Result<()> {
        let ok = self.spaces.len() == diagram.index().object_count()
            && self.spaces.iter().zip(diagram.groups()).all(|(m, g)| m.group() == g);
        if ok {
            Ok(())
        } else {
            Err(Error::TypeMismatch("module is not over this diagram".into()))
        }
    }
}

