//! JSON bundle holding a whole diagram and module.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DiagramModule, GroupDiagram};
use crate::error::{Error, Result};
use crate::fincat::{validate_category, CategorySpec};
use crate::groupcoh::{FiniteGroup, GModule, GroupHom, GroupSpec, HomSpec, ModuleSpec};
use crate::linalg::{matrix_from_entries, matrix_to_entries, Entry, Matrix, Ring};

/// Index category, groups and modules by object name, homomorphisms and
/// module maps by morphism name.
///
/// A homomorphism may be omitted when source and target carry the same
/// group (it is then the identity), and a module map when both ends have
/// the same dimension (again the identity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramBundle {
    pub category: CategorySpec,
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub homomorphisms: BTreeMap<String, HomSpec>,
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub module_maps: BTreeMap<String, Vec<Vec<Entry>>>,
}

impl DiagramBundle {
    pub fn load(&self) -> Result<(GroupDiagram, DiagramModule)> {
        let cat = validate_category(&self.category)?;
        let object = |x: usize, what: &str| {
            let name = cat.object_name(x);
            Error::Parse(format!("no {what} given for object `{name}`"))
        };
        let groups: Vec<FiniteGroup> = (0..cat.object_count())
            .map(|x| {
                let spec = self.groups.get(cat.object_name(x)).ok_or_else(|| object(x, "group"))?;
                FiniteGroup::from_spec(spec).map_err(|e| Error::Parse(format!("group of `{}`: {e}", cat.object_name(x))))
            })
            .collect::<Result<_>>()?;
        for name in self.groups.keys().chain(self.modules.keys()) {
            cat.object(name)?;
        }
        for name in self.homomorphisms.keys().chain(self.module_maps.keys()) {
            cat.morphism(name)?;
        }
        let maps: Vec<GroupHom> = (0..cat.morphism_count())
            .map(|f| {
                let (s, t) = (&groups[cat.src(f)], &groups[cat.dst(f)]);
                let name = cat.morphism_name(f);
                match self.homomorphisms.get(name) {
                    Some(spec) => GroupHom::from_spec(s, t, spec),
                    None if s == t => Ok(GroupHom::identity(s)),
                    None => Err(Error::Parse("no homomorphism given".into())),
                }
                .map_err(|e| Error::Parse(format!("homomorphism of `{name}`: {e}")))
            })
            .collect::<Result<_>>()?;
        let diagram = GroupDiagram::new(&cat, groups, maps)?;
        let spaces: Vec<GModule> = (0..cat.object_count())
            .map(|x| {
                let spec = self.modules.get(cat.object_name(x)).ok_or_else(|| object(x, "module"))?;
                GModule::from_spec(diagram.group(x), spec)
                    .map_err(|e| Error::Parse(format!("module of `{}`: {e}", cat.object_name(x))))
            })
            .collect::<Result<_>>()?;
        let ring: Ring = spaces.first().map(GModule::ring).unwrap_or(Ring::Integers);
        let module_maps: Vec<Matrix> = (0..cat.morphism_count())
            .map(|f| {
                let (s, t) = (spaces[cat.src(f)].dim(), spaces[cat.dst(f)].dim());
                let name = cat.morphism_name(f);
                match self.module_maps.get(name) {
                    Some(rows) => matrix_from_entries(ring, t, s, rows),
                    None if s == t => Ok(Matrix::identity(ring, s)),
                    None => Err(Error::Parse("no matrix given".into())),
                }
                .map_err(|e| Error::Parse(format!("module map of `{name}`: {e}")))
            })
            .collect::<Result<_>>()?;
        let module = DiagramModule::new(&diagram, ring, spaces, module_maps)?;
        Ok((diagram, module))
    }

    /// Writes every homomorphism and module map that is not an identity.
    pub fn from_parts(a: &GroupDiagram, m: &DiagramModule) -> Self {
        let c = a.index();
        let mut homomorphisms = BTreeMap::new();
        let mut module_maps = BTreeMap::new();
        for f in 0..c.morphism_count() {
            let name = c.morphism_name(f).to_string();
            let (s, t) = (c.src(f), c.dst(f));
            if a.group(s) != a.group(t) || *a.map(f) != GroupHom::identity(a.group(s)) {
                homomorphisms.insert(name.clone(), a.map(f).to_spec());
            }
            if !m.map(f).is_identity() {
                module_maps.insert(name, matrix_to_entries(m.map(f)));
            }
        }
        DiagramBundle {
            category: c.to_spec(),
            groups: (0..c.object_count())
                .map(|x| (c.object_name(x).to_string(), a.group(x).to_spec()))
                .collect(),
            homomorphisms,
            modules: (0..c.object_count())
                .map(|x| (c.object_name(x).to_string(), m.space(x).to_spec()))
                .collect(),
            module_maps,
        }
    }
}
