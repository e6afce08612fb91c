//! JSON form of natural systems. Omitted actions are identities.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::NaturalSystem;
use crate::error::{Error, Result};
use crate::fincat::FiniteCategory;
use crate::linalg::{matrix_from_entries, matrix_to_entries, Entry, Matrix, Ring};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalSystemSpec {
    /// `z`, `q` or `f<p>`.
    pub ring: String,
    /// Rank used for every morphism missing from `values`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<usize>,
    #[serde(default)]
    pub values: BTreeMap<String, usize>,
    #[serde(default)]
    pub push: Vec<ActionSpec>,
    #[serde(default)]
    pub pull: Vec<ActionSpec>,
}

/// The action of `morphism` on the value at `at`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub morphism: String,
    pub at: String,
    pub matrix: Vec<Vec<Entry>>,
}

impl NaturalSystem {
    pub fn from_spec(base: &FiniteCategory, spec: &NaturalSystemSpec) -> Result<Self> {
        let ring: Ring = spec.ring.parse()?;
        let m = base.morphism_count();
        let mut dims = vec![None; m];
        for (name, &d) in &spec.values {
            dims[base.morphism(name)?] = Some(d);
        }
        let dims: Vec<usize> = dims
            .into_iter()
            .enumerate()
            .map(|(f, d)| {
                d.or(spec.constant).ok_or_else(|| {
                    Error::Parse(format!("no value given for morphism `{}`", base.morphism_name(f)))
                })
            })
            .collect::<Result<_>>()?;
        let read = |actions: &[ActionSpec], kind: &str| -> Result<BTreeMap<(usize, usize), Matrix>> {
            let mut out = BTreeMap::new();
            for a in actions {
                let (g, f) = (base.morphism(&a.morphism)?, base.morphism(&a.at)?);
                let target = match kind {
                    "push" => base.compose(g, f),
                    _ => base.compose(f, g),
                }
                .ok_or_else(|| {
                    Error::TypeMismatch(format!("{kind} of `{}` at `{}` is not defined", a.morphism, a.at))
                })?;
                let mat = matrix_from_entries(ring, dims[target], dims[f], &a.matrix)
                    .map_err(|e| Error::Parse(format!("{kind} of `{}` at `{}`: {e}", a.morphism, a.at)))?;
                out.insert((g, f), mat);
            }
            Ok(out)
        };
        let push = read(&spec.push, "push")?;
        let pull = read(&spec.pull, "pull")?;
        let mut missing = None;
        let mut action = |table: &BTreeMap<(usize, usize), Matrix>, g: usize, f: usize, target: usize| {
            table.get(&(g, f)).cloned().unwrap_or_else(|| {
                if dims[target] != dims[f] && missing.is_none() {
                    missing = Some(format!(
                        "missing action of `{}` at `{}` between different ranks",
                        base.morphism_name(g),
                        base.morphism_name(f)
                    ));
                }
                Matrix::identity(ring, dims[f]).row_range(0, dims[f].min(dims[target]))
            })
        };
        let sys = {
            let mut push_m = BTreeMap::new();
            let mut pull_m = BTreeMap::new();
            for f in 0..m {
                for a in base.out_of(base.dst(f)) {
                    push_m.insert((a, f), action(&push, a, f, base.compose_idx(a, f)));
                }
                for b in base.into(base.src(f)) {
                    pull_m.insert((b, f), action(&pull, b, f, base.compose_idx(f, b)));
                }
            }
            if let Some(msg) = missing {
                return Err(Error::Parse(msg));
            }
            NaturalSystem::new(base, ring, dims.clone(), |a, f| push_m[&(a, f)].clone(), |b, f| pull_m[&(b, f)].clone())?
        };
        Ok(sys)
    }

    /// Serializes every non-identity action.
    pub fn to_spec(&self) -> NaturalSystemSpec {
        let c = self.base();
        let mut spec = NaturalSystemSpec {
            ring: self.ring().to_string().to_lowercase(),
            ..Default::default()
        };
        for f in 0..c.morphism_count() {
            spec.values.insert(c.morphism_name(f).to_string(), self.dim(f));
        }
        for f in 0..c.morphism_count() {
            for a in c.out_of(c.dst(f)) {
                let mat = self.push(a, f);
                if !mat.is_identity() {
                    spec.push.push(ActionSpec {
                        morphism: c.morphism_name(a).into(),
                        at: c.morphism_name(f).into(),
                        matrix: matrix_to_entries(mat),
                    });
                }
            }
            for b in c.into(c.src(f)) {
                let mat = self.pull(b, f);
                if !mat.is_identity() {
                    spec.pull.push(ActionSpec {
                        morphism: c.morphism_name(b).into(),
                        at: c.morphism_name(f).into(),
                        matrix: matrix_to_entries(mat),
                    });
                }
            }
        }
        spec
    }
}
