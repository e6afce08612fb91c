//! JSON form of ψ-rings: a monoid, then either finite carrier tables with
//! `psi` maps or a symbolic free ring, and optionally a module.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::derive::additive_generators;
use super::finite::{FiniteRing, PsiModule, PsiRing};
use super::free::{FreePsiRing, DEFAULT_DEGREE_CAP};
use super::monoid::{fill_table, ActionMonoid, MonoidSpec};
use crate::error::{Error, Result};
use crate::linalg::{matrix_from_entries, matrix_to_entries, Entry, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiFile {
    pub monoid: MonoidSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<CarrierSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<SymbolicSpec>,
    /// `psi[m][x] = Ψ^m(x)`; omitted elements are fixed.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub psi: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<PsiModuleSpec>,
}

/// Sums with `zero` and products with `zero` or `one` may be omitted, as
/// may the mirror image of a listed entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierSpec {
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    #[serde(default)]
    pub add: Vec<[String; 3]>,
    #[serde(default)]
    pub mul: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicSpec {
    pub generators: Vec<String>,
    #[serde(default = "default_cap")]
    pub degree_cap: u32,
}

fn default_cap() -> u32 {
    DEFAULT_DEGREE_CAP
}

/// `F_p^dimension`. `action` must cover a set of additive generators of
/// the ring (the unit defaults to the identity); omitted `psi` are
/// identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiModuleSpec {
    pub prime: u32,
    pub dimension: usize,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub psi: BTreeMap<String, Vec<Vec<Entry>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PsiObject {
    Finite { ring: PsiRing, module: Option<PsiModule> },
    Free(FreePsiRing),
}

impl PsiFile {
    pub fn load(&self) -> Result<PsiObject> {
        let monoid = ActionMonoid::from_spec(&self.monoid)?;
        match (&self.carrier, &self.symbolic) {
            (Some(c), None) => {
                let ring = self.finite_ring(monoid, c)?;
                let module = self.module.as_ref().map(|m| load_module(&ring, m)).transpose()?;
                Ok(PsiObject::Finite { ring, module })
            }
            (None, Some(s)) => {
                if !self.psi.is_empty() || self.module.is_some() {
                    return Err(Error::Parse("a symbolic ring takes neither `psi` nor `module`".into()));
                }
                let free = FreePsiRing::new(s.generators.clone(), monoid, s.degree_cap);
                free.validate()?;
                Ok(PsiObject::Free(free))
            }
            _ => Err(Error::Parse("give exactly one of `carrier` and `symbolic`".into())),
        }
    }

    fn finite_ring(&self, monoid: ActionMonoid, c: &CarrierSpec) -> Result<PsiRing> {
        let (ring, psi) = self.finite_parts(&monoid, c)?;
        PsiRing::new(monoid, ring, psi)
    }

    /// The monoid, carrier and ψ-maps of a finite file without checking the
    /// ψ-axioms.
    pub fn unchecked_parts(&self) -> Result<(ActionMonoid, FiniteRing, Vec<Vec<usize>>)> {
        let monoid = ActionMonoid::from_spec(&self.monoid)?;
        let c = self
            .carrier
            .as_ref()
            .ok_or_else(|| Error::Parse("the file has no finite `carrier`".into()))?;
        let (ring, psi) = self.finite_parts(&monoid, c)?;
        Ok((monoid, ring, psi))
    }

    fn finite_parts(&self, monoid: &ActionMonoid, c: &CarrierSpec) -> Result<(FiniteRing, Vec<Vec<usize>>)> {
        let names = &c.elements;
        let find = |s: &str| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::Parse(format!("unknown ring element `{s}`")))
        };
        let (zero, one) = (find(&c.zero)?, find(&c.one)?);
        let n = names.len();
        let add = fill_table(names, &c.add, "sum", |a, b| {
            if a == zero {
                Some(b)
            } else if b == zero {
                Some(a)
            } else {
                None
            }
        })?;
        let mul = fill_table(names, &c.mul, "product", |a, b| {
            if a == zero || b == zero {
                Some(zero)
            } else if a == one {
                Some(b)
            } else if b == one {
                Some(a)
            } else {
                None
            }
        })?;
        let ring = FiniteRing::new(names.clone(), |a, b| add[a * n + b], |a, b| mul[a * n + b])?;
        if ring.zero() != zero || ring.one() != one {
            return Err(Error::Invalid("the declared zero or one does not behave as one".into()));
        }
        let mut psi: Vec<Vec<usize>> = vec![(0..n).collect(); monoid.order()];
        for (m, map) in &self.psi {
            let m = monoid.element(m)?;
            for (x, y) in map {
                psi[m][find(x)?] = find(y)?;
            }
        }
        Ok((ring, psi))
    }

    /// Writes each unordered table entry once, skipping the defaults.
    pub fn from_finite(ring: &PsiRing, module: Option<&PsiModule>) -> Self {
        let r = ring.ring();
        let n = r.order();
        let name = |x: usize| r.name(x).to_string();
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for a in 0..n {
            for b in a..n {
                if a != r.zero() && b != r.zero() {
                    add.push([name(a), name(b), name(r.add(a, b))]);
                    if a != r.one() && b != r.one() {
                        mul.push([name(a), name(b), name(r.mul(a, b))]);
                    }
                }
            }
        }
        let monoid = ring.monoid();
        let mut psi = BTreeMap::new();
        for m in 1..monoid.order() {
            let moved: BTreeMap<String, String> =
                (0..n).filter(|&x| ring.psi(m, x) != x).map(|x| (name(x), name(ring.psi(m, x)))).collect();
            if !moved.is_empty() {
                psi.insert(monoid.name(m).to_string(), moved);
            }
        }
        let module = module.map(|m| PsiModuleSpec {
            prime: m.prime(),
            dimension: m.dim(),
            action: additive_generators(r)
                .into_iter()
                .map(|x| (name(x), matrix_to_entries(m.action(x))))
                .collect(),
            psi: (1..monoid.order())
                .filter(|&s| !m.psi(s).is_identity())
                .map(|s| (monoid.name(s).to_string(), matrix_to_entries(m.psi(s))))
                .collect(),
        });
        PsiFile {
            monoid: monoid.to_spec(),
            carrier: Some(CarrierSpec {
                elements: r.names().to_vec(),
                zero: name(r.zero()),
                one: name(r.one()),
                add,
                mul,
            }),
            symbolic: None,
            psi,
            module,
        }
    }

    pub fn from_free(free: &FreePsiRing) -> Self {
        PsiFile {
            monoid: free.monoid().to_spec(),
            carrier: None,
            symbolic: Some(SymbolicSpec {
                generators: free.generators().to_vec(),
                degree_cap: free.degree_cap(),
            }),
            psi: BTreeMap::new(),
            module: None,
        }
    }
}

fn load_module(ring: &PsiRing, spec: &PsiModuleSpec) -> Result<PsiModule> {
    let field = Ring::prime(spec.prime)?;
    let dim = spec.dimension;
    let read = |rows: &[Vec<Entry>], what: &str| {
        matrix_from_entries(field, dim, dim, rows).map_err(|e| Error::Parse(format!("{what}: {e}")))
    };
    let r = ring.ring();
    let mut gens = Vec::new();
    for (x, rows) in &spec.action {
        gens.push((r.element(x)?, read(rows, &format!("action of `{x}`"))?));
    }
    if !gens.iter().any(|(x, _)| *x == r.one()) {
        gens.push((r.one(), crate::linalg::Matrix::identity(field, dim)));
    }
    let monoid = ring.monoid();
    let mut psi = vec![None; monoid.order()];
    for (m, rows) in &spec.psi {
        psi[monoid.element(m)?] = Some(read(rows, &format!("Ψ^{m} on the module"))?);
    }
    PsiModule::from_generators(ring, spec.prime, dim, &gens, psi)
}
