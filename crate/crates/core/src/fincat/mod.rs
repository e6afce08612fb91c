//! Finite categories given by composition tables.

mod build;
mod factor;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use build::{arrow, discrete, disjoint_union, one_object, ordinal_sum, poset, terminal};
pub use factor::{factorization_category, FactorizationCategory};

/// Default bound on the number of morphisms accepted by validation.
pub const DEFAULT_MORPHISM_CAP: usize = 64;

/// JSON form of a category.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: BTreeMap<String, String>,
    /// Triples `[g, f, g∘f]`. Composites with an identity may be omitted.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Arrow {
    name: String,
    src: usize,
    dst: usize,
}

/// A validated finite category. Objects and morphisms are addressed by
/// their index in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<usize>,
    /// `table[g * m + f] = g∘f` when `dst f = src g`.
    table: Vec<Option<usize>>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

/// Validates with the default morphism cap.
pub fn validate_category(raw: &CategorySpec) -> Result<FiniteCategory> {
    validate_category_capped(raw, DEFAULT_MORPHISM_CAP)
}

/// Returns the category, or the first axiom violation found.
pub fn validate_category_capped(raw: &CategorySpec, cap: usize) -> Result<FiniteCategory> {
    let (cat, mut violations) = assemble(raw, cap)?;
    if violations.is_empty() {
        Ok(cat)
    } else {
        Err(violations.swap_remove(0))
    }
}

/// Every axiom violation of `raw`, in a deterministic order. Structural
/// errors (unknown names, missing composites) come back as a single entry.
pub fn category_violations(raw: &CategorySpec) -> Vec<Error> {
    match assemble(raw, DEFAULT_MORPHISM_CAP) {
        Ok((_, v)) => v,
        Err(e) => vec![e],
    }
}

fn assemble(raw: &CategorySpec, cap: usize) -> Result<(FiniteCategory, Vec<Error>)> {
    if raw.morphisms.len() > cap {
        return Err(Error::TooLarge {
            what: format!("category with {} morphisms", raw.morphisms.len()),
            bound: cap,
        });
    }
    let mut object_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if object_index.insert(o.clone(), i).is_some() {
            return Err(Error::Invalid(format!("duplicate object `{o}`")));
        }
    }
    let obj = |name: &str| object_index.get(name).copied().ok_or_else(|| Error::UnknownObject(name.into()));
    let mut arrows = Vec::new();
    let mut morphism_index = HashMap::new();
    for (i, m) in raw.morphisms.iter().enumerate() {
        if morphism_index.insert(m.name.clone(), i).is_some() {
            return Err(Error::Invalid(format!("duplicate morphism `{}`", m.name)));
        }
        arrows.push(Arrow {
            name: m.name.clone(),
            src: obj(&m.src)?,
            dst: obj(&m.dst)?,
        });
    }
    let mor = |name: &str| morphism_index.get(name).copied().ok_or_else(|| Error::UnknownMorphism(name.into()));
    let mut identity = vec![usize::MAX; raw.objects.len()];
    for (o, m) in &raw.identities {
        let (o, m_idx) = (obj(o)?, mor(m)?);
        if arrows[m_idx].src != o || arrows[m_idx].dst != o {
            return Err(Error::IdentityViolation(format!(
                "identity `{m}` of `{}` is not an endomorphism of it",
                raw.objects[o]
            )));
        }
        identity[o] = m_idx;
    }
    if let Some(o) = identity.iter().position(|&i| i == usize::MAX) {
        return Err(Error::IdentityViolation(format!("object `{}` has no identity", raw.objects[o])));
    }
    let m = arrows.len();
    let mut table = vec![None; m * m];
    for [g, f, gf] in &raw.compose {
        let (gi, fi, gfi) = (mor(g)?, mor(f)?, mor(gf)?);
        if arrows[fi].dst != arrows[gi].src {
            return Err(Error::TypeMismatch(format!("`{g}` ∘ `{f}` is listed but they are not composable")));
        }
        if arrows[gfi].src != arrows[fi].src || arrows[gfi].dst != arrows[gi].dst {
            return Err(Error::TypeMismatch(format!(
                "`{g}` ∘ `{f}` = `{gf}` has the wrong source or target"
            )));
        }
        match table[gi * m + fi] {
            Some(prev) if prev != gfi => {
                return Err(Error::Invalid(format!("`{g}` ∘ `{f}` is listed twice with different values")));
            }
            _ => table[gi * m + fi] = Some(gfi),
        }
    }
    let mut violations = Vec::new();
    // Omitted identity composites follow from the identity law; listed
    // ones are checked against it.
    for f in 0..m {
        let (s, d) = (arrows[f].src, arrows[f].dst);
        for (g, h, side) in [(identity[d], f, "left"), (f, identity[s], "right")] {
            match table[g * m + h] {
                None => table[g * m + h] = Some(f),
                Some(x) if x != f => violations.push(Error::IdentityViolation(format!(
                    "{side} identity law fails for `{}`: `{}` ∘ `{}` = `{}`",
                    arrows[f].name, arrows[g].name, arrows[h].name, arrows[x].name
                ))),
                _ => {}
            }
        }
    }
    for g in 0..m {
        for f in 0..m {
            if arrows[f].dst == arrows[g].src && table[g * m + f].is_none() {
                return Err(Error::Invalid(format!(
                    "composite `{}` ∘ `{}` is not listed",
                    arrows[g].name, arrows[f].name
                )));
            }
        }
    }
    let cat = FiniteCategory {
        objects: raw.objects.clone(),
        arrows,
        identity,
        table,
        object_index,
        morphism_index,
    };
    if violations.is_empty() {
        violations.extend(cat.associativity_violations());
    }
    Ok((cat, violations))
}

impl FiniteCategory {
    fn associativity_violations(&self) -> Vec<Error> {
        let m = self.arrows.len();
        let mut out = Vec::new();
        for f in 0..m {
            for g in self.out_of(self.arrows[f].dst) {
                let gf = self.compose_idx(g, f);
                for h in self.out_of(self.arrows[g].dst) {
                    if self.compose_idx(self.compose_idx(h, g), f) != self.compose_idx(h, gf) {
                        out.push(Error::AssocViolation {
                            f: self.arrows[f].name.clone(),
                            g: self.arrows[g].name.clone(),
                            h: self.arrows[h].name.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Builds a category from closures, then validates it.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identity: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteCategory> {
        let mut spec = CategorySpec {
            objects: objects.clone(),
            ..Default::default()
        };
        for (name, s, d) in &morphisms {
            spec.morphisms.push(MorphismSpec {
                name: name.clone(),
                src: objects[*s].clone(),
                dst: objects[*d].clone(),
            });
        }
        for (o, &i) in identity.iter().enumerate() {
            spec.identities.insert(objects[o].clone(), morphisms[i].0.clone());
        }
        for (gi, g) in morphisms.iter().enumerate() {
            for (fi, f) in morphisms.iter().enumerate() {
                if f.2 == g.1 {
                    let gf = compose(gi, fi);
                    spec.compose.push([g.0.clone(), f.0.clone(), morphisms[gf].0.clone()]);
                }
            }
        }
        validate_category_capped(&spec, usize::MAX)
    }

    pub fn to_spec(&self) -> CategorySpec {
        let mut spec = CategorySpec {
            objects: self.objects.clone(),
            ..Default::default()
        };
        for a in &self.arrows {
            spec.morphisms.push(MorphismSpec {
                name: a.name.clone(),
                src: self.objects[a.src].clone(),
                dst: self.objects[a.dst].clone(),
            });
        }
        for (o, &i) in self.identity.iter().enumerate() {
            spec.identities.insert(self.objects[o].clone(), self.arrows[i].name.clone());
        }
        for g in 0..self.arrows.len() {
            for f in 0..self.arrows.len() {
                if let Some(gf) = self.compose(g, f) {
                    spec.compose.push([
                        self.arrows[g].name.clone(),
                        self.arrows[f].name.clone(),
                        self.arrows[gf].name.clone(),
                    ]);
                }
            }
        }
        spec
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.arrows[f].name
    }

    pub fn object(&self, name: &str) -> Result<usize> {
        self.object_index.get(name).copied().ok_or_else(|| Error::UnknownObject(name.into()))
    }

    pub fn morphism(&self, name: &str) -> Result<usize> {
        self.morphism_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(name.into()))
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.arrows[f].dst
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.arrows[f].src] == f
    }

    /// `g∘f`, or `None` when `dst f != src g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.arrows.len() + f]
    }

    /// `g∘f` for a composable pair.
    pub fn compose_idx(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).unwrap_or_else(|| {
            panic!("`{}` ∘ `{}` is not composable", self.arrows[g].name, self.arrows[f].name)
        })
    }

    /// Morphisms `a -> b` in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| self.arrows[f].src == a && self.arrows[f].dst == b)
            .collect()
    }

    /// Morphisms with source `a`.
    pub fn out_of(&self, a: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].src == a).collect()
    }

    /// Morphisms with target `b`.
    pub fn into(&self, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].dst == b).collect()
    }
}

/// A composable chain `α_1, …, α_p` with `α_k : i_k -> i_{k-1}`, so that the
/// composite `α_1 ∘ … ∘ α_p` runs `i_p -> i_0`. `arrows[0]` is `α_1`, the
/// arrow at the target end. A 0-chain is the object `i_0` alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub arrows: Vec<usize>,
    /// `i_0, …, i_p`.
    pub objects: Vec<usize>,
    pub composite: usize,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Target `i_0` of the composite.
    pub fn target(&self) -> usize {
        self.objects[0]
    }

    /// Source `i_p` of the composite.
    pub fn source(&self) -> usize {
        *self.objects.last().expect("chains have at least one object")
    }
}

/// All `p`-chains, ordered lexicographically by `(α_1, …, α_p)`.
pub fn chains(cat: &FiniteCategory, p: usize) -> Vec<Chain> {
    let mut level: Vec<Chain> = (0..cat.object_count())
        .map(|o| Chain {
            arrows: Vec::new(),
            objects: vec![o],
            composite: cat.identity(o),
        })
        .collect();
    for k in 0..p {
        let mut next = Vec::new();
        if k == 0 {
            for f in 0..cat.morphism_count() {
                next.push(Chain {
                    arrows: vec![f],
                    objects: vec![cat.dst(f), cat.src(f)],
                    composite: f,
                });
            }
        } else {
            for c in &level {
                for a in cat.into(c.source()) {
                    let mut arrows = c.arrows.clone();
                    arrows.push(a);
                    let mut objects = c.objects.clone();
                    objects.push(cat.src(a));
                    next.push(Chain {
                        arrows,
                        objects,
                        composite: cat.compose_idx(c.composite, a),
                    });
                }
            }
        }
        level = next;
    }
    level
}

/// The object with exactly one morphism to every object, if any.
pub fn initial_object(cat: &FiniteCategory) -> Option<usize> {
    let n = cat.object_count();
    (0..n).find(|&i| (0..n).all(|j| cat.hom(i, j).len() == 1))
}

/// The category `y/I`: objects are morphisms `f: y -> x`, and a morphism
/// `f -> g` is an `h` with `h∘f = g`. Names are `h@f`.
pub fn under_category(cat: &FiniteCategory, y: usize) -> Result<FiniteCategory> {
    if y >= cat.object_count() {
        return Err(Error::UnknownObject(format!("#{y}")));
    }
    let objs = cat.out_of(y);
    let pos: HashMap<usize, usize> = objs.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let names: Vec<String> = objs.iter().map(|&f| cat.morphism_name(f).to_string()).collect();
    let mut mors = Vec::new();
    // (h, f) for each morphism h@f, plus its target index.
    let mut data = Vec::new();
    let mut lookup = HashMap::new();
    for (fi, &f) in objs.iter().enumerate() {
        for h in cat.out_of(cat.dst(f)) {
            let g = cat.compose_idx(h, f);
            lookup.insert((h, f), mors.len());
            mors.push((format!("{}@{}", cat.morphism_name(h), cat.morphism_name(f)), fi, pos[&g]));
            data.push((h, f));
        }
    }
    let identity = objs.iter().map(|&f| lookup[&(cat.identity(cat.dst(f)), f)]).collect();
    FiniteCategory::from_parts(names, mors, identity, |a, b| {
        let (h2, _) = data[a];
        let (h1, f) = data[b];
        lookup[&(cat.compose_idx(h2, h1), f)]
    })
}

/// A functor between finite categories, given on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    /// Checks sources, targets, identities and composition exhaustively.
    pub fn validate(&self, src: &FiniteCategory, dst: &FiniteCategory) -> Result<()> {
        if self.objects.len() != src.object_count() || self.morphisms.len() != src.morphism_count() {
            return Err(Error::TypeMismatch("functor tables do not cover the source category".into()));
        }
        for f in 0..src.morphism_count() {
            let g = self.morphisms[f];
            if g >= dst.morphism_count()
                || dst.src(g) != self.objects[src.src(f)]
                || dst.dst(g) != self.objects[src.dst(f)]
            {
                return Err(Error::TypeMismatch(format!(
                    "image of `{}` has the wrong source or target",
                    src.morphism_name(f)
                )));
            }
        }
        for o in 0..src.object_count() {
            if self.morphisms[src.identity(o)] != dst.identity(self.objects[o]) {
                return Err(Error::IdentityViolation(format!(
                    "functor does not preserve the identity of `{}`",
                    src.object_name(o)
                )));
            }
        }
        for g in 0..src.morphism_count() {
            for f in src.into(src.src(g)) {
                let lhs = self.morphisms[src.compose_idx(g, f)];
                let rhs = dst.compose_idx(self.morphisms[g], self.morphisms[f]);
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "functor does not preserve `{}` ∘ `{}`",
                        src.morphism_name(g),
                        src.morphism_name(f)
                    )));
                }
            }
        }
        Ok(())
    }
}

