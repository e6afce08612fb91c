use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    /// `table[g * n + h] = gh`.
    table: Vec<usize>,
    unit: usize,
    inverse: Vec<usize>,
}

/// `{elements, unit, table: [[g, h, gh]]}` with every product listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    pub unit: String,
    pub table: Vec<[String; 3]>,
}

impl FiniteGroup {
    /// Builds the group on `names` with `mul(g, h) = gh`, checking the axioms.
    pub fn new(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid("a group needs at least one element".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let gh = mul(g, h);
                if gh >= n {
                    return Err(Error::Invalid(format!("product of `{}` and `{}` is out of range", names[g], names[h])));
                }
                table.push(gh);
            }
        }
        Self::from_table(names, table)
    }

    fn from_table(names: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = names.len();
        let mul = |g: usize, h: usize| table[g * n + h];
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if mul(mul(g, h), k) != mul(g, mul(h, k)) {
                        return Err(Error::AssocViolation {
                            f: names[k].clone(),
                            g: names[h].clone(),
                            h: names[g].clone(),
                        });
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or_else(|| Error::IdentityViolation("the table has no two-sided unit".into()))?;
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| mul(g, h) == unit && mul(h, g) == unit)
                    .ok_or_else(|| Error::Invalid(format!("`{}` has no inverse", names[g])))
            })
            .collect::<Result<_>>()?;
        Ok(FiniteGroup {
            names,
            table,
            unit,
            inverse,
        })
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        let n = spec.elements.len();
        let index: HashMap<&str, usize> = spec.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != n {
            return Err(Error::Invalid("duplicate element names".into()));
        }
        let find = |s: &str| index.get(s).copied().ok_or_else(|| Error::Invalid(format!("unknown element `{s}`")));
        let mut table = vec![None; n * n];
        for [g, h, gh] in &spec.table {
            let (g, h, gh) = (find(g)?, find(h)?, find(gh)?);
            if table[g * n + h].replace(gh).is_some_and(|old| old != gh) {
                return Err(Error::Invalid(format!(
                    "product of `{}` and `{}` is listed twice",
                    spec.elements[g], spec.elements[h]
                )));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    Error::Invalid(format!(
                        "product of `{}` and `{}` is missing",
                        spec.elements[i / n],
                        spec.elements[i % n]
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let group = Self::from_table(spec.elements.clone(), table)?;
        if group.names[group.unit] != spec.unit {
            return Err(Error::IdentityViolation(format!(
                "`{}` is declared the unit but `{}` is",
                spec.unit, group.names[group.unit]
            )));
        }
        Ok(group)
    }

    pub fn to_spec(&self) -> GroupSpec {
        let n = self.order();
        GroupSpec {
            elements: self.names.clone(),
            unit: self.names[self.unit].clone(),
            table: (0..n * n)
                .map(|i| [self.names[i / n].clone(), self.names[i % n].clone(), self.names[self.table[i]].clone()])
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order() + h]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::Invalid(format!("unknown element `{name}`")))
    }

    /// A generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for g in 0..self.order() {
            if !span[g] {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[self.unit] = true;
        let mut stack = vec![self.unit];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// The one-object category with the elements as morphisms, unit first.
    pub fn as_category(&self) -> crate::fincat::FiniteCategory {
        let n = self.order();
        // reorder so the unit has index 0
        let order: Vec<usize> = std::iter::once(self.unit).chain((0..n).filter(|&g| g != self.unit)).collect();
        let mut pos = vec![0; n];
        for (i, &g) in order.iter().enumerate() {
            pos[g] = i;
        }
        let names: Vec<String> = order.iter().map(|&g| self.names[g].clone()).collect();
        crate::fincat::one_object(&names, |a, b| pos[self.mul(order[a], order[b])]).expect("groups are categories")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `e, g, g2, …` with `g^i g^j = g^{i+j}`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        Self::new(names, |a, b| (a + b) % n).expect("cyclic groups are groups")
    }

    pub fn klein() -> Self {
        let names = ["e", "a", "b", "ab"].map(String::from).to_vec();
        Self::new(names, |a, b| a ^ b).expect("V4 is a group")
    }

    /// Dihedral group of order `2n`: `r^i s^j` stored at `i + n j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let names = (0..2 * n)
            .map(|k| {
                let (i, j) = (k % n, k / n);
                match (i, j) {
                    (0, 0) => "e".to_string(),
                    (0, _) => "s".to_string(),
                    (_, 0) => format!("r{i}"),
                    _ => format!("r{i}s"),
                }
            })
            .collect();
        // s r^i = r^{-i} s
        Self::new(names, |x, y| {
            let (i, j, k, l) = (x % n, x / n, y % n, y / n);
            let k = if j == 1 { (n - k) % n } else { k };
            (i + k) % n + n * ((j + l) % 2)
        })
        .expect("dihedral groups are groups")
    }

    /// The quaternion group `±1, ±i, ±j, ±k`.
    pub fn quaternion() -> Self {
        let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].map(String::from).to_vec();
        // unit quaternions: (sign, axis) with axis 0 = 1
        const T: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        Self::new(names, |x, y| {
            let (s, a) = T[x % 4][y % 4];
            let neg = s ^ (x >= 4) ^ (y >= 4);
            a + if neg { 4 } else { 0 }
        })
        .expect("Q8 is a group")
    }
}

/// A homomorphism of finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    src: FiniteGroup,
    dst: FiniteGroup,
    map: Vec<usize>,
}

/// `{map: {g: h}}`; the unit may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpec {
    pub map: BTreeMap<String, String>,
}

impl GroupHom {
    pub fn new(src: &FiniteGroup, dst: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.order() || map.iter().any(|&h| h >= dst.order()) {
            return Err(Error::TypeMismatch("homomorphism table has the wrong size".into()));
        }
        if map[src.unit()] != dst.unit() {
            return Err(Error::IdentityViolation("homomorphism does not preserve the unit".into()));
        }
        for g in 0..src.order() {
            for h in 0..src.order() {
                if map[src.mul(g, h)] != dst.mul(map[g], map[h]) {
                    return Err(Error::Invalid(format!(
                        "not multiplicative on `{}`, `{}`",
                        src.name(g),
                        src.name(h)
                    )));
                }
            }
        }
        Ok(GroupHom {
            src: src.clone(),
            dst: dst.clone(),
            map,
        })
    }

    pub fn from_spec(src: &FiniteGroup, dst: &FiniteGroup, spec: &HomSpec) -> Result<Self> {
        let mut map = vec![None; src.order()];
        map[src.unit()] = Some(dst.unit());
        for (g, h) in &spec.map {
            map[src.element(g)?] = Some(dst.element(h)?);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(g, h)| h.ok_or_else(|| Error::Invalid(format!("no image given for `{}`", src.name(g)))))
            .collect::<Result<_>>()?;
        Self::new(src, dst, map)
    }

    pub fn to_spec(&self) -> HomSpec {
        HomSpec {
            map: (0..self.src.order())
                .map(|g| (self.src.name(g).to_string(), self.dst.name(self.map[g]).to_string()))
                .collect(),
        }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            src: g.clone(),
            dst: g.clone(),
            map: (0..g.order()).collect(),
        }
    }

    pub fn trivial(src: &FiniteGroup, dst: &FiniteGroup) -> Self {
        GroupHom {
            src: src.clone(),
            dst: dst.clone(),
            map: vec![dst.unit(); src.order()],
        }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GroupHom) -> Result<Self> {
        if first.dst != self.src {
            return Err(Error::TypeMismatch("homomorphisms are not composable".into()));
        }
        Ok(GroupHom {
            src: first.src.clone(),
            dst: self.dst.clone(),
            map: first.map.iter().map(|&g| self.map[g]).collect(),
        })
    }

    pub fn src(&self) -> &FiniteGroup {
        &self.src
    }

    pub fn dst(&self) -> &FiniteGroup {
        &self.dst
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }
}

/// Every homomorphism `src -> dst`, found by assigning images to a
/// generating set.
pub fn all_homomorphisms(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<GroupHom> {
    let gens = src.generators();
    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    loop {
        if let Some(map) = extend(src, dst, &gens, &images) {
            out.push(GroupHom {
                src: src.clone(),
                dst: dst.clone(),
                map,
            });
        }
        // next assignment in odometer order
        let mut i = 0;
        while i < images.len() {
            images[i] += 1;
            if images[i] < dst.order() {
                break;
            }
            images[i] = 0;
            i += 1;
        }
        if i == images.len() {
            return out;
        }
    }
}

fn extend(src: &FiniteGroup, dst: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![None; src.order()];
    map[src.unit()] = Some(dst.unit());
    let mut stack = vec![src.unit()];
    while let Some(x) = stack.pop() {
        let fx = map[x].expect("visited");
        for (&g, &h) in gens.iter().zip(images) {
            let (y, fy) = (src.mul(x, g), dst.mul(fx, h));
            match map[y] {
                None => {
                    map[y] = Some(fy);
                    stack.push(y);
                }
                Some(old) if old != fy => return None,
                Some(_) => {}
            }
        }
    }
    let map: Vec<usize> = map.into_iter().map(|x| x.expect("generators span")).collect();
    GroupHom::new(src, dst, map.clone()).ok().map(|_| map)
}
