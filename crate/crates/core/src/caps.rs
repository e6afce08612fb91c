//! Size limits applied to jobs read from files. The library functions
//! themselves are uncapped.

use std::str::FromStr;

use serde::Serialize;

use crate::diagramcoh::{Convention, DiagramModule, GroupDiagram};
use crate::error::{Error, Result};
use crate::fincat::FiniteCategory;
use crate::groupcoh::GModule;
use crate::natsys::NaturalSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub objects: usize,
    pub morphisms: usize,
    pub order: usize,
    pub dim: usize,
    /// Largest total degree `n_max`.
    pub degree: usize,
    /// Largest single cochain space that may be built.
    pub cochain: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            objects: 4,
            morphisms: 16,
            order: 8,
            dim: 4,
            degree: 6,
            cochain: 8192,
        }
    }
}

/// `key=value` pairs separated by commas, applied over the defaults.
impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut caps = Caps::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap `{item}` is not of the form key=value")))?;
            let value: usize = value.trim().parse().map_err(|_| Error::Parse(format!("cap `{item}` needs a number")))?;
            let slot = match key.trim() {
                "objects" => &mut caps.objects,
                "morphisms" => &mut caps.morphisms,
                "order" => &mut caps.order,
                "dim" => &mut caps.dim,
                "degree" => &mut caps.degree,
                "cochain" => &mut caps.cochain,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            };
            *slot = value;
        }
        Ok(caps)
    }
}

fn over(what: impl Into<String>, value: usize, bound: usize) -> Result<()> {
    if value > bound {
        Err(Error::TooLarge {
            what: format!("{} ({value})", what.into()),
            bound,
        })
    } else {
        Ok(())
    }
}

/// Number of chains of each length `0..=n`, saturating.
pub fn chain_counts(cat: &FiniteCategory, n: usize) -> Vec<usize> {
    let m = cat.morphism_count();
    let mut out = vec![cat.object_count()];
    // ending[f]: chains of the current length whose last arrow is f
    let mut ending = vec![1usize; m];
    for p in 1..=n {
        if p > 1 {
            ending = (0..m)
                .map(|g| {
                    cat.into(cat.src(g)).into_iter().fold(0usize, |acc, f| acc.saturating_add(ending[f]))
                })
                .collect();
        }
        out.push(ending.iter().fold(0usize, |acc, &x| acc.saturating_add(x)));
    }
    out
}

impl Caps {
    pub fn check_degree(&self, n_max: usize) -> Result<()> {
        over("degree", n_max, self.degree)
    }

    pub fn check_category(&self, cat: &FiniteCategory) -> Result<()> {
        over("object count", cat.object_count(), self.objects)?;
        over("morphism count", cat.morphism_count(), self.morphisms)
    }

    /// Bounds the cochains `C^0, …, C^{n_max+1}`.
    pub fn check_bw(&self, sys: &NaturalSystem, n_max: usize) -> Result<()> {
        self.check_degree(n_max)?;
        self.check_category(sys.base())?;
        let top = sys.dims().iter().copied().max().unwrap_or(0);
        for (p, c) in chain_counts(sys.base(), n_max + 1).into_iter().enumerate() {
            over(format!("cochains in degree {p}"), c.saturating_mul(top), self.cochain)?;
        }
        Ok(())
    }

    pub fn check_group(&self, m: &GModule, n_max: usize) -> Result<()> {
        self.check_degree(n_max)?;
        over("group order", m.group().order(), self.order)?;
        over("module rank", m.dim(), self.dim)?;
        let size = m.group().order().saturating_pow(n_max as u32 + 1).saturating_mul(m.dim());
        over(format!("bar cochains in degree {}", n_max + 1), size, self.cochain)
    }

    /// Bounds every cell of the bicomplex built for total degree `n_max`.
    pub fn check_diagram(&self, a: &GroupDiagram, m: &DiagramModule, n_max: usize, conv: Convention) -> Result<()> {
        self.check_degree(n_max)?;
        self.check_category(a.index())?;
        let order = a.groups().iter().map(|g| g.order()).max().unwrap_or(1);
        let dim = m.spaces().iter().map(|s| s.dim()).max().unwrap_or(0);
        over("group order", order, self.order)?;
        over("module rank", dim, self.dim)?;
        let top = n_max + 1;
        let chains = chain_counts(a.index(), top);
        for (p, &c) in chains.iter().enumerate() {
            for q in 0..=top - p {
                let k = conv.bar_degree(q).unwrap_or(0);
                let size = c.saturating_mul(order.saturating_pow(k as u32)).saturating_mul(dim);
                over(format!("cochains in bidegree ({p},{q})"), size, self.cochain)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{arrow, terminal};

    #[test]
    fn chain_counts_match_enumeration() {
        let c = arrow();
        assert_eq!(chain_counts(&c, 3), vec![2, 3, 4, 5]);
        assert_eq!(chain_counts(&terminal(), 2), vec![1, 1, 1]);
    }

    #[test]
    fn overrides() {
        let c: Caps = "order=12, cochain=100".parse().unwrap();
        assert_eq!((c.order, c.cochain, c.dim), (12, 100, 4));
        assert!("order".parse::<Caps>().is_err());
        assert!("size=3".parse::<Caps>().is_err());
    }
}
