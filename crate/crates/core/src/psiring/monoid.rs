use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{one_object, FiniteCategory};

/// A finite commutative monoid acting by ψ-operations. The unit is always
/// element 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMonoid {
    names: Vec<String>,
    table: Vec<usize>,
}

/// `{elements, unit, table: [[m, n, mn]]}`. Products with the unit and the
/// mirror image of a listed product may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidSpec {
    pub elements: Vec<String>,
    pub unit: String,
    #[serde(default)]
    pub table: Vec<[String; 3]>,
}

impl ActionMonoid {
    /// Checks associativity, commutativity and the unit law exhaustively.
    pub fn new(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid("a monoid needs at least one element".into()));
        }
        let mut seen = HashMap::new();
        for (i, s) in names.iter().enumerate() {
            if seen.insert(s.as_str(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate monoid element `{s}`")));
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                if ab >= n {
                    return Err(Error::Invalid(format!("product of `{}` and `{}` is out of range", names[a], names[b])));
                }
                table.push(ab);
            }
        }
        let m = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                if m(a, b) != m(b, a) {
                    return Err(Error::Invalid(format!("`{}` and `{}` do not commute", names[a], names[b])));
                }
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::AssocViolation {
                            f: names[c].clone(),
                            g: names[b].clone(),
                            h: names[a].clone(),
                        });
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a))
            .ok_or_else(|| Error::IdentityViolation("the monoid table has no unit".into()))?;
        if unit == 0 {
            return Ok(ActionMonoid { names, table });
        }
        let order: Vec<usize> = std::iter::once(unit).chain((0..n).filter(|&a| a != unit)).collect();
        let mut pos = vec![0; n];
        for (i, &a) in order.iter().enumerate() {
            pos[a] = i;
        }
        Ok(ActionMonoid {
            names: order.iter().map(|&a| names[a].clone()).collect(),
            table: (0..n * n).map(|i| pos[m(order[i / n], order[i % n])]).collect(),
        })
    }

    pub fn trivial() -> Self {
        Self::new(vec!["1".into()], |_, _| 0).expect("trivial monoid")
    }

    /// `{1, x, …, x^{k+d-1}}` with `x^{k+d} = x^k`; `d >= 1`.
    pub fn monogenic(k: usize, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("the period must be positive".into()));
        }
        let n = k + d;
        let reduce = |e: usize| if e < n { e } else { k + (e - k) % d };
        let names = (0..n)
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x{e}"),
            })
            .collect();
        Self::new(names, |a, b| reduce(a + b))
    }

    /// The quotient of the monoid generated by `primes` under
    /// `Ψ^{p^k} = Ψ^{p^{k+d}}` for each prime. Elements are named by the
    /// integer representative.
    pub fn truncated_prime_powers(primes: &[u64], k: usize, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("the period must be positive".into()));
        }
        let mut sorted = primes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != primes.len() || sorted.iter().any(|&p| p < 2) {
            return Err(Error::Invalid("primes must be distinct and at least 2".into()));
        }
        let base = k + d;
        let count = base.checked_pow(primes.len() as u32).filter(|&c| c <= 4096).ok_or(Error::TooLarge {
            what: "truncated prime power monoid".into(),
            bound: 4096,
        })?;
        let digits = |mut i: usize| -> Vec<usize> {
            (0..primes.len())
                .map(|_| {
                    let e = i % base;
                    i /= base;
                    e
                })
                .collect()
        };
        let reduce = |e: usize| if e < base { e } else { k + (e - k) % d };
        let names = (0..count)
            .map(|i| {
                digits(i)
                    .iter()
                    .zip(primes)
                    .try_fold(1u64, |acc, (&e, &p)| acc.checked_mul(p.checked_pow(e as u32)?))
                    .map(|v| v.to_string())
                    .ok_or(Error::TooLarge {
                        what: "monoid element".into(),
                        bound: u64::MAX as usize,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, |a, b| {
            digits(a)
                .iter()
                .zip(digits(b))
                .rev()
                .fold(0, |acc, (&x, y)| acc * base + reduce(x + y))
        })
    }

    /// Componentwise product, elements named `(m,n)`.
    pub fn product(&self, other: &ActionMonoid) -> ActionMonoid {
        let k = other.order();
        let names = (0..self.order() * k)
            .map(|i| format!("({},{})", self.names[i / k], other.names[i % k]))
            .collect();
        Self::new(names, |a, b| self.mul(a / k, b / k) * k + other.mul(a % k, b % k)).expect("products of monoids")
    }

    /// `M ∪ {0}` with a new absorbing element.
    pub fn with_zero(&self) -> ActionMonoid {
        let n = self.order();
        let mut names = self.names.clone();
        names.push(if names.iter().any(|s| s == "0") { "zero".into() } else { "0".into() });
        Self::new(names, |a, b| if a == n || b == n { n } else { self.mul(a, b) }).expect("adjoining a zero")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::Invalid(format!("unknown monoid element `{name}`")))
    }

    /// The one-object category; morphism `i` is element `i`.
    pub fn as_category(&self) -> FiniteCategory {
        one_object(&self.names, |a, b| self.mul(a, b)).expect("monoids are categories")
    }

    pub fn from_spec(spec: &MonoidSpec) -> Result<Self> {
        let n = spec.elements.len();
        let unit = spec
            .elements
            .iter()
            .position(|s| *s == spec.unit)
            .ok_or_else(|| Error::Invalid(format!("unit `{}` is not an element", spec.unit)))?;
        let table = fill_table(&spec.elements, &spec.table, "monoid", |a, b| {
            if a == unit {
                Some(b)
            } else if b == unit {
                Some(a)
            } else {
                None
            }
        })?;
        let m = Self::new(spec.elements.clone(), |a, b| table[a * n + b])?;
        if m.names[0] != spec.unit {
            return Err(Error::IdentityViolation(format!(
                "`{}` is declared the unit but `{}` is",
                spec.unit, m.names[0]
            )));
        }
        Ok(m)
    }

    /// Lists each unordered product of non-units once.
    pub fn to_spec(&self) -> MonoidSpec {
        let n = self.order();
        let mut table = Vec::new();
        for a in 1..n {
            for b in a..n {
                table.push([self.names[a].clone(), self.names[b].clone(), self.names[self.mul(a, b)].clone()]);
            }
        }
        MonoidSpec {
            elements: self.names.clone(),
            unit: self.names[0].clone(),
            table,
        }
    }
}

/// Reads a commutative operation from triples. Mirror images are filled in,
/// `default` covers the rest, conflicting entries are rejected.
pub(crate) fn fill_table(
    names: &[String],
    triples: &[[String; 3]],
    what: &str,
    default: impl Fn(usize, usize) -> Option<usize>,
) -> Result<Vec<usize>> {
    let n = names.len();
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != n {
        return Err(Error::Invalid(format!("duplicate {what} element names")));
    }
    let find = |s: &str| index.get(s).copied().ok_or_else(|| Error::Parse(format!("unknown {what} element `{s}`")));
    let mut table = vec![None; n * n];
    for [a, b, c] in triples {
        let (a, b, c) = (find(a)?, find(b)?, find(c)?);
        for i in [a * n + b, b * n + a] {
            if table[i].replace(c).is_some_and(|old| old != c) {
                return Err(Error::Invalid(format!(
                    "{what} entry for `{}` and `{}` is listed twice with different values",
                    names[a], names[b]
                )));
            }
        }
    }
    (0..n * n)
        .map(|i| {
            table[i].or_else(|| default(i / n, i % n)).ok_or_else(|| {
                Error::Parse(format!("{what} entry for `{}` and `{}` is missing", names[i / n], names[i % n]))
            })
        })
        .collect()
}
