use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::finite::{apply, PsiModule, PsiRing};
use super::ActionMonoid;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const DEFAULT_DEGREE_CAP: u32 = 6;

/// `(variable, exponent)` pairs sorted by variable, exponents positive.
pub type Monomial = Vec<(usize, u32)>;

/// A polynomial over `Z` in canonical form: no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

fn monomial_degree(m: &Monomial) -> u32 {
    m.iter().map(|&(_, e)| e).sum()
}

fn monomial_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<usize, u32> = BTreeMap::new();
    for &(v, e) in a.iter().chain(b) {
        *out.entry(v).or_default() += e;
    }
    out.into_iter().collect()
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), BigInt::from(c));
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn var(v: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![(v, 1)], BigInt::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(monomial_degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// Product; fails if a term would exceed `cap` in total degree.
    pub fn mul(&self, other: &Polynomial, cap: u32) -> Result<Polynomial> {
        if self.degree() + other.degree() > cap && !self.is_zero() && !other.is_zero() {
            return Err(Error::TooLarge {
                what: format!("product of degree {}", self.degree() + other.degree()),
                bound: cap as usize,
            });
        }
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(monomial_mul(a, b), x * y);
            }
        }
        Ok(out)
    }

    /// Substitutes variables for variables.
    pub fn rename(&self, f: impl Fn(usize) -> usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let renamed: Monomial = m.iter().map(|&(v, e)| (f(v), e)).collect();
            out.add_term(monomial_mul(&renamed, &Vec::new()), c.clone());
        }
        out
    }

    pub fn display(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(if c.sign() == num_bigint::Sign::Minus { " - " } else { " + " });
            } else if c.sign() == num_bigint::Sign::Minus {
                s.push('-');
            }
            let a = c.magnitude();
            if m.is_empty() || !a.is_one() {
                let _ = write!(s, "{a}");
            }
            for (j, &(v, e)) in m.iter().enumerate() {
                if j > 0 || !a.is_one() {
                    s.push('*');
                }
                s.push_str(&name(v));
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            }
        }
        s
    }
}

/// The free ψ-ring on named generators: `Z[a_g^{(m)}]` over generators `g`
/// and monoid elements `m`, with `Ψ^m a_g^{(m')} = a_g^{(mm')}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePsiRing {
    monoid: ActionMonoid,
    generators: Vec<String>,
    degree_cap: u32,
}

pub fn free_psi_ring(generators: &[String], monoid: &ActionMonoid) -> FreePsiRing {
    FreePsiRing::new(generators.to_vec(), monoid.clone(), DEFAULT_DEGREE_CAP)
}

impl FreePsiRing {
    pub fn new(generators: Vec<String>, monoid: ActionMonoid, degree_cap: u32) -> Self {
        FreePsiRing {
            monoid,
            generators,
            degree_cap,
        }
    }

    pub fn monoid(&self) -> &ActionMonoid {
        &self.monoid
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn var_count(&self) -> usize {
        self.generators.len() * self.monoid.order()
    }

    /// The variable `a_g^{(m)}`.
    pub fn variable(&self, g: usize, m: usize) -> usize {
        g * self.monoid.order() + m
    }

    /// `(generator, monoid element)` of a variable.
    pub fn split(&self, v: usize) -> (usize, usize) {
        (v / self.monoid.order(), v % self.monoid.order())
    }

    pub fn var_name(&self, v: usize) -> String {
        let (g, m) = self.split(v);
        if m == 0 {
            self.generators[g].clone()
        } else {
            format!("{}^({})", self.generators[g], self.monoid.name(m))
        }
    }

    pub fn generator(&self, g: usize) -> Polynomial {
        Polynomial::var(self.variable(g, 0))
    }

    pub fn psi_var(&self, m: usize, v: usize) -> usize {
        let (g, m2) = self.split(v);
        self.variable(g, self.monoid.mul(m, m2))
    }

    pub fn psi(&self, m: usize, p: &Polynomial) -> Polynomial {
        p.rename(|v| self.psi_var(m, v))
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        a.mul(b, self.degree_cap)
    }

    pub fn display(&self, p: &Polynomial) -> String {
        p.display(|v| self.var_name(v))
    }

    /// `Ψ^1 = id` and `Ψ^m Ψ^n = Ψ^{mn}` on every variable.
    pub fn validate(&self) -> Result<()> {
        let k = self.monoid.order();
        for v in 0..self.var_count() {
            if self.psi_var(0, v) != v {
                return Err(Error::IdentityViolation(format!("Ψ^1 moves `{}`", self.var_name(v))));
            }
            for m in 0..k {
                for n in 0..k {
                    if self.psi_var(m, self.psi_var(n, v)) != self.psi_var(self.monoid.mul(m, n), v) {
                        return Err(Error::Invalid(format!(
                            "Ψ^{} Ψ^{} differs from Ψ^{} on `{}`",
                            self.monoid.name(m),
                            self.monoid.name(n),
                            self.monoid.name(self.monoid.mul(m, n)),
                            self.var_name(v)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_target(&self, target: &PsiRing, assignment: &[usize]) -> Result<()> {
        if *target.monoid() != self.monoid {
            return Err(Error::TypeMismatch("the target is acted on by a different monoid".into()));
        }
        if assignment.len() != self.generators.len() || assignment.iter().any(|&x| x >= target.order()) {
            return Err(Error::TypeMismatch("the assignment must send each generator to a target element".into()));
        }
        Ok(())
    }

    /// The unique ψ-ring map extending `g ↦ assignment[g]`, as the images
    /// `Ψ^m(assignment[g])` of the variables.
    pub fn extend(&self, target: &PsiRing, assignment: &[usize]) -> Result<Vec<usize>> {
        self.check_target(target, assignment)?;
        Ok((0..self.var_count())
            .map(|v| {
                let (g, m) = self.split(v);
                target.psi(m, assignment[g])
            })
            .collect())
    }

    /// Evaluates `p` at variable images `images`.
    pub fn evaluate(&self, target: &PsiRing, images: &[usize], p: &Polynomial) -> usize {
        let r = target.ring();
        p.terms().fold(r.zero(), |acc, (m, c)| {
            let mono = m.iter().fold(r.one(), |x, &(v, e)| r.mul(x, r.pow(images[v], e)));
            r.add(acc, r.mul(r.from_integer(c), mono))
        })
    }

    /// Basis of the ψ-derivations into `module`, viewed as a module over
    /// this ring through `extend(assignment)`. Columns have one block of
    /// `dim` coordinates per variable. Only equivariance on variables is
    /// imposed; Leibniz holds for any values on free variables.
    pub fn derivations(&self, module: &PsiModule, assignment: &[usize]) -> Result<Matrix> {
        self.check_target(module.ring(), assignment)?;
        let (dim, field) = (module.dim(), module.field());
        let (vars, k) = (self.var_count(), self.monoid.order());
        let mut sys = Matrix::zeros(field, vars * k * dim, vars * dim);
        let id = Matrix::identity(field, dim);
        for v in 0..vars {
            for n in 0..k {
                let row = (v * k + n) * dim;
                sys.add_block(row, v * dim, module.psi(n));
                sys.add_block(row, self.psi_var(n, v) * dim, &id.neg());
            }
        }
        sys.kernel_basis()
    }

    /// The values on the generators `a_g`, the coordinates in which the
    /// derivations biject with maps from the generators into the module.
    pub fn generator_values(&self, dim: usize, derivations: &Matrix) -> Matrix {
        let rows: Vec<usize> = (0..self.generators.len())
            .flat_map(|g| (0..dim).map(move |i| (g, i)))
            .map(|(g, i)| self.variable(g, 0) * dim + i)
            .collect();
        derivations.select_rows(&rows)
    }

    /// `d(p)` by the Leibniz rule, for a derivation with values
    /// `values[v]` on the variables.
    pub fn apply_derivation(&self, module: &PsiModule, images: &[usize], values: &[Vec<u32>], p: &Polynomial) -> Vec<u32> {
        let r = module.ring().ring();
        let prime = module.prime();
        let mut out = vec![0u32; module.dim()];
        for (m, c) in p.terms() {
            let coeff = r.from_integer(c);
            for (i, &(v, e)) in m.iter().enumerate() {
                // e v^{e-1} times the other factors
                let mut factor = r.mul(coeff, r.from_integer(&BigInt::from(e)));
                factor = r.mul(factor, r.pow(images[v], e - 1));
                for (j, &(w, f)) in m.iter().enumerate() {
                    if j != i {
                        factor = r.mul(factor, r.pow(images[w], f));
                    }
                }
                let rows = module.action(factor).to_i64_rows().expect("prime field entries");
                for (o, x) in out.iter_mut().zip(apply(&rows, &values[v], prime)) {
                    *o = (*o + x) % prime;
                }
            }
        }
        out
    }
}
