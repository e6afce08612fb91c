use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::ActionMonoid;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring};

/// Largest finite carrier accepted; axiom checks are cubic in the size.
pub const MAX_CARRIER: usize = 256;

/// A finite commutative ring with identity, given by tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    names: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

impl FiniteRing {
    /// Checks the commutative ring axioms exhaustively.
    pub fn new(
        names: Vec<String>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid("a ring needs at least one element".into()));
        }
        if n > MAX_CARRIER {
            return Err(Error::TooLarge {
                what: format!("carrier of {n} elements"),
                bound: MAX_CARRIER,
            });
        }
        let tabulate = |f: &dyn Fn(usize, usize) -> usize, what: &str| -> Result<Vec<usize>> {
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let c = f(a, b);
                    if c >= n {
                        return Err(Error::Invalid(format!("{what} of `{}` and `{}` is out of range", names[a], names[b])));
                    }
                    t.push(c);
                }
            }
            Ok(t)
        };
        let add = tabulate(&add, "sum")?;
        let mul = tabulate(&mul, "product")?;
        let (p, m) = (|a: usize, b: usize| add[a * n + b], |a: usize, b: usize| mul[a * n + b]);
        let fail = |msg: String| Err(Error::Invalid(format!("not a commutative ring: {msg}")));
        let zero = match (0..n).find(|&z| (0..n).all(|a| p(z, a) == a)) {
            Some(z) => z,
            None => return fail("no additive zero".into()),
        };
        let one = match (0..n).find(|&e| (0..n).all(|a| m(e, a) == a)) {
            Some(e) => e,
            None => return fail("no multiplicative unit".into()),
        };
        let mut neg = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| p(a, b) == zero) {
                Some(b) => neg.push(b),
                None => return fail(format!("`{}` has no additive inverse", names[a])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                if p(a, b) != p(b, a) || m(a, b) != m(b, a) {
                    return fail(format!("`{}` and `{}` do not commute", names[a], names[b]));
                }
                for c in 0..n {
                    if p(p(a, b), c) != p(a, p(b, c)) {
                        return fail(format!("addition is not associative on `{}`, `{}`, `{}`", names[a], names[b], names[c]));
                    }
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return fail(format!("multiplication is not associative on `{}`, `{}`, `{}`", names[a], names[b], names[c]));
                    }
                    if m(a, p(b, c)) != p(m(a, b), m(a, c)) {
                        return fail(format!("distributivity fails on `{}`, `{}`, `{}`", names[a], names[b], names[c]));
                    }
                }
            }
        }
        Ok(FiniteRing {
            names,
            add,
            mul,
            neg,
            zero,
            one,
        })
    }

    /// `Z/n`, elements `0, …, n-1`.
    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("Z/0 is not finite".into()));
        }
        Self::new((0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n, |a, b| (a * b) % n)
    }

    /// `F_p[x]/(x^n + c_{n-1} x^{n-1} + … + c_0)` for `modulus = [c_0, …, c_{n-1}]`.
    /// Element `Σ a_i p^i` is the class of `Σ a_i x^i`.
    pub fn polynomial_quotient(p: u32, modulus: &[u32]) -> Result<Self> {
        Ring::prime(p)?;
        let p = p as usize;
        let deg = modulus.len();
        let size = p
            .checked_pow(deg as u32)
            .filter(|&s| s <= MAX_CARRIER)
            .ok_or(Error::TooLarge {
                what: format!("F_{p}[x] modulo a polynomial of degree {deg}"),
                bound: MAX_CARRIER,
            })?;
        let digits = |i: usize| -> Vec<usize> { (0..deg).map(|k| (i / p.pow(k as u32)) % p).collect() };
        let index = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * p + c % p);
        let mul = |a: usize, b: usize| {
            let (x, y) = (digits(a), digits(b));
            let mut prod = vec![0usize; 2 * deg];
            for (i, &xi) in x.iter().enumerate() {
                for (j, &yj) in y.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + xi * yj) % p;
                }
            }
            for top in (deg..2 * deg).rev() {
                let c = prod[top];
                if c != 0 {
                    prod[top] = 0;
                    for (k, &mk) in modulus.iter().enumerate() {
                        let t = top - deg + k;
                        prod[t] = (prod[t] + (p - c) * mk as usize) % p;
                    }
                }
            }
            index(&prod[..deg])
        };
        let names = (0..size).map(|i| poly_name(&digits(i))).collect();
        Self::new(names, |a, b| index(&digits(a).iter().zip(digits(b)).map(|(x, y)| x + y).collect::<Vec<_>>()), mul)
    }

    /// `R × S`, element `(r, s)` at index `r |S| + s`.
    pub fn product(&self, other: &FiniteRing) -> Result<Self> {
        let k = other.order();
        let names = (0..self.order() * k)
            .map(|i| format!("({},{})", self.names[i / k], other.names[i % k]))
            .collect();
        Self::new(
            names,
            |a, b| self.add(a / k, b / k) * k + other.add(a % k, b % k),
            |a, b| self.mul(a / k, b / k) * k + other.mul(a % k, b % k),
        )
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order() + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, e: u32) -> usize {
        (0..e).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// The image of an integer.
    pub fn from_integer(&self, c: &BigInt) -> usize {
        let char = self.characteristic();
        let r = c.mod_floor(&BigInt::from(char)).to_usize().expect("reduced below the characteristic");
        (0..r).fold(self.zero, |acc, _| self.add(acc, self.one))
    }

    /// Additive order of 1.
    pub fn characteristic(&self) -> usize {
        let mut x = self.one;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, self.one);
            k += 1;
        }
        k
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
            .ok_or_else(|| Error::Invalid(format!("unknown ring element `{name}`")))
    }

    /// Whether `f` preserves 0, 1, sums and products.
    pub fn is_endomorphism(&self, f: &[usize]) -> bool {
        let n = self.order();
        f.len() == n
            && f.iter().all(|&x| x < n)
            && f[self.one] == self.one
            && (0..n).all(|a| (0..n).all(|b| f[self.add(a, b)] == self.add(f[a], f[b]) && f[self.mul(a, b)] == self.mul(f[a], f[b])))
    }

    /// The substitution `x ↦ y` on a ring built by `polynomial_quotient`
    /// with `p^deg` elements.
    pub fn substitution(&self, p: u32, deg: usize, y: usize) -> Vec<usize> {
        let p = p as usize;
        (0..self.order())
            .map(|i| {
                (0..deg).fold(self.zero, |acc, k| {
                    let c = (i / p.pow(k as u32)) % p;
                    let term = (0..c).fold(self.zero, |t, _| self.add(t, self.pow(y, k as u32)));
                    self.add(acc, term)
                })
            })
            .collect()
    }
}

fn poly_name(coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".into(),
            (1, c) => format!("{c}x"),
            (k, 1) => format!("x^{k}"),
            (k, c) => format!("{c}x^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// One axiom verdict with the first counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Verdicts for: each `Ψ^m` a ring endomorphism, `Ψ^1 = id`, and
/// `Ψ^n Ψ^m = Ψ^{nm}`. `psi` must hold one in-range map per element.
pub fn psi_axioms(monoid: &ActionMonoid, ring: &FiniteRing, psi: &[Vec<usize>]) -> Vec<AxiomCheck> {
    let n = ring.order();
    let mut out = Vec::new();
    let mut endo = None;
    'outer: for (m, f) in psi.iter().enumerate() {
        if f[ring.one()] != ring.one() {
            endo = Some(format!("Ψ^{} does not fix 1", monoid.name(m)));
            break;
        }
        for a in 0..n {
            for b in 0..n {
                if f[ring.add(a, b)] != ring.add(f[a], f[b]) {
                    endo = Some(format!("Ψ^{} is not additive on (`{}`, `{}`)", monoid.name(m), ring.name(a), ring.name(b)));
                    break 'outer;
                }
                if f[ring.mul(a, b)] != ring.mul(f[a], f[b]) {
                    endo = Some(format!("Ψ^{} is not multiplicative on (`{}`, `{}`)", monoid.name(m), ring.name(a), ring.name(b)));
                    break 'outer;
                }
            }
        }
    }
    out.push(AxiomCheck {
        axiom: "ring endomorphisms".into(),
        passed: endo.is_none(),
        detail: endo,
    });
    let unit = (0..n).find(|&x| psi[0][x] != x).map(|x| format!("Ψ^1 moves `{}`", ring.name(x)));
    out.push(AxiomCheck {
        axiom: "unit".into(),
        passed: unit.is_none(),
        detail: unit,
    });
    let mut comp = None;
    'comp: for a in 0..monoid.order() {
        for b in 0..monoid.order() {
            let ab = monoid.mul(a, b);
            if let Some(x) = (0..n).find(|&x| psi[a][psi[b][x]] != psi[ab][x]) {
                comp = Some(format!(
                    "Ψ^n Ψ^m differs from Ψ^(nm) at (n, m, x) = ({}, {}, `{}`)",
                    monoid.name(a),
                    monoid.name(b),
                    ring.name(x)
                ));
                break 'comp;
            }
        }
    }
    out.push(AxiomCheck {
        axiom: "composition".into(),
        passed: comp.is_none(),
        detail: comp,
    });
    out
}

/// A finite ψ-ring: `psi[m]` is the ring endomorphism `Ψ^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiRing {
    monoid: ActionMonoid,
    ring: FiniteRing,
    psi: Vec<Vec<usize>>,
}

impl PsiRing {
    /// Checks that every `Ψ^m` is a ring endomorphism, `Ψ^1 = id` and
    /// `Ψ^m Ψ^n = Ψ^{mn}`.
    pub fn new(monoid: ActionMonoid, ring: FiniteRing, psi: Vec<Vec<usize>>) -> Result<Self> {
        if psi.len() != monoid.order() || psi.iter().any(|f| f.len() != ring.order() || f.iter().any(|&x| x >= ring.order())) {
            return Err(Error::TypeMismatch(format!("need one map of the carrier per monoid element ({})", monoid.order())));
        }
        if let Some(fail) = psi_axioms(&monoid, &ring, &psi).into_iter().find(|c| !c.passed) {
            let msg = fail.detail.unwrap_or_default();
            return Err(if fail.axiom == "unit" { Error::IdentityViolation(msg) } else { Error::Invalid(msg) });
        }
        Ok(PsiRing { monoid, ring, psi })
    }

    /// Every `Ψ^m` is the identity.
    pub fn trivial_action(monoid: ActionMonoid, ring: FiniteRing) -> Self {
        let id: Vec<usize> = (0..ring.order()).collect();
        let psi = vec![id; monoid.order()];
        PsiRing { monoid, ring, psi }
    }

    pub fn monoid(&self) -> &ActionMonoid {
        &self.monoid
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }

    pub fn psi(&self, m: usize, x: usize) -> usize {
        self.psi[m][x]
    }

    pub fn psi_map(&self, m: usize) -> &[usize] {
        &self.psi[m]
    }
}

/// A ψ-module whose underlying group is `F_p^dim`: `action[r]` is
/// multiplication by `r` and `psi[m]` is `Ψ^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiModule {
    ring: PsiRing,
    prime: u32,
    dim: usize,
    action: Vec<Matrix>,
    psi: Vec<Matrix>,
}

impl PsiModule {
    /// Checks the module axioms and `Ψ^1 = id`, `Ψ^n(rm) = Ψ^n(r)Ψ^n(m)`,
    /// `Ψ^n Ψ^l = Ψ^{nl}`.
    pub fn new(ring: &PsiRing, prime: u32, dim: usize, action: Vec<Matrix>, psi: Vec<Matrix>) -> Result<Self> {
        let field = Ring::prime(prime)?;
        let r = ring.ring();
        if action.len() != r.order() || psi.len() != ring.monoid().order() {
            return Err(Error::TypeMismatch("module tables do not cover the ring and the monoid".into()));
        }
        if action.iter().chain(&psi).any(|m| m.ring() != field || m.shape() != (dim, dim)) {
            return Err(Error::TypeMismatch(format!("module maps must be {dim}×{dim} over F_{prime}")));
        }
        let fail = |msg: String| Err(Error::ModuleAxiomFailure(msg));
        if !action[r.one()].is_identity() {
            return fail("1 does not act as the identity".into());
        }
        for a in 0..r.order() {
            for b in 0..r.order() {
                if action[r.add(a, b)] != action[a].add(&action[b]) {
                    return fail(format!("the action is not additive on `{}` + `{}`", r.name(a), r.name(b)));
                }
                if action[r.mul(a, b)] != action[a].mul(&action[b]) {
                    return fail(format!("the action is not multiplicative on `{}`·`{}`", r.name(a), r.name(b)));
                }
            }
        }
        let monoid = ring.monoid();
        if !psi[0].is_identity() {
            return fail("Ψ^1 is not the identity on the module".into());
        }
        for n in 0..monoid.order() {
            for x in 0..r.order() {
                if psi[n].mul(&action[x]) != action[ring.psi(n, x)].mul(&psi[n]) {
                    return fail(format!("Ψ^{}(rm) differs from Ψ^{}(r)Ψ^{}(m) at r = `{}`", monoid.name(n), monoid.name(n), monoid.name(n), r.name(x)));
                }
            }
            for l in 0..monoid.order() {
                if psi[n].mul(&psi[l]) != psi[monoid.mul(n, l)] {
                    return fail(format!("Ψ^{} Ψ^{} differs from Ψ^{} on the module", monoid.name(n), monoid.name(l), monoid.name(monoid.mul(n, l))));
                }
            }
        }
        Ok(PsiModule {
            ring: ring.clone(),
            prime,
            dim,
            action,
            psi,
        })
    }

    /// The zero module.
    pub fn zero(ring: &PsiRing, prime: u32) -> Result<Self> {
        let field = Ring::prime(prime)?;
        Self::new(
            ring,
            prime,
            0,
            vec![Matrix::zeros(field, 0, 0); ring.order()],
            vec![Matrix::zeros(field, 0, 0); ring.monoid().order()],
        )
    }

    /// The ring as a module over itself, for carriers whose element index
    /// read in base `p` gives additive coordinates (as for
    /// `polynomial_quotient` and products of prime fields).
    pub fn regular(ring: &PsiRing, prime: u32) -> Result<Self> {
        let field = Ring::prime(prime)?;
        let r = ring.ring();
        let p = prime as usize;
        let mut dim = 0;
        while p.pow(dim as u32) < r.order() {
            dim += 1;
        }
        if p.pow(dim as u32) != r.order() {
            return Err(Error::Invalid(format!("a ring of {} elements is not a vector space over F_{prime}", r.order())));
        }
        let basis: Vec<usize> = (0..dim).map(|k| p.pow(k as u32)).collect();
        let matrix_of = |f: &dyn Fn(usize) -> usize| {
            let mut m = Matrix::zeros(field, dim, dim);
            for (j, &e) in basis.iter().enumerate() {
                for (i, c) in index_to_vector(f(e), prime, dim).into_iter().enumerate() {
                    m.set_i64(i, j, c as i64);
                }
            }
            m
        };
        let action = (0..r.order()).map(|a| matrix_of(&|e| r.mul(a, e))).collect();
        let psi = (0..ring.monoid().order()).map(|m| matrix_of(&|e| ring.psi(m, e))).collect();
        Self::new(ring, prime, dim, action, psi)
    }

    /// `F_p^dim` where `action_of(r)` is given for additive generators of
    /// the ring and extended by additivity; omitted `Ψ` are identities.
    pub fn from_generators(
        ring: &PsiRing,
        prime: u32,
        dim: usize,
        generators: &[(usize, Matrix)],
        psi: Vec<Option<Matrix>>,
    ) -> Result<Self> {
        let field = Ring::prime(prime)?;
        let r = ring.ring();
        let mut action: Vec<Option<Matrix>> = vec![None; r.order()];
        action[r.zero()] = Some(Matrix::zeros(field, dim, dim));
        let mut stack = vec![r.zero()];
        while let Some(x) = stack.pop() {
            for (g, m) in generators {
                let y = r.add(x, *g);
                let value = action[x].as_ref().expect("visited").add(m);
                match &action[y] {
                    Some(old) if *old != value => {
                        return Err(Error::ModuleAxiomFailure(format!(
                            "the given action is not additive at `{}`",
                            r.name(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        action[y] = Some(value);
                        stack.push(y);
                    }
                }
            }
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(x, a)| {
                a.ok_or_else(|| Error::Parse(format!("the action of `{}` is not determined by the given elements", r.name(x))))
            })
            .collect::<Result<_>>()?;
        let psi = psi.into_iter().map(|m| m.unwrap_or_else(|| Matrix::identity(field, dim))).collect();
        Self::new(ring, prime, dim, action, psi)
    }

    pub fn ring(&self) -> &PsiRing {
        &self.ring
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn field(&self) -> Ring {
        Ring::Prime(self.prime)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `p^dim`, if it fits.
    pub fn order(&self) -> Option<usize> {
        (self.prime as usize).checked_pow(self.dim as u32)
    }

    pub fn action(&self, r: usize) -> &Matrix {
        &self.action[r]
    }

    pub fn psi(&self, m: usize) -> &Matrix {
        &self.psi[m]
    }

    /// `M^f`: the same group with `r·a = Ψ^f(r) a`, still a ψ-module.
    pub fn twist(&self, f: usize) -> Result<PsiModule> {
        let action = (0..self.ring.order()).map(|r| self.action[self.ring.psi(f, r)].clone()).collect();
        Self::new(&self.ring, self.prime, self.dim, action, self.psi.clone())
    }
}

/// Base-`p` digits of `i`, least significant first.
pub fn index_to_vector(mut i: usize, p: u32, dim: usize) -> Vec<u32> {
    let p = p as usize;
    (0..dim)
        .map(|_| {
            let d = i % p;
            i /= p;
            d as u32
        })
        .collect()
}

pub fn vector_to_index(v: &[u32], p: u32) -> usize {
    v.iter().rev().fold(0, |acc, &c| acc * p as usize + (c % p) as usize)
}

/// `m v` over `F_p` with `m` given as `i64` rows.
pub(crate) fn apply(m: &[Vec<i64>], v: &[u32], p: u32) -> Vec<u32> {
    m.iter()
        .map(|row| {
            let s: i64 = row.iter().zip(v).map(|(a, &b)| a * b as i64).sum();
            s.rem_euclid(p as i64) as u32
        })
        .collect()
}
