use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::finite::{apply, index_to_vector, vector_to_index, FiniteRing, PsiModule, PsiRing, MAX_CARRIER};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::natsys::NaturalSystem;

/// Nodes visited by the section search before giving up.
pub const SECTION_SEARCH_BOUND: usize = 4_000_000;
/// Largest derivation group enumerated when pairing.
pub const ENUMERATION_BOUND: usize = 1 << 16;

fn module_order(m: &PsiModule) -> Result<usize> {
    m.order().filter(|&k| k <= MAX_CARRIER).ok_or(Error::TooLarge {
        what: format!("module F_{}^{}", m.prime(), m.dim()),
        bound: MAX_CARRIER,
    })
}

/// `r·m` and `Ψ^n m` on module element indices.
struct ModuleTables {
    act: Vec<Vec<usize>>,
    psi: Vec<Vec<usize>>,
    add: Vec<Vec<usize>>,
}

fn module_tables(m: &PsiModule) -> Result<ModuleTables> {
    let size = module_order(m)?;
    let (p, dim) = (m.prime(), m.dim());
    let vecs: Vec<Vec<u32>> = (0..size).map(|i| index_to_vector(i, p, dim)).collect();
    let image = |mat: &Matrix| -> Vec<usize> {
        let rows = mat.to_i64_rows().expect("prime field entries");
        vecs.iter().map(|v| vector_to_index(&apply(&rows, v, p), p)).collect()
    };
    let add = vecs
        .iter()
        .map(|a| vecs.iter().map(|b| vector_to_index(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>(), p)).collect())
        .collect();
    Ok(ModuleTables {
        act: (0..m.ring().order()).map(|r| image(m.action(r))).collect(),
        psi: (0..m.ring().monoid().order()).map(|n| image(m.psi(n))).collect(),
        add,
    })
}

/// `R ⋊ M` with `(r,m)(r',m') = (rr', rm' + r'm)` and `Ψ` componentwise.
/// Element `(r, m)` has index `r |M| + m`.
pub fn semidirect_product(ring: &PsiRing, module: &PsiModule) -> Result<PsiRing> {
    let k = module_order(module)?;
    let r = ring.ring();
    let n = r.order().checked_mul(k).filter(|&n| n <= MAX_CARRIER).ok_or(Error::TooLarge {
        what: "semidirect product".into(),
        bound: MAX_CARRIER,
    })?;
    let t = module_tables(module)?;
    let (p, dim) = (module.prime(), module.dim());
    let names = (0..n)
        .map(|i| {
            let v: Vec<String> = index_to_vector(i % k, p, dim).iter().map(|c| c.to_string()).collect();
            format!("({},[{}])", r.name(i / k), v.join(" "))
        })
        .collect();
    let carrier = FiniteRing::new(
        names,
        |a, b| r.add(a / k, b / k) * k + t.add[a % k][b % k],
        |a, b| {
            let (x, m, y, m2) = (a / k, a % k, b / k, b % k);
            r.mul(x, y) * k + t.add[t.act[x][m2]][t.act[y][m]]
        },
    )?;
    let psi = (0..ring.monoid().order())
        .map(|s| (0..n).map(|i| ring.psi(s, i / k) * k + t.psi[s][i % k]).collect())
        .collect();
    PsiRing::new(ring.monoid().clone(), carrier, psi)
}

/// `M^f`, the module with `r·a = Ψ^f(r) a`.
pub fn twist_module(module: &PsiModule, f: usize) -> Result<PsiModule> {
    module.twist(f)
}

/// A set of elements generating the additive group, chosen greedily.
pub fn additive_generators(r: &FiniteRing) -> Vec<usize> {
    let span = |gens: &[usize]| -> Vec<bool> {
        let mut seen = vec![false; r.order()];
        seen[r.zero()] = true;
        let mut stack = vec![r.zero()];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = r.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };
    let mut gens = Vec::new();
    let mut seen = span(&gens);
    for x in 0..r.order() {
        if !seen[x] {
            gens.push(x);
            seen = span(&gens);
        }
    }
    gens
}

/// Basis of the derivations `R -> M` (equivariant ones if `equivariant`),
/// as columns of length `|R|·dim`: block `r` holds `d(r)`.
///
/// Additivity and Leibniz are imposed against additive generators, which
/// suffices once additivity holds.
pub fn derivation_space(ring: &PsiRing, module: &PsiModule, equivariant: bool) -> Result<Matrix> {
    let r = ring.ring();
    let (n, dim) = (r.order(), module.dim());
    if n > 64 {
        return Err(Error::TooLarge {
            what: format!("derivation system over a ring of {n} elements"),
            bound: 64,
        });
    }
    let field = module.field();
    let gens = additive_generators(r);
    let monoid = if equivariant { ring.monoid().order() } else { 0 };
    let blocks = n * gens.len() * 2 + n * monoid;
    let mut sys = Matrix::zeros(field, blocks * dim, n * dim);
    let id = Matrix::identity(field, dim);
    let mut row = 0;
    for x in 0..n {
        for &g in &gens {
            // d(x+g) - d(x) - d(g)
            sys.add_block(row, r.add(x, g) * dim, &id);
            sys.add_block(row, x * dim, &id.neg());
            sys.add_block(row, g * dim, &id.neg());
            row += dim;
            // d(xg) - x d(g) - g d(x)
            sys.add_block(row, r.mul(x, g) * dim, &id);
            sys.add_block(row, g * dim, &module.action(x).neg());
            sys.add_block(row, x * dim, &module.action(g).neg());
            row += dim;
        }
        for s in 0..monoid {
            // Ψ^s d(x) - d(Ψ^s x)
            sys.add_block(row, x * dim, module.psi(s));
            sys.add_block(row, ring.psi(s, x) * dim, &id.neg());
            row += dim;
        }
    }
    sys.kernel_basis()
}

/// Basis of `Der_Ψ(R, M)`.
pub fn psi_derivations(ring: &PsiRing, module: &PsiModule) -> Result<Matrix> {
    derivation_space(ring, module, true)
}

/// Every ψ-ring map `σ: R -> R ⋊ M` with `πσ = id`, as element indices of
/// `semidirect_product(ring, module)`. Found by a pruned search over
/// `σ(x) ∈ π^{-1}(x)`, independently of the derivation solver.
pub fn sections_of_projection(ring: &PsiRing, module: &PsiModule) -> Result<Vec<Vec<usize>>> {
    let s = semidirect_product(ring, module)?;
    let k = module_order(module)?;
    let r = ring.ring();
    let n = r.order();
    let monoid = ring.monoid().order();
    let sr = s.ring();
    let mut found = Vec::new();
    let mut sigma: Vec<Option<usize>> = vec![None; n];
    let mut nodes = 0usize;

    fn consistent(ring: &PsiRing, s: &PsiRing, sigma: &[Option<usize>], x: usize) -> bool {
        let (r, sr) = (ring.ring(), s.ring());
        let sx = sigma[x].expect("just assigned");
        if x == r.one() && sx != sr.one() {
            return false;
        }
        for y in 0..r.order() {
            let Some(sy) = sigma[y] else { continue };
            if let Some(z) = sigma[r.add(x, y)] {
                if sr.add(sx, sy) != z {
                    return false;
                }
            }
            if let Some(z) = sigma[r.sub(x, y)] {
                if sr.add(z, sy) != sx {
                    return false;
                }
            }
            if let Some(z) = sigma[r.mul(x, y)] {
                if sr.mul(sx, sy) != z {
                    return false;
                }
            }
        }
        for m in 0..ring.monoid().order() {
            if let Some(z) = sigma[ring.psi(m, x)] {
                if s.psi(m, sx) != z {
                    return false;
                }
            }
        }
        true
    }

    let mut x = 0;
    let mut next = vec![0usize; n];
    loop {
        if x == n {
            let full: Vec<usize> = sigma.iter().map(|v| v.expect("complete")).collect();
            let hom = sr.is_endomorphism_into(r, &full)
                && (0..monoid).all(|m| (0..n).all(|a| s.psi(m, full[a]) == full[ring.psi(m, a)]));
            if hom {
                found.push(full);
            }
            x -= 1;
            continue;
        }
        if next[x] == k {
            next[x] = 0;
            sigma[x] = None;
            if x == 0 {
                break;
            }
            x -= 1;
            continue;
        }
        nodes += 1;
        if nodes > SECTION_SEARCH_BOUND {
            return Err(Error::TooLarge {
                what: "section search".into(),
                bound: SECTION_SEARCH_BOUND,
            });
        }
        sigma[x] = Some(x * k + next[x]);
        next[x] += 1;
        if consistent(ring, &s, &sigma, x) {
            x += 1;
        }
    }
    Ok(found)
}

/// The counts on both sides of `σ(x) = (x, d(x))` and whether it is a
/// verified bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionReport {
    pub ring_order: usize,
    pub module_dim: usize,
    pub prime: u32,
    pub sections: usize,
    pub derivations: usize,
    pub pairing_verified: bool,
}

/// Sections by search, derivations by the linear solver, then checks that
/// `σ ↦ d` lands in the derivations, is injective, and that every
/// derivation comes from a section.
pub fn section_correspondence(ring: &PsiRing, module: &PsiModule) -> Result<SectionReport> {
    let sections = sections_of_projection(ring, module)?;
    let basis = psi_derivations(ring, module)?;
    let (p, dim, n) = (module.prime(), module.dim(), ring.order());
    let k = module_order(module)?;
    let derivations = enumerate_span(&basis, p)?;
    let field = module.field();
    let mut from_sections = HashSet::new();
    let mut verified = true;
    for sigma in &sections {
        let d: Vec<u32> = sigma.iter().flat_map(|&s| index_to_vector(s % k, p, dim)).collect();
        let col = Matrix::from_fn(field, n * dim, 1, |i, _| d[i] as i64);
        verified &= basis.solve_independent(&col)?.is_some();
        verified &= from_sections.insert(d);
    }
    for d in &derivations {
        verified &= from_sections.contains(d);
        let sigma: Vec<usize> = (0..n).map(|x| x * k + vector_to_index(&d[x * dim..(x + 1) * dim], p)).collect();
        verified &= sections.contains(&sigma);
    }
    Ok(SectionReport {
        ring_order: n,
        module_dim: dim,
        prime: p,
        sections: sections.len(),
        derivations: derivations.len(),
        pairing_verified: verified && sections.len() == derivations.len(),
    })
}

/// All `F_p`-combinations of the columns.
pub fn enumerate_span(basis: &Matrix, p: u32) -> Result<Vec<Vec<u32>>> {
    let k = basis.ncols();
    let count = (p as usize).checked_pow(k as u32).filter(|&c| c <= ENUMERATION_BOUND).ok_or(Error::TooLarge {
        what: "derivation enumeration".into(),
        bound: ENUMERATION_BOUND,
    })?;
    let cols: Vec<Vec<i64>> = basis.transpose().to_i64_rows().expect("prime field entries");
    Ok((0..count)
        .map(|i| {
            let coeffs = index_to_vector(i, p, k);
            (0..basis.nrows())
                .map(|r| {
                    let s: i64 = coeffs.iter().zip(&cols).map(|(&c, col)| c as i64 * col[r]).sum();
                    s.rem_euclid(p as i64) as u32
                })
                .collect()
        })
        .collect())
}

/// `D(f) = Der(R, M^f)` on the one-object category of the monoid, with
/// `u_* d = Ψ^u ∘ d` and `v^* d = d ∘ Ψ^v`.
pub fn psi_derivation_system(ring: &PsiRing, module: &PsiModule) -> Result<NaturalSystem> {
    let monoid = ring.monoid();
    let cat = monoid.as_category();
    let (n, dim, field) = (ring.order(), module.dim(), module.field());
    let bases = (0..monoid.order())
        .map(|f| derivation_space(ring, &module.twist(f)?, false))
        .collect::<Result<Vec<_>>>()?;
    let coords = |target: &Matrix, images: &Matrix| -> Result<Matrix> {
        target
            .solve_independent(images)?
            .ok_or_else(|| Error::Invalid("an induced map leaves the derivations".into()))
    };
    let mut push = HashMap::new();
    let mut pull = HashMap::new();
    for f in 0..monoid.order() {
        for u in 0..monoid.order() {
            let uf = monoid.mul(u, f);
            let images = Matrix::identity(field, n).kron(module.psi(u)).mul(&bases[f]);
            push.insert((u, f), coords(&bases[uf], &images)?);
            let rows: Vec<usize> = (0..n).flat_map(|x| (0..dim).map(move |i| (x, i))).map(|(x, i)| ring.psi(u, x) * dim + i).collect();
            pull.insert((u, f), coords(&bases[uf], &bases[f].select_rows(&rows))?);
        }
    }
    NaturalSystem::new(
        &cat,
        field,
        bases.iter().map(Matrix::ncols).collect(),
        |a, f| push[&(a, f)].clone(),
        |b, f| pull[&(b, f)].clone(),
    )
}

impl FiniteRing {
    /// Whether `f: other -> self` preserves 0, 1, sums and products.
    pub(crate) fn is_endomorphism_into(&self, other: &FiniteRing, f: &[usize]) -> bool {
        let n = other.order();
        f.len() == n
            && f[other.one()] == self.one()
            && (0..n).all(|a| {
                (0..n).all(|b| f[other.add(a, b)] == self.add(f[a], f[b]) && f[other.mul(a, b)] == self.mul(f[a], f[b]))
            })
    }
}
