//! Reference computations used by the property suites. None of them calls
//! the routine it is checked against.

use diagcoh::diagramcoh::{DiagramModule, GroupDiagram};
use diagcoh::fincat::FiniteCategory;
use diagcoh::linalg::{Matrix, Ring};
use diagcoh::psiring::{additive_generators, index_to_vector, vector_to_index, PsiModule, PsiRing};

/// `dim H^q` of a cyclic group of order `order` whose generator acts by `t`,
/// from the 2-periodic resolution: `M --(T-1)--> M --N--> M --(T-1)--> …`.
pub fn periodic(t: &Matrix, order: usize, q_max: usize) -> Vec<usize> {
    let ring = t.ring();
    let dim = t.nrows();
    let id = Matrix::identity(ring, dim);
    let t_minus = t.add(&id.neg());
    let mut norm = Matrix::zeros(ring, dim, dim);
    let mut power = id;
    for _ in 0..order {
        norm = norm.add(&power);
        power = t.mul(&power);
    }
    let (r_t, r_n) = (t_minus.rank(), norm.rank());
    (0..=q_max).map(|q| if q == 0 { dim - r_t } else { dim - r_t - r_n }).collect()
}

/// Dimension of the families `ψ(i) ∈ C^1(A(i), M(i))` that are derivations
/// and satisfy `M(α) ψ(i)(g) = ψ(j)(A(α) g)`, by one linear system.
pub fn compatible_families(a: &GroupDiagram, m: &DiagramModule) -> usize {
    let c = a.index();
    let ring = m.ring();
    let mut offset = vec![0];
    for x in 0..c.object_count() {
        offset.push(offset[x] + a.group(x).order() * m.space(x).dim());
    }
    let unknowns = offset[c.object_count()];
    let mut rows: Vec<Vec<(usize, Matrix)>> = Vec::new();
    for x in 0..c.object_count() {
        let (g, d) = (a.group(x), m.space(x).dim());
        let id = Matrix::identity(ring, d);
        for u in 0..g.order() {
            for v in 0..g.order() {
                rows.push(vec![
                    (offset[x] + g.mul(u, v) * d, id.clone()),
                    (offset[x] + v * d, m.space(x).action(u).neg()),
                    (offset[x] + u * d, id.neg()),
                ]);
            }
        }
    }
    for f in 0..c.morphism_count() {
        let (i, j) = (c.src(f), c.dst(f));
        let (di, dj) = (m.space(i).dim(), m.space(j).dim());
        for u in 0..a.group(i).order() {
            rows.push(vec![
                (offset[i] + u * di, m.map(f).clone()),
                (offset[j] + a.map(f).apply(u) * dj, Matrix::identity(ring, dj).neg()),
            ]);
        }
    }
    let height: usize = rows.iter().map(|r| r[0].1.nrows()).sum();
    let mut sys = Matrix::zeros(ring, height, unknowns);
    let mut r0 = 0;
    for row in rows {
        let h = row[0].1.nrows();
        for (col, block) in row {
            sys.add_block(r0, col, &block);
        }
        r0 += h;
    }
    unknowns - sys.rank()
}

/// Number of composable `p`-tuples, by testing every tuple of arrows.
pub fn chain_count(cat: &FiniteCategory, p: usize) -> usize {
    if p == 0 {
        return cat.object_count();
    }
    let m = cat.morphism_count();
    let mut count = 0;
    let mut tuple = vec![0usize; p];
    'outer: loop {
        if tuple.windows(2).all(|w| cat.src(w[0]) == cat.dst(w[1])) {
            count += 1;
        }
        for slot in tuple.iter_mut() {
            *slot += 1;
            if *slot < m {
                continue 'outer;
            }
            *slot = 0;
        }
        return count;
    }
}

/// Pairs `(α, β)` of arrows with `α∘f∘β = g`, over all arrows of `cat`.
pub fn factorizations(cat: &FiniteCategory, f: usize, g: usize) -> usize {
    let m = cat.morphism_count();
    let mut count = 0;
    for alpha in 0..m {
        for beta in 0..m {
            let lhs = cat.compose(alpha, f).and_then(|af| cat.compose(af, beta));
            if lhs == Some(g) {
                count += 1;
            }
        }
    }
    count
}

fn module_add(m: &PsiModule, a: usize, b: usize) -> usize {
    let p = m.prime();
    let (x, y) = (index_to_vector(a, p, m.dim()), index_to_vector(b, p, m.dim()));
    let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
    vector_to_index(&s, p)
}

fn module_act(m: &PsiModule, a: &Matrix, v: usize) -> usize {
    let p = m.prime();
    let x = index_to_vector(v, p, m.dim());
    let col = Matrix::from_fn(m.field(), m.dim(), 1, |i, _| x[i] as i64);
    let out: Vec<u32> = a.mul(&col).to_i64_rows().expect("prime field").iter().map(|r| r[0] as u32).collect();
    vector_to_index(&out, p)
}

/// ψ-derivations counted by trying every assignment on additive generators,
/// extending additively and checking additivity, Leibniz and equivariance
/// on all elements.
pub fn psi_derivation_count(ring: &PsiRing, module: &PsiModule) -> usize {
    let r = ring.ring();
    let gens = additive_generators(r);
    let k = module.order().expect("small module");
    let mut count = 0;
    'assign: for code in 0..k.pow(gens.len() as u32) {
        let vals = index_to_vector(code, k as u32, gens.len());
        let mut d: Vec<Option<usize>> = vec![None; r.order()];
        d[r.zero()] = Some(0);
        let mut stack = vec![r.zero()];
        while let Some(x) = stack.pop() {
            for (&g, &v) in gens.iter().zip(&vals) {
                let y = r.add(x, g);
                let val = module_add(module, d[x].expect("reached"), v as usize);
                match d[y] {
                    Some(old) if old != val => continue 'assign,
                    Some(_) => {}
                    None => {
                        d[y] = Some(val);
                        stack.push(y);
                    }
                }
            }
        }
        let d: Vec<usize> = d.into_iter().map(|v| v.expect("generators span")).collect();
        for a in 0..r.order() {
            for b in 0..r.order() {
                if d[r.add(a, b)] != module_add(module, d[a], d[b]) {
                    continue 'assign;
                }
                let leibniz = module_add(
                    module,
                    module_act(module, module.action(a), d[b]),
                    module_act(module, module.action(b), d[a]),
                );
                if d[r.mul(a, b)] != leibniz {
                    continue 'assign;
                }
            }
            for m in 0..ring.monoid().order() {
                if module_act(module, module.psi(m), d[a]) != d[ring.psi(m, a)] {
                    continue 'assign;
                }
            }
        }
        count += 1;
    }
    count
}

/// A complex assembled from known pieces, so its cohomology is known in
/// advance. Degrees run `0..=top`.
pub struct Designed {
    pub dims: Vec<usize>,
    pub differentials: Vec<Matrix>,
    pub ranks: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
}

/// `dots[n]` copies of `R` in degree `n`, one acyclic `R --1--> R` from
/// each degree in `pairs`, and one `Z --k--> Z` per `(n, k)` in `multiples`
/// (over a field `k` is a unit, so these are acyclic too).
pub fn designed(ring: Ring, top: usize, dots: &[usize], pairs: &[usize], multiples: &[(usize, u64)]) -> Designed {
    let mut dims = dots.to_vec();
    dims.resize(top + 1, 0);
    let mut ranks = dims.clone();
    let mut torsion = vec![Vec::new(); top + 1];
    let mut entries: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); top];
    let mut add = |n: usize, k: i64, dims: &mut Vec<usize>| {
        let (src, dst) = (dims[n], dims[n + 1]);
        dims[n] += 1;
        dims[n + 1] += 1;
        entries[n].push((dst, src, k));
    };
    for &n in pairs {
        add(n, 1, &mut dims);
    }
    for &(n, k) in multiples {
        add(n, k as i64, &mut dims);
        if ring == Ring::Integers && k > 1 {
            torsion[n + 1].push(k);
        }
    }
    // entries recorded their row and column before later pieces were added
    // to the same degrees, which is fine: rows and columns only grow
    let differentials = (0..top)
        .map(|n| {
            let mut d = Matrix::zeros(ring, dims[n + 1], dims[n]);
            for &(r, c, k) in &entries[n] {
                d.set_i64(r, c, k);
            }
            d
        })
        .collect();
    for t in torsion.iter_mut() {
        t.sort_unstable();
    }
    ranks.resize(top + 1, 0);
    Designed {
        dims,
        differentials,
        ranks,
        torsion,
    }
}
