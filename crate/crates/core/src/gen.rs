//! Seeded random instances shared by the test suites and `verify`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fincat::{self, FiniteCategory};
use crate::diagramcoh::{DiagramModule, GroupDiagram};
use crate::groupcoh::{all_homomorphisms, equivariant_maps, restrict_module, FiniteGroup, GModule, GroupHom};
use crate::linalg::{Matrix, Ring};
use crate::natsys::{LinearFunctor, NaturalSystem};
use crate::psiring::{ActionMonoid, FiniteRing, PsiModule, PsiRing};

/// Named one-object categories of small monoids. Element 0 is the unit.
pub fn monoid_catalog() -> Vec<(&'static str, FiniteCategory)> {
    let names = |k: usize| -> Vec<String> {
        (0..k).map(|i| if i == 0 { "1".to_string() } else { format!("m{i}") }).collect()
    };
    let cyclic = |n: usize| fincat::one_object(&names(n), move |g, f| (g + f) % n).unwrap();
    let table = |rows: Vec<Vec<usize>>| {
        let n = rows.len();
        fincat::one_object(&names(n), move |g, f| rows[g][f]).unwrap()
    };
    vec![
        ("trivial", cyclic(1)),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("V4", fincat::one_object(&names(4), |g, f| g ^ f).unwrap()),
        // 1, e with e e = e
        ("idempotent", table(vec![vec![0, 1], vec![1, 1]])),
        // 1, e, f with x y = x for x, y in {e, f}
        ("left-zero", table(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]])),
        // 1, n, 0 with n n = 0 and 0 absorbing
        ("nilpotent", table(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]])),
    ]
}

/// A random preorder on at most `max_objects` objects.
pub fn random_poset<R: Rng>(rng: &mut R, max_objects: usize) -> FiniteCategory {
    let n = rng.gen_range(1..=max_objects.max(1));
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                rel.push((i, j));
            }
        }
    }
    fincat::poset(n, &rel).expect("posets are valid")
}

/// A random small category with at most `max_morphisms` morphisms: a
/// catalogued monoid, a poset, or a union or ordinal sum of those.
pub fn random_category<R: Rng>(rng: &mut R, max_morphisms: usize) -> FiniteCategory {
    loop {
        let c = match rng.gen_range(0..4) {
            0 => pick_monoid(rng),
            1 => random_poset(rng, 3),
            2 => fincat::disjoint_union(&small(rng), &small(rng)),
            _ => fincat::ordinal_sum(&small(rng), &small(rng)),
        };
        if c.morphism_count() <= max_morphisms {
            return c;
        }
    }
}

/// A random category with an initial object: a terminal object placed
/// below a random category, or a poset with a least element.
pub fn random_category_with_initial<R: Rng>(rng: &mut R, max_morphisms: usize) -> FiniteCategory {
    loop {
        let c = if rng.gen_bool(0.5) {
            fincat::ordinal_sum(&fincat::terminal(), &random_category(rng, max_morphisms))
        } else {
            let n = rng.gen_range(1..=4);
            let mut rel: Vec<(usize, usize)> = (1..n).map(|j| (0, j)).collect();
            for i in 1..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.4) {
                        rel.push((i, j));
                    }
                }
            }
            fincat::poset(n, &rel).expect("posets are valid")
        };
        if c.morphism_count() <= max_morphisms {
            return c;
        }
    }
}

fn pick_monoid<R: Rng>(rng: &mut R) -> FiniteCategory {
    monoid_catalog().choose(rng).expect("catalog is nonempty").1.clone()
}

fn small<R: Rng>(rng: &mut R) -> FiniteCategory {
    if rng.gen_bool(0.5) {
        random_poset(rng, 2)
    } else {
        let cat = monoid_catalog();
        cat[rng.gen_range(0..3)].1.clone()
    }
}

/// A random invertible matrix over `ring` together with its inverse, as a
/// product of elementary matrices.
pub fn random_invertible<R: Rng>(rng: &mut R, ring: Ring, n: usize) -> (Matrix, Matrix) {
    let mut u = Matrix::identity(ring, n);
    let mut inv = Matrix::identity(ring, n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2i64..=2);
        let mut e = Matrix::identity(ring, n);
        e.set_i64(i, j, c);
        let mut e_inv = Matrix::identity(ring, n);
        e_inv.set_i64(i, j, -c);
        u = e.mul(&u);
        inv = inv.mul(&e_inv);
    }
    (u, inv)
}

/// A random functor into free modules: sums of constant and representable
/// functors, conjugated objectwise. Ranks stay at most `max_dim`.
pub fn random_linear_functor<R: Rng>(rng: &mut R, cat: &FiniteCategory, ring: Ring, max_dim: usize) -> LinearFunctor {
    let mut f = LinearFunctor::constant(cat, ring, 0);
    for _ in 0..rng.gen_range(1..=3) {
        let piece = if rng.gen_bool(0.5) {
            LinearFunctor::constant(cat, ring, 1)
        } else {
            LinearFunctor::representable(cat, ring, rng.gen_range(0..cat.object_count()))
        };
        let sum = f.direct_sum(&piece);
        if sum.dims.iter().all(|&d| d <= max_dim) {
            f = sum;
        }
    }
    let bases: Vec<(Matrix, Matrix)> = f.dims.iter().map(|&d| random_invertible(rng, ring, d)).collect();
    let maps = (0..cat.morphism_count())
        .map(|a| bases[cat.dst(a)].0.mul(&f.maps[a]).mul(&bases[cat.src(a)].1))
        .collect();
    LinearFunctor { maps, ..f }
}

/// A random natural system with ranks at most `max_dim`: induced by a
/// functor, by a bifunctor `Hom(G(a), F(b))`, or the linearized set of
/// factorizations `{(u, v) : u∘v = f}`; finally conjugated at every
/// morphism.
pub fn random_natural_system<R: Rng>(
    rng: &mut R,
    cat: &FiniteCategory,
    ring: Ring,
    max_dim: usize,
) -> NaturalSystem {
    let sys = match rng.gen_range(0..3) {
        0 => None,
        1 => hom_bifunctor_system(rng, cat, ring, max_dim),
        _ => factorization_system(cat, ring).filter(|s| s.dims().iter().all(|&d| d <= max_dim)),
    };
    let sys = sys.unwrap_or_else(|| {
        let f = random_linear_functor(rng, cat, ring, max_dim);
        NaturalSystem::from_functor(cat, &f).expect("random functors are valid")
    });
    let bases: Vec<(Matrix, Matrix)> = sys.dims().iter().map(|&d| random_invertible(rng, ring, d)).collect();
    sys.conjugate(&bases)
}

fn hom_bifunctor_system<R: Rng>(rng: &mut R, cat: &FiniteCategory, ring: Ring, max_dim: usize) -> Option<NaturalSystem> {
    let g = random_linear_functor(rng, cat, ring, 2);
    let f = random_linear_functor(rng, cat, ring, 2);
    let n = cat.object_count();
    if (0..n).any(|a| (0..n).any(|b| g.dims[a] * f.dims[b] > max_dim)) {
        return None;
    }
    // Hom(G(a), F(b)) as row-major dim F(b) x dim G(a) matrices.
    NaturalSystem::from_bifunctor(
        cat,
        ring,
        |a, b| g.dims[a] * f.dims[b],
        |beta, b| Matrix::identity(ring, f.dims[b]).kron(&g.maps[beta].transpose()),
        |alpha, a| f.maps[alpha].kron(&Matrix::identity(ring, g.dims[a])),
    )
    .ok()
}

/// `D(f) = R[{(u, v) : u∘v = f}]` with `α_*(u, v) = (αu, v)` and
/// `β^*(u, v) = (u, vβ)`.
pub fn factorization_system(cat: &FiniteCategory, ring: Ring) -> Option<NaturalSystem> {
    let m = cat.morphism_count();
    let facts: Vec<Vec<(usize, usize)>> = (0..m)
        .map(|f| {
            let mut out = Vec::new();
            for v in cat.out_of(cat.src(f)) {
                for u in cat.out_of(cat.dst(v)) {
                    if cat.dst(u) == cat.dst(f) && cat.compose_idx(u, v) == f {
                        out.push((u, v));
                    }
                }
            }
            out
        })
        .collect();
    let perm = |from: &[(usize, usize)], to: &[(usize, usize)], map: &dyn Fn(usize, usize) -> (usize, usize)| {
        let mut mat = Matrix::zeros(ring, to.len(), from.len());
        for (j, &(u, v)) in from.iter().enumerate() {
            let i = to.iter().position(|&x| x == map(u, v)).expect("factorizations are closed");
            mat.set_i64(i, j, 1);
        }
        mat
    };
    NaturalSystem::new(
        cat,
        ring,
        facts.iter().map(Vec::len).collect(),
        |a, f| perm(&facts[f], &facts[cat.compose_idx(a, f)], &|u, v| (cat.compose_idx(a, u), v)),
        |b, f| perm(&facts[f], &facts[cat.compose_idx(f, b)], &|u, v| (u, cat.compose_idx(v, b))),
    )
    .ok()
}

/// Named small groups.
pub fn group_catalog() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("C1", FiniteGroup::trivial()),
        ("C2", FiniteGroup::cyclic(2)),
        ("C3", FiniteGroup::cyclic(3)),
        ("C4", FiniteGroup::cyclic(4)),
        ("V4", FiniteGroup::klein()),
        ("S3", FiniteGroup::dihedral(3)),
        ("C5", FiniteGroup::cyclic(5)),
        ("C6", FiniteGroup::cyclic(6)),
        ("C7", FiniteGroup::cyclic(7)),
        ("C8", FiniteGroup::cyclic(8)),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
    ]
}

/// A random group of order at most `max_order` from the catalog.
pub fn random_group<R: Rng>(rng: &mut R, max_order: usize) -> FiniteGroup {
    let small: Vec<FiniteGroup> =
        group_catalog().into_iter().map(|(_, g)| g).filter(|g| g.order() <= max_order).collect();
    small.choose(rng).expect("the trivial group is always there").clone()
}

/// Modules with a known shape pulled back along random homomorphisms:
/// trivial, sign, regular and the three-point permutation module of `S3`,
/// summed and conjugated. The dimension is between 1 and `max_dim`.
pub fn random_module<R: Rng>(rng: &mut R, group: &FiniteGroup, ring: Ring, max_dim: usize) -> GModule {
    let mut m: Option<GModule> = None;
    for _ in 0..rng.gen_range(1..=3) {
        let piece = module_piece(rng, group, ring);
        let next = match &m {
            None => piece,
            Some(m) => m.direct_sum(&piece).expect("same group and ring"),
        };
        if next.dim() <= max_dim {
            m = Some(next);
        }
    }
    let m = m.unwrap_or_else(|| GModule::trivial(group, ring, 1));
    let (p, p_inv) = random_invertible(rng, ring, m.dim());
    m.conjugate(&p, &p_inv)
}

fn module_piece<R: Rng>(rng: &mut R, group: &FiniteGroup, ring: Ring) -> GModule {
    let targets = [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::dihedral(3),
    ];
    let h = targets.choose(rng).expect("nonempty").clone();
    let homs = crate::groupcoh::all_homomorphisms(group, &h);
    let phi = homs.choose(rng).expect("the trivial map exists");
    let shape = match rng.gen_range(0..4) {
        0 => GModule::trivial(&h, ring, 1),
        1 if h.order() == 2 => GModule::from_fn(&h, ring, 1, |g| {
            Matrix::from_i64_rows(ring, 1, &[vec![if g == 0 { 1 } else { -1 }]])
        })
        .expect("sign is a character"),
        2 if h.order() == 6 => {
            // S3 permuting the vertices of a triangle: r rotates, s reflects.
            GModule::permutation(&h, ring, 3, |g, x| {
                let (i, j) = (g % 3, g / 3);
                let y = if j == 1 { (3 - x) % 3 } else { x };
                (y + i) % 3
            })
            .expect("triangle action")
        }
        _ => GModule::permutation(&h, ring, h.order(), |g, x| h.mul(g, x)).expect("regular action"),
    };
    crate::groupcoh::restrict_module(phi, &shape).expect("phi lands in h")
}

/// A random diagram of groups of order at most `max_order` with a module of
/// dimension at most `max_dim` at every object.
///
/// The index is a poset on at most three objects, or the one-object
/// category of `C2` acting by an involution. On posets the homomorphisms
/// and module maps are chosen on covering relations and composed.
pub fn random_diagram<R: Rng>(
    rng: &mut R,
    ring: Ring,
    max_order: usize,
    max_dim: usize,
) -> (GroupDiagram, DiagramModule) {
    if rng.gen_bool(0.2) {
        return involution_diagram(rng, ring, max_order, max_dim);
    }
    let cat = random_poset(rng, 3);
    let n = cat.object_count();
    let groups: Vec<FiniteGroup> = (0..n).map(|_| random_group(rng, max_order)).collect();
    let covers: Vec<usize> = (0..cat.morphism_count())
        .filter(|&f| {
            let (i, j) = (cat.src(f), cat.dst(f));
            i != j && !(0..n).any(|k| k != i && k != j && !cat.hom(i, k).is_empty() && !cat.hom(k, j).is_empty())
        })
        .collect();
    let mut homs: Vec<Option<GroupHom>> = vec![None; cat.morphism_count()];
    for &f in &covers {
        let all = all_homomorphisms(&groups[cat.src(f)], &groups[cat.dst(f)]);
        homs[f] = Some(all.choose(rng).expect("the trivial map exists").clone());
    }
    // modules from the top down, sometimes pulled back from a successor
    let mut spaces: Vec<Option<GModule>> = vec![None; n];
    for i in (0..n).rev() {
        let up: Vec<usize> = covers.iter().copied().filter(|&f| cat.src(f) == i).collect();
        let m = match up.as_slice() {
            [f] if rng.gen_bool(0.6) => {
                let target = spaces[cat.dst(*f)].as_ref().expect("successors come later");
                restrict_module(homs[*f].as_ref().expect("cover"), target).expect("hom lands in the target group")
            }
            _ => random_module(rng, &groups[i], ring, max_dim),
        };
        spaces[i] = Some(m);
    }
    let spaces: Vec<GModule> = spaces.into_iter().map(|m| m.expect("filled")).collect();
    let mut maps: Vec<Option<Matrix>> = vec![None; cat.morphism_count()];
    for &f in &covers {
        let phi = homs[f].as_ref().expect("cover");
        let basis = equivariant_maps(phi, &spaces[cat.src(f)], &spaces[cat.dst(f)]).expect("field coefficients");
        let mut x = Matrix::zeros(ring, spaces[cat.dst(f)].dim(), spaces[cat.src(f)].dim());
        for b in &basis {
            for _ in 0..rng.gen_range(0..3) {
                x = x.add(b);
            }
        }
        maps[f] = Some(x);
    }
    for x in 0..n {
        let id = cat.identity(x);
        homs[id] = Some(GroupHom::identity(&groups[x]));
        maps[id] = Some(Matrix::identity(ring, spaces[x].dim()));
    }
    // the remaining relations i < k < j are composites of two covers
    for f in 0..cat.morphism_count() {
        if homs[f].is_some() {
            continue;
        }
        let (i, j) = (cat.src(f), cat.dst(f));
        let k = (0..n)
            .find(|&k| k != i && k != j && !cat.hom(i, k).is_empty() && !cat.hom(k, j).is_empty())
            .expect("a non-cover factors");
        let (first, second) = (cat.hom(i, k)[0], cat.hom(k, j)[0]);
        let (h1, h2) = (homs[first].clone().expect("cover"), homs[second].clone().expect("cover"));
        homs[f] = Some(h2.after(&h1).expect("composable"));
        maps[f] = Some(maps[second].as_ref().expect("cover").mul(maps[first].as_ref().expect("cover")));
    }
    let diagram = GroupDiagram::new(&cat, groups, homs.into_iter().map(|h| h.expect("filled")).collect())
        .expect("composites are functorial");
    let module = DiagramModule::new(&diagram, ring, spaces, maps.into_iter().map(|m| m.expect("filled")).collect())
        .expect("equivariant maps compose");
    (diagram, module)
}

fn involution_diagram<R: Rng>(rng: &mut R, ring: Ring, max_order: usize, max_dim: usize) -> (GroupDiagram, DiagramModule) {
    let cat = monoid_catalog()[1].1.clone();
    let abelian: Vec<FiniteGroup> = group_catalog()
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| g.order() <= max_order && g.is_abelian())
        .collect();
    let g = abelian.choose(rng).expect("the trivial group is abelian").clone();
    let t = if rng.gen_bool(0.5) {
        GroupHom::identity(&g)
    } else {
        GroupHom::new(&g, &g, (0..g.order()).map(|x| g.inverse(x)).collect()).expect("inversion of an abelian group")
    };
    let diagram = GroupDiagram::new(&cat, vec![g.clone()], vec![GroupHom::identity(&g), t]).expect("involution");
    let dim = rng.gen_range(1..=max_dim);
    // trivial action, so any involution of R^dim is equivariant
    let mut inv = Matrix::identity(ring, dim);
    for i in 0..dim {
        if rng.gen_bool(0.5) {
            inv.set_i64(i, i, -1);
        }
    }
    if ring == Ring::Prime(2) && dim == 2 && rng.gen_bool(0.5) {
        inv = Matrix::from_i64_rows(ring, 2, &[vec![0, 1], vec![1, 0]]);
    }
    let (p, p_inv) = random_invertible(rng, ring, dim);
    let space = GModule::trivial(&g, ring, dim);
    let module = DiagramModule::new(&diagram, ring, vec![space], vec![Matrix::identity(ring, dim), p.mul(&inv).mul(&p_inv)])
        .expect("involutions are functorial");
    (diagram, module)
}

/// A random finite commutative monoid with at most `max_order >= 1`
/// elements: monogenic, a product of two monogenic ones, one with a zero
/// adjoined, or truncated powers of 2.
pub fn random_monoid<R: Rng>(rng: &mut R, max_order: usize) -> ActionMonoid {
    let mut pool = vec![ActionMonoid::trivial()];
    for n in 1..=max_order {
        for k in 0..n {
            let m = ActionMonoid::monogenic(k, n - k).expect("positive period");
            if n < max_order {
                pool.push(m.with_zero());
            }
            pool.push(m);
        }
    }
    let monogenic: Vec<ActionMonoid> = pool.iter().filter(|m| m.order() >= 2).cloned().collect();
    for a in &monogenic {
        for b in &monogenic {
            if a.order() * b.order() <= max_order {
                pool.push(a.product(b));
            }
        }
    }
    pool.choose(rng).expect("nonempty pool").clone()
}

/// `F_p` with every `Ψ` the identity, and the module `F_p[monoid]` with
/// `Ψ^m e_x = e_{mx}`.
pub fn monoid_algebra(monoid: &ActionMonoid, p: u32) -> (PsiRing, PsiModule) {
    let ring = PsiRing::trivial_action(monoid.clone(), FiniteRing::zmod(p as usize).expect("positive modulus"));
    let field = Ring::Prime(p);
    let n = monoid.order();
    let psi = (0..n)
        .map(|m| Some(Matrix::from_fn(field, n, n, |i, j| i64::from(monoid.mul(m, j) == i))))
        .collect();
    let module = PsiModule::from_generators(&ring, p, n, &[(1, Matrix::identity(field, n))], psi).expect("a monoid representation");
    (ring, module)
}
