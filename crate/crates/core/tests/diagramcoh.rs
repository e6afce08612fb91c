use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diagcoh::diagramcoh::*;
use diagcoh::fincat::{arrow, discrete, initial_object, terminal};
use diagcoh::gen;
use diagcoh::groupcoh::{derivations, group_cohomology, FiniteGroup, GModule, GroupHom};
use diagcoh::linalg::{FgAbelianGroup, Matrix, Ring};
use diagcoh::Error;
use diagcoh::natsys::{bw_cohomology, NaturalSystem};

const F2: Ring = Ring::Prime(2);
const F3: Ring = Ring::Prime(3);

fn ranks(h: &[FgAbelianGroup]) -> Vec<usize> {
    h.iter().map(|g| g.rank).collect()
}

fn single(group: &FiniteGroup, module: &GModule) -> (GroupDiagram, DiagramModule) {
    let t = terminal();
    let a = GroupDiagram::constant(&t, group);
    let m = DiagramModule::new(&a, module.ring(), vec![module.clone()], vec![Matrix::identity(module.ring(), module.dim())])
        .unwrap();
    (a, m)
}

/// Unknowns: one cochain `ψ(i) in C^1(A(i), M(i))` per object. Rows:
/// `ψ(i)(gh) - g ψ(i)(h) - ψ(i)(g)` and `M(α) ψ(i)(g) - ψ(j)(A(α) g)`.
fn compatibility_oracle(a: &GroupDiagram, m: &DiagramModule) -> usize {
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
            let image = a.map(f).apply(u);
            rows.push(vec![
                (offset[i] + u * di, m.map(f).clone()),
                (offset[j] + image * dj, Matrix::identity(ring, dj).neg()),
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

#[test]
fn terminal_index_is_group_cohomology() {
    let g = FiniteGroup::cyclic(4);
    let m = GModule::permutation(&g, F2, 2, |x, p| (x + p) % 2).unwrap();
    let (a, dm) = single(&g, &m);
    let h = diagram_cohomology(&a, &dm, 3, Convention::Plain).unwrap();
    assert_eq!(h, group_cohomology(&m, 3).unwrap());
    // comonad degrees: Der, then H^2, H^3, …
    let h = diagram_cohomology(&a, &dm, 2, Convention::Comonad).unwrap();
    let plain = ranks(&group_cohomology(&m, 3).unwrap());
    assert_eq!(ranks(&h), vec![derivations(&m).unwrap().ncols(), plain[2], plain[3]]);
    let h = diagram_cohomology(&a, &dm, 3, Convention::Cegarra).unwrap();
    assert_eq!(ranks(&h), vec![0, derivations(&m).unwrap().ncols(), plain[2], plain[3]]);
}

#[test]
fn discrete_index_is_a_direct_sum() {
    let c = discrete(2);
    let (g1, g2) = (FiniteGroup::cyclic(2), FiniteGroup::klein());
    let a = GroupDiagram::new(&c, vec![g1.clone(), g2.clone()], vec![GroupHom::identity(&g1), GroupHom::identity(&g2)])
        .unwrap();
    let m1 = GModule::trivial(&g1, F2, 1);
    let m2 = GModule::permutation(&g2, F2, 2, |x, p| if x == 1 || x == 3 { 1 - p } else { p }).unwrap();
    let m = DiagramModule::new(&a, F2, vec![m1.clone(), m2.clone()], vec![Matrix::identity(F2, 1), Matrix::identity(F2, 2)])
        .unwrap();
    let got = ranks(&diagram_cohomology(&a, &m, 3, Convention::Plain).unwrap());
    let (h1, h2) = (ranks(&group_cohomology(&m1, 3).unwrap()), ranks(&group_cohomology(&m2, 3).unwrap()));
    assert_eq!(got, h1.iter().zip(&h2).map(|(x, y)| x + y).collect::<Vec<_>>());
    let r = local_to_global(&a, &m, 3, Convention::Plain).unwrap();
    assert!(r.e2_matches && r.converges);
    for p in 1..=3 {
        assert!(r.e2[p].iter().all(|&x| x == 0));
    }
    assert_eq!(r.e2, r.einf);
}

#[test]
fn arrow_constant_c2_golden() {
    let c = arrow();
    let g = FiniteGroup::cyclic(2);
    let a = GroupDiagram::constant(&c, &g);
    let m = DiagramModule::trivial(&a, F2, 1);
    let r = local_to_global(&a, &m, 4, Convention::Plain).unwrap();
    // Hand-assembled: every value is H^q(C2, F2) = F2 with identity actions.
    for q in 0..=4 {
        let hand = NaturalSystem::constant(&c, F2, 1);
        let bw = ranks(&bw_cohomology(&hand, 4 - q).unwrap());
        for (p, &x) in bw.iter().enumerate() {
            assert_eq!(r.e2_local[p][q], x);
        }
    }
    assert_eq!(r.e2[0], vec![1, 1, 1, 1, 1]);
    assert!(r.e2[1..].iter().flatten().all(|&x| x == 0));
    assert_eq!(r.total, vec![1, 1, 1, 1, 1]);
    assert!(r.e2_matches && r.converges);
    // E_1 is the chainwise group cohomology and is larger
    assert_eq!(r.r_max, 2);
}

#[test]
fn local_system_conventions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (a, m) = gen::random_diagram(&mut rng, F3, 4, 2);
    let c = a.index();
    let zero = local_system(&a, &m, 0, Convention::Cegarra).unwrap();
    assert!(zero.system.dims().iter().all(|&d| d == 0));
    let der = local_system(&a, &m, 1, Convention::Cegarra).unwrap();
    let fixed = local_system(&a, &m, 0, Convention::Plain).unwrap();
    let comonad = local_system(&a, &m, 0, Convention::Comonad).unwrap();
    for f in 0..c.morphism_count() {
        let n = m.pulled_back(&a, f);
        assert_eq!(der.system.dim(f), derivations(&n).unwrap().ncols());
        assert_eq!(comonad.system.dim(f), der.system.dim(f));
        assert_eq!(fixed.system.dim(f), n.fixed_points().unwrap().ncols());
    }
}

#[test]
fn mixed_conventions_are_rejected() {
    let c = arrow();
    let a = GroupDiagram::constant(&c, &FiniteGroup::cyclic(2));
    let m = DiagramModule::trivial(&a, F2, 1);
    let locals: Vec<_> = (0..=2).map(|q| local_system(&a, &m, q, Convention::Cegarra).unwrap()).collect();
    assert!(matches!(
        local_to_global_with(&a, &m, 2, Convention::Plain, &locals),
        Err(Error::ConventionMismatch(_))
    ));
    assert!(local_to_global_with(&a, &m, 2, Convention::Cegarra, &locals).unwrap().e2_matches);
}

#[test]
fn bad_diagrams_are_rejected() {
    let c = arrow();
    let (c2, c3) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
    let arrow_map = c.morphism("a").unwrap();
    let mut homs = vec![GroupHom::identity(&c2), GroupHom::identity(&c3), GroupHom::trivial(&c2, &c3)];
    let a = GroupDiagram::new(&c, vec![c2.clone(), c3.clone()], homs.clone()).unwrap();
    homs.swap(0, 1);
    assert!(GroupDiagram::new(&c, vec![c2.clone(), c3.clone()], homs).is_err());
    // sign on C2 mapped by the identity into the trivial C3-module fails
    // equivariance
    let sign = GModule::from_fn(&c2, F3, 1, |g| Matrix::from_i64_rows(F3, 1, &[vec![if g == 0 { 1 } else { -1 }]])).unwrap();
    let mut maps = vec![Matrix::identity(F3, 1); 3];
    let spaces = vec![sign, GModule::trivial(&c3, F3, 1)];
    assert!(matches!(
        DiagramModule::new(&a, F3, spaces.clone(), maps.clone()),
        Err(Error::ModuleAxiomFailure(_))
    ));
    maps[arrow_map] = Matrix::zeros(F3, 1, 1);
    assert!(DiagramModule::new(&a, F3, spaces, maps).is_ok());
}

#[test]
fn bundle_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let (a, m) = gen::random_diagram(&mut rng, F2, 4, 2);
        let bundle = DiagramBundle::from_parts(&a, &m);
        let json = serde_json::to_string(&bundle).unwrap();
        let back: DiagramBundle = serde_json::from_str(&json).unwrap();
        assert_eq!(back.load().unwrap(), (a, m));
    }
}

#[test]
fn initial_object_and_constant_groups_concentrate_e2() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let c = gen::random_category_with_initial(&mut rng, 6);
        let g = gen::random_group(&mut rng, 4);
        let a = GroupDiagram::constant(&c, &g);
        let m = DiagramModule::trivial(&a, F2, 1);
        let r = local_to_global(&a, &m, 3, Convention::Plain).unwrap();
        assert!(initial_object(&c).is_some());
        assert!(r.e2[1..].iter().flatten().all(|&x| x == 0), "{:?}", r.e2);
        assert!(r.e2_matches && r.converges);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degree_zero_is_compatible_derivations(seed in any::<u64>(), ring_ix in 0usize..2) {
        let ring = [F2, F3][ring_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, m) = gen::random_diagram(&mut rng, ring, 4, 2);
        let h = diagram_cohomology(&a, &m, 0, Convention::Comonad).unwrap();
        let oracle = compatibility_oracle(&a, &m);
        prop_assert_eq!(h[0].rank, oracle);
        prop_assert_eq!(compatible_derivations(&a, &m).unwrap().ncols(), oracle);
    }

    #[test]
    fn local_to_global_agrees(seed in any::<u64>(), ring_ix in 0usize..2, conv_ix in 0usize..3) {
        let ring = [F2, F3][ring_ix];
        let conv = [Convention::Plain, Convention::Cegarra, Convention::Comonad][conv_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, m) = gen::random_diagram(&mut rng, ring, 4, 2);
        let r = local_to_global(&a, &m, 3, conv).unwrap();
        prop_assert!(r.e2_matches, "{:?} vs {:?}", r.e2, r.e2_local);
        prop_assert!(r.converges);
        let h = diagram_cohomology(&a, &m, 3, conv).unwrap();
        prop_assert_eq!(ranks(&h), r.total);
    }
}
