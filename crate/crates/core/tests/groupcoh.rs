use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diagcoh::groupcoh::*;
use diagcoh::error::Error;
use diagcoh::gen;
use diagcoh::linalg::{FgAbelianGroup, Matrix, Ring};
use diagcoh::natsys::{bw_cohomology, LinearFunctor, NaturalSystem};

const F2: Ring = Ring::Prime(2);
const F3: Ring = Ring::Prime(3);

fn dims(h: &[FgAbelianGroup]) -> Vec<usize> {
    h.iter().map(|g| g.rank).collect()
}

/// Cohomology of a cyclic group from the 2-periodic resolution
/// `… -> ZG --N--> ZG --(t-1)--> ZG -> Z`: after `Hom(-, M)` the complex is
/// `M --(T-1)--> M --N--> M --(T-1)--> …` with `T` the generator's action.
fn periodic_oracle(t: &Matrix, order: usize, q_max: usize) -> Vec<usize> {
    let ring = t.ring();
    let dim = t.nrows();
    let id = Matrix::identity(ring, dim);
    let t_minus = t.add(&id.neg());
    let mut norm = Matrix::zeros(ring, dim, dim);
    let mut power = id.clone();
    for _ in 0..order {
        norm = norm.add(&power);
        power = t.mul(&power);
    }
    let (r_t, r_n) = (t_minus.rank(), norm.rank());
    (0..=q_max)
        .map(|q| match q {
            0 => dim - r_t,
            _ if q % 2 == 1 => dim - r_n - r_t,
            _ => dim - r_t - r_n,
        })
        .collect()
}

fn sign(group: &FiniteGroup, ring: Ring, gen: usize) -> GModule {
    // The generator `gen` of a cyclic group acts by -1.
    let n = group.order();
    GModule::from_fn(group, ring, 1, |g| {
        let k = (0..n).find(|&k| (0..k).fold(group.unit(), |x, _| group.mul(x, gen)) == g).unwrap();
        Matrix::from_i64_rows(ring, 1, &[vec![if k % 2 == 0 { 1 } else { -1 }]])
    })
    .unwrap()
}

#[test]
fn catalog_groups_are_groups() {
    for (name, g) in gen::group_catalog() {
        assert_eq!(FiniteGroup::from_spec(&g.to_spec()).unwrap(), g, "{name}");
    }
    assert!(!FiniteGroup::dihedral(3).is_abelian());
    assert!(!FiniteGroup::quaternion().is_abelian());
    assert!(FiniteGroup::klein().is_abelian());
}

#[test]
fn bad_tables_are_rejected() {
    let names = |n: usize| (0..n).map(|i| format!("x{i}")).collect::<Vec<_>>();
    // x y = x has no unit.
    assert!(matches!(FiniteGroup::new(names(2), |x, _| x), Err(Error::IdentityViolation(_))));
    // {0, 1} under max: a monoid, 1 has no inverse.
    assert!(matches!(FiniteGroup::new(names(2), |x, y| x.max(y)), Err(Error::Invalid(_))));
    // x y = 1 - y: (x0 x0) x0 = x0, x0 (x0 x0) = x1.
    assert!(matches!(FiniteGroup::new(names(2), |_, y| 1 - y), Err(Error::AssocViolation { .. })));
    let mut spec = FiniteGroup::cyclic(2).to_spec();
    spec.table.pop();
    assert!(FiniteGroup::from_spec(&spec).is_err());
    let mut spec = FiniteGroup::cyclic(2).to_spec();
    spec.unit = "g".into();
    assert!(matches!(FiniteGroup::from_spec(&spec), Err(Error::IdentityViolation(_))));
}

#[test]
fn homomorphism_counts() {
    // Brute force over all maps for groups of order at most 4.
    let brute = |a: &FiniteGroup, b: &FiniteGroup| {
        let total = b.order().pow(a.order() as u32);
        (0..total)
            .filter(|&code| {
                let map: Vec<usize> = (0..a.order()).map(|i| code / b.order().pow(i as u32) % b.order()).collect();
                (0..a.order()).all(|x| (0..a.order()).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
            })
            .count()
    };
    let small: Vec<FiniteGroup> = gen::group_catalog().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 4).collect();
    for a in &small {
        for b in &small {
            assert_eq!(all_homomorphisms(a, b).len(), brute(a, b));
        }
    }
    assert_eq!(all_homomorphisms(&FiniteGroup::quaternion(), &FiniteGroup::cyclic(2)).len(), 4);
    assert_eq!(all_homomorphisms(&FiniteGroup::cyclic(2), &FiniteGroup::dihedral(3)).len(), 4);
}

#[test]
fn hom_spec_round_trip() {
    let (c2, c4) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    let inc = GroupHom::new(&c2, &c4, vec![0, 2]).unwrap();
    let json = serde_json::to_string(&inc.to_spec()).unwrap();
    assert_eq!(json, r#"{"map":{"e":"e","g":"g2"}}"#);
    let back = GroupHom::from_spec(&c2, &c4, &serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, inc);
    assert!(GroupHom::new(&c2, &c4, vec![0, 1]).is_err());
}

#[test]
fn restriction_examples() {
    let c4 = FiniteGroup::cyclic(4);
    let c2 = FiniteGroup::cyclic(2);
    let m = sign(&c4, F3, 1);
    assert_eq!(restrict_module(&GroupHom::identity(&c4), &m).unwrap(), m);
    let triv = restrict_module(&GroupHom::trivial(&c2, &c4), &m).unwrap();
    assert_eq!(triv, GModule::trivial(&c2, F3, 1));
    // C2 -> C4, g -> g^2: the generator acts by (-1)^2.
    let inc = GroupHom::new(&c2, &c4, vec![0, 2]).unwrap();
    let r = restrict_module(&inc, &m).unwrap();
    assert!(r.action(1).is_identity());
}

#[test]
fn module_axioms_are_checked() {
    let c2 = FiniteGroup::cyclic(2);
    let twice = |g: usize| Matrix::from_i64_rows(F3, 1, &[vec![if g == 0 { 1 } else { 2 }]]);
    assert!(GModule::from_fn(&c2, F3, 1, twice).is_ok());
    let c3 = FiniteGroup::cyclic(3);
    // g -> 2 is not a homomorphism on C3 over F_3: 2^3 = 2.
    let bad = GModule::from_fn(&c3, F3, 1, |g| Matrix::from_i64_rows(F3, 1, &[vec![if g == 0 { 1 } else { 2 }]]));
    assert!(matches!(bad, Err(Error::ModuleAxiomFailure(_))));
    let spec: ModuleSpec = serde_json::from_str(r#"{"dimension": 1, "prime": 3, "action": {"g": [[2]]}}"#).unwrap();
    let m = GModule::from_spec(&c2, &spec).unwrap();
    assert_eq!(m.to_spec(), spec);
}

#[test]
fn degree_zero_is_fixed_points() {
    let c3 = FiniteGroup::cyclic(3);
    let m = GModule::permutation(&c3, F2, 3, |g, x| (g + x) % 3).unwrap();
    let h = group_cohomology(&m, 0).unwrap();
    assert_eq!(dims(&h), vec![1]);
    let c = bar_complex(&m, 1).unwrap();
    // d^0(m)(g) = g m - m
    let v = Matrix::from_i64_rows(F2, 1, &[vec![1], vec![0], vec![0]]);
    let dv = c.differential(0).mul(&v);
    for g in 0..3 {
        let expect = m.action(g).mul(&v).add(&v.neg());
        assert_eq!(dv.row_range(3 * g, 3), expect);
    }
}

#[test]
fn c2_trivial_f2_is_one_everywhere() {
    let m = GModule::trivial(&FiniteGroup::cyclic(2), F2, 1);
    assert_eq!(dims(&group_cohomology(&m, 4).unwrap()), vec![1; 5]);
}

#[test]
fn c3_trivial_f2_vanishes_above_zero() {
    let m = GModule::trivial(&FiniteGroup::cyclic(3), F2, 1);
    assert_eq!(dims(&group_cohomology(&m, 4).unwrap()), vec![1, 0, 0, 0, 0]);
}

#[test]
fn integral_cohomology_of_c2() {
    let m = GModule::trivial(&FiniteGroup::cyclic(2), Ring::Integers, 1);
    let h = group_cohomology(&m, 4).unwrap();
    let z2 = FgAbelianGroup::new(0, &[2]).unwrap();
    assert_eq!(h, vec![FgAbelianGroup::free(1), FgAbelianGroup::zero(), z2.clone(), FgAbelianGroup::zero(), z2]);
}

#[test]
fn klein_four_over_f2() {
    // Poincare series 1/(1-t)^2: dim H^q = q + 1.
    let m = GModule::trivial(&FiniteGroup::klein(), F2, 1);
    assert_eq!(dims(&group_cohomology(&m, 3).unwrap()), vec![1, 2, 3, 4]);
}

#[test]
fn derivation_examples() {
    let c2 = FiniteGroup::cyclic(2);
    let m = GModule::trivial(&c2, F2, 1);
    // Brute force over the four maps C2 -> F2.
    let mut count = 0;
    for code in 0..4usize {
        let f = |g: usize| (code >> g) & 1;
        if (0..2).all(|a| (0..2).all(|b| f(c2.mul(a, b)) == (f(a) + f(b)) % 2)) {
            count += 1;
        }
    }
    assert_eq!(count, 2);
    assert_eq!(derivations(&m).unwrap().ncols(), 1);
    assert_eq!(derivations(&GModule::trivial(&c2, F2, 0)).unwrap().ncols(), 0);
    assert_eq!(derivations(&GModule::trivial(&FiniteGroup::trivial(), F3, 2)).unwrap().ncols(), 0);
    assert!(derivations(&GModule::trivial(&c2, Ring::Integers, 1)).is_err());
}

#[test]
fn cyclic_groups_match_periodic_resolution() {
    for n in [2usize, 3, 4] {
        let g = FiniteGroup::cyclic(n);
        for ring in [F2, F3] {
            let mut modules = vec![GModule::trivial(&g, ring, 1)];
            // -1 has odd order only when it is 1
            if n % 2 == 0 {
                modules.push(sign(&g, ring, 1));
            }
            for m in modules {
                let got = dims(&group_cohomology(&m, 4).unwrap());
                assert_eq!(got, periodic_oracle(m.action(1), n, 4), "C{n} over {ring}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fixed_points_and_cocycles(seed in any::<u64>(), ring_ix in 0usize..2) {
        let ring = [F2, F3][ring_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen::random_group(&mut rng, 6);
        let m = gen::random_module(&mut rng, &g, ring, 3);
        let c = bar_complex(&m, 2).unwrap();
        let h = group_cohomology(&m, 1).unwrap();
        prop_assert_eq!(h[0].rank, m.fixed_points().unwrap().ncols());
        let z1 = c.differential(1).kernel_basis().unwrap().ncols();
        prop_assert_eq!(derivations(&m).unwrap().ncols(), z1);
    }

    #[test]
    fn restriction_is_functorial(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = gen::random_group(&mut rng, 8);
        let b = gen::random_group(&mut rng, 8);
        let c = gen::random_group(&mut rng, 8);
        use rand::seq::SliceRandom;
        let phi = all_homomorphisms(&a, &b).choose(&mut rng).unwrap().clone();
        let psi = all_homomorphisms(&b, &c).choose(&mut rng).unwrap().clone();
        let m = gen::random_module(&mut rng, &c, F3, 3);
        let two_steps = restrict_module(&phi, &restrict_module(&psi, &m).unwrap()).unwrap();
        prop_assert_eq!(two_steps, restrict_module(&psi.after(&phi).unwrap(), &m).unwrap());
    }

    #[test]
    fn cyclic_random_modules_match_oracle(seed in any::<u64>(), n in 2usize..5, ring_ix in 0usize..2) {
        let ring = [F2, F3][ring_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = FiniteGroup::cyclic(n);
        let m = gen::random_module(&mut rng, &g, ring, 3);
        prop_assert_eq!(dims(&group_cohomology(&m, 4).unwrap()), periodic_oracle(m.action(1), n, 4));
    }

    #[test]
    fn one_object_bw_matches_bar(seed in any::<u64>(), ring_ix in 0usize..3) {
        let ring = [F2, F3, Ring::Integers][ring_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen::random_group(&mut rng, 4);
        let m = gen::random_module(&mut rng, &g, ring, 2);
        let cat = g.as_category();
        let by_name = |f: usize| g.element(cat.morphism_name(f)).unwrap();
        let functor = LinearFunctor {
            ring,
            dims: vec![m.dim()],
            maps: (0..cat.morphism_count()).map(|f| m.action(by_name(f)).clone()).collect(),
        };
        let sys = NaturalSystem::from_functor(&cat, &functor).unwrap();
        prop_assert_eq!(bw_cohomology(&sys, 3).unwrap(), group_cohomology(&m, 3).unwrap());
    }
}
