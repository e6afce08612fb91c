use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diagcoh::fincat::*;
use diagcoh::Error;
use diagcoh::gen;

fn spec_from_table(names: &[&str], table: &[[&str; 3]]) -> CategorySpec {
    CategorySpec {
        objects: vec!["*".into()],
        morphisms: names
            .iter()
            .map(|n| MorphismSpec {
                name: n.to_string(),
                src: "*".into(),
                dst: "*".into(),
            })
            .collect(),
        identities: [("*".to_string(), names[0].to_string())].into_iter().collect(),
        compose: table.iter().map(|t| t.map(String::from)).collect(),
    }
}

#[test]
fn terminal_category_is_valid() {
    let spec = spec_from_table(&["id"], &[]);
    let c = validate_category(&spec).unwrap();
    assert_eq!((c.object_count(), c.morphism_count()), (1, 1));
    assert_eq!(c, terminal());
}

#[test]
fn cyclic_group_table_is_valid() {
    let spec = spec_from_table(&["e", "g"], &[["g", "g", "e"]]);
    let c = validate_category(&spec).unwrap();
    assert_eq!(c.compose(1, 1), Some(0));
}

#[test]
fn planted_associativity_failure_is_named() {
    // e, a, b with a a = a, a b = b, b a = a, b b = a:
    // (b b) b = a b = b but b (b b) = b a = a.
    let spec = spec_from_table(
        &["e", "a", "b"],
        &[["a", "a", "a"], ["a", "b", "b"], ["b", "a", "a"], ["b", "b", "a"]],
    );
    match validate_category(&spec) {
        Err(Error::AssocViolation { f, g, h }) => {
            let comp = |x: &str, y: &str| -> String {
                match (x, y) {
                    ("e", y) => y.to_string(),
                    (x, "e") => x.to_string(),
                    _ => spec
                        .compose
                        .iter()
                        .find(|t| t[0] == x && t[1] == y)
                        .map(|t| t[2].clone())
                        .unwrap(),
                }
            };
            assert_ne!(comp(&comp(&h, &g), &f), comp(&h, &comp(&g, &f)));
        }
        other => panic!("expected an associativity violation, got {other:?}"),
    }
    let all = category_violations(&spec);
    assert!(all.iter().any(|e| *e
        == Error::AssocViolation {
            f: "b".into(),
            g: "b".into(),
            h: "b".into()
        }));
}

#[test]
fn identity_and_typing_errors() {
    let bad_identity = spec_from_table(&["e", "g"], &[["g", "g", "e"], ["e", "g", "e"]]);
    assert!(matches!(validate_category(&bad_identity), Err(Error::IdentityViolation(_))));

    let mut mistyped = arrow().to_spec();
    mistyped.compose.push(["a".into(), "a".into(), "a".into()]);
    assert!(matches!(validate_category(&mistyped), Err(Error::TypeMismatch(_))));

    let mut missing = spec_from_table(&["e", "g"], &[]);
    missing.compose.clear();
    assert!(matches!(validate_category(&missing), Err(Error::Invalid(_))));

    let mut unknown = terminal().to_spec();
    unknown.identities.insert("*".into(), "nope".into());
    assert!(matches!(validate_category(&unknown), Err(Error::UnknownMorphism(_))));
}

#[test]
fn morphism_cap_is_enforced() {
    let big = poset(12, &[(0, 11)]).unwrap().to_spec();
    assert!(validate_category_capped(&big, 5).is_err());
    assert!(validate_category(&big).is_ok());
}

#[test]
fn spec_round_trip_through_json() {
    let c = ordinal_sum(&arrow(), &discrete(2));
    let json = serde_json::to_string(&c.to_spec()).unwrap();
    let back: CategorySpec = serde_json::from_str(&json).unwrap();
    assert_eq!(validate_category(&back).unwrap(), c);
}

#[test]
fn factorization_of_terminal_is_terminal() {
    let f = factorization_category(&terminal());
    let c = f.to_category(1000).unwrap();
    assert_eq!((c.object_count(), c.morphism_count()), (1, 1));
}

#[test]
fn factorization_of_arrow() {
    let base = arrow();
    let f = factorization_category(&base);
    assert_eq!(f.object_count(), 3);
    let (id0, a) = (base.morphism("id_0").unwrap(), base.morphism("a").unwrap());
    // Brute force: every (α, β) with α ∘ id_0 ∘ β = a.
    let mut expect = Vec::new();
    for alpha in 0..base.morphism_count() {
        for beta in 0..base.morphism_count() {
            let ok = base
                .compose(alpha, id0)
                .and_then(|x| base.compose(x, beta))
                .is_some_and(|g| g == a);
            if ok {
                expect.push((alpha, beta));
            }
        }
    }
    let got: Vec<(usize, usize)> =
        f.hom(id0, a).iter().map(|&i| (f.morphisms()[i].alpha, f.morphisms()[i].beta)).collect();
    assert_eq!(got, expect);
    assert_eq!(got, vec![(a, id0)]);
    f.to_category(1000).unwrap();
}

#[test]
fn factorization_of_monoid_has_one_object_per_element() {
    for (_, m) in gen::monoid_catalog() {
        let f = factorization_category(&m);
        assert_eq!(f.object_count(), m.morphism_count());
        f.to_category(10_000).unwrap();
    }
}

#[test]
fn chain_counts() {
    assert_eq!(chains(&terminal(), 2).len(), 1);
    let arrow_chains = chains(&arrow(), 1);
    assert_eq!(arrow_chains.len(), 3);
    assert_eq!(arrow_chains.iter().filter(|c| arrow().is_identity(c.arrows[0])).count(), 2);
    let c2 = &gen::monoid_catalog()[1].1;
    assert_eq!(chains(c2, 2).len(), 4);
    assert_eq!(chains(&arrow(), 0).len(), 2);
}

#[test]
fn chain_orientation() {
    // In 0 -> 1 the 2-chain (a, id_0) has α_1 = a at the target end.
    let c = arrow();
    let a = c.morphism("a").unwrap();
    let id0 = c.morphism("id_0").unwrap();
    let ch = chains(&c, 2).into_iter().find(|ch| ch.arrows == vec![a, id0]).unwrap();
    assert_eq!(ch.objects, vec![1, 0, 0]);
    assert_eq!((ch.source(), ch.target(), ch.composite), (0, 1, a));
}

#[test]
fn initial_objects() {
    assert_eq!(initial_object(&arrow()), Some(0));
    assert_eq!(initial_object(&gen::monoid_catalog()[1].1), None);
    assert_eq!(initial_object(&discrete(2)), None);
}

#[test]
fn under_categories() {
    let t = under_category(&terminal(), 0).unwrap();
    assert_eq!((t.object_count(), t.morphism_count()), (1, 1));

    let u = under_category(&arrow(), 0).unwrap();
    assert_eq!(u.objects(), &["id_0".to_string(), "a".to_string()]);
    assert_eq!(u.morphism_count(), 3);
    assert_eq!(initial_object(&u), Some(0));
    assert!(matches!(under_category(&arrow(), 7), Err(Error::UnknownObject(_))));
}

#[test]
fn functor_validation() {
    // The arrow category maps to the terminal one and into itself.
    let (a, t) = (arrow(), terminal());
    let to_point = Functor {
        objects: vec![0, 0],
        morphisms: vec![0, 0, 0],
    };
    to_point.validate(&a, &t).unwrap();
    let swap = Functor {
        objects: vec![1, 0],
        morphisms: vec![1, 0, 2],
    };
    assert!(swap.validate(&a, &a).is_err());
}

/// Number of composable `p`-tuples as `1^T A^{p-1} 1`, with `A[g][f] = 1`
/// when `g` can follow `f`.
fn path_count(c: &FiniteCategory, p: usize) -> usize {
    if p == 0 {
        return c.object_count();
    }
    let m = c.morphism_count();
    let mut v = vec![1usize; m];
    for _ in 1..p {
        v = (0..m)
            .map(|g| (0..m).filter(|&f| c.dst(f) == c.src(g)).map(|f| v[f]).sum())
            .collect();
    }
    v.iter().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_category_is_a_category(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = gen::random_category(&mut rng, 8);
        let f = factorization_category(&c);
        prop_assert!(f.to_category(usize::MAX).is_ok());
    }

    #[test]
    fn chain_count_matches_path_count(seed in any::<u64>(), p in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = gen::random_category(&mut rng, 10);
        let ch = chains(&c, p);
        prop_assert_eq!(ch.len(), path_count(&c, p));
        let mut sorted = ch.clone();
        sorted.sort_by(|a, b| a.arrows.cmp(&b.arrows).then(a.objects.cmp(&b.objects)));
        prop_assert_eq!(sorted, ch);
    }

    #[test]
    fn under_category_has_initial_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = gen::random_category(&mut rng, 12);
        for y in 0..c.object_count() {
            let u = under_category(&c, y).unwrap();
            let id_pos = c.out_of(y).iter().position(|&f| f == c.identity(y)).unwrap();
            prop_assert!(initial_object(&u).is_some());
            prop_assert!((0..u.object_count()).all(|j| u.hom(id_pos, j).len() == 1));
        }
    }

    #[test]
    fn random_initial_categories_have_one(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = gen::random_category_with_initial(&mut rng, 16);
        prop_assert!(initial_object(&c).is_some());
    }
}
