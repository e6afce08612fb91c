use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diagcoh::psiring::*;
use diagcoh::gen;
use diagcoh::Error;
use diagcoh::linalg::{Matrix, Ring};
use diagcoh::natsys::bw_cohomology;

/// `r·m` on module element indices, computed directly from the matrices.
fn act(module: &PsiModule, mat: &Matrix, m: usize) -> usize {
    let (p, dim) = (module.prime(), module.dim());
    let v = index_to_vector(m, p, dim);
    let col = Matrix::from_fn(module.field(), dim, 1, |i, _| v[i] as i64);
    let out = mat.mul(&col).to_i64_rows().unwrap();
    vector_to_index(&out.iter().map(|r| r[0] as u32).collect::<Vec<_>>(), p)
}

fn madd(module: &PsiModule, a: usize, b: usize) -> usize {
    let (p, dim) = (module.prime(), module.dim());
    let (x, y) = (index_to_vector(a, p, dim), index_to_vector(b, p, dim));
    vector_to_index(&x.iter().zip(&y).map(|(s, t)| s + t).collect::<Vec<_>>(), p)
}

/// Counts ψ-derivations by trying every value on additive generators,
/// extending additively, and checking all laws on all elements.
fn derivation_oracle(ring: &PsiRing, module: &PsiModule) -> usize {
    let r = ring.ring();
    let gens = additive_generators(r);
    let k = module.order().unwrap();
    let mut count = 0;
    'assign: for code in 0..k.pow(gens.len() as u32) {
        let vals = index_to_vector(code, k as u32, gens.len());
        let mut d: Vec<Option<usize>> = vec![None; r.order()];
        d[r.zero()] = Some(0);
        let mut stack = vec![r.zero()];
        while let Some(x) = stack.pop() {
            for (&g, &v) in gens.iter().zip(&vals) {
                let y = r.add(x, g);
                let val = madd(module, d[x].unwrap(), v as usize);
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
        let d: Vec<usize> = d.into_iter().map(Option::unwrap).collect();
        for a in 0..r.order() {
            for b in 0..r.order() {
                if d[r.add(a, b)] != madd(module, d[a], d[b]) {
                    continue 'assign;
                }
                let leibniz = madd(module, act(module, module.action(a), d[b]), act(module, module.action(b), d[a]));
                if d[r.mul(a, b)] != leibniz {
                    continue 'assign;
                }
            }
            for m in 0..ring.monoid().order() {
                if act(module, module.psi(m), d[a]) != d[ring.psi(m, a)] {
                    continue 'assign;
                }
            }
        }
        count += 1;
    }
    count
}

const CATALOG_DERIVATIONS: [usize; 13] = [1, 1, 2, 4, 1, 2, 1, 1, 1, 1, 2, 3, 1];

#[test]
fn catalog_counts_and_correspondence() {
    let cat = catalog().unwrap();
    assert!(cat.len() >= 10);
    assert_eq!(cat.len(), CATALOG_DERIVATIONS.len());
    for (e, &want) in cat.iter().zip(&CATALOG_DERIVATIONS) {
        let report = section_correspondence(&e.ring, &e.module).unwrap();
        assert_eq!(report.derivations, want, "{}", e.name);
        assert_eq!(report.sections, want, "{}", e.name);
        assert_eq!(derivation_oracle(&e.ring, &e.module), want, "{}", e.name);
        assert!(report.pairing_verified, "{}", e.name);
    }
}

#[test]
fn monoid_constructions() {
    let m = ActionMonoid::monogenic(2, 1).unwrap();
    assert_eq!(m.order(), 3);
    assert_eq!(m.mul(2, 2), 2);
    assert_eq!(m.mul(1, 1), 2);
    let t = ActionMonoid::truncated_prime_powers(&[2], 1, 2).unwrap();
    assert_eq!(t.names(), &["1", "2", "4"]);
    // 4·2 = 8 is identified with 2
    assert_eq!(t.mul(t.element("4").unwrap(), t.element("2").unwrap()), t.element("2").unwrap());
    let u = ActionMonoid::truncated_prime_powers(&[2, 3], 1, 1).unwrap();
    assert_eq!(u.order(), 4);
    assert_eq!(u.mul(u.element("2").unwrap(), u.element("3").unwrap()), u.element("6").unwrap());
    assert_eq!(u.mul(u.element("6").unwrap(), u.element("6").unwrap()), u.element("6").unwrap());
    assert!(ActionMonoid::new(vec!["a".into(), "b".into()], |x, _| x).is_err());
    let spec = u.with_zero().to_spec();
    assert_eq!(ActionMonoid::from_spec(&spec).unwrap(), u.with_zero());
}

#[test]
fn unit_is_moved_to_the_front() {
    let m = ActionMonoid::new(vec!["t".into(), "1".into()], |a, b| if a == 1 && b == 1 { 1 } else { 0 }).unwrap();
    assert_eq!(m.names(), &["1", "t"]);
    assert_eq!(m.mul(1, 1), 1);
}

#[test]
fn rings_and_bad_structures() {
    let f4 = FiniteRing::polynomial_quotient(2, &[1, 1]).unwrap();
    assert_eq!(f4.names(), &["0", "1", "x", "1+x"]);
    // x·x = x + 1
    assert_eq!(f4.mul(2, 2), 3);
    assert!(FiniteRing::new(vec!["0".into(), "1".into()], |a, b| (a + b) % 2, |_, _| 1).is_err());
    let f2 = PsiRing::trivial_action(ActionMonoid::trivial(), FiniteRing::zmod(2).unwrap());
    let c2 = ActionMonoid::monogenic(0, 2).unwrap();
    // not a ring map: x ↦ 0 fails on 1
    let z4 = FiniteRing::zmod(4).unwrap();
    assert!(PsiRing::new(c2.clone(), z4.clone(), vec![vec![0, 1, 2, 3], vec![0, 0, 0, 0]]).is_err());
    // the Frobenius is an involution, so it can act through C2 but not
    // through an idempotent
    let frob = f4.substitution(2, 2, 3);
    assert!(PsiRing::new(c2.clone(), f4.clone(), vec![(0..4).collect(), frob.clone()]).is_ok());
    assert!(PsiRing::new(ActionMonoid::monogenic(1, 1).unwrap(), f4, vec![(0..4).collect(), frob]).is_err());
    // F3 cannot act on an F2-space with 1 as the identity
    let f3 = PsiRing::trivial_action(ActionMonoid::trivial(), FiniteRing::zmod(3).unwrap());
    let bad = PsiModule::from_generators(&f3, 2, 1, &[(1, Matrix::identity(Ring::Prime(2), 1))], vec![None]);
    assert!(matches!(bad, Err(Error::ModuleAxiomFailure(_))));
    assert!(PsiModule::regular(&f2, 3).is_err());
}

#[test]
fn semidirect_product_examples() {
    let f2 = PsiRing::trivial_action(ActionMonoid::trivial(), FiniteRing::zmod(2).unwrap());
    let m = PsiModule::regular(&f2, 2).unwrap();
    let s = semidirect_product(&f2, &m).unwrap();
    let r = s.ring();
    let one_one = r.element("(1,[1])").unwrap();
    assert_eq!(r.name(r.mul(one_one, one_one)), "(1,[0])");
    let zero_one = r.element("(0,[1])").unwrap();
    assert_eq!(r.mul(zero_one, zero_one), r.zero());

    let zero = PsiModule::zero(&f2, 2).unwrap();
    let s0 = semidirect_product(&f2, &zero).unwrap();
    assert_eq!(s0.order(), 2);
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(s0.ring().mul(a, b), f2.ring().mul(a, b));
            assert_eq!(s0.ring().add(a, b), f2.ring().add(a, b));
        }
    }
    assert_eq!(sections_of_projection(&f2, &zero).unwrap().len(), 1);
    let sections = sections_of_projection(&f2, &m).unwrap();
    assert_eq!(sections.len(), 1);
    let sigma = &sections[0];
    assert_eq!((r.name(sigma[0]), r.name(sigma[1])), ("(0,[0])", "(1,[0])"));
}

#[test]
fn semidirect_products_of_the_catalog_validate() {
    for e in catalog().unwrap() {
        let s = semidirect_product(&e.ring, &e.module).unwrap();
        assert_eq!(s.order(), e.ring.order() * e.module.order().unwrap(), "{}", e.name);
    }
}

#[test]
fn twisting() {
    let cat = catalog().unwrap();
    let e = cat.iter().find(|e| e.name == "F2xF2 diagonal projection regular").unwrap();
    let t = e.ring.monoid().element("x").unwrap();
    let tw = twist_module(&e.module, t).unwrap();
    let r = e.ring.ring();
    let (first, second) = (r.element("(1,0)").unwrap(), r.element("(0,1)").unwrap());
    // (0,1) is killed by the projection, (1,0) goes to the unit
    for m in 0..4 {
        assert_eq!(act(&tw, tw.action(second), m), 0);
        assert_eq!(act(&tw, tw.action(first), m), m);
    }
    assert_eq!(twist_module(&e.module, 0).unwrap(), e.module);
    let z4 = cat.iter().find(|e| e.name == "Z/4 residue field").unwrap();
    assert_eq!(twist_module(&z4.module, 1).unwrap(), z4.module);
}

#[test]
fn derivation_systems() {
    for e in catalog().unwrap() {
        let sys = psi_derivation_system(&e.ring, &e.module).unwrap();
        let h = bw_cohomology(&sys, 1).unwrap();
        let psi = psi_derivations(&e.ring, &e.module).unwrap();
        assert_eq!(h[0].rank, psi.ncols(), "{}", e.name);
        let plain = derivation_space(&e.ring, &e.module, false).unwrap().ncols();
        assert_eq!(sys.dim(0), plain, "{}", e.name);
        if e.ring.monoid().order() == 1 {
            assert_eq!(sys.dims(), &[plain]);
        }
    }
    // identity actions give a constant system
    let ring = PsiRing::trivial_action(ActionMonoid::monogenic(1, 2).unwrap(), FiniteRing::polynomial_quotient(2, &[0, 0]).unwrap());
    let module = PsiModule::regular(&ring, 2).unwrap();
    let sys = psi_derivation_system(&ring, &module).unwrap();
    let c = sys.base();
    for f in 0..c.morphism_count() {
        assert_eq!(sys.dim(f), 2);
        for a in 0..c.morphism_count() {
            assert!(sys.push(a, f).is_identity() && sys.pull(a, f).is_identity());
        }
    }
}

#[test]
fn free_ring_examples() {
    let a = vec!["a".to_string()];
    let trivial = free_psi_ring(&a, &ActionMonoid::trivial());
    assert_eq!(trivial.var_count(), 1);
    let p = trivial.mul(&trivial.generator(0), &trivial.generator(0)).unwrap();
    assert_eq!(trivial.psi(0, &p), p);

    let idem = free_psi_ring(&a, &ActionMonoid::monogenic(1, 1).unwrap());
    idem.validate().unwrap();
    let (v, vt) = (idem.variable(0, 0), idem.variable(0, 1));
    assert_eq!(idem.var_name(vt), "a^(x)");
    assert_eq!(idem.psi_var(1, v), vt);
    assert_eq!(idem.psi_var(1, vt), vt);
    // Ψ^t(a·a^(t)) = (a^(t))^2
    let prod = idem.mul(&Polynomial::var(v), &Polynomial::var(vt)).unwrap();
    assert_eq!(idem.display(&idem.psi(1, &prod)), "a^(x)^2");
}

#[test]
fn degree_cap_is_enforced() {
    let free = FreePsiRing::new(vec!["a".into()], ActionMonoid::trivial(), 3);
    let a = free.generator(0);
    let a3 = free.mul(&free.mul(&a, &a).unwrap(), &a).unwrap();
    assert!(matches!(free.mul(&a3, &a), Err(Error::TooLarge { .. })));
    let sum = a.add(&Polynomial::constant(2)).sub(&a);
    assert_eq!(sum, Polynomial::constant(2));
}

#[test]
fn derivations_out_of_a_free_ring_are_generator_values() {
    let monoid = ActionMonoid::monogenic(1, 1).unwrap();
    let free = free_psi_ring(&["a".to_string()], &monoid);
    let (ring, module) = gen::monoid_algebra(&monoid, 2);
    let d = free.derivations(&module, &[1]).unwrap();
    assert_eq!(d.ncols(), module.dim());
    assert_eq!(free.generator_values(module.dim(), &d).rank(), module.dim());
    assert_eq!(ring.order(), 2);
}

#[test]
fn json_round_trip() {
    for e in catalog().unwrap() {
        let file = PsiFile::from_finite(&e.ring, Some(&e.module));
        let text = serde_json::to_string(&file).unwrap();
        let back: PsiFile = serde_json::from_str(&text).unwrap();
        match back.load().unwrap() {
            PsiObject::Finite { ring, module } => {
                assert_eq!(ring, e.ring, "{}", e.name);
                assert_eq!(module.unwrap(), e.module, "{}", e.name);
            }
            PsiObject::Free(_) => panic!("expected a finite ring"),
        }
    }
    let text = r#"{"monoid": {"elements": ["1", "t"], "unit": "1", "table": [["t", "t", "t"]]},
                   "symbolic": {"generators": ["a", "b"]}}"#;
    let file: PsiFile = serde_json::from_str(text).unwrap();
    match file.load().unwrap() {
        PsiObject::Free(f) => {
            assert_eq!(f.var_count(), 4);
            assert_eq!(f.degree_cap(), DEFAULT_DEGREE_CAP);
            assert_eq!(PsiFile::from_free(&f), file);
        }
        PsiObject::Finite { .. } => panic!("expected a free ring"),
    }
    let neither: PsiFile = serde_json::from_str(r#"{"monoid": {"elements": ["1"], "unit": "1"}}"#).unwrap();
    assert!(matches!(neither.load(), Err(Error::Parse(_))));
}

#[test]
fn terse_finite_file() {
    // F2 acted on trivially by C2, with the module F2 and Ψ^s = id
    let text = r#"{"monoid": {"elements": ["1", "s"], "unit": "1", "table": [["s", "s", "1"]]},
                   "carrier": {"elements": ["0", "1"], "zero": "0", "one": "1", "add": [["1", "1", "0"]]},
                   "module": {"prime": 2, "dimension": 1}}"#;
    let file: PsiFile = serde_json::from_str(text).unwrap();
    let PsiObject::Finite { ring, module } = file.load().unwrap() else { panic!() };
    let report = section_correspondence(&ring, &module.unwrap()).unwrap();
    assert_eq!((report.sections, report.derivations), (1, 1));
}

fn random_poly<R: Rng>(rng: &mut R, vars: usize, max_deg: u32) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(1..4) {
        let mut term = Polynomial::constant(rng.gen_range(-2..3));
        for _ in 0..rng.gen_range(0..=max_deg) {
            term = term.mul(&Polynomial::var(rng.gen_range(0..vars)), 64).unwrap();
        }
        p = p.add(&term);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn free_ring_laws(seed in any::<u64>(), gens in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let monoid = gen::random_monoid(&mut rng, 5);
        let names: Vec<String> = (0..gens).map(|g| format!("g{g}")).collect();
        let free = free_psi_ring(&names, &monoid);
        free.validate().unwrap();
        let k = monoid.order();
        for v in 0..free.var_count() {
            prop_assert_eq!(free.psi_var(0, v), v);
            for m in 0..k {
                for n in 0..k {
                    prop_assert_eq!(free.psi_var(m, free.psi_var(n, v)), free.psi_var(monoid.mul(m, n), v));
                }
            }
        }
        let p = random_poly(&mut rng, free.var_count(), 3);
        let (m, n) = (rng.gen_range(0..k), rng.gen_range(0..k));
        prop_assert_eq!(free.psi(m, &free.psi(n, &p)), free.psi(monoid.mul(m, n), &p));
    }

    #[test]
    fn free_ring_universal_property(seed in any::<u64>(), gens in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = catalog().unwrap();
        let e = &cat[rng.gen_range(0..cat.len())];
        let monoid = e.ring.monoid();
        let names: Vec<String> = (0..gens).map(|g| format!("g{g}")).collect();
        let free = free_psi_ring(&names, monoid);
        let assignment: Vec<usize> = (0..gens).map(|_| rng.gen_range(0..e.ring.order())).collect();
        let images = free.extend(&e.ring, &assignment).unwrap();
        // every ψ-compatible choice of images for one generator's variables
        // agrees with the constructed one
        let (k, n) = (monoid.order(), e.ring.order());
        for g in 0..gens {
            let mut count = 0;
            for code in 0..n.pow((k - 1) as u32) {
                let mut img: Vec<usize> = std::iter::once(assignment[g]).chain(index_to_vector(code, n as u32, k - 1).into_iter().map(|x| x as usize)).collect();
                img.truncate(k);
                let ok = (0..k).all(|m| (0..k).all(|s| img[monoid.mul(m, s)] == e.ring.psi(m, img[s])));
                if ok {
                    count += 1;
                    prop_assert_eq!(&img[..], &images[free.variable(g, 0)..free.variable(g, 0) + k]);
                }
            }
            prop_assert_eq!(count, 1);
        }
        let p = random_poly(&mut rng, free.var_count(), 3);
        let m = rng.gen_range(0..k);
        prop_assert_eq!(free.evaluate(&e.ring, &images, &free.psi(m, &p)), e.ring.psi(m, free.evaluate(&e.ring, &images, &p)));
    }

    #[test]
    fn free_derivations_biject_with_generator_values(seed in any::<u64>(), gens in 1usize..4, p_ix in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = [2u32, 3][p_ix];
        let monoid = gen::random_monoid(&mut rng, 5);
        let names: Vec<String> = (0..gens).map(|g| format!("g{g}")).collect();
        let free = free_psi_ring(&names, &monoid);
        let (ring, module) = gen::monoid_algebra(&monoid, p);
        let assignment: Vec<usize> = (0..gens).map(|_| rng.gen_range(0..ring.order())).collect();
        let images = free.extend(&ring, &assignment).unwrap();
        let basis = free.derivations(&module, &assignment).unwrap();
        let dim = module.dim();
        prop_assert_eq!(basis.ncols(), gens * dim);
        prop_assert_eq!(free.generator_values(dim, &basis).rank(), gens * dim);
        // check Leibniz and equivariance by evaluation on low-degree polynomials
        let cols = basis.transpose().to_i64_rows().unwrap();
        let col = &cols[rng.gen_range(0..cols.len())];
        let values: Vec<Vec<u32>> = (0..free.var_count()).map(|v| col[v * dim..(v + 1) * dim].iter().map(|&x| x as u32).collect()).collect();
        let (a, b) = (random_poly(&mut rng, free.var_count(), 2), random_poly(&mut rng, free.var_count(), 1));
        let d = |q: &Polynomial| free.apply_derivation(&module, &images, &values, q);
        let ab = free.mul(&a, &b).unwrap();
        let lhs = d(&ab);
        let (fa, fb) = (free.evaluate(&ring, &images, &a), free.evaluate(&ring, &images, &b));
        let rhs = madd(&module, act(&module, module.action(fa), vector_to_index(&d(&b), p)), act(&module, module.action(fb), vector_to_index(&d(&a), p)));
        prop_assert_eq!(vector_to_index(&lhs, p), rhs);
        let m = rng.gen_range(0..monoid.order());
        prop_assert_eq!(vector_to_index(&d(&free.psi(m, &a)), p), act(&module, module.psi(m), vector_to_index(&d(&a), p)));
    }
}
