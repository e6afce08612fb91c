//! Property suites rerun with a fixed seed. Every property draws its
//! instances from its own generator seeded by `(seed, property name)`, so
//! scopes can be run separately and reports are reproducible.

mod oracles;

use clap::ValueEnum;
use diagcoh::chaincomplex::{complex_cohomology, spectral_sequence, CochainComplex, DoubleComplex};
use diagcoh::diagramcoh::{
    compatible_derivations, diagram_cohomology, local_to_global, Convention, DiagramModule, GroupDiagram,
};
use diagcoh::fincat::{
    chains, discrete, factorization_category, initial_object, terminal, validate_category, CategorySpec,
    MorphismSpec,
};
use diagcoh::gen;
use diagcoh::groupcoh::{group_cohomology, FiniteGroup, GModule};
use diagcoh::linalg::{smith_normal_form, FgAbelianGroup, Matrix, Ring};
use diagcoh::natsys::{bw_cohomology, bw_complex, NaturalSystem};
use diagcoh::psiring::{catalog, free_psi_ring, section_correspondence};
use diagcoh::Error;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::report::{verdict, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    All,
    Exactlinalg,
    Chaincomplex,
    Fincat,
    Natsys,
    Groupcoh,
    Diagramcoh,
    Psiring,
}

const F2: Ring = Ring::Prime(2);
const F3: Ring = Ring::Prime(3);
const FIELDS: [Ring; 3] = [F2, F3, Ring::Rationals];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub property: &'static str,
    pub cases: usize,
    pub passed: usize,
    /// The first failing case, if any.
    pub failure: Option<String>,
}

type Case = std::result::Result<(), String>;

fn lib<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Case {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn name_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a, stable across platforms and releases
    name.bytes()
        .fold(0xcbf29ce484222325u64 ^ seed, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn property(
    seed: u64,
    suite: &'static str,
    property: &'static str,
    cases: usize,
    mut f: impl FnMut(usize, &mut ChaCha8Rng) -> Case,
) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(name_seed(seed, property));
    let mut passed = 0;
    let mut failure = None;
    for i in 0..cases {
        match f(i, &mut rng) {
            Ok(()) => passed += 1,
            Err(e) => {
                failure.get_or_insert(format!("case {i}: {e}"));
            }
        }
    }
    Check {
        suite,
        property,
        cases,
        passed,
        failure,
    }
}

fn ranks(h: &[FgAbelianGroup]) -> Vec<usize> {
    h.iter().map(|g| g.rank).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, ring: Ring, rows: usize, cols: usize, span: i64) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| rng.gen_range(-span..=span))
}

// ---------------------------------------------------------------- exactlinalg

fn exactlinalg(seed: u64) -> Vec<Check> {
    const S: &str = "exactlinalg";
    let smith = property(seed, S, "smith certificate", 40, |_, rng| {
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let mut a = random_matrix(rng, Ring::Integers, m, n, 6);
        if rng.gen_bool(0.3) && m > 1 {
            // force a dependent row
            for j in 0..n {
                let v = a.get(0, j).to_i64().unwrap() * 2;
                a.set_i64(m - 1, j, v);
            }
        }
        let form = lib(smith_normal_form(&a))?;
        let unit = |u: &Matrix| u.int_determinant().map(|d| d == BigInt::from(1) || d == BigInt::from(-1));
        ensure(unit(&form.left) == Some(true) && unit(&form.right) == Some(true), || "transforms are not unimodular".into())?;
        let d = form.left.mul(&a).mul(&form.right);
        for i in 0..m {
            for j in 0..n {
                let want = if i == j && i < form.divisors.len() { form.divisors[i].clone() } else { BigInt::from(0) };
                let got = d.get(i, j).to_i64().map(BigInt::from);
                ensure(got == Some(want.clone()), || format!("U A V at ({i}, {j}) is not {want}"))?;
            }
        }
        ensure(form.divisors.windows(2).all(|w| &w[1] % &w[0] == BigInt::from(0)), || "divisors do not form a chain".into())?;
        ensure(form.divisors.len() == a.to_rational().rank(), || "number of divisors differs from the rank".into())?;
        if m == n {
            let det = a.int_determinant().unwrap();
            let prod: BigInt = form.divisors.iter().product();
            let want = if form.divisors.len() == n { prod } else { BigInt::from(0) };
            ensure(det.clone() * det.clone() == want.clone() * want, || "|det| differs from the divisor product".into())?;
        }
        Ok(())
    });
    let nullity = property(seed, S, "rank-nullity", 60, |i, rng| {
        let ring = FIELDS[i % 3];
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_matrix(rng, ring, m, n, 2);
        let k = lib(a.kernel_basis())?;
        ensure(a.mul(&k).is_zero(), || "kernel vectors are not killed".into())?;
        ensure(k.rank() == k.ncols(), || "kernel basis is dependent".into())?;
        ensure(a.rank() + k.ncols() == n, || format!("rank {} + nullity {} != {n}", a.rank(), k.ncols()))
    });
    let solve = property(seed, S, "solve round trip", 60, |i, rng| {
        let ring = FIELDS[i % 3];
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_matrix(rng, ring, m, n, 2);
        let b = lib(a.column_space_basis())?;
        let x = random_matrix(rng, ring, b.ncols(), 2, 3);
        let t = b.mul(&x);
        let got = lib(b.solve_independent(&t))?;
        ensure(got.as_ref() == Some(&x), || "solution differs from the planted one".into())
    });
    vec![smith, nullity, solve]
}

// --------------------------------------------------------------- chaincomplex

fn conjugated(rng: &mut ChaCha8Rng, ring: Ring, d: &oracles::Designed) -> Vec<Matrix> {
    let bases: Vec<(Matrix, Matrix)> = d.dims.iter().map(|&n| gen::random_invertible(rng, ring, n)).collect();
    d.differentials
        .iter()
        .enumerate()
        .map(|(n, m)| bases[n + 1].0.mul(m).mul(&bases[n].1))
        .collect()
}

fn random_designed(rng: &mut ChaCha8Rng, ring: Ring, top: usize) -> oracles::Designed {
    let dots: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=2)).collect();
    let pairs: Vec<usize> = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(0..top)).collect();
    let multiples: Vec<(usize, u64)> = (0..rng.gen_range(0..=2))
        .map(|_| (rng.gen_range(0..top), [2, 4, 8][rng.gen_range(0..3)]))
        .collect();
    let multiples = if ring.is_field() {
        // units only, so the pieces stay acyclic in every characteristic
        multiples.into_iter().map(|(n, _)| (n, 1)).collect()
    } else {
        multiples
    };
    oracles::designed(ring, top, &dots, &pairs, &multiples)
}

fn chaincomplex(seed: u64) -> Vec<Check> {
    const S: &str = "chaincomplex";
    let designed = property(seed, S, "designed cohomology", 40, |i, rng| {
        let ring = [Ring::Integers, F2, F3, Ring::Rationals][i % 4];
        let d = random_designed(rng, ring, 4);
        let c = lib(CochainComplex::new(ring, 0, d.dims.clone(), conjugated(rng, ring, &d)))?;
        let h = lib(complex_cohomology(&c))?;
        for n in 0..=4 {
            let want = FgAbelianGroup {
                rank: d.ranks[n],
                torsion: d.torsion[n].clone(),
            };
            ensure(h[n] == want, || format!("H^{n} = {:?}, expected {want:?}", h[n]))?;
        }
        Ok(())
    });
    let kunneth = property(seed, S, "tensor double complex", 30, |i, rng| {
        let ring = FIELDS[i % 3];
        let (tp, tq) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (c, e) = (random_designed(rng, ring, tp), random_designed(rng, ring, tq));
        let (dc, de) = (conjugated(rng, ring, &c), conjugated(rng, ring, &e));
        let dims: Vec<Vec<usize>> = c.dims.iter().map(|&a| e.dims.iter().map(|&b| a * b).collect()).collect();
        let d_h = (0..tp)
            .map(|p| (0..=tq).map(|q| dc[p].kron(&Matrix::identity(ring, e.dims[q]))).collect())
            .collect();
        let d_v = (0..=tp)
            .map(|p| (0..tq).map(|q| Matrix::identity(ring, c.dims[p]).kron(&de[q])).collect())
            .collect();
        let dc = lib(DoubleComplex::new(ring, dims, d_h, d_v))?;
        let pages = lib(spectral_sequence(&dc))?;
        let e2: Vec<Vec<usize>> = c.ranks.iter().map(|&a| e.ranks.iter().map(|&b| a * b).collect()).collect();
        ensure(pages.page(2) == &e2, || format!("E_2 {:?}, expected {e2:?}", pages.page(2)))?;
        ensure(pages.einf == e2, || "the sequence does not collapse at E_2".into())?;
        for n in 0..=tp + tq {
            let want: usize = (0..=n.min(tp)).filter(|&p| n - p <= tq).map(|p| c.ranks[p] * e.ranks[n - p]).sum();
            ensure(pages.total[n] == want, || format!("dim H^{n}(Tot) = {}, expected {want}", pages.total[n]))?;
        }
        ensure(pages.converges(), || "E_inf diagonals differ from H(Tot)".into())
    });
    vec![designed, kunneth]
}

// --------------------------------------------------------------------- fincat

fn fincat(seed: u64) -> Vec<Check> {
    const S: &str = "fincat";
    let round_trip = property(seed, S, "spec round trip", 30, |_, rng| {
        let c = gen::random_category(rng, 8);
        let back = lib(validate_category(&c.to_spec()))?;
        ensure(back == c, || "the category changed".into())
    });
    let counts = property(seed, S, "chain counts", 30, |_, rng| {
        let c = gen::random_category(rng, 6);
        for p in 0..=3 {
            let (got, want) = (chains(&c, p).len(), oracles::chain_count(&c, p));
            ensure(got == want, || format!("{got} chains of length {p}, expected {want}"))?;
        }
        Ok(())
    });
    let factor = property(seed, S, "factorization category", 20, |_, rng| {
        let c = gen::random_category(rng, 6);
        let fc = factorization_category(&c);
        for f in 0..c.morphism_count() {
            for g in 0..c.morphism_count() {
                let (got, want) = (fc.hom(f, g).len(), oracles::factorizations(&c, f, g));
                ensure(got == want, || format!("{got} maps {f} -> {g}, expected {want}"))?;
            }
        }
        Ok(())
    });
    let planted = property(seed, S, "associativity failure is named", 1, |_, _| {
        // a a = a, a b = b, b a = a, b b = a: (b b) b = b but b (b b) = a
        let names = ["e", "a", "b"];
        let spec = CategorySpec {
            objects: vec!["*".into()],
            morphisms: names
                .iter()
                .map(|n| MorphismSpec {
                    name: n.to_string(),
                    src: "*".into(),
                    dst: "*".into(),
                })
                .collect(),
            identities: [("*".to_string(), "e".to_string())].into_iter().collect(),
            compose: [["a", "a", "a"], ["a", "b", "b"], ["b", "a", "a"], ["b", "b", "a"]]
                .iter()
                .map(|t| t.map(String::from))
                .collect(),
        };
        match validate_category(&spec) {
            Err(Error::AssocViolation { .. }) => Ok(()),
            other => Err(format!("expected an associativity violation, got {other:?}")),
        }
    });
    vec![round_trip, counts, factor, planted]
}

// --------------------------------------------------------------------- natsys

fn natsys(seed: u64) -> Vec<Check> {
    const S: &str = "natsys";
    let square = property(seed, S, "d squares to zero", 50, |i, rng| {
        let ring = FIELDS[i % 3];
        let c = gen::random_category(rng, 6);
        let d = gen::random_natural_system(rng, &c, ring, 3);
        lib(d.validate())?;
        let cx = lib(bw_complex(&d, 4))?;
        for n in 0..4 {
            ensure(cx.differential(n + 1).mul(&cx.differential(n)).is_zero(), || {
                format!("d^{} d^{n} != 0", n + 1)
            })?;
        }
        Ok(())
    });
    let initial = property(seed, S, "initial object", 20, |i, rng| {
        let ring = FIELDS[i % 3];
        let c = gen::random_category_with_initial(rng, 8);
        let i0 = initial_object(&c).ok_or("no initial object")?;
        let f = gen::random_linear_functor(rng, &c, ring, 3);
        let d = lib(NaturalSystem::from_functor(&c, &f))?;
        let h = lib(bw_cohomology(&d, 3))?;
        let want: Vec<FgAbelianGroup> =
            std::iter::once(FgAbelianGroup::free(f.dims[i0])).chain(std::iter::repeat_n(FgAbelianGroup::zero(), 3)).collect();
        ensure(h == want, || format!("got {h:?}, expected rank {} then zeros", f.dims[i0]))
    });
    vec![square, initial]
}

// ------------------------------------------------------------------- groupcoh

/// The generator `1` of `C_n` acting on a line by `-1`.
fn sign_module(g: &FiniteGroup, ring: Ring) -> Result<GModule, String> {
    lib(GModule::from_fn(g, ring, 1, |x| {
        Matrix::from_i64_rows(ring, 1, &[vec![if x % 2 == 0 { 1 } else { -1 }]])
    }))
}

fn groupcoh(seed: u64) -> Vec<Check> {
    const S: &str = "groupcoh";
    let mut table = Vec::new();
    for n in [2usize, 3, 4] {
        for ring in [F2, F3] {
            table.push((n, ring, false));
            if n % 2 == 0 || ring == F2 {
                table.push((n, ring, true));
            }
        }
    }
    let cyclic = property(seed, S, "cyclic groups against the periodic resolution", table.len(), |i, _| {
        let (n, ring, sign) = table[i];
        let g = FiniteGroup::cyclic(n);
        let m = if sign { sign_module(&g, ring)? } else { GModule::trivial(&g, ring, 1) };
        let h = ranks(&lib(group_cohomology(&m, 4))?);
        let want = oracles::periodic(m.action(1), n, 4);
        ensure(h == want, || format!("C{n} over {ring}: {h:?}, expected {want:?}"))
    });
    let random_cyclic = property(seed, S, "random cyclic modules", 20, |i, rng| {
        let ring = [F2, F3][i % 2];
        let n = rng.gen_range(2..=5);
        let g = FiniteGroup::cyclic(n);
        let m = gen::random_module(rng, &g, ring, 3);
        let h = ranks(&lib(group_cohomology(&m, 3))?);
        let want = oracles::periodic(m.action(1), n, 3);
        ensure(h == want, || format!("C{n}: {h:?}, expected {want:?}"))
    });
    let fixed = property(seed, S, "degree zero is fixed points", 20, |i, rng| {
        let ring = FIELDS[i % 3];
        let g = gen::random_group(rng, 8);
        let m = gen::random_module(rng, &g, ring, 3);
        let id = Matrix::identity(ring, m.dim());
        let blocks: Vec<Matrix> = (0..g.order()).map(|x| m.action(x).add(&id.neg())).collect();
        let stacked = Matrix::vstack(ring, m.dim(), &blocks.iter().collect::<Vec<_>>());
        let want = m.dim() - stacked.rank();
        let h = lib(group_cohomology(&m, 0))?;
        ensure(h[0].rank == want, || format!("H^0 has rank {}, expected {want}", h[0].rank))
    });
    vec![cyclic, random_cyclic, fixed]
}

// ----------------------------------------------------------------- diagramcoh

fn single(group: &FiniteGroup, module: &GModule) -> Result<(GroupDiagram, DiagramModule), String> {
    let t = terminal();
    let a = GroupDiagram::constant(&t, group);
    let m = lib(DiagramModule::new(&a, module.ring(), vec![module.clone()], vec![Matrix::identity(module.ring(), module.dim())]))?;
    Ok((a, m))
}

const CONVENTIONS: [Convention; 3] = [Convention::Plain, Convention::Cegarra, Convention::Comonad];

/// Instances shared by the E_2 and convergence properties.
fn spectral_instances(seed: u64) -> Vec<Result<diagcoh::diagramcoh::LocalToGlobal, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(name_seed(seed, "local to global"));
    (0..25)
        .map(|i| {
            let ring = [F2, F3][i % 2];
            let (a, m) = gen::random_diagram(&mut rng, ring, 4, 2);
            lib(local_to_global(&a, &m, 4, CONVENTIONS[i % 3]))
        })
        .collect()
}

fn diagramcoh(seed: u64) -> Vec<Check> {
    const S: &str = "diagramcoh";
    let instances = spectral_instances(seed);
    let e2 = property(seed, S, "E_2 is BW cohomology of the local systems", instances.len(), |i, _| {
        let l = instances[i].as_ref().map_err(Clone::clone)?;
        ensure(l.e2_matches, || format!("{}: E_2 {:?} but local {:?}", l.convention, l.e2, l.e2_local))
    });
    let converge = property(seed, S, "convergence", instances.len(), |i, _| {
        let l = instances[i].as_ref().map_err(Clone::clone)?;
        ensure(l.converges, || format!("{}: diagonals {:?} but total {:?}", l.convention, l.einf_diagonals, l.total))
    });
    let der = property(seed, S, "degree zero is compatible derivations", 20, |i, rng| {
        let ring = [F2, F3][i % 2];
        let (a, m) = gen::random_diagram(rng, ring, 4, 2);
        let want = oracles::compatible_families(&a, &m);
        let h = lib(diagram_cohomology(&a, &m, 0, Convention::Comonad))?;
        ensure(h[0].rank == want, || format!("H^0 has rank {}, expected {want}", h[0].rank))?;
        let basis = lib(compatible_derivations(&a, &m))?;
        ensure(basis.ncols() == want, || format!("{} compatible derivations, expected {want}", basis.ncols()))
    });
    let terminal_index = property(seed, S, "terminal index is group cohomology", 12, |i, rng| {
        let ring = [F2, F3][i % 2];
        let g = gen::random_group(rng, 6);
        let module = gen::random_module(rng, &g, ring, 2);
        let (a, m) = single(&g, &module)?;
        let h = ranks(&lib(diagram_cohomology(&a, &m, 3, Convention::Plain))?);
        let want = ranks(&lib(group_cohomology(&module, 3))?);
        ensure(h == want, || format!("{h:?}, expected {want:?}"))
    });
    let discrete_index = property(seed, S, "discrete index is a direct sum", 10, |i, rng| {
        let ring = [F2, F3][i % 2];
        let k = rng.gen_range(1..=3);
        let groups: Vec<FiniteGroup> = (0..k).map(|_| gen::random_group(rng, 4)).collect();
        let modules: Vec<GModule> = groups.iter().map(|g| gen::random_module(rng, g, ring, 2)).collect();
        let c = discrete(k);
        let homs = groups.iter().map(diagcoh::groupcoh::GroupHom::identity).collect();
        let a = lib(GroupDiagram::new(&c, groups.clone(), homs))?;
        let maps = modules.iter().map(|m| Matrix::identity(ring, m.dim())).collect();
        let m = lib(DiagramModule::new(&a, ring, modules.clone(), maps))?;
        let h = ranks(&lib(diagram_cohomology(&a, &m, 3, Convention::Plain))?);
        let mut want = vec![0; 4];
        for module in &modules {
            for (n, r) in ranks(&lib(group_cohomology(module, 3))?).into_iter().enumerate() {
                want[n] += r;
            }
        }
        ensure(h == want, || format!("{h:?}, expected {want:?}"))
    });
    vec![e2, converge, der, terminal_index, discrete_index]
}

// -------------------------------------------------------------------- psiring

fn psiring(seed: u64) -> Vec<Check> {
    const S: &str = "psiring";
    let entries = catalog();
    let count = entries.as_ref().map(|e| e.len()).unwrap_or(1);
    let sections = property(seed, S, "sections biject with ψ-derivations", count, |i, _| {
        let entries = entries.as_ref().map_err(|e| e.to_string())?;
        let e = &entries[i];
        let report = lib(section_correspondence(&e.ring, &e.module))?;
        let want = oracles::psi_derivation_count(&e.ring, &e.module);
        ensure(report.pairing_verified, || format!("{}: pairing not verified", e.name))?;
        ensure(report.sections == want && report.derivations == want, || {
            format!("{}: {} sections, {} derivations, oracle {want}", e.name, report.sections, report.derivations)
        })
    });
    let laws = property(seed, S, "free ψ-ring laws", 10, |_, rng| {
        let monoid = gen::random_monoid(rng, 5);
        let gens = rng.gen_range(1..=3);
        let names: Vec<String> = (0..gens).map(|g| format!("g{g}")).collect();
        let free = free_psi_ring(&names, &monoid);
        let k = monoid.order();
        for v in 0..free.var_count() {
            ensure(free.psi_var(monoid.unit(), v) == v, || format!("Ψ^1 moves {}", free.var_name(v)))?;
            for m in 0..k {
                for n in 0..k {
                    let (lhs, rhs) = (free.psi_var(m, free.psi_var(n, v)), free.psi_var(monoid.mul(m, n), v));
                    ensure(lhs == rhs, || {
                        format!("Ψ^{} Ψ^{} != Ψ^{} on {}", monoid.name(m), monoid.name(n), monoid.name(monoid.mul(m, n)), free.var_name(v))
                    })?;
                }
            }
        }
        Ok(())
    });
    let free_der = property(seed, S, "free derivations biject with generator values", 10, |i, rng| {
        let p = [2u32, 3][i % 2];
        let monoid = gen::random_monoid(rng, 5);
        let gens = rng.gen_range(1..=3);
        let names: Vec<String> = (0..gens).map(|g| format!("g{g}")).collect();
        let free = free_psi_ring(&names, &monoid);
        let (ring, module) = gen::monoid_algebra(&monoid, p);
        let assignment: Vec<usize> = (0..gens).map(|_| rng.gen_range(0..ring.order())).collect();
        let basis = lib(free.derivations(&module, &assignment))?;
        let dim = module.dim();
        ensure(basis.ncols() == gens * dim, || format!("{} derivations, expected {}", basis.ncols(), gens * dim))?;
        let values = free.generator_values(dim, &basis);
        ensure(values.rank() == gens * dim, || "generator values are not independent".into())
    });
    vec![sections, laws, free_der]
}

pub fn checks(scope: Scope, seed: u64) -> Vec<Check> {
    let suites: [(Scope, fn(u64) -> Vec<Check>); 7] = [
        (Scope::Exactlinalg, exactlinalg),
        (Scope::Chaincomplex, chaincomplex),
        (Scope::Fincat, fincat),
        (Scope::Natsys, natsys),
        (Scope::Groupcoh, groupcoh),
        (Scope::Diagramcoh, diagramcoh),
        (Scope::Psiring, psiring),
    ];
    suites
        .iter()
        .filter(|(s, _)| scope == Scope::All || scope == *s)
        .flat_map(|(_, run)| run(seed))
        .collect()
}

pub fn run(scope: Scope, seed: u64) -> Report {
    let checks = checks(scope, seed);
    let ok = checks.iter().all(|c| c.failure.is_none());
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!(
            "{} {}: {} ({}/{})\n",
            verdict(c.failure.is_none()),
            c.suite,
            c.property,
            c.passed,
            c.cases
        ));
        if let Some(f) = &c.failure {
            text.push_str(&format!("    {f}\n"));
        }
    }
    text.push_str(&format!("{}\n", verdict(ok)));
    let scope_name = scope.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let json = json!({
        "command": "verify",
        "scope": scope_name,
        "seed": seed,
        "checks": checks,
        "passed": ok,
    });
    Report::new(json, text, ok)
}
