use super::finite::{FiniteRing, PsiModule, PsiRing};
use super::ActionMonoid;
use crate::error::Result;
use crate::linalg::{Matrix, Ring};

/// A finite ψ-ring with a module, small enough for exhaustive checks.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub ring: PsiRing,
    pub module: PsiModule,
}

fn residue_module(ring: &PsiRing, p: u32) -> Result<PsiModule> {
    let r = ring.ring();
    let field = Ring::prime(p)?;
    // 1 acts as the identity, x as zero
    let x = p as usize;
    PsiModule::from_generators(
        ring,
        p,
        1,
        &[(r.one(), Matrix::identity(field, 1)), (x, Matrix::zeros(field, 1, 1))],
        vec![None; ring.monoid().order()],
    )
}

pub fn catalog() -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    let mut push = |name, ring: PsiRing, module: PsiModule| out.push(CatalogEntry { name, ring, module });

    let f2 = PsiRing::trivial_action(ActionMonoid::trivial(), FiniteRing::zmod(2)?);
    push("F2 regular", f2.clone(), PsiModule::regular(&f2, 2)?);
    push("F2 zero module", f2.clone(), PsiModule::zero(&f2, 2)?);

    let dual = FiniteRing::polynomial_quotient(2, &[0, 0])?;
    let plain = PsiRing::trivial_action(ActionMonoid::trivial(), dual.clone());
    push("F2[x]/x^2 residue field", plain.clone(), residue_module(&plain, 2)?);
    push("F2[x]/x^2 regular", plain.clone(), PsiModule::regular(&plain, 2)?);

    let idem = ActionMonoid::monogenic(1, 1)?;
    let kill = dual.substitution(2, 2, dual.zero());
    let dual_idem = PsiRing::new(idem.clone(), dual.clone(), vec![(0..4).collect(), kill.clone()])?;
    push("F2[x]/x^2 idempotent x->0 residue field", dual_idem.clone(), residue_module(&dual_idem, 2)?);

    let two_three = ActionMonoid::truncated_prime_powers(&[2, 3], 1, 1)?;
    let id4: Vec<usize> = (0..4).collect();
    let mut maps = vec![id4.clone(); 4];
    maps[two_three.element("2")?] = kill.clone();
    maps[two_three.element("6")?] = kill;
    let dual23 = PsiRing::new(two_three, dual.clone(), maps)?;
    push("F2[x]/x^2 powers of 2 and 3", dual23.clone(), PsiModule::regular(&dual23, 2)?);

    let c2 = ActionMonoid::monogenic(0, 2)?;
    let f4 = FiniteRing::polynomial_quotient(2, &[1, 1])?;
    let frob = f4.substitution(2, 2, 3);
    let f4 = PsiRing::new(c2.clone(), f4, vec![(0..4).collect(), frob])?;
    push("F4 Frobenius regular", f4.clone(), PsiModule::regular(&f4, 2)?);

    let f2f2 = FiniteRing::zmod(2)?.product(&FiniteRing::zmod(2)?)?;
    let diag: Vec<usize> = (0..4).map(|i| 3 * (i / 2)).collect();
    let proj = PsiRing::new(idem, f2f2.clone(), vec![id4.clone(), diag])?;
    push("F2xF2 diagonal projection regular", proj.clone(), PsiModule::regular(&proj, 2)?);
    let swap: Vec<usize> = (0..4).map(|i| (i % 2) * 2 + i / 2).collect();
    let swapped = PsiRing::new(c2.clone(), f2f2, vec![id4, swap])?;
    push("F2xF2 swap regular", swapped.clone(), PsiModule::regular(&swapped, 2)?);

    let z4 = PsiRing::trivial_action(c2.clone(), FiniteRing::zmod(4)?);
    let z4_module = PsiModule::from_generators(&z4, 2, 1, &[(1, Matrix::identity(Ring::Prime(2), 1))], vec![None; 2])?;
    push("Z/4 residue field", z4, z4_module);

    let cube = FiniteRing::polynomial_quotient(2, &[0, 0, 0])?;
    let square = cube.substitution(2, 3, 4);
    let vanish = cube.substitution(2, 3, cube.zero());
    let cube = PsiRing::new(ActionMonoid::monogenic(2, 1)?, cube, vec![(0..8).collect(), square, vanish])?;
    push("F2[x]/x^3 x->x^2 regular", cube.clone(), PsiModule::regular(&cube, 2)?);

    let f3dual = FiniteRing::polynomial_quotient(3, &[0, 0])?;
    let negate = f3dual.substitution(3, 2, 6);
    let f3dual = PsiRing::new(c2, f3dual, vec![(0..9).collect(), negate])?;
    push("F3[x]/x^2 x->-x regular", f3dual.clone(), PsiModule::regular(&f3dual, 3)?);

    let f3 = FiniteRing::zmod(3)?;
    let f3 = PsiRing::trivial_action(ActionMonoid::truncated_prime_powers(&[2], 0, 2)?, f3);
    let field = Ring::Prime(3);
    let swap_plane = Matrix::from_i64_rows(field, 2, &[vec![0, 1], vec![1, 0]]);
    let plane = PsiModule::from_generators(&f3, 3, 2, &[(1, Matrix::identity(field, 2))], vec![None, Some(swap_plane)])?;
    push("F3 permuted plane", f3, plane);
    Ok(out)
}
