use num_bigint::BigInt;
use proptest::prelude::*;

use diagcoh::linalg::*;
use diagcoh::Error;

fn int(rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_i64_rows(Ring::Integers, rows.first().map_or(0, Vec::len), rows)
}

fn divisors(m: &Matrix) -> Vec<i64> {
    smith_normal_form(m)
        .unwrap()
        .divisors
        .iter()
        .map(|d| i64::try_from(d.clone()).unwrap())
        .collect()
}

#[test]
fn smith_small_examples() {
    let a = int(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(divisors(&a), vec![2, 4]);
    assert!(check_smith_form(&a, &smith_normal_form(&a).unwrap()));
    assert_eq!(divisors(&int(&[vec![1, 0], vec![0, 1]])), vec![1, 1]);
    assert_eq!(divisors(&int(&[vec![0, 0], vec![0, 0]])), Vec::<i64>::new());
    assert_eq!(divisors(&Matrix::zeros(Ring::Integers, 0, 0)), Vec::<i64>::new());
}

#[test]
fn smith_needs_divisibility_fix() {
    // diag(2, 3) is diagonal but not in Smith form: d = (1, 6).
    let a = int(&[vec![2, 0], vec![0, 3]]);
    assert_eq!(divisors(&a), vec![1, 6]);
    assert!(check_smith_form(&a, &smith_normal_form(&a).unwrap()));
}

#[test]
fn smith_rejects_field_matrix() {
    assert!(smith_normal_form(&Matrix::identity(Ring::Rationals, 2)).is_err());
}

#[test]
fn kernel_examples() {
    let f2 = Ring::Prime(2);
    let k = Matrix::from_i64_rows(f2, 2, &[vec![1, 1], vec![1, 1]]).kernel_basis().unwrap();
    assert_eq!(k.ncols(), 1);
    assert_eq!(k.to_i64_rows().unwrap(), vec![vec![1], vec![1]]);
    assert_eq!(Matrix::identity(Ring::Rationals, 3).kernel_basis().unwrap().ncols(), 0);
    assert_eq!(Matrix::zeros(Ring::Rationals, 2, 3).kernel_basis().unwrap().ncols(), 3);
    assert!(Matrix::identity(Ring::Integers, 2).kernel_basis().is_err());
}

#[test]
fn subquotient_examples() {
    let f2 = Ring::Prime(2);
    let z = Matrix::identity(f2, 2);
    let diag = Matrix::from_i64_rows(f2, 1, &[vec![1], vec![1]]);
    assert_eq!(subquotient_dim(&z, &diag).unwrap(), 1);
    assert_eq!(subquotient_dim(&z, &z).unwrap(), 0);
    let empty = Matrix::zeros(f2, 2, 0);
    assert_eq!(subquotient_dim(&z, &empty).unwrap(), 2);
    let line = Matrix::from_i64_rows(f2, 1, &[vec![1], vec![0]]);
    let other = Matrix::from_i64_rows(f2, 1, &[vec![0], vec![1]]);
    assert_eq!(
        subquotient_dim(&line, &other),
        Err(Error::SubspaceViolation { column: 0 })
    );
}

#[test]
fn cohomology_examples() {
    let two = int(&[vec![2]]);
    let zero = Matrix::zeros(Ring::Integers, 0, 1);
    let h = cohomology_at(&two, &zero).unwrap();
    assert_eq!(h, FgAbelianGroup::new(0, &[2]).unwrap());
    assert_eq!(h.to_string(), "Z/2");

    let d_in = Matrix::zeros(Ring::Integers, 3, 0);
    let d_out = Matrix::zeros(Ring::Integers, 0, 3);
    assert_eq!(cohomology_at(&d_in, &d_out).unwrap(), FgAbelianGroup::free(3));

    let f3 = Ring::Prime(3);
    let d_in = Matrix::from_i64_rows(f3, 1, &[vec![1], vec![1]]);
    let d_out = Matrix::from_i64_rows(f3, 2, &[vec![1, -1]]);
    assert_eq!(cohomology_at(&d_in, &d_out).unwrap(), FgAbelianGroup::zero());
}

#[test]
fn exact_sequence_over_f3_by_enumeration() {
    // ker [1,-1] and im [1,1]^T on F_3^2, enumerated point by point.
    let ker: Vec<(i64, i64)> = (0i64..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .filter(|&(a, b)| (a - b).rem_euclid(3) == 0)
        .collect();
    let im: Vec<(i64, i64)> = (0..3).map(|t| (t, t)).collect();
    assert_eq!(ker, im);
}

#[test]
fn cohomology_rejects_non_complex() {
    let d_in = int(&[vec![1]]);
    let d_out = int(&[vec![1]]);
    assert!(matches!(
        cohomology_at(&d_in, &d_out),
        Err(Error::NotAComplex { .. })
    ));
}

#[test]
fn ring_parsing() {
    assert_eq!("z".parse::<Ring>().unwrap(), Ring::Integers);
    assert_eq!("Q".parse::<Ring>().unwrap(), Ring::Rationals);
    assert_eq!("f5".parse::<Ring>().unwrap(), Ring::Prime(5));
    assert!("f4".parse::<Ring>().is_err());
    assert!("x".parse::<Ring>().is_err());
    assert_eq!(
        parse_scalar(Ring::Prime(5), "-1").unwrap(),
        Scalar::Mod { value: 4, p: 5 }
    );
    assert_eq!(parse_scalar(Ring::Rationals, "2/4").unwrap().to_string(), "1/2");
}

#[test]
fn solve_independent_recovers_coordinates() {
    let q = Ring::Rationals;
    let basis = Matrix::from_i64_rows(q, 2, &[vec![1, 0], vec![1, 1], vec![0, 2]]);
    let x = Matrix::from_i64_rows(q, 1, &[vec![3], vec![-1]]);
    let t = basis.mul(&x);
    assert_eq!(basis.solve_independent(&t).unwrap(), Some(x));
    let off = Matrix::from_i64_rows(q, 1, &[vec![1], vec![0], vec![0]]);
    assert_eq!(basis.solve_independent(&off).unwrap(), None);
}

#[test]
fn f2_product_matches_generic() {
    let rows = vec![vec![1, 0, 1], vec![1, 1, 0]];
    let cols = vec![vec![1, 1], vec![0, 1], vec![1, 1]];
    let a = Matrix::from_i64_rows(Ring::Prime(2), 3, &rows);
    let b = Matrix::from_i64_rows(Ring::Prime(2), 2, &cols);
    let ai = int(&rows);
    let bi = int(&cols);
    let expect = ai.mul(&bi).change_ring(Ring::Prime(2)).unwrap();
    assert_eq!(a.mul(&b), expect);
}

/// Random unimodular matrix together with its inverse, as a product of
/// elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (Matrix, Matrix) {
    let mut u = Matrix::identity(Ring::Integers, n);
    let mut inv = Matrix::identity(Ring::Integers, n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(Ring::Integers, n);
        e.set_i64(i, j, c);
        let mut e_inv = Matrix::identity(Ring::Integers, n);
        e_inv.set_i64(i, j, -c);
        u = e.mul(&u);
        inv = inv.mul(&e_inv);
    }
    (u, inv)
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-50i64..=50, r * c)
            .prop_map(move |v| Matrix::from_fn(Ring::Integers, r, c, |i, j| v[i * c + j]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_is_valid(a in matrix_strategy(12)) {
        let form = smith_normal_form(&a).unwrap();
        prop_assert!(check_smith_form(&a, &form));
        prop_assert_eq!(&form.divisors, &elementary_divisors(&a).unwrap());
        prop_assert_eq!(form.divisors.len(), a.rank());
    }

    #[test]
    fn rank_nullity(a in matrix_strategy(8), p in prop::sample::select(vec![2u32, 3, 5])) {
        for ring in [Ring::Prime(p), Ring::Rationals] {
            let m = a.change_ring(ring).unwrap();
            let k = m.kernel_basis().unwrap();
            prop_assert_eq!(m.rank() + k.ncols(), m.ncols());
            prop_assert!(m.mul(&k).is_zero());
        }
    }

    #[test]
    fn cohomology_invariant_under_basis_change(
        seed in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..10),
        seed2 in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..10),
        seed3 in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..10),
        coeffs in prop::collection::vec(-3i64..=3, 6),
    ) {
        // C^0 = Z^2 -> C^1 = Z^3 -> C^2 = Z^2 built as d_out * d_in = 0 by
        // factoring through a rank split.
        let d_in = Matrix::from_fn(Ring::Integers, 3, 2, |i, j| match i {
            0 => coeffs[j],
            1 => 2 * coeffs[2 + j],
            _ => 0,
        });
        let d_out = Matrix::from_fn(Ring::Integers, 2, 3, |i, j| if j == 2 { coeffs[4 + i] } else { 0 });
        let h = cohomology_at(&d_in, &d_out).unwrap();
        let (p0, _) = unimodular(2, &seed);
        let (p1, p1_inv) = unimodular(3, &seed2);
        let (p2, _) = unimodular(2, &seed3);
        let d_in2 = p1.mul(&d_in).mul(&p0);
        let d_out2 = p2.mul(&d_out).mul(&p1_inv);
        prop_assert_eq!(cohomology_at(&d_in2, &d_out2).unwrap(), h.clone());
        let det = p1.int_determinant().unwrap();
        prop_assert!(det == BigInt::from(1) || det == BigInt::from(-1));
    }
}
