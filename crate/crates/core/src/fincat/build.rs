//! Small categories used as index categories and in tests.

use super::FiniteCategory;
use crate::error::Result;

/// One object `*` and its identity `id`.
pub fn terminal() -> FiniteCategory {
    one_object(&["id".to_string()], |_, _| 0).expect("the terminal category is valid")
}

/// Objects `0, …, n-1` with identities `id_k` only.
pub fn discrete(n: usize) -> FiniteCategory {
    poset(n, &[]).expect("discrete categories are valid")
}

/// `0 -> 1` with the arrow named `a`.
pub fn arrow() -> FiniteCategory {
    let objects = vec!["0".to_string(), "1".to_string()];
    let mors = vec![("id_0".into(), 0, 0), ("id_1".into(), 1, 1), ("a".into(), 0, 1)];
    FiniteCategory::from_parts(objects, mors, vec![0, 1], |g, f| match (g, f) {
        (0, 0) => 0,
        (1, 1) => 1,
        _ => 2,
    })
    .expect("the arrow category is valid")
}

/// The one-object category of a monoid. Element 0 is the unit and
/// `mul(g, f)` is the product `g f` (composite `g∘f`).
pub fn one_object(names: &[String], mul: impl Fn(usize, usize) -> usize) -> Result<FiniteCategory> {
    let mors = names.iter().map(|n| (n.clone(), 0, 0)).collect();
    FiniteCategory::from_parts(vec!["*".into()], mors, vec![0], mul)
}

/// The preorder on `0, …, n-1` generated by `relations` (pairs `i <= j`),
/// as a category with one morphism `i->j` whenever `i <= j`.
pub fn poset(n: usize, relations: &[(usize, usize)]) -> Result<FiniteCategory> {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in relations {
        le[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut mors = Vec::new();
    let mut index = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        index[i][i] = mors.len();
        mors.push((format!("id_{i}"), i, i));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                index[i][j] = mors.len();
                mors.push((format!("{i}->{j}"), i, j));
            }
        }
    }
    let ends: Vec<(usize, usize)> = mors.iter().map(|m| (m.1, m.2)).collect();
    let objects = (0..n).map(|i| i.to_string()).collect();
    let identity = (0..n).map(|i| index[i][i]).collect();
    FiniteCategory::from_parts(objects, mors, identity, |g, f| index[ends[f].0][ends[g].1])
}

fn prefixed(cat: &FiniteCategory, prefix: &str) -> (Vec<String>, Vec<(String, usize, usize)>) {
    let objects = cat.objects().iter().map(|o| format!("{prefix}{o}")).collect();
    let mors = (0..cat.morphism_count())
        .map(|f| (format!("{prefix}{}", cat.morphism_name(f)), cat.src(f), cat.dst(f)))
        .collect();
    (objects, mors)
}

/// Coproduct of categories; names get the prefixes `l.` and `r.`.
pub fn disjoint_union(a: &FiniteCategory, b: &FiniteCategory) -> FiniteCategory {
    sum(a, b, false)
}

/// `a` followed by `b` with one extra morphism `x=>y` from every object of
/// `a` to every object of `b`. Names get the prefixes `l.` and `r.`.
pub fn ordinal_sum(a: &FiniteCategory, b: &FiniteCategory) -> FiniteCategory {
    sum(a, b, true)
}

fn sum(a: &FiniteCategory, b: &FiniteCategory, bridge: bool) -> FiniteCategory {
    let (na, ma) = (a.object_count(), a.morphism_count());
    let (nb, mb) = (b.object_count(), b.morphism_count());
    let (mut objects, mut mors) = prefixed(a, "l.");
    let (ob, mbs) = prefixed(b, "r.");
    objects.extend(ob);
    mors.extend(mbs.into_iter().map(|(n, s, d)| (n, s + na, d + na)));
    if bridge {
        for x in 0..na {
            for y in 0..nb {
                mors.push((format!("l.{}=>r.{}", a.object_name(x), b.object_name(y)), x, y + na));
            }
        }
    }
    let bridge_idx = |x: usize, y: usize| ma + mb + x * nb + y;
    let identity = (0..na).map(|o| a.identity(o)).chain((0..nb).map(|o| ma + b.identity(o))).collect();
    FiniteCategory::from_parts(objects, mors, identity, |g, f| {
        let in_a = |m: usize| m < ma;
        let in_b = |m: usize| (ma..ma + mb).contains(&m);
        if in_a(g) && in_a(f) {
            a.compose_idx(g, f)
        } else if in_b(g) && in_b(f) {
            ma + b.compose_idx(g - ma, f - ma)
        } else if in_a(f) {
            // g is a bridge out of dst f
            let y = (g - ma - mb) % nb;
            bridge_idx(a.src(f), y)
        } else {
            // f is a bridge, g lives in b
            let x = (f - ma - mb) / nb;
            bridge_idx(x, b.dst(g - ma))
        }
    })
    .expect("sums of valid categories are valid")
}
