mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use singularhorn::horn::HornMode;
use singularhorn::partitions::subsets_of_size;
use singularhorn::singular::{
    admit_triple, check_c_conditions, delta, embedded_horn_membership,
    generate_singular_inequalities, is_regular, lift_subset, membership_singular, shift_lambda,
    stabilization_check, tilde_subset, PolarizedSubset, SingularMode,
};

fn polarized(q: usize) -> Vec<PolarizedSubset> {
    (1..=q)
        .flat_map(|r| PolarizedSubset::all_of_size(q, r))
        .collect()
}

fn coeffs(p: usize, q: usize, mode: SingularMode) -> BTreeSet<Vec<i64>> {
    generate_singular_inequalities(p, q, mode)
        .unwrap()
        .iter()
        .map(|i| i.coeffs())
        .collect()
}

#[test]
fn weight_identities() {
    for q in 1..=4 {
        for p in q..=q + 3 {
            for x in polarized(q) {
                let r = x.len() as i64;
                let plus = x.plus().len() as i64;
                let lifted = lift_subset(&x, p, q)
                    .unwrap()
                    .to_partition()
                    .unwrap()
                    .weight() as i64;
                let tilde = tilde_subset(&x, p, q)
                    .unwrap()
                    .to_partition()
                    .unwrap()
                    .weight() as i64;
                let expected = x.minus().element_sum() as i64 - x.plus().element_sum() as i64
                    + (p + q + 1) as i64 * plus
                    - r * (r + 1) / 2;
                assert_eq!(lifted, expected, "{x} p={p}");
                assert_eq!(
                    tilde,
                    expected - plus * plus - 2 * delta(&x) as i64,
                    "{x} p={p}"
                );
            }
        }
    }
}

#[test]
fn shifts() {
    for q in 1..=3 {
        for p in q..=5 {
            for p_prime in p..=7 {
                for x in polarized(q) {
                    let inc = shift_lambda(&x, p, p_prime, q).unwrap();
                    assert_eq!(inc.iter().sum::<usize>(), (p_prime - p) * x.plus().len());
                }
            }
        }
    }
}

#[test]
fn lists_are_closed_under_role_permutations() {
    for q in 1..=3 {
        for mode in SingularMode::ALL {
            let set = coeffs(q, q, mode);
            for c in &set {
                let (a, b, d) = (&c[..q], &c[q..2 * q], &c[2 * q..]);
                for perm in [
                    [a, b, d],
                    [a, d, b],
                    [b, a, d],
                    [b, d, a],
                    [d, a, b],
                    [d, b, a],
                ] {
                    assert!(set.contains(&perm.concat()), "mode {mode}, q = {q}");
                }
            }
        }
    }
}

#[test]
fn generator_nesting() {
    for q in 1..=3 {
        for p in q..=q + 1 {
            let one = coeffs(p, q, SingularMode::GrassmannPairOne);
            assert_eq!(coeffs(p, q, SingularMode::BkFlagOne), one);
            let pair = coeffs(p, q, SingularMode::HornPair);
            assert!(one.is_subset(&pair));
            assert_eq!(coeffs(p, q, SingularMode::BkFlagPositive), pair);
            let extra = pair.difference(&one).count();
            assert_eq!(extra, usize::from(q == 3), "p = {p}, q = {q}");
        }
    }
}

#[test]
fn admitted_rows_satisfy_c_conditions() {
    for q in 1..=3 {
        for p in q..=q + 1 {
            for ineq in generate_singular_inequalities(p, q, SingularMode::HornPair)
                .unwrap()
                .iter()
            {
                assert!(
                    check_c_conditions(&ineq.i, &ineq.j, &ineq.k, p, q),
                    "{}",
                    ineq.label()
                );
            }
        }
    }
}

#[test]
fn bk_rows_are_regular() {
    for q in 1..=3 {
        let list = generate_singular_inequalities(q, q, SingularMode::BkFlagOne).unwrap();
        assert!(list.iter().all(is_regular));
    }
}

#[test]
fn embedding_agrees_on_small_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        for _ in 0..100 {
            let x = common::chamber(&mut rng, q);
            let y = common::chamber(&mut rng, q);
            let z = common::chamber(&mut rng, q);
            assert_eq!(
                membership_singular(&x, &y, &z, p, q).unwrap(),
                embedded_horn_membership(&x, &y, &z, p, q, HornMode::LrOne).unwrap()
            );
        }
    }
}

#[test]
fn classical_families_are_admitted() {
    let admitted = |i: &PolarizedSubset, j: &PolarizedSubset, k: &PolarizedSubset, p, q| {
        admit_triple(i, j, k, p, q, SingularMode::HornPair)
            .unwrap()
            .is_some()
    };
    let px =
        |plus: &[usize], minus: &[usize], q| PolarizedSubset::from_parts(plus, minus, q).unwrap();
    for q in 1..=3 {
        for p in q..=q + 2 {
            for i in 1..=q {
                for j in 1..=q + 1 - i {
                    assert!(admitted(
                        &px(&[], &[i], q),
                        &px(&[], &[j], q),
                        &px(&[i + j - 1], &[], q),
                        p,
                        q
                    ));
                }
            }
            for r in 1..=q {
                let full: Vec<usize> = (1..=r).collect();
                let a = px(&[], &full, q);
                for s in subsets_of_size(q, r) {
                    let s = s.elements();
                    assert!(admitted(&a, &px(&[], s, q), &px(s, &[], q), p, q));
                    for &t in s {
                        let rest: Vec<usize> = s.iter().copied().filter(|&e| e != t).collect();
                        assert!(admitted(&a, &px(&rest, &[t], q), &px(&[t], &rest, q), p, q));
                    }
                }
                for i in subsets_of_size(q, r) {
                    for j in subsets_of_size(q, r) {
                        let (i, j) = (i.elements(), j.elements());
                        if i[r - 1] + j[r - 1] - r > q {
                            continue;
                        }
                        let k: Vec<usize> = (0..r).map(|a| i[a] + j[a] - a - 1).collect();
                        assert!(admitted(
                            &px(&[], i, q),
                            &px(&[], j, q),
                            &px(&k, &[], q),
                            p,
                            q
                        ));
                    }
                }
            }
        }
    }
}

#[test]
fn small_cases_stabilize() {
    assert!(stabilization_check(1, 1).unwrap());
    assert!(stabilization_check(2, 2).unwrap());
    assert!(stabilization_check(3, 2).unwrap());
}

#[test]
fn rejects_bad_parameters() {
    assert!(generate_singular_inequalities(1, 2, SingularMode::HornPair).is_err());
    assert!(generate_singular_inequalities(1, 0, SingularMode::HornPair).is_err());
    let x = PolarizedSubset::from_parts(&[1], &[], 2).unwrap();
    assert!(lift_subset(&x, 1, 2).is_err());
    assert!(shift_lambda(&x, 3, 2, 2).is_err());
}
