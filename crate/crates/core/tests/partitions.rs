use proptest::prelude::*;
use singularhorn::partitions::{
    complement_partition, lr_coefficient, subset_to_partition, subsets_of_size, Partition, Subset,
};
use singularhorn::schubert::triple_intersection;

fn partition(max_len: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

/// Counts LR tableaux the slow way: every filling of ν/λ with content μ,
/// checked against the semistandard and lattice-word conditions afterwards.
fn brute_lr(lambda: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    let part = |p: &[usize], a: usize| p.get(a).copied().unwrap_or(0);
    let mut cells = Vec::new();
    for (a, &row) in nu.iter().enumerate() {
        for b in part(lambda, a)..row {
            cells.push((a, b));
        }
    }
    let total: usize = mu.iter().sum();
    if cells.len() != total {
        return 0;
    }
    let labels = mu.len();
    let mut filling = vec![0usize; cells.len()];
    let mut count = 0;
    loop {
        let mut content = vec![0usize; labels];
        for &v in &filling {
            content[v] += 1;
        }
        if content == mu {
            let at =
                |a: usize, b: usize| cells.iter().position(|&c| c == (a, b)).map(|i| filling[i]);
            let mut ok = true;
            for (idx, &(a, b)) in cells.iter().enumerate() {
                if let Some(left) = b.checked_sub(1).and_then(|lb| at(a, lb)) {
                    ok &= left <= filling[idx];
                }
                if let Some(up) = a.checked_sub(1).and_then(|la| at(la, b)) {
                    ok &= up < filling[idx];
                }
            }
            // Reading word: rows top to bottom, right to left.
            let mut order: Vec<usize> = (0..cells.len()).collect();
            order.sort_by_key(|&i| (cells[i].0, std::cmp::Reverse(cells[i].1)));
            let mut seen = vec![0usize; labels];
            for i in order {
                let v = filling[i];
                seen[v] += 1;
                if v > 0 && seen[v] > seen[v - 1] {
                    ok = false;
                }
            }
            if ok {
                count += 1;
            }
        }
        // Next filling in base `labels`.
        let mut k = 0;
        loop {
            if k == filling.len() {
                return count;
            }
            filling[k] += 1;
            if filling[k] < labels {
                break;
            }
            filling[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn lr_matches_brute_force_on_small_shapes() {
    let shapes: Vec<Vec<usize>> = vec![
        vec![],
        vec![1],
        vec![2],
        vec![1, 1],
        vec![2, 1],
        vec![3, 1],
        vec![2, 2],
        vec![2, 1, 1],
        vec![3, 2, 1],
    ];
    for l in &shapes {
        for m in &shapes {
            for n in &shapes {
                let lp = Partition::new(l.clone()).unwrap();
                let mp = Partition::new(m.clone()).unwrap();
                let np = Partition::new(n.clone()).unwrap();
                let expected = if l.iter().sum::<usize>() + m.iter().sum::<usize>()
                    == n.iter().sum::<usize>()
                    && l.iter()
                        .zip(n.iter().chain(std::iter::repeat(&0)))
                        .all(|(a, b)| a <= b)
                    && l.len() <= n.len()
                {
                    brute_lr(l, m, n)
                } else {
                    0
                };
                assert_eq!(lr_coefficient(&lp, &mp, &np), expected, "{l:?} {m:?} {n:?}");
            }
        }
    }
}

#[test]
fn subset_partition_bijection() {
    for m in 1..=8 {
        for r in 1..=m {
            let subsets = subsets_of_size(m, r);
            let mut seen = std::collections::HashSet::new();
            for s in &subsets {
                let lambda = subset_to_partition(s, r).unwrap();
                assert!(lambda.part(0) <= m - r);
                assert_eq!(Subset::from_partition(&lambda, m).unwrap(), *s);
                assert!(seen.insert(lambda.parts().to_vec()));
            }
            // Partitions in an r × (m - r) box are counted by C(m, r).
            assert_eq!(seen.len(), subsets.len());
        }
    }
}

proptest! {
    #[test]
    fn lr_is_symmetric(l in partition(3, 3), m in partition(3, 3), n in partition(4, 4)) {
        prop_assert_eq!(lr_coefficient(&l, &m, &n), lr_coefficient(&m, &l, &n));
    }

    #[test]
    fn lr_vanishes_off_degree(l in partition(3, 3), m in partition(3, 3), n in partition(4, 4)) {
        if l.weight() + m.weight() != n.weight() {
            prop_assert_eq!(lr_coefficient(&l, &m, &n), 0);
        }
    }

    #[test]
    fn complement_is_an_involution(v in prop::collection::vec(0usize..=5, 1..=5)) {
        let mut v = v;
        v.sort_unstable_by(|a, b| b.cmp(a));
        let l = Partition::new(v).unwrap();
        let c = complement_partition(&l, 5).unwrap();
        prop_assert_eq!(c.len(), l.len());
        prop_assert_eq!(complement_partition(&c, 5).unwrap(), l.clone());
        prop_assert_eq!(c.weight() + l.weight(), 5 * l.len());
    }

    #[test]
    fn triple_intersection_is_symmetric(m in 2usize..=7, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let r = rng.random_range(1..m);
        let all = subsets_of_size(m, r);
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| all[rng.random_range(0..all.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let v = triple_intersection(&a, &b, &c).unwrap();
        for (x, y, z) in [(&a, &c, &b), (&b, &a, &c), (&b, &c, &a), (&c, &a, &b), (&c, &b, &a)] {
            prop_assert_eq!(triple_intersection(x, y, z).unwrap(), v);
        }
    }
}
