//! Invariants on randomly generated permutation groups and orthogonal matrices.

use num_rational::Ratio;
use proptest::prelude::*;

use factoriza_core::constructions::classical::full_orthogonal_gens;
use factoriza_core::factorization::orbit_count_check;
use factoriza_core::field::FieldTable;
use factoriza_core::forms::{dickson_invariant, ClassicalForm, FormKind, TypeSign};
use factoriza_core::matrix::Mat;
use factoriza_core::perm::{Bsgs, Perm, PermGroup};

/// A permutation of `0..n` from a list of random keys (argsort).
fn perm_from_keys(keys: &[u32]) -> Perm {
    let mut idx: Vec<u32> = (0..keys.len() as u32).collect();
    idx.sort_by_key(|&i| (keys[i as usize], i));
    Perm::from_images(idx).unwrap()
}

fn group_strategy() -> impl Strategy<Value = PermGroup> {
    (3usize..11).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(0u32..1000, n), 1..4)
            .prop_map(move |gs| PermGroup::new(n, gs.iter().map(|k| perm_from_keys(k)).collect()))
    })
}

fn bfs_orbit_count(g: &PermGroup) -> usize {
    let n = g.degree();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s as u32];
        while let Some(x) = stack.pop() {
            for p in g.gens() {
                let y = p.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_stabilizer(g in group_strategy()) {
        for orbit in g.orbits() {
            prop_assert_eq!(orbit.len() as u128 * g.stabilizer(orbit[0]).order(), g.order());
        }
    }

    #[test]
    fn bsgs_order_ignores_generator_order(g in group_strategy(), shuffles in proptest::collection::vec(any::<u64>(), 5)) {
        for s in shuffles {
            let mut gens = g.gens().to_vec();
            let len = gens.len();
            gens.rotate_left((s as usize) % len);
            if s & 1 == 1 {
                gens.reverse();
            }
            let base = [(s >> 8) as u32 % g.degree() as u32];
            prop_assert_eq!(Bsgs::new(g.degree(), &gens).order(), g.order());
            prop_assert_eq!(Bsgs::with_base(g.degree(), &gens, &base).order(), g.order());
        }
    }

    #[test]
    fn orbit_count_matches_bfs(g in group_strategy()) {
        prop_assume!(g.order() <= 50_000);
        prop_assert_eq!(orbit_count_check(&g).unwrap(), Ratio::from_integer(bfs_orbit_count(&g) as u128));
    }
}

fn word(gens: &[Mat], picks: &[usize]) -> Mat {
    picks.iter().fold(Mat::identity(&gens[0].field, gens[0].rows), |acc, &i| acc.mul(&gens[i % gens.len()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dickson_additive(a in proptest::collection::vec(0usize..64, 1..12), b in proptest::collection::vec(0usize..64, 1..12)) {
        for (q, n, sign) in [(2, 4, TypeSign::Plus), (2, 6, TypeSign::Minus), (4, 4, TypeSign::Minus), (2, 8, TypeSign::Plus)] {
            let k = FieldTable::of_order(q).unwrap();
            let f = ClassicalForm::standard(FormKind::Quadratic, n, &k, sign).unwrap();
            let gens = full_orthogonal_gens(&f).unwrap();
            let (x, y) = (word(&gens, &a), word(&gens, &b));
            let d = |m: &Mat| dickson_invariant(m, &f).unwrap();
            prop_assert_eq!(d(&x.mul(&y)), d(&x) ^ d(&y));
        }
    }
}
